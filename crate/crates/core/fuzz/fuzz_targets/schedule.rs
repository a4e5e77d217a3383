#![no_main]

use libfuzzer_sys::fuzz_target;
use mdm_core::files::ScheduleFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((s, _)) = ScheduleFile::parse(text) {
        let again = serde_json::to_string(&ScheduleFile::from_schedule(&s)).unwrap();
        assert_eq!(ScheduleFile::parse(&again).unwrap().0, s);
    }
});
