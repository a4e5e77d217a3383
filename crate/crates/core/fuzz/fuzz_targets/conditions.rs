#![no_main]

use libfuzzer_sys::fuzz_target;
use mdm_core::files::ConditionsFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((r, _)) = ConditionsFile::parse(text) {
        let again = serde_json::to_string(&ConditionsFile::from_report(&r)).unwrap();
        assert_eq!(ConditionsFile::parse(&again).unwrap().0, r);
    }
});
