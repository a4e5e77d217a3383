#![no_main]

use libfuzzer_sys::fuzz_target;
use mdm_core::files::BundleFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((b, _)) = BundleFile::parse(text) {
        let (again, warnings) = BundleFile::parse(&b.file.to_json()).expect("re-read");
        assert_eq!(again.f_source, b.f_source);
        assert_eq!(again.g_source, b.g_source);
        assert!(warnings.is_empty());
    }
});
