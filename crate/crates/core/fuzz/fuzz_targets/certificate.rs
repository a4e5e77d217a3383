#![no_main]

use libfuzzer_sys::fuzz_target;
use mdm_core::poly::SparsePoly;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((p, _)) = SparsePoly::from_certificate_json(text) {
        let (q, warnings) = SparsePoly::from_certificate_json(&p.to_certificate_json()).expect("re-read");
        assert_eq!(p, q);
        assert!(warnings.is_empty());
    }
});
