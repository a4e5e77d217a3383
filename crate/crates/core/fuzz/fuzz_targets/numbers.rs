#![no_main]

use libfuzzer_sys::fuzz_target;
use mdm_core::dyadic::{parse_fraction, Dyadic, Enclosure};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = text.parse::<Dyadic>() {
        assert_eq!(d.to_string().parse::<Dyadic>().unwrap(), d);
    }
    let _ = parse_fraction(text);
    if let Some((lo, hi)) = text.split_once(' ') {
        if let Ok(e) = Enclosure::from_strings(lo, hi) {
            assert_eq!(Enclosure::from_strings(&e.lo_string(), &e.hi_string()).unwrap(), e);
        }
    }
});
