#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::formats::{self, FinMapJson};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<FinMapJson>(text) else { return };
    if let Ok(f) = formats::finmap_from_json(&j) {
        assert_eq!(formats::finmap_from_json(&formats::finmap_to_json(&f)).unwrap(), f);
    }
});
