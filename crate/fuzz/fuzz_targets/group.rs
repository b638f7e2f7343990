#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::formats::{self, GroupJson};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<GroupJson>(text) else { return };
    if let Ok(g) = formats::group_from_json(&j) {
        let again = formats::group_to_json(&g);
        assert_eq!(formats::group_to_json(&formats::group_from_json(&again).unwrap()), again);
    }
});
