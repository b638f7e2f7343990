#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::localization::{validate_marked_category, MarkedRelCategory};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(c) = MarkedRelCategory::from_json(text) else { return };
    let file = c.to_file();
    assert_eq!(MarkedRelCategory::from_file(&file).unwrap().to_file(), file);
    let _ = validate_marked_category(&c);
});
