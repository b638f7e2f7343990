#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::Label;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(l) = Label::parse(text) {
        assert_eq!(Label::parse(&l.to_string()).unwrap(), l);
    }
});
