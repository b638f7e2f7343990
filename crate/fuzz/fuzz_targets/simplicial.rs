#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::formats::{self, SimplicialJson};
use ngrpd::grpd::{is_n_groupoid, Dim};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<SimplicialJson>(text) else { return };
    if let Ok(x) = formats::simplicial_from_json(&j) {
        assert_eq!(formats::simplicial_from_json(&formats::simplicial_to_json(&x)).unwrap(), x);
        let _ = is_n_groupoid(&x, Dim::Finite(1));
    }
});
