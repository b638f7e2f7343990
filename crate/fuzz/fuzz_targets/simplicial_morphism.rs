#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::formats::{self, SimplicialMorphismJson};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<SimplicialMorphismJson>(text) else { return };
    if let Ok(f) = formats::simplicial_morphism_from_json(&j) {
        let again = formats::simplicial_morphism_to_json(&f);
        assert_eq!(formats::simplicial_morphism_to_json(&formats::simplicial_morphism_from_json(&again).unwrap()), again);
    }
});
