#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::formats::{self, GraphJson};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<GraphJson>(text) else { return };
    if let Ok(g) = formats::graph_from_json(&j) {
        assert_eq!(formats::graph_from_json(&formats::graph_to_json(&g)).unwrap(), g);
    }
    if let Ok(b) = formats::based_graph_from_json(&j) {
        assert_eq!(formats::based_graph_from_json(&formats::based_graph_to_json(&b)).unwrap(), b);
    }
});
