#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::fincat::Site;
use ngrpd::formats::{self, CoverJson};
use ngrpd::galois::{fiber_functor, BasedGraph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<CoverJson>(text) else { return };
    let site = Site::graph_covers(BasedGraph::figure_eight());
    if let Ok(o) = formats::cover_from_json(&site, &j) {
        let again = formats::cover_to_json(&site, &o).unwrap();
        assert_eq!(formats::cover_from_json(&site, &again).unwrap(), o);
        let _ = fiber_functor(&site, &o);
    }
});
