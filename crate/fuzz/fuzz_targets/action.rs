#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::fincat::Site;
use ngrpd::formats::{self, ActionJson};
use ngrpd::galois::{cover_from_action, fiber_functor, BasedGraph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<ActionJson>(text) else { return };
    let Ok(a) = formats::action_from_json(&j) else { return };
    assert_eq!(formats::action_from_json(&formats::action_to_json(&a)).unwrap(), a);
    if a.rank() == 2 {
        let site = Site::graph_covers(BasedGraph::figure_eight());
        let cover = cover_from_action(&site, &a).unwrap();
        assert_eq!(fiber_functor(&site, &cover).unwrap(), a);
    }
});
