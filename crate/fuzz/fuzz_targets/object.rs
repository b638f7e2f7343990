#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::fincat::Site;
use ngrpd::formats::{self, ObjectJson};
use ngrpd::gset::{FiniteGroup, GroupSpec};

fuzz_target!(|data: &[u8]| {
    let Some((&which, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok(j) = formats::parse::<ObjectJson>(text) else { return };
    let site = match which % 3 {
        0 => Site::finsets(),
        1 => Site::gsets(GroupSpec::Finite(FiniteGroup::cyclic(3))),
        _ => Site::graph_covers(ngrpd::galois::BasedGraph::figure_eight()),
    };
    if let Ok(o) = formats::object_from_json(&site, &j) {
        assert_eq!(formats::object_from_json(&site, &formats::object_to_json(&site, &o)).unwrap(), o);
    }
});
