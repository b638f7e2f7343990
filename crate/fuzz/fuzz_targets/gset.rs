#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::fincat::Site;
use ngrpd::formats::{self, GSetJson};
use ngrpd::gset::{FiniteGroup, GroupSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<GSetJson>(text) else { return };
    let site = Site::gsets(GroupSpec::Finite(FiniteGroup::symmetric(3)));
    if let Ok(o) = formats::gset_from_json(&site, &j) {
        let again = formats::gset_to_json(&site, &o).unwrap();
        assert_eq!(formats::gset_from_json(&site, &again).unwrap(), o);
    }
});
