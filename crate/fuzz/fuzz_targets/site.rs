#![no_main]

use libfuzzer_sys::fuzz_target;
use ngrpd::formats::{self, SiteJson};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(j) = formats::parse::<SiteJson>(text) else { return };
    if let Ok(site) = formats::site_from_json(&j) {
        assert_eq!(formats::site_from_json(&formats::site_to_json(&site)).unwrap(), site);
    }
});
