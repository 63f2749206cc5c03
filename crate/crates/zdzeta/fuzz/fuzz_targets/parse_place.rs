#![no_main]

use libfuzzer_sys::fuzz_target;
use zdzeta::funcfield::{ord_at, Place, RatFunc};

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let p = [2u64, 3, 5, 7][sel as usize % 4];
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(place) = Place::parse(p, text) {
            assert!(place.degree() >= 1);
            // any accepted place supports valuation arithmetic
            let t = RatFunc::t(p);
            let _ = ord_at(&t, &place);
        }
    }
});
