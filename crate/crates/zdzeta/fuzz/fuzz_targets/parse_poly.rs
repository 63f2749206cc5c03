#![no_main]

use libfuzzer_sys::fuzz_target;
use zdzeta::funcfield::PolyFp;

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let p = [2u64, 3, 5, 7][sel as usize % 4];
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(f) = PolyFp::parse(p, text) {
            // the coefficient form must round-trip
            let again = PolyFp::parse(p, &f.to_coeff_string()).unwrap();
            assert_eq!(f, again);
        }
    }
});
