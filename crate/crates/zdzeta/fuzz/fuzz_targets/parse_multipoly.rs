#![no_main]

use libfuzzer_sys::fuzz_target;
use zdzeta::multipoly::MultiPoly;

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let p = [2u64, 3, 5][sel as usize % 3];
    let nvars = 1 + (sel >> 4) as usize % 3;
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(f) = MultiPoly::parse(p, nvars, text) {
            let again = MultiPoly::parse(p, nvars, &f.to_string()).unwrap();
            assert_eq!(f, again);
        }
    }
});
