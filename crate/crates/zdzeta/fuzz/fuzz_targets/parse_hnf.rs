#![no_main]

use libfuzzer_sys::fuzz_target;
use zdzeta::lattice::Subgroup;

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let d = 1 + sel as usize % 3;
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(s) = Subgroup::parse(d, text) {
            // canonicalization is idempotent and the serialization parses back
            let again = Subgroup::parse(d, &s.to_string()).unwrap();
            assert_eq!(s, again);
            assert!(s.index() >= 1);
        }
    }
});
