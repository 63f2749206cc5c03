#![no_main]

use libfuzzer_sys::fuzz_target;
use zdzeta::specfile::spec_from_json;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = spec_from_json(text) {
            // anything accepted must survive a save/load cycle
            let json = zdzeta::specfile::spec_to_json(&spec).to_string();
            let again = spec_from_json(&json).unwrap();
            assert_eq!(spec, again);
        }
    }
});
