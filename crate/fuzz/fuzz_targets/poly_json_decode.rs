#![no_main]

use bifib_core::BivarPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = BivarPoly::from_json(s) {
        assert_eq!(BivarPoly::from_json(&p.to_json()).unwrap(), p);
    }
});
