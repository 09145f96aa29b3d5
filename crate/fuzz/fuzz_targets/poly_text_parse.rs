#![no_main]

use bifib_core::BivarPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<BivarPoly>() {
        let back: BivarPoly = p.to_string().parse().expect("rendered polynomial reparses");
        assert_eq!(back, p);
    }
});
