#![no_main]

use bifib_core::{BasisFamily, CoeffFamily};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = s.parse::<BasisFamily>() {
        assert_eq!(f.to_string().parse::<BasisFamily>().unwrap(), f);
    }
    if let Ok(f) = s.parse::<CoeffFamily>() {
        assert_eq!(f.to_string().parse::<CoeffFamily>().unwrap(), f);
    }
});
