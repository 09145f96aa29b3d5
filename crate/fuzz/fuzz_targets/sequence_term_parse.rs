#![no_main]

use bifib_core::SequenceTerm;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = s.parse::<SequenceTerm>() {
        assert_eq!(t.to_string().parse::<SequenceTerm>().unwrap(), t);
    }
});
