#![no_main]

use hamspec::spectral::parse_rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_rational(text) {
        let shown = r.to_string();
        let back = parse_rational(&shown).expect("display output reparses");
        assert_eq!(back, r, "display round trip changed the value");
    }
});
