#![no_main]

use hamspec::graph6::{encode_graph6, parse_graph6};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph6(text) {
        let enc = encode_graph6(&g).expect("parsed graphs re-encode");
        let back = parse_graph6(&enc).expect("canonical encoding parses");
        assert_eq!(back, g, "round trip changed the graph");
        assert_eq!(encode_graph6(&back).expect("re-encode"), enc, "encoding not stable");
    }
});
