#![no_main]

use fglab::pseudoplane::{axiom_check, PseudoplaneGraph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = text.parse::<PseudoplaneGraph>() {
        let report = axiom_check(&g);
        assert!(report.cycle_edges <= g.edge_count());
        let again: PseudoplaneGraph = g.to_edge_list().parse().expect("exported edge list parses");
        assert_eq!(again, g);
    }
});
