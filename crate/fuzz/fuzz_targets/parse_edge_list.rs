#![no_main]

use libfuzzer_sys::fuzz_target;
use walkingtime::graph::{parse_input, transform_graph, write_edge_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = parse_input(text) else {
        return;
    };
    // Whatever parses must survive a write/parse cycle unchanged.
    let written = write_edge_list(&g);
    let again = parse_input(&written).expect("written edge list parses");
    assert_eq!(write_edge_list(&again), written);
    assert_eq!(again.edge_count(), g.edge_count());
    let _ = transform_graph(&g, 1.0).expect("finite lambda");
});
