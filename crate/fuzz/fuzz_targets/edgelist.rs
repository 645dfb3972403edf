#![no_main]

use std::io::Cursor;

use ddqc::io::edgelist::{parse_edge_list, write_edge_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok((graph, _)) = parse_edge_list(Cursor::new(data), None) else {
        return;
    };

    // A parsed graph survives a write/reparse round trip: same node and edge
    // counts, same degree multiset, and the rewritten list is already clean.
    let mut bytes = Vec::new();
    write_edge_list(&mut bytes, &graph).unwrap();
    let (again, stats) = parse_edge_list(Cursor::new(&bytes[..]), None).unwrap();

    assert_eq!(graph.node_count(), again.node_count());
    assert_eq!(graph.edge_count(), again.edge_count());
    let mut before = graph.degree_sequence();
    let mut after = again.degree_sequence();
    before.sort_unstable();
    after.sort_unstable();
    assert_eq!(before, after);
    assert_eq!(stats.loops_dropped, 0);
    assert_eq!(stats.duplicates_dropped, 0);
});
