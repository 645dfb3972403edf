#![no_main]

use std::io::Cursor;

use ddqc::io::manifest::{parse_manifest, write_manifest};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(records) = parse_manifest(Cursor::new(data)) else {
        return;
    };

    // Spec reconstruction handles every parsed record without panicking.
    for record in &records {
        let _ = record.gen_spec();
    }

    // Writing is a fixed point: write -> parse -> write yields identical
    // bytes, so manifests are stable under rewriting.
    let mut once = Vec::new();
    write_manifest(&mut once, &records).unwrap();
    let reparsed = parse_manifest(Cursor::new(&once[..])).unwrap();
    let mut twice = Vec::new();
    write_manifest(&mut twice, &reparsed).unwrap();
    assert_eq!(once, twice);
});
