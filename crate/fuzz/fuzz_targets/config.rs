#![no_main]

use std::io::Cursor;

use ddqc::io::config::{parse_config, CorpusMode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(cfg) = parse_config(Cursor::new(data)) else {
        return;
    };

    // Anything that parses has already passed semantic validation.
    assert!(cfg.iterations >= 1);
    assert!(cfg.per_model >= 1);
    assert!(cfg.k_max >= 1);
    assert!(cfg.path_sample >= 1);
    assert!((10..=cfg.n_max).contains(&cfg.n_min));
    assert!(!cfg.methods.is_empty());
    assert!(!cfg.dd_methods.is_empty());
    if cfg.mode == CorpusMode::Ingest {
        assert!(cfg.manifest.is_some());
    }
});
