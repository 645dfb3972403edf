//! File formats: edge lists, experiment configs, corpus manifests.

pub mod config;
pub mod edgelist;
pub mod manifest;
