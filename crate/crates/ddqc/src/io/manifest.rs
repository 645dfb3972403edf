//! Corpus manifests: JSON Lines, one record per graph. A record carries
//! everything needed to reload (path, node/edge counts) or regenerate
//! (model, params, seed) the graph, so a corpus directory is self-describing.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{GenSpec, ModelKind, ModelParams};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub id: String,
    /// Model name for generated graphs, class label for ingested ones.
    pub model: String,
    pub params: Value,
    pub seed: u64,
    pub nodes: usize,
    pub edges: usize,
    /// Edge-list file, relative to the manifest's directory.
    pub path: String,
}

impl ManifestRecord {
    /// Rebuilds the generation request, if `model` names one of the six
    /// generators and `params` matches its schema.
    pub fn gen_spec(&self) -> Result<GenSpec> {
        let kind: ModelKind = self.model.parse()?;
        Ok(GenSpec {
            node_count: self.nodes,
            params: params_from_json(kind, &self.params)?,
            seed: self.seed,
        })
    }
}

pub fn params_to_json(params: &ModelParams) -> Value {
    match params {
        ModelParams::Ba { k } => json!({ "k": k }),
        ModelParams::Er { density } => json!({ "density": density }),
        ModelParams::Ff {
            p_forward,
            p_backward,
        } => json!({ "p_forward": p_forward, "p_backward": p_backward }),
        ModelParams::Kg { initiator } => json!({ "initiator": initiator }),
        ModelParams::Rp { gamma } => json!({ "gamma": gamma }),
        ModelParams::Ws { k, beta } => json!({ "k": k, "beta": beta }),
    }
}

/// Decodes `params` against the schema of the named model; the schemas
/// overlap (WS and BA both have `k`), so the model tag picks the shape.
pub fn params_from_json(kind: ModelKind, value: &Value) -> Result<ModelParams> {
    let bad = |e: serde_json::Error| {
        Error::Param(format!("params for model {} do not match: {}", kind, e))
    };
    Ok(match kind {
        ModelKind::Ba => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct P {
                k: u32,
            }
            let p: P = serde_json::from_value(value.clone()).map_err(bad)?;
            ModelParams::Ba { k: p.k }
        }
        ModelKind::Er => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct P {
                density: f64,
            }
            let p: P = serde_json::from_value(value.clone()).map_err(bad)?;
            ModelParams::Er { density: p.density }
        }
        ModelKind::Ff => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct P {
                p_forward: f64,
                p_backward: f64,
            }
            let p: P = serde_json::from_value(value.clone()).map_err(bad)?;
            ModelParams::Ff {
                p_forward: p.p_forward,
                p_backward: p.p_backward,
            }
        }
        ModelKind::Kg => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct P {
                initiator: [[f64; 2]; 2],
            }
            let p: P = serde_json::from_value(value.clone()).map_err(bad)?;
            ModelParams::Kg {
                initiator: p.initiator,
            }
        }
        ModelKind::Rp => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct P {
                gamma: f64,
            }
            let p: P = serde_json::from_value(value.clone()).map_err(bad)?;
            ModelParams::Rp { gamma: p.gamma }
        }
        ModelKind::Ws => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct P {
                k: u32,
                beta: f64,
            }
            let p: P = serde_json::from_value(value.clone()).map_err(bad)?;
            ModelParams::Ws {
                k: p.k,
                beta: p.beta,
            }
        }
    })
}

pub fn write_manifest<W: Write>(mut w: W, records: &[ManifestRecord]) -> Result<()> {
    for record in records {
        let line = serde_json::to_string(record)?;
        writeln!(w, "{}", line)?;
    }
    Ok(())
}

pub fn write_manifest_file(path: &Path, records: &[ManifestRecord]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_manifest(&mut w, records)?;
    w.flush()?;
    Ok(())
}

/// Parses a JSONL manifest; blank lines are skipped, malformed records fail
/// with their line number.
pub fn parse_manifest<R: BufRead>(reader: R) -> Result<Vec<ManifestRecord>> {
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ManifestRecord = serde_json::from_str(&line)
            .map_err(|e| Error::parse(idx + 1, e.to_string()))?;
        records.push(record);
    }
    Ok(records)
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRecord>> {
    let file = File::open(path)?;
    parse_manifest(BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn sample_records() -> Vec<ManifestRecord> {
        vec![
            ManifestRecord {
                id: "BA-000-00".into(),
                model: "BA".into(),
                params: params_to_json(&ModelParams::Ba { k: 3 }),
                seed: 11,
                nodes: 1000,
                edges: 2994,
                path: "BA-000-00.txt".into(),
            },
            ManifestRecord {
                id: "WS-000-00".into(),
                model: "WS".into(),
                params: params_to_json(&ModelParams::Ws { k: 4, beta: 0.5 }),
                seed: 12,
                nodes: 1000,
                edges: 2000,
                path: "WS-000-00.txt".into(),
            },
        ]
    }

    #[test]
    fn round_trips_records() {
        let records = sample_records();
        let mut buf = Vec::new();
        write_manifest(&mut buf, &records).unwrap();
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), 2);

        let back = parse_manifest(Cursor::new(&buf)).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].id, "BA-000-00");
        assert_eq!(back[1].edges, 2000);

        let spec = back[1].gen_spec().unwrap();
        assert_eq!(spec.params, ModelParams::Ws { k: 4, beta: 0.5 });
        assert_eq!(spec.node_count, 1000);
        assert_eq!(spec.seed, 12);
    }

    #[test]
    fn params_round_trip_every_model() {
        let all = [
            ModelParams::Ba { k: 5 },
            ModelParams::Er { density: 0.004 },
            ModelParams::Ff {
                p_forward: 0.2,
                p_backward: 0.32,
            },
            ModelParams::Kg {
                initiator: [[0.8, 0.6], [0.5, 0.3]],
            },
            ModelParams::Rp { gamma: 2.7 },
            ModelParams::Ws { k: 6, beta: 0.5 },
        ];
        for params in all {
            let back = params_from_json(params.kind(), &params_to_json(&params)).unwrap();
            assert_eq!(back, params);
        }
    }

    #[test]
    fn model_tag_disambiguates_shared_fields() {
        // {"k": ...} alone is a BA shape; WS requires beta too.
        let ba = params_from_json(ModelKind::Ba, &json!({ "k": 3 })).unwrap();
        assert_eq!(ba, ModelParams::Ba { k: 3 });
        assert!(params_from_json(ModelKind::Ws, &json!({ "k": 3 })).is_err());
        assert!(params_from_json(ModelKind::Ba, &json!({ "k": 3, "beta": 0.5 })).is_err());
    }

    #[test]
    fn malformed_line_reports_position() {
        let text = "{\"id\":\"a\",\"model\":\"BA\",\"params\":{\"k\":1},\"seed\":1,\"nodes\":10,\"edges\":9,\"path\":\"a.txt\"}\nnot json\n";
        let err = parse_manifest(Cursor::new(text)).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn unknown_model_fails_spec_reconstruction() {
        let rec = ManifestRecord {
            id: "x".into(),
            model: "road".into(),
            params: json!({}),
            seed: 0,
            nodes: 10,
            edges: 0,
            path: "x.txt".into(),
        };
        assert!(rec.gen_spec().is_err());
    }
}
