//! JSON files: partitions, partition certificates to check, verdicts.

use std::path::Path;

use rigidity_core::certify::{
    certify_double_partition, certify_generalized_partition, certify_strong_partition,
    CertifierVerdict, DoublePartitionSpec, GeneralizedPartitionSpec,
};
use rigidity_core::{Graph, Partition};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn default_true() -> bool {
    true
}

/// A partition certificate to be checked against a graph, tagged by
/// `"kind"`.
///
/// ```json
/// {"kind": "strong", "partition": {"blocks": [[0, 1], [2, 3]]}, "allow_self": true}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PartitionFile {
    Strong {
        partition: Partition,
        #[serde(default = "default_true")]
        allow_self: bool,
    },
    Generalized(GeneralizedPartitionSpec),
    Double(DoublePartitionSpec),
}

impl PartitionFile {
    pub fn certify(&self, g: &Graph, d: usize, seed: u64) -> Result<CertifierVerdict> {
        Ok(match self {
            PartitionFile::Strong {
                partition,
                allow_self,
            } => certify_strong_partition(g, partition, d, *allow_self, seed)?,
            PartitionFile::Generalized(spec) => certify_generalized_partition(g, spec, d, seed)?,
            PartitionFile::Double(spec) => certify_double_partition(g, spec, d, seed)?,
        })
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strong_file_defaults_to_self_index() {
        let f: PartitionFile =
            serde_json::from_str(r#"{"kind": "strong", "partition": {"blocks": [[0, 1], [2]]}}"#)
                .unwrap();
        assert!(matches!(
            f,
            PartitionFile::Strong {
                allow_self: true,
                ..
            }
        ));
    }

    #[test]
    fn invalid_partition_is_rejected_on_read() {
        let r: std::result::Result<PartitionFile, _> =
            serde_json::from_str(r#"{"kind": "strong", "partition": {"blocks": [[0, 1], [1]]}}"#);
        assert!(r.is_err());
    }

    #[test]
    fn generalized_round_trip() {
        let g = Graph::complete(4);
        let p = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let f = PartitionFile::Generalized(GeneralizedPartitionSpec::from_strong(&g, &p).unwrap());
        let text = to_json(&f).unwrap();
        let back: PartitionFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }
}
