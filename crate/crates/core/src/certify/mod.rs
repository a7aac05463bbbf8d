//! Partition-based certificates of `d`-rigidity.
//!
//! Every certifier here is sound and incomplete: an accepted instance is
//! `d`-rigid, a rejected one may or may not be. Rejections name the first
//! obligation that failed.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rigidity::RigidityVerdict;

pub(crate) fn check_dimension(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter(String::from(
            "dimension d must be at least 1",
        )));
    }
    Ok(())
}

mod anchored;
mod comb;
mod double;
mod generalized;
mod limit;
mod strong;

pub use anchored::{anchoring_matrix, color_points, is_d_anchored, ColoredEdge, ColoredMultigraph};
pub use comb::{comb, monochromatic_cuts_exhaustive, CombOutcome, CombTree, EXHAUSTIVE_CUTS_CAP};
pub use double::{certify_double_partition, contract_forest, DoublePartitionSpec};
pub use generalized::{certify_generalized_partition, GeneralizedPartitionSpec, SubgraphSpec};
pub use limit::assemble_limit_framework;
pub use strong::{build_q_graphs, certify_strong_partition, QGraph};

/// The obligation that made a certifier reject.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FailingObligation {
    ReducedNotRigid,
    QNotConnected {
        block: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sub_block: Option<usize>,
    },
    CombFailed {
        block: usize,
        subset: Vec<usize>,
    },
    AnchoringFailed {
        block: usize,
    },
    TreePackingFailed {
        block: usize,
    },
    HypothesisViolated {
        reason: String,
    },
}

/// Replayable evidence attached to a verdict. Fields a certifier does not
/// use stay empty.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub reduced_edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_verdict: Option<RigidityVerdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q_graphs: Vec<QGraph>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comb_trees: Vec<CombTree>,
    /// Per block, whether the anchoring graph is `d`-anchored.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchored: Vec<bool>,
    /// Per block, the number of edge-disjoint spanning trees of the
    /// contracted forest (`usize::MAX` when it has one vertex).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tree_packing: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifierVerdict {
    pub accepted: bool,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_obligation: Option<FailingObligation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CertifierVerdict {
    pub(crate) fn finish(d: usize, failing: Option<FailingObligation>, witness: Witness) -> Self {
        CertifierVerdict {
            accepted: failing.is_none(),
            d,
            failing_obligation: failing,
            witness: Some(witness),
        }
    }

    pub fn hypothesis_violated(d: usize, reason: impl Into<String>) -> Self {
        CertifierVerdict {
            accepted: false,
            d,
            failing_obligation: Some(FailingObligation::HypothesisViolated {
                reason: reason.into(),
            }),
            witness: None,
        }
    }
}
