//! Positive subgraphs, extremal blocks, x-face splitting, clusters and seemly pairs.

mod cluster;
mod disk;
mod extremal;
mod level1;

pub use extremal::{
    blocks_of, components_with_disk_support, consecutive_endpoints, extract_extremal_block, positive_components,
    positive_subgraph, BlockError, ComponentSupport, DiskSupport, ExtremalBlock, GhostReason,
};
pub use disk::{
    cut_x_face, mode_gate, split_disk, split_xface_along_diagonals, Chord, CornerRun, DiskEdge, DiskGraph, SplitError, SplitMode,
};
pub use level1::{corner_blocks_hold, find_level1_pair, Level1Error, Level1Pair};
pub use cluster::{
    build_cluster, context_from_pair, find_seemly_pair, good_edges, partner_contexts, Cluster, ClusterError,
    PartnerContext, SeemlyPair,
};

use crate::detect::{Certificate, StructureKind, VerifyError};
use crate::surface::FatGraph;

pub fn verify_block_certificate(g: &FatGraph, c: &Certificate) -> Result<(), VerifyError> {
    match c.kind {
        StructureKind::ExtremalBlock => extremal::verify_block(g, c).map_err(VerifyError::Condition),
        StructureKind::Cluster => cluster::verify_cluster(g, c).map_err(VerifyError::Condition),
        StructureKind::SeemlyPair => cluster::verify_seemly(g, c).map_err(VerifyError::Condition),
        _ => Ok(()),
    }
}
