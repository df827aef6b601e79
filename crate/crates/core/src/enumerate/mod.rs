//! Exhaustive generation at bounded size and the campaigns built on it.

mod campaign;
mod families;
mod graphs;
mod interior;
mod maps;
mod oracle;

pub use families::{enumerate_parallel_family_labelings, FamilyLabeling};
pub use graphs::{
    enumerate_fat_graphs, enumerate_fat_graphs_with_stats, for_each_rooted_map, map_tasks, GenerationStats, GraphBounds,
    MapTask,
};
pub use interior::{enumerate_xface_interiors, interior_admissible, InteriorScan};
pub use maps::{canonical_code, graph_canonical_code, closed_tag, code_from, is_canonical, rooted_map_tree, Decor, MapLimits, MapState, RawMap, Root};
pub use oracle::{flag_orbits, OrbitCount};
pub use campaign::{
    resume_token, run_campaign, Campaign, CampaignBounds, CampaignError, CampaignReport, CampaignSpec, Limits, RunStats,
    Violation, REPORT_FORMAT,
};
