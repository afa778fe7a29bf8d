//! Ribbon graphs (combinatorial maps) in flag, gem and rotation-system form,
//! with partial duality, genus invariants and the partial-dual genus
//! polynomial.

pub mod format;
pub mod genus;
pub mod map;
pub mod partial_dual;
pub mod permutation;
pub mod polynomial;
pub mod random;
pub mod rotation;

pub use format::{
    parse_flagmap, parse_map_file, parse_rotation, write_flagmap, write_rotation, FormatError,
    MapFile,
};
pub use genus::{dual_induced, genus_change, induced_subgraph, InducedSubgraph};
pub use map::{ComponentSignature, Edge, FlagMap, MapError, MapMetrics};
pub use partial_dual::{
    check_duality_properties, check_duality_properties_with, edge_involutions, partial_dual,
    partial_dual_edge, DualityProperty, DualityReport, EdgeSet, SubsetBudget,
};
pub use permutation::{orbits, Permutation, PermutationError};
pub use polynomial::{
    format_polynomial, pd_genus_polynomial, GenusMode, GenusPolynomial, PolynomialError,
    PolynomialOptions,
};
pub use random::{random_map, RandomMapError};
pub use rotation::{RotationError, RotationSystem};
