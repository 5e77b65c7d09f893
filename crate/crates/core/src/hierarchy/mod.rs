//! Iterated-ideal hierarchies: explicit levels of hereditary sets and the
//! symbolic atom presentation.

pub mod atoms;
pub mod hset;
pub mod laws;
pub mod levels;

pub use atoms::{Atom, AtomComparator, AtomKind, GeneratorRule, SymbolicLevel};
pub use hset::{hset_mult, is_hereditarily_directed, lesssim_star, sim_star, HSet};
pub use levels::{build_level, build_levels, hat_mult, HierLevel, LevelKind, LevelLimits};
pub use laws::{check_mult_laws, sample_pool, LawSampling};
