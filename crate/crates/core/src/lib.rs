//! Enumeration of ribbon graphs of closed curves with self-intersections and
//! exact counts of their embeddings in surfaces, up to the mapping class
//! group.
//!
//! - [`gauss`]: signed Gauss words and their 4-valent maps.
//! - [`map`]: face tracing, genus, canonical forms and automorphisms.
//! - [`census`]: isomorphism classes by crossing number and genus.
//! - [`counting`]: orbit counts, leading-order formulas and statistics.
//! - [`geometry`]: length bounds and the short-orbit bound.
//! - [`cli`]: the `curve-orbits` command.

pub mod census;
pub mod cli;
pub mod counting;
pub mod gauss;
pub mod geometry;
pub mod map;

pub use census::{build_census, constant_c, Census, CensusConfig, ExactRational, RibbonGraphClass};
pub use counting::{count_embeddings, count_orbits_total, CountMode, EmbeddingFilter, OrbitInvariant};
pub use gauss::{parse_gauss_word, GaussWord, Sign};
pub use map::{canonical_form, CanonicalKey, CombinatorialMap, RibbonGraph};
