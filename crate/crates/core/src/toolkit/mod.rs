//! File formats, generators, the census, fixture search and exports.

pub mod canon;
pub mod census;
pub mod demo;
pub mod export;
pub mod generators;
pub mod osp;
pub mod rays;
pub mod report;
pub mod search;

pub use census::{census, census_with, Census, CensusOptions, CensusRecord};
pub use generators::{dspace, nset};
pub use osp::{parse_document, parse_osp, serialize_document, serialize_osp, ParseError, SpaceDocument};
pub use search::{search_fixture, FixtureHit, Predicate};
