//! Smallest census spaces with a prescribed combination of properties.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{dacey_witness_in, is_normal_fast};
use crate::error::{Error, Result};
use crate::lattice::build_lattice;
use crate::morphisms::{criterion_five, SpaceMap};
use crate::space::OrthoSpace;
use crate::toolkit::census::enumerate_classes;

/// Exhaustive search stops here; `n = 9` has 274668 classes.
pub const SEARCH_MAX_N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    /// Normal space that is not Dacey.
    NormalNotDacey,
    /// Normal space with an orthoclosed subset whose subspace is not normal.
    NormalWithNonnormalSubspace,
    /// Normal space with a normal orthoclosed subspace whose inclusion is not
    /// a normal homomorphism.
    NonnormalInclusion,
}

impl Predicate {
    pub const ALL: [Predicate; 3] = [
        Predicate::NormalNotDacey,
        Predicate::NormalWithNonnormalSubspace,
        Predicate::NonnormalInclusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::NormalNotDacey => "normal_not_dacey",
            Predicate::NormalWithNonnormalSubspace => "normal_with_nonnormal_subspace",
            Predicate::NonnormalInclusion => "nonnormal_inclusion",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;
    /// Accepts `-` in place of `_`.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::BadParameter(format!("unknown predicate `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct FixtureHit {
    pub predicate: Predicate,
    pub certificate: String,
    pub space: OrthoSpace,
    /// The orthoclosed subset responsible: the failing `A` of the Dacey
    /// criterion, or the offending subspace.
    pub subset: Vec<String>,
    /// For inclusions: the maximal orthogonal subset of `A` whose closure in
    /// the ambient space differs from `A`. For Dacey failures: the subset `D`.
    pub clique: Vec<String>,
}

fn names(x: &OrthoSpace, idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| x.label(i).to_owned()).collect()
}

fn probe(p: Predicate, x: &OrthoSpace) -> Result<Option<(Vec<String>, Vec<String>)>> {
    if !is_normal_fast(x) {
        return Ok(None);
    }
    let l = build_lattice(x)?;
    if p == Predicate::NormalNotDacey {
        return Ok(dacey_witness_in(x, &l).map(|w| (names(x, w.a), names(x, w.d))));
    }
    for a in l.elements().iter().filter(|a| !a.is_empty()) {
        let sub = x.induced(a)?;
        let sub_normal = is_normal_fast(&sub.space);
        match p {
            Predicate::NormalWithNonnormalSubspace if !sub_normal => {
                return Ok(Some((names(x, a.iter()), Vec::new())));
            }
            Predicate::NonnormalInclusion if sub_normal => {
                let m = SpaceMap::new(&sub.space, x, sub.embedding.clone())?;
                if let Some(w) = criterion_five(&m) {
                    let clique = w.clique.iter().map(|&i| sub.embedding[i]);
                    return Ok(Some((names(x, a.iter()), names(x, clique))));
                }
            }
            _ => {}
        }
    }
    Ok(None)
}

/// The first class in census order (by `n`, then certificate) satisfying `p`.
pub fn search_fixture(p: Predicate, max_n: usize) -> Result<FixtureHit> {
    if max_n > SEARCH_MAX_N {
        return Err(Error::BadParameter(format!("search is limited to n <= {SEARCH_MAX_N}")));
    }
    for level in enumerate_classes(max_n)? {
        for (cert, x) in level {
            if let Some((subset, clique)) = probe(p, &x)? {
                let space = x.with_name(p.name());
                return Ok(FixtureHit {
                    predicate: p,
                    certificate: cert,
                    space,
                    subset,
                    clique,
                });
            }
        }
    }
    Err(Error::NotFoundWithinBound(p.name().to_owned()))
}
