//! Homomorphisms between orthogonality spaces, their normality, and the
//! maps they induce on ortholattices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::is_normal_fast;
use crate::error::{Error, Result};
use crate::lattice::OrthoLattice;
use crate::mask::Mask;
use crate::space::{OrthoSpace, SpaceId};

pub const DEFAULT_HOM_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapStatus {
    Unchecked,
    Homomorphism,
    Normal,
}

#[derive(Clone, Debug)]
pub struct SpaceMap<'a> {
    src: &'a OrthoSpace,
    dst: &'a OrthoSpace,
    table: Vec<usize>,
    status: MapStatus,
}

impl PartialEq for SpaceMap<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.src.id() == other.src.id() && self.dst.id() == other.dst.id() && self.table == other.table
    }
}

/// Serialized form of a map: `{src, dst, table, status}` with labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub src: String,
    pub dst: String,
    pub table: Vec<String>,
    pub status: MapStatus,
}

impl<'a> SpaceMap<'a> {
    pub fn new(src: &'a OrthoSpace, dst: &'a OrthoSpace, table: Vec<usize>) -> Result<Self> {
        if table.len() != src.len() {
            return Err(Error::BadTable {
                got: table.len(),
                expected: src.len(),
            });
        }
        if let Some(&index) = table.iter().find(|&&t| t >= dst.len()) {
            return Err(Error::IndexOutOfRange {
                index,
                len: dst.len(),
            });
        }
        Ok(SpaceMap {
            src,
            dst,
            table,
            status: MapStatus::Unchecked,
        })
    }

    pub fn identity(x: &'a OrthoSpace) -> Self {
        SpaceMap {
            src: x,
            dst: x,
            table: (0..x.len()).collect(),
            status: MapStatus::Unchecked,
        }
    }

    pub fn src(&self) -> &'a OrthoSpace {
        self.src
    }

    pub fn dst(&self) -> &'a OrthoSpace {
        self.dst
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn status(&self) -> MapStatus {
        self.status
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn image_mask(&self, a: &Mask) -> Mask {
        Mask::from_indices(self.dst.len(), a.iter().map(|i| self.table[i]))
    }

    /// Runs the verifiers and records the strongest status that holds.
    pub fn verified(mut self) -> Self {
        self.status = if !is_homomorphism(&self) {
            MapStatus::Unchecked
        } else if is_normal_fast(self.src) && is_normal_fast(self.dst) && criterion_five(&self).is_none() {
            MapStatus::Normal
        } else {
            MapStatus::Homomorphism
        };
        self
    }

    pub fn record(&self) -> MapRecord {
        MapRecord {
            src: self.src.name().unwrap_or("src").to_owned(),
            dst: self.dst.name().unwrap_or("dst").to_owned(),
            table: self.table.iter().map(|&t| self.dst.label(t).to_owned()).collect(),
            status: self.status,
        }
    }
}

pub fn is_homomorphism(m: &SpaceMap<'_>) -> bool {
    m.src
        .edges()
        .into_iter()
        .all(|(i, j)| m.dst.is_orth(m.table[i], m.table[j]))
}

/// A maximal orthogonal set `E` of the source and an element `x` with
/// `φ(x) ∉ φ(E)⊥⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalHomWitness {
    pub clique: Vec<usize>,
    pub element: usize,
}

/// `φ(X) ⊆ φ(E)⊥⊥` for every maximal orthogonal `E`; returns the first failure.
/// Assumes without checking that `m` is a homomorphism between normal spaces.
pub fn criterion_five(m: &SpaceMap<'_>) -> Option<NormalHomWitness> {
    let image = m.image_mask(&Mask::full(m.src.len()));
    for e in m.src.maximal_orthogonal_masks() {
        let cl = m.dst.closure_mask(&m.image_mask(&e));
        if !image.is_subset(&cl) {
            let bad = image.and_not(&cl).first().expect("nonempty difference");
            let element = (0..m.src.len())
                .find(|&i| m.table[i] == bad)
                .expect("image element has a preimage");
            return Some(NormalHomWitness {
                clique: e.to_vec(),
                element,
            });
        }
    }
    None
}

/// `φ(X)⊥⊥ = φ(E)⊥⊥` for every maximal orthogonal `E`.
pub fn criterion_four(m: &SpaceMap<'_>) -> bool {
    let image = m.dst.closure_mask(&m.image_mask(&Mask::full(m.src.len())));
    m.src
        .maximal_orthogonal_masks()
        .iter()
        .all(|e| m.dst.closure_mask(&m.image_mask(e)) == image)
}

/// `φ(D⊥⊥) ⊆ φ(D)⊥⊥` for every nonempty orthogonal `D`.
pub fn criterion_three(m: &SpaceMap<'_>) -> bool {
    m.src.orthogonal_masks().iter().all(|d| {
        let lhs = m.image_mask(&m.src.closure_mask(d));
        lhs.is_subset(&m.dst.closure_mask(&m.image_mask(d)))
    })
}

/// Whether a homomorphism between normal spaces is normal; `None` when it is,
/// otherwise the first violating maximal orthogonal set.
pub fn is_normal_hom(m: &SpaceMap<'_>) -> Result<Option<NormalHomWitness>> {
    if !is_normal_fast(m.src) {
        return Err(Error::SourceNotNormal);
    }
    if !is_normal_fast(m.dst) {
        return Err(Error::TargetNotNormal);
    }
    if !is_homomorphism(m) {
        return Err(Error::NotHomomorphism);
    }
    Ok(criterion_five(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source_lattice: SpaceId,
    pub target_lattice: SpaceId,
    pub table: Vec<usize>,
}

/// `A ↦ φ(A)⊥⊥` on orthoclosed sets.
pub fn induced_lattice_map(
    m: &SpaceMap<'_>,
    source: &OrthoLattice,
    target: &OrthoLattice,
) -> Result<InducedMap> {
    if source.space_id() != m.src.id() || target.space_id() != m.dst.id() {
        return Err(Error::Mismatch);
    }
    if !is_homomorphism(m) {
        return Err(Error::NotHomomorphism);
    }
    let table: Vec<usize> = source
        .elements()
        .iter()
        .map(|a| target.closure_index(&m.image_mask(a)))
        .collect();
    let induced = InducedMap {
        source_lattice: source.space_id(),
        target_lattice: target.space_id(),
        table,
    };
    for a in 0..source.len() {
        let ca = source.orthocomplement(a);
        for b in 0..source.len() {
            if source.leq(a, b) && !target.leq(induced.table[a], induced.table[b]) {
                return Err(Error::InternalInconsistency("induced map is not monotone".into()));
            }
            if source.leq(b, ca) && !target.leq(induced.table[b], target.orthocomplement(induced.table[a])) {
                return Err(Error::InternalInconsistency(
                    "induced map does not preserve orthogonality".into(),
                ));
            }
        }
    }
    Ok(induced)
}

pub fn compose<'a>(f: &SpaceMap<'a>, g: &SpaceMap<'a>) -> Result<SpaceMap<'a>> {
    if f.dst.id() != g.src.id() {
        return Err(Error::Mismatch);
    }
    let table = f.table.iter().map(|&t| g.table[t]).collect();
    let mut h = SpaceMap {
        src: f.src,
        dst: g.dst,
        table,
        status: MapStatus::Unchecked,
    };
    if f.status == MapStatus::Normal && g.status == MapStatus::Normal {
        h = h.verified();
        if h.status != MapStatus::Normal {
            return Err(Error::InternalInconsistency(
                "composite of normal homomorphisms is not normal".into(),
            ));
        }
    } else if f.status >= MapStatus::Homomorphism && g.status >= MapStatus::Homomorphism {
        h.status = MapStatus::Homomorphism;
    }
    Ok(h)
}

#[derive(Clone, Debug)]
pub struct HomEnumeration<'a> {
    pub maps: Vec<SpaceMap<'a>>,
    pub truncated: bool,
}

fn extend_homs(
    src: &OrthoSpace,
    dst: &OrthoSpace,
    table: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
    accept: &dyn Fn(&[usize]) -> bool,
) -> bool {
    if out.len() >= cap {
        return false;
    }
    let i = table.len();
    if i == src.len() {
        if accept(table) {
            out.push(table.clone());
        }
        return true;
    }
    'img: for y in 0..dst.len() {
        for j in src.neighbors(i).iter().take_while(|&j| j < i) {
            if !dst.is_orth(table[j], y) {
                continue 'img;
            }
        }
        table.push(y);
        let more = extend_homs(src, dst, table, out, cap, accept);
        table.pop();
        if !more {
            return false;
        }
    }
    out.len() < cap
}

/// All homomorphisms `src → dst` in lexicographic order of their tables,
/// optionally only the normal ones. Stops after `cap` maps. Normal maps are
/// only defined between normal spaces, so `normal_only` on other spaces
/// yields nothing.
pub fn enumerate_homs<'a>(
    src: &'a OrthoSpace,
    dst: &'a OrthoSpace,
    normal_only: bool,
    cap: usize,
) -> HomEnumeration<'a> {
    if normal_only && !(is_normal_fast(src) && is_normal_fast(dst)) {
        return HomEnumeration {
            maps: Vec::new(),
            truncated: false,
        };
    }
    let src_cliques = src.maximal_orthogonal_masks();
    let accept = |t: &[usize]| {
        if !normal_only {
            return true;
        }
        let image = Mask::from_indices(dst.len(), t.iter().copied());
        src_cliques.iter().all(|e| {
            let ie = Mask::from_indices(dst.len(), e.iter().map(|i| t[i]));
            image.is_subset(&dst.closure_mask(&ie))
        })
    };
    // Each first-element image is an independent partition of the search.
    let parts: Vec<Vec<Vec<usize>>> = (0..dst.len())
        .into_par_iter()
        .map(|y| {
            let mut out = Vec::new();
            let mut table = vec![y];
            extend_homs(src, dst, &mut table, &mut out, cap + 1, &accept);
            out
        })
        .collect();
    let mut tables: Vec<Vec<usize>> = parts.into_iter().flatten().collect();
    let truncated = tables.len() > cap;
    tables.truncate(cap);
    let status = if normal_only {
        MapStatus::Normal
    } else {
        MapStatus::Homomorphism
    };
    HomEnumeration {
        maps: tables
            .into_iter()
            .map(|table| SpaceMap { src, dst, table, status })
            .collect(),
        truncated,
    }
}

fn extend_auts(x: &OrthoSpace, table: &mut Vec<usize>, used: &mut Mask, degs: &[usize], out: &mut Vec<Vec<usize>>) {
    let i = table.len();
    if i == x.len() {
        out.push(table.clone());
        return;
    }
    for y in 0..x.len() {
        if used.contains(y) || degs[y] != degs[i] {
            continue;
        }
        if (0..i).all(|j| x.is_orth(i, j) == x.is_orth(y, table[j])) {
            table.push(y);
            used.insert(y);
            extend_auts(x, table, used, degs, out);
            used.remove(y);
            table.pop();
        }
    }
}

/// The full automorphism group in lexicographic order of the tables.
pub fn automorphisms(x: &OrthoSpace) -> Vec<SpaceMap<'_>> {
    let degs: Vec<usize> = (0..x.len()).map(|i| x.neighbors(i).count()).collect();
    let mut out = Vec::new();
    extend_auts(x, &mut Vec::new(), &mut Mask::empty(x.len()), &degs, &mut out);
    let normal = is_normal_fast(x);
    out.into_iter()
        .map(|table| SpaceMap {
            src: x,
            dst: x,
            table,
            status: if normal {
                MapStatus::Normal
            } else {
                MapStatus::Homomorphism
            },
        })
        .collect()
}

pub fn inverse<'a>(m: &SpaceMap<'a>) -> Option<SpaceMap<'a>> {
    let mut inv = vec![usize::MAX; m.dst.len()];
    for (i, &t) in m.table.iter().enumerate() {
        if inv[t] != usize::MAX {
            return None;
        }
        inv[t] = i;
    }
    if inv.contains(&usize::MAX) {
        return None;
    }
    Some(SpaceMap {
        src: m.dst,
        dst: m.src,
        table: inv,
        status: m.status,
    })
}
