//! The ortholattice of orthoclosed subsets, materialized explicitly.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::space::{OrthoSpace, SpaceId, Subset};

pub const DEFAULT_SIZE_CAP: usize = 100_000;

/// Spaces up to this size are built by closing every subset.
const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildStrategy {
    /// Exhaustive up to 20 elements, intersection closure above.
    Auto,
    /// Double complement of every subset.
    Exhaustive,
    /// Breadth-first intersection closure of the singleton complements.
    Closure,
}

#[derive(Clone, Copy, Debug)]
pub struct LatticeOptions {
    pub cap: usize,
    pub strategy: BuildStrategy,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            cap: DEFAULT_SIZE_CAP,
            strategy: BuildStrategy::Auto,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrthoLattice {
    space: SpaceId,
    adj: Vec<Mask>,
    n: usize,
    elements: Vec<Mask>,
    index: HashMap<Mask, usize>,
    ocomp: Vec<usize>,
    atoms: Vec<usize>,
}

/// A witness that orthomodularity fails: `a ≤ b` but `a ∨ (b ∧ a⊥) ≠ b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthomodularityWitness {
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanBlock {
    pub generator_elems: Vec<usize>,
    pub members: BTreeSet<usize>,
    pub atom_count: usize,
    pub top: usize,
}

pub fn build_lattice(x: &OrthoSpace) -> Result<OrthoLattice> {
    OrthoLattice::build(x, LatticeOptions::default())
}

impl OrthoLattice {
    pub fn build(x: &OrthoSpace, opts: LatticeOptions) -> Result<Self> {
        let n = x.len();
        let exhaustive = match opts.strategy {
            BuildStrategy::Exhaustive => true,
            BuildStrategy::Closure => false,
            BuildStrategy::Auto => n <= EXHAUSTIVE_LIMIT,
        };
        let mut set: HashSet<Mask> = HashSet::new();
        if exhaustive {
            if n > 63 {
                return Err(Error::BadParameter(
                    "exhaustive lattice construction needs fewer than 64 elements".into(),
                ));
            }
            for w in 0..(1u64 << n) {
                set.insert(x.closure_mask(&Mask::from_word(n, w)));
                if set.len() > opts.cap {
                    return Err(Error::SizeLimit { cap: opts.cap });
                }
            }
        } else {
            // Every orthoclosed set is an intersection of singleton complements.
            let full = Mask::full(n);
            let mut queue = VecDeque::from([full.clone()]);
            set.insert(full);
            while let Some(s) = queue.pop_front() {
                for i in 0..n {
                    let t = s.and(x.neighbors(i));
                    if set.insert(t.clone()) {
                        if set.len() > opts.cap {
                            return Err(Error::SizeLimit { cap: opts.cap });
                        }
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut elements: Vec<Mask> = set.into_iter().collect();
        elements.sort();
        let index: HashMap<Mask, usize> =
            elements.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let ocomp = elements
            .iter()
            .map(|m| index[&x.complement_mask(m)])
            .collect();
        let mut lat = OrthoLattice {
            space: x.id(),
            adj: x.adjacency().to_vec(),
            n,
            elements,
            index,
            ocomp,
            atoms: Vec::new(),
        };
        lat.atoms = (1..lat.len())
            .filter(|&k| {
                (1..lat.len()).all(|j| j == k || !lat.elements[j].is_subset(&lat.elements[k]))
            })
            .collect();
        Ok(lat)
    }

    pub fn space_id(&self) -> SpaceId {
        self.space
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Mask] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &Mask {
        &self.elements[k]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn index_of(&self, m: &Mask) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn index_of_subset(&self, s: &Subset) -> Option<usize> {
        (s.space_id() == self.space).then(|| self.index_of(s.mask())).flatten()
    }

    fn complement(&self, m: &Mask) -> Mask {
        let mut r = Mask::full(self.n);
        for i in m.iter() {
            r.and_assign(&self.adj[i]);
        }
        r
    }

    /// Index of the closure of an arbitrary subset.
    pub fn closure_index(&self, m: &Mask) -> usize {
        self.index[&self.complement(&self.complement(m))]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(&self.elements[b])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].and(&self.elements[b])]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.closure_index(&self.elements[a].or(&self.elements[b]))
    }

    pub fn orthocomplement(&self, a: usize) -> usize {
        self.ocomp[a]
    }

    /// Closure of `{e}` for each element `e` of the space.
    pub fn singleton_closure(&self, e: usize) -> usize {
        self.closure_index(&Mask::singleton(self.n, e))
    }

    /// Scans every comparable pair in index order for a violation of the
    /// orthomodular law; returns the first one found.
    pub fn orthomodularity_witness(&self) -> Option<OrthomodularityWitness> {
        for a in 0..self.len() {
            let ca = self.ocomp[a];
            for b in 0..self.len() {
                if self.leq(a, b) && self.join(a, self.meet(b, ca)) != b {
                    return Some(OrthomodularityWitness { a, b });
                }
            }
        }
        None
    }

    pub fn is_orthomodular(&self) -> bool {
        self.orthomodularity_witness().is_none()
    }

    /// Smallest set containing `gens`, bottom and top that is closed under
    /// meet, join and orthocomplement.
    pub fn generated_subalgebra(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut members: BTreeSet<usize> = gens.iter().copied().collect();
        members.insert(self.bottom());
        members.insert(self.top());
        loop {
            let cur: Vec<usize> = members.iter().copied().collect();
            let mut grew = false;
            for &a in &cur {
                grew |= members.insert(self.ocomp[a]);
                for &b in &cur {
                    grew |= members.insert(self.meet(a, b));
                    grew |= members.insert(self.join(a, b));
                }
            }
            if !grew {
                return members;
            }
        }
    }

    pub fn is_subalgebra(&self, members: &BTreeSet<usize>) -> bool {
        members.contains(&self.bottom())
            && members.contains(&self.top())
            && members.iter().all(|&a| {
                members.contains(&self.ocomp[a])
                    && members
                        .iter()
                        .all(|&b| members.contains(&self.meet(a, b)) && members.contains(&self.join(a, b)))
            })
    }

    /// Distributivity over every triple of a subalgebra.
    pub fn is_boolean(&self, members: &BTreeSet<usize>) -> Result<bool> {
        if !self.is_subalgebra(members) {
            return Err(Error::NotSubalgebra);
        }
        let m: Vec<usize> = members.iter().copied().collect();
        for &a in &m {
            for &b in &m {
                for &c in &m {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Join-closure of the singleton closures of an orthogonal set, plus the empty join.
    pub fn boolean_block(&self, x: &OrthoSpace, e: &Subset) -> Result<BooleanBlock> {
        if e.space_id() != self.space || x.id() != self.space {
            return Err(Error::ForeignSubset);
        }
        if e.is_empty() || !x.is_orthogonal_set(e) {
            return Err(Error::NotOrthogonalSet);
        }
        let generator_elems: Vec<usize> = e.mask().iter().map(|i| self.singleton_closure(i)).collect();
        let mut members: BTreeSet<usize> = BTreeSet::from([self.bottom()]);
        for &g in &generator_elems {
            let cur: Vec<usize> = members.iter().copied().collect();
            for c in cur {
                members.insert(self.join(c, g));
            }
        }
        Ok(BooleanBlock {
            atom_count: generator_elems.len(),
            top: self.closure_index(e.mask()),
            generator_elems,
            members,
        })
    }

    /// Hasse diagram edges `(lower, upper)` of the covering relation.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a != b
                    && self.leq(a, b)
                    && !(0..self.len()).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
