//! Two-valued measures: assignments of 0 and 1 to the elements of a space
//! such that every maximal orthogonal set has exactly one element valued 1.

use serde::{Deserialize, Serialize};

use crate::classify::is_dacey;
use crate::error::{Error, Result};
use crate::lattice::OrthoLattice;
use crate::mask::Mask;
use crate::morphisms::{is_homomorphism, SpaceMap};
use crate::space::OrthoSpace;

pub const DEFAULT_MEASURE_CAP: u64 = 1 << 20;

/// Serializes as a list of bits in element order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwoValuedMeasure {
    bits: Vec<u8>,
}

impl TwoValuedMeasure {
    pub fn from_bits(bits: Vec<u8>) -> Self {
        TwoValuedMeasure { bits }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn value(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn ones(&self, n: usize) -> Mask {
        Mask::from_indices(n, (0..n).filter(|&i| self.bits[i] == 1))
    }

    pub fn is_valid_on(&self, x: &OrthoSpace) -> bool {
        self.bits.len() == x.len()
            && self.bits.iter().all(|&b| b <= 1)
            && x
                .maximal_orthogonal_masks()
                .iter()
                .all(|e| e.iter().filter(|&i| self.bits[i] == 1).count() == 1)
    }
}

struct Search {
    n: usize,
    cliques: Vec<Mask>,
    member_of: Vec<Vec<usize>>,
    order: Vec<usize>,
}

#[derive(Clone)]
struct State {
    ones: Mask,
    zeros: Mask,
}

impl Search {
    fn new(x: &OrthoSpace) -> Self {
        let n = x.len();
        let cliques = x.maximal_orthogonal_masks();
        let mut member_of = vec![Vec::new(); n];
        for (k, c) in cliques.iter().enumerate() {
            for i in c.iter() {
                member_of[i].push(k);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(member_of[i].len()), i));
        Search {
            n,
            cliques,
            member_of,
            order,
        }
    }

    /// Unit propagation to a fixpoint; `false` on a conflict.
    fn propagate(&self, st: &mut State, mut queue: Vec<usize>) -> bool {
        while let Some(k) = queue.pop() {
            let c = &self.cliques[k];
            let ones = c.and(&st.ones);
            match ones.count() {
                0 => {
                    let open = c.and_not(&st.zeros);
                    match open.count() {
                        0 => return false,
                        1 => {
                            let i = open.first().expect("one open element");
                            st.ones.insert(i);
                            queue.extend(&self.member_of[i]);
                        }
                        _ => {}
                    }
                }
                1 => {
                    let rest = c.and_not(&st.ones).and_not(&st.zeros);
                    for i in rest.iter() {
                        st.zeros.insert(i);
                        queue.extend(&self.member_of[i]);
                    }
                }
                _ => return false,
            }
        }
        true
    }

    fn assign(&self, st: &State, i: usize, one: bool) -> Option<State> {
        let mut s = st.clone();
        if one {
            s.ones.insert(i);
        } else {
            s.zeros.insert(i);
        }
        self.propagate(&mut s, self.member_of[i].clone()).then_some(s)
    }

    fn start(&self) -> Option<State> {
        let mut st = State {
            ones: Mask::empty(self.n),
            zeros: Mask::empty(self.n),
        };
        self.propagate(&mut st, (0..self.cliques.len()).collect()).then_some(st)
    }

    fn next_var(&self, st: &State) -> Option<usize> {
        self.order
            .iter()
            .copied()
            .find(|&i| !st.ones.contains(i) && !st.zeros.contains(i))
    }

    fn to_measure(&self, st: &State) -> TwoValuedMeasure {
        TwoValuedMeasure {
            bits: (0..self.n).map(|i| st.ones.contains(i) as u8).collect(),
        }
    }

    /// Depth-first over the decision variables; `visit` returns `false` to stop.
    fn walk(&self, st: State, visit: &mut dyn FnMut(TwoValuedMeasure) -> bool) -> bool {
        let Some(i) = self.next_var(&st) else {
            return visit(self.to_measure(&st));
        };
        for one in [true, false] {
            if let Some(s) = self.assign(&st, i, one) {
                if !self.walk(s, visit) {
                    return false;
                }
            }
        }
        true
    }
}

/// A two-valued measure, or `None` after an exhaustive search.
pub fn find_two_valued_measure(x: &OrthoSpace) -> Option<TwoValuedMeasure> {
    let search = Search::new(x);
    let mut found = None;
    if let Some(st) = search.start() {
        search.walk(st, &mut |m| {
            found = Some(m);
            false
        });
    }
    if let Some(m) = &found {
        assert!(m.is_valid_on(x), "search returned an invalid measure");
    }
    found
}

/// All measures in search order, at most `cap` of them.
pub fn enumerate_measures(x: &OrthoSpace, cap: u64) -> (Vec<TwoValuedMeasure>, bool) {
    let search = Search::new(x);
    let mut out = Vec::new();
    let mut truncated = false;
    if let Some(st) = search.start() {
        search.walk(st, &mut |m| {
            if out.len() as u64 >= cap {
                truncated = true;
                return false;
            }
            out.push(m);
            true
        });
    }
    (out, truncated)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureCount {
    pub count: u64,
    pub truncated: bool,
}

pub fn count_measures(x: &OrthoSpace, cap: u64) -> MeasureCount {
    let search = Search::new(x);
    let mut count = 0u64;
    let mut truncated = false;
    if let Some(st) = search.start() {
        search.walk(st, &mut |_| {
            if count >= cap {
                truncated = true;
                return false;
            }
            count += 1;
            true
        });
    }
    MeasureCount { count, truncated }
}

/// Every assignment in `{0,1}^n` checked directly; `n ≤ 24`.
pub fn brute_force_measures(x: &OrthoSpace) -> Result<Vec<TwoValuedMeasure>> {
    let n = x.len();
    if n > 24 {
        return Err(Error::BadParameter(format!("brute force over 2^{n} assignments")));
    }
    let cliques = x.maximal_orthogonal_masks();
    Ok((0u64..1 << n)
        .filter(|&w| {
            let ones = Mask::from_word(n, w);
            cliques.iter().all(|c| c.and(&ones).count() == 1)
        })
        .map(|w| TwoValuedMeasure {
            bits: (0..n).map(|i| ((w >> i) & 1) as u8).collect(),
        })
        .collect())
}

/// A state on the ortholattice, one value per lattice element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeState {
    pub values: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LiftOutcome {
    State(LatticeState),
    /// Two maximal orthogonal subsets of the same orthoclosed set disagree.
    Inconsistent { element: Vec<usize>, first: Vec<usize>, second: Vec<usize> },
    /// Additivity fails on the orthogonal pair `a`, `b`.
    NotAdditive { a: Vec<usize>, b: Vec<usize> },
}

/// `μ(A) = Σ m` over a maximal orthogonal subset of `A`, checked to be
/// independent of the subset, additive on orthogonal pairs and 1 on `X`.
pub fn lift_to_lattice_state(x: &OrthoSpace, l: &OrthoLattice, m: &TwoValuedMeasure) -> Result<LiftOutcome> {
    if l.space_id() != x.id() || m.bits.len() != x.len() {
        return Err(Error::Mismatch);
    }
    if !is_dacey(x)?.0 {
        return Err(Error::NotDacey);
    }
    let mut values = Vec::with_capacity(l.len());
    for a in l.elements() {
        let cliques = x.maximal_cliques_in(a);
        let weigh = |c: &Mask| c.iter().map(|i| m.bits[i] as u32).sum::<u32>();
        let v = cliques.first().map_or(0, weigh);
        if let Some(c) = cliques.iter().find(|c| weigh(c) != v) {
            return Ok(LiftOutcome::Inconsistent {
                element: a.to_vec(),
                first: cliques[0].to_vec(),
                second: c.to_vec(),
            });
        }
        values.push(v as u8);
    }
    if values[l.top()] != 1 {
        return Ok(LiftOutcome::NotAdditive {
            a: l.element(l.top()).to_vec(),
            b: Vec::new(),
        });
    }
    for a in 0..l.len() {
        let ca = l.orthocomplement(a);
        for b in 0..l.len() {
            if l.leq(b, ca) && values[l.join(a, b)] != values[a] + values[b] {
                return Ok(LiftOutcome::NotAdditive {
                    a: l.element(a).to_vec(),
                    b: l.element(b).to_vec(),
                });
            }
        }
    }
    Ok(LiftOutcome::State(LatticeState { values }))
}

/// From a homomorphism onto the three-element space (3,≠): value 1 on the
/// preimage of one target element. Returns the first valid choice.
pub fn measure_from_three_morphism(phi: &SpaceMap<'_>) -> Result<Option<TwoValuedMeasure>> {
    let dst = phi.dst();
    if dst.len() != 3 || dst.edge_count() != 3 {
        return Err(Error::Mismatch);
    }
    if !is_homomorphism(phi) {
        return Err(Error::NotHomomorphism);
    }
    for c in 0..3 {
        let m = TwoValuedMeasure {
            bits: phi.table().iter().map(|&t| (t == c) as u8).collect(),
        };
        if m.is_valid_on(phi.src()) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
