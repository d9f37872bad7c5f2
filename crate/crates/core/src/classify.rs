//! Decision procedures for normality, the Dacey property and linearity.
//!
//! Each procedure reports the lexicographically least counterexample it
//! finds, so failures are reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{build_lattice, OrthoLattice};
use crate::mask::Mask;
use crate::space::OrthoSpace;

/// A maximal orthogonal set `E`, a split `S | E∖S`, and `f ⊥ S`, `g ⊥ E∖S`
/// with `f` not orthogonal to `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityWitness {
    pub clique: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub f: usize,
    pub g: usize,
}

/// An orthoclosed `A` with a maximal orthogonal subset `D` whose closure falls short of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaceyWitness {
    pub a: Vec<usize>,
    pub d: Vec<usize>,
}

pub fn normality_witness(x: &OrthoSpace) -> Option<NormalityWitness> {
    let n = x.len();
    for e in x.maximal_orthogonal_masks() {
        let els = e.to_vec();
        let m = els.len();
        if m < 2 {
            continue;
        }
        // Unordered splits: the left part always holds the smallest member.
        for bits in 0u64..(1u64 << (m - 1)) - 1 {
            let mut left = Mask::singleton(n, els[0]);
            for (k, &el) in els[1..].iter().enumerate() {
                if bits >> k & 1 == 1 {
                    left.insert(el);
                }
            }
            let right = e.and_not(&left);
            let fs = x.complement_mask(&left);
            let gs = x.complement_mask(&right);
            for f in fs.iter() {
                if let Some(g) = gs.and_not(x.neighbors(f)).first() {
                    return Some(NormalityWitness {
                        clique: els,
                        left: left.to_vec(),
                        right: right.to_vec(),
                        f,
                        g,
                    });
                }
            }
        }
    }
    None
}

/// Normality via the split criterion on maximal orthogonal sets.
pub fn is_normal_fast(x: &OrthoSpace) -> bool {
    normality_witness(x).is_none()
}

/// Normality straight from the definition: the singleton closures of every
/// orthogonal set generate a Boolean subalgebra.
pub fn is_normal_oracle(x: &OrthoSpace) -> Result<bool> {
    let l = build_lattice(x)?;
    Ok(is_normal_oracle_in(x, &l))
}

pub fn is_normal_oracle_in(x: &OrthoSpace, l: &OrthoLattice) -> bool {
    x.orthogonal_masks().iter().all(|c| {
        let gens: Vec<usize> = c.iter().map(|i| l.singleton_closure(i)).collect();
        let sub = l.generated_subalgebra(&gens);
        l.is_boolean(&sub).expect("generated subalgebras are closed")
    })
}

pub fn dacey_witness_in(x: &OrthoSpace, l: &OrthoLattice) -> Option<DaceyWitness> {
    for a in l.elements() {
        for d in x.maximal_cliques_in(a) {
            if &x.closure_mask(&d) != a {
                return Some(DaceyWitness {
                    a: a.to_vec(),
                    d: d.to_vec(),
                });
            }
        }
    }
    None
}

/// Returns whether `x` is a Dacey space, with the first failing `(A, D)` otherwise.
pub fn is_dacey(x: &OrthoSpace) -> Result<(bool, Option<DaceyWitness>)> {
    let l = build_lattice(x)?;
    let w = dacey_witness_in(x, &l);
    Ok((w.is_none(), w))
}

/// Whether every maximal orthogonal subset of `a` has closure `a`.
pub fn maximal_subsets_generate(x: &OrthoSpace, a: &Mask) -> bool {
    x.maximal_cliques_in(a).iter().all(|d| &x.closure_mask(d) == a)
}

/// First ordered pair `(e, f)` of distinct elements lacking a `g` with
/// `{e,f}⊥ = {e,g}⊥` and exactly one of `f`, `g` orthogonal to `e`.
pub fn linearity_witness(x: &OrthoSpace) -> Option<(usize, usize)> {
    let n = x.len();
    for e in 0..n {
        let ne = x.neighbors(e);
        for f in 0..n {
            if f == e {
                continue;
            }
            let target = ne.and(x.neighbors(f));
            let f_orth = ne.contains(f);
            let found = (0..n).any(|g| ne.contains(g) != f_orth && ne.and(x.neighbors(g)) == target);
            if !found {
                return Some((e, f));
            }
        }
    }
    None
}

pub fn is_linear(x: &OrthoSpace) -> bool {
    linearity_witness(x).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "criterion", rename_all = "snake_case")]
pub enum Witness {
    Normal {
        clique: Vec<String>,
        split: [Vec<String>; 2],
        f: String,
        g: String,
    },
    Dacey {
        a: Vec<String>,
        d: Vec<String>,
    },
    Linear {
        e: String,
        f: String,
    },
    Irredundant {
        e: String,
        f: String,
    },
    StronglyIrredundant {
        e: String,
        f: String,
    },
    Irreducible {
        part: Vec<String>,
        rest: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub n: usize,
    pub rank: usize,
    pub lattice_size: usize,
    pub normal: bool,
    pub dacey: bool,
    pub linear: bool,
    pub irredundant: bool,
    pub strongly_irredundant: bool,
    pub irreducible: bool,
    pub witnesses: Vec<Witness>,
}

impl ClassReport {
    pub fn witness(&self, criterion: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| {
            matches!(
                (criterion, w),
                ("normal", Witness::Normal { .. })
                    | ("dacey", Witness::Dacey { .. })
                    | ("linear", Witness::Linear { .. })
                    | ("irredundant", Witness::Irredundant { .. })
                    | ("strongly_irredundant", Witness::StronglyIrredundant { .. })
                    | ("irreducible", Witness::Irreducible { .. })
            )
        })
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        Some(match name {
            "normal" => self.normal,
            "dacey" => self.dacey,
            "linear" => self.linear,
            "irredundant" => self.irredundant,
            "strongly_irredundant" => self.strongly_irredundant,
            "irreducible" => self.irreducible,
            _ => return None,
        })
    }
}

fn names(x: &OrthoSpace, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| x.label(i).to_owned()).collect()
}

/// Runs every predicate and checks the implications that must hold between
/// them; any violation is reported as an internal inconsistency.
pub fn classify(x: &OrthoSpace) -> Result<ClassReport> {
    let l = build_lattice(x)?;
    classify_with(x, &l)
}

pub fn classify_with(x: &OrthoSpace, l: &OrthoLattice) -> Result<ClassReport> {
    let lbl = |i: usize| x.label(i).to_owned();
    let mut witnesses = Vec::new();

    let nw = normality_witness(x);
    if let Some(w) = &nw {
        witnesses.push(Witness::Normal {
            clique: names(x, &w.clique),
            split: [names(x, &w.left), names(x, &w.right)],
            f: lbl(w.f),
            g: lbl(w.g),
        });
    }
    let dw = dacey_witness_in(x, l);
    if let Some(w) = &dw {
        witnesses.push(Witness::Dacey {
            a: names(x, &w.a),
            d: names(x, &w.d),
        });
    }
    let lw = linearity_witness(x);
    if let Some((e, f)) = lw {
        witnesses.push(Witness::Linear { e: lbl(e), f: lbl(f) });
    }
    let iw = x.irredundancy_witness();
    if let Some((e, f)) = iw {
        witnesses.push(Witness::Irredundant { e: lbl(e), f: lbl(f) });
    }
    let sw = x.strong_irredundancy_witness();
    if let Some((e, f)) = sw {
        witnesses.push(Witness::StronglyIrredundant { e: lbl(e), f: lbl(f) });
    }
    let rw = x.reducibility_witness();
    if let Some(part) = &rw {
        let rest = Mask::full(x.len()).and_not(part);
        witnesses.push(Witness::Irreducible {
            part: names(x, &part.to_vec()),
            rest: names(x, &rest.to_vec()),
        });
    }

    let report = ClassReport {
        n: x.len(),
        rank: x.rank(),
        lattice_size: l.len(),
        normal: nw.is_none(),
        dacey: dw.is_none(),
        linear: lw.is_none(),
        irredundant: iw.is_none(),
        strongly_irredundant: sw.is_none(),
        irreducible: rw.is_none(),
        witnesses,
    };

    let fail = |msg: &str| Err(Error::InternalInconsistency(msg.to_owned()));
    if report.dacey != l.is_orthomodular() {
        return fail("Dacey criterion disagrees with lattice orthomodularity");
    }
    if report.dacey && !report.normal {
        return fail("Dacey space that is not normal");
    }
    if report.linear && !report.strongly_irredundant {
        return fail("linear space that is not strongly irredundant");
    }
    if report.strongly_irredundant && !report.irredundant {
        return fail("strongly irredundant space that is not irredundant");
    }
    // Only this direction: disjoint unions of cliques, one of them with three
    // or more elements, are irreducible, strongly irredundant and Dacey but
    // not linear.
    if report.linear && !(report.irreducible && report.strongly_irredundant && report.dacey) {
        return fail("linear space that is not an irreducible, strongly irredundant Dacey space");
    }
    Ok(report)
}
