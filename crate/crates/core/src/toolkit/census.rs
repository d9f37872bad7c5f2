//! Census of all spaces up to isomorphism, with universal checks of the
//! structural theorems on every class.
//!
//! Classes on `n` elements come from classes on `n - 1` elements by adding
//! one element with every possible neighbourhood and keeping the distinct
//! canonical forms. Classification runs in parallel; results are ordered by
//! `(n, certificate)` so the output does not depend on the thread count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    classify_with, dacey_witness_in, is_linear, is_normal_fast, is_normal_oracle_in,
    maximal_subsets_generate, DaceyWitness,
};
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, OrthoLattice};
use crate::morphisms::{is_normal_hom, SpaceMap};
use crate::space::OrthoSpace;
use crate::toolkit::canon::{canonical_form, default_label};

pub const DEFAULT_MAX_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: usize,
    pub certificate: String,
    pub edges: usize,
    pub rank: usize,
    pub lattice_size: usize,
    pub normal: bool,
    pub dacey: bool,
    pub linear: bool,
    pub irredundant: bool,
    pub strongly_irredundant: bool,
    pub irreducible: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub n: usize,
    pub spaces: usize,
    pub normal: usize,
    pub dacey: usize,
    pub linear: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub certificate: String,
    pub check: String,
    pub detail: String,
}

/// The first normal, non-Dacey class in census order, with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalNotDacey {
    pub certificate: String,
    pub a: Vec<String>,
    pub d: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub max_n: usize,
    pub records: Vec<CensusRecord>,
    pub counts: Vec<CensusCounts>,
    /// How often each universal check was evaluated.
    pub checks: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    pub smallest_normal_not_dacey: Option<NormalNotDacey>,
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub max_n_guard: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            threads: None,
            max_n_guard: DEFAULT_MAX_N,
        }
    }
}

pub(crate) fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::BadParameter("thread count must be positive".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::BadParameter(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn canonical_rep(n: usize, edges: &[(usize, usize)]) -> Result<(String, OrthoSpace)> {
    let raw = OrthoSpace::from_edges(n, edges)?;
    let c = canonical_form(&raw)?;
    let labels = (0..n).map(default_label).collect();
    Ok((c.certificate(), OrthoSpace::from_index_edges(labels, &c.edges())?))
}

/// One canonical representative per isomorphism class, for each `n` in
/// `1..=max_n`, sorted by certificate.
pub fn enumerate_classes(max_n: usize) -> Result<Vec<Vec<(String, OrthoSpace)>>> {
    if max_n == 0 {
        return Err(Error::BadParameter("census needs max_n >= 1".into()));
    }
    let mut levels = vec![vec![canonical_rep(1, &[])?]];
    for n in 2..=max_n {
        let prev = levels.last().unwrap();
        let k = n - 1;
        let found: Result<Vec<(String, OrthoSpace)>> = prev
            .par_iter()
            .flat_map_iter(|(_, x)| (0..1u64 << k).map(move |s| (x, s)))
            .map(|(x, s)| {
                let mut edges = x.edges();
                edges.extend((0..k).filter(|j| (s >> j) & 1 == 1).map(|j| (j, k)));
                canonical_rep(n, &edges)
            })
            .collect();
        let level: BTreeMap<String, OrthoSpace> = found?.into_iter().collect();
        levels.push(level.into_iter().collect());
    }
    Ok(levels)
}

struct ClassOutcome {
    record: CensusRecord,
    checks: Vec<&'static str>,
    violations: Vec<Violation>,
    dacey_witness: Option<DaceyWitness>,
}

/// Runs every predicate on one class and checks the implications between them.
fn examine(cert: &str, x: &OrthoSpace) -> Result<ClassOutcome> {
    let l = build_lattice(x)?;
    let mut checks = Vec::new();
    let mut violations = Vec::new();
    let mut check = |name: &'static str, ok: bool, detail: String| {
        checks.push(name);
        if !ok {
            violations.push(Violation {
                certificate: cert.to_owned(),
                check: name.to_owned(),
                detail,
            });
        }
    };

    let normal = is_normal_fast(x);
    let oracle = is_normal_oracle_in(x, &l);
    check(
        "normal_fast_matches_oracle",
        normal == oracle,
        format!("fast={normal} oracle={oracle}"),
    );
    let dw = dacey_witness_in(x, &l);
    let dacey = dw.is_none();
    let om = l.is_orthomodular();
    check(
        "dacey_matches_orthomodularity",
        dacey == om,
        format!("dacey={dacey} orthomodular={om}"),
    );
    check("dacey_implies_normal", !dacey || normal, String::new());
    let linear = is_linear(x);
    let si = x.is_strongly_irredundant();
    let irr = x.is_irreducible();
    check("linear_implies_strongly_irredundant", !linear || si, String::new());
    let detail = format!("linear={linear} irreducible={irr} strongly_irredundant={si} dacey={dacey}");
    check(
        "linear_implies_irreducible_strongly_irredundant_dacey",
        !linear || (irr && si && dacey),
        detail.clone(),
    );
    // fails from n = 5 on; kept so the census shows where
    check(
        "irreducible_strongly_irredundant_dacey_implies_linear",
        linear || !(irr && si && dacey),
        detail,
    );

    let subs = closed_subspaces(x, &l)?;
    if normal {
        let mut all_embed = true;
        let mut first_bad = String::new();
        for (mask_labels, sub, generated) in &subs {
            let sub_normal = is_normal_fast(&sub.space);
            let incl_normal = sub_normal && {
                let m = SpaceMap::new(&sub.space, x, sub.embedding.clone())?;
                is_normal_hom(&m)?.is_none()
            };
            if !incl_normal && all_embed {
                all_embed = false;
                first_bad = format!("A = {{{}}}", mask_labels.join(","));
            }
            if *generated {
                check(
                    "clique_generated_subspaces_normal",
                    sub_normal,
                    format!("A = {{{}}}", mask_labels.join(",")),
                );
            }
        }
        check("dacey_implies_closed_subspaces_embed_normally", !dacey || all_embed, first_bad);
        check(
            "closed_subspaces_embed_normally_implies_dacey",
            dacey || !all_embed,
            String::new(),
        );
    }
    if linear {
        for (mask_labels, sub, _) in &subs {
            check(
                "linear_subspaces_linear",
                is_linear(&sub.space),
                format!("A = {{{}}}", mask_labels.join(",")),
            );
        }
    }

    let report = match classify_with(x, &l) {
        Ok(r) => Some(r),
        Err(Error::InternalInconsistency(m)) => {
            check("classify_consistent", false, m);
            None
        }
        Err(e) => return Err(e),
    };
    if report.is_some() {
        check("classify_consistent", true, String::new());
    }

    Ok(ClassOutcome {
        record: CensusRecord {
            n: x.len(),
            certificate: cert.to_owned(),
            edges: x.edge_count(),
            rank: x.rank(),
            lattice_size: l.len(),
            normal,
            dacey,
            linear,
            irredundant: x.is_irredundant(),
            strongly_irredundant: si,
            irreducible: irr,
        },
        checks,
        violations,
        dacey_witness: dw,
    })
}

type ClosedSubspace = (Vec<String>, crate::space::Subspace, bool);

/// Every nonempty orthoclosed subset as a subspace, flagged when all its
/// maximal orthogonal subsets have it as closure.
fn closed_subspaces(x: &OrthoSpace, l: &OrthoLattice) -> Result<Vec<ClosedSubspace>> {
    l.elements()
        .iter()
        .filter(|a| !a.is_empty())
        .map(|a| {
            let labels = a.iter().map(|i| x.label(i).to_owned()).collect();
            Ok((labels, x.induced(a)?, maximal_subsets_generate(x, a)))
        })
        .collect()
}

pub fn census(max_n: usize) -> Result<Census> {
    census_with(max_n, CensusOptions::default())
}

pub fn census_with(max_n: usize, opts: CensusOptions) -> Result<Census> {
    if max_n > opts.max_n_guard {
        return Err(Error::BadParameter(format!(
            "census is limited to n <= {}",
            opts.max_n_guard
        )));
    }
    with_threads(opts.threads, || run(max_n))?
}

fn run(max_n: usize) -> Result<Census> {
    let levels = enumerate_classes(max_n)?;
    let flat: Vec<&(String, OrthoSpace)> = levels.iter().flatten().collect();
    let outcomes: Vec<ClassOutcome> = flat
        .par_iter()
        .map(|(c, x)| examine(c, x))
        .collect::<Result<_>>()?;

    let mut counts: Vec<CensusCounts> = (1..=max_n)
        .map(|n| CensusCounts {
            n,
            ..Default::default()
        })
        .collect();
    let mut checks = BTreeMap::new();
    let mut violations = Vec::new();
    let mut smallest = None;
    let mut records = Vec::with_capacity(outcomes.len());
    for (o, (_, x)) in outcomes.into_iter().zip(&flat) {
        let r = &o.record;
        let c = &mut counts[r.n - 1];
        c.spaces += 1;
        c.normal += r.normal as usize;
        c.dacey += r.dacey as usize;
        c.linear += r.linear as usize;
        for name in o.checks {
            *checks.entry(name.to_owned()).or_insert(0) += 1;
        }
        violations.extend(o.violations);
        if smallest.is_none() && r.normal && !r.dacey {
            let w = o.dacey_witness.as_ref().expect("non-Dacey classes carry a witness");
            let names = |v: &[usize]| v.iter().map(|&i| x.label(i).to_owned()).collect();
            smallest = Some(NormalNotDacey {
                certificate: r.certificate.clone(),
                a: names(&w.a),
                d: names(&w.d),
            });
        }
        records.push(o.record);
    }
    Ok(Census {
        max_n,
        records,
        counts,
        checks,
        violations,
        smallest_normal_not_dacey: smallest,
    })
}

impl Census {
    pub fn write_csv<W: io::Write>(&self, w: W) -> Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.records {
            out.serialize(r)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Plain-text table of per-`n` counts.
    pub fn summary_table(&self) -> String {
        let mut s = String::from(" n  spaces  normal   dacey  linear\n");
        for c in &self.counts {
            let _ = writeln!(
                s,
                "{:>2} {:>7} {:>7} {:>7} {:>7}",
                c.n, c.spaces, c.normal, c.dacey, c.linear
            );
        }
        s
    }

    pub fn class_counts(&self) -> Vec<usize> {
        self.counts.iter().map(|c| c.spaces).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toolkit::canon::are_isomorphic;

    #[test]
    fn class_counts_match_graph_counts() {
        let levels = enumerate_classes(6).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn representatives_pairwise_non_isomorphic() {
        for level in enumerate_classes(5).unwrap() {
            for (i, (_, a)) in level.iter().enumerate() {
                for (_, b) in &level[i + 1..] {
                    assert!(!are_isomorphic(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn every_labelled_graph_hits_its_class() {
        // all 2^10 labelled graphs on 5 points
        let level = &enumerate_classes(5).unwrap()[4];
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        for s in 0..1u32 << pairs.len() {
            let edges: Vec<_> = (0..pairs.len()).filter(|k| (s >> k) & 1 == 1).map(|k| pairs[k]).collect();
            let x = OrthoSpace::from_edges(5, &edges).unwrap();
            let c = canonical_form(&x).unwrap().certificate();
            let (_, rep) = level.iter().find(|(rc, _)| *rc == c).expect("class present");
            assert!(are_isomorphic(&x, rep).unwrap());
        }
    }

    #[test]
    fn small_census() {
        let c = census(4).unwrap();
        assert_eq!(c.class_counts(), vec![1, 2, 4, 11]);
        assert!(c.violations.is_empty(), "{:?}", c.violations);
        let one = &c.records[0];
        assert!(one.normal && one.dacey);
        assert!(census(8).is_err());
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,certificate,edges,rank,lattice_size,normal"));
        assert_eq!(text.lines().count(), 1 + 18);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let a = census_with(5, CensusOptions { threads: Some(1), ..Default::default() }).unwrap();
        let b = census_with(5, CensusOptions { threads: Some(4), ..Default::default() }).unwrap();
        assert_eq!(a, b);
    }
}
