//! One line per acceptance criterion. Runs without the test harness so the
//! lines show up in plain `cargo test` output.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use orthospace::classify::{is_normal_fast, normality_witness};
use orthospace::measures::{brute_force_measures, count_measures, find_two_valued_measure, DEFAULT_MEASURE_CAP};
use orthospace::morphisms::{
    automorphisms, compose, criterion_five, criterion_four, criterion_three, enumerate_homs, is_homomorphism,
    is_normal_hom, DEFAULT_HOM_CAP,
};
use orthospace::toolkit::census::enumerate_classes;
use orthospace::toolkit::demo::{reduction_demo, PlaceKind};
use orthospace::toolkit::rays::rays_to_space;
use orthospace::toolkit::{census_with, dspace, nset, parse_document, serialize_document, serialize_osp, CensusOptions};
use orthospace::{build_lattice, classify, MapStatus, Mask, OrthoSpace, SpaceMap};

const DEMO_SAMPLES: usize = 1000;
const DEMO_SEED: u64 = 1;

/// The census check that is known to fail, with the classes it fails on.
const REFUTED_CHECK: &str = "irreducible_strongly_irredundant_dacey_implies_linear";
const REFUTED_ON: [&str; 3] = ["5:84c", "6:4a94", "6:84ce"];

enum Fail {
    /// Recorded and analysed; does not fail the run while it reproduces exactly.
    Documented(String),
    Unexpected(String),
}

type Outcome = Result<String, Fail>;

/// Id, title, time limit in seconds, check.
type Criterion = (u32, &'static str, f64, fn() -> Outcome);

fn bad(msg: impl Into<String>) -> Fail {
    Fail::Unexpected(msg.into())
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(bad(format!($($fmt)+)));
        }
    };
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> OrthoSpace {
    let text = fs::read_to_string(fixtures().join(name)).expect("fixture present");
    parse_document(&text).expect("fixture parses").space
}

fn labels(x: &OrthoSpace, m: &Mask) -> Vec<String> {
    let mut v: Vec<String> = m.iter().map(|i| x.label(i).to_owned()).collect();
    v.sort();
    v
}

fn set(x: &OrthoSpace, ls: &[&str]) -> Mask {
    Mask::from_indices(x.len(), ls.iter().map(|l| x.index_of(l).unwrap()))
}

fn five_point() -> Outcome {
    let x = fixture("five_point.osp");
    let bc = set(&x, &["b", "c"]);
    ensure!(labels(&x, &x.complement_mask(&bc)) == ["a", "e"], "{{b,c}}⊥ wrong");
    ensure!(labels(&x, &x.closure_mask(&bc)) == ["b", "c"], "{{b,c}}⊥⊥ wrong");
    let e = set(&x, &["e"]);
    let a = set(&x, &["a"]);
    ensure!(
        x.closure_mask(&a).is_subset(&x.closure_mask(&e)) && x.closure_mask(&a) != x.closure_mask(&e),
        "{{e}}⊥⊥ should properly contain {{a}}⊥⊥"
    );
    let w = normality_witness(&x).ok_or_else(|| bad("space reported normal"))?;
    ensure!(
        x.label(w.f) == "d" && x.label(w.g) == "e",
        "normality witness f={}, g={}",
        x.label(w.f),
        x.label(w.g)
    );
    let c = classify(&x).map_err(|e| bad(e.to_string()))?;
    ensure!(!c.normal && !c.dacey, "normal={} dacey={}", c.normal, c.dacey);
    let dw = c.witness("dacey").ok_or_else(|| bad("no Dacey witness"))?;
    let json = serde_json::to_value(dw).unwrap();
    ensure!(
        json["a"] == serde_json::json!(["b", "c", "d"]) && json["d"] == serde_json::json!(["b", "c"]),
        "Dacey witness {json}"
    );
    Ok("{b,c}⊥={a,e}, {b,c}⊥⊥={b,c}, f=d g=e, A={b,c,d}".into())
}

fn n_sets() -> Outcome {
    for n in 1..=6 {
        let x = nset(n).map_err(|e| bad(e.to_string()))?;
        let l = build_lattice(&x).map_err(|e| bad(e.to_string()))?;
        ensure!(l.len() == 1 << n, "n={n}: lattice {}", l.len());
        // every subset is orthoclosed
        for w in 0..1u64 << n {
            ensure!(x.is_orthoclosed(&Mask::from_word(n, w)), "n={n}: subset {w:#b} not closed");
        }
        let c = classify(&x).map_err(|e| bad(e.to_string()))?;
        ensure!(c.normal && c.dacey, "n={n}: normal={} dacey={}", c.normal, c.dacey);
        ensure!(c.linear == (n == 1), "n={n}: linear={}", c.linear);
    }
    Ok("lattice 2^n, normal, Dacey, linear only for n=1, n=1..6".into())
}

fn brute_auts(x: &OrthoSpace) -> usize {
    fn go(x: &OrthoSpace, p: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
        let k = p.len();
        if k == x.len() {
            *count += 1;
            return;
        }
        for t in 0..x.len() {
            if used[t] || (0..k).any(|i| x.is_orth(i, k) != x.is_orth(p[i], t)) {
                continue;
            }
            used[t] = true;
            p.push(t);
            go(x, p, used, count);
            p.pop();
            used[t] = false;
        }
    }
    let mut count = 0;
    go(x, &mut Vec::new(), &mut vec![false; x.len()], &mut count);
    count
}

fn d_spaces() -> Outcome {
    for n in 2..=5usize {
        let x = dspace(n).map_err(|e| bad(e.to_string()))?;
        let l = build_lattice(&x).map_err(|e| bad(e.to_string()))?;
        ensure!(l.len() == 2 * n + 2, "n={n}: lattice {}", l.len());
        ensure!(l.is_orthomodular(), "n={n}: not orthomodular");
        let c = classify(&x).map_err(|e| bad(e.to_string()))?;
        ensure!(c.linear && c.normal && c.dacey, "n={n}: {c:?}");
        let want = (1..=n).product::<usize>() << n;
        let auts = automorphisms(&x);
        ensure!(auts.len() == want, "n={n}: {} automorphisms, want {want}", auts.len());
        if n <= 3 {
            ensure!(brute_auts(&x) == want, "n={n}: brute force disagrees");
        }
    }
    Ok("lattice 2n+2, linear, |Aut| = 2^n n!, n=2..5".into())
}

fn census_checks() -> Outcome {
    let c = census_with(6, CensusOptions::default()).map_err(|e| bad(e.to_string()))?;
    let counts = c.class_counts();
    ensure!(counts == [1, 2, 4, 11, 34, 156], "class counts {counts:?}");
    let normal: Vec<usize> = c.counts.iter().map(|k| k.normal).collect();
    let dacey: Vec<usize> = c.counts.iter().map(|k| k.dacey).collect();
    let linear: Vec<usize> = c.counts.iter().map(|k| k.linear).collect();
    ensure!(normal == [1, 2, 4, 10, 25, 75], "normal counts {normal:?}");
    ensure!(dacey == [1, 2, 4, 10, 25, 75], "Dacey counts {dacey:?}");
    ensure!(linear == [1, 0, 0, 1, 0, 1], "linear counts {linear:?}");
    for name in [
        "normal_fast_matches_oracle",
        "dacey_matches_orthomodularity",
        "dacey_implies_normal",
        "linear_implies_strongly_irredundant",
        "linear_implies_irreducible_strongly_irredundant_dacey",
        REFUTED_CHECK,
        "dacey_implies_closed_subspaces_embed_normally",
        "closed_subspaces_embed_normally_implies_dacey",
    ] {
        ensure!(c.checks.get(name).copied().unwrap_or(0) > 0, "check {name} never ran");
    }
    let all = c.checks["normal_fast_matches_oracle"];
    ensure!(all == 208, "{all} classes checked");
    let others: Vec<_> = c.violations.iter().filter(|v| v.check != REFUTED_CHECK).collect();
    ensure!(others.is_empty(), "violations: {others:?}");
    let refuted: BTreeSet<&str> = c.violations.iter().map(|v| v.certificate.as_str()).collect();
    let detail = format!(
        "208 classes, fast≡oracle, Dacey≡orthomodular, Dacey⇒normal, linear⇒strongly irredundant, \
         closed-subspace embedding⇔Dacey all hold; {REFUTED_CHECK} fails on {}",
        refuted.iter().copied().collect::<Vec<_>>().join(", ")
    );
    if refuted == REFUTED_ON.into_iter().collect() {
        Err(Fail::Documented(detail))
    } else if refuted.is_empty() {
        Ok(detail)
    } else {
        Err(bad(detail))
    }
}

fn morphism_suite() -> Outcome {
    let spaces: Vec<OrthoSpace> = enumerate_classes(4)
        .map_err(|e| bad(e.to_string()))?
        .into_iter()
        .flatten()
        .map(|(_, x)| x)
        .filter(is_normal_fast)
        .collect();
    let (mut homs, mut normal, mut composites) = (0usize, 0usize, 0usize);
    let mut normal_maps: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
    for a in &spaces {
        let mut row = Vec::new();
        for b in &spaces {
            let e = enumerate_homs(a, b, false, DEFAULT_HOM_CAP);
            ensure!(!e.truncated, "enumeration truncated");
            let mut ok = Vec::new();
            for m in &e.maps {
                homs += 1;
                ensure!(is_homomorphism(m), "enumerated map is not a homomorphism");
                let c3 = criterion_three(m);
                let c5 = criterion_five(m).is_none();
                ensure!(c3 == c5, "criteria disagree on {:?}", m.table());
                ensure!(c5 == criterion_four(m), "criterion four disagrees on {:?}", m.table());
                if c5 {
                    normal += 1;
                    ok.push(m.table().to_vec());
                }
            }
            let only = enumerate_homs(a, b, true, DEFAULT_HOM_CAP);
            ensure!(only.maps.len() == ok.len(), "normal-only enumeration differs");
            row.push(ok);
        }
        normal_maps.push(row);
    }
    let k = spaces.len();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                for f in &normal_maps[i][j] {
                    for g in &normal_maps[j][l] {
                        let f = SpaceMap::new(&spaces[i], &spaces[j], f.clone()).unwrap().verified();
                        let g = SpaceMap::new(&spaces[j], &spaces[l], g.clone()).unwrap().verified();
                        let h = compose(&f, &g).map_err(|e| bad(e.to_string()))?;
                        ensure!(h.status() == MapStatus::Normal, "composite not normal");
                        composites += 1;
                    }
                }
            }
        }
    }
    for x in &spaces {
        for m in automorphisms(x) {
            ensure!(matches!(is_normal_hom(&m), Ok(None)), "automorphism not normal");
        }
    }
    Ok(format!(
        "{k} normal spaces, {homs} homs, {normal} normal, criteria agree; {composites} composites normal; automorphisms normal"
    ))
}

fn demo(kind: PlaceKind) -> Outcome {
    let r = reduction_demo(kind, DEMO_SAMPLES, DEMO_SEED).map_err(|e| bad(e.to_string()))?;
    ensure!(r.samples == DEMO_SAMPLES, "samples {}", r.samples);
    ensure!(r.lineation.violations.is_empty(), "lineation violations {}", r.lineation.violations.len());
    ensure!(r.representative_violations == 0, "representative violations {}", r.representative_violations);
    ensure!(r.orthogonality_violations == 0, "orthogonality violations {}", r.orthogonality_violations);
    ensure!(r.condition_i_failures == 0, "condition (i) failures {}", r.condition_i_failures);
    ensure!(r.semiunitary && r.lambda == "1" && r.lambda_prime == "1", "semiunitary check");
    ensure!(r.passed(), "report did not pass");
    let mut detail = format!("{}: {DEMO_SAMPLES} samples, 0 violations, λ=λ′=1", r.place);
    if matches!(kind, PlaceKind::RatFunc) {
        let ni = r.non_injectivity.as_ref().ok_or_else(|| bad("no non-injectivity instance"))?;
        ensure!(ni.image == "<1, 0, 0>", "collapsed image {}", ni.image);
        detail += &format!(", {} and {} both map to {}", ni.first, ni.second, ni.image);
    }
    Ok(detail)
}

fn measures() -> Outcome {
    let n3 = nset(3).unwrap();
    let c = count_measures(&n3, DEFAULT_MEASURE_CAP);
    ensure!(c.count == 3 && !c.truncated, "(3,≠): {} measures", c.count);
    for n in 2..=4 {
        let x = dspace(n).unwrap();
        let c = count_measures(&x, DEFAULT_MEASURE_CAP);
        let brute = brute_force_measures(&x).unwrap().len() as u64;
        ensure!(c.count == 1 << n && brute == c.count, "D_{n}: {} vs brute {brute}", c.count);
    }
    let text = fs::read_to_string(fixtures().join("peres33.rays")).unwrap();
    let peres = rays_to_space(&text, None).map_err(|e| bad(e.to_string()))?;
    ensure!(peres.len() == 33, "ray fixture has {} points", peres.len());
    ensure!(find_two_valued_measure(&peres).is_none(), "33-ray fixture admits a measure");
    let mut checked = 0;
    for level in enumerate_classes(5).unwrap() {
        for (cert, x) in level {
            let brute = brute_force_measures(&x).unwrap();
            let found = find_two_valued_measure(&x);
            ensure!(found.is_some() == !brute.is_empty(), "{cert}: existence disagrees");
            if let Some(m) = found {
                ensure!(m.is_valid_on(&x) && brute.contains(&m), "{cert}: invalid measure");
            }
            let c = count_measures(&x, DEFAULT_MEASURE_CAP);
            ensure!(c.count as usize == brute.len(), "{cert}: count {} vs {}", c.count, brute.len());
            checked += 1;
        }
    }
    Ok(format!(
        "(3,≠)=3, D_n=2^n for n=2..4, 33 rays: none, search≡brute force on {checked} classes"
    ))
}

fn round_trip() -> Outcome {
    let mut files = 0;
    for e in fs::read_dir(fixtures()).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "osp") {
            let text = fs::read_to_string(&p).unwrap();
            let doc = parse_document(&text).map_err(|e| bad(format!("{}: {e}", p.display())))?;
            ensure!(serialize_document(&doc) == text, "{} does not round-trip", p.display());
            files += 1;
        }
    }
    for n in 1..=5 {
        for x in [nset(n).ok(), dspace(n).ok()].into_iter().flatten() {
            let s = serialize_osp(&x);
            ensure!(serialize_osp(&parse_document(&s).unwrap().space) == s, "generated space does not round-trip");
        }
    }
    let one = census_with(6, CensusOptions { threads: Some(1), ..CensusOptions::default() }).unwrap();
    let four = census_with(6, CensusOptions { threads: Some(4), ..CensusOptions::default() }).unwrap();
    ensure!(one.counts == four.counts, "counts differ across thread counts");
    ensure!(one.records == four.records, "records differ across thread counts");
    Ok(format!("{files} fixtures identical after parse/serialize; census ≤6 equal on 1 and 4 threads"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "five-point example", 0.1, five_point),
        (2, "n-element sets", 1.0, n_sets),
        (3, "D_n spaces", 5.0, d_spaces),
        (4, "census n ≤ 6", 300.0, census_checks),
        (5, "morphism suite n ≤ 4", 120.0, morphism_suite),
        (6, "rational-function reduction", 10.0, || demo(PlaceKind::RatFunc)),
        (7, "5-adic reduction", 10.0, || demo(PlaceKind::Padic(5))),
        (8, "two-valued measures", 120.0, measures),
        (9, "round trip and thread independence", 300.0, round_trip),
    ];
    let mut unexpected = 0;
    for (id, title, limit, f) in criteria {
        let t = Instant::now();
        let out = f();
        let took = t.elapsed();
        let slow = took > Duration::from_secs_f64(limit);
        let timing = format!("{:.3}s, limit {limit}s", took.as_secs_f64());
        match out {
            Ok(d) if !slow => println!("PASS {id} {title}: {d} [{timing}]"),
            Ok(d) => {
                unexpected += 1;
                println!("FAIL {id} {title}: too slow; {d} [{timing}]");
            }
            Err(Fail::Documented(d)) => {
                if slow {
                    unexpected += 1;
                }
                println!("FAIL {id} {title}: {d} (documented) [{timing}]");
            }
            Err(Fail::Unexpected(d)) => {
                unexpected += 1;
                println!("FAIL {id} {title}: {d} [{timing}]");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
