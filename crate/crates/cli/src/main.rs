use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::json;

use orthospace::morphisms::{automorphisms, enumerate_homs, DEFAULT_HOM_CAP};
use orthospace::measures::{count_measures, find_two_valued_measure, DEFAULT_MEASURE_CAP};
use orthospace::toolkit::demo::{reduction_demo, PlaceKind};
use orthospace::toolkit::export::{lattice_dot, space_dot};
use orthospace::toolkit::rays::{rays_to_space, RayField};
use orthospace::toolkit::report::Report;
use orthospace::toolkit::{
    census_with, dspace, nset, parse_document, search_fixture, serialize_document, serialize_osp,
    CensusOptions, ParseError, Predicate, SpaceDocument,
};
use orthospace::{build_lattice, classify, OrthoSpace};

/// Exit codes: 0 success, 1 a checked property is false, 2 bad input, 3 internal.
#[derive(Debug)]
struct Failed(u8);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "check failed")
    }
}

impl std::error::Error for Failed {}

#[derive(Parser)]
#[command(name = "osp", version, about = "Finite orthogonality spaces and their lattices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a space.
    Check {
        /// `.osp` or `.rays` file, `-` for stdin
        file: String,
        /// Read the input as rays over this field
        #[arg(long)]
        rays: Option<RayField>,
        #[arg(long)]
        json: bool,
        /// `flag` or `flag=false`; exit 1 when a flag disagrees
        #[arg(long = "expect")]
        expect: Vec<String>,
    },
    /// The lattice of orthoclosed subsets.
    Lattice {
        file: String,
        #[arg(long)]
        rays: Option<RayField>,
        /// Write the Hasse diagram as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The orthogonality graph as DOT.
    Dot {
        file: String,
        #[arg(long)]
        rays: Option<RayField>,
    },
    /// Canonical `.osp` text of the input.
    Fmt {
        file: String,
        #[arg(long)]
        rays: Option<RayField>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Homomorphisms between two spaces.
    Homs {
        src: String,
        dst: String,
        /// Only normal homomorphisms
        #[arg(long)]
        normal: bool,
        #[arg(long, default_value_t = DEFAULT_HOM_CAP)]
        cap: usize,
        /// Print every map
        #[arg(long)]
        list: bool,
    },
    /// The automorphism group.
    Auts {
        file: String,
        #[arg(long)]
        list: bool,
    },
    /// Two-valued measures.
    Measure {
        file: String,
        #[arg(long)]
        rays: Option<RayField>,
        /// Count all measures instead of finding one
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = DEFAULT_MEASURE_CAP)]
        cap: u64,
    },
    /// Census of isomorphism classes up to N elements.
    Census {
        max_n: usize,
        /// Per-class CSV
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Raise the size guard (default 7)
        #[arg(long)]
        guard: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a standard space.
    Gen {
        /// `nset` or `dspace`
        family: String,
        n: usize,
    },
    /// Hermitian reduction demonstration.
    Herm {
        #[command(subcommand)]
        cmd: HermCmd,
    },
    /// Smallest space satisfying a predicate.
    Search {
        predicate: Predicate,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Write the hit as `.osp`
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HermCmd {
    Demo {
        /// `ratfunc`, `padic` or `padic:P`
        #[arg(long, default_value = "ratfunc")]
        place: PlaceKind,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(Failed(code)) = e.downcast_ref::<Failed>() {
                return ExitCode::from(*code);
            }
            eprintln!("osp: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    use orthospace::Error as E;
    for cause in e.chain() {
        if cause.is::<ParseError>() || cause.is::<io::Error>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<E>() {
            return match err {
                E::InternalInconsistency(_) => 3,
                E::NotFoundWithinBound(_) => 1,
                _ => 2,
            };
        }
    }
    3
}

fn read_input(file: &str) -> anyhow::Result<String> {
    if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(file).with_context(|| format!("reading {file}"))
}

fn load(file: &str, rays: Option<RayField>) -> anyhow::Result<OrthoSpace> {
    let text = read_input(file)?;
    let is_rays = rays.is_some() || Path::new(file).extension().is_some_and(|e| e == "rays");
    let space = if is_rays {
        let stem = Path::new(file).file_stem().and_then(|s| s.to_str()).unwrap_or("rays");
        rays_to_space(&text, rays)
            .with_context(|| format!("parsing {file}"))?
            .with_name(stem)
    } else {
        parse_document(&text).with_context(|| format!("parsing {file}"))?.space
    };
    Ok(space)
}

fn emit(s: &str) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(s.as_bytes())?;
    if !s.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn parse_expect(s: &str) -> anyhow::Result<(String, bool)> {
    match s.split_once('=') {
        None => Ok((s.to_owned(), true)),
        Some((k, v)) => {
            let b = v.parse::<bool>().map_err(|_| orthospace::Error::BadParameter(format!("bad --expect value `{s}`")))?;
            Ok((k.to_owned(), b))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Check { file, rays, json, expect } => {
            let expect = expect.iter().map(|s| parse_expect(s)).collect::<anyhow::Result<Vec<_>>>()?;
            let x = load(&file, rays)?;
            let class = classify(&x)?;
            let mut bad = Vec::new();
            for (k, v) in &expect {
                match class.flag(k) {
                    None => bail!(orthospace::Error::BadParameter(format!("unknown flag `{k}`"))),
                    Some(got) if got != *v => bad.push(format!("{k}: expected {v}, got {got}")),
                    _ => {}
                }
            }
            if json {
                emit(&Report::for_class(x.name(), class).to_json())?;
            } else {
                println!("elements      {}", class.n);
                println!("rank          {}", class.rank);
                println!("lattice       {}", class.lattice_size);
                for k in ["normal", "dacey", "linear", "irredundant", "strongly_irredundant", "irreducible"] {
                    println!("{k:<21} {}", class.flag(k).unwrap());
                }
                for w in &class.witnesses {
                    println!("witness       {}", serde_json::to_string(w)?);
                }
            }
            for b in &bad {
                eprintln!("osp: {b}");
            }
            if !bad.is_empty() {
                return Err(Failed(1).into());
            }
        }
        Cmd::Lattice { file, rays, dot } => {
            let x = load(&file, rays)?;
            let l = build_lattice(&x)?;
            println!("elements      {}", l.len());
            println!("atoms         {}", l.atoms().len());
            println!("covers        {}", l.covers().len());
            println!("orthomodular  {}", l.is_orthomodular());
            if let Some(p) = dot {
                fs::write(&p, lattice_dot(&x, &l)).with_context(|| format!("writing {}", p.display()))?;
            }
        }
        Cmd::Dot { file, rays } => emit(&space_dot(&load(&file, rays)?))?,
        Cmd::Fmt { file, rays, name } => {
            let is_rays = rays.is_some() || file.ends_with(".rays");
            let mut doc = if is_rays {
                SpaceDocument::new(load(&file, rays)?).with_provenance(format!("osp fmt {file}"))
            } else {
                parse_document(&read_input(&file)?).with_context(|| format!("parsing {file}"))?
            };
            if let Some(n) = name {
                doc.space = doc.space.with_name(n);
            }
            emit(&serialize_document(&doc))?;
        }
        Cmd::Homs { src, dst, normal, cap, list } => {
            let a = load(&src, None)?;
            let b = load(&dst, None)?;
            let homs = enumerate_homs(&a, &b, normal, cap);
            println!("maps          {}{}", homs.maps.len(), if homs.truncated { "+" } else { "" });
            if list {
                for m in &homs.maps {
                    println!("{}", serde_json::to_string(&m.record())?);
                }
            }
        }
        Cmd::Auts { file, list } => {
            let x = load(&file, None)?;
            let auts = automorphisms(&x);
            println!("order         {}", auts.len());
            if list {
                for m in &auts {
                    println!("{}", serde_json::to_string(&m.record().table)?);
                }
            }
        }
        Cmd::Measure { file, rays, count, cap } => {
            let x = load(&file, rays)?;
            if count {
                let c = count_measures(&x, cap);
                println!("measures      {}{}", c.count, if c.truncated { "+" } else { "" });
            } else {
                match find_two_valued_measure(&x) {
                    Some(m) => {
                        let ones: Vec<&str> = m.ones(x.len()).iter().map(|i| x.label(i)).collect();
                        println!("measure       {{{}}}", ones.join(","));
                    }
                    None => {
                        println!("measure       none");
                        return Err(Failed(1).into());
                    }
                }
            }
        }
        Cmd::Census { max_n, out, threads, guard, json } => {
            let mut opts = CensusOptions { threads, ..CensusOptions::default() };
            if let Some(g) = guard {
                opts.max_n_guard = g;
            }
            let c = census_with(max_n, opts)?;
            if let Some(p) = out {
                let f = fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?;
                c.write_csv(f)?;
            }
            if json {
                let v = json!({
                    "max_n": c.max_n,
                    "counts": c.counts,
                    "checks": c.checks,
                    "violations": c.violations,
                    "smallest_normal_not_dacey": c.smallest_normal_not_dacey,
                });
                emit(&serde_json::to_string_pretty(&v)?)?;
            } else {
                print!("{}", c.summary_table());
                for v in &c.violations {
                    eprintln!("violation {} {}: {}", v.certificate, v.check, v.detail);
                }
            }
            if !c.violations.is_empty() {
                return Err(Failed(1).into());
            }
        }
        Cmd::Gen { family, n } => {
            let x = match family.as_str() {
                "nset" => nset(n)?,
                "dspace" => dspace(n)?,
                _ => bail!(orthospace::Error::BadParameter(format!("unknown family `{family}`"))),
            };
            emit(&serialize_osp(&x))?;
        }
        Cmd::Herm { cmd: HermCmd::Demo { place, samples, seed, json } } => {
            let r = reduction_demo(place, samples, seed)?;
            if json {
                emit(&serde_json::to_string_pretty(&r)?)?;
            } else {
                println!("place                      {}", r.place);
                println!("samples                    {}", r.samples);
                println!("condition (i) failures     {}", r.condition_i_failures);
                println!("lineation violations       {}", r.lineation.violations.len());
                println!("representative violations  {}", r.representative_violations);
                println!("orthogonality violations   {}", r.orthogonality_violations);
                println!("nondegenerate              {}", r.nondegeneracy.l3);
                println!("lambda                     {}", r.lambda);
                println!("lambda'                    {}", r.lambda_prime);
                println!("semiunitary                {}", r.semiunitary);
                if let Some(ni) = &r.non_injectivity {
                    println!("collapsed                  {} , {} -> {}", ni.first, ni.second, ni.image);
                }
                println!("result                     {}", if r.passed() { "PASS" } else { "FAIL" });
            }
            if !r.passed() {
                return Err(Failed(1).into());
            }
        }
        Cmd::Search { predicate, max_n, out } => {
            let hit = search_fixture(predicate, max_n)?;
            println!("predicate     {}", hit.predicate.name());
            println!("certificate   {}", hit.certificate);
            println!("subset        {{{}}}", hit.subset.join(","));
            if let Some(p) = out {
                let doc = SpaceDocument::new(hit.space.clone())
                    .with_provenance(format!("osp search {} --max-n {max_n}", predicate.name()));
                fs::write(&p, serialize_document(&doc)).with_context(|| format!("writing {}", p.display()))?;
            } else {
                emit(&serialize_osp(&hit.space))?;
            }
        }
    }
    Ok(())
}
