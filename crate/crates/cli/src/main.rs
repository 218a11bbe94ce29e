use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use grouplab::classes::{self, ClassParams};
use grouplab::submodular::{self as sm, ChainWitness, Embedding, SubmodularClass};
use grouplab::permgroup::DEFAULT_ORDER_CAP;
use grouplab::{GroupError, GroupSpec, Permutation, Section, SubgroupId, SubgroupLattice};
use grouplab_harness::{build_corpus, run_suites, CorpusConfig, HarnessError, Suite};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "grouplab", version, about = "Finite permutation groups and k-submodular subgroups")]
struct Cli {
    /// Largest group order to build. Defaults to 2000 for single groups and
    /// 200 for the corpus.
    #[arg(long, global = true, env = "GROUPLAB_ORDER_CAP")]
    order_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print invariants, normal structure and class memberships.
    Show {
        /// Builder expression such as `holomorph_cyclic(5)`, `cyclic(2) x sym(3)`,
        /// JSON, or `@file.json`.
        group: String,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3], value_parser = positive)]
        k: Vec<u32>,
    },
    /// Evaluate a subgroup predicate. Exits 0 when it holds and 1 otherwise.
    Check {
        group: String,
        predicate: Predicate,
        /// Generators of the subgroup in cycle notation; none means the whole group.
        #[arg(long = "gen", value_name = "CYCLES")]
        generators: Vec<String>,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        k: u32,
        /// Class name for `f-subnormal` and `kf-subnormal`, e.g. `U_k` or `N`.
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Test membership of the group in a class. Without `--class`, list the
    /// submodular classes for each k.
    Classify {
        group: String,
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3], value_parser = positive)]
        k: Vec<u32>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Run verification suites over the default corpus.
    Verify {
        /// Suite ids; all suites when omitted.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3], value_parser = positive)]
        k: Vec<u32>,
        /// Write the JSON reports here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Inspect the default corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Write the subgroup lattice as JSON, or as Graphviz with `--emit-dot`.
    ExportLattice {
        group: String,
        #[arg(long)]
        emit_dot: bool,
        /// Label cover edges with embeddings of degree at most k.
        #[arg(long, default_value_t = 1, value_parser = positive)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    /// One line per entry: name, order, tags and aliases.
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Predicate {
    KSubmodular,
    Submodular,
    Modular,
    /// n-modularly embedded, with n taken from `--k`.
    NModular,
    Normal,
    Maximal,
    PSubnormal,
    KpSubnormal,
    FSubnormal,
    KfSubnormal,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

type Result<T> = std::result::Result<T, CliError>;

fn positive(s: &str) -> std::result::Result<u32, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("k must be at least 1".into()),
        Ok(k) => Ok(k),
        Err(e) => Err(e.to_string()),
    }
}

fn read_spec(text: &str) -> Result<GroupSpec> {
    match text.strip_prefix('@') {
        Some(path) => {
            let body = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
            Ok(GroupSpec::parse(&body)?)
        }
        None => Ok(GroupSpec::parse(text)?),
    }
}

fn load(text: &str, cap: Option<usize>) -> Result<SubgroupLattice> {
    let group = read_spec(text)?.build(cap.unwrap_or(DEFAULT_ORDER_CAP))?;
    Ok(SubgroupLattice::new(Arc::new(group)))
}

fn locate(lat: &SubgroupLattice, generators: &[String]) -> Result<SubgroupId> {
    if generators.is_empty() {
        return Ok(lat.top());
    }
    let g = lat.group();
    let mut seed = Vec::new();
    for cycles in generators {
        let p = Permutation::parse_cycles(cycles, g.degree())?;
        let x = g.index_of(&p).ok_or_else(|| CliError::Input(format!("{cycles} is not an element of {}", g.name())))?;
        seed.push(x);
    }
    Ok(lat.generated_subgroup(&seed))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn orders(lat: &SubgroupLattice, ids: &[SubgroupId]) -> String {
    ids.iter().map(|&h| lat.order(h).to_string()).collect::<Vec<_>>().join(", ")
}

fn show(lat: &SubgroupLattice, ks: &[u32]) -> Result<ExitCode> {
    let w = lat.whole();
    let g = lat.group();
    let primes: Vec<String> = w.prime_divisors().iter().map(u64::to_string).collect();
    println!("group         {}", g.name());
    println!("order         {}", w.order());
    println!("primes        {}", if primes.is_empty() { "-".into() } else { primes.join(", ") });
    println!("exponent      {}", w.exponent());
    println!("abelian       {}", yes(w.is_abelian()));
    println!("cyclic        {}", yes(w.is_cyclic()));
    println!("nilpotent     {}", yes(w.is_nilpotent()));
    println!("supersoluble  {}", yes(w.is_supersoluble()));
    println!("soluble       {}", yes(w.is_soluble()));
    println!("subgroups     {} in {} conjugacy classes", lat.len(), lat.conjugacy_class_count());
    println!("normal        orders {}", orders(lat, &w.normal_subgroups()));
    if w.is_trivial() {
        println!("chief factors none");
    } else {
        let factors: Vec<String> = w
            .chief_factors()
            .iter()
            .map(|f| format!("{}/{}{}", lat.order(f.above), lat.order(f.below), if f.is_complemented() { "*" } else { "" }))
            .collect();
        println!("chief factors {} (* complemented)", factors.join(", "));
    }
    for &k in ks {
        let members = memberships(&w, k)?;
        println!("k={k}           {}", if members.is_empty() { "none of Y, X, K, F".into() } else { members.join(" ") });
    }
    Ok(ExitCode::SUCCESS)
}

fn memberships(w: &Section, k: u32) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for class in SubmodularClass::ALL {
        if sm::in_class(w, class, k)? {
            out.push(class.name());
        }
    }
    Ok(out)
}

fn print_chain(lat: &SubgroupLattice, chain: &ChainWitness) {
    let term = |h: SubgroupId| {
        let gens = lat.generator_cycles(h);
        let gens = if gens.is_empty() { "1".to_string() } else { gens.join(", ") };
        format!("<{gens}> (order {})", lat.order(h))
    };
    let Some(first) = chain.steps.first() else {
        println!("chain: the subgroup is the whole group");
        return;
    };
    println!("chain:");
    println!("  {}", term(first.lower));
    for step in &chain.steps {
        let kind = match step.kind {
            Embedding::Normal => "normal".to_string(),
            Embedding::Modular { n, p, q } => format!("{n}-modular, |G/Core| = {p}*{q}^{n}"),
        };
        println!("  < {} [{kind}]", term(step.upper));
    }
}

fn check(lat: &SubgroupLattice, predicate: Predicate, h: SubgroupId, k: u32, class: Option<&str>, m: Option<u64>) -> Result<ExitCode> {
    let w = lat.whole();
    let formation = || -> Result<classes::ClassOracle> {
        let name = class.ok_or_else(|| CliError::Input("this predicate needs --class".into()))?;
        Ok(classes::oracle(name, ClassParams { m, k: Some(k) })?)
    };
    let mut chain = None;
    let holds = match predicate {
        Predicate::KSubmodular => {
            chain = sm::k_submodular_chain(&w, h, k)?;
            chain.is_some()
        }
        Predicate::Submodular => sm::is_submodular(&w, h)?,
        Predicate::Modular => sm::is_modular_subgroup(&w, h)?,
        Predicate::NModular => sm::is_n_modularly_embedded(&w, h, k)?,
        Predicate::Normal => w.is_normal(h),
        Predicate::Maximal => lat.maximal_subgroups(lat.top()).contains(&h),
        Predicate::PSubnormal => classes::is_p_subnormal(&w, h)?,
        Predicate::KpSubnormal => classes::is_kp_subnormal(&w, h)?,
        Predicate::FSubnormal => classes::is_f_subnormal(&w, h, &formation()?)?,
        Predicate::KfSubnormal => classes::is_kf_subnormal(&w, h, &formation()?)?,
    };
    let name = predicate.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let k_note = match predicate {
        Predicate::KSubmodular | Predicate::NModular => format!(" (k = {k})"),
        _ => String::new(),
    };
    println!("{name}{k_note} for subgroup of order {} in {}: {holds}", lat.order(h), lat.group().name());
    if let Some(chain) = &chain {
        print_chain(lat, chain);
    }
    Ok(if holds { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn classify(lat: &SubgroupLattice, class: Option<&str>, ks: &[u32], m: Option<u64>) -> Result<ExitCode> {
    let w = lat.whole();
    let Some(name) = class else {
        for &k in ks {
            for c in SubmodularClass::ALL {
                println!("{}({k}) {}", c.name(), yes(sm::in_class(&w, c, k)?));
            }
        }
        return Ok(ExitCode::SUCCESS);
    };
    let mut all = true;
    for &k in ks {
        let oracle = classes::oracle(name, ClassParams { m, k: Some(k) })?;
        let member = oracle.contains(&w);
        all &= member;
        println!("{} {}", oracle.name(), yes(member));
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn verify(suites: &[String], ks: &[u32], out: Option<PathBuf>, jobs: Option<usize>, cap: Option<usize>) -> Result<ExitCode> {
    let suites: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites.iter().map(|s| s.parse()).collect::<std::result::Result<_, _>>()?
    };
    if jobs == Some(0) {
        return Err(CliError::Input("--jobs must be at least 1".into()));
    }
    let corpus = build_corpus(&CorpusConfig::with_cap(cap.unwrap_or(CorpusConfig::default().order_cap)))?;
    let reports = run_suites(&suites, ks, &corpus, jobs)?;
    let mut all = true;
    for r in &reports {
        all &= r.passed();
        let s = &r.summary;
        println!("{} {} ({} records, {} failed)", if r.passed() { "PASS" } else { "FAIL" }, r.suite, s.records, s.failed);
        for f in r.failures() {
            let check = f.witness.as_ref().map(|w| serde_json::to_string(&w.check).unwrap_or_default());
            println!("  {} k={:?}: {}", f.group, f.k, check.unwrap_or_default());
        }
        for q in s.requirements.iter().filter(|q| !q.pass) {
            println!("  unmet: {} ({})", q.name, q.detail);
        }
        for f in &s.findings {
            println!("  {}: {}", f.query, f.group.as_deref().unwrap_or("none in corpus"));
        }
    }
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
        fs::write(&path, json + "\n").map_err(|source| CliError::Io { path, source })?;
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn corpus_list(cap: Option<usize>) -> Result<ExitCode> {
    let corpus = build_corpus(&CorpusConfig::with_cap(cap.unwrap_or(CorpusConfig::default().order_cap)))?;
    for e in &corpus.entries {
        let t = e.tags();
        let mut tags = Vec::new();
        for (on, name) in [(t.abelian, "abelian"), (t.nilpotent, "nilpotent"), (t.supersoluble, "supersoluble"), (t.soluble, "soluble")] {
            if on {
                tags.push(name);
            }
        }
        let aliases = if e.aliases.is_empty() { String::new() } else { format!("  = {}", e.aliases.join("; ")) };
        println!("{:<40} {:>4}  {}{aliases}", e.name, t.order, tags.join(","));
    }
    println!("{} groups", corpus.len());
    Ok(ExitCode::SUCCESS)
}

fn export(lat: &SubgroupLattice, dot: bool, k: u32, out: Option<PathBuf>) -> Result<ExitCode> {
    let text = if dot {
        lat.to_dot(|a, b| match sm::embedding(lat, a, b)? {
            Embedding::Normal => Some("N".into()),
            Embedding::Modular { n, .. } if n <= k => Some(format!("{n}")),
            Embedding::Modular { .. } => None,
        })
    } else {
        let nodes: Vec<serde_json::Value> = lat
            .ids()
            .map(|h| {
                serde_json::json!({
                    "id": h,
                    "order": lat.order(h),
                    "generators": lat.generator_cycles(h),
                    "normal": lat.is_normal(h),
                    "covers": lat.covers(h),
                })
            })
            .collect();
        serde_json::to_string_pretty(&nodes).expect("lattice serializes") + "\n"
    };
    match out {
        Some(path) => fs::write(&path, text).map_err(|source| CliError::Io { path, source })?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cap = cli.order_cap;
    match cli.command {
        Command::Show { group, k } => show(&load(&group, cap)?, &k),
        Command::Check { group, predicate, generators, k, class, m } => {
            let lat = load(&group, cap)?;
            let h = locate(&lat, &generators)?;
            check(&lat, predicate, h, k, class.as_deref(), m)
        }
        Command::Classify { group, class, k, m } => classify(&load(&group, cap)?, class.as_deref(), &k, m),
        Command::Verify { suite, k, out, jobs } => verify(&suite, &k, out, jobs, cap),
        Command::Corpus { action: CorpusAction::List } => corpus_list(cap),
        Command::ExportLattice { group, emit_dot, k, out } => export(&load(&group, cap)?, emit_dot, k, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
