use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use grouplab::submodular::SubmodularClass::{self, F, K, X, Y};
use grouplab::{SubgroupId, SubgroupLattice};
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{evaluate, Check};
use crate::corpus::{Corpus, CorpusEntry};
use crate::report::{EntryRecord, Finding, Requirement, Summary, VerificationReport, Witness};
use crate::search::{find_witness, Query};
use crate::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    MaximalClass,
    AllSubgroupClass,
    ClassClosure,
    LocalK,
    LocalF,
    WeakClasses,
    Factorizations,
    ModularCollapse,
    LmCollapse,
    Inclusions,
    Properties,
    Engine,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::MaximalClass,
        Suite::AllSubgroupClass,
        Suite::ClassClosure,
        Suite::LocalK,
        Suite::LocalF,
        Suite::WeakClasses,
        Suite::Factorizations,
        Suite::ModularCollapse,
        Suite::LmCollapse,
        Suite::Inclusions,
        Suite::Properties,
        Suite::Engine,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::MaximalClass => "T3.1",
            Suite::AllSubgroupClass => "T3.2",
            Suite::ClassClosure => "T3.3",
            Suite::LocalK => "T3.5",
            Suite::LocalF => "T3.6",
            Suite::WeakClasses => "P3.1",
            Suite::Factorizations => "T3.6_1",
            Suite::ModularCollapse => "R1",
            Suite::LmCollapse => "R2",
            Suite::Inclusions => "R3",
            Suite::Properties => "L",
            Suite::Engine => "ENGINE",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::MaximalClass => "descriptions of groups with k-submodular maximal subgroups agree",
            Suite::AllSubgroupClass => "descriptions of groups with all subgroups k-submodular agree",
            Suite::ClassClosure => "closure properties of X and Y, Frattini quotient criterion",
            Suite::LocalK => "K is the local formation of h, closed and saturated",
            Suite::LocalF => "F is the local formation of f, closed and saturated",
            Suite::WeakClasses => "K = U ∩ wU_k and F = wK",
            Suite::Factorizations => "products of two nilpotent k-submodular subgroups",
            Suite::ModularCollapse => "1-submodular equals submodular; Schmidt's maximal criterion",
            Suite::LmCollapse => "1-LM equals LM",
            Suite::Inclusions => "Y ⊆ X ⊆ K ⊆ F, with strictness witnesses",
            Suite::Properties => "properties of k-submodular subgroups and of F",
            Suite::Engine => "engine self-checks: Sylow counts, quotients, naive lattice",
        }
    }

    /// Suites whose checks do not depend on k run once.
    pub fn uses_k(self) -> bool {
        !matches!(self, Suite::ModularCollapse | Suite::LmCollapse | Suite::Engine)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

/// Normal subgroups other than 1 and G.
fn proper_normals(lat: &SubgroupLattice) -> Vec<SubgroupId> {
    lat.normal_subgroups()
        .into_iter()
        .filter(|&n| n != lat.trivial() && n != lat.top())
        .collect()
}

/// One subgroup per conjugacy class.
fn class_representatives(lat: &SubgroupLattice) -> Vec<SubgroupId> {
    let mut seen = std::collections::HashSet::new();
    lat.ids().filter(|&h| seen.insert(lat.conjugacy_class(h))).collect()
}

fn normal_pairs(lat: &SubgroupLattice, only_coprime: bool) -> Vec<(SubgroupId, SubgroupId)> {
    let normals = proper_normals(lat);
    let mut out = Vec::new();
    for (i, &a) in normals.iter().enumerate() {
        for &b in &normals[i + 1..] {
            if !only_coprime || lat.meet(a, b) == lat.trivial() {
                out.push((a, b));
            }
        }
    }
    out
}

type Labeled = Vec<(String, Check)>;

fn push(out: &mut Labeled, label: &str, check: Check) {
    out.push((label.to_string(), check));
}

fn closure_checks(out: &mut Labeled, lat: &SubgroupLattice, class: SubmodularClass, k: u32) {
    let name = class.name();
    for h in class_representatives(lat) {
        push(out, &format!("{name} subgroup"), Check::ClassSubgroup { class, k, sub: h });
    }
    for n in proper_normals(lat) {
        push(out, &format!("{name} quotient"), Check::ClassQuotient { class, k, normal: n });
    }
    push(out, &format!("{name} saturated"), Check::ClassSaturated { class, k });
}

fn checks_for(suite: Suite, entry: &CorpusEntry, k: u32) -> Labeled {
    let lat = entry.lattice();
    let maximals = lat.maximal_subgroups(lat.top()).to_vec();
    let mut out = Vec::new();
    match suite {
        Suite::MaximalClass => push(&mut out, "variants", Check::MaximalVariants { k }),
        Suite::AllSubgroupClass => push(&mut out, "variants", Check::AllSubgroupVariants { k }),
        Suite::ClassClosure => {
            push(&mut out, "Frattini criterion", Check::FrattiniQuotient { k });
            push(&mut out, "X supersoluble", Check::MaximalImpliesSupersoluble { k });
            push(&mut out, "X primitive closure", Check::PrimitiveClosure { k });
            for n in proper_normals(lat) {
                push(&mut out, "X quotient", Check::ClassQuotient { class: X, k, normal: n });
                push(&mut out, "Y quotient", Check::ClassQuotient { class: Y, k, normal: n });
            }
            for h in class_representatives(lat) {
                push(&mut out, "Y subgroup", Check::ClassSubgroup { class: Y, k, sub: h });
            }
            for (n1, n2) in normal_pairs(lat, true) {
                push(&mut out, "Y subdirect", Check::ClassSubdirect { class: Y, k, n1, n2 });
            }
            if k == 1 {
                push(&mut out, "modular Frattini criterion", Check::ModularFrattini);
            }
        }
        Suite::LocalK | Suite::LocalF => {
            let class = if suite == Suite::LocalK { K } else { F };
            push(&mut out, "local formation", Check::LocalFormation { class, k });
            closure_checks(&mut out, lat, class, k);
        }
        Suite::WeakClasses => {
            push(&mut out, "K = U ∩ wU_k", Check::SupersolubleWeakUk { k });
            push(&mut out, "F = wK", Check::WeakK { k });
        }
        Suite::Factorizations => {
            let nilpotent: Vec<SubgroupId> = lat.ids().filter(|&h| lat.subgroup_section(h).is_nilpotent()).collect();
            let order = entry.order();
            for (i, &a) in nilpotent.iter().enumerate() {
                for &b in &nilpotent[i..] {
                    if lat.order(a) * lat.order(b) != order * lat.order(lat.meet(a, b)) {
                        continue;
                    }
                    let label = if a == lat.top() || b == lat.top() { "factorization" } else { "proper factorization" };
                    push(&mut out, label, Check::NilpotentFactorization { k, a, b });
                }
            }
        }
        Suite::ModularCollapse => {
            for &m in &maximals {
                push(&mut out, "maximal modular", Check::MaximalModular { m });
                push(&mut out, "Schmidt", Check::Schmidt { m });
            }
            for h in lat.ids() {
                push(&mut out, "submodular", Check::SubmodularCollapse { h });
            }
        }
        Suite::LmCollapse => push(&mut out, "LM", Check::LmCollapse),
        Suite::Inclusions => push(&mut out, "inclusions", Check::InclusionChain { k }),
        Suite::Properties => property_checks(&mut out, entry, lat, &maximals, k),
        Suite::Engine => {
            push(&mut out, "Sylow counts", Check::SylowCongruence);
            push(&mut out, "naive lattice", Check::NaiveLattice);
            for n in proper_normals(lat).into_iter().chain([lat.top()]) {
                push(&mut out, "quotient", Check::QuotientSound { normal: n });
            }
        }
    }
    out
}

/// Labels that must each see a non-vacuous instance in the property suite.
pub(crate) const PROPERTY_LABELS: &[&str] = &[
    "L2.1", "L2.2", "L2.3(1)", "L2.3(2)", "L2.4(1)", "L2.4(2)", "L2.5(1)", "L2.5(2)", "L2.6(1)", "L2.6(2)",
    "L2.6(3)", "L2.7", "L2.8", "L3.1(1)", "L3.1(2)", "L3.1(3)", "L3.1(4)", "L3.1(5)",
];

fn property_checks(out: &mut Labeled, entry: &CorpusEntry, lat: &SubgroupLattice, maximals: &[SubgroupId], k: u32) {
    let normals = proper_normals(lat);
    for &n in &normals {
        for h in lat.above(n).ones().map(|i| SubgroupId(i as u32)).filter(|&h| h != lat.top()) {
            push(out, "L2.1", Check::EmbeddingQuotient { normal: n, sub: h, n: k });
        }
    }
    push(out, "L2.3(1)", Check::MaximalImpliesSupersoluble { k });
    for &m in maximals {
        push(out, "L2.2", Check::MaximalStructure { m, k });
        push(out, "L2.3(2)", Check::MaximalPrimeSubnormal { m, k });
    }
    for h in lat.ids() {
        push(out, "L2.4(1)", Check::ConjugateInvariance { sub: h, k });
        push(out, "L2.4(2)", Check::Transitivity { mid: h, k });
        push(out, "L2.5(1)", Check::IntersectionInSubgroup { sub: h, k });
        push(out, "L2.5(2)", Check::IntersectionOfPair { sub: h, k });
        push(out, "L2.7", Check::SubmodularImpliesUkSubnormal { sub: h, k });
        push(out, "L3.1(5)", Check::ClassSubgroup { class: F, k, sub: h });
        for &n in &normals {
            push(out, "L2.6(1)", Check::QuotientImage { sub: h, normal: n, k });
            push(out, "L2.6(2)", Check::QuotientLift { sub: h, normal: n, k });
            push(out, "L2.6(3)", Check::QuotientJoin { sub: h, normal: n, k });
        }
    }
    push(out, "L2.8", Check::GreatestPrimeSylow { k });
    push(out, "L3.1(1)", Check::NilpotentInF { k });
    push(out, "L3.1(1)", Check::FInWeakU { k });
    for &n in &normals {
        push(out, "L3.1(2)", Check::ClassQuotient { class: F, k, normal: n });
    }
    for (n1, n2) in normal_pairs(lat, false) {
        push(out, "L3.1(3)", Check::ClassSubdirect { class: F, k, n1, n2 });
    }
    if matches!(entry.spec, grouplab::GroupSpec::Direct { .. }) {
        push(out, "L3.1(4)", Check::ClassDirectProduct { class: F, k });
    }
    push(out, "monotone in k", Check::Monotone { k });
    if k == 1 {
        for &m in maximals {
            push(out, "maximal modular", Check::MaximalModular { m });
            push(out, "Schmidt", Check::Schmidt { m });
        }
    }
}

fn run_entry(suite: Suite, entry: &CorpusEntry, k: Option<u32>) -> Result<(EntryRecord, BTreeMap<String, usize>)> {
    let start = Instant::now();
    let checks = checks_for(suite, entry, k.unwrap_or(1));
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut witness = None;
    let mut variants = BTreeMap::new();
    let mut instances = 0;
    for (i, (label, check)) in checks.iter().enumerate() {
        let eval = evaluate(entry, check)?;
        if i == 0 {
            variants = eval.variants.clone();
        }
        if eval.verdict.is_some() {
            instances += 1;
            *counts.entry(label.clone()).or_default() += 1;
        }
        if eval.failed() && witness.is_none() {
            witness = Some(Witness {
                check: check.clone(),
                subgroups: check.subgroups().into_iter().map(|h| entry.describe(h)).collect(),
                variants: eval.variants,
                detail: eval.detail,
            });
        }
    }
    let record = EntryRecord {
        group: entry.name.clone(),
        order: entry.order(),
        k,
        pass: witness.is_none(),
        variants,
        checks: checks.len(),
        instances,
        witness,
        elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
    };
    Ok((record, counts))
}

fn requirements(suite: Suite, counts: &BTreeMap<String, usize>, corpus: &Corpus, ks: &[u32]) -> Result<(Vec<Requirement>, Vec<Finding>)> {
    let count = |label: &str| counts.get(label).copied().unwrap_or(0);
    let mut reqs = Vec::new();
    let mut findings = Vec::new();
    match suite {
        Suite::Properties => {
            for &label in PROPERTY_LABELS {
                let n = count(label);
                reqs.push(Requirement {
                    name: format!("{label} non-vacuous"),
                    pass: n > 0,
                    detail: format!("{n} instance(s)"),
                });
            }
            let mut falsified = false;
            for &k in ks {
                let query = Query::SubnormalNotSubmodular { k };
                let hit = find_witness(&query, corpus)?;
                falsified |= hit.is_some();
                findings.push(Finding {
                    query: query.to_string(),
                    group: hit.as_ref().map(|h| h.group.clone()),
                    subgroup: hit.and_then(|h| h.subgroup),
                });
            }
            reqs.push(Requirement {
                name: "L2.7 converse falsified".into(),
                pass: falsified,
                detail: "a U_k-subnormal subgroup that is not k-submodular".into(),
            });
        }
        Suite::Factorizations => {
            let n = count("proper factorization");
            reqs.push(Requirement {
                name: "non-trivial factorization exercised".into(),
                pass: n > 0,
                detail: format!("{n} instance(s) with both factors proper"),
            });
        }
        Suite::Engine => {
            let built: usize = corpus.entries.iter().map(CorpusEntry::quotients_verified).sum();
            let n = count("quotient");
            reqs.push(Requirement {
                name: "quotient maps verified".into(),
                pass: built >= n && n > 0,
                detail: format!("{built} coset-action quotients built, each checked to be a homomorphism with the right kernel"),
            });
        }
        Suite::Inclusions => {
            for &k in ks {
                for (has, lacks) in [(X, Y), (K, X), (F, K)] {
                    let query = Query::ClassGap { has: (has, k), lacks: (lacks, k) };
                    let hit = find_witness(&query, corpus)?;
                    findings.push(Finding { query: query.to_string(), group: hit.as_ref().map(|h| h.group.clone()), subgroup: hit.and_then(|h| h.subgroup) });
                }
            }
        }
        _ => {}
    }
    Ok((reqs, findings))
}

fn validate_ks(ks: &[u32]) -> Result<()> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(HarnessError::ZeroK);
    }
    Ok(())
}

/// Runs one suite over the corpus. Entries are evaluated in parallel on the
/// current rayon pool; the report order follows the corpus.
pub fn run_suite(suite: Suite, ks: &[u32], corpus: &Corpus) -> Result<VerificationReport> {
    validate_ks(ks)?;
    let k_values: Vec<Option<u32>> = if suite.uses_k() { ks.iter().map(|&k| Some(k)).collect() } else { vec![None] };
    let jobs: Vec<(&CorpusEntry, Option<u32>)> =
        corpus.entries.iter().flat_map(|e| k_values.iter().map(move |&k| (e, k))).collect();
    let results: Vec<(EntryRecord, BTreeMap<String, usize>)> =
        jobs.par_iter().map(|&(e, k)| run_entry(suite, e, k)).collect::<Result<_>>()?;
    let mut summary = Summary::default();
    let mut entries = Vec::with_capacity(results.len());
    for (record, counts) in results {
        for (label, n) in counts {
            *summary.instances.entry(label).or_default() += n;
        }
        entries.push(record);
    }
    summary.records = entries.len();
    summary.passed = entries.iter().filter(|r| r.pass).count();
    summary.failed = summary.records - summary.passed;
    let (reqs, findings) = requirements(suite, &summary.instances, corpus, ks)?;
    summary.pass = summary.failed == 0 && reqs.iter().all(|r| r.pass);
    summary.requirements = reqs;
    summary.findings = findings;
    Ok(VerificationReport {
        schema_version: crate::report::SCHEMA_VERSION,
        suite: suite.id().to_string(),
        k: if suite.uses_k() { ks.to_vec() } else { Vec::new() },
        entries,
        summary,
    })
}

/// Runs several suites, optionally on a dedicated pool of `jobs` threads.
pub fn run_suites(suites: &[Suite], ks: &[u32], corpus: &Corpus, jobs: Option<usize>) -> Result<Vec<VerificationReport>> {
    validate_ks(ks)?;
    let run = || suites.iter().map(|&s| run_suite(s, ks, corpus)).collect::<Result<Vec<_>>>();
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| HarnessError::Pool(e.to_string()))?
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_parse_back() {
        for s in Suite::ALL {
            assert_eq!(s.id().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("engine".parse::<Suite>().unwrap(), Suite::Engine);
        assert!(matches!("T9.9".parse::<Suite>(), Err(HarnessError::UnknownSuite(_))));
    }

    #[test]
    fn only_collapses_and_engine_ignore_k() {
        let fixed: Vec<Suite> = Suite::ALL.into_iter().filter(|s| !s.uses_k()).collect();
        assert_eq!(fixed, [Suite::ModularCollapse, Suite::LmCollapse, Suite::Engine]);
    }
}
