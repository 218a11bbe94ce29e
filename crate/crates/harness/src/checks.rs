use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use grouplab::classes::{self, ClassParams, FormationFunction};
use grouplab::submodular::{self as sm, SubmodularClass};
use grouplab::{arith, GroupSpec, SubgroupId, SubgroupLattice};
use serde::{Deserialize, Serialize};

use crate::corpus::CorpusEntry;
use crate::Result;

/// One verifiable statement about a corpus entry. Subgroups are named by
/// their ids in the entry's lattice, which are deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Check {
    /// The three descriptions of groups whose maximal subgroups are
    /// k-submodular agree. At k = 1 the modular-maximal description joins.
    MaximalVariants { k: u32 },
    /// The four descriptions of groups whose subgroups are all k-submodular
    /// agree. At k = 1 the classical LM condition joins.
    AllSubgroupVariants { k: u32 },
    /// Membership passes from the group to the quotient by `normal`.
    ClassQuotient { class: SubmodularClass, k: u32, normal: SubgroupId },
    /// Membership passes from the group to the subgroup `sub`.
    ClassSubgroup { class: SubmodularClass, k: u32, sub: SubgroupId },
    /// `G/N1` and `G/N2` in the class give `G/(N1 ∩ N2)` in the class.
    ClassSubdirect { class: SubmodularClass, k: u32, n1: SubgroupId, n2: SubgroupId },
    /// `G/Φ(G)` in the class gives `G` in the class.
    ClassSaturated { class: SubmodularClass, k: u32 },
    /// A direct product entry whose factors are in the class is in the class.
    ClassDirectProduct { class: SubmodularClass, k: u32 },
    /// `G/Core(M)` in X for every maximal `M` gives `G` in X.
    PrimitiveClosure { k: u32 },
    /// X-membership implies supersolubility.
    MaximalImpliesSupersoluble { k: u32 },
    /// `G` in X iff `G/Φ(G)` in Y.
    FrattiniQuotient { k: u32 },
    /// All maximal subgroups modular iff every subgroup of `G/Φ(G)` is
    /// submodular, both by the lattice conditions rather than embeddings.
    ModularFrattini,
    /// Membership in K or F agrees with the local formation of `h` or `f`.
    LocalFormation { class: SubmodularClass, k: u32 },
    /// K equals supersoluble intersected with `wU_k`.
    SupersolubleWeakUk { k: u32 },
    /// F equals `wK`.
    WeakK { k: u32 },
    /// `G = AB` with `A`, `B` nilpotent and k-submodular forces `G`
    /// supersoluble with every Sylow subgroup k-submodular.
    NilpotentFactorization { k: u32, a: SubgroupId, b: SubgroupId },
    /// A maximal subgroup is 1-submodular iff it is modular.
    MaximalModular { m: SubgroupId },
    /// A subgroup is 1-submodular iff it is submodular.
    SubmodularCollapse { h: SubgroupId },
    /// Schmidt's description of modular maximal subgroups agrees with the
    /// lattice conditions.
    Schmidt { m: SubgroupId },
    /// 1-LM iff LM.
    LmCollapse,
    /// Y ⊆ X ⊆ K ⊆ F.
    InclusionChain { k: u32 },
    /// For `N ≤ H`, `H` is n-modularly embedded in `G` iff `H/N` is in `G/N`.
    EmbeddingQuotient { normal: SubgroupId, sub: SubgroupId, n: u32 },
    /// A maximal subgroup is k-submodular iff its core quotient has the
    /// biprimary shape with a cyclic `q^n` complement, `n <= k`.
    MaximalStructure { m: SubgroupId, k: u32 },
    /// A k-submodular maximal subgroup is prime-index subnormal in both senses.
    MaximalPrimeSubnormal { m: SubgroupId, k: u32 },
    /// Conjugates of a k-submodular subgroup are k-submodular.
    ConjugateInvariance { sub: SubgroupId, k: u32 },
    /// `H` k-submodular in `R` and `R` in `G` give `H` in `G`, for all `H <= R`.
    Transitivity { mid: SubgroupId, k: u32 },
    /// `H` k-submodular gives `H ∩ U` k-submodular in `U` for all `U`.
    IntersectionInSubgroup { sub: SubgroupId, k: u32 },
    /// Two k-submodular subgroups meet in a k-submodular subgroup.
    IntersectionOfPair { sub: SubgroupId, k: u32 },
    /// `H` k-submodular gives `HN/N` k-submodular in `G/N`.
    QuotientImage { sub: SubgroupId, normal: SubgroupId, k: u32 },
    /// For `N <= H`, `H/N` k-submodular gives `H` k-submodular.
    QuotientLift { sub: SubgroupId, normal: SubgroupId, k: u32 },
    /// `HN` k-submodular iff `HN/N` is.
    QuotientJoin { sub: SubgroupId, normal: SubgroupId, k: u32 },
    /// In a soluble group, k-submodular implies `U_k`-subnormal.
    SubmodularImpliesUkSubnormal { sub: SubgroupId, k: u32 },
    /// A k-submodular Sylow subgroup for the largest prime is normal.
    GreatestPrimeSylow { k: u32 },
    /// Nilpotent groups lie in F.
    NilpotentInF { k: u32 },
    /// F lies in `wU`.
    FInWeakU { k: u32 },
    /// k-submodularity and class membership are monotone in k.
    Monotone { k: u32 },
    /// Sylow counts are 1 mod p and divide the index.
    SylowCongruence,
    /// The concrete quotient by `normal` matches the lattice section.
    QuotientSound { normal: SubgroupId },
    /// The lattice equals a subset-closure enumeration. Vacuous above
    /// order 64.
    NaiveLattice,
}

impl Check {
    /// Subgroup ids the check refers to, for witness descriptions.
    pub fn subgroups(&self) -> Vec<SubgroupId> {
        use Check::*;
        match *self {
            ClassQuotient { normal, .. } | QuotientSound { normal } => vec![normal],
            ClassSubgroup { sub, .. }
            | ConjugateInvariance { sub, .. }
            | IntersectionInSubgroup { sub, .. }
            | IntersectionOfPair { sub, .. }
            | SubmodularImpliesUkSubnormal { sub, .. } => vec![sub],
            ClassSubdirect { n1, n2, .. } => vec![n1, n2],
            NilpotentFactorization { a, b, .. } => vec![a, b],
            MaximalModular { m } | Schmidt { m } | MaximalStructure { m, .. } | MaximalPrimeSubnormal { m, .. } => {
                vec![m]
            }
            SubmodularCollapse { h } => vec![h],
            Transitivity { mid, .. } => vec![mid],
            EmbeddingQuotient { normal, sub, .. }
            | QuotientImage { sub, normal, .. }
            | QuotientLift { sub, normal, .. }
            | QuotientJoin { sub, normal, .. } => vec![sub, normal],
            _ => Vec::new(),
        }
    }
}

/// Result of a check. `verdict` is `None` when the premise did not hold, so
/// the instance says nothing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub verdict: Option<bool>,
    pub variants: BTreeMap<String, bool>,
    pub detail: String,
}

impl Evaluation {
    fn vacuous() -> Self {
        Evaluation::default()
    }

    fn holds(ok: bool) -> Self {
        Evaluation { verdict: Some(ok), ..Default::default() }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// The instance failed.
    pub fn failed(&self) -> bool {
        self.verdict == Some(false)
    }

    fn agreement(variants: BTreeMap<String, bool>) -> Self {
        let mut values = variants.values();
        let first = values.next().copied();
        let ok = values.all(|&v| Some(v) == first);
        Evaluation { verdict: Some(ok), variants, detail: String::new() }
    }
}

fn implies(premise: bool, conclusion: impl FnOnce() -> Result<bool>) -> Result<Evaluation> {
    if !premise {
        return Ok(Evaluation::vacuous());
    }
    Ok(Evaluation::holds(conclusion()?))
}

fn in_class(lat: &SubgroupLattice, class: SubmodularClass, k: u32) -> Result<bool> {
    Ok(sm::in_class(&lat.whole(), class, k)?)
}

fn k_sub(lat: &SubgroupLattice, h: SubgroupId, k: u32) -> Result<bool> {
    Ok(sm::is_k_submodular(&lat.whole(), h, k)?)
}

/// Membership of `G/N`, using the group itself when `N` is trivial.
fn quotient_in_class(entry: &CorpusEntry, n: SubgroupId, class: SubmodularClass, k: u32) -> Result<bool> {
    let lat = entry.lattice();
    if n == lat.trivial() {
        return in_class(lat, class, k);
    }
    in_class(&entry.quotient(n)?.lattice, class, k)
}

fn all_maximal_modular(lat: &SubgroupLattice) -> Result<bool> {
    let w = lat.whole();
    for &m in lat.maximal_subgroups(lat.top()) {
        if !sm::is_modular_subgroup(&w, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn all_sylows_k_sub(lat: &SubgroupLattice, k: u32) -> Result<bool> {
    let w = lat.whole();
    for p in w.prime_divisors() {
        for s in w.sylows(p) {
            if !k_sub(lat, s, k)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn submodular_oracle(class: SubmodularClass, k: u32) -> Result<classes::ClassOracle> {
    Ok(classes::oracle(class.name(), ClassParams { m: None, k: Some(k) })?)
}

/// Evaluates a check against an entry.
pub fn evaluate(entry: &CorpusEntry, check: &Check) -> Result<Evaluation> {
    let lat = entry.lattice();
    let w = lat.whole();
    let g = entry.group();
    match *check {
        Check::MaximalVariants { k } => {
            let mut v = BTreeMap::new();
            for variant in 1..=3u8 {
                v.insert(format!("({variant})"), sm::thm31_characterization(&w, variant, k)?);
            }
            if k == 1 {
                v.insert("modular maximals".into(), all_maximal_modular(lat)?);
            }
            Ok(Evaluation::agreement(v))
        }
        Check::AllSubgroupVariants { k } => {
            let mut v = BTreeMap::new();
            for variant in 1..=4u8 {
                v.insert(format!("({variant})"), sm::thm32_characterization(&w, variant, k)?);
            }
            if k == 1 {
                v.insert("LM".into(), sm::is_lm_group(&w).holds);
            }
            Ok(Evaluation::agreement(v))
        }
        Check::ClassQuotient { class, k, normal } => {
            implies(in_class(lat, class, k)?, || quotient_in_class(entry, normal, class, k))
        }
        Check::ClassSubgroup { class, k, sub } => {
            implies(in_class(lat, class, k)?, || Ok(sm::in_class(&lat.subgroup_section(sub), class, k)?))
        }
        Check::ClassSubdirect { class, k, n1, n2 } => {
            let premise = quotient_in_class(entry, n1, class, k)? && quotient_in_class(entry, n2, class, k)?;
            implies(premise, || quotient_in_class(entry, lat.meet(n1, n2), class, k))
        }
        Check::ClassSaturated { class, k } => {
            let phi = lat.frattini();
            if phi == lat.trivial() {
                return Ok(Evaluation::vacuous().with_detail("trivial Frattini subgroup"));
            }
            implies(quotient_in_class(entry, phi, class, k)?, || in_class(lat, class, k))
        }
        Check::ClassDirectProduct { class, k } => {
            let GroupSpec::Direct { parts } = &entry.spec else {
                return Ok(Evaluation::vacuous());
            };
            let mut premise = true;
            for part in parts {
                let group = part.build(entry.order())?;
                premise &= in_class(&SubgroupLattice::new(Arc::new(group)), class, k)?;
            }
            implies(premise, || in_class(lat, class, k))
        }
        Check::PrimitiveClosure { k } => {
            let mut premise = true;
            for &m in lat.maximal_subgroups(lat.top()) {
                premise &= quotient_in_class(entry, lat.core(m), SubmodularClass::X, k)?;
            }
            implies(premise, || in_class(lat, SubmodularClass::X, k))
        }
        Check::MaximalImpliesSupersoluble { k } => {
            implies(in_class(lat, SubmodularClass::X, k)?, || Ok(w.try_is_supersoluble()?))
        }
        Check::FrattiniQuotient { k } => {
            let x = in_class(lat, SubmodularClass::X, k)?;
            let y = quotient_in_class(entry, lat.frattini(), SubmodularClass::Y, k)?;
            Ok(Evaluation::agreement(BTreeMap::from([("G in X".into(), x), ("G/Phi in Y".into(), y)])))
        }
        Check::ModularFrattini => {
            let phi = lat.frattini();
            let lhs = all_maximal_modular(lat)?;
            let view;
            let q = if phi == lat.trivial() {
                lat
            } else {
                view = entry.quotient(phi)?;
                &view.lattice
            };
            let mut rhs = true;
            for h in q.ids() {
                rhs &= sm::is_submodular(&q.whole(), h)?;
            }
            Ok(Evaluation::agreement(BTreeMap::from([
                ("maximals modular".into(), lhs),
                ("G/Phi all submodular".into(), rhs),
            ])))
        }
        Check::LocalFormation { class, k } => {
            let f = match class {
                SubmodularClass::K => FormationFunction::H { k },
                _ => FormationFunction::F { k },
            };
            Ok(Evaluation::agreement(BTreeMap::from([
                (class.name().to_string(), in_class(lat, class, k)?),
                (format!("LF({})", f.name()), classes::in_local_formation(&w, &f)?),
            ])))
        }
        Check::SupersolubleWeakUk { k } => {
            let uk = classes::oracle("U_k", ClassParams { m: None, k: Some(k) })?;
            let rhs = w.is_supersoluble() && classes::in_weak(&w, &uk)?;
            Ok(Evaluation::agreement(BTreeMap::from([
                ("K".into(), in_class(lat, SubmodularClass::K, k)?),
                ("U and wU_k".into(), rhs),
            ])))
        }
        Check::WeakK { k } => {
            let kk = submodular_oracle(SubmodularClass::K, k)?;
            Ok(Evaluation::agreement(BTreeMap::from([
                ("F".into(), in_class(lat, SubmodularClass::F, k)?),
                ("wK".into(), classes::in_weak(&w, &kk)?),
            ])))
        }
        Check::NilpotentFactorization { k, a, b } => {
            let premise = lat.subgroup_section(a).is_nilpotent()
                && lat.subgroup_section(b).is_nilpotent()
                && lat.order(a) * lat.order(b) == g.order() * lat.order(lat.meet(a, b))
                && k_sub(lat, a, k)?
                && k_sub(lat, b, k)?;
            if !premise {
                return Ok(Evaluation::vacuous());
            }
            let mut product = vec![false; g.order()];
            for &x in lat.subgroup(a).members() {
                for &y in lat.subgroup(b).members() {
                    product[g.mul(x, y)] = true;
                }
            }
            if !product.iter().all(|&p| p) {
                return Ok(Evaluation::holds(false).with_detail("set product AB is not G"));
            }
            Ok(Evaluation::holds(w.is_supersoluble() && all_sylows_k_sub(lat, k)?))
        }
        Check::MaximalModular { m } => Ok(Evaluation::agreement(BTreeMap::from([
            ("1-submodular".into(), k_sub(lat, m, 1)?),
            ("modular".into(), sm::is_modular_subgroup(&w, m)?),
        ]))),
        Check::SubmodularCollapse { h } => Ok(Evaluation::agreement(BTreeMap::from([
            ("1-submodular".into(), k_sub(lat, h, 1)?),
            ("submodular".into(), sm::is_submodular(&w, h)?),
        ]))),
        Check::Schmidt { m } => Ok(Evaluation::agreement(BTreeMap::from([
            ("schmidt".into(), sm::schmidt_maximal_modular(&w, m)?),
            ("modular".into(), sm::is_modular_subgroup(&w, m)?),
        ]))),
        Check::LmCollapse => Ok(Evaluation::agreement(BTreeMap::from([
            ("1-LM".into(), sm::is_k_lm_group(&w, 1)?.holds),
            ("LM".into(), sm::is_lm_group(&w).holds),
        ]))),
        Check::InclusionChain { k } => {
            let mut v = BTreeMap::new();
            for c in SubmodularClass::ALL {
                v.insert(c.name().to_string(), in_class(lat, c, k)?);
            }
            let ok = (!v["Y"] || v["X"]) && (!v["X"] || v["K"]) && (!v["K"] || v["F"]);
            Ok(Evaluation { verdict: Some(ok), variants: v, detail: String::new() })
        }
        Check::EmbeddingQuotient { normal, sub, n } => {
            let q = entry.quotient(normal)?;
            let image = q.image(lat, sub);
            Ok(Evaluation::agreement(BTreeMap::from([
                ("H in G".into(), sm::is_n_modularly_embedded(&w, sub, n)?),
                ("H/N in G/N".into(), sm::is_n_modularly_embedded(&q.lattice.whole(), image, n)?),
            ])))
        }
        Check::MaximalStructure { m, k } => Ok(Evaluation::agreement(BTreeMap::from([
            ("k-submodular".into(), k_sub(lat, m, k)?),
            ("core quotient shape".into(), sm::maximal_structure_condition(&w, m, k)?),
        ]))),
        Check::MaximalPrimeSubnormal { m, k } => implies(k_sub(lat, m, k)?, || {
            Ok(classes::is_p_subnormal(&w, m)? && classes::is_kp_subnormal(&w, m)?)
        }),
        Check::ConjugateInvariance { sub, k } => implies(k_sub(lat, sub, k)?, || {
            for c in lat.conjugates(sub) {
                if !k_sub(lat, c, k)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        Check::Transitivity { mid, k } => {
            let inner = lat.subgroup_section(mid);
            let below: Vec<SubgroupId> = inner
                .subgroups()
                .filter(|&h| h != mid && sm::is_k_submodular(&inner, h, k).unwrap_or(false))
                .collect();
            implies(mid != lat.top() && !below.is_empty() && k_sub(lat, mid, k)?, || {
                for h in below {
                    if !k_sub(lat, h, k)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
        }
        Check::IntersectionInSubgroup { sub, k } => implies(k_sub(lat, sub, k)?, || {
            for u in lat.ids() {
                if !sm::is_k_submodular(&lat.subgroup_section(u), lat.meet(sub, u), k)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        Check::IntersectionOfPair { sub, k } => implies(k_sub(lat, sub, k)?, || {
            for u in lat.ids() {
                if k_sub(lat, u, k)? && !k_sub(lat, lat.meet(sub, u), k)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        Check::QuotientImage { sub, normal, k } => {
            let q = entry.quotient(normal)?;
            implies(k_sub(lat, sub, k)?, || k_sub(&q.lattice, q.image(lat, sub), k))
        }
        Check::QuotientLift { sub, normal, k } => {
            if !lat.is_subgroup_of(normal, sub) {
                return Ok(Evaluation::vacuous());
            }
            let q = entry.quotient(normal)?;
            implies(k_sub(&q.lattice, q.image(lat, sub), k)?, || k_sub(lat, sub, k))
        }
        Check::QuotientJoin { sub, normal, k } => {
            let q = entry.quotient(normal)?;
            let joined = lat.join(sub, normal);
            Ok(Evaluation::agreement(BTreeMap::from([
                ("HN in G".into(), k_sub(lat, joined, k)?),
                ("HN/N in G/N".into(), k_sub(&q.lattice, q.image(lat, sub), k)?),
            ])))
        }
        Check::SubmodularImpliesUkSubnormal { sub, k } => {
            let uk = classes::oracle("U_k", ClassParams { m: None, k: Some(k) })?;
            implies(w.is_soluble() && k_sub(lat, sub, k)?, || Ok(classes::is_f_subnormal(&w, sub, &uk)?))
        }
        Check::GreatestPrimeSylow { k } => {
            let Some(&p) = w.prime_divisors().last() else {
                return Ok(Evaluation::vacuous());
            };
            let subs: Vec<SubgroupId> = w.sylows(p);
            let mut premise = false;
            let mut ok = true;
            for s in subs {
                if k_sub(lat, s, k)? {
                    premise = true;
                    ok &= lat.is_normal(s);
                }
            }
            implies(premise, || Ok(ok))
        }
        Check::NilpotentInF { k } => implies(w.is_nilpotent(), || in_class(lat, SubmodularClass::F, k)),
        Check::FInWeakU { k } => implies(in_class(lat, SubmodularClass::F, k)?, || {
            let u = classes::oracle("U", ClassParams::default())?;
            Ok(classes::in_weak(&w, &u)?)
        }),
        Check::Monotone { k } => {
            for h in lat.ids() {
                if k_sub(lat, h, k)? && !k_sub(lat, h, k + 1)? {
                    return Ok(Evaluation::holds(false).with_detail(format!("{h} loses k-submodularity at k+1")));
                }
            }
            for c in SubmodularClass::ALL {
                if in_class(lat, c, k)? && !in_class(lat, c, k + 1)? {
                    return Ok(Evaluation::holds(false).with_detail(format!("class {} not monotone", c.name())));
                }
            }
            Ok(Evaluation::holds(true))
        }
        Check::SylowCongruence => {
            let order = g.order() as u64;
            for p in w.prime_divisors() {
                let n = w.sylows(p).len() as u64;
                if n % p != 1 || (order / arith::p_part(order, p)) % n != 0 {
                    return Ok(Evaluation::holds(false).with_detail(format!("n_{p} = {n}")));
                }
            }
            Ok(Evaluation::holds(true))
        }
        Check::QuotientSound { normal } => {
            let q = entry.quotient(normal)?;
            let section = lat.section(lat.top(), normal)?;
            let concrete = q.lattice.whole();
            let pairs = [
                ("abelian", section.is_abelian(), concrete.is_abelian()),
                ("nilpotent", section.is_nilpotent(), concrete.is_nilpotent()),
                ("supersoluble", section.is_supersoluble(), concrete.is_supersoluble()),
                ("soluble", section.is_soluble(), concrete.is_soluble()),
            ];
            let mut v = BTreeMap::new();
            for (name, a, b) in pairs {
                v.insert(format!("{name} (section)"), a);
                v.insert(format!("{name} (concrete)"), b);
            }
            let counts = section.order() == q.lattice.group().order()
                && section.exponent() == concrete.exponent()
                && section.subgroups().count() == q.lattice.len()
                && section.normal_subgroups().len() == concrete.normal_subgroups().len();
            let agree = pairs.iter().all(|&(_, a, b)| a == b);
            let detail = if counts { String::new() } else { "order, exponent or subgroup counts differ".into() };
            Ok(Evaluation { verdict: Some(counts && agree), variants: v, detail })
        }
        Check::NaiveLattice => {
            if g.order() > 64 {
                return Ok(Evaluation::vacuous());
            }
            let naive = naive_subgroups(g);
            let ours: BTreeSet<Vec<usize>> = lat.ids().map(|h| lat.subgroup(h).members().to_vec()).collect();
            let ok = naive == ours && ours.len() == lat.len();
            Ok(Evaluation::holds(ok).with_detail(format!("{} naive, {} enumerated", naive.len(), lat.len())))
        }
    }
}

fn naive_closure(g: &grouplab::FiniteGroup, seed: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut set: BTreeSet<usize> = seed.into_iter().chain([0]).collect();
    loop {
        let products: Vec<usize> = set.iter().flat_map(|&a| set.iter().map(move |&b| g.mul(a, b))).collect();
        let before = set.len();
        set.extend(products);
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

/// Every subgroup arises from the trivial one by adjoining elements one at
/// a time and closing.
fn naive_subgroups(g: &grouplab::FiniteGroup) -> BTreeSet<Vec<usize>> {
    let mut found = BTreeSet::from([vec![0]]);
    let mut frontier = vec![vec![0]];
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.binary_search(&x).is_err() {
                let next = naive_closure(g, h.iter().copied().chain([x]));
                if found.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
    }
    found
}
