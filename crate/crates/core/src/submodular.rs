//! Modular and submodular subgroups, n-modular embedding, k-submodularity,
//! k-LM groups and the group classes defined through them.
//!
//! Every predicate takes a [`Section`] as the ambient group, so the same code
//! answers questions about subgroups and quotients of the lattice's group.
//!
//! Whether `A` is n-modularly embedded in `B` depends only on the pair, since
//! `Core_{B/N}(A/N) = Core_B(A)/N`. The embedding steps of the whole lattice
//! are therefore computed once and k-submodularity in any section reduces to
//! reachability along those steps.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::lattice::{SubgroupId, SubgroupLattice, MAX_K};
use crate::structure::Section;
use crate::{GroupError, Result};

/// How one term of a chain sits in the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Embedding {
    Normal,
    /// `B/Core_B(A)` is non-nilpotent of order `p q^n` with `|B:A| = p`.
    Modular { n: u32, p: u64, q: u64 },
}

impl Embedding {
    pub fn n(&self) -> Option<u32> {
        match self {
            Embedding::Normal => None,
            Embedding::Modular { n, .. } => Some(*n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingEdge {
    pub lower: SubgroupId,
    pub upper: SubgroupId,
    pub kind: Embedding,
}

/// A chain `H = H_0 < H_1 < ... < H_m = T` of embedding steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub steps: Vec<EmbeddingEdge>,
}

impl ChainWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The ids `H_0, ..., H_m`.
    pub fn terms(&self) -> Vec<SubgroupId> {
        let mut t: Vec<SubgroupId> = self.steps.iter().map(|s| s.lower).collect();
        if let Some(last) = self.steps.last() {
            t.push(last.upper);
        }
        t
    }
}

/// `n` and `q` with `|B:A| = q^n`; `q` is absent when the index is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePowerIndex {
    pub n: u32,
    pub q: Option<u64>,
}

/// The four classes defined by systems of k-submodular subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubmodularClass {
    /// Every maximal subgroup is k-submodular.
    X,
    /// Every subgroup is k-submodular.
    Y,
    /// Supersoluble with every Sylow subgroup k-submodular.
    K,
    /// Every Sylow subgroup is k-submodular.
    F,
}

impl SubmodularClass {
    pub const ALL: [SubmodularClass; 4] =
        [SubmodularClass::Y, SubmodularClass::X, SubmodularClass::K, SubmodularClass::F];

    pub fn name(self) -> &'static str {
        match self {
            SubmodularClass::X => "X",
            SubmodularClass::Y => "Y",
            SubmodularClass::K => "K",
            SubmodularClass::F => "F",
        }
    }
}

/// Outcome of a k-LM test with a failing pair when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LmVerdict {
    pub holds: bool,
    pub counterexample: Option<(SubgroupId, SubgroupId)>,
}

fn check_k(k: u32) -> Result<u32> {
    if k < 1 {
        return Err(GroupError::NonPositiveParameter(k));
    }
    Ok(k.min(MAX_K))
}

/// Classifies the step `a < b` directly from the definition. `None` when `a`
/// is not n-modularly embedded in `b` for any `n`.
pub fn embedding(lat: &SubgroupLattice, a: SubgroupId, b: SubgroupId) -> Option<Embedding> {
    if !lat.is_subgroup_of(a, b) {
        return None;
    }
    if lat.is_normal_in(a, b) {
        return Some(Embedding::Normal);
    }
    let p = lat.index(a, b) as u64;
    if !arith::is_prime(p) {
        return None;
    }
    let core = lat.core_in(a, b);
    let (q, n) = arith::prime_power(lat.index(core, b) as u64 / p)?;
    let quotient = lat.section(b, core).expect("cores are normal");
    if q == p || quotient.is_nilpotent() {
        return None;
    }
    Some(Embedding::Modular { n, p, q })
}

/// Whether `h` is n-modularly embedded in the section's top.
pub fn is_n_modularly_embedded(s: &Section, h: SubgroupId, n: u32) -> Result<bool> {
    if n < 1 {
        return Err(GroupError::NonPositiveParameter(n));
    }
    let lat = s.lattice();
    if !s.contains(h) {
        return Err(GroupError::NotContained { lower: h.index(), upper: s.top().index() });
    }
    Ok(match embedding(lat, h, s.top()) {
        Some(Embedding::Normal) => true,
        Some(Embedding::Modular { n: m, .. }) => m == n,
        None => false,
    })
}

fn embeddings(lat: &SubgroupLattice) -> &Vec<Vec<(u32, u8)>> {
    lat.memo.embeddings.get_or_init(|| {
        lat.ids()
            .map(|a| {
                lat.above(a)
                    .ones()
                    .skip(1)
                    .filter_map(|b| {
                        embedding(lat, a, SubgroupId(b as u32)).map(|e| (b as u32, e.n().unwrap_or(0) as u8))
                    })
                    .collect()
            })
            .collect()
    })
}

/// Every intrinsic embedding step of the lattice.
pub fn embedding_edges(lat: &SubgroupLattice) -> Vec<EmbeddingEdge> {
    let mut out = Vec::new();
    for (a, ups) in embeddings(lat).iter().enumerate() {
        for &(b, _) in ups {
            let (a, b) = (SubgroupId(a as u32), SubgroupId(b));
            out.push(EmbeddingEdge { lower: a, upper: b, kind: embedding(lat, a, b).unwrap() });
        }
    }
    out
}

/// Reflexive-transitive closure of a relation whose edges go up in id.
pub(crate) fn closure_upwards(len: usize, mut succ: impl FnMut(usize) -> Vec<usize>) -> Vec<FixedBitSet> {
    let mut reach = vec![FixedBitSet::with_capacity(len); len];
    for a in (0..len).rev() {
        let mut set = FixedBitSet::with_capacity(len);
        set.insert(a);
        for b in succ(a) {
            debug_assert!(b > a);
            set.union_with(&reach[b]);
        }
        reach[a] = set;
    }
    reach
}

fn k_reach(lat: &SubgroupLattice, k: u32) -> &Vec<FixedBitSet> {
    lat.memo.k_reach[k as usize].get_or_init(|| {
        let edges = embeddings(lat);
        closure_upwards(lat.len(), |a| {
            edges[a]
                .iter()
                .filter(|&&(_, n)| (n as u32) <= k)
                .map(|&(b, _)| b as usize)
                .collect()
        })
    })
}

/// Whether `h` is k-submodular in the section's top.
pub fn is_k_submodular(s: &Section, h: SubgroupId, k: u32) -> Result<bool> {
    let k = check_k(k)?;
    if !s.contains(h) {
        return Err(GroupError::NotContained { lower: h.index(), upper: s.top().index() });
    }
    Ok(k_reach(s.lattice(), k)[h.index()].contains(s.top().index()))
}

/// A shortest chain witnessing k-submodularity, ties broken by the
/// lexicographically least sequence of ids. `None` if `h` is not k-submodular.
pub fn k_submodular_chain(s: &Section, h: SubgroupId, k: u32) -> Result<Option<ChainWitness>> {
    if !is_k_submodular(s, h, k)? {
        return Ok(None);
    }
    let k = check_k(k)?;
    let lat = s.lattice();
    let edges = embeddings(lat);
    let top = s.top().index();
    let usable = |a: usize| -> Vec<usize> {
        edges[a]
            .iter()
            .filter(|&&(b, n)| (n as u32) <= k && lat.is_subgroup_of(SubgroupId(b), s.top()))
            .map(|&(b, _)| b as usize)
            .collect()
    };
    // distance to the top, by a backwards sweep over ids in [h, top]
    let mut dist = vec![usize::MAX; lat.len()];
    dist[top] = 0;
    let nodes: Vec<usize> = lat.interval(h, s.top()).map(|i| i.index()).collect();
    for &a in nodes.iter().rev().skip(1) {
        dist[a] = usable(a)
            .into_iter()
            .filter(|&b| dist[b] != usize::MAX)
            .map(|b| dist[b] + 1)
            .min()
            .unwrap_or(usize::MAX);
    }
    let mut steps = Vec::new();
    let mut cur = h.index();
    while cur != top {
        let next = usable(cur)
            .into_iter()
            .filter(|&b| dist[b] != usize::MAX && dist[b] + 1 == dist[cur])
            .min()
            .expect("a shortest chain continues");
        let (lo, up) = (SubgroupId(cur as u32), SubgroupId(next as u32));
        steps.push(EmbeddingEdge { lower: lo, upper: up, kind: embedding(lat, lo, up).unwrap() });
        cur = next;
    }
    Ok(Some(ChainWitness { steps }))
}

/// Whether `m` is modular in the interval `[bottom, top]`, checking both
/// lattice conditions over every admissible pair.
pub fn modular_in(lat: &SubgroupLattice, m: SubgroupId, top: SubgroupId, bottom: SubgroupId) -> bool {
    let (join, meet) = lat.join_meet_tables();
    let len = lat.len();
    let j = |a: usize, b: usize| join[a * len + b] as usize;
    let mt = |a: usize, b: usize| meet[a * len + b] as usize;
    let m = m.index();
    let members: Vec<usize> = lat.interval(bottom, top).map(|i| i.index()).collect();
    for &z in &members {
        let mz = mt(m, z);
        for &x in &members {
            if lat.is_subgroup_of(SubgroupId(x as u32), SubgroupId(z as u32)) && j(x, mz) != mt(j(x, m), z) {
                return false;
            }
        }
        if lat.is_subgroup_of(SubgroupId(m as u32), SubgroupId(z as u32)) {
            for &y in &members {
                if j(m, mt(y, z)) != mt(j(m, y), z) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `m` is a modular subgroup of the section.
pub fn is_modular_subgroup(s: &Section, m: SubgroupId) -> Result<bool> {
    if !s.contains(m) {
        return Err(GroupError::NotContained { lower: m.index(), upper: s.top().index() });
    }
    Ok(modular_in(s.lattice(), m, s.top(), s.bottom()))
}

fn submodular_reach(lat: &SubgroupLattice, bottom: SubgroupId) -> Arc<Vec<FixedBitSet>> {
    if let Some(r) = lat.memo.modular_reach.lock().unwrap().get(&bottom.0) {
        return r.clone();
    }
    let reach = Arc::new(closure_upwards(lat.len(), |a| {
        let a = SubgroupId(a as u32);
        if !lat.is_subgroup_of(bottom, a) {
            return Vec::new();
        }
        lat.above(a)
            .ones()
            .skip(1)
            .map(|b| SubgroupId(b as u32))
            .filter(|&b| lat.is_normal_in(a, b) || modular_in(lat, a, b, bottom))
            .map(|b| b.index())
            .collect()
    }));
    lat.memo.modular_reach.lock().unwrap().insert(bottom.0, reach.clone());
    reach
}

/// Whether `h` is joined to the section's top by a chain of modular steps.
pub fn is_submodular(s: &Section, h: SubgroupId) -> Result<bool> {
    if !s.contains(h) {
        return Err(GroupError::NotContained { lower: h.index(), upper: s.top().index() });
    }
    Ok(submodular_reach(s.lattice(), s.bottom())[h.index()].contains(s.top().index()))
}

/// `(n, q)` when `|b:a| = q^n` and `a` is n-maximal in `b`.
pub fn n_maximal_with_index(lat: &SubgroupLattice, a: SubgroupId, b: SubgroupId) -> Result<Option<PrimePowerIndex>> {
    if !lat.is_subgroup_of(a, b) {
        return Err(GroupError::NotContained { lower: a.index(), upper: b.index() });
    }
    let index = lat.index(a, b) as u64;
    let (q, n) = match index {
        1 => (None, 0),
        _ => match arith::prime_power(index) {
            Some((q, n)) => (Some(q), n),
            None => return Ok(None),
        },
    };
    Ok(lat.n_maximal_chain_exists(a, b, n)?.then_some(PrimePowerIndex { n, q }))
}

/// Pairs `(A, B)` of the section with `A` maximal in `⟨A, B⟩`, in id order.
fn lm_pairs<'a>(s: &'a Section) -> impl Iterator<Item = (SubgroupId, SubgroupId)> + 'a {
    let lat = s.lattice();
    let subs: Vec<SubgroupId> = s.subgroups().collect();
    let subs2 = subs.clone();
    subs.into_iter().flat_map(move |a| {
        subs2
            .clone()
            .into_iter()
            .filter(move |&b| lat.covers(a).contains(&lat.join(a, b)))
            .map(move |b| (a, b))
    })
}

/// The k-LM condition, with the first failing pair.
pub fn is_k_lm_group(s: &Section, k: u32) -> Result<LmVerdict> {
    check_k(k)?;
    let lat = s.lattice();
    for (a, b) in lm_pairs(s) {
        let ok = matches!(
            n_maximal_with_index(lat, lat.meet(a, b), b)?,
            Some(PrimePowerIndex { n, .. }) if n >= 1 && n <= k
        );
        if !ok {
            return Ok(LmVerdict { holds: false, counterexample: Some((a, b)) });
        }
    }
    Ok(LmVerdict { holds: true, counterexample: None })
}

/// The classical LM condition: `A ∩ B` maximal in `B` whenever `A` is
/// maximal in `⟨A, B⟩`.
pub fn is_lm_group(s: &Section) -> LmVerdict {
    let lat = s.lattice();
    for (a, b) in lm_pairs(s) {
        if !lat.maximal_subgroups(b).contains(&lat.meet(a, b)) {
            return LmVerdict { holds: false, counterexample: Some((a, b)) };
        }
    }
    LmVerdict { holds: true, counterexample: None }
}

pub fn in_class(s: &Section, class: SubmodularClass, k: u32) -> Result<bool> {
    let k = check_k(k)?;
    let reach = k_reach(s.lattice(), k);
    let sub = |h: SubgroupId| reach[h.index()].contains(s.top().index());
    Ok(match class {
        SubmodularClass::X => s.maximal_subgroups().into_iter().all(sub),
        SubmodularClass::Y => s.subgroups().all(sub),
        SubmodularClass::K => s.is_supersoluble() && s.all_sylow().into_iter().all(|(_, p)| sub(p)),
        SubmodularClass::F => s.all_sylow().into_iter().all(|(_, p)| sub(p)),
    })
}

/// `T/C` is trivial or cyclic of order `q^n` with `n <= k`.
fn automizer_ok(s: &Section, centralizer: SubgroupId, k: u32) -> bool {
    let q = s.quotient(centralizer).expect("factor centralizers are normal");
    q.is_trivial()
        || (q.is_cyclic() && matches!(arith::prime_power(q.order() as u64), Some((_, n)) if n <= k))
}

/// The three equivalent conditions on maximal subgroups and complemented
/// chief factors.
pub fn thm31_characterization(s: &Section, variant: u8, k: u32) -> Result<bool> {
    let k = check_k(k)?;
    let lat = s.lattice();
    match variant {
        1 => in_class(s, SubmodularClass::X, k),
        2 => Ok(s.is_supersoluble()
            && s.chief_factors()
                .iter()
                .filter(|f| f.is_complemented())
                .all(|f| automizer_ok(s, f.centralizer, k))),
        3 => {
            if !s.is_soluble() {
                return Ok(false);
            }
            let maximals = s.maximal_subgroups();
            for (i, &m1) in maximals.iter().enumerate() {
                for &m2 in &maximals[i + 1..] {
                    let d = lat.meet(m1, m2);
                    let n1 = n_maximal_with_index(lat, d, m1)?;
                    let n2 = n_maximal_with_index(lat, d, m2)?;
                    match (n1, n2) {
                        (Some(a), Some(b)) if a.n == b.n && a.n >= 1 && a.n <= k => {}
                        _ => return Ok(false),
                    }
                }
            }
            Ok(true)
        }
        _ => Err(GroupError::InvalidSpec(format!("unknown variant {variant}"))),
    }
}

/// The four equivalent conditions describing groups all of whose subgroups
/// are k-submodular.
pub fn thm32_characterization(s: &Section, variant: u8, k: u32) -> Result<bool> {
    let k = check_k(k)?;
    let lat = s.lattice();
    match variant {
        1 => in_class(s, SubmodularClass::Y, k),
        2 => {
            let reach = k_reach(lat, k);
            Ok(s.subgroups().all(|a| {
                let sub = s.subsection(a).unwrap();
                sub.maximal_subgroups().into_iter().all(|m| reach[m.index()].contains(a.index()))
            }))
        }
        3 => Ok(s.is_supersoluble() && s.chief_factors().iter().all(|f| automizer_ok(s, f.centralizer, k))),
        4 => Ok(is_k_lm_group(s, k)?.holds),
        _ => Err(GroupError::InvalidSpec(format!("unknown variant {variant}"))),
    }
}

/// Schmidt's description of maximal modular subgroups: `m` is normal, or
/// `T/Core_T(m)` is non-abelian of order `pq`.
pub fn schmidt_maximal_modular(s: &Section, m: SubgroupId) -> Result<bool> {
    if !s.maximal_subgroups().contains(&m) {
        return Err(GroupError::NotMaximal(m.index()));
    }
    if s.is_normal(m) {
        return Ok(true);
    }
    let q = s.quotient(s.core(m))?;
    let f = arith::factorize(q.order() as u64);
    let order_pq = f.iter().map(|&(_, e)| e).sum::<u32>() == 2;
    Ok(order_pq && !q.is_abelian())
}

/// The structural description of a k-submodular maximal subgroup: `m` is
/// normal, or `T/D` (with `D = Core_T(m)`) is non-nilpotent with a normal
/// Sylow `p`-subgroup of order `p` and a cyclic Sylow `q`-subgroup `m/D` of
/// order `q^n`, `n <= k`.
pub fn maximal_structure_condition(s: &Section, m: SubgroupId, k: u32) -> Result<bool> {
    if !s.maximal_subgroups().contains(&m) {
        return Err(GroupError::NotMaximal(m.index()));
    }
    if s.is_normal(m) {
        return Ok(true);
    }
    let lat = s.lattice();
    let d = s.core(m);
    let q = s.quotient(d)?;
    let primes = q.prime_divisors();
    if primes.len() != 2 || q.is_nilpotent() {
        return Ok(false);
    }
    let mq = lat.section(m, d)?;
    let Some((qq, n)) = arith::prime_power(mq.order() as u64) else {
        return Ok(false);
    };
    let Some(&p) = primes.iter().find(|&&p| p != qq) else {
        return Ok(false);
    };
    let sylow_p = q.sylow(p);
    Ok(n <= k
        && mq.is_cyclic()
        && q.is_normal(sylow_p)
        && lat.index(d, sylow_p) as u64 == p
        && q.order() as u64 == p * qq.pow(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::named_group;

    fn lattice(name: &str, args: &[u64]) -> SubgroupLattice {
        SubgroupLattice::new(Arc::new(named_group(name, args).unwrap()))
    }

    #[test]
    fn k_zero_is_rejected() {
        let l = lattice("cyclic", &[4]);
        assert!(is_k_submodular(&l.whole(), l.trivial(), 0).is_err());
        assert!(is_n_modularly_embedded(&l.whole(), l.trivial(), 0).is_err());
        assert!(is_k_lm_group(&l.whole(), 0).is_err());
    }

    #[test]
    fn modular_subgroups() {
        let s4 = lattice("sym", &[4]);
        let w = s4.whole();
        let s3 = s4.ids().find(|&i| s4.order(i) == 6).unwrap();
        assert!(!is_modular_subgroup(&w, s3).unwrap());
        for n in s4.normal_subgroups() {
            assert!(is_modular_subgroup(&w, n).unwrap());
        }
        let ab = lattice("elem_abelian", &[2, 3]);
        assert!(ab.ids().all(|h| is_modular_subgroup(&ab.whole(), h).unwrap()));
    }

    #[test]
    fn schmidt_examples() {
        let s3 = lattice("sym", &[3]);
        let z2 = s3.ids().find(|&i| s3.order(i) == 2).unwrap();
        assert!(schmidt_maximal_modular(&s3.whole(), z2).unwrap());
        let hol = lattice("holomorph_cyclic", &[5]);
        let y = hol.ids().find(|&i| hol.order(i) == 4).unwrap();
        assert!(!schmidt_maximal_modular(&hol.whole(), y).unwrap());
        assert!(schmidt_maximal_modular(&hol.whole(), hol.trivial()).is_err());
    }

    #[test]
    fn index_and_chain() {
        let s3 = lattice("sym", &[3]);
        let z2 = s3.ids().find(|&i| s3.order(i) == 2).unwrap();
        assert_eq!(
            n_maximal_with_index(&s3, z2, s3.top()).unwrap(),
            Some(PrimePowerIndex { n: 1, q: Some(3) })
        );
        assert_eq!(
            n_maximal_with_index(&s3, z2, z2).unwrap(),
            Some(PrimePowerIndex { n: 0, q: None })
        );
        assert!(n_maximal_with_index(&s3, s3.top(), z2).is_err());
    }

    #[test]
    fn abelian_groups_are_lm() {
        for (name, args) in [("cyclic", vec![12]), ("elem_abelian", vec![2, 3]), ("elem_abelian", vec![3, 2])] {
            let l = lattice(name, &args);
            assert!(is_k_lm_group(&l.whole(), 1).unwrap().holds, "{name}{args:?}");
            assert!(is_lm_group(&l.whole()).holds);
        }
    }

    #[test]
    fn witness_chain_is_consistent() {
        let hol = lattice("holomorph_cyclic", &[5]);
        let w = hol.whole();
        for h in hol.ids() {
            if let Some(c) = k_submodular_chain(&w, h, 2).unwrap() {
                let t = c.terms();
                if h == hol.top() {
                    assert!(c.is_empty());
                    continue;
                }
                assert_eq!(t[0], h);
                assert_eq!(*t.last().unwrap(), hol.top());
                for step in &c.steps {
                    assert_eq!(embedding(&hol, step.lower, step.upper), Some(step.kind));
                }
            }
        }
    }
}
