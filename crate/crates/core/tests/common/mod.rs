//! Slow reference implementations working directly on element sets. They
//! share nothing with the engine beyond the multiplication table.

#![allow(dead_code)]

use std::collections::BTreeSet;

use grouplab::FiniteGroup;

pub type Set = BTreeSet<usize>;

pub fn closure(g: &FiniteGroup, seed: impl IntoIterator<Item = usize>) -> Set {
    let mut set: Set = seed.into_iter().collect();
    set.insert(0);
    loop {
        let mut grown = set.clone();
        for &a in &set {
            for &b in &set {
                grown.insert(g.mul(a, b));
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

/// Every subgroup: closures of all subsets of size at most two, then joins
/// until nothing new appears.
pub fn all_subgroups(g: &FiniteGroup) -> BTreeSet<Set> {
    let n = g.order();
    let mut subs: BTreeSet<Set> = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            subs.insert(closure(g, [a, b]));
        }
    }
    loop {
        let list: Vec<Set> = subs.iter().cloned().collect();
        let mut added = false;
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                if x.is_subset(y) || y.is_subset(x) {
                    continue;
                }
                if subs.insert(closure(g, x.union(y).copied())) {
                    added = true;
                }
            }
        }
        if !added {
            return subs;
        }
    }
}

pub fn conjugate(g: &FiniteGroup, h: &Set, x: usize) -> Set {
    h.iter().map(|&y| g.mul(g.mul(g.inv(x), y), x)).collect()
}

/// `h` normal in `t` (both as element sets).
pub fn is_normal(g: &FiniteGroup, h: &Set, t: &Set) -> bool {
    t.iter().all(|&x| conjugate(g, h, x) == *h)
}

/// Intersection of the `t`-conjugates of `h`.
pub fn core(g: &FiniteGroup, h: &Set, t: &Set) -> Set {
    t.iter()
        .fold(h.clone(), |acc, &x| acc.intersection(&conjugate(g, h, x)).copied().collect())
}

/// Order of `x` modulo the normal subgroup `n`.
pub fn order_mod(g: &FiniteGroup, x: usize, n: &Set) -> usize {
    let mut y = x;
    let mut k = 1;
    while !n.contains(&y) {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// `t/n` is nilpotent iff elements of coprime orders commute.
pub fn is_nilpotent_mod(g: &FiniteGroup, t: &Set, n: &Set) -> bool {
    t.iter().all(|&x| {
        t.iter().all(|&y| {
            gcd(order_mod(g, x, n), order_mod(g, y, n)) != 1
                || n.contains(&g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)))
        })
    })
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `Some((q, n))` if `m = q^n` with `q` prime, `n >= 1`.
pub fn prime_power(m: usize) -> Option<(usize, u32)> {
    let q = (2..=m).find(|d| m % d == 0)?;
    let mut r = m;
    let mut n = 0;
    while r % q == 0 {
        r /= q;
        n += 1;
    }
    (r == 1).then_some((q, n))
}

/// The least `n` such that `h` is n-modularly embedded in `t`, with 0 for a
/// normal subgroup and `None` if there is no such `n`.
pub fn modular_embedding(g: &FiniteGroup, h: &Set, t: &Set) -> Option<u32> {
    if is_normal(g, h, t) {
        return Some(0);
    }
    let p = t.len() / h.len();
    if !is_prime(p) {
        return None;
    }
    let c = core(g, h, t);
    let (q, n) = prime_power(t.len() / c.len() / p)?;
    (q != p && !is_nilpotent_mod(g, t, &c)).then_some(n)
}

pub fn subgroups_between<'a>(subs: &'a [Set], lo: &'a Set, hi: &'a Set) -> impl Iterator<Item = &'a Set> {
    subs.iter().filter(move |s| lo.is_subset(s) && s.is_subset(hi))
}

/// Depth-first search for a chain from `h` to `t` of steps accepted by `step`.
pub fn chain_exists(subs: &[Set], h: &Set, t: &Set, step: &mut impl FnMut(&Set, &Set) -> bool) -> bool {
    if h == t {
        return true;
    }
    let next: Vec<Set> = subgroups_between(subs, h, t).filter(|s| *s != h).cloned().collect();
    next.iter().any(|s| step(h, s) && chain_exists(subs, s, t, step))
}

pub fn is_k_submodular(g: &FiniteGroup, subs: &[Set], h: &Set, t: &Set, k: u32) -> bool {
    chain_exists(subs, h, t, &mut |a, b| matches!(modular_embedding(g, a, b), Some(n) if n <= k))
}

/// Maximal subgroups of `t`.
pub fn maximal(subs: &[Set], t: &Set) -> Vec<Set> {
    let proper: Vec<&Set> = subs.iter().filter(|s| s.is_subset(t) && *s != t).collect();
    proper
        .iter()
        .filter(|m| !proper.iter().any(|x| m.is_subset(x) && *x != **m))
        .map(|m| (*m).clone())
        .collect()
}

/// Whether there is a chain of `n` maximal steps from `a` up to `b`.
pub fn n_maximal(subs: &[Set], a: &Set, b: &Set, n: u32) -> bool {
    if n == 0 {
        return a == b;
    }
    maximal(subs, b).iter().any(|m| a.is_subset(m) && n_maximal(subs, a, m, n - 1))
}

pub fn intersection(a: &Set, b: &Set) -> Set {
    a.intersection(b).copied().collect()
}
