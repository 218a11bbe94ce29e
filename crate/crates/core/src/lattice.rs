//! The complete subgroup lattice of a [`FiniteGroup`].
//!
//! Subgroups are enumerated by cyclic extension: start from every cyclic
//! subgroup and keep joining known subgroups with cyclic ones until nothing
//! new appears. Every subgroup is generated by its cyclic subgroups, so the
//! fixpoint is the whole lattice.
//!
//! Ids are assigned in (order, sorted member list) order. In particular the
//! trivial subgroup is id 0, the whole group is the last id, and an id is
//! never below a smaller one in the inclusion order.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::permgroup::FiniteGroup;
use crate::{GroupError, Result};

/// Lattice ordinal of a subgroup.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubgroupId(pub u32);

impl SubgroupId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subgroup stored as a sorted list of element ordinals of the parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: FixedBitSet,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    /// A generating set (not necessarily minimal).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
}

/// Lazily filled tables shared by the higher-level modules.
#[derive(Default)]
pub(crate) struct Memo {
    pub(crate) join_meet: OnceLock<(Vec<u32>, Vec<u32>)>,
    /// Per lower id: `(upper, n)` for every intrinsic embedding step, `n = 0`
    /// meaning a normal step.
    pub(crate) embeddings: OnceLock<Vec<Vec<(u32, u8)>>>,
    pub(crate) k_reach: [OnceLock<Vec<FixedBitSet>>; MAX_K as usize + 1],
    pub(crate) modular_reach: Mutex<HashMap<u32, Arc<Vec<FixedBitSet>>>>,
    pub(crate) residuals: Mutex<HashMap<(u32, u32, String), u32>>,
    pub(crate) class_reach: Mutex<HashMap<String, Arc<Vec<FixedBitSet>>>>,
}

/// Chains in a group of order at most the cap have fewer than 16 steps, so
/// any `k` above this behaves like `MAX_K`.
pub const MAX_K: u32 = 16;

pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    by_mask: HashMap<FixedBitSet, SubgroupId>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    covers_up: Vec<Vec<SubgroupId>>,
    covers_down: Vec<Vec<SubgroupId>>,
    conj_by_gen: Vec<Vec<u32>>,
    conj_class: Vec<u32>,
    class_count: usize,
    cyclic_of: Vec<SubgroupId>,
    normals: Vec<OnceLock<FixedBitSet>>,
    derived: Vec<OnceLock<SubgroupId>>,
    chains: Vec<OnceLock<Vec<u64>>>,
    pub(crate) memo: Memo,
}

impl fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group", &self.group.name())
            .field("subgroups", &self.subgroups.len())
            .finish()
    }
}

/// Enumerates every subgroup of `group`.
pub fn all_subgroups(group: Arc<FiniteGroup>) -> SubgroupLattice {
    SubgroupLattice::new(group)
}

impl SubgroupLattice {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let g = &*group;
        let n = g.order();

        // raw subgroups as (members, mask, generators)
        let mut raw: Vec<Subgroup> = Vec::new();
        let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut cyclic_raw = vec![usize::MAX; n];
        let mut cyclic_gens: Vec<usize> = Vec::new();
        for x in 0..n {
            if cyclic_raw[x] != usize::MAX {
                continue;
            }
            let mut members = vec![FiniteGroup::IDENTITY];
            let mut y = x;
            while y != FiniteGroup::IDENTITY {
                members.push(y);
                y = g.mul(y, x);
            }
            members.sort_unstable();
            let mut mask = g.empty_set();
            members.iter().for_each(|&m| mask.insert(m));
            let r = *seen.entry(mask.clone()).or_insert_with(|| {
                raw.push(Subgroup {
                    members: members.clone(),
                    mask,
                    generators: if x == FiniteGroup::IDENTITY { vec![] } else { vec![x] },
                });
                if x != FiniteGroup::IDENTITY {
                    cyclic_gens.push(x);
                }
                raw.len() - 1
            });
            cyclic_raw[x] = r;
        }

        let mut i = 0;
        while i < raw.len() {
            for &e in &cyclic_gens {
                if raw[i].mask.contains(e) {
                    continue;
                }
                let mut gens = raw[i].generators.clone();
                gens.push(e);
                let (members, mask) = g.extend(&raw[i].members, &raw[i].mask, &gens);
                if !seen.contains_key(&mask) {
                    seen.insert(mask.clone(), raw.len());
                    raw.push(Subgroup { members, mask, generators: gens });
                }
            }
            i += 1;
        }

        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| {
            let (a, b) = (&raw[a], &raw[b]);
            a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members))
        });
        let mut new_id = vec![0u32; raw.len()];
        for (id, &r) in order.iter().enumerate() {
            new_id[r] = id as u32;
        }
        let mut slots: Vec<Option<Subgroup>> = raw.into_iter().map(Some).collect();
        let subgroups: Vec<Subgroup> = order.iter().map(|&r| slots[r].take().unwrap()).collect();
        let cyclic_of = cyclic_raw.iter().map(|&r| SubgroupId(new_id[r])).collect();
        let by_mask: HashMap<FixedBitSet, SubgroupId> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.mask.clone(), SubgroupId(i as u32)))
            .collect();

        let len = subgroups.len();
        let mut below = vec![FixedBitSet::with_capacity(len); len];
        let mut above = vec![FixedBitSet::with_capacity(len); len];
        for b in 0..len {
            let ob = subgroups[b].order();
            for a in 0..=b {
                let sa = &subgroups[a];
                if ob % sa.order() == 0 && sa.generators.iter().all(|&x| subgroups[b].contains(x)) {
                    below[b].insert(a);
                    above[a].insert(b);
                }
            }
        }

        let mut covers_down = vec![Vec::new(); len];
        let mut covers_up = vec![Vec::new(); len];
        for b in 0..len {
            let mut maximal: Vec<usize> = Vec::new();
            for a in below[b].ones().rev().skip(1) {
                if maximal.iter().all(|&m| !below[m].contains(a)) {
                    maximal.push(a);
                }
            }
            maximal.sort_unstable();
            for &a in &maximal {
                covers_up[a].push(SubgroupId(b as u32));
            }
            covers_down[b] = maximal.into_iter().map(|a| SubgroupId(a as u32)).collect();
        }

        let mut lattice = SubgroupLattice {
            group,
            subgroups,
            by_mask,
            below,
            above,
            covers_up,
            covers_down,
            conj_by_gen: Vec::new(),
            conj_class: Vec::new(),
            class_count: 0,
            cyclic_of,
            normals: (0..len).map(|_| OnceLock::new()).collect(),
            derived: (0..len).map(|_| OnceLock::new()).collect(),
            chains: (0..len).map(|_| OnceLock::new()).collect(),
            memo: Memo::default(),
        };
        lattice.build_conjugation();
        lattice
    }

    fn build_conjugation(&mut self) {
        let g = &*self.group;
        let len = self.subgroups.len();
        let mut tables = Vec::new();
        for &s in g.generator_ordinals() {
            let row: Vec<u32> = self
                .subgroups
                .iter()
                .map(|h| {
                    let mut mask = g.empty_set();
                    for &x in &h.members {
                        mask.insert(g.conj(x, s));
                    }
                    self.by_mask[&mask].0
                })
                .collect();
            tables.push(row);
        }
        let mut class = vec![u32::MAX; len];
        let mut count = 0;
        for start in 0..len {
            if class[start] != u32::MAX {
                continue;
            }
            class[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(h) = queue.pop_front() {
                for row in &tables {
                    let k = row[h] as usize;
                    if class[k] == u32::MAX {
                        class[k] = count;
                        queue.push_back(k);
                    }
                }
            }
            count += 1;
        }
        self.conj_by_gen = tables;
        self.conj_class = class;
        self.class_count = count as usize;
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = SubgroupId> + ExactSizeIterator {
        (0..self.subgroups.len() as u32).map(SubgroupId)
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id.index()]
    }

    pub fn order(&self, id: SubgroupId) -> usize {
        self.subgroups[id.index()].order()
    }

    /// `|b : a|`, assuming `a <= b`.
    pub fn index(&self, a: SubgroupId, b: SubgroupId) -> usize {
        self.order(b) / self.order(a)
    }

    pub fn trivial(&self) -> SubgroupId {
        SubgroupId(0)
    }

    pub fn top(&self) -> SubgroupId {
        SubgroupId(self.subgroups.len() as u32 - 1)
    }

    pub fn lookup(&self, mask: &FixedBitSet) -> Option<SubgroupId> {
        self.by_mask.get(mask).copied()
    }

    /// Id of the subgroup whose member set is exactly `members`.
    pub fn lookup_members(&self, members: &[usize]) -> Option<SubgroupId> {
        let mut mask = self.group.empty_set();
        for &m in members {
            if m >= self.group.order() {
                return None;
            }
            mask.insert(m);
        }
        self.lookup(&mask)
    }

    /// The least subgroup containing `seed`.
    pub fn generated_subgroup(&self, seed: &[usize]) -> SubgroupId {
        let mut gens: Vec<usize> = seed.iter().copied().filter(|&x| x != FiniteGroup::IDENTITY).collect();
        gens.sort_unstable();
        gens.dedup();
        self.by_mask[&self.group.closure(&gens)]
    }

    /// The cyclic subgroup generated by an element.
    pub fn cyclic_of(&self, x: usize) -> SubgroupId {
        self.cyclic_of[x]
    }

    /// Generators of a subgroup written as 1-based cycle strings.
    pub fn generator_cycles(&self, id: SubgroupId) -> Vec<String> {
        self.subgroup(id)
            .generators
            .iter()
            .map(|&x| self.group.element(x).to_cycles())
            .collect()
    }

    /// Whether `a <= b`.
    #[inline]
    pub fn is_subgroup_of(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.below[b.index()].contains(a.index())
    }

    /// Ids of all subgroups of `b`, including `b`.
    pub fn below(&self, b: SubgroupId) -> &FixedBitSet {
        &self.below[b.index()]
    }

    /// Ids of all subgroups containing `a`, including `a`.
    pub fn above(&self, a: SubgroupId) -> &FixedBitSet {
        &self.above[a.index()]
    }

    /// Ids of subgroups `x` with `a <= x <= b`.
    pub fn interval(&self, a: SubgroupId, b: SubgroupId) -> impl Iterator<Item = SubgroupId> + '_ {
        self.above[a.index()]
            .intersection(&self.below[b.index()])
            .map(|i| SubgroupId(i as u32))
    }

    /// Maximal subgroups of `b`, ascending by id.
    pub fn maximal_subgroups(&self, b: SubgroupId) -> &[SubgroupId] {
        &self.covers_down[b.index()]
    }

    /// Minimal proper oversubgroups of `a`.
    pub fn covers(&self, a: SubgroupId) -> &[SubgroupId] {
        &self.covers_up[a.index()]
    }

    pub fn join(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let i = self.above[a.index()]
            .intersection(&self.above[b.index()])
            .next()
            .expect("the whole group is an upper bound");
        SubgroupId(i as u32)
    }

    pub fn meet(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let i = last_common(&self.below[a.index()], &self.below[b.index()])
            .expect("the trivial subgroup is a lower bound");
        SubgroupId(i as u32)
    }

    /// Alias of [`meet`](Self::meet).
    pub fn intersect(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.meet(a, b)
    }

    /// Full join and meet tables, built once.
    pub(crate) fn join_meet_tables(&self) -> &(Vec<u32>, Vec<u32>) {
        self.memo.join_meet.get_or_init(|| {
            let len = self.len();
            let mut join = vec![0u32; len * len];
            let mut meet = vec![0u32; len * len];
            for a in self.ids() {
                for b in self.ids().skip(a.index()) {
                    let j = self.join(a, b).0;
                    let m = self.meet(a, b).0;
                    join[a.index() * len + b.index()] = j;
                    join[b.index() * len + a.index()] = j;
                    meet[a.index() * len + b.index()] = m;
                    meet[b.index() * len + a.index()] = m;
                }
            }
            (join, meet)
        })
    }

    /// Whether `a` is a normal subgroup of `b`. False when `a` is not inside `b`.
    pub fn is_normal_in(&self, a: SubgroupId, b: SubgroupId) -> bool {
        if !self.is_subgroup_of(a, b) {
            return false;
        }
        let g = &*self.group;
        let sa = self.subgroup(a);
        self.subgroup(b)
            .generators
            .iter()
            .all(|&s| sa.generators.iter().all(|&h| sa.contains(g.conj(h, s))))
    }

    pub fn is_normal(&self, a: SubgroupId) -> bool {
        self.conj_by_gen.iter().all(|row| row[a.index()] == a.0)
    }

    /// Ids of the normal subgroups of `b`.
    pub fn normal_subgroups_of(&self, b: SubgroupId) -> &FixedBitSet {
        self.normals[b.index()].get_or_init(|| {
            let mut set = FixedBitSet::with_capacity(self.len());
            for a in self.below[b.index()].ones() {
                if self.is_normal_in(SubgroupId(a as u32), b) {
                    set.insert(a);
                }
            }
            set
        })
    }

    /// Normal subgroups of the whole group, ascending by id.
    pub fn normal_subgroups(&self) -> Vec<SubgroupId> {
        self.normal_subgroups_of(self.top())
            .ones()
            .map(|i| SubgroupId(i as u32))
            .collect()
    }

    /// `Core_G(h)`, the largest normal subgroup of the whole group inside `h`.
    pub fn core(&self, h: SubgroupId) -> SubgroupId {
        self.core_in(h, self.top())
    }

    /// `Core_b(a)` for `a <= b`.
    pub fn core_in(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let i = last_common(self.normal_subgroups_of(b), &self.below[a.index()])
            .expect("the trivial subgroup is normal");
        SubgroupId(i as u32)
    }

    pub fn normalizer(&self, h: SubgroupId) -> SubgroupId {
        let g = &*self.group;
        let sh = self.subgroup(h);
        let mut mask = g.empty_set();
        for x in 0..g.order() {
            if sh.generators.iter().all(|&y| sh.contains(g.conj(y, x))) {
                mask.insert(x);
            }
        }
        self.by_mask[&mask]
    }

    /// The subgroup of elements commuting with every element of `set`.
    pub fn centralizer_of_set(&self, set: &[usize]) -> SubgroupId {
        let g = &*self.group;
        let mut mask = g.empty_set();
        for x in 0..g.order() {
            if set.iter().all(|&s| g.mul(x, s) == g.mul(s, x)) {
                mask.insert(x);
            }
        }
        self.by_mask[&mask]
    }

    /// `h^x`.
    pub fn conjugate_by(&self, h: SubgroupId, x: usize) -> SubgroupId {
        let g = &*self.group;
        let mut mask = g.empty_set();
        for &y in self.subgroup(h).members() {
            mask.insert(g.conj(y, x));
        }
        self.by_mask[&mask]
    }

    /// All conjugates of `h` in the whole group, ascending by id.
    pub fn conjugates(&self, h: SubgroupId) -> Vec<SubgroupId> {
        let c = self.conj_class[h.index()];
        self.ids().filter(|i| self.conj_class[i.index()] == c).collect()
    }

    pub fn conjugacy_class(&self, h: SubgroupId) -> u32 {
        self.conj_class[h.index()]
    }

    pub fn conjugacy_class_count(&self) -> usize {
        self.class_count
    }

    /// Bit `n` is set iff there is a chain `a = c_0 < ... < c_n = b` with each
    /// term maximal in the next. Zero when `a` is not below `b`.
    pub fn chain_lengths(&self, a: SubgroupId, b: SubgroupId) -> u64 {
        let table = self.chains[b.index()].get_or_init(|| {
            let mut lens = vec![0u64; self.len()];
            lens[b.index()] = 1;
            for x in self.below[b.index()].ones().rev().skip(1) {
                let mut m = 0;
                for &c in &self.covers_up[x] {
                    m |= lens[c.index()] << 1;
                }
                lens[x] = m;
            }
            lens
        });
        table[a.index()]
    }

    /// Whether `a` is an `n`-maximal subgroup of `b`.
    pub fn n_maximal_chain_exists(&self, a: SubgroupId, b: SubgroupId, n: u32) -> Result<bool> {
        if !self.is_subgroup_of(a, b) {
            return Err(GroupError::NotContained {
                lower: a.index(),
                upper: b.index(),
            });
        }
        Ok(n < 64 && self.chain_lengths(a, b) >> n & 1 == 1)
    }

    /// Intersection of the maximal subgroups of `b` (`b` itself when trivial).
    pub fn frattini_of(&self, b: SubgroupId) -> SubgroupId {
        self.covers_down[b.index()]
            .iter()
            .copied()
            .reduce(|x, y| self.meet(x, y))
            .unwrap_or(b)
    }

    pub fn frattini(&self) -> SubgroupId {
        self.frattini_of(self.top())
    }

    /// The derived subgroup `b'`, as the normal closure in `b` of the
    /// commutators of its generators.
    pub fn derived(&self, b: SubgroupId) -> SubgroupId {
        *self.derived[b.index()].get_or_init(|| {
            let g = &*self.group;
            let gens = &self.subgroup(b).generators;
            let mut seeds = Vec::new();
            for (i, &x) in gens.iter().enumerate() {
                for &y in &gens[i + 1..] {
                    let c = g.commutator(x, y);
                    if c != FiniteGroup::IDENTITY {
                        seeds.push(c);
                    }
                }
            }
            self.by_mask[&self.normal_closure(&seeds, gens)]
        })
    }

    /// Mask of the normal closure of `seeds` under conjugation by `by`.
    pub(crate) fn normal_closure(&self, seeds: &[usize], by: &[usize]) -> FixedBitSet {
        let g = &*self.group;
        let mut gens: Vec<usize> = seeds.to_vec();
        let mut mask = g.closure(&gens);
        let mut i = 0;
        while i < gens.len() {
            for &s in by {
                let c = g.conj(gens[i], s);
                if !mask.contains(c) {
                    gens.push(c);
                    mask = g.closure(&gens);
                }
            }
            i += 1;
        }
        mask
    }

    /// Graphviz rendering of the Hasse diagram. Nodes are labelled by order;
    /// `edge_note` may attach a label to the cover `lower < upper`.
    pub fn to_dot(&self, mut edge_note: impl FnMut(SubgroupId, SubgroupId) -> Option<String>) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n");
        for id in self.ids() {
            let shape = if self.is_normal(id) { ", shape=doublecircle" } else { "" };
            out.push_str(&format!(
                "  s{} [label=\"{}\", tooltip=\"{}\"{}];\n",
                id.0,
                self.order(id),
                self.generator_cycles(id).join(", "),
                shape
            ));
        }
        for a in self.ids() {
            for &b in self.covers(a) {
                match edge_note(a, b) {
                    Some(note) => out.push_str(&format!("  s{} -> s{} [label=\"{}\"];\n", a.0, b.0, note)),
                    None => out.push_str(&format!("  s{} -> s{};\n", a.0, b.0)),
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Largest index set in both bitsets.
fn last_common(x: &FixedBitSet, y: &FixedBitSet) -> Option<usize> {
    let (xs, ys) = (x.as_slice(), y.as_slice());
    let bits = usize::BITS as usize;
    (0..xs.len().min(ys.len())).rev().find_map(|i| {
        let w = xs[i] & ys[i];
        (w != 0).then(|| i * bits + (bits - 1 - w.leading_zeros() as usize))
    })
}
