use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use grouplab::permgroup::{quotient, Epimorphism};
use grouplab::{FiniteGroup, GroupError, GroupSpec, SubgroupId, SubgroupLattice};
use serde::Serialize;

use crate::Result;

/// Which families go into the default corpus.
#[derive(Clone, Debug, Serialize)]
pub struct Families {
    pub cyclic: bool,
    pub abelian: bool,
    pub dihedral: bool,
    pub dicyclic: bool,
    pub symmetric: bool,
    pub holomorphs: bool,
    pub frobenius: bool,
    pub products: bool,
    pub symmetric_subgroups: bool,
}

impl Default for Families {
    fn default() -> Self {
        Families {
            cyclic: true,
            abelian: true,
            dihedral: true,
            dicyclic: true,
            symmetric: true,
            holomorphs: true,
            frobenius: true,
            products: true,
            symmetric_subgroups: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusConfig {
    pub order_cap: usize,
    pub families: Families,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { order_cap: 200, families: Families::default() }
    }
}

impl CorpusConfig {
    pub fn with_cap(order_cap: usize) -> Self {
        CorpusConfig { order_cap, ..Self::default() }
    }
}

/// Cheap isomorphism invariants used to drop repeated groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    pub subgroups: usize,
    pub conjugacy_classes: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tags {
    pub order: usize,
    pub abelian: bool,
    pub nilpotent: bool,
    pub supersoluble: bool,
    pub soluble: bool,
}

/// A concrete quotient `G/N` built by the coset action, with its lattice.
pub struct QuotientView {
    pub map: Epimorphism,
    pub lattice: SubgroupLattice,
}

impl QuotientView {
    /// The image `HN/N` of a subgroup of the source group.
    pub fn image(&self, source: &SubgroupLattice, h: SubgroupId) -> SubgroupId {
        let set = self.map.image_of_set(source.subgroup(h).mask());
        self.lattice.lookup(&set).expect("images of subgroups are subgroups")
    }
}

pub struct CorpusEntry {
    pub name: String,
    pub spec: GroupSpec,
    /// Later candidates with the same fingerprint.
    pub aliases: Vec<String>,
    group: Arc<FiniteGroup>,
    lattice: OnceLock<SubgroupLattice>,
    quotients: Mutex<HashMap<SubgroupId, Arc<QuotientView>>>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, spec: GroupSpec, group: FiniteGroup) -> Self {
        CorpusEntry {
            name: name.into(),
            spec,
            aliases: Vec::new(),
            group: Arc::new(group),
            lattice: OnceLock::new(),
            quotients: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_spec(spec: GroupSpec, cap: usize) -> Result<Self> {
        let group = spec.build(cap)?;
        Ok(Self::new(group.name().to_string(), spec, group))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice.get_or_init(|| SubgroupLattice::new(self.group.clone()))
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            order: self.group.order(),
            abelian: self.group.is_abelian(),
            exponent: self.group.exponent(),
            subgroups: self.lattice().len(),
            conjugacy_classes: self.group.conjugacy_class_count(),
        }
    }

    pub fn tags(&self) -> Tags {
        let w = self.lattice().whole();
        Tags {
            order: self.order(),
            abelian: w.is_abelian(),
            nilpotent: w.is_nilpotent(),
            supersoluble: w.is_supersoluble(),
            soluble: w.is_soluble(),
        }
    }

    /// The quotient by a normal subgroup, built once and checked to be a
    /// homomorphism with kernel `n`.
    pub fn quotient(&self, n: SubgroupId) -> Result<Arc<QuotientView>> {
        if let Some(q) = self.quotients.lock().unwrap().get(&n) {
            return Ok(q.clone());
        }
        let lat = self.lattice();
        let mask = lat.subgroup(n).mask();
        let map = quotient(&self.group, mask)?;
        if !map.is_homomorphism() || &map.kernel() != mask {
            return Err(GroupError::Inconsistency(format!("quotient of {} by {n} is unsound", self.name)).into());
        }
        let view = Arc::new(QuotientView { lattice: SubgroupLattice::new(map.target().clone()), map });
        self.quotients.lock().unwrap().entry(n).or_insert(view.clone());
        Ok(view)
    }

    /// Number of concrete quotients built and verified so far.
    pub fn quotients_verified(&self) -> usize {
        self.quotients.lock().unwrap().len()
    }

    /// Generators of a subgroup in cycle notation.
    pub fn describe(&self, h: SubgroupId) -> SubgroupRef {
        let lat = self.lattice();
        SubgroupRef { id: h, order: lat.order(h), generators: lat.generator_cycles(h) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupRef {
    pub id: SubgroupId,
    pub order: usize,
    pub generators: Vec<String>,
}

pub struct Corpus {
    pub config: CorpusConfig,
    pub entries: Vec<CorpusEntry>,
    /// `(kept, dropped)` name pairs that shared a fingerprint.
    pub collisions: Vec<(String, String)>,
}

impl Corpus {
    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name || e.aliases.iter().any(|a| a == name))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A corpus of hand-picked groups, without fingerprint dedup.
    pub fn from_specs(specs: &[GroupSpec], cap: usize) -> Result<Self> {
        let entries = specs.iter().map(|s| CorpusEntry::from_spec(s.clone(), cap)).collect::<Result<_>>()?;
        Ok(Corpus { config: CorpusConfig::with_cap(cap), entries, collisions: Vec::new() })
    }
}

fn named(name: &str, args: &[u64]) -> GroupSpec {
    GroupSpec::named(name, args)
}

fn named_specs(f: &Families) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    if f.cyclic {
        out.extend((1..=24).map(|n| named("cyclic", &[n])));
    }
    if f.abelian {
        for (p, r) in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2)] {
            out.push(named("elem_abelian", &[p, r]));
        }
    }
    if f.dihedral {
        out.extend((2..=20).map(|n| named("dihedral", &[n])));
    }
    if f.dicyclic {
        out.extend((2..=8).map(|n| named("dicyclic", &[n])));
    }
    if f.symmetric {
        out.extend([named("sym", &[3]), named("sym", &[4]), named("sym", &[5]), named("alt", &[4]), named("alt", &[5])]);
    }
    if f.holomorphs {
        out.extend([5, 7, 9].map(|m| named("holomorph_cyclic", &[m])));
    }
    if f.frobenius {
        for (p, q, n) in [(5, 2, 2), (7, 2, 1), (7, 3, 1), (11, 5, 1), (13, 2, 2), (13, 3, 1)] {
            out.push(named("frobenius_metacyclic", &[p, q, n]));
        }
    }
    out
}

fn product_specs() -> Vec<GroupSpec> {
    let z = |n| named("cyclic", &[n]);
    let pairs = [
        (z(2), named("sym", &[3])),
        (z(3), named("sym", &[3])),
        (named("sym", &[3]), named("sym", &[3])),
        (z(2), named("alt", &[4])),
        (z(3), named("alt", &[4])),
        (z(2), named("dihedral", &[4])),
        (z(2), named("dicyclic", &[2])),
        (z(4), named("sym", &[3])),
        (z(2), named("holomorph_cyclic", &[5])),
        (named("holomorph_cyclic", &[5]), z(3)),
        (z(2), named("frobenius_metacyclic", &[7, 3, 1])),
        (z(3), named("frobenius_metacyclic", &[7, 3, 1])),
        (named("sym", &[3]), named("dihedral", &[5])),
        (z(3), named("dihedral", &[5])),
        (z(2), named("sym", &[4])),
        (named("sym", &[3]), named("frobenius_metacyclic", &[7, 3, 1])),
        (z(5), named("holomorph_cyclic", &[5])),
    ];
    pairs.into_iter().map(|(a, b)| GroupSpec::Direct { parts: vec![a, b] }).collect()
}

/// One entry per conjugacy class of subgroups of `sym(n)`.
fn symmetric_subgroup_specs(n: u64) -> Result<Vec<GroupSpec>> {
    let lat = SubgroupLattice::new(Arc::new(grouplab::permgroup::named_group("sym", &[n])?));
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for h in lat.ids() {
        if seen.insert(lat.conjugacy_class(h)) {
            out.push(GroupSpec::Generators { degree: n as usize, cycles: lat.generator_cycles(h) });
        }
    }
    Ok(out)
}

fn label(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::Named { name, args } => {
            let args: Vec<String> = args.iter().map(u64::to_string).collect();
            format!("{name}({})", args.join(","))
        }
        GroupSpec::Direct { parts } => parts.iter().map(label).collect::<Vec<_>>().join(" x "),
        GroupSpec::Generators { degree, cycles } => format!("sym({degree})<{}>", cycles.join(", ")),
    }
}

/// Builds the default corpus, dropping candidates whose fingerprint was
/// already seen. Candidates over the cap are skipped.
pub fn build_corpus(config: &CorpusConfig) -> Result<Corpus> {
    let f = &config.families;
    let mut specs = named_specs(f);
    if f.products {
        specs.extend(product_specs());
    }
    if f.symmetric_subgroups {
        specs.extend(symmetric_subgroup_specs(4)?);
        specs.extend(symmetric_subgroup_specs(5)?);
    }
    let mut entries: Vec<CorpusEntry> = Vec::new();
    let mut index: BTreeMap<Fingerprint, usize> = BTreeMap::new();
    let mut collisions = Vec::new();
    for spec in specs {
        let group = match spec.build(config.order_cap) {
            Ok(g) => g,
            Err(GroupError::OrderCapExceeded { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        let entry = CorpusEntry::new(label(&spec), spec, group);
        let fp = entry.fingerprint();
        match index.get(&fp) {
            Some(&i) => {
                collisions.push((entries[i].name.clone(), entry.name.clone()));
                entries[i].aliases.push(entry.name);
            }
            None => {
                index.insert(fp, entries.len());
                entries.push(entry);
            }
        }
    }
    Ok(Corpus { config: config.clone(), entries, collisions })
}
