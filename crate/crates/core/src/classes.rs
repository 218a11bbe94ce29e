//! Group classes, formation residuals and subnormality notions.
//!
//! Class membership is evaluated on [`Section`]s. For a formation `F` the
//! residual of `B/N` is `B^F N / N`, so whether a step `A < B` is
//! `F`-subnormal does not depend on the section either, and subnormality
//! again becomes reachability over the lattice.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::lattice::{SubgroupId, SubgroupLattice};
use crate::structure::Section;
use crate::submodular::{self, closure_upwards, SubmodularClass};
use crate::{GroupError, Result};

/// Built-in group classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassId {
    Nilpotent,
    Supersoluble,
    Soluble,
    Abelian,
    /// Abelian of exponent dividing `m`.
    AbelianExponent { m: u64 },
    /// Abelian of exponent dividing `m` and free of `(k+1)`-th prime powers.
    AbelianExponentK { m: u64, k: u32 },
    /// Abelian Sylow subgroups, exponent free of `(k+1)`-th prime powers.
    SylowAbelianK { k: u32 },
    /// Supersoluble, exponent free of `(k+1)`-th prime powers.
    SupersolubleK { k: u32 },
    /// Cyclic and in `AbelianExponentK { m, k }`.
    CyclicAbelianExponentK { m: u64, k: u32 },
    /// Every Sylow subgroup cyclic and in `AbelianExponentK { m, k }`.
    SylowCyclicAbelianExponentK { m: u64, k: u32 },
    /// Soluble with every Sylow subgroup abelian of exponent dividing `m`.
    SolubleSylowAbelianExponent { m: u64 },
    Submodular { class: SubmodularClass, k: u32 },
    /// Groups whose Sylow subgroups are all subnormal for the inner class.
    Weak(Box<ClassId>),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Nilpotent => write!(f, "N"),
            ClassId::Supersoluble => write!(f, "U"),
            ClassId::Soluble => write!(f, "S"),
            ClassId::Abelian => write!(f, "Ab"),
            ClassId::AbelianExponent { m } => write!(f, "A({m})"),
            ClassId::AbelianExponentK { m, k } => write!(f, "A({m})_{k}"),
            ClassId::SylowAbelianK { k } => write!(f, "A_{k}"),
            ClassId::SupersolubleK { k } => write!(f, "U_{k}"),
            ClassId::CyclicAbelianExponentK { m, k } => write!(f, "cyclic_A({m})_{k}"),
            ClassId::SylowCyclicAbelianExponentK { m, k } => write!(f, "sylA({m})_{k}_cyclic"),
            ClassId::SolubleSylowAbelianExponent { m } => write!(f, "S_sylA({m})"),
            ClassId::Submodular { class, k } => write!(f, "{}({k})", class.name()),
            ClassId::Weak(inner) => write!(f, "w{inner}"),
        }
    }
}

/// Names accepted by [`oracle`], with the parameters each one reads.
pub const CLASS_NAMES: &[(&str, &str)] = &[
    ("N", ""),
    ("U", ""),
    ("S", ""),
    ("Ab", ""),
    ("A(m)", "m"),
    ("A_exp_k(m)", "m, k"),
    ("A_k", "k"),
    ("U_k", "k"),
    ("cyclic_A(m)_k", "m, k"),
    ("sylA(m)_k_cyclic", "m, k"),
    ("X", "k"),
    ("Y", "k"),
    ("K", "k"),
    ("F", "k"),
    ("wU", ""),
    ("wU_k", "k"),
    ("wK", "k"),
];

/// Optional numeric parameters of a class name.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClassParams {
    pub m: Option<u64>,
    pub k: Option<u32>,
}

/// Builds a class from its name. An `m` written inline, as in `A(4)`, takes
/// precedence over `params.m`.
pub fn oracle(name: &str, params: ClassParams) -> Result<ClassOracle> {
    let unknown = || GroupError::UnknownClass(name.to_string());
    let (base, inline_m) = match (name.find('('), name.find(')')) {
        (Some(l), Some(r)) if l < r && name[l + 1..r].trim() != "m" => {
            let m = name[l + 1..r].trim().parse::<u64>().map_err(|_| unknown())?;
            (format!("{}(m){}", &name[..l], &name[r + 1..]), Some(m))
        }
        _ => (name.to_string(), None),
    };
    let m = || inline_m.or(params.m).ok_or_else(|| GroupError::InvalidSpec(format!("class {name} needs m")));
    let k = || match params.k {
        Some(0) => Err(GroupError::NonPositiveParameter(0)),
        Some(k) => Ok(k),
        None => Err(GroupError::InvalidSpec(format!("class {name} needs k"))),
    };
    let sub = |class| Ok::<_, GroupError>(ClassId::Submodular { class, k: k()? });
    let id = match base.as_str() {
        "N" => ClassId::Nilpotent,
        "U" => ClassId::Supersoluble,
        "S" => ClassId::Soluble,
        "Ab" => ClassId::Abelian,
        "A(m)" => ClassId::AbelianExponent { m: m()? },
        "A_exp_k(m)" | "A(m)_k" => ClassId::AbelianExponentK { m: m()?, k: k()? },
        "A_k" => ClassId::SylowAbelianK { k: k()? },
        "U_k" => ClassId::SupersolubleK { k: k()? },
        "cyclic_A(m)_k" | "h" => ClassId::CyclicAbelianExponentK { m: m()?, k: k()? },
        "sylA(m)_k_cyclic" | "f" => ClassId::SylowCyclicAbelianExponentK { m: m()?, k: k()? },
        "X" => sub(SubmodularClass::X)?,
        "Y" => sub(SubmodularClass::Y)?,
        "K" => sub(SubmodularClass::K)?,
        "F" => sub(SubmodularClass::F)?,
        "wU" => ClassId::Weak(Box::new(ClassId::Supersoluble)),
        "wU_k" => ClassId::Weak(Box::new(ClassId::SupersolubleK { k: k()? })),
        "wK" => ClassId::Weak(Box::new(ClassId::Submodular { class: SubmodularClass::K, k: k()? })),
        _ => return Err(unknown()),
    };
    Ok(ClassOracle::new(id))
}

/// A membership predicate together with its closure metadata.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassOracle {
    id: ClassId,
}

impl ClassOracle {
    pub fn new(id: ClassId) -> Self {
        ClassOracle { id }
    }

    pub fn id(&self) -> &ClassId {
        &self.id
    }

    pub fn name(&self) -> String {
        self.id.to_string()
    }

    /// Whether the class is known to be closed under quotients and
    /// subdirect products.
    pub fn is_formation(&self) -> bool {
        match &self.id {
            ClassId::CyclicAbelianExponentK { .. } | ClassId::SylowCyclicAbelianExponentK { .. } => false,
            ClassId::Submodular { class, .. } => *class != SubmodularClass::X,
            ClassId::Weak(inner) => {
                let inner = ClassOracle::new((**inner).clone());
                inner.is_formation() && inner.is_hereditary()
            }
            _ => true,
        }
    }

    pub fn is_hereditary(&self) -> bool {
        match &self.id {
            ClassId::Submodular { class, .. } => *class != SubmodularClass::X,
            ClassId::Weak(inner) => ClassOracle::new((**inner).clone()).is_hereditary(),
            _ => true,
        }
    }

    pub fn contains(&self, s: &Section) -> bool {
        let exp_ok = |k: u32| !arith::has_prime_power_divisor_above(s.exponent(), k);
        match &self.id {
            ClassId::Nilpotent => s.is_nilpotent(),
            ClassId::Supersoluble => s.is_supersoluble(),
            ClassId::Soluble => s.is_soluble(),
            ClassId::Abelian => s.is_abelian(),
            ClassId::AbelianExponent { m } => s.is_abelian() && m % s.exponent() == 0,
            ClassId::AbelianExponentK { m, k } => s.is_abelian() && m % s.exponent() == 0 && exp_ok(*k),
            ClassId::SylowAbelianK { k } => sylow_sections(s).iter().all(|p| p.is_abelian()) && exp_ok(*k),
            ClassId::SupersolubleK { k } => s.is_supersoluble() && exp_ok(*k),
            ClassId::CyclicAbelianExponentK { m, k } => s.is_cyclic() && m % s.exponent() == 0 && exp_ok(*k),
            ClassId::SylowCyclicAbelianExponentK { m, k } => sylow_sections(s).iter().all(|p| {
                p.is_cyclic() && m % p.exponent() == 0 && !arith::has_prime_power_divisor_above(p.exponent(), *k)
            }),
            ClassId::SolubleSylowAbelianExponent { m } => {
                s.is_soluble() && sylow_sections(s).iter().all(|p| p.is_abelian() && m % p.exponent() == 0)
            }
            ClassId::Submodular { class, k } => submodular::in_class(s, *class, *k).expect("k >= 1"),
            ClassId::Weak(inner) => in_weak(s, &ClassOracle::new((**inner).clone())).expect("inner class is a formation"),
        }
    }
}

fn sylow_sections<'a>(s: &Section<'a>) -> Vec<Section<'a>> {
    s.all_sylow().into_iter().map(|(_, p)| s.subsection(p).unwrap()).collect()
}

fn require_formation(f: &ClassOracle) -> Result<()> {
    if !f.is_formation() {
        return Err(GroupError::NotAFormation(f.name()));
    }
    Ok(())
}

/// The `F`-residual of a section: the least normal `R` with `T/R` in `F`.
pub fn residual(s: &Section, f: &ClassOracle) -> Result<SubgroupId> {
    require_formation(f)?;
    let lat = s.lattice();
    let key = (s.top().0, s.bottom().0, f.name());
    if let Some(&r) = lat.memo.residuals.lock().unwrap().get(&key) {
        return Ok(SubgroupId(r));
    }
    let mut r = s.top();
    for n in s.normal_subgroups() {
        if f.contains(&s.quotient(n)?) {
            r = lat.meet(r, n);
        }
    }
    if !f.contains(&s.quotient(r)?) {
        return Err(GroupError::Inconsistency(format!(
            "{} is not closed under subdirect products on {s:?}",
            f.name()
        )));
    }
    lat.memo.residuals.lock().unwrap().insert(key, r.0);
    Ok(r)
}

fn reach_by(lat: &SubgroupLattice, key: String, step: impl Fn(SubgroupId, SubgroupId) -> bool) -> Arc<Vec<FixedBitSet>> {
    if let Some(r) = lat.memo.class_reach.lock().unwrap().get(&key) {
        return r.clone();
    }
    let reach = Arc::new(closure_upwards(lat.len(), |a| {
        let a = SubgroupId(a as u32);
        lat.above(a)
            .ones()
            .skip(1)
            .map(|b| SubgroupId(b as u32))
            .filter(|&b| step(a, b))
            .map(|b| b.index())
            .collect()
    }));
    lat.memo.class_reach.lock().unwrap().insert(key, reach.clone());
    reach
}

fn reaches(s: &Section, h: SubgroupId, reach: &[FixedBitSet]) -> Result<bool> {
    if !s.contains(h) {
        return Err(GroupError::NotContained { lower: h.index(), upper: s.top().index() });
    }
    Ok(reach[h.index()].contains(s.top().index()))
}

fn prime_index(lat: &SubgroupLattice, a: SubgroupId, b: SubgroupId) -> bool {
    arith::is_prime(lat.index(a, b) as u64)
}

/// Joined to the top by steps of prime index.
pub fn is_p_subnormal(s: &Section, h: SubgroupId) -> Result<bool> {
    let lat = s.lattice();
    let reach = reach_by(lat, "P".into(), |a, b| prime_index(lat, a, b));
    reaches(s, h, &reach)
}

/// Joined to the top by steps that are normal or of prime index.
pub fn is_kp_subnormal(s: &Section, h: SubgroupId) -> Result<bool> {
    let lat = s.lattice();
    let reach = reach_by(lat, "KP".into(), |a, b| prime_index(lat, a, b) || lat.is_normal_in(a, b));
    reaches(s, h, &reach)
}

fn f_step(lat: &SubgroupLattice, f: &ClassOracle, a: SubgroupId, b: SubgroupId) -> bool {
    let r = residual(&lat.subgroup_section(b), f).expect("formation residual");
    lat.is_subgroup_of(r, a)
}

/// Joined to the top by steps `A < B` with `B^F <= A`.
pub fn is_f_subnormal(s: &Section, h: SubgroupId, f: &ClassOracle) -> Result<bool> {
    require_formation(f)?;
    let lat = s.lattice();
    let reach = reach_by(lat, format!("F:{}", f.name()), |a, b| f_step(lat, f, a, b));
    reaches(s, h, &reach)
}

/// As [`is_f_subnormal`], also allowing normal steps.
pub fn is_kf_subnormal(s: &Section, h: SubgroupId, f: &ClassOracle) -> Result<bool> {
    require_formation(f)?;
    let lat = s.lattice();
    let reach = reach_by(lat, format!("KF:{}", f.name()), |a, b| {
        lat.is_normal_in(a, b) || f_step(lat, f, a, b)
    });
    reaches(s, h, &reach)
}

/// Membership in `wF`: every Sylow subgroup is `F`-subnormal. Every built-in
/// class contains the cyclic groups of prime order, so the condition on
/// `π(G)` always holds.
pub fn in_weak(s: &Section, f: &ClassOracle) -> Result<bool> {
    for (_, p) in s.all_sylow() {
        if !is_f_subnormal(s, p, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Alias of [`in_weak`].
pub fn in_wf(s: &Section, f: &ClassOracle) -> Result<bool> {
    in_weak(s, f)
}

/// A map from primes to classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormationFunction {
    /// `p ↦ cyclic groups in A(p-1)_k`.
    H { k: u32 },
    /// `p ↦ groups whose Sylow subgroups are cyclic and in A(p-1)_k`.
    F { k: u32 },
    /// `p ↦ A(p-1)`, which defines the supersoluble groups.
    Supersoluble,
    /// `p ↦ soluble groups with Sylow subgroups in A(p-1)`.
    WeakSupersoluble,
}

impl FormationFunction {
    pub fn name(&self) -> String {
        match self {
            FormationFunction::H { k } => format!("h_{k}"),
            FormationFunction::F { k } => format!("f_{k}"),
            FormationFunction::Supersoluble => "A(p-1)".into(),
            FormationFunction::WeakSupersoluble => "S_sylA(p-1)".into(),
        }
    }

    pub fn at(&self, p: u64) -> ClassOracle {
        let m = p - 1;
        ClassOracle::new(match *self {
            FormationFunction::H { k } => ClassId::CyclicAbelianExponentK { m, k },
            FormationFunction::F { k } => ClassId::SylowCyclicAbelianExponentK { m, k },
            FormationFunction::Supersoluble => ClassId::AbelianExponent { m },
            FormationFunction::WeakSupersoluble => ClassId::SolubleSylowAbelianExponent { m },
        })
    }
}

/// Membership in `LF(f)`: `T/C_T(H/K)` lies in `f(p)` for every chief factor
/// `H/K` and every prime `p` dividing its order.
pub fn in_local_formation(s: &Section, f: &FormationFunction) -> Result<bool> {
    for factor in s.chief_factors() {
        let automizer = s.quotient(factor.centralizer)?;
        for p in arith::prime_divisors(factor.order as u64) {
            if !f.at(p).contains(&automizer) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
