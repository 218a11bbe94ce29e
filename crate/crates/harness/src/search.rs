use std::fmt;
use std::str::FromStr;

use grouplab::submodular::{self as sm, SubmodularClass};
use grouplab::classes;

use grouplab::{Section, SubgroupId};

use crate::corpus::{Corpus, CorpusEntry, SubgroupRef};
use crate::{HarnessError, Result};

/// A witness search over the corpus.
///
/// Written as `X@2 and not Y@2` for class gaps and
/// `U_1-subnormal and not 1-submodular` for subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    ClassGap { has: (SubmodularClass, u32), lacks: (SubmodularClass, u32) },
    SubnormalNotSubmodular { k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessHit {
    pub group: String,
    pub subgroup: Option<SubgroupRef>,
}

fn class_at(s: &str) -> Option<(SubmodularClass, u32)> {
    let (c, k) = s.trim().split_once('@')?;
    let class = SubmodularClass::ALL.into_iter().find(|x| x.name() == c.trim())?;
    let k: u32 = k.trim().parse().ok().filter(|&k| k > 0)?;
    Some((class, k))
}

fn subnormal_query(s: &str) -> Option<u32> {
    let rest = s.trim().strip_prefix("U_")?;
    let (k1, rest) = rest.split_once("-subnormal and not ")?;
    let k2 = rest.trim().strip_suffix("-submodular")?;
    let k: u32 = k1.parse().ok().filter(|&k| k > 0)?;
    (k2.parse::<u32>().ok()? == k).then_some(k)
}

impl FromStr for Query {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(k) = subnormal_query(s) {
            return Ok(Query::SubnormalNotSubmodular { k });
        }
        let malformed = || HarnessError::MalformedQuery(s.to_string());
        let (a, b) = s.split_once(" and not ").ok_or_else(malformed)?;
        Ok(Query::ClassGap { has: class_at(a).ok_or_else(malformed)?, lacks: class_at(b).ok_or_else(malformed)? })
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Query::ClassGap { has: (a, i), lacks: (b, j) } => write!(f, "{}@{i} and not {}@{j}", a.name(), b.name()),
            Query::SubnormalNotSubmodular { k } => write!(f, "U_{k}-subnormal and not {k}-submodular"),
        }
    }
}

/// A subgroup whose failure to be k-submodular keeps the group out of `class`.
fn distinguishing(w: &Section, class: SubmodularClass, k: u32) -> Result<Option<SubgroupId>> {
    let candidates: Vec<SubgroupId> = match class {
        SubmodularClass::Y => w.subgroups().collect(),
        SubmodularClass::X => w.maximal_subgroups(),
        SubmodularClass::K | SubmodularClass::F => w.all_sylow().into_iter().map(|(_, p)| p).collect(),
    };
    for h in candidates {
        if !sm::is_k_submodular(w, h, k)? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// The first corpus entry by name satisfying the query, with the subgroup
/// that separates the two sides when there is one.
pub fn find_witness(query: &Query, corpus: &Corpus) -> Result<Option<WitnessHit>> {
    let mut entries: Vec<&CorpusEntry> = corpus.entries.iter().collect();
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    for entry in entries {
        let lat = entry.lattice();
        let w = lat.whole();
        match *query {
            Query::ClassGap { has: (a, i), lacks: (b, j) } => {
                if sm::in_class(&w, a, i)? && !sm::in_class(&w, b, j)? {
                    let sub = distinguishing(&w, b, j)?.map(|h| entry.describe(h));
                    return Ok(Some(WitnessHit { group: entry.name.clone(), subgroup: sub }));
                }
            }
            Query::SubnormalNotSubmodular { k } => {
                let uk = classes::oracle("U_k", classes::ClassParams { m: None, k: Some(k) })?;
                if !w.is_soluble() {
                    continue;
                }
                for h in lat.ids() {
                    if classes::is_f_subnormal(&w, h, &uk)? && !sm::is_k_submodular(&w, h, k)? {
                        return Ok(Some(WitnessHit { group: entry.name.clone(), subgroup: Some(entry.describe(h)) }));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn queries_round_trip() {
        for s in ["X@2 and not Y@2", "F@1 and not K@3", "U_1-subnormal and not 1-submodular"] {
            assert_eq!(s.parse::<Query>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn malformed_queries_are_rejected() {
        for s in ["", "X@0 and not Y@1", "Z@1 and not Y@1", "U_1-subnormal and not 2-submodular", "X@1 or Y@1"] {
            assert!(matches!(s.parse::<Query>(), Err(HarnessError::MalformedQuery(_))), "{s}");
        }
    }
}
