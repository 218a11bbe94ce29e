use serde::{Deserialize, Serialize};

use super::builders::{direct_product_with_cap, named_group_with_cap};
use super::{FiniteGroup, Permutation};
use crate::{GroupError, Result};

/// Serialized description of a group, as read from group-spec JSON files:
///
/// ```json
/// {"kind":"generators","degree":3,"cycles":["(1 2)","(1 2 3)"]}
/// {"kind":"named","name":"holomorph_cyclic","args":[5]}
/// {"kind":"direct","parts":[{"kind":"named","name":"cyclic","args":[2]}, ...]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Generators { degree: usize, cycles: Vec<String> },
    Named {
        name: String,
        #[serde(default)]
        args: Vec<u64>,
    },
    Direct { parts: Vec<GroupSpec> },
}

impl GroupSpec {
    pub fn named(name: &str, args: &[u64]) -> Self {
        GroupSpec::Named {
            name: name.to_string(),
            args: args.to_vec(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| GroupError::InvalidSpec(e.to_string()))
    }

    /// Parses either JSON or a builder expression such as `holomorph_cyclic(5)`,
    /// `sym(4)` or `frobenius_metacyclic(5,2,2)`. `A x B` forms a direct product.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return Self::from_json(text);
        }
        let parts: Vec<&str> = text.split(" x ").collect();
        if parts.len() > 1 {
            let parts = parts.into_iter().map(Self::parse).collect::<Result<_>>()?;
            return Ok(GroupSpec::Direct { parts });
        }
        let bad = || GroupError::InvalidSpec(format!("cannot parse group expression {text:?}"));
        let (name, args) = match text.find('(') {
            Some(open) => {
                let inner = text[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                let args = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|a| !a.is_empty())
                    .map(|a| a.parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                (&text[..open], args)
            }
            None => (text, Vec::new()),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(bad());
        }
        Ok(GroupSpec::named(name, &args))
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Generators { degree, cycles } => {
                let gens = cycles
                    .iter()
                    .map(|c| Permutation::parse_cycles(c, *degree))
                    .collect::<Result<Vec<_>>>()?;
                let label = format!("<{}>", cycles.join(", "));
                Ok(FiniteGroup::generate_with_cap(*degree, gens, cap)?.named(label))
            }
            GroupSpec::Named { name, args } => named_group_with_cap(name, args, cap),
            GroupSpec::Direct { parts } => {
                let (first, rest) = parts
                    .split_first()
                    .ok_or_else(|| GroupError::InvalidSpec("direct product of nothing".into()))?;
                let mut acc = first.build(cap)?;
                for p in rest {
                    acc = direct_product_with_cap(&acc, &p.build(cap)?, cap)?;
                }
                Ok(acc)
            }
        }
    }
}
