use serde::{Deserialize, Serialize};

use super::{catalog, FiniteGroup};
use crate::error::{Error, Result};

/// `{"order": n, "mul": [[...]]}` or `{"degree": d, "perm_gens": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Table { order: usize, mul: Vec<Vec<usize>> },
    Perms { degree: usize, perm_gens: Vec<Vec<usize>> },
}

impl GroupJson {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupJson::Table { order, mul } => {
                if mul.len() != *order {
                    return Err(Error::InvalidGroup(format!("order {order} but {} rows", mul.len())));
                }
                FiniteGroup::from_table(mul)
            }
            GroupJson::Perms { degree, perm_gens } => FiniteGroup::from_permutations(*degree, perm_gens),
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson::Table { order: g.order(), mul: g.table() }
    }
}

impl FiniteGroup {
    /// Accepts group JSON or a bare catalog name.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if !t.starts_with('{') && !t.starts_with('"') {
            return catalog(t);
        }
        let v: serde_json::Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        if let Some(name) = v.as_str() {
            return catalog(name);
        }
        let parsed: GroupJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        parsed.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let g = FiniteGroup::parse(r#"{"order": 2, "mul": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.order(), 2);
        let g = FiniteGroup::parse(r#"{"degree": 3, "perm_gens": [[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(FiniteGroup::parse("Q8").unwrap().order(), 8);
        assert!(FiniteGroup::parse(r#"{"order": 3, "mul": [[0,1],[1,0]]}"#).is_err());
        let j = GroupJson::from_group(&g);
        assert_eq!(j.build().unwrap().table(), g.table());
    }
}
