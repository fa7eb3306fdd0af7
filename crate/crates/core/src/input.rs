//! JSON descriptions of groups and witnesses.
//!
//! ```json
//! {"construct": "SL2", "q": 8}
//! {"construct": "semidirect", "module": "natural", "q": 4}
//! {"construct": "direct_product", "factors": [{"construct": "SL2", "q": 4}, {"construct": "cyclic", "n": 5}]}
//! {"construct": "extraspecial", "t": 5, "order": 125, "exponent": 5}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classify::ClassificationCase;
use crate::error::{Error, Result};
use crate::group::small::extraspecial;
use crate::group::{module_catalog, sl2_group, FiniteGroup, ModuleAction, ModuleLabel};
use crate::numtheory::{prime_set, PrimeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construct", deny_unknown_fields)]
pub enum GroupSpec {
    #[serde(rename = "SL2")]
    Sl2 { q: u64 },
    #[serde(rename = "semidirect")]
    Semidirect {
        module: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<u64>,
    },
    #[serde(rename = "direct_product")]
    DirectProduct { factors: Vec<GroupSpec> },
    #[serde(rename = "extraspecial")]
    Extraspecial { t: u64, order: u64, exponent: u64 },
    #[serde(rename = "cyclic")]
    Cyclic { n: usize },
}

/// A constructed group with `π(G/R)` recorded from its construction.
#[derive(Debug)]
pub struct BuiltGroup {
    pub group: Arc<FiniteGroup>,
    pub pi_g_mod_r: PrimeSet,
}

pub fn parse_module_label(name: &str, q: Option<u64>) -> Result<ModuleLabel> {
    let need_q = || q.ok_or_else(|| Error::Malformed(format!("module {name} needs q")));
    let label = match name {
        "V0" => ModuleLabel::V0,
        "V1" => ModuleLabel::V1,
        "W" => ModuleLabel::W,
        "U" => ModuleLabel::U,
        "natural" => ModuleLabel::Natural(need_q()?),
        "omega_minus" => ModuleLabel::OmegaMinus(need_q()?),
        other => return Err(Error::UnknownModule(other.to_string())),
    };
    if q.is_some() && !matches!(label, ModuleLabel::Natural(_) | ModuleLabel::OmegaMinus(_)) {
        return Err(Error::Malformed(format!("module {name} takes no q")));
    }
    Ok(label)
}

// π of the simple quotient of SL2(q); SL2(2) and SL2(3) are solvable.
fn sl2_quotient_primes(q: u64) -> Result<PrimeSet> {
    if q <= 3 {
        return Ok(PrimeSet::empty());
    }
    prime_set(q * (q * q - 1))
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<GroupSpec> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// The module of a `semidirect` spec.
    pub fn module_label(&self) -> Result<ModuleLabel> {
        match self {
            GroupSpec::Semidirect { module, q } => parse_module_label(module, *q),
            _ => Err(Error::Malformed("expected a semidirect spec".into())),
        }
    }

    pub fn module_action(&self, ceiling: usize) -> Result<ModuleAction> {
        module_catalog(&self.module_label()?, ceiling)
    }

    pub fn build(&self, ceiling: usize) -> Result<BuiltGroup> {
        match self {
            GroupSpec::Sl2 { q } => Ok(BuiltGroup {
                group: Arc::new(sl2_group(*q, ceiling)?),
                pi_g_mod_r: sl2_quotient_primes(*q)?,
            }),
            GroupSpec::Semidirect { .. } => {
                let action = Arc::new(self.module_action(ceiling)?);
                let pi = sl2_quotient_primes(action.sl2_q())?;
                let name = format!("{}:{}", action.label(), action.group().name());
                let g = FiniteGroup::semidirect(action, ceiling)?.with_name(name);
                Ok(BuiltGroup {
                    group: Arc::new(g),
                    pi_g_mod_r: pi,
                })
            }
            GroupSpec::DirectProduct { factors } => {
                if factors.len() < 2 {
                    return Err(Error::Malformed(
                        "direct_product needs at least two factors".into(),
                    ));
                }
                let mut built = factors[0].build(ceiling)?;
                for f in &factors[1..] {
                    let next = f.build(ceiling)?;
                    let g = FiniteGroup::direct_product(built.group, next.group, ceiling)?;
                    built = BuiltGroup {
                        group: Arc::new(g),
                        pi_g_mod_r: built.pi_g_mod_r.union(&next.pi_g_mod_r),
                    };
                }
                Ok(built)
            }
            GroupSpec::Extraspecial { t, order, exponent } => Ok(BuiltGroup {
                group: Arc::new(extraspecial(*t, *order, *exponent)?),
                pi_g_mod_r: PrimeSet::empty(),
            }),
            GroupSpec::Cyclic { n } => Ok(BuiltGroup {
                group: Arc::new(FiniteGroup::cyclic(*n)?),
                pi_g_mod_r: PrimeSet::empty(),
            }),
        }
    }
}

/// A witness group together with the case it should realize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub name: String,
    pub group: GroupSpec,
    pub case: ClassificationCase,
}

impl WitnessSpec {
    pub fn from_json(text: &str) -> Result<WitnessSpec> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CEILING;

    #[test]
    fn parses_and_builds() {
        let cases = [
            (r#"{"construct":"SL2","q":8}"#, 504, vec![2, 3, 7]),
            (
                r#"{"construct":"semidirect","module":"V1"}"#,
                960,
                vec![2, 3, 5],
            ),
            (
                r#"{"construct":"semidirect","module":"natural","q":4}"#,
                960,
                vec![2, 3, 5],
            ),
            (
                r#"{"construct":"semidirect","module":"W"}"#,
                9720,
                vec![2, 3, 5],
            ),
            (
                r#"{"construct":"direct_product","factors":[{"construct":"SL2","q":4},{"construct":"extraspecial","t":5,"order":125,"exponent":5}]}"#,
                7500,
                vec![2, 3, 5],
            ),
            (r#"{"construct":"cyclic","n":7}"#, 7, vec![]),
            (r#"{"construct":"SL2","q":3}"#, 24, vec![]),
        ];
        for (text, order, pi) in cases {
            let b = GroupSpec::from_json(text)
                .unwrap()
                .build(DEFAULT_CEILING)
                .unwrap();
            assert_eq!(b.group.order(), order, "{text}");
            assert_eq!(b.pi_g_mod_r.as_slice(), pi.as_slice(), "{text}");
        }
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            r#"{"construct":"SL3","q":8}"#,
            r#"{"construct":"SL2"}"#,
            r#"{"construct":"SL2","q":8,"extra":1}"#,
            r#"not json"#,
        ] {
            assert!(
                matches!(GroupSpec::from_json(text), Err(Error::Malformed(_))),
                "{text}"
            );
        }
        let unknown = GroupSpec::from_json(r#"{"construct":"semidirect","module":"V7"}"#).unwrap();
        assert!(matches!(
            unknown.build(DEFAULT_CEILING),
            Err(Error::UnknownModule(_))
        ));
        let no_q =
            GroupSpec::from_json(r#"{"construct":"semidirect","module":"natural"}"#).unwrap();
        assert!(no_q.build(DEFAULT_CEILING).is_err());
        let lone = GroupSpec::from_json(
            r#"{"construct":"direct_product","factors":[{"construct":"cyclic","n":2}]}"#,
        )
        .unwrap();
        assert!(lone.build(DEFAULT_CEILING).is_err());
        let big = GroupSpec::from_json(r#"{"construct":"SL2","q":16}"#).unwrap();
        assert!(matches!(
            big.build(1000),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"construct":"semidirect","module":"natural","q":4}"#;
        let spec = GroupSpec::from_json(text).unwrap();
        assert_eq!(serde_json::to_string(&spec).unwrap(), text);
        let w = r#"{"name":"v1","group":{"construct":"semidirect","module":"V1"},"case":{"theorem":"T2b_ii","p":5,"pi_outer":[],"v_gk":[]}}"#;
        let parsed = WitnessSpec::from_json(w).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), w);
    }
}
