//! JSON group specifications.
//!
//! ```json
//! {"kind": "permutation", "degree": 4, "generators": [[[0, 1]], [[0, 1, 2, 3]]]}
//! {"kind": "psl2", "p": 19, "y": 2, "a": 8, "b": 12}
//! {"kind": "psl2", "p": 19, "example": true, "stabilizer": "s1,s2"}
//! {"kind": "wreath_c2", "base": {"kind": "icosians"}, "quotient": true}
//! {"kind": "h4", "stabilizer": "s1,s2,s3"}
//! ```

use std::sync::Arc;

use polyreal::h4;
use polyreal::perm::{enumerate_with_degree, Group, PermError, Permutation};
use polyreal::psl::{self, PslError, PslParams};
use polyreal::wreath::{self, WreathError};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Permutation {
        degree: usize,
        /// Each generator as a list of cycles.
        generators: Vec<Vec<Vec<u32>>>,
        #[serde(default)]
        stabilizer: Option<String>,
    },
    Psl2 {
        p: u64,
        #[serde(default)]
        y: Option<u64>,
        #[serde(default)]
        a: Option<u64>,
        #[serde(default)]
        b: Option<u64>,
        /// Use the printed matrices for `p = 19`.
        #[serde(default)]
        example: bool,
        #[serde(default)]
        stabilizer: Option<String>,
    },
    WreathC2 {
        base: Box<GroupSpec>,
        #[serde(default)]
        quotient: bool,
        #[serde(default)]
        stabilizer: Option<String>,
    },
    H4 {
        #[serde(default)]
        stabilizer: Option<String>,
    },
    /// `SL(2,5)` as the icosians under right multiplication.
    Icosians {
        #[serde(default)]
        stabilizer: Option<String>,
    },
}

/// A group with named generators.
pub struct Built {
    pub group: Arc<Group>,
    pub names: Vec<String>,
    pub generators: Vec<u32>,
    pub default_stabilizer: Option<String>,
}

impl Built {
    /// Parses `"s0*s1*s0, s2"` into group elements.
    pub fn words(&self, text: &str) -> Result<Vec<u32>, CliError> {
        text.split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| {
                let letters = w
                    .split('*')
                    .map(|l| {
                        let l = l.trim();
                        self.names
                            .iter()
                            .position(|n| n == l)
                            .map(|i| self.generators[i])
                            .ok_or_else(|| CliError::Parse(format!("unknown generator {l:?} in {w:?}")))
                    })
                    .collect::<Result<Vec<u32>, CliError>>()?;
                Ok(self.group.product(&letters))
            })
            .collect()
    }
}

fn names(prefix_from: usize, n: usize) -> Vec<String> {
    (prefix_from..prefix_from + n).map(|i| format!("s{i}")).collect()
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::CapExceeded(_) => CliError::Cap(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<PslError> for CliError {
    fn from(e: PslError) -> Self {
        match e {
            PslError::Perm(p) => p.into(),
            PslError::NotPrime(_) | PslError::PrimeTooLarge(_) | PslError::InvalidParams(_) => {
                CliError::Parse(e.to_string())
            }
            other => CliError::Check(other.to_string()),
        }
    }
}

impl From<WreathError> for CliError {
    fn from(e: WreathError) -> Self {
        match e {
            WreathError::Perm(p) => p.into(),
            other => CliError::Check(other.to_string()),
        }
    }
}

impl From<h4::H4Error> for CliError {
    fn from(e: h4::H4Error) -> Self {
        match e {
            h4::H4Error::Perm(p) => p.into(),
            other => CliError::Check(other.to_string()),
        }
    }
}

fn check_cap(group: &Group, cap: usize) -> Result<(), CliError> {
    if group.order() > cap {
        return Err(CliError::Cap(format!("group order {} exceeds {cap}", group.order())));
    }
    Ok(())
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("group spec: {e}")))
    }

    pub fn build(&self, cap: usize) -> Result<Built, CliError> {
        match self {
            GroupSpec::Permutation { degree, generators, stabilizer } => {
                let perms = generators
                    .iter()
                    .map(|cycles| Permutation::from_cycles(*degree, cycles))
                    .collect::<Result<Vec<_>, _>>()?;
                let group = Arc::new(enumerate_with_degree(*degree, &perms, cap)?);
                Ok(Built {
                    generators: group.generators().to_vec(),
                    names: names(0, perms.len()),
                    group,
                    default_stabilizer: stabilizer.clone(),
                })
            }
            GroupSpec::Psl2 { p, y, a, b, example, stabilizer } => {
                let (params, mats) = if *example {
                    if *p != 19 {
                        return Err(CliError::Parse("the example uses p = 19".into()));
                    }
                    psl::example_matrices()
                } else {
                    let y = y.ok_or_else(|| CliError::Parse("psl2 needs y".into()))?;
                    let params = match (a, b) {
                        (Some(a), Some(b)) => PslParams::new(*p, y, *a, *b)?,
                        (None, None) => PslParams::with_y(*p, y)?,
                        _ => return Err(CliError::Parse("give both a and b or neither".into())),
                    };
                    (params, params.matrices())
                };
                let group = psl::psl_group(params.p)?;
                check_cap(&group, cap)?;
                let s = psl::lemma_generators(&group, params.p, &mats)?;
                Ok(Built {
                    group,
                    names: names(0, 3),
                    generators: s.to_vec(),
                    default_stabilizer: stabilizer.clone(),
                })
            }
            GroupSpec::WreathC2 { base, quotient, stabilizer } => {
                let b = base.build(cap)?;
                let w = wreath::wreath_c2_capped(&b.group, cap)?;
                let mut names = b.names.clone();
                names.push("t".into());
                let group = if *quotient { w.quotient()? } else { Arc::clone(w.group()) };
                Ok(Built {
                    generators: group.generators().to_vec(),
                    group,
                    names,
                    default_stabilizer: stabilizer.clone(),
                })
            }
            GroupSpec::H4 { stabilizer } => {
                let m = h4::h4_group()?;
                check_cap(&m.group, cap)?;
                Ok(Built {
                    generators: m.s.to_vec(),
                    group: m.group,
                    names: names(1, 4),
                    default_stabilizer: stabilizer.clone(),
                })
            }
            GroupSpec::Icosians { stabilizer } => {
                let group = h4::icosian_permutation_group()?;
                check_cap(&group, cap)?;
                Ok(Built {
                    generators: group.generators().to_vec(),
                    group,
                    names: vec!["a1".into(), "a2".into(), "a3".into(), "m".into()],
                    default_stabilizer: stabilizer.clone(),
                })
            }
        }
    }
}
