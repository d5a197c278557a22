//! JSON descriptions of potentials.
//!
//! ```json
//! {"kind": "canonical", "polytope": {"dim": 2, "facets": [...]}}
//! {"kind": "radial", "n": 2, "A": "0", "B": "1", "C": "0", "D": "0",
//!  "spec": {"n": 2, "m": 1, "a": "1", "b": null}}
//! {"kind": "dim2", "k": 1, "b": 0, "c": 1}
//! {"kind": "sum", "terms": [...]}
//! {"kind": "correction", "dim": 2, "coeffs": [0, 0, 1]}
//! {"kind": "pullback", "matrix": [["1", "0"], ["0", "1"]], "inner": {...}}
//! ```
//!
//! A radial potential takes either a polytope `spec` (the profile is then
//! checked against its boundary conditions), an explicit radial `domain`, or
//! neither (the orthant).

use serde::{Deserialize, Serialize};

use crate::calabi::{build_potential, PolytopeSpec, RadialDomain, RadialProfile};
use crate::dim2::{classify_dim2, potential_dim2};
use crate::error::{Error, Result};
use crate::polytope::{LinearChange, PolyhedralSet};
use crate::potential::{canonical_potential, transform_potential, Potential};
use crate::rational::{Num, Rational};

/// Current version of every JSON document read or written by this crate.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    pub n: u32,
    pub m: u32,
    pub a: Num,
    #[serde(default)]
    pub b: Option<Num>,
}

impl SpecJson {
    pub fn exact(&self) -> Result<PolytopeSpec<Rational>> {
        PolytopeSpec::new(self.n, self.m, self.a.0.clone(), self.b.as_ref().map(|b| b.0.clone()))
    }

    pub fn from_exact(spec: &PolytopeSpec<Rational>) -> Self {
        SpecJson {
            n: spec.n,
            m: spec.m,
            a: Num(spec.a.clone()),
            b: spec.b.clone().map(Num),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub n: u32,
    #[serde(rename = "A")]
    pub a: Num,
    #[serde(rename = "B")]
    pub b: Num,
    #[serde(rename = "C")]
    pub c: Num,
    #[serde(rename = "D")]
    pub d: Num,
}

impl ProfileJson {
    pub fn exact(&self) -> RadialProfile<Rational> {
        RadialProfile::new(self.n, self.a.0.clone(), self.b.0.clone(), self.c.0.clone(), self.d.0.clone())
    }

    pub fn from_exact(p: &RadialProfile<Rational>) -> Self {
        let [a, b, c, d] = p.coeffs.clone();
        ProfileJson {
            n: p.n,
            a: Num(a),
            b: Num(b),
            c: Num(c),
            d: Num(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Canonical {
        polytope: PolyhedralSet,
    },
    Radial {
        #[serde(flatten)]
        profile: ProfileJson,
        #[serde(default)]
        spec: Option<SpecJson>,
        #[serde(default)]
        domain: Option<RadialDomain>,
    },
    Dim2 {
        k: Num,
        b: Num,
        c: Num,
    },
    Sum {
        terms: Vec<PotentialSpec>,
    },
    Correction {
        dim: usize,
        coeffs: Vec<Num>,
    },
    Pullback {
        matrix: Vec<Vec<Num>>,
        inner: Box<PotentialSpec>,
    },
}

impl PotentialSpec {
    pub fn build(&self) -> Result<Potential> {
        match self {
            PotentialSpec::Canonical { polytope } => Ok(canonical_potential(polytope)),
            PotentialSpec::Radial {
                profile,
                spec,
                domain,
            } => {
                let prof = profile.exact().to_f64();
                match (spec, domain) {
                    (Some(_), Some(_)) => Err(Error::Parse(
                        "radial potential takes either spec or domain, not both".into(),
                    )),
                    (Some(spec), None) => build_potential(&prof, &spec.exact()?.to_f64()),
                    (None, Some(d)) => Potential::radial(prof, d),
                    (None, None) => Potential::radial(
                        prof,
                        &RadialDomain {
                            n: profile.n,
                            lower: None,
                            upper: None,
                        },
                    ),
                }
            }
            PotentialSpec::Dim2 { k, b, c } => {
                potential_dim2(&classify_dim2(k.to_f64(), b.to_f64(), c.to_f64()))
            }
            PotentialSpec::Sum { terms } => {
                Potential::sum(terms.iter().map(PotentialSpec::build).collect::<Result<_>>()?)
            }
            PotentialSpec::Correction { dim, coeffs } => {
                Potential::correction(*dim, coeffs.iter().map(Num::to_f64).collect())
            }
            PotentialSpec::Pullback { matrix, inner } => {
                let t = LinearChange::new(
                    matrix
                        .iter()
                        .map(|row| row.iter().map(|v| v.0.clone()).collect())
                        .collect(),
                )?;
                transform_potential(&inner.build()?, &t)
            }
        }
    }
}

/// Parses a potential description.
pub fn parse_potential(text: &str) -> Result<PotentialSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
