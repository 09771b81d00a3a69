//! Orbifold configuration files: a TOML document describing V, D, the
//! surface cuts and the involution. See `docs/config.md` for the grammar.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wps::{CompleteIntersection, Involution, Polynomial, WeightedSpace, WpsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cannot parse configuration: {0}")]
    Syntax(String),
    #[error("invalid configuration: {0}")]
    Schema(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

impl From<WpsError> for ConfigError {
    fn from(e: WpsError) -> Self {
        ConfigError::Schema(e.to_string())
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ambient {
    pub weights: Vec<u32>,
}

/// Defining equations of V inside the ambient space; empty for V = ambient.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variety {
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub certified_quasismooth: bool,
}

/// Extra equations cutting D out of V.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Divisor {
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub certified_quasismooth: bool,
}

/// A component of the self-intersection divisor, cut out of D.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceCut {
    pub equations: Vec<String>,
    pub multiplicity: u32,
    #[serde(default, skip_serializing_if = "is_false")]
    pub certified_quasismooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionSpec {
    pub permutation: Vec<usize>,
    pub phases: Vec<i8>,
}

/// Values that replace computed ones. Each use is reported.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Declared {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular_points: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_v: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h31_v: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simply_connected: Option<bool>,
}

impl Declared {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub ambient: Ambient,
    #[serde(default)]
    pub variety: Variety,
    pub divisor: Divisor,
    #[serde(rename = "surface")]
    pub surfaces: Vec<SurfaceCut>,
    pub involution: InvolutionSpec,
    #[serde(default, skip_serializing_if = "Declared::is_empty")]
    pub declared: Declared,
}

/// A validated configuration with parsed polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbifold {
    pub name: String,
    pub variety: CompleteIntersection,
    pub divisor: Vec<Polynomial>,
    pub divisor_certified: bool,
    pub surfaces: Vec<(Vec<Polynomial>, u32, bool)>,
    pub involution: Involution,
    pub declared: Declared,
}

fn parse_all(eqs: &[String], n: usize, what: &str) -> Result<Vec<Polynomial>, ConfigError> {
    eqs.iter()
        .map(|s| {
            Polynomial::parse(s, n).map_err(|e| ConfigError::Schema(format!("{what} equation {s:?}: {e}")))
        })
        .collect()
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string().trim_end().to_string()))
    }

    /// Canonical text; `from_toml(c.to_toml())` returns `c`.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<Orbifold, ConfigError> {
        let space = WeightedSpace::new(self.ambient.weights.clone())?;
        let n = space.weights().len();
        let mut variety = CompleteIntersection::from_equations(
            space,
            parse_all(&self.variety.equations, n, "variety")?,
        )?;
        variety.certified_quasismooth = self.variety.certified_quasismooth;
        if self.divisor.equations.is_empty() {
            return Err(ConfigError::Schema("the divisor needs at least one equation".into()));
        }
        let divisor = parse_all(&self.divisor.equations, n, "divisor")?;
        if self.surfaces.is_empty() {
            return Err(ConfigError::Schema("at least one [[surface]] is required".into()));
        }
        let mut surfaces = Vec::new();
        for (i, s) in self.surfaces.iter().enumerate() {
            if s.multiplicity == 0 {
                return Err(ConfigError::Schema(format!("surface {i} has multiplicity 0")));
            }
            if s.equations.is_empty() {
                return Err(ConfigError::Schema(format!("surface {i} has no equations")));
            }
            surfaces.push((
                parse_all(&s.equations, n, "surface")?,
                s.multiplicity,
                s.certified_quasismooth,
            ));
        }
        if self.involution.permutation.len() != n {
            return Err(ConfigError::Schema(format!(
                "involution permutation has {} entries for {n} coordinates",
                self.involution.permutation.len()
            )));
        }
        let involution = Involution::new(self.involution.permutation.clone(), self.involution.phases.clone())?;
        Ok(Orbifold {
            name: self.name.clone(),
            variety,
            divisor,
            divisor_certified: self.divisor.certified_quasismooth,
            surfaces,
            involution,
            declared: self.declared.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M1: &str = r#"name = "m1"

[ambient]
weights = [1, 1, 1, 1, 4]

[variety]
equations = []

[divisor]
equations = ["z0^8 + z1^8 + z2^8 + z3^8 + z4^2"]

[[surface]]
equations = ["z0^8 - z1^8 + 2*z2^8 - 2*z3^8 + i*z4^2"]
multiplicity = 1

[involution]
permutation = [1, 0, 3, 2, 4]
phases = [1, -1, 1, -1, 1]
"#;

    #[test]
    fn round_trip() {
        let c = Config::from_toml(M1).unwrap();
        assert_eq!(c.to_toml(), M1);
        let o = c.validate().unwrap();
        assert_eq!(o.divisor.len(), 1);
        assert!(o.variety.equations.as_ref().unwrap().is_empty());
    }

    #[test]
    fn schema_errors() {
        let unknown = M1.replace("name = \"m1\"", "name = \"m1\"\ncolour = 3");
        assert!(matches!(Config::from_toml(&unknown), Err(ConfigError::Syntax(_))));
        let bad_poly = M1.replace("z4^2\"]", "z9^2\"]");
        assert!(matches!(Config::from_toml(&bad_poly).unwrap().validate(), Err(ConfigError::Schema(_))));
        let bad_perm = M1.replace("[1, 0, 3, 2, 4]", "[1, 0, 3, 2]");
        assert!(Config::from_toml(&bad_perm).unwrap().validate().is_err());
        let gcd = M1.replace("[1, 1, 1, 1, 4]", "[2, 2, 2, 2, 4]");
        assert!(Config::from_toml(&gcd).unwrap().validate().is_err());
    }
}
