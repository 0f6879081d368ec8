use crate::error::{Error, Result};
use crate::quadrature::QuadConfig;
use crate::specfun::FractionalOrder;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::str::FromStr;

/// The four data sets: f = 1 with s = 0.75 / 0.40 (Ia / Ib) and f(x) = x
/// with s = 0.75 / 0.40 (IIa / IIb).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    Ia,
    Ib,
    IIa,
    IIb,
}

impl Case {
    pub fn s(&self) -> FractionalOrder {
        let v = match self {
            Case::Ia | Case::IIa => 0.75,
            Case::Ib | Case::IIb => 0.40,
        };
        FractionalOrder::new(v).unwrap()
    }

    pub fn source(&self) -> fn(f64) -> f64 {
        match self {
            Case::Ia | Case::Ib => |_| 1.0,
            Case::IIa | Case::IIb => |x| x,
        }
    }

    /// Whether the source is f = 1 (closed-form solution available).
    pub fn constant_source(&self) -> bool {
        matches!(self, Case::Ia | Case::Ib)
    }

    pub fn all() -> [Case; 4] {
        [Case::Ia, Case::Ib, Case::IIa, Case::IIb]
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::Ia => "Ia",
            Case::Ib => "Ib",
            Case::IIa => "IIa",
            Case::IIb => "IIb",
        };
        f.write_str(s)
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(v: &str) -> Result<Self> {
        match v {
            "Ia" | "ia" | "IA" => Ok(Case::Ia),
            "Ib" | "ib" | "IB" => Ok(Case::Ib),
            "IIa" | "iia" | "IIA" => Ok(Case::IIa),
            "IIb" | "iib" | "IIB" => Ok(Case::IIb),
            other => Err(Error::Domain(format!(
                "unknown case {other:?} (expected Ia, Ib, IIa or IIb)"
            ))),
        }
    }
}

/// One solver run; `surrogate` nests the reference run of a table study.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub case: Case,
    /// Interior subinterval count N (ĥ = 2/N).
    pub n: usize,
    pub lambda: f64,
    pub p: f64,
    #[serde(default)]
    pub quad: QuadConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surrogate: Option<Box<RunConfig>>,
}

impl RunConfig {
    pub fn new(case: Case, n: usize, lambda: f64, p: f64) -> Self {
        Self {
            case,
            n,
            lambda,
            p,
            quad: QuadConfig::default(),
            surrogate: None,
        }
    }

    /// Hex digest of the canonical JSON serialization; stamped onto every
    /// report row produced from this config.
    pub fn config_hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serialization cannot fail");
        let digest = Sha256::digest(json.as_bytes());
        hex::encode(&digest[..8])
    }
}

/// Preset sizes: `Desk` completes on a workstation, `Paper` reproduces the
/// published surrogate resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scale {
    Desk,
    Paper,
}

impl FromStr for Scale {
    type Err = Error;
    fn from_str(v: &str) -> Result<Self> {
        match v.to_ascii_lowercase().as_str() {
            "desk" => Ok(Scale::Desk),
            "paper" => Ok(Scale::Paper),
            other => Err(Error::Domain(format!(
                "unknown scale {other:?} (expected desk or paper)"
            ))),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Desk => "desk",
            Scale::Paper => "paper",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_parameters() {
        assert_eq!(Case::Ia.s().value(), 0.75);
        assert_eq!(Case::IIb.s().value(), 0.40);
        assert_eq!((Case::Ib.source())(0.3), 1.0);
        assert_eq!((Case::IIa.source())(0.3), 0.3);
        assert!(Case::Ia.constant_source());
        assert!(!Case::IIb.constant_source());
    }

    #[test]
    fn case_parses_and_rejects() {
        assert_eq!("IIa".parse::<Case>().unwrap(), Case::IIa);
        assert!("IIx".parse::<Case>().is_err());
    }

    #[test]
    fn config_hash_is_stable_and_sensitive() {
        let a = RunConfig::new(Case::Ia, 64, 8.0, 0.5);
        let b = RunConfig::new(Case::Ia, 64, 8.0, 0.5);
        assert_eq!(a.config_hash(), b.config_hash());
        let c = RunConfig::new(Case::Ia, 64, 16.0, 0.5);
        assert_ne!(a.config_hash(), c.config_hash());
    }
}
