use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{Sign, HERMITE_MAX_ORDER};

/// Which product coherent states are superposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// `|α, α⟩ ± |-α, -α⟩`
    Correlated,
    /// `|α, -α⟩ ± |-α, α⟩`
    Anticorrelated,
}

/// The four photon-added entangled coherent state families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Psi1Plus,
    Psi1Minus,
    Psi2Plus,
    Psi2Minus,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Psi1Plus,
        Family::Psi1Minus,
        Family::Psi2Plus,
        Family::Psi2Minus,
    ];

    pub fn sign(self) -> Sign {
        match self {
            Family::Psi1Plus | Family::Psi2Plus => Sign::Plus,
            Family::Psi1Minus | Family::Psi2Minus => Sign::Minus,
        }
    }

    pub fn pairing(self) -> Pairing {
        match self {
            Family::Psi1Plus | Family::Psi1Minus => Pairing::Correlated,
            Family::Psi2Plus | Family::Psi2Minus => Pairing::Anticorrelated,
        }
    }

    pub fn from_parts(pairing: Pairing, sign: Sign) -> Family {
        match (pairing, sign) {
            (Pairing::Correlated, Sign::Plus) => Family::Psi1Plus,
            (Pairing::Correlated, Sign::Minus) => Family::Psi1Minus,
            (Pairing::Anticorrelated, Sign::Plus) => Family::Psi2Plus,
            (Pairing::Anticorrelated, Sign::Minus) => Family::Psi2Minus,
        }
    }

    /// The two `(mode a, mode b)` amplitude signs of the superposed product
    /// states, together with the coefficient of each.
    pub fn components(self) -> [(f64, f64, f64); 2] {
        let s = self.sign().as_f64();
        match self.pairing() {
            Pairing::Correlated => [(1.0, 1.0, 1.0), (-1.0, -1.0, s)],
            Pairing::Anticorrelated => [(1.0, -1.0, 1.0), (-1.0, 1.0, s)],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Psi1Plus => "psi1+",
            Family::Psi1Minus => "psi1-",
            Family::Psi2Plus => "psi2+",
            Family::Psi2Minus => "psi2-",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psi1+" | "psi1p" | "psi1plus" => Ok(Family::Psi1Plus),
            "psi1-" | "psi1m" | "psi1minus" => Ok(Family::Psi1Minus),
            "psi2+" | "psi2p" | "psi2plus" => Ok(Family::Psi2Plus),
            "psi2-" | "psi2m" | "psi2minus" => Ok(Family::Psi2Minus),
            other => Err(Error::InvalidConfig(format!(
                "unknown family {other:?} (expected psi1+, psi1-, psi2+ or psi2-)"
            ))),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Photon-number parity of an even/odd coherent state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> Sign {
        match self {
            Parity::Even => Sign::Plus,
            Parity::Odd => Sign::Minus,
        }
    }

    pub fn matches(self, k: usize) -> bool {
        k.is_multiple_of(2) == (self == Parity::Even)
    }
}

/// A photon-added entangled coherent state: family, coherent amplitude and
/// the numbers of photons added to modes a and b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaecsSpec {
    pub family: Family,
    pub alpha: C64,
    pub m: u32,
    pub n: u32,
}

impl PaecsSpec {
    /// Checks the excitation caps and that `alpha` is finite. The zero state
    /// (minus family at `alpha = 0`) is accepted here and rejected by the
    /// operations that would have to normalize it.
    pub fn new(family: Family, alpha: C64, m: u32, n: u32) -> Result<Self> {
        if m > HERMITE_MAX_ORDER || n > HERMITE_MAX_ORDER {
            return Err(Error::Domain(format!(
                "photon additions ({m}, {n}) exceed cap {HERMITE_MAX_ORDER}"
            )));
        }
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
        }
        Ok(PaecsSpec {
            family,
            alpha,
            m,
            n,
        })
    }

    pub fn real(family: Family, alpha: f64, m: u32, n: u32) -> Result<Self> {
        Self::new(family, C64::new(alpha, 0.0), m, n)
    }

    /// `|alpha|^2`
    pub fn intensity(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn with_alpha(self, alpha: C64) -> Self {
        PaecsSpec { alpha, ..self }
    }

    pub fn swapped(self) -> Self {
        PaecsSpec {
            m: self.n,
            n: self.m,
            ..self
        }
    }

    pub(crate) fn ensure_not_degenerate(&self) -> Result<()> {
        if self.family.sign() == Sign::Minus && self.alpha == C64::new(0.0, 0.0) {
            return Err(Error::Degenerate(format!(
                "{} vanishes identically at alpha = 0",
                self.family
            )));
        }
        Ok(())
    }
}
