//! Husimi Q-function of the four families in closed form, sampled over
//! two-dimensional slices of the `(z1, z2)` phase space and integrated by
//! tensor-product Gauss–Legendre quadrature.
//!
//! The Glauber–Sudarshan P-function of these states is a series of
//! derivatives of delta functions and is not evaluated. Q is its Gaussian
//! smoothing, `Q(z1, z2) = π^{-2} ∫ P(μ, ν) e^{-|μ - z1|² - |ν - z2|²}`, so the
//! pointwise agreement of [`q_analytic`] with the Fock-space oracle is the
//! executable check of that relation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::normalization;
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::state::{PaecsSpec, Pairing};

/// Negative excursion of Q tolerated as rounding before clamping to zero.
pub const Q_CLAMP_WINDOW: f64 = 1e-14;

/// Deviation of the quadrature estimate from 1 beyond which it is flagged.
pub const Q_NORMALIZATION_FLAG: f64 = 0.05;

/// Q-function of one state with its normalization evaluated once.
#[derive(Debug, Clone, Copy)]
pub struct HusimiQ {
    spec: PaecsSpec,
    prefactor: f64,
}

impl HusimiQ {
    pub fn new(spec: &PaecsSpec) -> Result<Self> {
        let n = normalization(spec)?;
        Ok(HusimiQ {
            spec: *spec,
            prefactor: n * n / (PI * PI),
        })
    }

    /// Scales the normalization constant by `factor` (fault injection).
    pub fn with_normalization_factor(self, factor: f64) -> Self {
        HusimiQ {
            prefactor: self.prefactor * factor * factor,
            ..self
        }
    }

    pub fn spec(&self) -> &PaecsSpec {
        &self.spec
    }

    /// `N²/π² |z1|^{2m} |z2|^{2n} e^{-2|α|² - |z1|² - |z2|²}
    ///  [e^{κ*α + κα*} ± e^{-κ*α + κα*} ± e^{κ*α - κα*} + e^{-κ*α - κα*}]`
    /// with `κ = z1 + z2` for ψ₁ and `κ = z1 - z2` for ψ₂.
    pub fn eval(&self, z1: C64, z2: C64) -> f64 {
        let spec = &self.spec;
        let kappa = match spec.family.pairing() {
            Pairing::Correlated => z1 + z2,
            Pairing::Anticorrelated => z1 - z2,
        };
        let alpha = spec.alpha;
        let u = kappa.conj() * alpha;
        let v = kappa * alpha.conj();
        let gauss = -2.0 * spec.intensity() - z1.norm_sqr() - z2.norm_sqr();
        let s = spec.family.sign().as_f64();
        let terms = [
            (gauss + u + v).exp(),
            s * (gauss - u + v).exp(),
            s * (gauss + u - v).exp(),
            (gauss - u - v).exp(),
        ];
        let bracket: C64 = terms.iter().sum();
        debug_assert!(
            bracket.im.abs()
                <= 1e-12
                    * terms
                        .iter()
                        .map(|t| t.norm())
                        .sum::<f64>()
                        .max(f64::MIN_POSITIVE),
            "Q bracket has imaginary residue {}",
            bracket.im
        );
        let powers = z1.norm_sqr().powi(spec.m as i32) * z2.norm_sqr().powi(spec.n as i32);
        let value = self.prefactor * powers * bracket.re;
        debug_assert!(value >= -Q_CLAMP_WINDOW, "Q = {value}");
        value.max(0.0)
    }
}

pub fn q_analytic(spec: &PaecsSpec, z1: C64, z2: C64) -> Result<f64> {
    Ok(HusimiQ::new(spec)?.eval(z1, z2))
}

/// A real coordinate of the `(z1, z2)` phase space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceAxis {
    ReZ1,
    ImZ1,
    ReZ2,
    ImZ2,
}

impl SliceAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SliceAxis::ReZ1 => "re_z1",
            SliceAxis::ImZ1 => "im_z1",
            SliceAxis::ReZ2 => "re_z2",
            SliceAxis::ImZ2 => "im_z2",
        }
    }

    fn mode(self) -> usize {
        match self {
            SliceAxis::ReZ1 | SliceAxis::ImZ1 => 1,
            SliceAxis::ReZ2 | SliceAxis::ImZ2 => 2,
        }
    }
}

impl fmt::Display for SliceAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SliceAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "re_z1" => Ok(SliceAxis::ReZ1),
            "im_z1" => Ok(SliceAxis::ImZ1),
            "re_z2" => Ok(SliceAxis::ReZ2),
            "im_z2" => Ok(SliceAxis::ImZ2),
            other => Err(Error::InvalidConfig(format!(
                "unknown slice axis {other:?}"
            ))),
        }
    }
}

impl Serialize for SliceAxis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for SliceAxis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A rectangular grid over one coordinate of `z1` and one of `z2`, the
/// other two held at `fixed_values`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseSpaceSlice {
    pub axis_1: SliceAxis,
    pub axis_2: SliceAxis,
    /// The unplotted coordinate of `z1`, then that of `z2`.
    pub fixed_values: [f64; 2],
    pub range_1: (f64, f64),
    pub range_2: (f64, f64),
    pub points_1: usize,
    pub points_2: usize,
}

impl Default for PhaseSpaceSlice {
    /// `Im z1 = Im z2 = 0`, `(Re z1, Re z2) ∈ [-4, 4]²`, 121 points per axis.
    fn default() -> Self {
        PhaseSpaceSlice {
            axis_1: SliceAxis::ReZ1,
            axis_2: SliceAxis::ReZ2,
            fixed_values: [0.0, 0.0],
            range_1: (-4.0, 4.0),
            range_2: (-4.0, 4.0),
            points_1: 121,
            points_2: 121,
        }
    }
}

impl PhaseSpaceSlice {
    pub fn validate(&self) -> Result<()> {
        if self.axis_1.mode() != 1 || self.axis_2.mode() != 2 {
            return Err(Error::InvalidConfig(format!(
                "slice axes must be one coordinate of z1 then one of z2, got {} and {}",
                self.axis_1, self.axis_2
            )));
        }
        for (lo, hi) in [self.range_1, self.range_2] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidConfig(format!(
                    "slice range needs lo < hi, got {lo}:{hi}"
                )));
            }
        }
        if self.points_1 < 2 || self.points_2 < 2 {
            return Err(Error::InvalidConfig(
                "slice needs at least 2 points per axis".into(),
            ));
        }
        if !self.fixed_values.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidConfig(
                "fixed slice coordinates must be finite".into(),
            ));
        }
        Ok(())
    }

    fn sample(range: (f64, f64), points: usize, i: usize) -> f64 {
        range.0 + (range.1 - range.0) * i as f64 / (points - 1) as f64
    }

    pub fn value_1(&self, i: usize) -> f64 {
        Self::sample(self.range_1, self.points_1, i)
    }

    pub fn value_2(&self, j: usize) -> f64 {
        Self::sample(self.range_2, self.points_2, j)
    }

    /// Phase-space point at grid index `(i, j)`.
    pub fn point(&self, i: usize, j: usize) -> (C64, C64) {
        let a = self.value_1(i);
        let b = self.value_2(j);
        let z1 = match self.axis_1 {
            SliceAxis::ReZ1 => C64::new(a, self.fixed_values[0]),
            _ => C64::new(self.fixed_values[0], a),
        };
        let z2 = match self.axis_2 {
            SliceAxis::ReZ2 => C64::new(b, self.fixed_values[1]),
            _ => C64::new(self.fixed_values[1], b),
        };
        (z1, z2)
    }
}

/// Q sampled on a slice; `values[[i, j]]` sits at `slice.point(i, j)`.
#[derive(Debug, Clone)]
pub struct QGrid {
    pub slice: PhaseSpaceSlice,
    pub values: Array2<f64>,
    pub spec: PaecsSpec,
}

impl QGrid {
    /// Interior grid points strictly greater than all eight neighbours.
    pub fn local_maxima(&self) -> Vec<(usize, usize)> {
        let (ni, nj) = self.values.dim();
        let mut out = Vec::new();
        for i in 1..ni.saturating_sub(1) {
            for j in 1..nj.saturating_sub(1) {
                let v = self.values[[i, j]];
                let is_max = (-1i64..=1).all(|di| {
                    (-1i64..=1).all(|dj| {
                        (di == 0 && dj == 0)
                            || v > self.values[[(i as i64 + di) as usize, (j as i64 + dj) as usize]]
                    })
                });
                if is_max {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn q_grid(spec: &PaecsSpec, slice: &PhaseSpaceSlice) -> Result<QGrid> {
    slice.validate()?;
    let q = HusimiQ::new(spec)?;
    let rows: Vec<Vec<f64>> = (0..slice.points_1)
        .into_par_iter()
        .map(|i| {
            (0..slice.points_2)
                .map(|j| {
                    let (z1, z2) = slice.point(i, j);
                    q.eval(z1, z2)
                })
                .collect()
        })
        .collect();
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    let values = Array2::from_shape_vec((slice.points_1, slice.points_2), flat)
        .expect("grid shape matches row count");
    Ok(QGrid {
        slice: slice.clone(),
        values,
        spec: *spec,
    })
}

/// Outcome of the four-dimensional quadrature of Q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QNormalization {
    pub estimate: f64,
    pub half_width: f64,
    pub nodes_per_axis: usize,
    /// Set when `|estimate - 1|` exceeds [`Q_NORMALIZATION_FLAG`].
    pub flagged: bool,
}

/// Half-width `|α| + sqrt(m + n) + 6` of the integration cube.
pub fn quadrature_half_width(spec: &PaecsSpec) -> f64 {
    spec.alpha.norm() + ((spec.m + spec.n) as f64).sqrt() + 6.0
}

pub fn q_normalization(spec: &PaecsSpec, nodes_per_axis: usize) -> Result<QNormalization> {
    q_normalization_of(&HusimiQ::new(spec)?, nodes_per_axis)
}

/// `∫ Q d²z1 d²z2` over `[-L, L]⁴` with `d²z = d(Re z) d(Im z)`.
pub fn q_normalization_of(q: &HusimiQ, nodes_per_axis: usize) -> Result<QNormalization> {
    if nodes_per_axis < 16 {
        return Err(Error::Domain(format!(
            "Q quadrature needs at least 16 nodes per axis, got {nodes_per_axis}"
        )));
    }
    let half_width = quadrature_half_width(q.spec());
    let rule = GaussLegendre::on_interval(nodes_per_axis, -half_width, half_width);
    let n = nodes_per_axis;
    let estimate: f64 = (0..n * n)
        .into_par_iter()
        .map(|ab| {
            let (a, b) = (ab / n, ab % n);
            let z1 = C64::new(rule.nodes[a], rule.nodes[b]);
            let w1 = rule.weights[a] * rule.weights[b];
            let mut inner = 0.0;
            for (c, &wc) in rule.weights.iter().enumerate() {
                for (d, &wd) in rule.weights.iter().enumerate() {
                    inner += wc * wd * q.eval(z1, C64::new(rule.nodes[c], rule.nodes[d]));
                }
            }
            w1 * inner
        })
        .sum();
    Ok(QNormalization {
        estimate,
        half_width,
        nodes_per_axis,
        flagged: (estimate - 1.0).abs() > Q_NORMALIZATION_FLAG,
    })
}
