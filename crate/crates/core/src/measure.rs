//! The three measure classes and their Fourier transforms.
//!
//! Transforms use the convention `μ̂(ξ) = ∫ e^{2πiξx} dμ(x)`, so the transform of
//! a finite atomic measure is its mask polynomial `Σ p_c e^{2πicξ}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest atom count `approximate_atoms` will materialize by default.
pub const DEFAULT_ATOM_CAP: u128 = 1 << 20;

/// Truncation depth and zero tolerance for infinite-product evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPolicy {
    pub truncation_depth: u32,
    pub tolerance: f64,
}

impl EvalPolicy {
    pub fn new(truncation_depth: u32, tolerance: f64) -> Result<Self> {
        if truncation_depth == 0 {
            return Err(Error::InvalidPolicy(
                "truncation depth must be at least 1".into(),
            ));
        }
        if !(tolerance > 0.0) {
            return Err(Error::InvalidPolicy("tolerance must be positive".into()));
        }
        Ok(EvalPolicy {
            truncation_depth,
            tolerance,
        })
    }
}

impl Default for EvalPolicy {
    fn default() -> Self {
        EvalPolicy {
            truncation_depth: 40,
            tolerance: 1e-10,
        }
    }
}

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// A finite probability measure `Σ p_c δ_c` with rational atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AtomicDoc", into = "AtomicDoc")]
pub struct AtomicMeasure {
    atoms: Vec<Rational>,
    weights: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct AtomicDoc {
    #[serde(with = "rational::serde_vec")]
    atoms: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    weights: Vec<Rational>,
}

impl TryFrom<AtomicDoc> for AtomicMeasure {
    type Error = Error;
    fn try_from(doc: AtomicDoc) -> Result<Self> {
        AtomicMeasure::new(doc.atoms, doc.weights)
    }
}

impl From<AtomicMeasure> for AtomicDoc {
    fn from(m: AtomicMeasure) -> Self {
        AtomicDoc {
            atoms: m.atoms,
            weights: m.weights,
        }
    }
}

impl AtomicMeasure {
    /// Atoms are sorted together with their weights. Rejects duplicate atoms,
    /// nonpositive weights and weights that do not sum exactly to 1.
    pub fn new(atoms: Vec<Rational>, weights: Vec<Rational>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        if atoms.len() != weights.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} atoms but {} weights",
                atoms.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidMeasure(format!("weight {w} is not positive")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, not 1"
            )));
        }
        let mut pairs: Vec<_> = atoms.into_iter().zip(weights).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidMeasure("atoms are not distinct".into()));
        }
        let (atoms, weights) = pairs.into_iter().unzip();
        Ok(AtomicMeasure { atoms, weights })
    }

    pub fn uniform(atoms: Vec<Rational>) -> Result<Self> {
        let w = Rational::new(BigInt::one(), BigInt::from(atoms.len().max(1)));
        let weights = vec![w; atoms.len()];
        Self::new(atoms, weights)
    }

    /// Integer discrete measure: nonnegative integer atoms containing 0.
    pub fn integer(atoms: &[i64], weights: Vec<Rational>) -> Result<Self> {
        if atoms.iter().any(|&a| a < 0) {
            return Err(Error::InvalidMeasure("atoms must be nonnegative".into()));
        }
        if !atoms.contains(&0) {
            return Err(Error::InvalidMeasure("0 must be an atom".into()));
        }
        Self::new(atoms.iter().map(|&a| rational::int(a)).collect(), weights)
    }

    pub fn uniform_integer(atoms: &[i64]) -> Result<Self> {
        let w = Rational::new(BigInt::one(), BigInt::from(atoms.len().max(1)));
        Self::integer(atoms, vec![w; atoms.len()])
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    /// Atoms as machine integers, when every atom is an integer that fits.
    pub fn integer_atoms(&self) -> Option<Vec<i64>> {
        self.atoms
            .iter()
            .map(|a| {
                if rational::is_integer(a) {
                    a.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// The measure pushed forward by `x ↦ q·x`.
    pub fn dilated(&self, q: u64) -> AtomicMeasure {
        let q = rational::int(q as i64);
        AtomicMeasure {
            atoms: self.atoms.iter().map(|a| a * &q).collect(),
            weights: self.weights.clone(),
        }
    }

    /// Convolution of two atomic measures; coinciding atoms are merged.
    pub fn convolve(&self, other: &AtomicMeasure) -> AtomicMeasure {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (a, p) in self.atoms.iter().zip(&self.weights) {
            for (b, r) in other.atoms.iter().zip(&other.weights) {
                *acc.entry(a + b).or_insert_with(Rational::zero) += p * r;
            }
        }
        let (atoms, weights) = acc.into_iter().unzip();
        AtomicMeasure { atoms, weights }
    }

    /// Mask polynomial `Σ p_c e^{2πicx}` at an exact rational point.
    ///
    /// Phases `c·x` are reduced modulo 1 exactly and atoms sharing a phase are
    /// pooled before any floating point work, so integer `x` on integer atoms
    /// returns exactly 1.
    pub fn mask_eval(&self, x: &Rational) -> Complex64 {
        let mut pooled: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (c, p) in self.atoms.iter().zip(&self.weights) {
            *pooled
                .entry(rational::frac(&(c * x)))
                .or_insert_with(Rational::zero) += p;
        }
        pooled
            .iter()
            .map(|(ph, w)| cis(rational::phase(ph)) * rational::to_f64(w))
            .sum()
    }

    /// Mask polynomial at a real point.
    pub fn mask_eval_real(&self, x: f64) -> Complex64 {
        self.mask_eval_shifted(x, &Rational::zero())
    }

    /// Mask polynomial at `x + shift`; the `c·shift` part of every phase is
    /// reduced exactly.
    pub fn mask_eval_shifted(&self, x: f64, shift: &Rational) -> Complex64 {
        self.atoms
            .iter()
            .zip(&self.weights)
            .map(|(c, p)| {
                let exact = rational::to_f64(&rational::frac(&(c * shift)));
                let real = (rational::to_f64(c) * x).rem_euclid(1.0);
                cis(std::f64::consts::TAU * (exact + real)) * rational::to_f64(p)
            })
            .sum()
    }
}

/// The self-similar measure `μ = (1/#A) Σ_a μ(n· − a)` with digits `A ∋ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SelfSimilarDoc", into = "SelfSimilarDoc")]
pub struct SelfSimilarMeasure {
    digits: Vec<u64>,
    scale: u64,
}

#[derive(Serialize, Deserialize)]
struct SelfSimilarDoc {
    digits: Vec<u64>,
    scale: u64,
}

impl TryFrom<SelfSimilarDoc> for SelfSimilarMeasure {
    type Error = Error;
    fn try_from(doc: SelfSimilarDoc) -> Result<Self> {
        SelfSimilarMeasure::new(doc.digits, doc.scale)
    }
}

impl From<SelfSimilarMeasure> for SelfSimilarDoc {
    fn from(m: SelfSimilarMeasure) -> Self {
        SelfSimilarDoc {
            digits: m.digits,
            scale: m.scale,
        }
    }
}

impl SelfSimilarMeasure {
    pub fn new(mut digits: Vec<u64>, scale: u64) -> Result<Self> {
        if scale < 2 {
            return Err(Error::InvalidMeasure(format!("scale {scale} < 2")));
        }
        digits.sort_unstable();
        if digits.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMeasure("digits are not distinct".into()));
        }
        if digits.first() != Some(&0) {
            return Err(Error::InvalidMeasure("0 must be a digit".into()));
        }
        if digits.len() as u64 > scale {
            return Err(Error::InvalidMeasure(format!(
                "{} digits exceed scale {scale}",
                digits.len()
            )));
        }
        Ok(SelfSimilarMeasure { digits, scale })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn max_digit(&self) -> u64 {
        *self.digits.last().expect("digit set is nonempty")
    }

    /// Support is `[0, max(A)/(n−1)]`.
    pub fn support_in_unit_interval(&self) -> bool {
        self.max_digit() <= self.scale - 1
    }

    fn digit_mask_shifted(&self, x: f64, shift: &Rational, level: u32) -> Complex64 {
        let denom = BigInt::from(self.scale).pow(level);
        let scale_f = (self.scale as f64).powi(level as i32);
        let inv = 1.0 / self.digits.len() as f64;
        self.digits
            .iter()
            .map(|&a| {
                let exact = if shift.is_zero() {
                    0.0
                } else {
                    let t = shift * Rational::new(BigInt::from(a), denom.clone());
                    rational::to_f64(&rational::frac(&t))
                };
                let real = (a as f64 * x / scale_f).rem_euclid(1.0);
                cis(std::f64::consts::TAU * (exact + real)) * inv
            })
            .sum()
    }

    /// Certified bound on `|∏_{j>J} m(ξ/n^j) − 1|` from `|m(t) − 1| ≤ 2π·max(A)·|t|`.
    pub fn tail_bound(&self, xi_abs: f64, depth: u32) -> f64 {
        let n = self.scale as f64;
        let expo = std::f64::consts::TAU * self.max_digit() as f64 * xi_abs
            / (n.powi(depth as i32) * (n - 1.0));
        expo.exp_m1()
    }

    /// `∏_{j=1}^{J} m_A(ξ/n^j)` and the certified tail bound.
    pub fn ft(&self, xi: f64, policy: &EvalPolicy) -> (Complex64, f64) {
        self.ft_shifted(xi, &Rational::zero(), policy)
    }

    /// Transform at `x + shift` with the rational part of each phase exact.
    pub fn ft_shifted(&self, x: f64, shift: &Rational, policy: &EvalPolicy) -> (Complex64, f64) {
        if x == 0.0 && shift.is_zero() {
            return (Complex64::new(1.0, 0.0), 0.0);
        }
        let mut prod = Complex64::new(1.0, 0.0);
        for j in 1..=policy.truncation_depth {
            prod *= self.digit_mask_shifted(x, shift, j);
        }
        let xi_abs = (x + rational::to_f64(shift)).abs();
        (prod, self.tail_bound(xi_abs, policy.truncation_depth))
    }

    pub fn ft_exact(&self, xi: &Rational, policy: &EvalPolicy) -> (Complex64, f64) {
        self.ft_shifted(0.0, xi, policy)
    }

    /// The `J`-th iterate of the self-similar identity: uniform on
    /// `{Σ_{j≤J} a_j n^{−j}}` (coinciding points pooled).
    pub fn approximate_atoms(&self, depth: u32) -> Result<AtomicMeasure> {
        self.approximate_atoms_capped(depth, DEFAULT_ATOM_CAP)
    }

    pub fn approximate_atoms_capped(&self, depth: u32, cap: u128) -> Result<AtomicMeasure> {
        if depth == 0 {
            return Err(Error::Precondition("depth must be at least 1".into()));
        }
        let requested = (self.digits.len() as u128)
            .checked_pow(depth)
            .unwrap_or(u128::MAX);
        if requested > cap {
            return Err(Error::SizeCap { requested, cap });
        }
        let mut points: BTreeMap<Rational, u64> = BTreeMap::new();
        points.insert(Rational::zero(), 1);
        let mut denom = BigInt::one();
        for _ in 0..depth {
            denom *= self.scale;
            let mut next = BTreeMap::new();
            for (x, count) in &points {
                for &a in &self.digits {
                    *next
                        .entry(x + Rational::new(BigInt::from(a), denom.clone()))
                        .or_insert(0) += count;
                }
            }
            points = next;
        }
        let total = BigInt::from(requested);
        let (atoms, weights) = points
            .into_iter()
            .map(|(x, c)| (x, Rational::new(BigInt::from(c), total.clone())))
            .unzip();
        Ok(AtomicMeasure { atoms, weights })
    }
}

/// `(e^{2πiξ} − 1)/(2πiξ)`, the transform of Lebesgue measure on `[0, 1]`.
pub fn lebesgue_ft(xi: f64) -> Complex64 {
    if xi == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let t = std::f64::consts::PI * xi;
    cis(t) * (t.sin() / t)
}

/// As `lebesgue_ft`, exactly 0 at nonzero integers.
pub fn lebesgue_ft_exact(xi: &Rational) -> Complex64 {
    if rational::is_integer(xi) && !xi.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    lebesgue_ft(rational::to_f64(xi))
}

/// The continuous factor `ν` of a convolution, supported in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ContinuousFactor {
    Lebesgue,
    #[serde(rename = "selfsimilar")]
    SelfSimilar(SelfSimilarMeasure),
}

impl ContinuousFactor {
    pub fn ft_shifted(&self, x: f64, shift: &Rational, policy: &EvalPolicy) -> (Complex64, f64) {
        match self {
            ContinuousFactor::Lebesgue => {
                if x == 0.0 {
                    (lebesgue_ft_exact(shift), 0.0)
                } else {
                    (lebesgue_ft(x + rational::to_f64(shift)), 0.0)
                }
            }
            ContinuousFactor::SelfSimilar(m) => m.ft_shifted(x, shift, policy),
        }
    }
}

/// `μ = η_q ∗ ν` with `η_q` the discrete factor dilated by `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConvolutionDoc", into = "ConvolutionDoc")]
pub struct ConvolutionMeasure {
    discrete: AtomicMeasure,
    q: u64,
    continuous: ContinuousFactor,
}

#[derive(Serialize, Deserialize)]
struct ConvolutionDoc {
    #[serde(with = "rational::serde_vec")]
    atoms: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    weights: Vec<Rational>,
    q: u64,
    nu: ContinuousFactor,
}

impl TryFrom<ConvolutionDoc> for ConvolutionMeasure {
    type Error = Error;
    fn try_from(doc: ConvolutionDoc) -> Result<Self> {
        ConvolutionMeasure::new(AtomicMeasure::new(doc.atoms, doc.weights)?, doc.q, doc.nu)
    }
}

impl From<ConvolutionMeasure> for ConvolutionDoc {
    fn from(m: ConvolutionMeasure) -> Self {
        ConvolutionDoc {
            atoms: m.discrete.atoms,
            weights: m.discrete.weights,
            q: m.q,
            nu: m.continuous,
        }
    }
}

impl ConvolutionMeasure {
    pub fn new(discrete: AtomicMeasure, q: u64, continuous: ContinuousFactor) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidMeasure("dilation q must be positive".into()));
        }
        match discrete.integer_atoms() {
            Some(a) if a.iter().all(|&c| c >= 0) => {}
            _ => {
                return Err(Error::InvalidMeasure(
                    "discrete factor needs nonnegative integer atoms".into(),
                ))
            }
        }
        if let ContinuousFactor::SelfSimilar(m) = &continuous {
            if !m.support_in_unit_interval() {
                return Err(Error::InvalidMeasure(format!(
                    "self-similar support [0, {}/{}] leaves [0, 1]",
                    m.max_digit(),
                    m.scale() - 1
                )));
            }
        }
        Ok(ConvolutionMeasure {
            discrete,
            q,
            continuous,
        })
    }

    pub fn discrete(&self) -> &AtomicMeasure {
        &self.discrete
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn continuous(&self) -> &ContinuousFactor {
        &self.continuous
    }

    /// The dilated discrete factor `η_q`.
    pub fn dilated_discrete(&self) -> AtomicMeasure {
        self.discrete.dilated(self.q)
    }

    pub fn ft(&self, xi: f64, policy: &EvalPolicy) -> (Complex64, f64) {
        self.ft_shifted(xi, &Rational::zero(), policy)
    }

    /// `m_{qC,P}(ξ)·ν̂(ξ)`; the error bound is scaled by `|m|`.
    pub fn ft_shifted(&self, x: f64, shift: &Rational, policy: &EvalPolicy) -> (Complex64, f64) {
        let eta = self.dilated_discrete();
        let m = if x == 0.0 {
            eta.mask_eval(shift)
        } else {
            eta.mask_eval_shifted(x, shift)
        };
        let (nu, err) = self.continuous.ft_shifted(x, shift, policy);
        (m * nu, m.norm() * err)
    }

    /// Atomic stand-in with the continuous factor replaced by its depth-`J`
    /// iterate. Lebesgue factors have no atomic iterate and are rejected.
    pub fn approximate_atoms(&self, depth: u32) -> Result<AtomicMeasure> {
        match &self.continuous {
            ContinuousFactor::SelfSimilar(m) => Ok(self
                .dilated_discrete()
                .convolve(&m.approximate_atoms(depth)?)),
            ContinuousFactor::Lebesgue => Err(Error::Precondition(
                "Lebesgue factor has no atomic approximation".into(),
            )),
        }
    }
}

/// Any of the three measure classes; this is the JSON document form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Measure {
    Atomic(AtomicMeasure),
    #[serde(rename = "selfsimilar")]
    SelfSimilar(SelfSimilarMeasure),
    Convolution(ConvolutionMeasure),
}

impl Measure {
    /// `μ̂(x + shift)` with certified truncation error (0 for exact classes).
    pub fn ft_shifted(&self, x: f64, shift: &Rational, policy: &EvalPolicy) -> (Complex64, f64) {
        match self {
            Measure::Atomic(m) => {
                let v = if x == 0.0 {
                    m.mask_eval(shift)
                } else {
                    m.mask_eval_shifted(x, shift)
                };
                (v, 0.0)
            }
            Measure::SelfSimilar(m) => m.ft_shifted(x, shift, policy),
            Measure::Convolution(m) => m.ft_shifted(x, shift, policy),
        }
    }

    pub fn ft(&self, xi: f64, policy: &EvalPolicy) -> (Complex64, f64) {
        self.ft_shifted(xi, &Rational::zero(), policy)
    }

    pub fn ft_exact(&self, xi: &Rational, policy: &EvalPolicy) -> (Complex64, f64) {
        self.ft_shifted(0.0, xi, policy)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Measure::Atomic(_))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measures always serialize")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn cantor4() -> SelfSimilarMeasure {
        SelfSimilarMeasure::new(vec![0, 2], 4).unwrap()
    }

    #[test]
    fn mask_vanishes_at_one_third_on_three_points() {
        let m = AtomicMeasure::uniform_integer(&[0, 1, 2]).unwrap();
        assert!(m.mask_eval(&ratio(1, 3)).norm() < 1e-15);
    }

    #[test]
    fn mask_is_one_at_integers() {
        let m = AtomicMeasure::integer(&[0, 1, 5], vec![ratio(1, 3), ratio(1, 6), ratio(1, 2)])
            .unwrap();
        for k in -5..5 {
            assert_eq!(m.mask_eval(&int(k)), Complex64::new(1.0, 0.0));
        }
        assert_eq!(m.mask_eval(&int(0)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn weighted_mask_at_one_half() {
        let m = AtomicMeasure::integer(&[0, 1], vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let v = m.mask_eval(&ratio(1, 2));
        assert!(close(v.re, -1.0 / 3.0, 1e-15) && close(v.im, 0.0, 1e-15));
    }

    #[test]
    fn rejects_bad_measures() {
        assert!(AtomicMeasure::new(vec![int(0), int(1)], vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(AtomicMeasure::new(vec![int(0), int(0)], vec![ratio(1, 2), ratio(1, 2)]).is_err());
        assert!(AtomicMeasure::new(vec![int(0), int(1)], vec![int(1), int(0)]).is_err());
        assert!(AtomicMeasure::uniform_integer(&[1, 2]).is_err());
        assert!(SelfSimilarMeasure::new(vec![0, 1, 2], 2).is_err());
        assert!(SelfSimilarMeasure::new(vec![1, 2], 4).is_err());
        assert!(SelfSimilarMeasure::new(vec![0, 1], 1).is_err());
        assert!(EvalPolicy::new(0, 1e-10).is_err());
        assert!(EvalPolicy::new(3, 0.0).is_err());
    }

    #[test]
    fn quarter_cantor_vanishes_at_one() {
        let (v, err) = cantor4().ft(1.0, &EvalPolicy::default());
        assert!(v.norm() <= 1e-15 + err);
        let (v, err) = cantor4().ft_exact(&int(1), &EvalPolicy::default());
        assert!(v.norm() < 1e-15, "{v}");
        assert!(err < 1e-20);
    }

    #[test]
    fn transform_at_zero_is_exactly_one() {
        let (v, err) = cantor4().ft(0.0, &EvalPolicy::default());
        assert_eq!(v, Complex64::new(1.0, 0.0));
        assert_eq!(err, 0.0);
    }

    #[test]
    fn quarter_cantor_matches_cosine_product() {
        let xi: f64 = 1.0 / 3.0;
        for depth in [1, 5, 20, 40] {
            let policy = EvalPolicy::new(depth, 1e-10).unwrap();
            let (v, err) = cantor4().ft(xi, &policy);
            let closed: f64 = (1..=depth)
                .map(|j| (std::f64::consts::TAU * xi / 4f64.powi(j as i32)).cos())
                .product();
            assert!((v.norm() - closed.abs()).abs() <= err + 1e-14);
        }
    }

    #[test]
    fn tail_bound_decreases_with_depth() {
        let m = cantor4();
        let mut prev = f64::INFINITY;
        for depth in 1..40 {
            let b = m.tail_bound(7.5, depth);
            assert!(b < prev);
            prev = b;
        }
        assert!(m.tail_bound(100.0, 40) < 1e-20);
    }

    #[test]
    fn approximate_atoms_enumerates_digit_strings() {
        let a1 = cantor4().approximate_atoms(1).unwrap();
        assert_eq!(a1.atoms(), &[int(0), ratio(1, 2)]);
        assert_eq!(a1.weights(), &[ratio(1, 2), ratio(1, 2)]);
        let a2 = cantor4().approximate_atoms(2).unwrap();
        assert_eq!(a2.atoms(), &[int(0), ratio(1, 8), ratio(1, 2), ratio(5, 8)]);
        let b3 = SelfSimilarMeasure::new(vec![0, 1], 2)
            .unwrap()
            .approximate_atoms(3)
            .unwrap();
        assert_eq!(b3.atoms(), (0..8).map(|k| ratio(k, 8)).collect::<Vec<_>>());
        assert!(b3.weights().iter().all(|w| *w == ratio(1, 8)));
        assert!(matches!(
            cantor4().approximate_atoms_capped(11, 1024),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn trivial_discrete_factor_is_identity() {
        let nu = ContinuousFactor::SelfSimilar(SelfSimilarMeasure::new(vec![0, 1], 4).unwrap());
        let conv =
            ConvolutionMeasure::new(AtomicMeasure::uniform_integer(&[0]).unwrap(), 3, nu.clone())
                .unwrap();
        let p = EvalPolicy::default();
        for xi in [0.3, 1.7, -2.25] {
            let (a, _) = conv.ft(xi, &p);
            let (b, _) = nu.ft_shifted(xi, &Rational::zero(), &p);
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn two_stacked_intervals_vanish_at_one_half() {
        let conv = ConvolutionMeasure::new(
            AtomicMeasure::uniform_integer(&[0, 1]).unwrap(),
            1,
            ContinuousFactor::Lebesgue,
        )
        .unwrap();
        let (v, err) = conv.ft(0.5, &EvalPolicy::default());
        assert!(v.norm() < 1e-15);
        assert_eq!(err, 0.0);
    }

    #[test]
    fn lebesgue_transform_closed_form() {
        let v = lebesgue_ft(0.25);
        // (e^{iπ/2} − 1)/(iπ/2) = (i − 1)/(iπ/2)
        let expect = (Complex64::new(-1.0, 1.0)) / Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
        assert!((v - expect).norm() < 1e-15);
        assert_eq!(lebesgue_ft_exact(&int(3)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn json_documents_round_trip() {
        let docs = [
            r#"{"type":"atomic","atoms":["0","1/3"],"weights":["1/3","2/3"]}"#,
            r#"{"type":"selfsimilar","digits":[0,2],"scale":4}"#,
            r#"{"type":"convolution","atoms":["0","1"],"weights":["1/3","2/3"],"q":1,"nu":{"type":"selfsimilar","digits":[0,1],"scale":4}}"#,
            r#"{"type":"convolution","atoms":["0","2"],"weights":["1/2","1/2"],"q":3,"nu":{"type":"lebesgue"}}"#,
        ];
        for d in docs {
            let m = Measure::from_json(d).unwrap();
            assert_eq!(m.to_json(), d);
        }
        assert!(
            Measure::from_json(r#"{"type":"atomic","atoms":["0"],"weights":["1/2"]}"#).is_err()
        );
        assert!(Measure::from_json(
            r#"{"type":"convolution","atoms":["0"],"weights":["1"],"q":1,"nu":{"type":"selfsimilar","digits":[0,5],"scale":4}}"#
        )
        .is_err());
    }
}
