//! Orthonormal-spectrum certification: bi-zero sets, closed-form classifiers
//! for three and four atoms, self-similar spectrum towers, exact zero-set
//! membership and Jorgensen–Pedersen scans.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{self, divides_cyclotomic, euler_phi, gcd_of};
use crate::error::{Error, Result};
use crate::freq::FrequencySet;
use crate::measure::{AtomicMeasure, ContinuousFactor, EvalPolicy, Measure, SelfSimilarMeasure};
use crate::rational::{self, Rational};

/// Every rational zero of the uniform mask `m_A` in `(0, 1)`: the points
/// `k/d` in lowest terms with `Φ_d | P_A`. Only `d` with `φ(d) ≤ max(A)` can
/// qualify.
pub fn rational_zeros(set: &[u64]) -> Vec<Rational> {
    let set = cyclotomic::normalize(set);
    let max = set.last().copied().unwrap_or(0);
    let mut out = Vec::new();
    // φ(d) ≥ √(d/2), so φ(d) ≤ max forces d ≤ 2·max².
    for d in 2..=(2 * max * max).max(2) {
        if euler_phi(d) <= max && divides_cyclotomic(&set, d) {
            for k in (1..d).filter(|k| k.gcd(&d) == 1) {
                out.push(rational::ratio(k as i64, d as i64));
            }
        }
    }
    out.sort();
    out
}

/// `{k/n : 1 ≤ k < n, Φ_{n/gcd(k,n)} | P_A}`.
pub fn rational_mask_zeros(set: &[u64], n: u64) -> Vec<Rational> {
    let set = cyclotomic::normalize(set);
    (1..n)
        .filter(|&k| divides_cyclotomic(&set, n / k.gcd(&n)))
        .map(|k| rational::ratio(k as i64, n as i64))
        .collect()
}

/// `𝒵 = ⋃_{j≥1} n^j (Z + ℤ)` for a finite base set `Z ⊂ (0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSetDescriptor {
    #[serde(with = "rational::serde_vec")]
    pub base: Vec<Rational>,
    pub scale: u64,
    /// Every zero of the mask (not only the rational ones) is in `base`,
    /// which holds when `P_A` is a product of cyclotomic polynomials.
    pub complete: bool,
}

impl ZeroSetDescriptor {
    pub fn new(mut base: Vec<Rational>, scale: u64, complete: bool) -> Result<Self> {
        if scale < 2 {
            return Err(Error::Precondition(format!("scale {scale} < 2")));
        }
        if base
            .iter()
            .any(|z| !z.is_positive() || *z >= Rational::one())
        {
            return Err(Error::Precondition("base zeros must lie in (0, 1)".into()));
        }
        base.sort();
        base.dedup();
        Ok(ZeroSetDescriptor {
            base,
            scale,
            complete,
        })
    }

    /// Zero set of `μ̂` for a self-similar measure, built from the rational
    /// zeros of its uniform digit mask.
    pub fn for_selfsimilar(mu: &SelfSimilarMeasure) -> Self {
        let digits = mu.digits();
        let mut rest = cyclotomic::digit_polynomial(digits);
        let max = *digits.last().unwrap_or(&0);
        for d in 2..=(2 * max * max).max(2) {
            if euler_phi(d) > max {
                continue;
            }
            let phi = cyclotomic::cyclotomic_poly(d);
            while let Some((q, r)) = rest.div_rem(&phi) {
                if !r.is_zero() {
                    break;
                }
                rest = q;
            }
        }
        let complete = rest.degree() == Some(0);
        ZeroSetDescriptor {
            base: rational_zeros(digits),
            scale: mu.scale(),
            complete,
        }
    }

    /// `(j, z)` with `x ∈ n^j (z + ℤ)`, if any.
    ///
    /// Terminates because `|x|/n^j` eventually falls below the distance from
    /// the base set to the integers.
    pub fn witness(&self, x: &Rational) -> Option<(u32, Rational)> {
        if self.base.is_empty() || x.is_zero() {
            return None;
        }
        let lo = self.base.first().unwrap().clone();
        let hi = Rational::one() - self.base.last().unwrap();
        let gap = lo.min(hi);
        let n = BigInt::from(self.scale);
        let mut y = x.clone();
        let mut j = 0;
        loop {
            y /= Rational::from_integer(n.clone());
            j += 1;
            let f = rational::frac(&y);
            if self.base.binary_search(&f).is_ok() {
                return Some((j, f));
            }
            if y.abs() < gap {
                return None;
            }
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.witness(x).is_some()
    }

    /// All integers of the zero set with `|λ| ≤ bound`, enumerated from the
    /// descriptor (independent of `contains`).
    pub fn integers_within(&self, bound: u64) -> Vec<i64> {
        let mut out = BTreeSet::new();
        let bound = bound as i128;
        let mut scale_pow: i128 = 1;
        loop {
            scale_pow *= self.scale as i128;
            let mut any_reachable = false;
            for z in &self.base {
                let (a, b) = (z.numer().to_i128().unwrap(), z.denom().to_i128().unwrap());
                let dist = a.min(b - a);
                if scale_pow * dist <= bound * b {
                    any_reachable = true;
                }
                if scale_pow % b != 0 {
                    continue;
                }
                // x = scale_pow·(a/b + k) with |x| ≤ bound.
                let base = scale_pow / b * a;
                let kmin = (-bound - base).div_euclid(scale_pow) - 1;
                let kmax = (bound - base).div_euclid(scale_pow) + 1;
                for k in kmin..=kmax {
                    let x = base + scale_pow * k;
                    if x.abs() <= bound {
                        out.insert(x as i64);
                    }
                }
            }
            if !any_reachable {
                break;
            }
        }
        out.into_iter().collect()
    }
}

pub fn zeroset_membership(desc: &ZeroSetDescriptor, x: &Rational) -> bool {
    desc.contains(x)
}

/// Why `μ̂(λ_j − λ_i)` vanishes for one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairEvidence {
    /// `Φ_denominator` divides the digit polynomial.
    Cyclotomic {
        #[serde(with = "rational::serde_one")]
        difference: Rational,
        denominator: u64,
    },
    /// Numerically small mask value.
    Numeric {
        #[serde(with = "rational::serde_one")]
        difference: Rational,
        modulus: f64,
        tolerance: f64,
    },
    /// Difference lies in `n^level (base_zero + ℤ)`.
    ZeroSet {
        #[serde(with = "rational::serde_one")]
        difference: Rational,
        level: u32,
        #[serde(with = "rational::serde_one")]
        base_zero: Rational,
    },
    /// Nonzero integer: a zero of the Lebesgue transform on `[0, 1]`.
    Lebesgue {
        #[serde(with = "rational::serde_one")]
        difference: Rational,
    },
}

/// `Λ ∋ 0` with every pairwise difference certified to lie in `𝒵_μ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiZeroCertificate {
    pub frequencies: FrequencySet,
    pub evidence: Vec<PairEvidence>,
}

impl BiZeroCertificate {
    pub fn is_exact(&self) -> bool {
        !self
            .evidence
            .iter()
            .any(|e| matches!(e, PairEvidence::Numeric { .. }))
    }
}

/// Integer atoms shifted to start at 0, when the measure is uniform on them.
fn uniform_integer_support(m: &AtomicMeasure) -> Option<Vec<u64>> {
    if !m.is_uniform() {
        return None;
    }
    let atoms = m.integer_atoms()?;
    let lo = *atoms.iter().min()?;
    Some(atoms.iter().map(|&a| (a - lo) as u64).collect())
}

fn atomic_evidence(
    m: &AtomicMeasure,
    support: Option<&[u64]>,
    d: &Rational,
    policy: &EvalPolicy,
) -> std::result::Result<PairEvidence, f64> {
    match support {
        Some(set) => {
            let f = rational::frac(d);
            match f.denom().to_u64() {
                Some(b) if b > 1 && divides_cyclotomic(set, b) => Ok(PairEvidence::Cyclotomic {
                    difference: d.clone(),
                    denominator: b,
                }),
                _ => Err(m.mask_eval(d).norm()),
            }
        }
        None => {
            let modulus = m.mask_eval(d).norm();
            if modulus < policy.tolerance {
                Ok(PairEvidence::Numeric {
                    difference: d.clone(),
                    modulus,
                    tolerance: policy.tolerance,
                })
            } else {
                Err(modulus)
            }
        }
    }
}

fn continuous_evidence(
    nu: &ContinuousFactor,
    desc: Option<&ZeroSetDescriptor>,
    d: &Rational,
) -> Option<PairEvidence> {
    match nu {
        ContinuousFactor::Lebesgue => {
            (rational::is_integer(d) && !d.is_zero()).then(|| PairEvidence::Lebesgue {
                difference: d.clone(),
            })
        }
        ContinuousFactor::SelfSimilar(_) => {
            desc.and_then(|z| z.witness(d))
                .map(|(level, base_zero)| PairEvidence::ZeroSet {
                    difference: d.clone(),
                    level,
                    base_zero,
                })
        }
    }
}

/// Certifies that `Λ` is a bi-zero set of `μ`: every nonzero difference is a
/// zero of `μ̂`. Uniform integer-atom masks and self-similar factors are
/// decided exactly; other atomic masks use `|m| < policy.tolerance`.
pub fn is_bizero(
    freqs: &FrequencySet,
    mu: &Measure,
    policy: &EvalPolicy,
) -> Result<BiZeroCertificate> {
    if !freqs.contains_zero() {
        return Err(Error::Precondition("0 must belong to Λ".into()));
    }
    let pairs: Vec<(&Rational, &Rational)> = freqs.pairs().collect();
    let fail = |a: &Rational, b: &Rational, modulus: f64| Error::NotBiZero {
        left: rational::format(a),
        right: rational::format(b),
        modulus,
    };
    let evidence: Result<Vec<PairEvidence>> = match mu {
        Measure::Atomic(m) => {
            let support = uniform_integer_support(m);
            pairs
                .par_iter()
                .map(|(a, b)| {
                    let d = *b - *a;
                    atomic_evidence(m, support.as_deref(), &d, policy)
                        .map_err(|modulus| fail(a, b, modulus))
                })
                .collect()
        }
        Measure::SelfSimilar(m) => {
            let desc = ZeroSetDescriptor::for_selfsimilar(m);
            pairs
                .par_iter()
                .map(|(a, b)| {
                    let d = *b - *a;
                    match desc.witness(&d) {
                        Some((level, base_zero)) => Ok(PairEvidence::ZeroSet {
                            difference: d,
                            level,
                            base_zero,
                        }),
                        None => Err(fail(a, b, m.ft_exact(&d, policy).0.norm())),
                    }
                })
                .collect()
        }
        Measure::Convolution(c) => {
            let eta = c.dilated_discrete();
            let support = uniform_integer_support(&eta);
            let desc = match c.continuous() {
                ContinuousFactor::SelfSimilar(m) => Some(ZeroSetDescriptor::for_selfsimilar(m)),
                ContinuousFactor::Lebesgue => None,
            };
            pairs
                .par_iter()
                .map(|(a, b)| {
                    let d = *b - *a;
                    atomic_evidence(&eta, support.as_deref(), &d, policy)
                        .ok()
                        .or_else(|| continuous_evidence(c.continuous(), desc.as_ref(), &d))
                        .ok_or_else(|| fail(a, b, c.ft_shifted(0.0, &d, policy).0.norm()))
                })
                .collect()
        }
    };
    Ok(BiZeroCertificate {
        frequencies: freqs.clone(),
        evidence: evidence?,
    })
}

/// An atomic measure is spectral with spectrum `Λ` iff its weights are
/// uniform, `#Λ` equals the atom count and `Λ` is a bi-zero set.
pub fn spectral_discrete_check(mu: &AtomicMeasure, freqs: &FrequencySet) -> bool {
    if !mu.is_uniform() || freqs.len() != mu.len() || freqs.is_empty() {
        return false;
    }
    let shifted = freqs.translated(&-freqs.as_slice()[0].clone());
    is_bizero(
        &shifted,
        &Measure::Atomic(mu.clone()),
        &EvalPolicy::default(),
    )
    .is_ok()
}

fn require_normalized(set: &[u64], size: usize) -> Result<Vec<u64>> {
    let s = cyclotomic::normalize(set);
    if s.len() != size || s.len() != set.len() {
        return Err(Error::Precondition(format!(
            "expected {size} distinct atoms, got {set:?}"
        )));
    }
    if s[0] != 0 {
        return Err(Error::Precondition("0 must be an atom".into()));
    }
    let g = gcd_of(&s);
    if g != 1 {
        return Err(Error::NotNormalized(g));
    }
    Ok(s)
}

fn validated(set: &[u64], spectrum: FrequencySet) -> Result<Option<FrequencySet>> {
    let atoms = set.iter().map(|&c| rational::int(c as i64)).collect();
    let mu = Measure::Atomic(AtomicMeasure::uniform(atoms)?);
    let cert = is_bizero(&spectrum, &mu, &EvalPolicy::default())?;
    debug_assert!(cert.is_exact());
    Ok(Some(spectrum))
}

/// `{0, c₁, c₂}` with gcd 1 is spectral iff `c₂ ≡ 2c₁ (mod 3)`, with spectrum
/// `{0, 1/3, 2/3}`.
pub fn classify_3(set: &[u64]) -> Result<Option<FrequencySet>> {
    let s = require_normalized(set, 3)?;
    if (s[2] + 3 - (2 * s[1]) % 3) % 3 != 0 {
        return Ok(None);
    }
    validated(
        &s,
        FrequencySet::new(vec![
            rational::int(0),
            rational::ratio(1, 3),
            rational::ratio(2, 3),
        ]),
    )
}

/// `{0, c₁, c₂, c₃}` with gcd 1 is spectral iff, after rearrangement, `c₁` is
/// even, `c₂, c₃` are odd and `c₁` and `c₂ − c₃` share the 2-adic valuation
/// `α > 0`. The spectrum is `{0, 1/2, 1/(2a), (a+1)/(2a)}` with
/// `a = gcd(c₁, |c₂ − c₃|)`.
pub fn classify_4(set: &[u64]) -> Result<Option<FrequencySet>> {
    let s = require_normalized(set, 4)?;
    let nonzero = &s[1..];
    let evens: Vec<u64> = nonzero.iter().copied().filter(|c| c % 2 == 0).collect();
    if evens.len() != 1 {
        return Ok(None);
    }
    let even = evens[0];
    let odds: Vec<u64> = nonzero.iter().copied().filter(|c| c % 2 == 1).collect();
    let diff = odds[0].abs_diff(odds[1]);
    let alpha = rational::two_adic(even);
    if rational::two_adic(diff) != alpha {
        return Ok(None);
    }
    let a = even.gcd(&diff) as i64;
    validated(
        &s,
        FrequencySet::new(vec![
            rational::int(0),
            rational::ratio(1, 2),
            rational::ratio(1, 2 * a),
            rational::ratio(a + 1, 2 * a),
        ]),
    )
}

/// Spectral decision for the uniform measure on a finite integer set:
/// `Some(spectrum)`, or `None` when provably not spectral, together with the
/// name of the deciding check. Sizes other than three and four are decided
/// only when (T1) and (T2) hold; otherwise the result is `Unverifiable`.
pub fn decide_uniform(support: &[u64]) -> Result<(Option<FrequencySet>, &'static str)> {
    let base = cyclotomic::normalize(support);
    if base.len() != support.len() || base.is_empty() {
        return Err(Error::Precondition(
            "atoms must be distinct and nonempty".into(),
        ));
    }
    let lo = base[0];
    let shifted: Vec<u64> = base.iter().map(|c| c - lo).collect();
    let g = gcd_of(&shifted).max(1);
    let reduced: Vec<u64> = shifted.iter().map(|c| c / g).collect();
    let (spectrum, check) = match reduced.len() {
        1 => (Some(FrequencySet::singleton_zero()), "single atom"),
        3 => (classify_3(&reduced)?, "three-atom classifier"),
        4 => (classify_4(&reduced)?, "four-atom classifier"),
        _ if cyclotomic::check_t1(&reduced) && cyclotomic::check_t2(&reduced) => (
            Some(cyclotomic::laba_spectrum(&reduced)?),
            "(T1) and (T2) with the Łaba spectrum",
        ),
        k => {
            return Err(Error::Unverifiable(format!(
                "no decision procedure for {k} uniform atoms failing (T1)/(T2)"
            )))
        }
    };
    let scale = Rational::new(BigInt::one(), BigInt::from(g));
    Ok((spectrum.map(|s| s.scaled(&scale)), check))
}

/// The digit-level generator `Γ` of an integer spectrum tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumGenerator {
    pub gamma: FrequencySet,
    pub scale: u64,
    pub warnings: Vec<String>,
}

impl SpectrumGenerator {
    /// `Γ ⊕ nΓ ⊕ … ⊕ n^{J−1}Γ`.
    pub fn truncation(&self, depth: u32) -> FrequencySet {
        let mut out = FrequencySet::singleton_zero();
        let mut factor = Rational::one();
        for _ in 0..depth {
            out = out.sum_set(&self.gamma.scaled(&factor));
            factor *= Rational::from_integer(BigInt::from(self.scale));
        }
        out
    }
}

/// `Γ = n · S` for the Łaba spectrum `S` of the digit set, with residues
/// represented in `{−(n−2), …, n−2}`.
pub fn spectrum_generator(mu: &SelfSimilarMeasure) -> Result<SpectrumGenerator> {
    let n = mu.scale();
    cyclotomic::tiling_complement(mu.digits(), n)?;
    let laba = cyclotomic::laba_spectrum(mu.digits())?;
    let mut warnings = Vec::new();
    let g = gcd_of(mu.digits());
    if g != 1 {
        warnings.push(format!(
            "gcd of the digits is {g}; the tower need not be a complete spectrum"
        ));
    }
    let scale = rational::int(n as i64);
    let mut gamma = Vec::new();
    for s in laba.iter() {
        let t = s * &scale;
        if !rational::is_integer(&t) {
            return Err(Error::Precondition(format!("n·{s} is not an integer")));
        }
        let r = t
            .numer()
            .to_i64()
            .expect("residue fits")
            .rem_euclid(n as i64);
        gamma.push(if r > n as i64 - 2 { r - n as i64 } else { r });
    }
    if gamma.iter().any(|g| g.unsigned_abs() > n.saturating_sub(2)) {
        warnings.push(format!(
            "Γ does not fit in {{−{0}, …, {0}}}",
            n.saturating_sub(2)
        ));
    }
    Ok(SpectrumGenerator {
        gamma: FrequencySet::from_integers(gamma),
        scale: n,
        warnings,
    })
}

/// `Λ_J = Γ ⊕ nΓ ⊕ … ⊕ n^{J−1}Γ`, of cardinality `(#A)^J`.
pub fn selfsimilar_spectrum(mu: &SelfSimilarMeasure, depth: u32) -> Result<FrequencySet> {
    Ok(spectrum_generator(mu)?.truncation(depth))
}

/// One grid point of a Jorgensen–Pedersen scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JpPoint {
    pub x: f64,
    pub q: f64,
    pub tail_error: f64,
}

/// `Q(x) = Σ_{λ∈Λ} |μ̂(x + λ)|²` on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JpScan {
    pub points: Vec<JpPoint>,
    pub max_deviation: f64,
    pub max_q: f64,
    /// `Q ≤ 1 + ε` at every grid point (Bessel inequality).
    pub bessel_ok: bool,
    /// False when `Λ` truncates an infinite spectrum or `μ` is not finite:
    /// the scan is evidence, not a proof.
    pub exact: bool,
    pub label: String,
}

pub fn jp_scan(mu: &Measure, freqs: &FrequencySet, grid: &[f64], policy: &EvalPolicy) -> JpScan {
    let points: Vec<JpPoint> = grid
        .par_iter()
        .map(|&x| {
            let (q, tail_error) = freqs.iter().fold((0.0, 0.0), |(q, e), lam| {
                let (v, err) = mu.ft_shifted(x, lam, policy);
                let m = v.norm();
                (q + m * m, e + 2.0 * m * err + err * err)
            });
            JpPoint { x, q, tail_error }
        })
        .collect();
    let max_deviation = points.iter().map(|p| (p.q - 1.0).abs()).fold(0.0, f64::max);
    let max_q = points.iter().map(|p| p.q).fold(0.0, f64::max);
    let bessel_ok = points
        .iter()
        .all(|p| p.q <= 1.0 + policy.tolerance + p.tail_error);
    let exact = mu.is_finite();
    let label = if exact {
        "finite measure: Q ≡ 1 on the grid is the spectral identity".to_string()
    } else {
        format!(
            "evidence at depth {} with {} frequencies; not a proof of spectrality",
            policy.truncation_depth,
            freqs.len()
        )
    };
    JpScan {
        points,
        max_deviation,
        max_q,
        bessel_ok,
        exact,
        label,
    }
}

/// Evenly spaced grid of `count` points on `[lo, hi)`.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / count as f64)
        .collect()
}
