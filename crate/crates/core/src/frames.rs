//! Frame analysis of finite exponential systems on atomic measures.
//!
//! For atoms `c_0, …, c_{n−1}` with weights `p_c` and frequencies
//! `λ_0, …, λ_{m−1}`, the frame operator restricted to `L²(μ) ≅ ℂⁿ` is
//! `W V* V W` with `V[λ, c] = e^{−2πiλc}` and `W = diag(√p_c)`. Its extreme
//! eigenvalues are the optimal frame bounds.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freq::FrequencySet;
use crate::measure::AtomicMeasure;
use crate::rational::{self, Rational};

/// Relative threshold (against the upper bound) below which the lower frame
/// bound counts as zero.
pub const DEFAULT_INVERTIBILITY_TOL: f64 = 1e-9;

/// Exponentials `{e^{2πiλx}}_{λ∈Λ}` in `L²(μ)` for an atomic `μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentialSystem {
    pub measure: AtomicMeasure,
    pub frequencies: FrequencySet,
}

impl ExponentialSystem {
    pub fn new(measure: AtomicMeasure, frequencies: FrequencySet) -> Self {
        ExponentialSystem {
            measure,
            frequencies,
        }
    }

    /// Number of frequencies `m`.
    pub fn num_frequencies(&self) -> usize {
        self.frequencies.len()
    }

    /// Number of atoms `n`.
    pub fn num_atoms(&self) -> usize {
        self.measure.len()
    }

    /// `V[λ, c] = e^{−2πiλc}`, each phase reduced exactly modulo 1.
    pub fn analysis_matrix(&self) -> DMatrix<Complex64> {
        let atoms = self.measure.atoms();
        let freqs = self.frequencies.as_slice();
        DMatrix::from_fn(freqs.len(), atoms.len(), |i, j| {
            Complex64::from_polar(1.0, -rational::phase(&(&freqs[i] * &atoms[j])))
        })
    }

    fn sqrt_weights(&self) -> Vec<f64> {
        self.measure
            .weights()
            .iter()
            .map(|w| rational::to_f64(w).sqrt())
            .collect()
    }

    /// `W V* V W`, Hermitian `n × n`.
    pub fn frame_operator(&self) -> DMatrix<Complex64> {
        let v = self.analysis_matrix();
        let w = self.sqrt_weights();
        let mut g = v.adjoint() * &v;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                g[(i, j)] *= w[i] * w[j];
            }
        }
        g
    }

    /// `V W² V*`, the `m × m` Gram matrix `[⟨e_λ′, e_λ⟩_μ]`.
    pub fn gram_matrix(&self) -> DMatrix<Complex64> {
        let v = self.analysis_matrix();
        let w = self.sqrt_weights();
        let mut vw = v.clone();
        for j in 0..vw.ncols() {
            for i in 0..vw.nrows() {
                vw[(i, j)] *= w[j];
            }
        }
        &vw * vw.adjoint()
    }

    /// `Σ_λ |⟨f, e_λ⟩_μ|² / ‖f‖²_μ`, evaluated directly from the sums.
    pub fn frame_ratio(&self, f: &[Complex64]) -> f64 {
        let atoms = self.measure.atoms();
        let weights: Vec<f64> = self
            .measure
            .weights()
            .iter()
            .map(rational::to_f64)
            .collect();
        let norm: f64 = f.iter().zip(&weights).map(|(x, p)| x.norm_sqr() * p).sum();
        let energy: f64 = self
            .frequencies
            .iter()
            .map(|lam| {
                let inner: Complex64 = f
                    .iter()
                    .zip(atoms)
                    .zip(&weights)
                    .map(|((x, c), p)| {
                        x * Complex64::from_polar(1.0, -rational::phase(&(lam * c))) * *p
                    })
                    .sum();
                inner.norm_sqr()
            })
            .sum();
        energy / norm
    }
}

/// Frame bounds `A ≤ B`; `optimal` when they are the extreme eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub optimal: bool,
}

impl FrameBounds {
    /// `B / A`; infinite when the system is not a frame.
    pub fn condition_number(&self) -> f64 {
        if self.lower > 0.0 {
            self.upper / self.lower
        } else {
            f64::INFINITY
        }
    }

    pub fn is_frame(&self, rel_tol: f64) -> bool {
        self.lower > rel_tol * self.upper
    }
}

pub(crate) fn hermitian_extremes(h: DMatrix<Complex64>) -> (f64, f64) {
    if h.nrows() == 0 {
        return (0.0, 0.0);
    }
    let eig = h.symmetric_eigenvalues();
    let lo = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo.max(0.0), hi.max(0.0))
}

/// Optimal frame bounds of the finite system.
pub fn frame_bounds(sys: &ExponentialSystem) -> FrameBounds {
    let (lower, upper) = hermitian_extremes(sys.frame_operator());
    FrameBounds {
        lower,
        upper,
        optimal: true,
    }
}

/// Extreme eigenvalues of the `m × m` Gram matrix: the optimal Riesz-sequence
/// bounds of the frequencies in `L²(μ)`.
pub fn riesz_sequence_bounds(sys: &ExponentialSystem) -> FrameBounds {
    let (lower, upper) = hermitian_extremes(sys.gram_matrix());
    FrameBounds {
        lower,
        upper,
        optimal: true,
    }
}

/// `m = n` and the lower bound exceeds `rel_tol · B`.
pub fn is_riesz_spectrum(sys: &ExponentialSystem, rel_tol: f64) -> bool {
    sys.num_frequencies() == sys.num_atoms() && frame_bounds(sys).is_frame(rel_tol)
}

/// `det[e^{2πiλ_j c_k}]` for a square system.
pub fn exponential_determinant(atoms: &[Rational], freqs: &FrequencySet) -> Result<Complex64> {
    if atoms.len() != freqs.len() {
        return Err(Error::Precondition(format!(
            "determinant needs a square system, got {} frequencies for {} atoms",
            freqs.len(),
            atoms.len()
        )));
    }
    let f = freqs.as_slice();
    let m = DMatrix::from_fn(f.len(), atoms.len(), |i, j| {
        Complex64::from_polar(1.0, rational::phase(&(&f[i] * &atoms[j])))
    });
    Ok(m.determinant())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "lowercase")]
pub enum RieszStrategy {
    /// `{0, 1/N, …, (n−1)/N}` with `N = max(C) + 1`.
    Deterministic,
    /// Rational frequencies `k/d` with `d ≤ max_denominator`, resampled until
    /// `|det| > det_tol`.
    Random {
        seed: u64,
        max_denominator: u32,
        det_tol: f64,
        budget: usize,
    },
}

impl RieszStrategy {
    pub fn random(seed: u64) -> Self {
        RieszStrategy::Random {
            seed,
            max_denominator: 64,
            det_tol: 1e-6,
            budget: 10_000,
        }
    }
}

/// A rational Riesz spectrum for the uniform measure on the integer set `C`.
pub fn find_riesz_spectrum(set: &[u64], strategy: RieszStrategy) -> Result<FrequencySet> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Err(Error::Precondition("empty atom set".into()));
    }
    let n = set.len();
    let atoms: Vec<Rational> = set.iter().map(|&c| rational::int(c as i64)).collect();
    let measure = AtomicMeasure::uniform(atoms.clone())?;
    let candidate = match strategy {
        RieszStrategy::Deterministic => {
            let big_n = *set.last().unwrap() as i64 + 1;
            FrequencySet::new((0..n as i64).map(|k| rational::ratio(k, big_n)).collect())
        }
        RieszStrategy::Random {
            seed,
            max_denominator,
            det_tol,
            budget,
        } => {
            // Distinct points of [0, 1) with denominator ≤ D: 1 + Σ_{2≤d≤D} φ(d).
            let available: u64 = 1
                + (2..=max_denominator as u64)
                    .map(crate::cyclotomic::euler_phi)
                    .sum::<u64>();
            if (available as usize) < n {
                return Err(Error::Precondition(format!(
                    "only {available} rationals with denominator ≤ {max_denominator} for {n} atoms"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            for _ in 0..budget {
                let mut pts = vec![Rational::from_integer(0.into())];
                while pts.len() < n {
                    let d = rng.random_range(1..=max_denominator.max(1)) as i64;
                    let k = rng.random_range(0..d);
                    let x = rational::ratio(k, d);
                    if !pts.contains(&x) {
                        pts.push(x);
                    }
                }
                let cand = FrequencySet::new(pts);
                if exponential_determinant(&atoms, &cand)?.norm() > det_tol {
                    found = Some(cand);
                    break;
                }
            }
            found.ok_or(Error::RetryBudget(budget))?
        }
    };
    let sys = ExponentialSystem::new(measure, candidate);
    if !is_riesz_spectrum(&sys, DEFAULT_INVERTIBILITY_TOL) {
        return Err(Error::Precondition(format!(
            "candidate {} failed Riesz validation",
            sys.frequencies
        )));
    }
    Ok(sys.frequencies)
}

/// Empirical cross-check of frame bounds that never forms the frame operator
/// as a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub samples: usize,
    pub seed: u64,
    /// Extreme ratios over random unit vectors.
    pub sampled_min: f64,
    pub sampled_max: f64,
    /// Extreme ratios after power iteration from random starts.
    pub optimized_min: f64,
    pub optimized_max: f64,
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// `f ↦ S f` with `S` the frame operator in the weighted coordinates
/// `u = √p·f`, computed from the exponential sums.
fn apply_frame_operator(sys: &ExponentialSystem, u: &[Complex64]) -> Vec<Complex64> {
    let atoms = sys.measure.atoms();
    let sw: Vec<f64> = sys
        .measure
        .weights()
        .iter()
        .map(|w| rational::to_f64(w).sqrt())
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); u.len()];
    for lam in sys.frequencies.iter() {
        let e: Vec<Complex64> = atoms
            .iter()
            .map(|c| Complex64::from_polar(1.0, -rational::phase(&(lam * c))))
            .collect();
        let coeff: Complex64 = u.iter().zip(&e).zip(&sw).map(|((x, v), s)| x * v * s).sum();
        for ((o, v), s) in out.iter_mut().zip(&e).zip(&sw) {
            *o += v.conj() * coeff * s;
        }
    }
    out
}

fn rayleigh(sys: &ExponentialSystem, u: &[Complex64]) -> f64 {
    let su = apply_frame_operator(sys, u);
    let num: Complex64 = u.iter().zip(&su).map(|(a, b)| a.conj() * b).sum();
    num.re / u.iter().map(|x| x.norm_sqr()).sum::<f64>()
}

fn normalize(u: &mut [Complex64]) {
    let n = u.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        u.iter_mut().for_each(|x| *x /= n);
    }
}

/// Random-vector oracle for `frame_bounds`: sampled ratios must fall inside
/// `[A, B]`, and power iteration on `S` (for `B`) and on `σI − S` (for `A`)
/// from random starts approaches the extremes.
pub fn random_vector_oracle(
    sys: &ExponentialSystem,
    samples: usize,
    starts: usize,
    iterations: usize,
    seed: u64,
) -> OracleReport {
    let n = sys.num_atoms();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sqrt_p: Vec<f64> = sys
        .measure
        .weights()
        .iter()
        .map(|w| rational::to_f64(w).sqrt())
        .collect();
    let mut sampled_min = f64::INFINITY;
    let mut sampled_max = f64::NEG_INFINITY;
    for _ in 0..samples {
        let f = random_vector(&mut rng, n);
        let r = sys.frame_ratio(&f);
        sampled_min = sampled_min.min(r);
        sampled_max = sampled_max.max(r);
    }
    let mut optimized_max = f64::NEG_INFINITY;
    let mut tops = Vec::new();
    for _ in 0..starts {
        let mut u = random_vector(&mut rng, n);
        normalize(&mut u);
        for _ in 0..iterations {
            u = apply_frame_operator(sys, &u);
            normalize(&mut u);
        }
        let r = rayleigh(sys, &u);
        optimized_max = optimized_max.max(r);
        tops.push(u);
    }
    let shift = optimized_max.max(sampled_max);
    let mut optimized_min = f64::INFINITY;
    for _ in 0..starts {
        let mut u = random_vector(&mut rng, n);
        normalize(&mut u);
        for _ in 0..iterations {
            let su = apply_frame_operator(sys, &u);
            u = u.iter().zip(&su).map(|(x, s)| x * shift - s).collect();
            normalize(&mut u);
        }
        // Report the ratio in the original coordinates f = u / √p.
        let f: Vec<Complex64> = u.iter().zip(&sqrt_p).map(|(x, s)| x / s).collect();
        optimized_min = optimized_min.min(sys.frame_ratio(&f));
    }
    OracleReport {
        samples,
        seed,
        sampled_min,
        sampled_max,
        optimized_min,
        optimized_max,
    }
}

/// One row of the finite-window Beurling density diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensitySample {
    pub h: f64,
    /// `min_x #(Λ ∩ [x − h/2, x + h/2)) / h` over the sliding grid.
    pub density: f64,
    pub windows: usize,
}

/// Finite-window proxy for the lower Beurling density: for each `h`, the
/// smallest count of points in a half-open window of length `h` that fits in
/// `[lo, hi]`, divided by `h`. Window centres advance by `h·step_fraction`.
///
/// This is a diagnostic on finite data, not the `liminf` itself.
pub fn beurling_lower_density_proxy(
    freqs: &FrequencySet,
    window: (f64, f64),
    h_values: &[f64],
    step_fraction: f64,
) -> Result<Vec<DensitySample>> {
    let (lo, hi) = window;
    if !(hi > lo) || !(step_fraction > 0.0) {
        return Err(Error::Precondition(
            "empty window or nonpositive step".into(),
        ));
    }
    let mut pts = freqs.to_f64();
    pts.sort_by(f64::total_cmp);
    h_values
        .par_iter()
        .map(|&h| {
            if !(h > 0.0) || h > (hi - lo) / 4.0 {
                return Err(Error::Precondition(format!(
                    "h = {h} must lie in (0, {}]",
                    (hi - lo) / 4.0
                )));
            }
            let step = h * step_fraction;
            let count = |x: f64| {
                let a = pts.partition_point(|&p| p < x - h / 2.0);
                let b = pts.partition_point(|&p| p < x + h / 2.0);
                b - a
            };
            let mut min = usize::MAX;
            let mut windows = 0;
            let mut k = 0u64;
            loop {
                let x = lo + h / 2.0 + step * k as f64;
                if x + h / 2.0 > hi + 1e-12 {
                    break;
                }
                min = min.min(count(x));
                windows += 1;
                k += 1;
            }
            Ok(DensitySample {
                h,
                density: min as f64 / h,
                windows,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn system(
        atoms: &[i64],
        weights: Option<Vec<Rational>>,
        freqs: Vec<Rational>,
    ) -> ExponentialSystem {
        let m = match weights {
            Some(w) => AtomicMeasure::integer(atoms, w).unwrap(),
            None => AtomicMeasure::uniform_integer(atoms).unwrap(),
        };
        ExponentialSystem::new(m, FrequencySet::new(freqs))
    }

    #[test]
    fn parseval_pair() {
        let b = frame_bounds(&system(&[0, 1], None, vec![int(0), ratio(1, 2)]));
        assert!((b.lower - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_pair_bounds() {
        let sys = system(
            &[0, 1],
            Some(vec![ratio(1, 3), ratio(2, 3)]),
            vec![int(0), ratio(1, 2)],
        );
        let b = frame_bounds(&sys);
        assert!((b.lower - 2.0 / 3.0).abs() < 1e-12);
        assert!((b.upper - 4.0 / 3.0).abs() < 1e-12);
        let o = random_vector_oracle(&sys, 200, 4, 200, 7);
        assert!(o.sampled_min >= b.lower - 1e-8 && o.sampled_max <= b.upper + 1e-8);
        assert!((o.optimized_min - b.lower).abs() < 1e-3);
        assert!((o.optimized_max - b.upper).abs() < 1e-3);
    }

    #[test]
    fn coincident_exponentials_are_not_a_frame() {
        let b = frame_bounds(&system(&[0, 1], None, vec![int(0), int(1)]));
        assert!(b.lower.abs() < 1e-12 && (b.upper - 2.0).abs() < 1e-12);
        assert!(b.condition_number().is_infinite() || b.condition_number() > 1e12);
    }

    #[test]
    fn riesz_examples() {
        let tol = DEFAULT_INVERTIBILITY_TOL;
        assert!(is_riesz_spectrum(
            &system(&[0, 1, 2], None, vec![int(0), ratio(1, 3), ratio(2, 3)]),
            tol
        ));
        assert!(!is_riesz_spectrum(
            &system(&[0, 1], None, vec![int(0), int(1)]),
            tol
        ));
        assert!(is_riesz_spectrum(
            &system(&[0, 1], None, vec![int(0), ratio(1, 4)]),
            tol
        ));
        let det = exponential_determinant(
            &[int(0), int(1)],
            &FrequencySet::new(vec![int(0), ratio(1, 4)]),
        )
        .unwrap();
        assert!((det.norm() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn deterministic_riesz_spectra() {
        let f = |s: &[u64]| {
            find_riesz_spectrum(s, RieszStrategy::Deterministic)
                .unwrap()
                .to_strings()
        };
        assert_eq!(f(&[0, 1]), ["0", "1/2"]);
        assert_eq!(f(&[0, 2]), ["0", "1/3"]);
        assert_eq!(f(&[0, 1, 5]), ["0", "1/6", "1/3"]);
        let det = exponential_determinant(
            &[int(0), int(1), int(5)],
            &FrequencySet::new(vec![int(0), ratio(1, 6), ratio(1, 3)]),
        )
        .unwrap();
        assert!(det.norm() > 1e-3);
    }

    #[test]
    fn random_riesz_spectrum_is_reproducible() {
        let a = find_riesz_spectrum(&[0, 3, 4, 9], RieszStrategy::random(11)).unwrap();
        let b = find_riesz_spectrum(&[0, 3, 4, 9], RieszStrategy::random(11)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
        let starved = RieszStrategy::Random {
            seed: 1,
            max_denominator: 1,
            det_tol: 1e-6,
            budget: 5,
        };
        assert!(matches!(
            find_riesz_spectrum(&[0, 1], starved),
            Err(Error::Precondition(_))
        ));
        // Denominator 2 only offers {0, 1/2}; {0, 2} is singular there.
        let singular = RieszStrategy::Random {
            seed: 1,
            max_denominator: 2,
            det_tol: 1e-6,
            budget: 5,
        };
        assert_eq!(
            find_riesz_spectrum(&[0, 2], singular),
            Err(Error::RetryBudget(5))
        );
    }

    #[test]
    fn integer_translation_invariance() {
        let base = system(
            &[0, 2, 3],
            Some(vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)]),
            vec![int(0), ratio(1, 5), ratio(3, 7), ratio(1, 2)],
        );
        let b0 = frame_bounds(&base);
        let moved =
            ExponentialSystem::new(base.measure.clone(), base.frequencies.translated(&int(17)));
        let b1 = frame_bounds(&moved);
        assert!((b0.lower - b1.lower).abs() < 1e-12 && (b0.upper - b1.upper).abs() < 1e-12);
    }

    #[test]
    fn dropping_a_frequency_loses_completeness() {
        let full = vec![int(0), ratio(1, 6), ratio(1, 3)];
        for skip in 0..3 {
            let f: Vec<_> = full
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, x)| x.clone())
                .collect();
            assert!(frame_bounds(&system(&[0, 1, 5], None, f)).lower < 1e-12);
        }
    }

    #[test]
    fn gram_and_frame_operator_share_nonzero_spectrum() {
        let sys = system(
            &[0, 1, 3],
            Some(vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]),
            vec![int(0), ratio(1, 3), ratio(2, 5)],
        );
        let a = frame_bounds(&sys);
        let b = riesz_sequence_bounds(&sys);
        assert!((a.lower - b.lower).abs() < 1e-12 && (a.upper - b.upper).abs() < 1e-12);
    }

    #[test]
    fn density_of_lattices() {
        let z = FrequencySet::from_integers(-100..=100);
        let two_z = FrequencySet::from_integers((-50..=50).map(|k| 2 * k));
        let d = beurling_lower_density_proxy(&z, (-100.0, 100.0), &[10.0], 0.125).unwrap();
        assert!((d[0].density - 1.0).abs() < 1e-12);
        let d = beurling_lower_density_proxy(&two_z, (-100.0, 100.0), &[10.0], 0.125).unwrap();
        assert!((d[0].density - 0.5).abs() < 1e-12);
        assert!(beurling_lower_density_proxy(&z, (-100.0, 100.0), &[60.0], 0.125).is_err());
    }

    #[test]
    fn cantor_spectrum_has_empty_windows() {
        let bit = FrequencySet::from_integers([0, 1]);
        let mut lam = bit.clone();
        for k in 1..4 {
            lam = lam.sum_set(&bit.scaled(&int(4i64.pow(k))));
        }
        assert_eq!(lam.len(), 16);
        let d = beurling_lower_density_proxy(&lam, (0.0, 128.0), &[16.0], 0.125).unwrap();
        assert_eq!(d[0].density, 0.0);
    }
}
