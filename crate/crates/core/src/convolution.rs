//! Spectra of convolutions `η_q ∗ ν`: Riesz spectra `𝒮 ⊕ Γ`, orthogonal
//! spectra and their factorization, non-spectrality certificates, and Riesz
//! spectra of finite unions of intervals with rational endpoints.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, PolicyEcho, Verdict, Witness};
use crate::error::{Error, Result};
use crate::frames::{self, ExponentialSystem, RieszStrategy};
use crate::freq::FrequencySet;
use crate::measure::{
    lebesgue_ft_exact, AtomicMeasure, ContinuousFactor, ConvolutionMeasure, EvalPolicy, Measure,
    SelfSimilarMeasure,
};
use crate::rational::{self, Rational};
use crate::spectra::{self, is_bizero, BiZeroCertificate, ZeroSetDescriptor};

/// Symbolic description of the continuous-part spectrum `Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GammaGenerator {
    /// `ℤ`, the spectrum of Lebesgue measure on `[0, 1]`. Depth `J` keeps
    /// `ℤ ∩ [−J, J]`.
    Lattice,
    /// `Γ ⊕ nΓ ⊕ …` built from the digit set. Depth `J` keeps `J` levels.
    #[serde(rename = "selfsimilar")]
    SelfSimilar(SelfSimilarMeasure),
}

impl GammaGenerator {
    pub fn for_factor(nu: &ContinuousFactor) -> Self {
        match nu {
            ContinuousFactor::Lebesgue => GammaGenerator::Lattice,
            ContinuousFactor::SelfSimilar(m) => GammaGenerator::SelfSimilar(m.clone()),
        }
    }

    pub fn truncation(&self, depth: u32) -> Result<FrequencySet> {
        match self {
            GammaGenerator::Lattice => {
                let j = depth as i64;
                Ok(FrequencySet::from_integers(-j..=j))
            }
            GammaGenerator::SelfSimilar(m) => spectra::selfsimilar_spectrum(m, depth),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GammaGenerator::Lattice => "ℤ".into(),
            GammaGenerator::SelfSimilar(m) => match spectra::spectrum_generator(m) {
                Ok(g) => format!("{0} ⊕ {1}·{0} ⊕ {1}²·{0} ⊕ …", g.gamma, g.scale),
                Err(e) => format!("unavailable: {e}"),
            },
        }
    }
}

/// `|det M|` and the frame bounds of `M = [e^{2πias}]` with the weights of `η`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixWitness {
    pub determinant_modulus: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvolutionSpectrum {
    pub q: u64,
    /// `𝒮`, one frequency per atom of `η`.
    pub shifts: FrequencySet,
    pub generator: GammaGenerator,
    pub depth: u32,
    /// `𝒮 ⊕ Γ_J`.
    pub truncation: FrequencySet,
    pub witness: MatrixWitness,
}

fn discrete_support(eta: &AtomicMeasure) -> Result<Vec<u64>> {
    match eta.integer_atoms() {
        Some(a) if a.iter().all(|&c| c >= 0) => Ok(a.iter().map(|&c| c as u64).collect()),
        _ => Err(Error::Precondition(
            "discrete factor needs nonnegative integer atoms".into(),
        )),
    }
}

fn check_integral(gamma: &FrequencySet, q: u64) -> Result<()> {
    let qr = rational::int(q as i64);
    match gamma.iter().find(|g| !rational::is_integer(&(*g * &qr))) {
        Some(bad) => Err(Error::Precondition(format!(
            "qΓ ⊄ ℤ: {q}·{} is not an integer",
            rational::format(bad)
        ))),
        None => Ok(()),
    }
}

/// `𝒮 ⊕ Γ_J` with `𝒮` the deterministic Riesz spectrum of `q𝒞`.
pub fn riesz_spectrum_convolution(
    eta: &AtomicMeasure,
    q: u64,
    generator: &GammaGenerator,
    depth: u32,
) -> Result<ConvolutionSpectrum> {
    if q == 0 {
        return Err(Error::Precondition("q must be positive".into()));
    }
    let support = discrete_support(eta)?;
    let dilated: Vec<u64> = support.iter().map(|&c| c * q).collect();
    let shifts = frames::find_riesz_spectrum(&dilated, RieszStrategy::Deterministic)?;
    let gamma = generator.truncation(depth)?;
    check_integral(&gamma, q)?;
    if !shifts.is_direct_sum_with(&gamma) {
        return Err(Error::Precondition("𝒮 + Γ_J is not a direct sum".into()));
    }
    let eta_q = eta.dilated(q);
    let det = frames::exponential_determinant(eta_q.atoms(), &shifts)?;
    let bounds = frames::frame_bounds(&ExponentialSystem::new(eta_q, shifts.clone()));
    Ok(ConvolutionSpectrum {
        q,
        truncation: shifts.sum_set(&gamma),
        shifts,
        generator: generator.clone(),
        depth,
        witness: MatrixWitness {
            determinant_modulus: det.norm(),
            lower: bounds.lower,
            upper: bounds.upper,
        },
    })
}

/// Structural check of `q𝒵_ν ⊂ ℤ`: with `𝒵_ν = ⋃_{j≥1} n^j (Z + ℤ)` it
/// holds iff every base zero `a/b` has `b | q·n`.
pub fn zero_set_scales_into_integers(nu: &ContinuousFactor, q: u64) -> Result<bool> {
    match nu {
        ContinuousFactor::Lebesgue => Ok(true),
        ContinuousFactor::SelfSimilar(m) => {
            let desc = ZeroSetDescriptor::for_selfsimilar(m);
            if !desc.complete {
                return Err(Error::Unverifiable(format!(
                    "P_A for digits {:?} is not a product of cyclotomic polynomials",
                    m.digits()
                )));
            }
            let qn = BigInt::from(q) * BigInt::from(m.scale());
            Ok(desc.base.iter().all(|z| (&qn % z.denom()).is_zero()))
        }
    }
}

/// `𝒮 ⊕ Γ_J` for a spectral `η` (uniform weights, `𝒮` a bi-zero set of
/// `m_{q𝒞}` with `#𝒮 = #𝒞`), certified pairwise orthogonal through
/// `μ̂ = m·ν̂`.
pub fn spectrum_convolution(
    mu: &ConvolutionMeasure,
    shifts: &FrequencySet,
    depth: u32,
) -> Result<(FrequencySet, BiZeroCertificate)> {
    let eta = mu.discrete();
    if shifts.len() != eta.len() {
        return Err(Error::Precondition(format!(
            "#𝒮 = {} but η has {} atoms",
            shifts.len(),
            eta.len()
        )));
    }
    if !eta.is_uniform() {
        return Err(Error::Precondition("η must have uniform weights".into()));
    }
    if !zero_set_scales_into_integers(mu.continuous(), mu.q())? {
        return Err(Error::Precondition("q𝒵_ν ⊄ ℤ".into()));
    }
    let gamma = GammaGenerator::for_factor(mu.continuous()).truncation(depth)?;
    if !shifts.is_direct_sum_with(&gamma) {
        return Err(Error::Precondition("𝒮 + Γ_J is not a direct sum".into()));
    }
    let lambda = shifts.sum_set(&gamma);
    let cert = is_bizero(
        &lambda,
        &Measure::Convolution(mu.clone()),
        &EvalPolicy::default(),
    )?;
    Ok((lambda, cert))
}

/// `Λ = ⋃_j (s_j + Λ_j)` with `s_j = q⁻¹{qλ}` and `Λ_j = q⁻¹[qλ]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    pub shifts: FrequencySet,
    /// `Λ_j` for each shift, in the order of `shifts`.
    pub classes: Vec<FrequencySet>,
}

pub fn factor_spectrum(freqs: &FrequencySet, q: u64) -> Result<Factorization> {
    if !freqs.contains_zero() {
        return Err(Error::Precondition("0 must belong to Λ".into()));
    }
    if q == 0 {
        return Err(Error::Precondition("q must be positive".into()));
    }
    let qr = rational::int(q as i64);
    let split: Vec<(Rational, Rational)> = freqs
        .iter()
        .map(|l| {
            let ql = l * &qr;
            let f = rational::frac(&ql);
            let whole = &ql - &f;
            (f / &qr, whole / &qr)
        })
        .collect();
    let shifts = FrequencySet::new(split.iter().map(|(s, _)| s.clone()).collect());
    let classes = shifts
        .iter()
        .map(|s| {
            FrequencySet::new(
                split
                    .iter()
                    .filter(|(t, _)| t == s)
                    .map(|(_, w)| w.clone())
                    .collect(),
            )
        })
        .collect();
    Ok(Factorization { shifts, classes })
}

/// Decides spectrality of `η_q ∗ ν` from its factors: `η` must have equal
/// weights and be spectral, and `ν` must be spectral.
pub fn nonspectral_certificate(mu: &ConvolutionMeasure, depth: u32) -> Result<Certificate> {
    let policy = PolicyEcho {
        truncation_depth: Some(depth),
        ..Default::default()
    };
    if !zero_set_scales_into_integers(mu.continuous(), mu.q())? {
        return Err(Error::Precondition("q𝒵_ν ⊄ ℤ".into()));
    }
    let eta = mu.discrete();
    if !eta.is_uniform() {
        return Ok(Certificate::new(Verdict::NotSpectral, policy)
            .with(Witness::NonUniformWeights {
                weights: eta.weights().iter().map(rational::format).collect(),
            })
            .because("exact weight test: a spectral discrete measure has equal weights")
            .because("η_q ∗ ν is spectral only if η is spectral"));
    }
    if let ContinuousFactor::SelfSimilar(m) = mu.continuous() {
        if let Err(e) = spectra::spectrum_generator(m) {
            return Ok(Certificate::inconclusive(
                format!("no spectrum available for ν: {e}"),
                policy,
            ));
        }
    }
    let support = discrete_support(eta)?;
    let (spectrum, check) = match spectra::decide_uniform(&support) {
        Ok(x) => x,
        Err(Error::Unverifiable(reason)) => return Ok(Certificate::inconclusive(reason, policy)),
        Err(e) => return Err(e),
    };
    let Some(spectrum) = spectrum else {
        return Ok(Certificate::new(Verdict::NotSpectral, policy)
            .with(Witness::Classifier {
                name: check.into(),
                holds: false,
            })
            .because(format!("{check}: uniform η on {support:?} is not spectral"))
            .because("η_q ∗ ν is spectral only if η is spectral"));
    };
    let q_inv = Rational::new(BigInt::one(), BigInt::from(mu.q()));
    let shifts = spectrum.scaled(&q_inv);
    let (lambda, cert) = spectrum_convolution(mu, &shifts, depth)?;
    Ok(Certificate::new(Verdict::Spectral, policy)
        .with(Witness::Spectrum {
            frequencies: lambda,
            truncated: true,
        })
        .with(Witness::BiZero(cert))
        .with(Witness::Classifier {
            name: check.into(),
            holds: true,
        })
        .because(format!("{check}: uniform η is spectral"))
        .because("ν is spectral with the generator tower")
        .because("orthogonality of 𝒮 ⊕ Γ_J certified exactly through μ̂ = m·ν̂"))
}

/// Gram matrix `G[i,k] = μ̂(λ_k − λ_i)` of a finite section. Self-similar
/// factors use their depth-`level` iterate, Lebesgue factors are exact.
pub fn section_gram(
    mu: &ConvolutionMeasure,
    freqs: &FrequencySet,
    level: u32,
) -> DMatrix<Complex64> {
    let eta = mu.dilated_discrete();
    let policy = EvalPolicy {
        truncation_depth: level,
        ..EvalPolicy::default()
    };
    let f = freqs.as_slice();
    let n = f.len();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|k| {
                    let d = &f[k] - &f[i];
                    let nu = match mu.continuous() {
                        ContinuousFactor::Lebesgue => lebesgue_ft_exact(&d),
                        ContinuousFactor::SelfSimilar(m) => m.ft_exact(&d, &policy).0,
                    };
                    eta.mask_eval(&d) * nu
                })
                .collect()
        })
        .collect();
    DMatrix::from_fn(n, n, |i, k| rows[i][k])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionBounds {
    pub depth: u32,
    pub size: usize,
    pub lower: f64,
    pub upper: f64,
}

/// Finite-section Riesz evidence for `𝒮 ⊕ Γ` across truncation depths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RieszEvidence {
    pub spectrum: ConvolutionSpectrum,
    pub sections: Vec<SectionBounds>,
    /// Smallest lower eigenvalue over all sections, recorded per run.
    pub floor: f64,
    /// Largest upper eigenvalue over all sections.
    pub ceiling: f64,
    /// Ratio of the largest to the smallest section lower bound.
    pub spread: f64,
}

/// Gram eigenvalues of `𝒮 ⊕ Γ_J` for each `J`, against the depth `J + 2`
/// iterate of a self-similar `ν`.
pub fn riesz_evidence(mu: &ConvolutionMeasure, depths: &[u32]) -> Result<RieszEvidence> {
    if depths.is_empty() {
        return Err(Error::Precondition("no depths requested".into()));
    }
    let generator = GammaGenerator::for_factor(mu.continuous());
    let mut sections = Vec::new();
    let mut last = None;
    for &depth in depths {
        let built = riesz_spectrum_convolution(mu.discrete(), mu.q(), &generator, depth)?;
        let gram = section_gram(mu, &built.truncation, depth + 2);
        let (lower, upper) = frames::hermitian_extremes(gram);
        sections.push(SectionBounds {
            depth,
            size: built.truncation.len(),
            lower,
            upper,
        });
        last = Some(built);
    }
    let floor = sections
        .iter()
        .map(|s| s.lower)
        .fold(f64::INFINITY, f64::min);
    let top = sections.iter().map(|s| s.lower).fold(0.0, f64::max);
    let ceiling = sections.iter().map(|s| s.upper).fold(0.0, f64::max);
    Ok(RieszEvidence {
        spectrum: last.expect("depths nonempty"),
        sections,
        floor,
        ceiling,
        spread: if floor > 0.0 {
            top / floor
        } else {
            f64::INFINITY
        },
    })
}

/// Riesz spectrum of a finite union `E` of disjoint closed intervals with
/// rational endpoints, via `rE + s = [0, 1] + 𝒜`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalUnionSpectrum {
    pub r: u64,
    pub s: i64,
    pub offsets: Vec<u64>,
    /// `𝒮` with `𝒮 ⊕ ℤ` a Riesz spectrum of `F = [0, 1] + 𝒜`.
    pub shifts: FrequencySet,
    /// `r𝒮 ⊕ rℤ` on `E`, truncated to `rℤ ∩ [−rJ, rJ]`.
    pub pulled_back: FrequencySet,
    pub depth: u32,
    /// Riesz bounds implied by `[e^{2πias}]` with weights `1/#𝒜`.
    pub expected_lower: f64,
    pub expected_upper: f64,
    /// Gram eigenvalues of the finite section on `F`.
    pub section_lower: f64,
    pub section_upper: f64,
    /// Section bounds lie in the expected range and away from zero.
    pub validated: bool,
}

pub fn interval_union_rspectrum(
    intervals: &[(Rational, Rational)],
    depth: u32,
) -> Result<IntervalUnionSpectrum> {
    if intervals.is_empty() {
        return Err(Error::Precondition("no intervals".into()));
    }
    let mut sorted = intervals.to_vec();
    sorted.sort();
    let show = |(a, b): &(Rational, Rational)| {
        format!("[{}, {}]", rational::format(a), rational::format(b))
    };
    if let Some(bad) = sorted.iter().find(|(a, b)| a >= b) {
        return Err(Error::Precondition(format!(
            "degenerate interval {}",
            show(bad)
        )));
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0].1 >= w[1].0) {
        return Err(Error::OverlappingIntervals(format!(
            "{} meets {}",
            show(&w[0]),
            show(&w[1])
        )));
    }
    let r = rational::common_denominator(sorted.iter().flat_map(|(a, b)| [a, b]));
    let rr = Rational::from_integer(r.clone());
    let s = -(&sorted[0].0 * &rr);
    let to_u64 = |x: Rational| {
        x.to_integer().to_u64().ok_or_else(|| Error::SizeCap {
            requested: u128::MAX,
            cap: u64::MAX as u128,
        })
    };
    let mut offsets = Vec::new();
    for (a, b) in &sorted {
        let lo = to_u64(a * &rr + &s)?;
        let hi = to_u64(b * &rr + &s)?;
        if hi - lo > crate::measure::DEFAULT_ATOM_CAP as u64 {
            return Err(Error::SizeCap {
                requested: (hi - lo) as u128,
                cap: crate::measure::DEFAULT_ATOM_CAP as u128,
            });
        }
        offsets.extend(lo..hi);
    }
    let atoms: Vec<i64> = offsets.iter().map(|&c| c as i64).collect();
    let eta = AtomicMeasure::uniform_integer(&atoms)?;
    let mu = ConvolutionMeasure::new(eta.clone(), 1, ContinuousFactor::Lebesgue)?;
    let built = riesz_spectrum_convolution(&eta, 1, &GammaGenerator::Lattice, depth)?;
    let (section_lower, section_upper) =
        frames::hermitian_extremes(section_gram(&mu, &built.truncation, depth));
    let (expected_lower, expected_upper) = (built.witness.lower, built.witness.upper);
    let slack = 1e-9 * expected_upper;
    let validated = section_lower > frames::DEFAULT_INVERTIBILITY_TOL * section_upper
        && section_lower >= expected_lower - slack
        && section_upper <= expected_upper + slack;
    Ok(IntervalUnionSpectrum {
        r: r.to_u64().expect("denominator fits after the size check"),
        s: s.to_integer()
            .to_i64()
            .expect("shift fits after the size check"),
        offsets,
        pulled_back: built.truncation.scaled(&rr),
        shifts: built.shifts,
        depth,
        expected_lower,
        expected_upper,
        section_lower,
        section_upper,
        validated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn fs(v: &[(i64, i64)]) -> FrequencySet {
        FrequencySet::new(v.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    fn quarter_binary() -> SelfSimilarMeasure {
        SelfSimilarMeasure::new(vec![0, 1], 4).unwrap()
    }

    fn example_measure() -> ConvolutionMeasure {
        ConvolutionMeasure::new(
            AtomicMeasure::integer(&[0, 1], vec![ratio(1, 3), ratio(2, 3)]).unwrap(),
            1,
            ContinuousFactor::SelfSimilar(quarter_binary()),
        )
        .unwrap()
    }

    fn uniform_over_quarter(atoms: &[i64]) -> ConvolutionMeasure {
        ConvolutionMeasure::new(
            AtomicMeasure::uniform_integer(atoms).unwrap(),
            1,
            ContinuousFactor::SelfSimilar(quarter_binary()),
        )
        .unwrap()
    }

    #[test]
    fn riesz_spectrum_examples() {
        let eta = AtomicMeasure::uniform_integer(&[0, 1]).unwrap();
        let s = riesz_spectrum_convolution(&eta, 1, &GammaGenerator::Lattice, 2).unwrap();
        assert_eq!(s.shifts, fs(&[(0, 1), (1, 2)]));
        assert_eq!(s.truncation.len(), 10);
        assert!((s.witness.determinant_modulus - 2.0).abs() < 1e-12);

        let m = example_measure();
        let g = GammaGenerator::SelfSimilar(quarter_binary());
        let s = riesz_spectrum_convolution(m.discrete(), 1, &g, 2).unwrap();
        assert_eq!(s.shifts, fs(&[(0, 1), (1, 2)]));
        let expected = FrequencySet::from_integers([0, 2, 8, 10]).sum_set(&fs(&[(0, 1), (1, 2)]));
        assert_eq!(s.truncation, expected);
        assert!((s.witness.lower - 2.0 / 3.0).abs() < 1e-12);
        assert!((s.witness.upper - 4.0 / 3.0).abs() < 1e-12);

        let point = AtomicMeasure::uniform_integer(&[0]).unwrap();
        let s = riesz_spectrum_convolution(&point, 1, &g, 3).unwrap();
        assert_eq!(s.truncation, g.truncation(3).unwrap());
    }

    #[test]
    fn fractional_gamma_is_rejected() {
        assert!(check_integral(&fs(&[(0, 1), (1, 2)]), 2).is_ok());
        assert!(matches!(
            check_integral(&fs(&[(0, 1), (1, 3)]), 2),
            Err(Error::Precondition(_))
        ));
        let eta = AtomicMeasure::uniform_integer(&[0, 1]).unwrap();
        assert!(riesz_spectrum_convolution(&eta, 0, &GammaGenerator::Lattice, 1).is_err());
    }

    #[test]
    fn orthogonal_spectrum_examples() {
        let mu = uniform_over_quarter(&[0, 1]);
        let (lambda, cert) = spectrum_convolution(&mu, &fs(&[(0, 1), (1, 2)]), 3).unwrap();
        assert_eq!(lambda.len(), 16);
        assert!(cert.is_exact());

        let (lambda, _) = spectrum_convolution(
            &uniform_over_quarter(&[0]),
            &FrequencySet::singleton_zero(),
            2,
        )
        .unwrap();
        assert_eq!(lambda, FrequencySet::from_integers([0, 2, 8, 10]));

        let three = ConvolutionMeasure::new(
            AtomicMeasure::uniform_integer(&[0, 1, 2]).unwrap(),
            1,
            ContinuousFactor::Lebesgue,
        )
        .unwrap();
        assert!(spectrum_convolution(&three, &fs(&[(0, 1), (1, 3), (2, 3)]), 2).is_ok());
        match spectrum_convolution(&three, &fs(&[(0, 1), (1, 4), (1, 2)]), 2) {
            Err(Error::NotBiZero { .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            spectrum_convolution(&three, &fs(&[(0, 1), (1, 3)]), 2),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            spectrum_convolution(&example_measure(), &fs(&[(0, 1), (1, 2)]), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn factor_examples() {
        let f = factor_spectrum(&fs(&[(0, 1), (1, 2), (1, 1), (3, 2)]), 1).unwrap();
        assert_eq!(f.shifts, fs(&[(0, 1), (1, 2)]));
        assert_eq!(f.classes, vec![FrequencySet::from_integers([0, 1]); 2]);

        let f = factor_spectrum(&FrequencySet::from_integers([0, 3, -7]), 1).unwrap();
        assert_eq!(f.shifts, FrequencySet::singleton_zero());
        assert_eq!(f.classes.len(), 1);

        let f = factor_spectrum(&fs(&[(0, 1), (1, 4), (5, 4), (3, 2)]), 2).unwrap();
        assert_eq!(f.shifts, fs(&[(0, 1), (1, 4)]));
        assert_eq!(f.classes[0], fs(&[(0, 1), (3, 2)]));
        assert_eq!(f.classes[1], fs(&[(0, 1), (1, 1)]));

        assert!(factor_spectrum(&fs(&[(1, 2)]), 1).is_err());
    }

    #[test]
    fn nonspectral_examples() {
        let c = nonspectral_certificate(&example_measure(), 3).unwrap();
        assert_eq!(c.verdict, Verdict::NotSpectral);
        assert!(matches!(c.witnesses[0], Witness::NonUniformWeights { .. }));

        let c = nonspectral_certificate(&uniform_over_quarter(&[0, 1]), 3).unwrap();
        assert_eq!(c.verdict, Verdict::Spectral);
        c.validate().unwrap();
        let c = nonspectral_certificate(&uniform_over_quarter(&[0, 1, 3]), 3).unwrap();
        assert_eq!(c.verdict, Verdict::NotSpectral);
        let c = nonspectral_certificate(&uniform_over_quarter(&[0, 2, 4]), 2).unwrap();
        assert_eq!(c.verdict, Verdict::Spectral);
    }

    #[test]
    fn zero_set_scaling() {
        let cantor =
            |n| ContinuousFactor::SelfSimilar(SelfSimilarMeasure::new(vec![0, 2], n).unwrap());
        assert!(zero_set_scales_into_integers(&cantor(4), 1).unwrap());
        // 𝒵 of the 1/6-Cantor contains 3/2.
        assert!(!zero_set_scales_into_integers(&cantor(6), 1).unwrap());
        assert!(zero_set_scales_into_integers(&cantor(6), 2).unwrap());
        assert!(zero_set_scales_into_integers(&ContinuousFactor::Lebesgue, 5).unwrap());
    }

    #[test]
    fn example_riesz_evidence_brackets_two_thirds() {
        let ev = riesz_evidence(&example_measure(), &[1, 2, 3]).unwrap();
        for s in &ev.sections {
            assert!(
                s.lower >= 2.0 / 3.0 - 1e-9 && s.upper <= 4.0 / 3.0 + 1e-9,
                "{s:?}"
            );
        }
        assert!(ev.spread < 2.0);
    }

    #[test]
    fn interval_union_examples() {
        let iv = |v: &[(i64, i64, i64, i64)]| -> Vec<(Rational, Rational)> {
            v.iter()
                .map(|&(a, b, c, d)| (ratio(a, b), ratio(c, d)))
                .collect()
        };
        let u = interval_union_rspectrum(&iv(&[(0, 1, 1, 2), (1, 1, 3, 2)]), 3).unwrap();
        assert_eq!((u.r, u.s, u.offsets.clone()), (2, 0, vec![0, 2]));
        assert!(u.validated);
        assert!((u.expected_lower - 0.5).abs() < 1e-12);
        assert!((u.expected_upper - 1.5).abs() < 1e-12);

        let u = interval_union_rspectrum(&iv(&[(0, 1, 1, 1)]), 2).unwrap();
        assert_eq!((u.r, u.s, u.offsets.clone()), (1, 0, vec![0]));
        assert_eq!(u.pulled_back, FrequencySet::from_integers(-2..=2));
        assert!((u.section_lower - 1.0).abs() < 1e-12 && (u.section_upper - 1.0).abs() < 1e-12);

        let u = interval_union_rspectrum(&iv(&[(-1, 3, 0, 1), (1, 3, 2, 3)]), 2).unwrap();
        assert_eq!((u.r, u.s, u.offsets.clone()), (3, 1, vec![0, 2]));

        assert!(matches!(
            interval_union_rspectrum(&iv(&[(0, 1, 1, 1), (1, 2, 2, 1)]), 2),
            Err(Error::OverlappingIntervals(_))
        ));
        assert!(matches!(
            interval_union_rspectrum(&iv(&[(0, 1, 1, 1), (1, 1, 2, 1)]), 2),
            Err(Error::OverlappingIntervals(_))
        ));
    }
}
