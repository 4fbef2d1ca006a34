//! Text forms accepted on the command line.

use anyhow::{bail, Context, Result};
use spectra_forge_core::measure::{AtomicMeasure, ContinuousFactor, SelfSimilarMeasure};
use spectra_forge_core::rational::{self, Rational};
use spectra_forge_core::FrequencySet;

pub fn u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .with_context(|| format!("not a nonnegative integer: {t:?}"))
        })
        .collect()
}

pub fn f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .with_context(|| format!("not a number: {t:?}"))
        })
        .collect()
}

pub fn rationals(s: &str) -> Result<Vec<Rational>> {
    Ok(rational::parse_list(s)?)
}

pub fn frequencies(s: &str) -> Result<FrequencySet> {
    let v = rationals(s)?;
    let n = v.len();
    let set = FrequencySet::new(v);
    if set.len() != n {
        bail!("frequencies must be distinct");
    }
    Ok(set)
}

/// Atoms with optional weights; uniform when `weights` is absent.
pub fn atomic(atoms: &str, weights: Option<&str>) -> Result<AtomicMeasure> {
    let atoms = rationals(atoms)?;
    Ok(match weights {
        Some(w) => AtomicMeasure::new(atoms, rationals(w)?)?,
        None => AtomicMeasure::uniform(atoms)?,
    })
}

/// `ATOMS[:WEIGHTS]`, for example `0,1:1/3,2/3`.
pub fn eta(s: &str) -> Result<AtomicMeasure> {
    match s.split_once(':') {
        Some((a, w)) => atomic(a, Some(w)),
        None => atomic(s, None),
    }
}

/// `lebesgue` or `selfsimilar:DIGITS:SCALE`, for example `selfsimilar:0,1:4`.
pub fn nu(s: &str) -> Result<ContinuousFactor> {
    if s == "lebesgue" {
        return Ok(ContinuousFactor::Lebesgue);
    }
    let rest = s
        .strip_prefix("selfsimilar:")
        .with_context(|| format!("expected `lebesgue` or `selfsimilar:DIGITS:SCALE`, got {s:?}"))?;
    let (digits, scale) = rest
        .rsplit_once(':')
        .with_context(|| format!("missing scale in {s:?}"))?;
    let scale = scale
        .parse()
        .with_context(|| format!("bad scale {scale:?}"))?;
    Ok(ContinuousFactor::SelfSimilar(SelfSimilarMeasure::new(
        u64_list(digits)?,
        scale,
    )?))
}

/// `LO:HI`.
pub fn window(s: &str) -> Result<(f64, f64)> {
    let (lo, hi) = s
        .split_once(':')
        .with_context(|| format!("expected LO:HI, got {s:?}"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

/// `LO:HI:COUNT`, half-open on the right.
pub fn grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, count] = parts[..] else {
        bail!("expected LO:HI:COUNT, got {s:?}");
    };
    let (lo, hi): (f64, f64) = (lo.parse()?, hi.parse()?);
    let count: usize = count.parse()?;
    if count == 0 || !(hi > lo) {
        bail!("grid {s:?} is empty");
    }
    Ok(spectra_forge_core::spectra::uniform_grid(lo, hi, count))
}

/// `LO:HI:STEP` with rational entries: `{LO, LO + STEP, …} ∩ [LO, HI]`.
pub fn lattice(s: &str, cap: usize) -> Result<FrequencySet> {
    let parts = s
        .split(':')
        .map(rational::parse)
        .collect::<Result<Vec<_>, _>>()?;
    let [lo, hi, step] = &parts[..] else {
        bail!("expected LO:HI:STEP, got {s:?}");
    };
    if step <= &Rational::from_integer(0.into()) || hi < lo {
        bail!("lattice {s:?} is empty or has a nonpositive step");
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        if out.len() >= cap {
            bail!(spectra_forge_core::Error::SizeCap {
                requested: cap as u128 + 1,
                cap: cap as u128
            });
        }
        out.push(x.clone());
        x += step;
    }
    Ok(FrequencySet::new(out))
}
