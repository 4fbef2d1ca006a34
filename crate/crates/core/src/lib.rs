//! Construction and certification of exponential orthonormal spectra, Riesz
//! spectra and Fourier frames for discrete, self-similar and convolution
//! measures on the line.
//!
//! Exact work (cyclotomic divisibility, tilings, zero-set membership) runs on
//! arbitrary-precision integers and rationals. Numerical work (frame bounds,
//! Gram spectra, Jorgensen–Pedersen scans) evaluates complex exponentials in
//! double precision only at the last step, after reducing every phase exactly
//! modulo 1.

pub mod certificate;
pub mod convolution;
pub mod cyclotomic;
pub mod error;
pub mod frames;
pub mod freq;
pub mod measure;
pub mod poly;
pub mod rational;
pub mod spectra;

pub use certificate::{Certificate, PolicyEcho, Verdict, Witness};
pub use convolution::{ConvolutionSpectrum, Factorization, GammaGenerator, IntervalUnionSpectrum};
pub use cyclotomic::{PrimePower, PrimePowerSet, TileCertificate};
pub use error::{Error, Result};
pub use frames::{ExponentialSystem, FrameBounds, RieszStrategy};

pub use freq::FrequencySet;
pub use measure::{
    AtomicMeasure, ContinuousFactor, ConvolutionMeasure, EvalPolicy, Measure, SelfSimilarMeasure,
};
pub use poly::IntPolynomial;
pub use rational::Rational;
pub use spectra::{BiZeroCertificate, PairEvidence, ZeroSetDescriptor};

/// Schema tag written at the top of every JSON report.
pub const SCHEMA: &str = "spectra-forge/1";
