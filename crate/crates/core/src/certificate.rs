//! Structured verdicts with the witnesses that back them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freq::FrequencySet;
use crate::measure::EvalPolicy;
use crate::spectra::BiZeroCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Spectral,
    RieszEvidence,
    Frame,
    NotSpectral,
    NoTiling,
    Inconclusive,
}

impl Verdict {
    /// Process exit code: 2 for inconclusive, 0 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Inconclusive => 2,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A spectrum, or a finite truncation of one.
    Spectrum {
        frequencies: FrequencySet,
        truncated: bool,
    },
    BiZero(BiZeroCertificate),
    Bounds {
        lower: f64,
        upper: f64,
        tolerance: f64,
    },
    /// Gram eigenvalues of a finite section at one truncation depth.
    Section {
        depth: u32,
        size: usize,
        lower: f64,
        upper: f64,
    },
    OffendingPair {
        left: String,
        right: String,
        modulus: f64,
    },
    NonUniformWeights {
        weights: Vec<String>,
    },
    Classifier {
        name: String,
        holds: bool,
    },
    Tiling {
        modulus: u64,
        complement: Vec<u64>,
    },
    Determinant {
        modulus: f64,
    },
    ErrorBound {
        value: f64,
    },
    Reason {
        text: String,
    },
}

/// Evaluation parameters a verdict was produced under.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PolicyEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation_depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl From<&EvalPolicy> for PolicyEcho {
    fn from(p: &EvalPolicy) -> Self {
        PolicyEcho {
            truncation_depth: Some(p.truncation_depth),
            tolerance: Some(p.tolerance),
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// The checks that produced the verdict, in order.
    pub provenance: Vec<String>,
    pub policy: PolicyEcho,
}

impl Certificate {
    pub fn new(verdict: Verdict, policy: PolicyEcho) -> Self {
        Certificate {
            verdict,
            witnesses: Vec::new(),
            provenance: Vec::new(),
            policy,
        }
    }

    pub fn inconclusive(reason: impl Into<String>, policy: PolicyEcho) -> Self {
        let text = reason.into();
        Certificate::new(Verdict::Inconclusive, policy)
            .with(Witness::Reason { text: text.clone() })
            .because(text)
    }

    pub fn with(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn because(mut self, check: impl Into<String>) -> Self {
        self.provenance.push(check.into());
        self
    }

    /// At least one witness, and a reason whenever inconclusive.
    pub fn validate(&self) -> Result<()> {
        if self.witnesses.is_empty() {
            return Err(Error::Precondition("certificate without witnesses".into()));
        }
        if self.verdict == Verdict::Inconclusive
            && !self
                .witnesses
                .iter()
                .any(|w| matches!(w, Witness::Reason { .. }))
        {
            return Err(Error::Precondition(
                "inconclusive certificate without a reason".into(),
            ));
        }
        Ok(())
    }
}
