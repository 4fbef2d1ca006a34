//! Digit polynomials, cyclotomic divisibility, the Coven–Meyerowitz
//! conditions (T1)/(T2), Łaba spectra and tilings of `{0, …, n−1}`.
//!
//! Sets of integers are passed as slices of `u64`; functions sort and
//! deduplicate their input, so callers may pass them in any order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freq::FrequencySet;
use crate::poly::IntPolynomial;
use crate::rational::{self, Rational};

pub(crate) fn normalize(set: &[u64]) -> Vec<u64> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, exponent)` pairs, ascending in `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `Σ_{a∈A} x^a`.
pub fn digit_polynomial(set: &[u64]) -> IntPolynomial {
    let Some(&max) = set.iter().max() else {
        return IntPolynomial::zero();
    };
    let mut c = vec![BigInt::zero(); max as usize + 1];
    for &a in set {
        c[a as usize] = BigInt::one();
    }
    IntPolynomial::new(c)
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_s`, as `(x^s − 1) / ∏_{d|s, d<s} Φ_d`. Results are memoized.
pub fn cyclotomic_poly(s: u64) -> Arc<IntPolynomial> {
    assert!(s >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().expect("cache poisoned").get(&s) {
        return Arc::clone(p);
    }
    let mut p = IntPolynomial::x_pow_minus_one(s as usize);
    for d in divisors(s) {
        if d < s {
            p = p.exact_div(&cyclotomic_poly(d));
        }
    }
    let p = Arc::new(p);
    cache()
        .lock()
        .expect("cache poisoned")
        .insert(s, Arc::clone(&p));
    p
}

/// `Φ_s | P_A`, decided by exact remainder. `P_A` is first folded modulo
/// `x^s − 1`, which `Φ_s` divides.
pub fn divides_cyclotomic(set: &[u64], s: u64) -> bool {
    let set = normalize(set);
    if set.is_empty() {
        return true;
    }
    let folded = digit_polynomial(&set).fold_mod_x_pow_minus_one(s as usize);
    folded.is_divisible_by(&cyclotomic_poly(s))
}

/// `p^α` with `p` prime and `α ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Option<Self> {
        (is_prime(prime) && exponent >= 1).then_some(PrimePower { prime, exponent })
    }

    /// Decomposes `n` when it is a prime power greater than 1.
    pub fn of(n: u64) -> Option<Self> {
        match factorize(n).as_slice() {
            [(p, e)] => Some(PrimePower {
                prime: *p,
                exponent: *e,
            }),
            _ => None,
        }
    }

    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A set of prime powers, ordered by value. Serializes as the list of values.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u64>", try_from = "Vec<u64>")]
pub struct PrimePowerSet(BTreeSet<(u64, PrimePower)>);

impl PrimePowerSet {
    pub fn new(items: impl IntoIterator<Item = PrimePower>) -> Self {
        PrimePowerSet(items.into_iter().map(|pp| (pp.value(), pp)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &PrimePower> {
        self.0.iter().map(|(_, pp)| pp)
    }

    pub fn values(&self) -> Vec<u64> {
        self.0.iter().map(|(v, _)| *v).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Prime powers grouped by their prime.
    pub fn by_prime(&self) -> BTreeMap<u64, Vec<PrimePower>> {
        let mut out: BTreeMap<u64, Vec<PrimePower>> = BTreeMap::new();
        for pp in self.iter() {
            out.entry(pp.prime).or_default().push(*pp);
        }
        out
    }

    /// `{p^{α+γ} : p^α ∈ S, γ = v_p(m)}`, the prime-power set of `m·A`.
    pub fn scaled(&self, m: u64) -> PrimePowerSet {
        assert!(m >= 1, "scale factor must be positive");
        PrimePowerSet::new(self.iter().map(|pp| {
            let mut gamma = 0;
            let mut r = m;
            while r % pp.prime == 0 {
                r /= pp.prime;
                gamma += 1;
            }
            PrimePower {
                prime: pp.prime,
                exponent: pp.exponent + gamma,
            }
        }))
    }
}

impl From<PrimePowerSet> for Vec<u64> {
    fn from(s: PrimePowerSet) -> Self {
        s.values()
    }
}

impl TryFrom<Vec<u64>> for PrimePowerSet {
    type Error = String;
    fn try_from(v: Vec<u64>) -> std::result::Result<Self, String> {
        v.into_iter()
            .map(|n| PrimePower::of(n).ok_or_else(|| format!("{n} is not a prime power")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(PrimePowerSet::new)
    }
}

/// `S_A = {p^α > 1 : Φ_{p^α} | P_A}`. Candidates are bounded by
/// `φ(p^α) = p^{α−1}(p−1) ≤ deg P_A`.
pub fn compute_sa(set: &[u64]) -> PrimePowerSet {
    let set = normalize(set);
    let max = set.last().copied().unwrap_or(0);
    let mut found = Vec::new();
    for p in (2..=max + 1).filter(|&p| is_prime(p)) {
        let mut exponent = 1;
        let mut value = p;
        while value / p * (p - 1) <= max {
            if divides_cyclotomic(&set, value) {
                found.push(PrimePower { prime: p, exponent });
            }
            match value.checked_mul(p) {
                Some(v) => value = v,
                None => break,
            }
            exponent += 1;
        }
    }
    PrimePowerSet::new(found)
}

/// `S_{mA}` from `S_A`: each `p^α` becomes `p^{α+γ}` with `γ = v_p(m)`.
pub fn scale_sa(set: &[u64], m: u64) -> PrimePowerSet {
    compute_sa(set).scaled(m)
}

/// (T1): `#A = ∏_{s∈S_A} Φ_s(1)`, using `Φ_{p^α}(1) = p`.
pub fn check_t1(set: &[u64]) -> bool {
    let set = normalize(set);
    let product = compute_sa(&set)
        .iter()
        .try_fold(1u64, |acc, pp| acc.checked_mul(pp.prime));
    product == Some(set.len() as u64)
}

/// (T2): for powers `s_1, …, s_k ∈ S_A` of pairwise distinct primes
/// (`k ≥ 2`), `Φ_{s_1⋯s_k} | P_A`. Vacuous with fewer than two primes.
pub fn check_t2(set: &[u64]) -> bool {
    let set = normalize(set);
    let groups: Vec<Vec<PrimePower>> = compute_sa(&set).by_prime().into_values().collect();
    t2_witness_failure(&set, &groups).is_none()
}

/// First product violating (T2), if any.
fn t2_witness_failure(set: &[u64], groups: &[Vec<PrimePower>]) -> Option<u64> {
    // Each prime contributes either nothing or exactly one of its powers.
    fn search(set: &[u64], groups: &[Vec<PrimePower>], product: u64, chosen: usize) -> Option<u64> {
        let Some((first, rest)) = groups.split_first() else {
            return (chosen >= 2 && !divides_cyclotomic(set, product)).then_some(product);
        };
        search(set, rest, product, chosen).or_else(|| {
            first
                .iter()
                .find_map(|pp| search(set, rest, product * pp.value(), chosen + 1))
        })
    }
    search(set, groups, 1, 0)
}

/// Exact orthogonality of `{e^{2πiλx}}_{λ∈Λ}` in `L²(δ_A)`: every nonzero
/// difference, reduced modulo 1 to `k/b` in lowest terms, must have `b > 1`
/// and `Φ_b | P_A`. Returns the first offending pair.
pub fn first_non_orthogonal_pair<'a>(
    set: &[u64],
    freqs: &'a FrequencySet,
) -> Option<(&'a Rational, &'a Rational)> {
    freqs.pairs().find(|(a, b)| {
        let d = rational::frac(&(*b - *a));
        match d.denom().to_u64() {
            Some(den) if den > 1 => !divides_cyclotomic(set, den),
            _ => true,
        }
    })
}

/// Łaba's spectrum `{Σ_{s∈S_A} k_s/s : 0 ≤ k_s < p when s = p^α}`, reduced
/// modulo 1 and sorted. Requires (T1) and (T2).
pub fn laba_spectrum(set: &[u64]) -> Result<FrequencySet> {
    let set = normalize(set);
    if !check_t1(&set) {
        return Err(Error::ConditionFailed("T1"));
    }
    if !check_t2(&set) {
        return Err(Error::ConditionFailed("T2"));
    }
    let mut points = vec![Rational::zero()];
    for pp in compute_sa(&set).iter() {
        let s = pp.value() as i64;
        points = points
            .iter()
            .flat_map(|x| (0..pp.prime as i64).map(move |k| x + rational::ratio(k, s)))
            .collect();
    }
    Ok(FrequencySet::new(
        points.iter().map(rational::frac).collect(),
    ))
}

/// Greedy complement `B` with `A ⊕ B = {0, …, n−1}`.
///
/// The smallest uncovered element must itself lie in `B` (it can only be
/// reached as `0 + b`), so the greedy choice is forced and the search is
/// complete.
pub fn tiling_complement(set: &[u64], n: u64) -> Result<Vec<u64>> {
    let set = normalize(set);
    if set.first() != Some(&0) {
        return Err(Error::Precondition("0 must belong to A".into()));
    }
    if set.iter().any(|&a| a >= n) {
        return Err(Error::Precondition(format!("A is not contained in N_{n}")));
    }
    if n % set.len() as u64 != 0 {
        return Err(Error::NoTiling(format!(
            "#A = {} does not divide {n}",
            set.len()
        )));
    }
    let n_us = n as usize;
    let mut covered = vec![false; n_us];
    let mut complement = Vec::new();
    while let Some(t) = covered.iter().position(|c| !c) {
        for &a in &set {
            let x = t + a as usize;
            if x >= n_us {
                return Err(Error::NoTiling(format!("{t} + {a} overflows N_{n}")));
            }
            if covered[x] {
                return Err(Error::NoTiling(format!("{x} covered twice (b = {t})")));
            }
            covered[x] = true;
        }
        complement.push(t as u64);
    }
    debug_assert!(verify_tiling(&set, &complement, n));
    if !verify_tiling(&set, &complement, n) {
        return Err(Error::NoTiling(
            "greedy complement failed verification".into(),
        ));
    }
    Ok(complement)
}

/// True iff every element of `{0, …, n−1}` is `a + b` in exactly one way and
/// no sum leaves that range.
pub fn verify_tiling(a: &[u64], b: &[u64], n: u64) -> bool {
    let a = normalize(a);
    let b = normalize(b);
    let mut hits = vec![0u32; n as usize];
    for &x in &a {
        for &y in &b {
            let s = x + y;
            if s >= n {
                return false;
            }
            hits[s as usize] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

/// `A = m·A′ + {0, …, m−1}` and `B = m·B′` with `A′ ⊕ B′ = {0, …, n/m − 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongDecomposition {
    pub m: u64,
    pub a_prime: Vec<u64>,
    pub b_prime: Vec<u64>,
}

/// One step of the block decomposition of a tiling of `{0, …, n−1}` with
/// `1 ∈ A`. `m` is the least nonzero element of `B` (or `n` when `B = {0}`).
pub fn long_decomposition(a: &[u64], b: &[u64], n: u64) -> Result<LongDecomposition> {
    let a = normalize(a);
    let b = normalize(b);
    if !verify_tiling(&a, &b, n) {
        return Err(Error::Precondition(format!("A ⊕ B ≠ N_{n}")));
    }
    if !a.contains(&1) {
        return Err(Error::Precondition(
            "1 must belong to A; swap the roles of A and B".into(),
        ));
    }
    let m = b.iter().copied().find(|&x| x > 0).unwrap_or(n);
    if n % m != 0 {
        return Err(Error::Decomposition(format!(
            "m = {m} does not divide n = {n}"
        )));
    }
    if b.iter().any(|x| x % m != 0) {
        return Err(Error::Decomposition(format!("B = {m}B′ fails")));
    }
    let b_prime: Vec<u64> = b.iter().map(|x| x / m).collect();
    let a_prime: Vec<u64> = a.iter().filter(|&&x| x % m == 0).map(|x| x / m).collect();
    let rebuilt = normalize(
        &a_prime
            .iter()
            .flat_map(|&x| (0..m).map(move |r| m * x + r))
            .collect::<Vec<_>>(),
    );
    if rebuilt != a {
        return Err(Error::Decomposition(format!("A = {m}A′ + N_{m} fails")));
    }
    if !verify_tiling(&a_prime, &b_prime, n / m) {
        return Err(Error::Decomposition(format!("A′ ⊕ B′ ≠ N_{}", n / m)));
    }
    Ok(LongDecomposition {
        m,
        a_prime,
        b_prime,
    })
}

/// Everything known about `A` as a candidate tile of `{0, …, n−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileCertificate {
    pub set: Vec<u64>,
    pub modulus: u64,
    pub complement: Option<Vec<u64>>,
    pub no_tiling_reason: Option<String>,
    pub t1: bool,
    pub t2: bool,
    pub s_a: PrimePowerSet,
    pub spectrum: Option<FrequencySet>,
}

/// Tiling, (T1)/(T2) and, when both hold, Łaba's spectrum verified exactly.
pub fn tile_analyze(set: &[u64], n: u64) -> Result<TileCertificate> {
    let set = normalize(set);
    let (complement, no_tiling_reason) = match tiling_complement(&set, n) {
        Ok(b) => (Some(b), None),
        Err(Error::NoTiling(reason)) => (None, Some(reason)),
        Err(e) => return Err(e),
    };
    let t1 = check_t1(&set);
    let t2 = check_t2(&set);
    let spectrum = if t1 && t2 {
        let s = laba_spectrum(&set)?;
        if s.len() != set.len() || first_non_orthogonal_pair(&set, &s).is_some() {
            return Err(Error::Precondition(
                "Łaba spectrum failed exact verification".into(),
            ));
        }
        Some(s)
    } else {
        None
    };
    let s_a = compute_sa(&set);
    Ok(TileCertificate {
        set,
        modulus: n,
        complement,
        no_tiling_reason,
        t1,
        t2,
        s_a,
        spectrum,
    })
}

/// `gcd` of a set of integers (0 for the empty set or `{0}`).
pub fn gcd_of(set: &[u64]) -> u64 {
    set.iter().fold(0u64, |g, &x| g.gcd(&x))
}

/// `Φ_s(1)` computed from the polynomial (used as an independent check of
/// `Φ_{p^α}(1) = p`).
pub fn cyclotomic_at_one(s: u64) -> BigInt {
    cyclotomic_poly(s).eval(&BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn digit_polynomials() {
        assert_eq!(digit_polynomial(&[0, 1, 2]), p(&[1, 1, 1]));
        assert_eq!(digit_polynomial(&[0, 2]), p(&[1, 0, 1]));
        assert_eq!(digit_polynomial(&[0, 1, 4, 5]), p(&[1, 1, 0, 0, 1, 1]));
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic_poly(1), p(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(2), p(&[1, 1]));
        assert_eq!(*cyclotomic_poly(4), p(&[1, 0, 1]));
        assert_eq!(*cyclotomic_poly(6), p(&[1, -1, 1]));
        assert_eq!(*cyclotomic_poly(12), p(&[1, 0, -1, 0, 1]));
        for s in 1..=60 {
            assert_eq!(cyclotomic_poly(s).degree(), Some(euler_phi(s) as usize));
        }
    }

    #[test]
    fn first_coefficient_beyond_one_appears_at_105() {
        let c = cyclotomic_poly(105);
        assert!(c.coeffs().iter().any(|x| *x == BigInt::from(-2)));
    }

    #[test]
    fn divisibility_examples() {
        assert!(divides_cyclotomic(&[0, 2], 4));
        assert!(!divides_cyclotomic(&[0, 2], 2));
        assert!(divides_cyclotomic(&[0, 1, 2], 3));
    }

    #[test]
    fn sa_examples() {
        assert_eq!(compute_sa(&[0, 1]).values(), [2]);
        assert_eq!(compute_sa(&[0, 2]).values(), [4]);
        assert_eq!(compute_sa(&[0, 1, 2, 3]).values(), [2, 4]);
        assert_eq!(compute_sa(&[0, 1, 4, 5]).values(), [2, 8]);
        assert!(compute_sa(&[0, 1, 3]).is_empty());
        assert!(compute_sa(&[0]).is_empty());
    }

    #[test]
    fn t1_examples() {
        assert!(check_t1(&[0, 1, 2, 3]));
        assert!(check_t1(&[0, 2]));
        assert!(!check_t1(&[0, 1, 3]));
    }

    #[test]
    fn t2_examples() {
        assert!(check_t2(&[0, 1, 2, 3]));
        assert!(check_t2(&[0, 1, 2, 3, 4, 5]));
        assert!(check_t2(&[0, 1, 4, 5]));
        // (1 + x + x²)(1 + x⁶): S = {3, 4} and Φ_12 | 1 + x⁶.
        assert!(check_t2(&[0, 1, 2, 6, 7, 8]));
    }

    #[test]
    fn t2_can_fail() {
        let mut found = None;
        'outer: for mask in 1u32..(1 << 10) {
            let set: Vec<u64> = (0..10).filter(|i| mask & (1 << i) != 0).collect();
            if set[0] != 0 {
                continue;
            }
            let sa = compute_sa(&set);
            if sa.by_prime().len() >= 2 && !check_t2(&set) {
                found = Some(set);
                break 'outer;
            }
        }
        let set = found.expect("some small set violates (T2)");
        assert!(matches!(
            laba_spectrum(&set),
            Err(Error::ConditionFailed(_))
        ));
    }

    #[test]
    fn laba_examples() {
        let l = |s: &[u64]| laba_spectrum(s).unwrap();
        assert_eq!(
            l(&[0, 1, 2]),
            FrequencySet::new(vec![ratio(0, 1), ratio(1, 3), ratio(2, 3)])
        );
        assert_eq!(
            l(&[0, 1, 2, 3]),
            FrequencySet::new(vec![ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(3, 4)])
        );
        assert_eq!(
            l(&[0, 2]),
            FrequencySet::new(vec![ratio(0, 1), ratio(1, 4)])
        );
        assert_eq!(laba_spectrum(&[0, 1, 3]), Err(Error::ConditionFailed("T1")));
    }

    #[test]
    fn tiling_examples() {
        assert_eq!(tiling_complement(&[0, 2], 4).unwrap(), [0, 1]);
        assert_eq!(tiling_complement(&[0, 1, 2], 3).unwrap(), [0]);
        assert!(matches!(
            tiling_complement(&[0, 3], 4),
            Err(Error::NoTiling(_))
        ));
        assert!(matches!(
            tiling_complement(&[0, 1, 2], 4),
            Err(Error::NoTiling(_))
        ));
        assert!(matches!(
            tiling_complement(&[1, 2], 4),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            tiling_complement(&[0, 5], 4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn verify_tiling_examples() {
        assert!(verify_tiling(&[0, 2], &[0, 1], 4));
        assert!(verify_tiling(&[0, 1], &[0, 2], 4));
        assert!(!verify_tiling(&[0, 1], &[0, 1], 4));
        assert!(!verify_tiling(&[0, 1], &[0, 2, 4], 4));
    }

    #[test]
    fn no_tiling_found_by_exhaustion() {
        // Every B ⊂ N_4 fails for A = {0, 3}.
        for mask in 0u32..16 {
            let b: Vec<u64> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
            assert!(!verify_tiling(&[0, 3], &b, 4));
        }
    }

    #[test]
    fn long_decomposition_examples() {
        let d = long_decomposition(&[0, 1, 4, 5], &[0, 2], 8).unwrap();
        assert_eq!(
            (d.m, d.a_prime.as_slice(), d.b_prime.as_slice()),
            (2, &[0, 2][..], &[0, 1][..])
        );
        let d = long_decomposition(&[0, 1, 2, 3, 4], &[0], 5).unwrap();
        assert_eq!(
            (d.m, d.a_prime.as_slice(), d.b_prime.as_slice()),
            (5, &[0][..], &[0][..])
        );
        let d = long_decomposition(&[0, 1], &[0, 2], 4).unwrap();
        assert_eq!(
            (d.m, d.a_prime.as_slice(), d.b_prime.as_slice()),
            (2, &[0][..], &[0, 1][..])
        );
        assert!(matches!(
            long_decomposition(&[0, 2], &[0, 1], 4),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            long_decomposition(&[0, 1], &[0, 1], 4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn scale_sa_examples() {
        assert_eq!(scale_sa(&[0, 1], 2).values(), [4]);
        assert_eq!(scale_sa(&[0, 1], 2), compute_sa(&[0, 2]));
        assert_eq!(scale_sa(&[0, 1], 3).values(), [2]);
        assert_eq!(scale_sa(&[0, 1], 3), compute_sa(&[0, 3]));
        assert_eq!(scale_sa(&[0, 1, 2, 3], 1), compute_sa(&[0, 1, 2, 3]));
    }

    #[test]
    fn prime_power_values_at_one() {
        for s in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let pp = PrimePower::of(s).unwrap();
            assert_eq!(cyclotomic_at_one(s), BigInt::from(pp.prime));
        }
        assert!(PrimePower::of(6).is_none());
        assert!(PrimePower::of(1).is_none());
    }

    #[test]
    fn tile_certificate_fields() {
        let c = tile_analyze(&[0, 2], 4).unwrap();
        assert_eq!(c.complement, Some(vec![0, 1]));
        assert!(c.t1 && c.t2);
        assert_eq!(c.s_a.values(), [4]);
        assert_eq!(c.spectrum.unwrap().to_strings(), ["0", "1/4"]);
        let c = tile_analyze(&[0, 3], 4).unwrap();
        assert!(c.complement.is_none() && c.no_tiling_reason.is_some());
        // {0, 3} still tiles Z (period 2 complement {0, 1, ...}), so (T1)/(T2) hold.
        assert!(c.t1 && c.t2);
        let json = serde_json::to_string(&tile_analyze(&[0, 1, 4, 5], 8).unwrap()).unwrap();
        assert!(json.contains(r#""s_a":[2,8]"#), "{json}");
    }
}
