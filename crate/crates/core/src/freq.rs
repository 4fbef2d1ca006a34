use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{self, Rational};

/// A finite, strictly increasing set of exact rational frequencies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FrequencySet(Vec<Rational>);

impl FrequencySet {
    /// Sorts and removes duplicates.
    pub fn new(mut freqs: Vec<Rational>) -> Self {
        freqs.sort();
        freqs.dedup();
        FrequencySet(freqs)
    }

    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(values.into_iter().map(rational::int).collect())
    }

    pub fn singleton_zero() -> Self {
        FrequencySet(vec![rational::int(0)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&rational::int(0))
    }

    /// `{a + b : a ∈ self, b ∈ other}`; collisions are merged.
    pub fn sum_set(&self, other: &FrequencySet) -> FrequencySet {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a + b);
            }
        }
        FrequencySet::new(out)
    }

    /// True when every sum `a + b` is distinct, i.e. the sum is direct.
    pub fn is_direct_sum_with(&self, other: &FrequencySet) -> bool {
        self.sum_set(other).len() == self.len() * other.len()
    }

    pub fn scaled(&self, factor: &Rational) -> FrequencySet {
        FrequencySet::new(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn translated(&self, shift: &Rational) -> FrequencySet {
        FrequencySet::new(self.0.iter().map(|x| x + shift).collect())
    }

    /// Every element reduced into `[0, 1)`.
    pub fn reduced_mod_one(&self) -> FrequencySet {
        FrequencySet::new(self.0.iter().map(rational::frac).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational::to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(rational::format).collect()
    }

    /// Distinct unordered pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        let v = &self.0;
        (0..v.len()).flat_map(move |i| (i + 1..v.len()).map(move |j| (&v[i], &v[j])))
    }
}

impl FromIterator<Rational> for FrequencySet {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        FrequencySet::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a FrequencySet {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for FrequencySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_strings().join(", "))
    }
}

impl Serialize for FrequencySet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for FrequencySet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::serde_vec::deserialize(d).map(FrequencySet::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn sorted_and_deduplicated() {
        let s = FrequencySet::new(vec![ratio(2, 3), ratio(0, 1), ratio(1, 3), ratio(2, 3)]);
        assert_eq!(s.to_strings(), ["0", "1/3", "2/3"]);
    }

    #[test]
    fn direct_sum_of_cantor_digits() {
        let g = FrequencySet::from_integers([0, 1]);
        let t = g.sum_set(&FrequencySet::from_integers([0, 4]));
        assert!(g.is_direct_sum_with(&FrequencySet::from_integers([0, 4])));
        assert_eq!(t, FrequencySet::from_integers([0, 1, 4, 5]));
        assert!(!g.is_direct_sum_with(&FrequencySet::from_integers([0, 1])));
    }

    #[test]
    fn json_uses_strings() {
        let s = FrequencySet::new(vec![ratio(1, 2), ratio(-3, 4)]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"["-3/4","1/2"]"#);
        assert_eq!(serde_json::from_str::<FrequencySet>(&j).unwrap(), s);
    }
}
