//! Parity-type extremal families, the invariant `f`, and the threshold `δ(n,k,ℓ)`.

use serde::{Deserialize, Serialize};

use crate::combin::binom;
use crate::error::{Error, Result};
use crate::vset::VertexSet;
use crate::Rational;

/// A bipartition `(A, B)` of `0..n` plus a parity type.
///
/// With `eta = 1` the family is every k-set meeting `A` an odd number of
/// times; with `eta = 0` it is the even-intersection family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub n: u32,
    pub k: u32,
    pub a: VertexSet,
    pub eta: u8,
}

impl ExtremalSpec {
    pub fn new(n: u32, k: u32, a: VertexSet, eta: u8) -> Result<Self> {
        if k < 2 || k > n {
            return Err(Error::Size(format!("need 2 <= k <= n, got n={n}, k={k}")));
        }
        if a.last().is_some_and(|m| m >= n) {
            return Err(Error::Size(format!("A = {a} is not inside 0..{n}")));
        }
        if eta > 1 {
            return Err(Error::Precondition(format!("parity type must be 0 or 1, got {eta}")));
        }
        Ok(ExtremalSpec { n, k, a, eta })
    }

    /// The spec with `A = {0, .., size-1}`.
    pub fn with_prefix(n: u32, k: u32, size: u32, eta: u8) -> Result<Self> {
        if size > n {
            return Err(Error::Size(format!("|A| = {size} exceeds n = {n}")));
        }
        Self::new(n, k, VertexSet::range(size), eta)
    }

    pub fn b(&self) -> VertexSet {
        VertexSet::range(self.n).difference(&self.a)
    }

    /// `|S ∩ A| mod 2`.
    #[inline]
    pub fn eta_of(&self, s: &VertexSet) -> u8 {
        (s.intersection_len(&self.a) % 2) as u8
    }

    #[inline]
    pub fn contains(&self, e: &VertexSet) -> bool {
        self.eta_of(e) == self.eta
    }

    /// Same bipartition, opposite parity type.
    pub fn flipped(&self) -> Self {
        ExtremalSpec { eta: 1 - self.eta, ..self.clone() }
    }

    /// `η·(n/k) + |A| mod 2`.
    pub fn f_parity(&self) -> Result<u8> {
        if self.n % self.k != 0 {
            return Err(Error::Size(format!("k = {} does not divide n = {}", self.k, self.n)));
        }
        Ok(((self.eta as u32 * (self.n / self.k) + self.a.len() as u32) % 2) as u8)
    }

    pub fn in_hext(&self) -> Result<bool> {
        Ok(self.f_parity()? == 1)
    }

    /// The spec induced on `u`, relabeled order-preservingly.
    pub fn restrict(&self, u: &VertexSet) -> ExtremalSpec {
        let a = u.iter().enumerate().filter(|(_, v)| self.a.contains(*v)).map(|(i, _)| i as u32).collect();
        ExtremalSpec { n: u.len() as u32, k: self.k, a, eta: self.eta }
    }

    /// The spec left after deleting `removed`, relabeled.
    pub fn without(&self, removed: &VertexSet) -> ExtremalSpec {
        self.restrict(&VertexSet::range(self.n).difference(removed))
    }
}

/// `δ_ℓ` of the extremal family with `|A| = a`, by a binomial sum per `j = |S ∩ A|`.
pub fn delta_ell_extremal(a: u32, n: u32, k: u32, ell: u32, eta: u8) -> Result<u128> {
    if a > n || k > n || ell == 0 || ell >= k || eta > 1 {
        return Err(Error::Size(format!("need a <= n, 1 <= ell < k <= n; got a={a}, n={n}, k={k}, ell={ell}")));
    }
    let (a, n, k, ell) = (a as i64, n as i64, k as i64, ell as i64);
    let lo = 0.max(ell - (n - a));
    let hi = ell.min(a);
    let best = (lo..=hi)
        .map(|j| {
            (0..=k - ell)
                .filter(|i| (i + j) % 2 == eta as i64)
                .map(|i| binom(a - j, i) * binom(n - a - ell + j, k - ell - i))
                .sum::<u128>()
        })
        .min();
    Ok(best.unwrap_or(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMethod {
    Formula,
    Enumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgmaxEntry {
    pub a: u32,
    pub eta: u8,
}

/// The maximum minimum ℓ-degree over the extremal family `H_ext(n,k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub n: u32,
    pub k: u32,
    pub ell: u32,
    pub value: Rational,
    pub argmax: Vec<ArgmaxEntry>,
    pub method: ThresholdMethod,
    /// Which branch of the codegree formula applies (formula mode only).
    pub formula_case: Option<&'static str>,
}

/// Names the branch of the codegree formula for `(n, k)`.
pub fn codegree_case(n: u32, k: u32) -> Result<&'static str> {
    if k % 2 == 1 {
        if n % 2 == 0 {
            return Err(Error::CaseIllDefined(format!(
                "k = {k} is odd but n = {n} is even, so (n-1)/2 is not an integer"
            )));
        }
        return Ok(if ((n - 1) / 2) % 2 == 1 { "k odd, (n-1)/2 odd" } else { "k odd, (n-1)/2 even" });
    }
    Ok(if (k / 2) % 2 == 0 && (n / k) % 2 == 1 { "k/2 even, n/k odd" } else { "otherwise" })
}

/// Evaluates the piecewise codegree threshold.
pub fn codegree_formula(n: u32, k: u32) -> Result<(Rational, &'static str)> {
    let case = codegree_case(n, k)?;
    let half_n = Rational::new(n as i128, 2);
    let k = k as i128;
    let value = match case {
        "k/2 even, n/k odd" => half_n - k + 2,
        "k odd, (n-1)/2 odd" => half_n - k + Rational::new(3, 2),
        "k odd, (n-1)/2 even" => half_n - k + Rational::new(1, 2),
        _ => half_n - k + 1,
    };
    Ok((value, case))
}

pub fn delta_threshold(n: u32, k: u32, ell: u32, method: ThresholdMethod) -> Result<ThresholdReport> {
    if k < 2 || k > n || n % k != 0 {
        return Err(Error::Size(format!("need k | n with 2 <= k <= n, got n={n}, k={k}")));
    }
    if ell == 0 || ell >= k {
        return Err(Error::Size(format!("need 1 <= ell <= k-1, got ell={ell}")));
    }
    match method {
        ThresholdMethod::Formula => {
            if ell != k - 1 {
                return Err(Error::Unsupported(format!(
                    "no closed form for ell = {ell} < k-1; use enumeration"
                )));
            }
            let (value, case) = codegree_formula(n, k)?;
            Ok(ThresholdReport { n, k, ell, value, argmax: vec![], method, formula_case: Some(case) })
        }
        ThresholdMethod::Enumeration => {
            let t = n / k;
            let mut best: Option<u128> = None;
            let mut argmax = Vec::new();
            for a in 0..=n {
                for eta in [1u8, 0] {
                    if (eta as u32 * t + a) % 2 != 1 {
                        continue;
                    }
                    let d = delta_ell_extremal(a, n, k, ell, eta)?;
                    match best {
                        Some(b) if d < b => {}
                        Some(b) if d == b => argmax.push(ArgmaxEntry { a, eta }),
                        _ => {
                            best = Some(d);
                            argmax = vec![ArgmaxEntry { a, eta }];
                        }
                    }
                }
            }
            let value = Rational::from_integer(best.unwrap_or(0) as i128);
            Ok(ThresholdReport { n, k, ell, value, argmax, method, formula_case: None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{Hypergraph, DEFAULT_ENUM_BUDGET};

    fn vs(v: &[u32]) -> VertexSet {
        VertexSet::from_slice(v)
    }

    #[test]
    fn membership_by_parity() {
        let odd = ExtremalSpec::new(6, 3, vs(&[0, 1, 2]), 1).unwrap();
        assert!(odd.contains(&vs(&[0, 3, 4])));
        assert!(!odd.contains(&vs(&[0, 1, 3])));
        let even = odd.flipped();
        assert!(!even.contains(&vs(&[0, 3, 4])));
        assert!(even.contains(&vs(&[0, 1, 3])));
        let h = Hypergraph::extremal(&odd);
        assert_eq!(h.edge_count(DEFAULT_ENUM_BUDGET).unwrap(), 10);
    }

    #[test]
    fn eta_of_sets() {
        let spec = ExtremalSpec::new(6, 3, vs(&[0, 1, 2]), 1).unwrap();
        assert_eq!(spec.eta_of(&VertexSet::new()), 0);
        assert_eq!(spec.eta_of(&spec.a), 1);
        assert_eq!(spec.eta_of(&vs(&[1, 2, 4])), 0);
    }

    #[test]
    fn f_values() {
        assert_eq!(ExtremalSpec::with_prefix(6, 3, 3, 1).unwrap().f_parity().unwrap(), 1);
        assert_eq!(ExtremalSpec::with_prefix(6, 3, 2, 1).unwrap().f_parity().unwrap(), 0);
        assert!(ExtremalSpec::with_prefix(7, 3, 2, 1).unwrap().f_parity().is_err());
    }

    #[test]
    fn membership_in_hext_matches_both_definitions() {
        // H_ext holds the odd family when n/k - |A| is odd and the even family when |A| is odd
        for k in [3u32, 4, 6, 8] {
            for n in (k..=24).step_by(k as usize) {
                for a in 0..=n {
                    for eta in 0..2u8 {
                        let spec = ExtremalSpec::with_prefix(n, k, a, eta).unwrap();
                        let by_def = if eta == 1 { (n / k + a) % 2 == 1 } else { a % 2 == 1 };
                        assert_eq!(spec.in_hext().unwrap(), by_def, "n={n} k={k} a={a} eta={eta}");
                    }
                }
            }
        }
    }

    #[test]
    fn removing_a_same_type_edge_preserves_f() {
        let n = 9;
        let k = 3;
        for a in 0..=n {
            for eta in 0..2u8 {
                let spec = ExtremalSpec::with_prefix(n, k, a, eta).unwrap();
                let f = spec.f_parity().unwrap();
                for e in Hypergraph::extremal(&spec).edges(DEFAULT_ENUM_BUDGET).unwrap() {
                    assert_eq!(spec.without(&e).f_parity().unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(delta_ell_extremal(3, 6, 3, 2, 1).unwrap(), 1);
        assert_eq!(delta_ell_extremal(5, 6, 3, 2, 1).unwrap(), 0);
        for n in [6u32, 9, 12] {
            for ell in 1..3 {
                assert_eq!(delta_ell_extremal(0, n, 3, ell, 0).unwrap(), binom((n - ell) as i64, (3 - ell) as i64));
            }
        }
        assert!(delta_ell_extremal(7, 6, 3, 2, 1).is_err());
        assert!(delta_ell_extremal(3, 6, 3, 3, 1).is_err());
    }

    #[test]
    fn closed_form_matches_direct_minimum() {
        for k in [3u32, 4] {
            for n in k + 1..=9 {
                for a in 0..=n {
                    for eta in 0..2u8 {
                        let h = Hypergraph::extremal(&ExtremalSpec::with_prefix(n, k, a, eta).unwrap());
                        for ell in 1..k {
                            let direct = h.min_ell_degree(ell, DEFAULT_ENUM_BUDGET).unwrap();
                            assert_eq!(delta_ell_extremal(a, n, k, ell, eta).unwrap(), direct);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn formula_values() {
        let r = delta_threshold(56, 8, 7, ThresholdMethod::Formula).unwrap();
        assert_eq!(r.value, Rational::from_integer(22));
        let r = delta_threshold(21, 7, 6, ThresholdMethod::Formula).unwrap();
        assert_eq!(r.value, Rational::from_integer(4));
        assert_eq!(r.formula_case, Some("k odd, (n-1)/2 even"));
        assert!(matches!(delta_threshold(6, 3, 2, ThresholdMethod::Formula), Err(Error::CaseIllDefined(_))));
        assert!(matches!(delta_threshold(12, 4, 2, ThresholdMethod::Formula), Err(Error::Unsupported(_))));
    }

    #[test]
    fn enumeration_small() {
        let r = delta_threshold(6, 3, 2, ThresholdMethod::Enumeration).unwrap();
        assert_eq!(r.value, Rational::from_integer(1));
        for e in &r.argmax {
            let spec = ExtremalSpec::with_prefix(6, 3, e.a, e.eta).unwrap();
            assert!(spec.in_hext().unwrap());
        }
        // argmax is sorted by a, with eta = 1 first on ties
        let keys: Vec<(u32, u8)> = r.argmax.iter().map(|e| (e.a, 1 - e.eta)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn near_balanced_degree_is_about_half() {
        for n in [40u32, 48] {
            for ell in 1..4 {
                let d = delta_ell_extremal(n / 2, n, 4, ell, 1).unwrap() as f64;
                let ratio = d / binom((n - ell) as i64, (4 - ell) as i64) as f64;
                assert!((0.4..=0.6).contains(&ratio), "n={n} ell={ell} ratio={ratio}");
            }
        }
    }
}
