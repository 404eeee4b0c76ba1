//! Laurent polynomials in `q` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finitely supported `exponent → coefficient` map with no zero entries.
/// Serialized as its display string.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c q^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(c, k);
        p
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(c, k) in terms {
            p.add_term(c, k);
        }
        p
    }

    pub fn add_term(&mut self, c: i64, k: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.coeffs.get(&k).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&k, &c)| (-k, c)).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Every exponent is positive, i.e. the value lies in `qZ[q]`.
    pub fn in_q_zq(&self) -> bool {
        self.min_exp().is_none_or(|k| k > 0)
    }

    /// The unique bar-invariant `s` with `self − s ∈ qZ[q]`.
    pub fn bar_symmetric_part(&self) -> Self {
        let mut s = LaurentPoly::zero();
        for (k, c) in self.terms() {
            if k == 0 {
                s.add_term(c, 0);
            } else if k < 0 {
                s.add_term(c, k);
                s.add_term(c, -k);
            }
        }
        s
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, x) in self.terms() {
            p.add_term(c * x, k);
        }
        p
    }

    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&k, &c)| (k + s, c)).collect() }
    }

    /// Quantum integer `[n] = q^{n-1} + q^{n-3} + ⋯ + q^{1-n}`.
    pub fn quantum_int(n: u32) -> Self {
        let n = n as i64;
        let mut p = LaurentPoly::zero();
        for j in 0..n {
            p.add_term(1, n - 1 - 2 * j);
        }
        p
    }

    /// `[n]! = [1][2]⋯[n]`.
    pub fn quantum_factorial(n: u32) -> Self {
        (1..=n).fold(LaurentPoly::one(), |acc, j| &acc * &LaurentPoly::quantum_int(j))
    }

    /// Exact quotient, or an error when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(dlo), Some(dhi)) = (divisor.min_exp(), divisor.max_exp()) else {
            return Err(Error::Convention("division by zero".into()));
        };
        let Some(lo) = self.min_exp() else {
            return Ok(LaurentPoly::zero());
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(top) = rem.max_exp() {
            let k = top - dhi;
            let c = rem.coeff(top);
            if k < lo - dlo || c % lead != 0 {
                return Err(Error::Convention(format!("{divisor} does not divide {self}")));
            }
            let q = c / lead;
            quot.add_term(q, k);
            for (j, x) in divisor.terms() {
                rem.add_term(-q * x, j + k);
            }
        }
        Ok(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in rhs.terms() {
            self.add_term(c, k);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in rhs.terms() {
            self.add_term(-c, k);
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(x * y, a + b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `q^5+2q^3+q`, `1`, `-q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().rev() {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (k, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "q".to_string(),
                (1, m) => format!("{m}q"),
                (k, 1) => format!("q^{k}"),
                (k, m) => format!("{m}q^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    /// Parses the output of `Display`, e.g. `2q^3+q-1`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad Laurent polynomial {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        let mut p = LaurentPoly::zero();
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(t)),
            };
            let (coef, exp) = match body.find('q') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 { 1 } else { body[..pos].parse::<i64>().map_err(|_| bad())? };
                    let rest = &body[pos + 1..];
                    let k = if rest.is_empty() { 1 } else { rest.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())? };
                    (c, k)
                }
            };
            p.add_term(sign * coef, exp);
        }
        Ok(p)
    }
}

impl From<LaurentPoly> for String {
    fn from(p: LaurentPoly) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for LaurentPoly {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse() {
        for s in ["q^5+2q^3+q", "1", "-q^-2", "2q^4+q^2", "q-1", "0q"] {
            if s == "0q" {
                assert!(lp(s).is_zero());
                continue;
            }
            assert_eq!(lp(s).to_string(), s);
        }
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!(lp("0").is_zero());
    }

    #[test]
    fn json_round_trip() {
        let p = lp("q^5+2q^3-q^-1");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "\"q^5+2q^3-q^-1\"");
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }

    #[test]
    fn arithmetic() {
        let a = lp("q+1");
        assert_eq!(&a * &a, lp("q^2+2q+1"));
        assert_eq!(&a - &a, LaurentPoly::zero());
        assert_eq!(lp("q^2+q^-1").bar(), lp("q^-2+q"));
        assert_eq!(LaurentPoly::quantum_int(3), lp("q^2+1+q^-2"));
        assert_eq!(LaurentPoly::quantum_factorial(3), lp("q^3+2q+2q^-1+q^-3"));
    }

    #[test]
    fn exact_division() {
        let f = LaurentPoly::quantum_factorial(3);
        let p = &f * &lp("q^4-3q^-1");
        assert_eq!(p.div_exact(&f).unwrap(), lp("q^4-3q^-1"));
        assert!(lp("q^2+2").div_exact(&lp("q+q^-1")).is_err());
        assert!(lp("2q").div_exact(&lp("3")).is_err());
    }

    #[test]
    fn symmetric_part() {
        let p = lp("q^3+2q-5+4q^-1+7q^-2");
        let s = p.bar_symmetric_part();
        assert!(s.is_bar_invariant());
        assert!((&p - &s).in_q_zq());
        assert!(lp("q^5+2q^3+q").in_q_zq());
        assert!(!lp("1").in_q_zq());
    }
}
