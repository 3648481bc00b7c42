//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector under the graded
//! lexicographic order, so the map's last entry is the leading term and
//! equality is plain structural equality.  Zero coefficients are never
//! stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::multiindex::MultiIndex;
use crate::rat::{rat_string, Rat};

/// Total degree with a distinguished value for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Of(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(MultiIndex::zero(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, Rat::from_integer(1.into()))
    }

    /// The coordinate `x_{i+1}` (indices are zero based in code).
    pub fn variable(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut p = Polynomial::zero(n);
        p.add_term(MultiIndex::unit(n, i), Rat::from_integer(1.into()));
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, Rat)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c * x^e` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: MultiIndex, c: Rat) {
        use std::collections::btree_map::Entry;
        assert_eq!(e.len(), self.n, "exponent arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &MultiIndex) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term under graded lex, `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&MultiIndex, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().map(|e| e.degree()).max() {
            None => Degree::MinusInfinity,
            Some(d) => Degree::Of(d),
        }
    }

    /// Common total degree of all terms, `None` if mixed or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables added to one in {}",
                self.n, other.n
            )));
        }
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables multiplied by one in {}",
                self.n, other.n
            )));
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        assert!(i < self.n);
        let mut out = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[i] -= 1;
            out.add_term(e2, c * Rat::from_integer(e.0[i].into()));
        }
        out
    }

    /// Exact quotient `self / divisor`, `None` when the division leaves a
    /// remainder.  Runs single-divisor reduction under graded lex; for an
    /// exact multiple the leading term of the remainder stays divisible at
    /// every step, so any failure certifies non-divisibility.
    pub fn divides_exact(divisor: &Polynomial, dividend: &Polynomial) -> Option<Polynomial> {
        assert_eq!(divisor.n, dividend.n);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let n = dividend.n;
        let (lead_e, lead_c) = divisor.leading().unwrap();
        let mut quotient = Polynomial::zero(n);
        let mut rem = dividend.clone();
        while let Some((re, rc)) = rem.leading() {
            let qe = re.checked_sub(lead_e)?;
            let qc = rc / lead_c;
            let mut t = Polynomial::zero(n);
            t.add_term(qe, qc);
            rem = &rem - &(&t * divisor);
            quotient = &quotient + &t;
        }
        Some(quotient)
    }

    /// Applies an invertible linear substitution: variable `x_i` is replaced
    /// by the linear form `subs[i]`.
    pub fn substitute_linear(&self, subs: &[Polynomial]) -> Polynomial {
        assert_eq!(subs.len(), self.n);
        let mut out = Polynomial::zero(self.n);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(self.n, c.clone());
            for (i, &exp) in e.0.iter().enumerate() {
                if exp > 0 {
                    term = &term * &subs[i].pow(exp);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// JSON-facing representation, one record per term.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| TermRecord {
                coeff: c.clone(),
                exps: e.0.clone(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Polynomial, Error> {
        let n = match records.first() {
            Some(r) => r.exps.len(),
            None => return Err(Error::Parse("empty polynomial term list".into())),
        };
        let mut p = Polynomial::zero(n);
        for r in records {
            if r.exps.len() != n {
                return Err(Error::DimensionMismatch(
                    "polynomial terms with differing exponent arity".into(),
                ));
            }
            p.add_term(MultiIndex(r.exps.clone()), r.coeff.clone());
        }
        Ok(p)
    }
}

/// One polynomial term in the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    #[serde(with = "rat_string")]
    pub coeff: Rat,
    pub exps: Vec<u32>,
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "polynomial arity");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self + &(-other)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "polynomial arity");
        let mut out = Polynomial::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Leading term first, `p/q` coefficients, variables printed `x1..xn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c < &Rat::zero() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                pieces.push(mag.to_string());
            }
            for (i, &exp) in e.0.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => pieces.push(format!("x{}", i + 1)),
                    _ => pieces.push(format!("x{}^{}", i + 1, exp)),
                }
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn xp(n: usize, i: usize) -> Polynomial {
        Polynomial::variable(n, i)
    }

    /// x1*x2*x3 + x1^2*x4, the running 4-variable example.
    fn sample4() -> Polynomial {
        let x = |i| xp(4, i);
        &(&(&x(0) * &x(1)) * &x(2)) + &(&(&x(0) * &x(0)) * &x(3))
    }

    #[test]
    fn product_matches_hand_expansion() {
        let f = sample4();
        let x2 = xp(4, 1);
        let got = &f * &x2;
        let x = |i| xp(4, i);
        let want = &(&(&x(0) * &(&x(1) * &x(1))) * &x(2)) + &(&(&(&x(0) * &x(0)) * &x(1)) * &x(3));
        assert_eq!(got, want);
    }

    #[test]
    fn degree_and_homogeneity() {
        assert_eq!(Polynomial::zero(2).degree(), Degree::MinusInfinity);
        assert_eq!(sample4().degree(), Degree::Of(3));
        assert_eq!(sample4().homogeneous_degree(), Some(3));
        let mixed = &sample4() + &Polynomial::one(4);
        assert_eq!(mixed.homogeneous_degree(), None);
        assert_eq!(Polynomial::zero(4).homogeneous_degree(), None);
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let f = &xp(n, 0) * &xp(n, 1);
        let g = &f * &f;
        assert_eq!(Polynomial::divides_exact(&f, &g), Some(f.clone()));

        let sum = &xp(n, 0) + &xp(n, 1);
        let diff = &xp(n, 0) - &xp(n, 1);
        let prod = &sum * &diff; // x1^2 - x2^2
        assert_eq!(Polynomial::divides_exact(&sum, &prod), Some(diff));

        let x1 = xp(n, 0);
        assert_eq!(Polynomial::divides_exact(&sum, &x1), None);
    }

    #[test]
    fn division_with_rational_leading_coeff() {
        let n = 1;
        let f = Polynomial::from_terms(
            n,
            [
                (MultiIndex(vec![1]), ratio(2, 3)),
                (MultiIndex(vec![0]), rat(1)),
            ],
        );
        let g = &f * &f;
        assert_eq!(Polynomial::divides_exact(&f, &g), Some(f.clone()));
    }

    #[test]
    fn partial_derivative() {
        let f = sample4(); // x1x2x3 + x1^2 x4
        let x = |i| xp(4, i);
        let d1 = f.partial(0);
        let want = &(&x(1) * &x(2)) + &(&x(0) * &x(3)).scale(&rat(2));
        assert_eq!(d1, want);
    }

    #[test]
    fn cancellation_removes_entries() {
        let f = sample4();
        let z = &f - &f;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn display_form() {
        let f = sample4();
        assert_eq!(f.to_string(), "x1^2*x4 + x1*x2*x3");
        let c = Polynomial::constant(2, ratio(-1, 2));
        assert_eq!(c.to_string(), "-1/2");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn records_roundtrip() {
        let f = sample4();
        let records = f.to_records();
        let back = Polynomial::from_records(&records).unwrap();
        assert_eq!(f, back);
        let json = serde_json::to_string(&records).unwrap();
        let parsed: Vec<TermRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(Polynomial::from_records(&parsed).unwrap(), f);
    }

    #[test]
    fn linear_substitution() {
        // f(x1,x2) = x1*x2 under x1 -> x1+x2, x2 -> x2
        let f = &xp(2, 0) * &xp(2, 1);
        let subs = vec![&xp(2, 0) + &xp(2, 1), xp(2, 1)];
        let got = f.substitute_linear(&subs);
        let want = &(&xp(2, 0) * &xp(2, 1)) + &(&xp(2, 1) * &xp(2, 1));
        assert_eq!(got, want);
    }
}
