//! Polynomials in `x_1..x_n` and one extra central variable `s`, stored as a
//! coefficient list in powers of `s`.  These are the numerators of the
//! `f^s`-module elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::Polynomial;
use crate::rat::{rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPolynomial {
    n: usize,
    /// `coeffs[k]` multiplies `s^k`; trailing zero polynomials are trimmed.
    coeffs: Vec<Polynomial>,
}

impl SPolynomial {
    pub fn zero(n: usize) -> Self {
        SPolynomial {
            n,
            coeffs: Vec::new(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.n();
        let mut out = SPolynomial { n, coeffs: vec![p] };
        out.trim();
        out
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        SPolynomial::from_poly(Polynomial::constant(n, c))
    }

    /// The variable `s` itself.
    pub fn s(n: usize) -> Self {
        SPolynomial {
            n,
            coeffs: vec![Polynomial::zero(n), Polynomial::one(n)],
        }
    }

    /// Builds `sum coeffs[k] * s^k` from constant rational coefficients.
    pub fn from_s_coeffs(n: usize, cs: &[Rat]) -> Self {
        let mut out = SPolynomial {
            n,
            coeffs: cs
                .iter()
                .map(|c| Polynomial::constant(n, c.clone()))
                .collect(),
        };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|p| p.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `s`, `None` for zero.
    pub fn s_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Polynomial {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rat) -> SPolynomial {
        let mut out = SPolynomial {
            n: self.n,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        };
        out.trim();
        out
    }

    pub fn mul_poly(&self, p: &Polynomial) -> SPolynomial {
        assert_eq!(self.n, p.n(), "polynomial arity");
        let mut out = SPolynomial {
            n: self.n,
            coeffs: self.coeffs.iter().map(|q| q * p).collect(),
        };
        out.trim();
        out
    }

    /// Multiplies by `s + shift`.
    pub fn mul_s_plus(&self, shift: &Rat) -> SPolynomial {
        let mut coeffs = vec![Polynomial::zero(self.n); self.coeffs.len() + 1];
        for (k, p) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = &coeffs[k + 1] + p;
            coeffs[k] = &coeffs[k] + &p.scale(shift);
        }
        let mut out = SPolynomial { n: self.n, coeffs };
        out.trim();
        out
    }

    /// Partial derivative in `x_i`; `s` is a constant for this operator.
    pub fn partial(&self, i: usize) -> SPolynomial {
        let mut out = SPolynomial {
            n: self.n,
            coeffs: self.coeffs.iter().map(|p| p.partial(i)).collect(),
        };
        out.trim();
        out
    }

    /// Substitutes `s -> s + 1`.
    pub fn shift_s(&self) -> SPolynomial {
        let len = self.coeffs.len();
        let mut coeffs = vec![Polynomial::zero(self.n); len];
        for (k, p) in self.coeffs.iter().enumerate() {
            // (s+1)^k expands through the binomial coefficients
            for (j, item) in coeffs.iter_mut().enumerate().take(k + 1) {
                let b = Rat::from_integer(crate::rat::binomial(k as u32, j as u32));
                *item = &*item + &p.scale(&b);
            }
        }
        let mut out = SPolynomial { n: self.n, coeffs };
        out.trim();
        out
    }

    /// Divides every `s`-coefficient by `g` exactly, `None` on any remainder.
    pub fn divides_exact(g: &Polynomial, this: &SPolynomial) -> Option<SPolynomial> {
        let coeffs = this
            .coeffs
            .iter()
            .map(|p| {
                if p.is_zero() {
                    Some(Polynomial::zero(this.n))
                } else {
                    Polynomial::divides_exact(g, p)
                }
            })
            .collect::<Option<Vec<_>>>()?;
        let mut out = SPolynomial { n: this.n, coeffs };
        out.trim();
        Some(out)
    }

    /// Evaluates at a rational `s`-value, leaving a polynomial in `x`.
    pub fn eval_s(&self, value: &Rat) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        let mut power = rat(1);
        for p in &self.coeffs {
            out = &out + &p.scale(&power);
            power *= value;
        }
        out
    }
}

impl Add for &SPolynomial {
    type Output = SPolynomial;
    fn add(self, other: &SPolynomial) -> SPolynomial {
        assert_eq!(self.n, other.n, "polynomial arity");
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(&self.coeff(k) + &other.coeff(k));
        }
        let mut out = SPolynomial { n: self.n, coeffs };
        out.trim();
        out
    }
}

impl Sub for &SPolynomial {
    type Output = SPolynomial;
    fn sub(self, other: &SPolynomial) -> SPolynomial {
        self + &(-other)
    }
}

impl Neg for &SPolynomial {
    type Output = SPolynomial;
    fn neg(self) -> SPolynomial {
        SPolynomial {
            n: self.n,
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
        }
    }
}

impl Mul for &SPolynomial {
    type Output = SPolynomial;
    fn mul(self, other: &SPolynomial) -> SPolynomial {
        assert_eq!(self.n, other.n, "polynomial arity");
        if self.is_zero() || other.is_zero() {
            return SPolynomial::zero(self.n);
        }
        let mut coeffs = vec![Polynomial::zero(self.n); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, q) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(p * q);
            }
        }
        let mut out = SPolynomial { n: self.n, coeffs };
        out.trim();
        out
    }
}

impl fmt::Display for SPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let coeff = if p.num_terms() == 1 && !p.is_zero() && k > 0 {
                p.to_string()
            } else if k > 0 {
                format!("({p})")
            } else {
                p.to_string()
            };
            let piece = match k {
                0 => coeff,
                1 => format!("{coeff}*s"),
                _ => format!("{coeff}*s^{k}"),
            };
            pieces.push(piece);
        }
        write!(f, "{}", pieces.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn n2_sample() -> SPolynomial {
        // (x1 + s*x2)
        let x1 = Polynomial::variable(2, 0);
        let x2 = Polynomial::variable(2, 1);
        &SPolynomial::from_poly(x1) + &SPolynomial::s(2).mul_poly(&x2)
    }

    #[test]
    fn shift_s_matches_binomials() {
        // (s^2) shifted is s^2 + 2s + 1
        let s = SPolynomial::s(1);
        let s2 = &s * &s;
        let shifted = s2.shift_s();
        let want = SPolynomial::from_s_coeffs(1, &[rat(1), rat(2), rat(1)]);
        assert_eq!(shifted, want);
    }

    #[test]
    fn mul_s_plus_shift() {
        // (x1 + s*x2) * (s - 2)
        let p = n2_sample();
        let got = p.mul_s_plus(&rat(-2));
        let x1 = Polynomial::variable(2, 0);
        let x2 = Polynomial::variable(2, 1);
        assert_eq!(got.coeff(0), x1.scale(&rat(-2)));
        assert_eq!(got.coeff(1), &x1 - &x2.scale(&rat(2)));
        assert_eq!(got.coeff(2), x2);
    }

    #[test]
    fn exact_coefficientwise_division() {
        let f = Polynomial::variable(2, 0); // x1
        let p = n2_sample().mul_poly(&f);
        let q = SPolynomial::divides_exact(&f, &p).unwrap();
        assert_eq!(q, n2_sample());
        assert!(SPolynomial::divides_exact(&Polynomial::variable(2, 1), &p).is_none());
    }

    #[test]
    fn eval_at_rational_s() {
        let p = n2_sample();
        let v = p.eval_s(&ratio(1, 2));
        let want = &Polynomial::variable(2, 0) + &Polynomial::variable(2, 1).scale(&ratio(1, 2));
        assert_eq!(v, want);
    }

    #[test]
    fn display_readable() {
        assert_eq!(n2_sample().to_string(), "x2*s + x1");
        assert_eq!(SPolynomial::zero(2).to_string(), "0");
    }
}
