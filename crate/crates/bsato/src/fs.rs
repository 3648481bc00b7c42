//! The module generated by the formal symbol `f^s` over the Weyl algebra
//! with central `s`.
//!
//! Elements are fractions `(N / f^m) f^s` with `N` a polynomial in `x` and
//! `s`.  The representation is kept minimal: `m` drops whenever `f` divides
//! every `s`-coefficient of `N`.  Differentiation follows
//! `d_i (N/f^m) f^s = ((f d_i N + (s - m) N d_i f) / f^{m+1}) f^s`,
//! and the `t`-shift substitutes `s -> s+1` and multiplies by one `f`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::Error;
use crate::poly::Polynomial;
use crate::rat::{rat, ratio, Rat};
use crate::spoly::SPolynomial;
use crate::weyl::WeylOperator;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsElement {
    f: Polynomial,
    num: SPolynomial,
    fpow: u32,
}

impl FsElement {
    /// The generator `f^s` itself.
    pub fn fs(f: Polynomial) -> Self {
        let n = f.n();
        FsElement {
            f,
            num: SPolynomial::constant(n, rat(1)),
            fpow: 0,
        }
    }

    pub fn new(f: Polynomial, num: SPolynomial, fpow: u32) -> Self {
        assert_eq!(f.n(), num.n(), "polynomial arity");
        let mut e = FsElement { f, num, fpow };
        e.normalize();
        e
    }

    /// Cancels common `f` factors; the zero element is stored with `m = 0`.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.fpow = 0;
            return;
        }
        while self.fpow > 0 {
            match SPolynomial::divides_exact(&self.f, &self.num) {
                Some(q) => {
                    self.num = q;
                    self.fpow -= 1;
                }
                None => break,
            }
        }
    }

    pub fn base(&self) -> &Polynomial {
        &self.f
    }

    pub fn numerator(&self) -> &SPolynomial {
        &self.num
    }

    pub fn fpow(&self) -> u32 {
        self.fpow
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn zero_like(&self) -> FsElement {
        FsElement {
            f: self.f.clone(),
            num: SPolynomial::zero(self.n()),
            fpow: 0,
        }
    }

    pub fn scale(&self, c: &Rat) -> FsElement {
        FsElement::new(self.f.clone(), self.num.scale(c), self.fpow)
    }

    /// Multiplication by a polynomial in `x`.
    pub fn mul_poly(&self, g: &Polynomial) -> FsElement {
        FsElement::new(self.f.clone(), self.num.mul_poly(g), self.fpow)
    }

    /// Multiplication by the central variable `s`.
    pub fn mul_s(&self) -> FsElement {
        FsElement::new(self.f.clone(), self.num.mul_s_plus(&rat(0)), self.fpow)
    }

    /// Applies `d_i`.
    pub fn apply_partial(&self, i: usize) -> FsElement {
        let df = self.f.partial(i);
        let a = self.num.partial(i).mul_poly(&self.f);
        let b = self
            .num
            .mul_s_plus(&rat(-i64::from(self.fpow)))
            .mul_poly(&df);
        FsElement::new(self.f.clone(), &a + &b, self.fpow + 1)
    }

    /// Applies a normal-form operator term by term: for `x^beta d^alpha s^k`
    /// the derivatives act first, then the `x` and `s` multiplications.
    pub fn apply(&self, op: &WeylOperator) -> FsElement {
        assert_eq!(op.n(), self.n(), "operator arity");
        let mut acc = self.zero_like();
        for ((beta, alpha, k), c) in op.terms() {
            let mut e = self.clone();
            for (i, &a) in alpha.0.iter().enumerate() {
                for _ in 0..a {
                    e = e.apply_partial(i);
                }
            }
            let mut xb = Polynomial::one(self.n());
            for (i, &b) in beta.0.iter().enumerate() {
                if b > 0 {
                    xb = &xb * &Polynomial::variable(self.n(), i).pow(b);
                }
            }
            e = e.mul_poly(&xb);
            for _ in 0..*k {
                e = e.mul_s();
            }
            acc = &acc + &e.scale(c);
        }
        acc
    }

    /// The shift `s -> s+1` followed by multiplication with one `f`; this
    /// realizes passing from `f^s` to `f^{s+1}`.
    pub fn t_shift(&self) -> FsElement {
        let shifted = self.num.shift_s();
        if self.fpow > 0 {
            FsElement::new(self.f.clone(), shifted, self.fpow - 1)
        } else {
            let num = shifted.mul_poly(&self.f);
            FsElement::new(self.f.clone(), num, 0)
        }
    }
}

impl Add for &FsElement {
    type Output = FsElement;
    fn add(self, other: &FsElement) -> FsElement {
        assert_eq!(self.f, other.f, "elements over different base polynomials");
        let m = self.fpow.max(other.fpow);
        let lift = |e: &FsElement| {
            let mut num = e.num.clone();
            for _ in e.fpow..m {
                num = num.mul_poly(&e.f);
            }
            num
        };
        FsElement::new(self.f.clone(), &lift(self) + &lift(other), m)
    }
}

impl Sub for &FsElement {
    type Output = FsElement;
    fn sub(self, other: &FsElement) -> FsElement {
        self + &(-other)
    }
}

impl Neg for &FsElement {
    type Output = FsElement;
    fn neg(self) -> FsElement {
        FsElement {
            f: self.f.clone(),
            num: -&self.num,
            fpow: self.fpow,
        }
    }
}

impl fmt::Display for FsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        match self.fpow {
            0 => write!(f, "({}) * f^s", self.num),
            1 => write!(f, "({}) / f * f^s", self.num),
            m => write!(f, "({}) / f^{} * f^s", self.num, m),
        }
    }
}

/// True iff `P` annihilates `f^s`.
pub fn is_annihilator(op: &WeylOperator, f: &Polynomial) -> bool {
    FsElement::fs(f.clone()).apply(op).is_zero()
}

/// A candidate identity `P(s) f^{s+1} = b(s) f^s`; `b` is stored by its
/// coefficients in ascending powers of `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsPair {
    pub operator: WeylOperator,
    pub bpoly: Vec<Rat>,
}

/// Outcome of checking a pair: the residual `P f^{s+1} - b(s) f^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsCheck {
    pub holds: bool,
    pub residual: FsElement,
}

/// Verifies `P(s) f^{s+1} = b(s) f^s` exactly.
pub fn bs_pair_check(pair: &BsPair, f: &Polynomial) -> Result<BsCheck, Error> {
    if pair.operator.n() != f.n() {
        return Err(Error::DimensionMismatch(format!(
            "operator in {} variables against a polynomial in {}",
            pair.operator.n(),
            f.n()
        )));
    }
    let fs = FsElement::fs(f.clone());
    let lhs = fs.t_shift().apply(&pair.operator);
    let b_num = SPolynomial::from_s_coeffs(f.n(), &pair.bpoly);
    let rhs = FsElement::new(f.clone(), b_num, 0);
    let residual = &lhs - &rhs;
    Ok(BsCheck {
        holds: residual.is_zero(),
        residual,
    })
}

/// Witness report for the Euler identity
/// `s f^s = -(n/d) f^s + (1/d) sum_i d_i (x_i f^s)`
/// valid for homogeneous `f` of degree `d` in `n` variables; it exhibits
/// `-n/d` as a root of any `b` fitting a pair whose operator fixes `f^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerWitness {
    pub n: usize,
    pub d: u32,
    pub root: Rat,
    pub verified: bool,
}

pub fn euler_root_witness(f: &Polynomial) -> Result<EulerWitness, Error> {
    let Some(d) = f.homogeneous_degree() else {
        return Err(Error::NotHomogeneous);
    };
    if d == 0 {
        return Err(Error::InvalidInput(
            "polynomial must have positive degree".into(),
        ));
    }
    let n = f.n();
    let fs = FsElement::fs(f.clone());
    let lhs = fs.mul_s();
    let mut rhs = fs.scale(&ratio(-(n as i64), i64::from(d)));
    let inv_d = ratio(1, i64::from(d));
    for i in 0..n {
        let xi = Polynomial::variable(n, i);
        let term = fs.mul_poly(&xi).apply_partial(i);
        rhs = &rhs + &term.scale(&inv_d);
    }
    Ok(EulerWitness {
        n,
        d,
        root: ratio(-(n as i64), i64::from(d)),
        verified: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Gen;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::variable(n, i)
    }

    #[test]
    fn derivative_of_fs() {
        // f = x1^2: d1 f^s = (2 s x1 / f) f^s
        let f = &x(1, 0) * &x(1, 0);
        let e = FsElement::fs(f.clone()).apply_partial(0);
        assert_eq!(e.fpow(), 1);
        let want = SPolynomial::s(1).mul_poly(&x(1, 0).scale(&rat(2)));
        assert_eq!(e.numerator(), &want);
        assert_eq!(e.to_string(), "(2*x1*s) / f * f^s");
    }

    #[test]
    fn annihilator_of_monomial_product() {
        // x1 d1 - x2 d2 kills (x1 x2)^s
        let n = 2;
        let f = &x(n, 0) * &x(n, 1);
        let p = &WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)])
            - &WeylOperator::from_word(n, &[Gen::X(1), Gen::D(1)]);
        assert!(is_annihilator(&p, &f));
        assert!(!is_annihilator(&WeylOperator::d(n, 0), &f));
    }

    #[test]
    fn euler_operator_reproduces_s() {
        // (1/d) sum x_i d_i acts as multiplication by s on f^s
        let n = 2;
        let f = &(&x(n, 0) * &x(n, 1)) * &(&x(n, 0) + &x(n, 1));
        let fs = FsElement::fs(f.clone());
        let mut acc = fs.zero_like();
        for i in 0..n {
            let xd = WeylOperator::from_word(n, &[Gen::X(i), Gen::D(i)]);
            acc = &acc + &fs.apply(&xd);
        }
        assert_eq!(acc.scale(&ratio(1, 3)), fs.mul_s());
    }

    #[test]
    fn application_is_a_module_action() {
        // (P*Q) e = P (Q e) for a handful of operators
        let n = 2;
        let f = &(&x(n, 0) * &x(n, 0)) + &(&x(n, 1) * &x(n, 1));
        let e = FsElement::fs(f.clone()).apply_partial(0);
        let p = WeylOperator::from_word(n, &[Gen::D(0), Gen::X(0), Gen::D(1)]);
        let q = &WeylOperator::from_word(n, &[Gen::X(1), Gen::D(0)])
            + &WeylOperator::s(n).scale(&ratio(1, 3));
        assert_eq!(e.apply(&(&p * &q)), e.apply(&q).apply(&p));
    }

    #[test]
    fn t_shift_examples() {
        let f = &x(1, 0) * &x(1, 0);
        let fs = FsElement::fs(f.clone());
        // f^s shifts to f * f^s
        let shifted = fs.t_shift();
        assert_eq!(shifted.fpow(), 0);
        assert_eq!(shifted.numerator(), &SPolynomial::from_poly(f.clone()));
        // s f^s shifts to (s+1) f f^s
        let sfs = fs.mul_s().t_shift();
        assert_eq!(
            sfs.numerator(),
            &SPolynomial::from_poly(f.clone()).mul_s_plus(&rat(1))
        );
        // (2 s x1 / f) f^s shifts to 2 (s+1) x1 f^s
        let e = fs.apply_partial(0).t_shift();
        assert_eq!(e.fpow(), 0);
        let want = SPolynomial::from_poly(x(1, 0).scale(&rat(2))).mul_s_plus(&rat(1));
        assert_eq!(e.numerator(), &want);
    }

    #[test]
    fn shift_intertwines_s() {
        // t_shift(s * e) = (s + 1) * t_shift(e)
        let f = &x(2, 0) * &x(2, 1);
        let e = FsElement::fs(f.clone()).apply_partial(0);
        let lhs = e.mul_s().t_shift();
        let te = e.t_shift();
        let rhs = &te.mul_s() + &te;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bs_pair_for_a_single_variable() {
        let f = x(1, 0);
        let pair = BsPair {
            operator: WeylOperator::d(1, 0),
            bpoly: vec![rat(1), rat(1)],
        };
        let check = bs_pair_check(&pair, &f).unwrap();
        assert!(check.holds);

        // a wrong b leaves the residual -f^s
        let bad = BsPair {
            operator: WeylOperator::d(1, 0),
            bpoly: vec![rat(2), rat(1)],
        };
        let check = bs_pair_check(&bad, &f).unwrap();
        assert!(!check.holds);
        assert_eq!(check.residual, -&FsElement::fs(f.clone()));
    }

    #[test]
    fn bs_pair_for_coordinate_product() {
        // f = x1 x2, P = d1 d2, b = (s+1)^2
        let n = 2;
        let f = &x(n, 0) * &x(n, 1);
        let p = WeylOperator::from_word(n, &[Gen::D(0), Gen::D(1)]);
        let pair = BsPair {
            operator: p,
            bpoly: vec![rat(1), rat(2), rat(1)],
        };
        assert!(bs_pair_check(&pair, &f).unwrap().holds);
    }

    #[test]
    fn bs_pair_for_powers() {
        // f = x^a, P = a^{-a} d^a, b = prod_{i=1}^{a} (s + i/a)
        for a in 1u32..=4 {
            let f = x(1, 0).pow(a);
            let mut word = Vec::new();
            for _ in 0..a {
                word.push(Gen::D(0));
            }
            let scale = ratio(1, i64::from(a).pow(a));
            let op = WeylOperator::from_word(1, &word).scale(&scale);
            let mut b = SPolynomial::constant(1, rat(1));
            for i in 1..=a {
                b = b.mul_s_plus(&ratio(i64::from(i), i64::from(a)));
            }
            let bpoly: Vec<Rat> = b
                .coeffs()
                .iter()
                .map(|p| p.coeff(&crate::multiindex::MultiIndex::zero(1)))
                .collect();
            let pair = BsPair {
                operator: op,
                bpoly,
            };
            assert!(bs_pair_check(&pair, &f).unwrap().holds, "a = {a}");
        }
    }

    #[test]
    fn euler_witness_examples() {
        // f = x1 x2 (x1 + x2): root -2/3
        let n = 2;
        let f = &(&x(n, 0) * &x(n, 1)) * &(&x(n, 0) + &x(n, 1));
        let w = euler_root_witness(&f).unwrap();
        assert!(w.verified);
        assert_eq!(w.root, ratio(-2, 3));

        // f = x1: root -1
        let w = euler_root_witness(&x(1, 0)).unwrap();
        assert!(w.verified);
        assert_eq!(w.root, rat(-1));

        // non-homogeneous input is rejected
        let g = &x(2, 0) + &(&x(2, 1) * &x(2, 1));
        assert_eq!(euler_root_witness(&g), Err(Error::NotHomogeneous));
    }
}
