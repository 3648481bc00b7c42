//! The rational Weyl algebra with a central parameter `s`.
//!
//! Operators are kept in `x`-left normal form: a sum of monomials
//! `c * x^beta d^alpha s^k` keyed by `(beta, alpha, k)`.  The commutation
//! rule is `[d_i, x_i] = 1`, all other pairs of generators commute, and `s`
//! commutes with everything.
//!
//! The module also provides the anti-normal expansion (all `d` to the left,
//! all `x` to the right) and the combinatorial test for membership in the
//! left ideal generated by `x_1..x_n`: an operator with every term obeying
//! `|alpha| - |beta| = k` lies in that ideal exactly when, for each
//! nonnegative `gamma` with `|gamma| = k`, the sum of
//! `(-1)^{|alpha|} alpha! lambda_{beta,alpha}` over pairs with
//! `alpha - beta = gamma` vanishes.  Negative `k` passes vacuously.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::Error;
use crate::multiindex::MultiIndex;
use crate::rat::{binomial, factorial, Rat};

/// One letter of a generator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen {
    X(usize),
    D(usize),
    S,
    Scalar(Rat),
}

/// `(x-exponent, d-exponent, s-power)`.
pub type Key = (MultiIndex, MultiIndex, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylOperator {
    n: usize,
    terms: BTreeMap<Key, Rat>,
}

impl WeylOperator {
    pub fn zero(n: usize) -> Self {
        WeylOperator {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        WeylOperator::scalar(n, Rat::from_integer(1.into()))
    }

    pub fn scalar(n: usize, c: Rat) -> Self {
        let mut op = WeylOperator::zero(n);
        op.add_term((MultiIndex::zero(n), MultiIndex::zero(n), 0), c);
        op
    }

    pub fn x(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut op = WeylOperator::zero(n);
        op.add_term(
            (MultiIndex::unit(n, i), MultiIndex::zero(n), 0),
            Rat::from_integer(1.into()),
        );
        op
    }

    pub fn d(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut op = WeylOperator::zero(n);
        op.add_term(
            (MultiIndex::zero(n), MultiIndex::unit(n, i), 0),
            Rat::from_integer(1.into()),
        );
        op
    }

    pub fn s(n: usize) -> Self {
        let mut op = WeylOperator::zero(n);
        op.add_term(
            (MultiIndex::zero(n), MultiIndex::zero(n), 1),
            Rat::from_integer(1.into()),
        );
        op
    }

    /// Normal form of a word of generators, multiplied left to right.
    pub fn from_word(n: usize, word: &[Gen]) -> Self {
        let mut acc = WeylOperator::one(n);
        for g in word {
            let factor = match g {
                Gen::X(i) => WeylOperator::x(n, *i),
                Gen::D(i) => WeylOperator::d(n, *i),
                Gen::S => WeylOperator::s(n),
                Gen::Scalar(c) => WeylOperator::scalar(n, c.clone()),
            };
            acc = &acc * &factor;
        }
        acc
    }

    pub fn add_term(&mut self, key: Key, c: Rat) {
        use std::collections::btree_map::Entry;
        assert_eq!(key.0.len(), self.n);
        assert_eq!(key.1.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &Key) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> WeylOperator {
        if c.is_zero() {
            return WeylOperator::zero(self.n);
        }
        WeylOperator {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> WeylOperator {
        let mut acc = WeylOperator::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// True when no term carries a positive power of `s`.
    pub fn is_s_free(&self) -> bool {
        self.terms.keys().all(|(_, _, k)| *k == 0)
    }

    /// Splits by the grading `|alpha| - |beta|` (the `s`-power plays no
    /// role in the grading).
    pub fn graded_parts(&self) -> BTreeMap<i64, WeylOperator> {
        let mut parts: BTreeMap<i64, WeylOperator> = BTreeMap::new();
        for (key, c) in &self.terms {
            let k = i64::from(key.1.degree()) - i64::from(key.0.degree());
            parts
                .entry(k)
                .or_insert_with(|| WeylOperator::zero(self.n))
                .add_term(key.clone(), c.clone());
        }
        parts
    }

    /// Anti-normal expansion of the whole operator: a map
    /// `(d-exponent, x-exponent, s-power) -> coefficient`.
    pub fn anti_normal_form(&self) -> BTreeMap<(MultiIndex, MultiIndex, u32), Rat> {
        let mut out: BTreeMap<(MultiIndex, MultiIndex, u32), Rat> = BTreeMap::new();
        for ((beta, alpha, k), c) in &self.terms {
            for ((delta, gamma), w) in to_antinormal(beta, alpha) {
                let entry = out.entry((delta, gamma, *k)).or_insert_with(Rat::zero);
                *entry += c * &w;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Ideal membership test for `P` in the left ideal generated by the
    /// coordinates, per graded part, with the failing `gamma` sums as a
    /// certificate.  Requires an `s`-free operator.
    pub fn in_ideal_dx(&self) -> Result<IdealMembership, Error> {
        if !self.is_s_free() {
            return Err(Error::SNotAllowed);
        }
        let mut parts = Vec::new();
        for (k, part) in self.graded_parts() {
            if k < 0 {
                parts.push(GradedPartCheck {
                    k,
                    vacuous: true,
                    failures: Vec::new(),
                });
                continue;
            }
            let mut sums: BTreeMap<MultiIndex, Rat> = BTreeMap::new();
            for ((beta, alpha, _), lambda) in &part.terms {
                let Some(gamma) = alpha.checked_sub(beta) else {
                    continue;
                };
                let sign = if alpha.degree() % 2 == 0 { 1 } else { -1 };
                let weight = Rat::from_integer(alpha.factorial() * sign);
                let entry = sums.entry(gamma).or_insert_with(Rat::zero);
                *entry += lambda * &weight;
            }
            let failures: Vec<(MultiIndex, Rat)> =
                sums.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            parts.push(GradedPartCheck {
                k,
                vacuous: false,
                failures,
            });
        }
        let in_ideal = parts.iter().all(|p| p.failures.is_empty());
        Ok(IdealMembership { in_ideal, parts })
    }

    /// The sigma invariant of the degree-zero graded part:
    /// `sum (-1)^{|alpha|} alpha! lambda_{alpha,alpha}`.
    pub fn sigma_invariant(&self) -> Result<Rat, Error> {
        if !self.is_s_free() {
            return Err(Error::SNotAllowed);
        }
        let mut sigma = Rat::zero();
        for ((beta, alpha, _), lambda) in &self.terms {
            if beta != alpha {
                continue;
            }
            let sign = if alpha.degree() % 2 == 0 { 1 } else { -1 };
            sigma += lambda * &Rat::from_integer(alpha.factorial() * sign);
        }
        Ok(sigma)
    }
}

/// Result of the coordinate-ideal membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealMembership {
    pub in_ideal: bool,
    pub parts: Vec<GradedPartCheck>,
}

/// Per-graded-part certificate: the `gamma` values whose sum is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPartCheck {
    pub k: i64,
    pub vacuous: bool,
    pub failures: Vec<(MultiIndex, Rat)>,
}

/// Anti-normal expansion of a single normal monomial `x^beta d^alpha`:
/// the sum over `gamma <= beta`, `gamma >= beta - alpha` of
/// `(-1)^{|beta-gamma|} alpha! beta! / (gamma! (beta-gamma)! (alpha-beta+gamma)!)`
/// times `d^{alpha-beta+gamma} x^gamma`, with factorials componentwise.
pub fn to_antinormal(
    beta: &MultiIndex,
    alpha: &MultiIndex,
) -> BTreeMap<(MultiIndex, MultiIndex), Rat> {
    assert_eq!(beta.len(), alpha.len());
    let n = beta.len();
    let lo = MultiIndex(
        beta.0
            .iter()
            .zip(&alpha.0)
            .map(|(b, a)| b.saturating_sub(*a))
            .collect::<Vec<u32>>(),
    );
    let mut out = BTreeMap::new();
    for gamma in MultiIndex::box_range(&lo, beta) {
        let bg = beta.checked_sub(&gamma).unwrap();
        let abg = MultiIndex(
            alpha
                .0
                .iter()
                .zip(&bg.0)
                .map(|(a, m)| a - m)
                .collect::<Vec<u32>>(),
        );
        debug_assert_eq!(abg.len(), n);
        let numer = alpha.factorial() * beta.factorial();
        let denom = gamma.factorial() * bg.factorial() * abg.factorial();
        let sign = if bg.degree().is_multiple_of(2) { 1 } else { -1 };
        let coeff = Rat::new(numer * sign, denom);
        out.insert((abg, gamma), coeff);
    }
    out
}

impl Add for &WeylOperator {
    type Output = WeylOperator;
    fn add(self, other: &WeylOperator) -> WeylOperator {
        assert_eq!(self.n, other.n, "operator arity");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WeylOperator {
    type Output = WeylOperator;
    fn sub(self, other: &WeylOperator) -> WeylOperator {
        self + &(-other)
    }
}

impl Neg for &WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        WeylOperator {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Mul for &WeylOperator {
    type Output = WeylOperator;
    /// Normal-ordered product.  The crossing `d^alpha x^beta'` reorders via
    /// `d^a x^b = sum_j C(a,j) C(b,j) j! x^{b-j} d^{a-j}` componentwise.
    fn mul(self, other: &WeylOperator) -> WeylOperator {
        assert_eq!(self.n, other.n, "operator arity");
        let n = self.n;
        let mut out = WeylOperator::zero(n);
        for ((b1, a1, k1), c1) in &self.terms {
            for ((b2, a2, k2), c2) in &other.terms {
                let jmax = MultiIndex(
                    a1.0.iter()
                        .zip(&b2.0)
                        .map(|(a, b)| (*a).min(*b))
                        .collect::<Vec<u32>>(),
                );
                for j in MultiIndex::box_range(&MultiIndex::zero(n), &jmax) {
                    let mut w = Rat::from_integer(1.into());
                    for i in 0..n {
                        let f = binomial(a1.0[i], j.0[i])
                            * binomial(b2.0[i], j.0[i])
                            * factorial(j.0[i]);
                        w *= Rat::from_integer(f);
                    }
                    let beta = b1.add(&b2.checked_sub(&j).unwrap());
                    let alpha = a2.add(&a1.checked_sub(&j).unwrap());
                    out.add_term((beta, alpha, k1 + k2), c1 * c2 * &w);
                }
            }
        }
        out
    }
}

impl fmt::Display for WeylOperator {
    /// Monomials in `x`, `d`, `s` tokens, highest key first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::One;
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((beta, alpha, k), c) in self.terms.iter().rev() {
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
            let trivial_key = beta.is_zero() && alpha.is_zero() && *k == 0;
            if !mag.is_one() || trivial_key {
                pieces.push(mag.to_string());
            }
            for (i, &e) in beta.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => pieces.push(format!("x{}", i + 1)),
                    _ => pieces.push(format!("x{}^{}", i + 1, e)),
                }
            }
            for (i, &e) in alpha.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => pieces.push(format!("d{}", i + 1)),
                    _ => pieces.push(format!("d{}^{}", i + 1, e)),
                }
            }
            match k {
                0 => {}
                1 => pieces.push("s".into()),
                _ => pieces.push(format!("s^{k}")),
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

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn commutator_basics() {
        // d1 x1 = x1 d1 + 1
        let got = WeylOperator::from_word(1, &[Gen::D(0), Gen::X(0)]);
        let mut want = WeylOperator::zero(1);
        want.add_term((mi(&[1]), mi(&[1]), 0), rat(1));
        want.add_term((mi(&[0]), mi(&[0]), 0), rat(1));
        assert_eq!(got, want);

        // mixed indices commute: d1 x2 = x2 d1
        let a = WeylOperator::from_word(2, &[Gen::D(0), Gen::X(1)]);
        let b = WeylOperator::from_word(2, &[Gen::X(1), Gen::D(0)]);
        assert_eq!(a, b);
    }

    #[test]
    fn normal_form_of_d2x2() {
        // d1^2 x1^2 = x1^2 d1^2 + 4 x1 d1 + 2
        let got = WeylOperator::from_word(1, &[Gen::D(0), Gen::D(0), Gen::X(0), Gen::X(0)]);
        let mut want = WeylOperator::zero(1);
        want.add_term((mi(&[2]), mi(&[2]), 0), rat(1));
        want.add_term((mi(&[1]), mi(&[1]), 0), rat(4));
        want.add_term((mi(&[0]), mi(&[0]), 0), rat(2));
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "x1^2*d1^2 + 4*x1*d1 + 2");
    }

    #[test]
    fn s_is_central() {
        let a = WeylOperator::from_word(1, &[Gen::S, Gen::D(0), Gen::X(0)]);
        let b = WeylOperator::from_word(1, &[Gen::D(0), Gen::X(0), Gen::S]);
        assert_eq!(a, b);
        assert!(!a.is_s_free());
    }

    #[test]
    fn product_is_associative_spot_check() {
        let n = 2;
        let p = WeylOperator::from_word(n, &[Gen::D(0), Gen::X(0), Gen::D(1)]);
        let q = WeylOperator::from_word(n, &[Gen::X(1), Gen::X(0)]);
        let r = WeylOperator::from_word(n, &[Gen::D(1), Gen::D(0)]);
        assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn antinormal_single_variable() {
        // x d = d x - 1
        let got = to_antinormal(&mi(&[1]), &mi(&[1]));
        assert_eq!(got.get(&(mi(&[1]), mi(&[1]))), Some(&rat(1)));
        assert_eq!(got.get(&(mi(&[0]), mi(&[0]))), Some(&rat(-1)));
        assert_eq!(got.len(), 2);

        // x^2 d^2 = d^2 x^2 - 4 d x + 2
        let got = to_antinormal(&mi(&[2]), &mi(&[2]));
        assert_eq!(got.get(&(mi(&[2]), mi(&[2]))), Some(&rat(1)));
        assert_eq!(got.get(&(mi(&[1]), mi(&[1]))), Some(&rat(-4)));
        assert_eq!(got.get(&(mi(&[0]), mi(&[0]))), Some(&rat(2)));

        // x^2 d = d x^2 - 2 x
        let got = to_antinormal(&mi(&[2]), &mi(&[1]));
        assert_eq!(got.get(&(mi(&[1]), mi(&[2]))), Some(&rat(1)));
        assert_eq!(got.get(&(mi(&[0]), mi(&[1]))), Some(&rat(-2)));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn antinormal_rebuilds_original() {
        // multiply d^delta x^gamma back together and compare
        for (beta, alpha) in [
            (mi(&[2, 1]), mi(&[1, 2])),
            (mi(&[0, 3]), mi(&[2, 0])),
            (mi(&[1, 1]), mi(&[1, 1])),
        ] {
            let n = 2;
            let mut rebuilt = WeylOperator::zero(n);
            for ((delta, gamma), c) in to_antinormal(&beta, &alpha) {
                let mut word = Vec::new();
                for (i, &e) in delta.0.iter().enumerate() {
                    word.extend(std::iter::repeat_n(Gen::D(i), e as usize));
                }
                for (i, &e) in gamma.0.iter().enumerate() {
                    word.extend(std::iter::repeat_n(Gen::X(i), e as usize));
                }
                rebuilt = &rebuilt + &WeylOperator::from_word(n, &word).scale(&c);
            }
            let mut original = WeylOperator::zero(n);
            original.add_term((beta, alpha, 0), rat(1));
            assert_eq!(rebuilt, original);
        }
    }

    #[test]
    fn graded_parts_split() {
        let n = 2;
        // x1 d1 + d2 has parts k=0 and k=1
        let p = &WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)]) + &WeylOperator::d(n, 1);
        let parts = p.graded_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(
            parts[&0],
            WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)])
        );
        assert_eq!(parts[&1], WeylOperator::d(n, 1));

        // x1^2 d1 + x2 is concentrated in k=-1
        let q = &WeylOperator::from_word(n, &[Gen::X(0), Gen::X(0), Gen::D(0)])
            + &WeylOperator::x(n, 1);
        assert_eq!(q.graded_parts().len(), 1);
        assert!(q.graded_parts().contains_key(&-1));
    }

    #[test]
    fn ideal_membership_examples() {
        let n = 2;
        // x1 d1 - x2 d2 = d1 x1 - d2 x2 lies in the ideal
        let p = &WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)])
            - &WeylOperator::from_word(n, &[Gen::X(1), Gen::D(1)]);
        let check = p.in_ideal_dx().unwrap();
        assert!(check.in_ideal);

        // x1 d1 alone does not; the gamma = 0 sum is -1
        let q = WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)]);
        let check = q.in_ideal_dx().unwrap();
        assert!(!check.in_ideal);
        assert_eq!(check.parts.len(), 1);
        assert_eq!(check.parts[0].failures, vec![(mi(&[0, 0]), rat(-1))]);

        // negative grading passes vacuously
        let r = WeylOperator::from_word(n, &[Gen::X(0), Gen::X(0), Gen::D(0)]);
        let check = r.in_ideal_dx().unwrap();
        assert!(check.in_ideal);
        assert!(check.parts[0].vacuous);
    }

    #[test]
    fn sigma_invariant_examples() {
        let n = 2;
        let p = &WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)])
            - &WeylOperator::from_word(n, &[Gen::X(1), Gen::D(1)]);
        assert_eq!(p.sigma_invariant().unwrap(), rat(0));

        let q = WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)]);
        assert_eq!(q.sigma_invariant().unwrap(), rat(-1));

        assert_eq!(WeylOperator::one(n).sigma_invariant().unwrap(), rat(1));
    }

    #[test]
    fn sigma_matches_antinormal_constant_term() {
        let n = 2;
        let p = &WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0), Gen::X(1), Gen::D(1)])
            .scale(&ratio(3, 2))
            + &WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)]).scale(&rat(-2));
        // p is concentrated in grading 0, so sigma is the coefficient of the
        // identity in the anti-normal expansion
        let anti = p.anti_normal_form();
        let id_key = (mi(&[0, 0]), mi(&[0, 0]), 0u32);
        let want = anti.get(&id_key).cloned().unwrap_or_else(Rat::zero);
        assert_eq!(p.sigma_invariant().unwrap(), want);
    }

    #[test]
    fn s_terms_are_rejected_by_ideal_checks() {
        let p = WeylOperator::from_word(1, &[Gen::S, Gen::X(0), Gen::D(0)]);
        assert_eq!(p.in_ideal_dx(), Err(Error::SNotAllowed));
        assert_eq!(p.sigma_invariant(), Err(Error::SNotAllowed));
    }

    #[test]
    fn display_operator() {
        let n = 4;
        let p = &(&WeylOperator::from_word(n, &[Gen::X(0), Gen::D(0)]).scale(&ratio(-1, 2))
            - &WeylOperator::from_word(n, &[Gen::X(1), Gen::D(1)]).scale(&ratio(1, 2)))
            + &(&WeylOperator::from_word(n, &[Gen::X(2), Gen::D(2)])
                + &WeylOperator::from_word(n, &[Gen::X(3), Gen::D(3)]));
        assert_eq!(p.to_string(), "-1/2*x1*d1 - 1/2*x2*d2 + x3*d3 + x4*d4");
    }
}
