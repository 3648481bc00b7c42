//! Polynomial differential forms on affine n-space.
//!
//! A p-form is stored as a map from strictly increasing index tuples
//! `i_1 < .. < i_p` (zero based) to polynomial coefficients.  The module
//! provides the exterior derivative, the wedge product, and the contraction
//! against the rescaled Euler vector field `(1/d) sum x_i d/dx_i`, which is
//! the homotopy operator behind the top-form identities used elsewhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::poly::Polynomial;
use crate::rat::{rat, ratio, Rat};

#[derive(Debug, Clone)]
pub struct DifferentialForm {
    n: usize,
    degree: usize,
    components: BTreeMap<Vec<u8>, Polynomial>,
}

// the zero form compares equal across degrees, so identities whose sides
// collapse in different graded pieces still hold
impl PartialEq for DifferentialForm {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.components == other.components
            && (self.components.is_empty() || self.degree == other.degree)
    }
}

impl Eq for DifferentialForm {}

/// Sorts an index tuple, returning the permutation sign, or `None` when an
/// index repeats (the corresponding wedge monomial vanishes).
fn sort_indices(indices: &[u8]) -> Option<(Vec<u8>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

impl DifferentialForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        DifferentialForm {
            n,
            degree,
            components: BTreeMap::new(),
        }
    }

    /// A 0-form is a bare polynomial.
    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.n();
        let mut form = DifferentialForm::zero(n, 0);
        form.add_component(&[], p);
        form
    }

    /// The coordinate volume form `dx_1 ^ .. ^ dx_n`.
    pub fn volume(n: usize) -> Self {
        let mut form = DifferentialForm::zero(n, n);
        let all: Vec<u8> = (0..n as u8).collect();
        form.add_component(&all, Polynomial::one(n));
        form
    }

    /// Adds `p * dx_{indices}` in place, sorting the tuple and tracking the
    /// sign; a repeated index contributes nothing.
    pub fn add_component(&mut self, indices: &[u8], p: Polynomial) {
        assert_eq!(indices.len(), self.degree, "form degree");
        assert_eq!(p.n(), self.n, "polynomial arity");
        assert!(
            indices.iter().all(|&i| (i as usize) < self.n),
            "index out of range"
        );
        if p.is_zero() {
            return;
        }
        let Some((key, sign)) = sort_indices(indices) else {
            return;
        };
        let signed = if sign < 0 { -&p } else { p };
        use std::collections::btree_map::Entry;
        match self.components.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(signed);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() = slot.get() + &signed;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, indices: &[u8]) -> Polynomial {
        match sort_indices(indices) {
            None => Polynomial::zero(self.n),
            Some((key, sign)) => {
                let p = self
                    .components
                    .get(&key)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(self.n));
                if sign < 0 {
                    -&p
                } else {
                    p
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> DifferentialForm {
        if c.is_zero() {
            return DifferentialForm::zero(self.n, self.degree);
        }
        DifferentialForm {
            n: self.n,
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|(k, p)| (k.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, g: &Polynomial) -> DifferentialForm {
        assert_eq!(g.n(), self.n, "polynomial arity");
        let mut out = DifferentialForm::zero(self.n, self.degree);
        for (k, p) in &self.components {
            out.add_component(k, p * g);
        }
        out
    }

    /// Exterior derivative.
    pub fn exterior_d(&self) -> DifferentialForm {
        let mut out = DifferentialForm::zero(self.n, self.degree + 1);
        for (key, p) in &self.components {
            for i in 0..self.n as u8 {
                let dp = p.partial(i as usize);
                if dp.is_zero() {
                    continue;
                }
                let mut idx = Vec::with_capacity(key.len() + 1);
                idx.push(i);
                idx.extend_from_slice(key);
                out.add_component(&idx, dp);
            }
        }
        out
    }

    /// Wedge product.
    pub fn wedge(&self, other: &DifferentialForm) -> DifferentialForm {
        assert_eq!(self.n, other.n, "form arity");
        let mut out = DifferentialForm::zero(self.n, self.degree + other.degree);
        for (k1, p1) in &self.components {
            for (k2, p2) in &other.components {
                let mut idx = Vec::with_capacity(k1.len() + k2.len());
                idx.extend_from_slice(k1);
                idx.extend_from_slice(k2);
                out.add_component(&idx, p1 * p2);
            }
        }
        out
    }

    /// Contraction against `(1/d) sum_i x_i d/dx_i`.  Sends p-forms to
    /// (p-1)-forms; 0-forms go to zero.
    pub fn euler_contraction(&self, d: u32) -> DifferentialForm {
        assert!(d > 0, "scaling degree must be positive");
        if self.degree == 0 {
            return DifferentialForm::zero(self.n, 0);
        }
        let scale = ratio(1, i64::from(d));
        let mut out = DifferentialForm::zero(self.n, self.degree - 1);
        for (key, p) in &self.components {
            for (j, &i) in key.iter().enumerate() {
                let xi = Polynomial::variable(self.n, i as usize).scale(&scale);
                let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
                let mut rest = key.clone();
                rest.remove(j);
                out.add_component(&rest, (&xi * p).scale(&sign));
            }
        }
        out
    }
}

/// The (n-1)-form `omega_0 = (1/d) sum_i (-1)^(i-1) x_i dx_1 ^ .. ^ no dx_i ^ .. ^ dx_n`,
/// i.e. the Euler contraction of the volume form.
pub fn omega0(n: usize, d: u32) -> DifferentialForm {
    DifferentialForm::volume(n).euler_contraction(d)
}

impl Add for &DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, other: &DifferentialForm) -> DifferentialForm {
        assert_eq!(self.n, other.n, "form arity");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "form degree");
        let mut out = self.clone();
        for (k, p) in &other.components {
            out.add_component(k, p.clone());
        }
        out
    }
}

impl Sub for &DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, other: &DifferentialForm) -> DifferentialForm {
        self + &(-other)
    }
}

impl Neg for &DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        DifferentialForm {
            n: self.n,
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|(k, p)| (k.clone(), -p))
                .collect(),
        }
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (key, p) in &self.components {
            let basis: Vec<String> = key.iter().map(|i| format!("dx{}", i + 1)).collect();
            let coeff = if p.num_terms() == 1 {
                p.to_string()
            } else {
                format!("({p})")
            };
            if basis.is_empty() {
                pieces.push(coeff);
            } else {
                pieces.push(format!("{coeff} {}", basis.join("^")));
            }
        }
        write!(f, "{}", pieces.join(" + "))
    }
}
