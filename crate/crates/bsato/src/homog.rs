//! Euler-type relations and coordinate-split structure of homogeneous
//! polynomials.
//!
//! A relation here is a rational vector `c` with `sum c_i = 1` whose
//! weighted degree `sum_i c_i e_i` vanishes on every exponent vector `e` of
//! `f`; it certifies `f^s = sum_i c_i d_i (x_i f^s)` exactly.  Infeasibility
//! is certified by a combination of exponent vectors equal to the all-ones
//! vector.  Bidegree-pure coordinate splits carry a closed-form relation
//! and also witness, within the given frame, that `f` lives in a split
//! symmetric power; the screen at the bottom enumerates those witnesses.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Error;
use crate::fs::FsElement;
use crate::linalg::{rank as mat_rank, solve, SolveOutcome};
use crate::multiindex::MultiIndex;
use crate::poly::Polynomial;
use crate::rat::{rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerRelation {
    /// Per-variable weights with `sum = 1` and zero weighted degree on
    /// every monomial.
    pub coefficients: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerOutcome {
    Found(EulerRelation),
    /// Coefficients per monomial (in the sorted term order of `f`)
    /// expressing the all-ones vector inside the row span of the exponent
    /// matrix, which makes the constraints contradictory.
    Infeasible {
        certificate: Vec<Rat>,
    },
}

fn require_form(f: &Polynomial) -> Result<u32, Error> {
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    match f.homogeneous_degree() {
        None => Err(Error::NotHomogeneous),
        Some(0) => Err(Error::InvalidInput("constant polynomial".into())),
        Some(d) => Ok(d),
    }
}

fn exponent_rows(f: &Polynomial) -> Vec<Vec<Rat>> {
    f.terms()
        .map(|(e, _)| e.0.iter().map(|&x| rat(i64::from(x))).collect())
        .collect()
}

/// Exact check of the defining constraints.
pub fn euler_relation_check(f: &Polynomial, c: &[Rat]) -> Result<bool, Error> {
    require_form(f)?;
    if c.len() != f.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for {} variables",
            c.len(),
            f.n()
        )));
    }
    let total: Rat = c.iter().cloned().sum();
    if total != rat(1) {
        return Ok(false);
    }
    for (e, _) in f.terms() {
        let weighted: Rat =
            e.0.iter()
                .zip(c)
                .map(|(&x, ci)| rat(i64::from(x)) * ci)
                .sum();
        if !weighted.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves the linear system exactly; a found relation is re-verified
/// through the f^s identity, and an infeasibility certificate is re-checked
/// against the exponent rows.
pub fn euler_relation_find(f: &Polynomial) -> Result<EulerOutcome, Error> {
    require_form(f)?;
    let n = f.n();
    let mut rows = exponent_rows(f);
    let t = rows.len();
    rows.push(vec![rat(1); n]);
    let mut rhs = vec![Rat::zero(); t];
    rhs.push(rat(1));
    match solve(&rows, &rhs) {
        SolveOutcome::Solution(c) => {
            if !euler_relation_check(f, &c)? {
                return Err(Error::Invariant(
                    "solver output fails the constraints".into(),
                ));
            }
            verify_fs_identity(f, &c)?;
            Ok(EulerOutcome::Found(EulerRelation { coefficients: c }))
        }
        SolveOutcome::Infeasible { farkas } => {
            // farkas: y with y^T rows = 0 and y^T rhs != 0; its last entry
            // scales the all-ones row, so dividing the rest by its negative
            // writes all-ones as a combination of exponent vectors
            let last = farkas[t].clone();
            if last.is_zero() {
                return Err(Error::Invariant(
                    "degenerate infeasibility certificate".into(),
                ));
            }
            let certificate: Vec<Rat> = farkas[..t].iter().map(|y| -(y / &last)).collect();
            let rows = exponent_rows(f);
            for i in 0..n {
                let combo: Rat = certificate
                    .iter()
                    .zip(&rows)
                    .map(|(y, row)| y * &row[i])
                    .sum();
                if combo != rat(1) {
                    return Err(Error::Invariant(
                        "certificate misses the all-ones vector".into(),
                    ));
                }
            }
            Ok(EulerOutcome::Infeasible { certificate })
        }
    }
}

/// `f^s = sum_i c_i d_i (x_i f^s)` in the f^s module.
fn verify_fs_identity(f: &Polynomial, c: &[Rat]) -> Result<(), Error> {
    let e = FsElement::fs(f.clone());
    let mut acc = e.zero_like();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let xi = Polynomial::variable(f.n(), i);
        let term = e.mul_poly(&xi).apply_partial(i).scale(ci);
        acc = &acc + &term;
    }
    if acc != e {
        return Err(Error::Invariant(
            "f^s identity failed for the found relation".into(),
        ));
    }
    Ok(())
}

fn normalize_split(n: usize, s_vars: &[usize]) -> Result<Vec<usize>, Error> {
    let mut s: Vec<usize> = s_vars.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != s_vars.len() {
        return Err(Error::InvalidInput("split variables listed twice".into()));
    }
    if s.is_empty() || s.len() == n {
        return Err(Error::InvalidInput(
            "split must be a nonempty proper variable subset".into(),
        ));
    }
    if s.iter().any(|&i| i >= n) {
        return Err(Error::InvalidInput(format!(
            "split variable out of range 1..={n}"
        )));
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub s_vars: Vec<usize>,
    /// Common degree of every monomial in the split variables.
    pub k: u32,
    /// `(-(d-k)/(nk-dl), k/(nk-dl))` on and off the split when `nk != dl`;
    /// `None` in the balanced case `nk = dl`, which admits no relation that
    /// is constant on both sides.
    pub coefficients: Option<(Rat, Rat)>,
    /// The assembled per-variable relation, when it exists.
    pub relation: Option<Vec<Rat>>,
}

/// Detects whether every monomial of `f` has the same degree `k` in the
/// split variables, and if so returns the closed-form relation data.
pub fn bidegree_split_check(
    f: &Polynomial,
    s_vars: &[usize],
) -> Result<Option<SplitReport>, Error> {
    let d = require_form(f)?;
    let n = f.n();
    let s = normalize_split(n, s_vars)?;
    let mut k: Option<u32> = None;
    for (e, _) in f.terms() {
        let part: u32 = s.iter().map(|&i| e.0[i]).sum();
        match k {
            None => k = Some(part),
            Some(prev) if prev != part => return Ok(None),
            _ => {}
        }
    }
    let k = k.expect("nonzero polynomial has terms");
    let l = s.len();
    let det = rat(n as i64) * rat(i64::from(k)) - rat(i64::from(d)) * rat(l as i64);
    if det.is_zero() {
        return Ok(Some(SplitReport {
            s_vars: s,
            k,
            coefficients: None,
            relation: None,
        }));
    }
    let a = -(rat(i64::from(d)) - rat(i64::from(k))) / &det;
    let b = rat(i64::from(k)) / &det;
    let mut relation = vec![b.clone(); n];
    for &i in &s {
        relation[i] = a.clone();
    }
    if !euler_relation_check(f, &relation)? {
        return Err(Error::Invariant(
            "closed-form split relation fails the constraints".into(),
        ));
    }
    Ok(Some(SplitReport {
        s_vars: s,
        k,
        coefficients: Some((a, b)),
        relation: Some(relation),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: (MultiIndex, MultiIndex),
    pub cols: (MultiIndex, MultiIndex),
    pub minor: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separability {
    pub separable: bool,
    /// Factors supported on the split and its complement, multiply-back
    /// verified.
    pub factors: Option<(Polynomial, Polynomial)>,
    /// A nonvanishing 2x2 minor of the coefficient matrix otherwise.
    pub witness: Option<MinorWitness>,
}

/// Tests `f = g(x_S) h(x_{S^c})` by the rank of the coefficient matrix
/// indexed by the split parts of each monomial.
pub fn separability_test(f: &Polynomial, s_vars: &[usize]) -> Result<Separability, Error> {
    require_form(f)?;
    let n = f.n();
    let s = normalize_split(n, s_vars)?;
    let in_s = |i: usize| s.binary_search(&i).is_ok();

    let mut matrix: BTreeMap<MultiIndex, BTreeMap<MultiIndex, Rat>> = BTreeMap::new();
    let mut col_keys: BTreeMap<MultiIndex, usize> = BTreeMap::new();
    for (e, coeff) in f.terms() {
        let mut row = vec![0u32; n];
        let mut col = vec![0u32; n];
        for i in 0..n {
            if in_s(i) {
                row[i] = e.0[i];
            } else {
                col[i] = e.0[i];
            }
        }
        let (row, col) = (MultiIndex(row), MultiIndex(col));
        let next = col_keys.len();
        col_keys.entry(col.clone()).or_insert(next);
        matrix.entry(row).or_default().insert(col, coeff.clone());
    }
    let cols: Vec<MultiIndex> = col_keys.keys().cloned().collect();
    let col_index: BTreeMap<&MultiIndex, usize> =
        cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let dense: Vec<Vec<Rat>> = matrix
        .values()
        .map(|row| {
            let mut out = vec![Rat::zero(); cols.len()];
            for (c, v) in row {
                out[col_index[c]] = v.clone();
            }
            out
        })
        .collect();

    if mat_rank(&dense) == 1 {
        let row_keys: Vec<MultiIndex> = matrix.keys().cloned().collect();
        let anchor_row = &row_keys[0];
        let (anchor_col, anchor_val) = matrix[anchor_row].iter().next().expect("nonempty row");
        let g = Polynomial::from_terms(
            n,
            row_keys.iter().map(|r| {
                let v = matrix[r].get(anchor_col).cloned().unwrap_or_else(Rat::zero);
                (r.clone(), v)
            }),
        );
        let h = Polynomial::from_terms(
            n,
            matrix[anchor_row]
                .iter()
                .map(|(c, v)| (c.clone(), v / anchor_val)),
        );
        if &(&g * &h) != f {
            return Err(Error::Invariant(
                "rank-1 factors fail to multiply back".into(),
            ));
        }
        return Ok(Separability {
            separable: true,
            factors: Some((g, h)),
            witness: None,
        });
    }

    // rank >= 2: certify with a nonvanishing 2x2 minor
    let row_keys: Vec<MultiIndex> = matrix.keys().cloned().collect();
    for r1 in 0..dense.len() {
        for r2 in r1 + 1..dense.len() {
            for c1 in 0..cols.len() {
                for c2 in c1 + 1..cols.len() {
                    let minor = &dense[r1][c1] * &dense[r2][c2] - &dense[r1][c2] * &dense[r2][c1];
                    if !minor.is_zero() {
                        return Ok(Separability {
                            separable: false,
                            factors: None,
                            witness: Some(MinorWitness {
                                rows: (row_keys[r1].clone(), row_keys[r2].clone()),
                                cols: (cols[c1].clone(), cols[c2].clone()),
                                minor,
                            }),
                        });
                    }
                }
            }
        }
    }
    Err(Error::Invariant(
        "matrix of rank >= 2 without a nonzero 2x2 minor".into(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenReport {
    pub euler: Option<EulerRelation>,
    pub euler_certificate: Option<Vec<Rat>>,
    /// Bidegree-pure splits with `nk != dl`: each shows, within the given
    /// coordinate frame, that `f` lies in a split symmetric power.
    pub witnesses: Vec<SplitReport>,
    /// Splits along which `f` factors into two polynomials.
    pub separable_splits: Vec<Vec<usize>>,
    pub note: String,
}

pub const SCREEN_NOTE: &str =
    "fixed-coordinate screen over variable bipartitions; silent about general linear changes of coordinates";

/// Enumerates every coordinate bipartition (through subsets containing the
/// first variable) and reports bidegree-pure witnesses, separable splits,
/// and the relation solve.  `budget` caps the variable count since the
/// bipartition count is `2^(n-1) - 1`.
pub fn coordinate_screen(f: &Polynomial, budget: usize) -> Result<ScreenReport, Error> {
    require_form(f)?;
    let n = f.n();
    if n > budget {
        return Err(Error::BudgetExceeded(format!(
            "{n} variables mean 2^{} bipartitions, over the budget {budget}",
            n - 1
        )));
    }
    let (euler, euler_certificate) = match euler_relation_find(f)? {
        EulerOutcome::Found(r) => (Some(r), None),
        EulerOutcome::Infeasible { certificate } => (None, Some(certificate)),
    };
    let mut witnesses = Vec::new();
    let mut separable_splits = Vec::new();
    if n >= 2 {
        // subsets of {1..n-1} joined with variable 0 cover each bipartition once
        for mask in 0u64..(1u64 << (n - 1)) {
            let mut s = vec![0usize];
            for i in 1..n {
                if mask & (1 << (i - 1)) != 0 {
                    s.push(i);
                }
            }
            if s.len() == n {
                continue;
            }
            if let Some(report) = bidegree_split_check(f, &s)? {
                if report.coefficients.is_some() {
                    witnesses.push(report);
                }
            }
            if separability_test(f, &s)?.separable {
                separable_splits.push(s);
            }
        }
    }
    Ok(ScreenReport {
        euler,
        euler_certificate,
        witnesses,
        separable_splits,
        note: SCREEN_NOTE.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::MultiIndex;
    use crate::rat::ratio;

    fn mono(exps: &[u32]) -> MultiIndex {
        MultiIndex(exps.to_vec())
    }

    /// x1 x2 x3 + x1^2 x4 + x2^2 x4.
    fn sample4() -> Polynomial {
        Polynomial::from_terms(
            4,
            [
                (mono(&[1, 1, 1, 0]), rat(1)),
                (mono(&[2, 0, 0, 1]), rat(1)),
                (mono(&[0, 2, 0, 1]), rat(1)),
            ],
        )
    }

    /// x1^k x2^k x3 + x1^(2k) x4 + x2^(2k) x4.
    fn sample_family(k: u32) -> Polynomial {
        Polynomial::from_terms(
            4,
            [
                (mono(&[k, k, 1, 0]), rat(1)),
                (mono(&[2 * k, 0, 0, 1]), rat(1)),
                (mono(&[0, 2 * k, 0, 1]), rat(1)),
            ],
        )
    }

    #[test]
    fn relation_for_sample4() {
        let f = sample4();
        let known = vec![ratio(-1, 2), ratio(-1, 2), rat(1), rat(1)];
        assert!(euler_relation_check(&f, &known).unwrap());
        match euler_relation_find(&f).unwrap() {
            EulerOutcome::Found(r) => {
                assert!(euler_relation_check(&f, &r.coefficients).unwrap());
            }
            EulerOutcome::Infeasible { .. } => panic!("relation exists"),
        }
    }

    #[test]
    fn relation_for_family() {
        for k in 1..=4u32 {
            let f = sample_family(k);
            let a = ratio(1, 2 - 4 * i64::from(k));
            let known = vec![
                a.clone(),
                a.clone(),
                -rat(2 * i64::from(k)) * &a,
                -rat(2 * i64::from(k)) * &a,
            ];
            assert!(euler_relation_check(&f, &known).unwrap(), "k = {k}");
            assert!(matches!(
                euler_relation_find(&f).unwrap(),
                EulerOutcome::Found(_)
            ));
        }
    }

    #[test]
    fn relation_infeasible_with_certificate() {
        // x1 x2 x3 + x1^3: the first exponent row is already all-ones
        let f = Polynomial::from_terms(3, [(mono(&[1, 1, 1]), rat(1)), (mono(&[3, 0, 0]), rat(1))]);
        match euler_relation_find(&f).unwrap() {
            EulerOutcome::Infeasible { certificate } => {
                assert_eq!(certificate.len(), 2);
                let rows = [[1i64, 1, 1], [3, 0, 0]];
                for i in 0..3 {
                    let combo: Rat = certificate
                        .iter()
                        .zip(&rows)
                        .map(|(y, row)| y * rat(row[i]))
                        .sum();
                    assert_eq!(combo, rat(1));
                }
            }
            EulerOutcome::Found(_) => panic!("constraints are contradictory"),
        }
    }

    #[test]
    fn relation_rejects_inhomogeneous() {
        let f = Polynomial::from_terms(2, [(mono(&[1, 0]), rat(1)), (mono(&[0, 2]), rat(1))]);
        assert_eq!(euler_relation_find(&f), Err(Error::NotHomogeneous));
    }

    #[test]
    fn split_closed_form() {
        // x1^2 x2 with S = {x1}: k = 2, nk - dl = 4 - 3 = 1
        let f = Polynomial::from_terms(2, [(mono(&[2, 1]), rat(1))]);
        let report = bidegree_split_check(&f, &[0]).unwrap().unwrap();
        assert_eq!(report.k, 2);
        assert_eq!(report.coefficients, Some((rat(-1), rat(2))));
        assert_eq!(report.relation, Some(vec![rat(-1), rat(2)]));
    }

    #[test]
    fn split_balanced_has_no_coefficients() {
        // x1 x2 with S = {x1}: nk = dl = 2
        let f = Polynomial::from_terms(2, [(mono(&[1, 1]), rat(1))]);
        let report = bidegree_split_check(&f, &[0]).unwrap().unwrap();
        assert_eq!(report.k, 1);
        assert!(report.coefficients.is_none());
    }

    #[test]
    fn split_requires_purity() {
        // x1^2 + x1 x2 is not bidegree pure along {x1}
        let f = Polynomial::from_terms(2, [(mono(&[2, 0]), rat(1)), (mono(&[1, 1]), rat(1))]);
        assert!(bidegree_split_check(&f, &[0]).unwrap().is_none());
    }

    #[test]
    fn split_agrees_on_complement() {
        let f = sample4();
        let s = bidegree_split_check(&f, &[0, 1]).unwrap().unwrap();
        let c = bidegree_split_check(&f, &[2, 3]).unwrap().unwrap();
        assert_eq!(s.k, 2);
        assert_eq!(c.k, 1);
        assert_eq!(s.relation, c.relation);
    }

    #[test]
    fn separable_product() {
        // (x1 + x2)(x3 + x4)
        let f = Polynomial::from_terms(
            4,
            [
                (mono(&[1, 0, 1, 0]), rat(1)),
                (mono(&[1, 0, 0, 1]), rat(1)),
                (mono(&[0, 1, 1, 0]), rat(1)),
                (mono(&[0, 1, 0, 1]), rat(1)),
            ],
        );
        let sep = separability_test(&f, &[0, 1]).unwrap();
        assert!(sep.separable);
        let (g, h) = sep.factors.unwrap();
        assert_eq!(&g * &h, f);
    }

    #[test]
    fn inseparable_sum_has_minor() {
        // x1 x3 + x2 x4
        let f = Polynomial::from_terms(
            4,
            [(mono(&[1, 0, 1, 0]), rat(1)), (mono(&[0, 1, 0, 1]), rat(1))],
        );
        let sep = separability_test(&f, &[0, 1]).unwrap();
        assert!(!sep.separable);
        let w = sep.witness.unwrap();
        assert!(!w.minor.is_zero());
    }

    #[test]
    fn triple_point_is_inseparable() {
        // x1 x2 (x1 + x2) = x1^2 x2 + x1 x2^2
        let f = Polynomial::from_terms(2, [(mono(&[2, 1]), rat(1)), (mono(&[1, 2]), rat(1))]);
        assert!(!separability_test(&f, &[0]).unwrap().separable);
    }

    #[test]
    fn screen_of_sample4() {
        let report = coordinate_screen(&sample4(), 20).unwrap();
        assert!(report.euler.is_some());
        // the split {x1, x2} is bidegree pure with k = 2 and nk != dl
        assert!(report
            .witnesses
            .iter()
            .any(|w| w.s_vars == vec![0, 1] && w.k == 2));
        assert!(report.separable_splits.is_empty());
        assert_eq!(report.note, SCREEN_NOTE);
    }

    #[test]
    fn screen_budget() {
        let f = Polynomial::from_terms(3, [(mono(&[1, 1, 1]), rat(1))]);
        assert!(matches!(
            coordinate_screen(&f, 2),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn screen_of_separable_product() {
        let f = Polynomial::from_terms(
            4,
            [
                (mono(&[1, 0, 1, 0]), rat(1)),
                (mono(&[1, 0, 0, 1]), rat(1)),
                (mono(&[0, 1, 1, 0]), rat(1)),
                (mono(&[0, 1, 0, 1]), rat(1)),
            ],
        );
        let report = coordinate_screen(&f, 20).unwrap();
        assert!(report.separable_splits.contains(&vec![0, 1]));
        // the product is bidegree pure along {x1, x2} but balanced there
        assert!(report.witnesses.iter().all(|w| w.s_vars != vec![0, 1]));
    }
}
