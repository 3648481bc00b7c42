//! Central hyperplane arrangements with multiplicities and the analysis
//! pipeline built on them: dense edges, the nonresonance condition, epsilon
//! weights, their deterministic perturbation, and the mu/residue data that
//! together certify `-n/d` as a b-function root.
//!
//! An arrangement is a list of pairwise non-proportional nonzero linear
//! forms `L_1..L_r` in `n` variables with positive integer multiplicities
//! `a_j`; it defines `f = prod L_j^{a_j}` of total degree `d = sum a_j`.
//! Indecomposability means the forms cannot be covered by a nontrivial
//! direct sum decomposition of the ambient space; on a subset it is the
//! connectivity of the linear matroid on those forms.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::{rank, solve, SolveOutcome};
use crate::poly::Polynomial;
use crate::rat::{denominator_lcm, is_integer, is_positive_integer, rat, Rat};

/// Refuse flat enumeration beyond this many hyperplanes unless the caller
/// raises the budget explicitly.
pub const DEFAULT_BUDGET: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    n: usize,
    forms: Vec<Vec<Rat>>,
    mults: Vec<u32>,
}

/// A proper nonzero subspace spanned by a subset of the forms, recorded by
/// the set of all form indices it contains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    pub support: Vec<usize>,
    pub dim: usize,
}

/// A flat whose forms make a connected matroid, together with the data
/// entering the nonresonance condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseEdge {
    pub support: Vec<usize>,
    pub dim: usize,
    pub sum_mult: u64,
    /// `dim - (n/d) * sum_mult`; the condition fails when this is a
    /// positive integer.
    pub r_value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionR {
    pub pass: bool,
    pub violators: Vec<DenseEdge>,
}

/// Rational weights attached to the hyperplanes; `perturbed` records
/// whether the non-integrality pass has run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonWeights {
    pub values: Vec<Rat>,
    pub perturbed: bool,
}

/// Integer part data per dense edge (aligned with the dense edge list),
/// the common denominator `N`, and the residues `mu(W) - (n/d) sum a_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuAssignment {
    pub mu: Vec<i64>,
    pub capital_n: BigInt,
    pub residues: Vec<Rat>,
}

/// Verdict of the whole pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub applies: bool,
    pub root: Option<Rat>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub n: usize,
    pub r: usize,
    pub d: u64,
    pub indecomposable: bool,
    pub dense_edges: Vec<DenseEdge>,
    pub condition_r: ConditionR,
    pub epsilon: Option<EpsilonWeights>,
    pub epsilon_perturbed: Option<EpsilonWeights>,
    pub mu: Option<MuAssignment>,
    pub verdict: Verdict,
}

impl Arrangement {
    pub fn new(n: usize, forms: Vec<Vec<Rat>>, mults: Vec<u32>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "ambient dimension must be positive".into(),
            ));
        }
        if forms.is_empty() {
            return Err(Error::InvalidInput(
                "arrangement needs at least one form".into(),
            ));
        }
        if forms.len() != mults.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} forms but {} multiplicities",
                forms.len(),
                mults.len()
            )));
        }
        for f in &forms {
            if f.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "form of length {} in ambient dimension {}",
                    f.len(),
                    n
                )));
            }
            if f.iter().all(|c| c.is_zero()) {
                return Err(Error::InvalidInput("zero linear form".into()));
            }
        }
        if mults.contains(&0) {
            return Err(Error::InvalidInput(
                "multiplicities must be at least 1".into(),
            ));
        }
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                if rank(&[forms[i].clone(), forms[j].clone()]) < 2 {
                    return Err(Error::InvalidInput(format!(
                        "forms {} and {} are proportional",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Arrangement { n, forms, mults })
    }

    /// Reduced arrangement (all multiplicities 1).
    pub fn reduced(n: usize, forms: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let m = vec![1; forms.len()];
        Arrangement::new(n, forms, m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.forms.len()
    }

    /// Total degree `d = sum a_j` of the defining polynomial.
    pub fn degree(&self) -> u64 {
        self.mults.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn forms(&self) -> &[Vec<Rat>] {
        &self.forms
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    /// The product `prod L_j^{a_j}` as a polynomial.
    pub fn defining_polynomial(&self) -> Polynomial {
        let mut f = Polynomial::one(self.n);
        for (form, &a) in self.forms.iter().zip(&self.mults) {
            let mut linear = Polynomial::zero(self.n);
            for (i, c) in form.iter().enumerate() {
                linear.add_term(crate::multiindex::MultiIndex::unit(self.n, i), c.clone());
            }
            f = &f * &linear.pow(a);
        }
        f
    }

    fn rows(&self, subset: &[usize]) -> Vec<Vec<Rat>> {
        subset.iter().map(|&j| self.forms[j].clone()).collect()
    }

    /// Rank of the span of the selected forms.
    pub fn rank(&self, subset: &[usize]) -> usize {
        rank(&self.rows(subset))
    }

    /// All form indices lying in the span of `subset`, with the span's
    /// dimension.
    pub fn closure(&self, subset: &[usize]) -> Flat {
        let base = self.rows(subset);
        let dim = rank(&base);
        let mut support = Vec::new();
        for j in 0..self.r() {
            let mut rows = base.clone();
            rows.push(self.forms[j].clone());
            if rank(&rows) == dim {
                support.push(j);
            }
        }
        Flat { support, dim }
    }

    fn check_budget(&self, budget: usize) -> Result<(), Error> {
        if self.r() > budget {
            return Err(Error::BudgetExceeded(format!(
                "{} hyperplanes exceed the enumeration budget {}",
                self.r(),
                budget
            )));
        }
        Ok(())
    }

    /// Distinct closures of independent subsets with dimensions
    /// `1..=max_dim`, sorted by dimension then support.
    fn closures_up_to(&self, max_dim: usize, budget: usize) -> Result<Vec<Flat>, Error> {
        self.check_budget(budget)?;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out: Vec<Flat> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        self.closures_rec(0, &mut stack, max_dim, &mut seen, &mut out);
        out.sort_by(|a, b| (a.dim, &a.support).cmp(&(b.dim, &b.support)));
        Ok(out)
    }

    fn closures_rec(
        &self,
        start: usize,
        stack: &mut Vec<usize>,
        max_dim: usize,
        seen: &mut BTreeSet<Vec<usize>>,
        out: &mut Vec<Flat>,
    ) {
        for j in start..self.r() {
            stack.push(j);
            if self.rank(stack) == stack.len() {
                let flat = self.closure(stack);
                if seen.insert(flat.support.clone()) {
                    out.push(flat);
                }
                if stack.len() < max_dim {
                    self.closures_rec(j + 1, stack, max_dim, seen, out);
                }
            }
            stack.pop();
        }
    }

    /// Proper flats: spans of subsets with dimension `1..=n-1`.
    pub fn enumerate_flats(&self, budget: usize) -> Result<Vec<Flat>, Error> {
        let flats = self.closures_up_to(self.n.saturating_sub(1), budget)?;
        Ok(flats.into_iter().filter(|f| f.dim < self.n).collect())
    }

    /// Closures of every subset including the full-dimensional top (used by
    /// the intersection lattice).
    pub fn all_closures(&self, budget: usize) -> Result<Vec<Flat>, Error> {
        self.closures_up_to(self.n, budget)
    }

    /// Connected components of the linear matroid on `subset`.  Merging is
    /// driven by the fundamental circuits of a fixed greedy basis: each
    /// circuit witnesses rank subadditivity across the blocks it meets, and
    /// a partition unrefined by every fundamental circuit is rank additive.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let k = subset.len();
        if k == 0 {
            return Vec::new();
        }
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let union = |parent: &mut [usize], a: usize, b: usize| {
            let ra = find(parent, a);
            let rb = find(parent, b);
            if ra != rb {
                parent[ra] = rb;
            }
        };

        // greedy basis in increasing index order
        let mut basis: Vec<usize> = Vec::new();
        let mut basis_rows: Vec<Vec<Rat>> = Vec::new();
        for (pos, &j) in subset.iter().enumerate() {
            let mut rows = basis_rows.clone();
            rows.push(self.forms[j].clone());
            if rank(&rows) > basis_rows.len() {
                basis_rows = rows;
                basis.push(pos);
            }
        }

        // expand every non-basis form over the basis; nonzero coordinates
        // give its fundamental circuit
        let cols: Vec<Vec<Rat>> = (0..self.n)
            .map(|i| {
                basis
                    .iter()
                    .map(|&p| self.forms[subset[p]][i].clone())
                    .collect()
            })
            .collect();
        for (pos, &j) in subset.iter().enumerate() {
            if basis.contains(&pos) {
                continue;
            }
            let rhs: Vec<Rat> = (0..self.n).map(|i| self.forms[j][i].clone()).collect();
            let SolveOutcome::Solution(coeffs) = solve(&cols, &rhs) else {
                unreachable!("basis spans the subset");
            };
            for (bi, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    union(&mut parent, pos, basis[bi]);
                }
            }
        }

        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, &j) in subset.iter().enumerate() {
            let root = find(&mut parent, pos);
            groups.entry(root).or_default().push(j);
        }
        groups.into_values().collect()
    }

    /// Matroid connectivity of the forms indexed by `subset`; singletons
    /// count as connected.
    pub fn matroid_connected(&self, subset: &[usize]) -> bool {
        self.components(subset).len() == 1
    }

    /// Indecomposability of the whole arrangement inside the ambient space:
    /// the forms must span (essential) and form a connected matroid.
    pub fn is_indecomposable(&self) -> bool {
        let all: Vec<usize> = (0..self.r()).collect();
        self.rank(&all) == self.n && self.matroid_connected(&all)
    }

    pub fn is_essential(&self) -> bool {
        let all: Vec<usize> = (0..self.r()).collect();
        self.rank(&all) == self.n
    }

    /// Dense edges: proper flats whose support is matroid connected.
    pub fn dense_edges(&self, budget: usize) -> Result<Vec<DenseEdge>, Error> {
        let n = rat(self.n as i64);
        let d = rat(self.degree() as i64);
        let mut out = Vec::new();
        for flat in self.enumerate_flats(budget)? {
            if !self.matroid_connected(&flat.support) {
                continue;
            }
            let sum_mult: u64 = flat.support.iter().map(|&j| u64::from(self.mults[j])).sum();
            let r_value = rat(flat.dim as i64) - &n / &d * rat(sum_mult as i64);
            out.push(DenseEdge {
                support: flat.support,
                dim: flat.dim,
                sum_mult,
                r_value,
            });
        }
        Ok(out)
    }

    /// The nonresonance condition: no dense edge may have
    /// `dim W - (n/d) sum_{j in W} a_j` in the positive integers.
    pub fn condition_r(&self, budget: usize) -> Result<ConditionR, Error> {
        let violators: Vec<DenseEdge> = self
            .dense_edges(budget)?
            .into_iter()
            .filter(|e| is_positive_integer(&e.r_value))
            .collect();
        Ok(ConditionR {
            pass: violators.is_empty(),
            violators,
        })
    }

    /// Builds the epsilon weights: `n/(n+1)` on a lexicographically first
    /// basis, and for every other form the sum of `1/b_i` over the basis
    /// elements appearing in its expansion, scaled by `1/(n+1)`, where
    /// `b_i` counts the non-basis forms using basis element `i`.
    pub fn epsilon_construct(&self, budget: usize) -> Result<EpsilonWeights, Error> {
        if self.n == 1 {
            // single hyperplane with any multiplicity; no proper subspaces
            return Ok(EpsilonWeights {
                values: vec![rat(1)],
                perturbed: false,
            });
        }
        if !self.is_indecomposable() {
            return Err(Error::Decomposable);
        }
        let r = self.r();
        let all: Vec<usize> = (0..r).collect();

        let mut basis: Vec<usize> = Vec::new();
        let mut basis_rows: Vec<Vec<Rat>> = Vec::new();
        for j in 0..r {
            let mut rows = basis_rows.clone();
            rows.push(self.forms[j].clone());
            if rank(&rows) > basis_rows.len() {
                basis_rows = rows;
                basis.push(j);
            }
        }
        debug_assert_eq!(basis.len(), self.n);

        let cols: Vec<Vec<Rat>> = (0..self.n)
            .map(|i| basis.iter().map(|&b| self.forms[b][i].clone()).collect())
            .collect();
        let mut expansions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut b_count: BTreeMap<usize, u64> = BTreeMap::new();
        for j in &all {
            if basis.contains(j) {
                continue;
            }
            let rhs: Vec<Rat> = (0..self.n).map(|i| self.forms[*j][i].clone()).collect();
            let SolveOutcome::Solution(coeffs) = solve(&cols, &rhs) else {
                unreachable!("basis spans the arrangement");
            };
            let used: Vec<usize> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(bi, _)| basis[bi])
                .collect();
            for &b in &used {
                *b_count.entry(b).or_insert(0) += 1;
            }
            expansions.insert(*j, used);
        }

        let np1 = rat(self.n as i64 + 1);
        let mut values = vec![Rat::zero(); r];
        for &b in &basis {
            values[b] = rat(self.n as i64) / &np1;
        }
        for (j, used) in &expansions {
            let mut acc = Rat::zero();
            for &b in used {
                let count = *b_count.get(&b).unwrap_or(&0);
                debug_assert!(count > 0);
                acc += rat(1) / rat(count as i64);
            }
            values[*j] = acc / &np1;
        }

        let eps = EpsilonWeights {
            values,
            perturbed: false,
        };
        self.verify_epsilon(&eps, budget)?;
        Ok(eps)
    }

    /// Defining inequalities: positive entries summing to `n`, with strict
    /// inequality `sum_{j in W} eps_j < dim W` on every proper flat.
    fn verify_epsilon(&self, eps: &EpsilonWeights, budget: usize) -> Result<(), Error> {
        if eps.values.len() != self.r() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} hyperplanes",
                eps.values.len(),
                self.r()
            )));
        }
        if eps.values.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidInput(
                "epsilon weights must be positive".into(),
            ));
        }
        let total: Rat = eps.values.iter().cloned().sum();
        if total != rat(self.n as i64) {
            return Err(Error::InvalidInput(format!(
                "epsilon weights sum to {total}, expected {}",
                self.n
            )));
        }
        for flat in self.enumerate_flats(budget)? {
            let sum: Rat = flat.support.iter().map(|&j| eps.values[j].clone()).sum();
            if sum >= rat(flat.dim as i64) {
                return Err(Error::InvalidInput(format!(
                    "flat {:?} carries weight {sum}, not below its dimension {}",
                    one_based(&flat.support),
                    flat.dim
                )));
            }
        }
        Ok(())
    }

    /// Deterministic perturbation making every dense-edge weight sum
    /// non-integral while preserving the defining inequalities.  The
    /// direction is fixed (centered first primes); only the step `1/Q`
    /// shrinks along the schedule `Q = maxdenom * 2^t * 3`, `t = 1..40`.
    pub fn epsilon_perturb(
        &self,
        eps: &EpsilonWeights,
        budget: usize,
    ) -> Result<EpsilonWeights, Error> {
        self.verify_epsilon(eps, budget)?;
        let edges = self.dense_edges(budget)?;
        let integral_sums = |values: &[Rat]| {
            edges.iter().any(|e| {
                let sum: Rat = e.support.iter().map(|&j| values[j].clone()).sum();
                is_integer(&sum)
            })
        };
        if !integral_sums(&eps.values) {
            return Ok(EpsilonWeights {
                values: eps.values.clone(),
                perturbed: true,
            });
        }

        let r = self.r();
        let primes = first_primes(r);
        let psum: i64 = primes.iter().map(|&p| p as i64).sum();
        let w: Vec<Rat> = primes
            .iter()
            .map(|&p| rat(p as i64) - rat(psum) / rat(r as i64))
            .collect();
        let max_denom = eps
            .values
            .iter()
            .map(|v| v.denom().clone())
            .max()
            .unwrap_or_else(BigInt::one);

        for t in 1..=40u32 {
            let q = &max_denom * BigInt::from(2).pow(t) * BigInt::from(3);
            let qr = Rat::from_integer(q);
            let values: Vec<Rat> = eps
                .values
                .iter()
                .zip(&w)
                .map(|(e, wj)| e + wj / &qr)
                .collect();
            let candidate = EpsilonWeights {
                values,
                perturbed: true,
            };
            if self.verify_epsilon(&candidate, budget).is_ok() && !integral_sums(&candidate.values)
            {
                let total: Rat = candidate.values.iter().cloned().sum();
                debug_assert_eq!(total, rat(self.n as i64));
                return Ok(candidate);
            }
        }
        Err(Error::PerturbationFailed)
    }

    /// Integer parts `mu(W) = 1 + floor(sum eps'_j)` per dense edge, the
    /// common denominator `N`, and the residues `mu(W) - (n/d) sum a_j`.
    pub fn mu_and_residues(
        &self,
        eps: &EpsilonWeights,
        budget: usize,
    ) -> Result<MuAssignment, Error> {
        self.verify_epsilon(eps, budget)?;
        let edges = self.dense_edges(budget)?;
        let n_over_d = rat(self.n as i64) / rat(self.degree() as i64);
        let capital_n = denominator_lcm(&eps.values);
        for v in &eps.values {
            if !is_integer(&(v * Rat::from_integer(capital_n.clone()))) {
                return Err(Error::Invariant("N must clear every denominator".into()));
            }
        }
        let mut mu = Vec::new();
        let mut residues = Vec::new();
        for e in &edges {
            let sum: Rat = e.support.iter().map(|&j| eps.values[j].clone()).sum();
            if is_integer(&sum) {
                return Err(Error::InvalidInput(format!(
                    "dense edge {:?} has integral weight sum {sum}; perturb first",
                    one_based(&e.support)
                )));
            }
            let m = 1 + sum.floor().to_integer();
            let m: i64 = i64::try_from(&m).map_err(|_| Error::Invariant("mu overflow".into()))?;
            if m < 1 || m > e.dim as i64 {
                return Err(Error::Invariant(format!(
                    "mu = {m} escapes 1..dim on edge {:?}",
                    one_based(&e.support)
                )));
            }
            // fractional gap 1 + sum - mu must fall strictly inside (0, 1),
            // and N times it strictly inside (0, N)
            let gap = rat(1) + &sum - rat(m);
            if !(gap.is_positive() && gap < rat(1)) {
                return Err(Error::Invariant("fractional gap escaped (0,1)".into()));
            }
            let scaled = &gap * Rat::from_integer(capital_n.clone());
            if !is_integer(&scaled)
                || !scaled.is_positive()
                || scaled >= Rat::from_integer(capital_n.clone())
            {
                return Err(Error::Invariant("scaled gap escaped (0,N)".into()));
            }
            mu.push(m);
            residues.push(rat(m) - &n_over_d * rat(e.sum_mult as i64));
        }
        // under the nonresonance condition no residue is a positive integer
        if self.condition_r(budget)?.pass {
            for (e, res) in edges.iter().zip(&residues) {
                if is_positive_integer(res) {
                    return Err(Error::Invariant(format!(
                        "residue {res} on edge {:?} contradicts the nonresonance condition",
                        one_based(&e.support)
                    )));
                }
            }
        }
        Ok(MuAssignment {
            mu,
            capital_n,
            residues,
        })
    }

    /// Runs the full pipeline.
    pub fn analyze(&self, budget: usize) -> Result<Analysis, Error> {
        let indecomposable = self.is_indecomposable() || self.n == 1;
        let dense_edges = self.dense_edges(budget)?;
        let condition_r = self.condition_r(budget)?;
        let mut epsilon = None;
        let mut epsilon_perturbed = None;
        let mut mu = None;
        if indecomposable {
            let eps = self.epsilon_construct(budget)?;
            let pert = self.epsilon_perturb(&eps, budget)?;
            mu = Some(self.mu_and_residues(&pert, budget)?);
            epsilon = Some(eps);
            epsilon_perturbed = Some(pert);
        }
        let root = -(rat(self.n as i64) / rat(self.degree() as i64));
        let verdict = match (indecomposable, condition_r.pass) {
            (true, true) => Verdict {
                applies: true,
                root: Some(root.clone()),
                reason: format!("indecomposable and nonresonant: {root} is a b-function root"),
            },
            (false, _) => Verdict {
                applies: false,
                root: None,
                reason: "decomposable arrangement: the criterion is silent".into(),
            },
            (true, false) => Verdict {
                applies: false,
                root: None,
                reason: "nonresonance condition fails: the criterion is silent".into(),
            },
        };
        Ok(Analysis {
            n: self.n,
            r: self.r(),
            d: self.degree(),
            indecomposable,
            dense_edges,
            condition_r,
            epsilon,
            epsilon_perturbed,
            mu,
            verdict,
        })
    }
}

/// One-based copy of an index list for messages and reports.
pub fn one_based(support: &[usize]) -> Vec<usize> {
    support.iter().map(|&j| j + 1).collect()
}

fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while out.len() < count {
        if out.iter().all(|&p| !candidate.is_multiple_of(p)) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}
