//! Cross-verification suites pitting the closed-form implementations
//! against independent brute-force oracles, plus the deterministic
//! generators both the suites and the integration tests share.
//!
//! The oracles deliberately avoid the production code paths: anti-normal
//! ordering is reproduced by literal commutator rewriting on words, and
//! matroid connectivity by trying every rank-additive bipartition.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::forms::{omega0, DifferentialForm};
use crate::fs::euler_root_witness;
use crate::multiindex::MultiIndex;
use crate::poly::Polynomial;
use crate::rat::{rat, Rat};
use crate::report::{SelftestReport, SuiteReport, SCHEMA};
use crate::weyl::{to_antinormal, WeylOperator};

/// Small deterministic generator (xorshift64*), seeded explicitly so every
/// suite run sees the same cases.
pub struct DetRng(u64);

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng(seed | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    /// Uniform-enough draw from `0..bound` for test-case shaping.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Integer in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Nonzero integer in `-bound..=bound`.
    pub fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.int(-bound, bound);
            if v != 0 {
                return v;
            }
        }
    }
}

/// Random polynomial with `terms` monomials of per-variable exponent at
/// most `max_exp` and small nonzero integer coefficients.
pub fn random_polynomial(rng: &mut DetRng, n: usize, max_exp: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let exps: Vec<u32> = (0..n)
            .map(|_| rng.below(u64::from(max_exp) + 1) as u32)
            .collect();
        p.add_term(MultiIndex(exps), rat(rng.nonzero(5)));
    }
    p
}

/// Random nonzero homogeneous polynomial of exact degree `d`.
pub fn random_homogeneous(rng: &mut DetRng, n: usize, d: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    while p.is_zero() {
        for _ in 0..terms {
            let mut exps = vec![0u32; n];
            for _ in 0..d {
                exps[rng.below(n as u64) as usize] += 1;
            }
            p.add_term(MultiIndex(exps), rat(rng.nonzero(5)));
        }
    }
    p
}

/// Random s-free operator with entries bounded by `max_exp`.
pub fn random_operator(rng: &mut DetRng, n: usize, max_exp: u32, terms: usize) -> WeylOperator {
    let mut op = WeylOperator::zero(n);
    for _ in 0..terms {
        let beta: Vec<u32> = (0..n)
            .map(|_| rng.below(u64::from(max_exp) + 1) as u32)
            .collect();
        let alpha: Vec<u32> = (0..n)
            .map(|_| rng.below(u64::from(max_exp) + 1) as u32)
            .collect();
        op.add_term(
            (MultiIndex(beta), MultiIndex(alpha), 0),
            rat(rng.nonzero(5)),
        );
    }
    op
}

/// Random differential form of the given degree with low-degree polynomial
/// coefficients.
pub fn random_form(rng: &mut DetRng, n: usize, degree: usize, comps: usize) -> DifferentialForm {
    let mut form = DifferentialForm::zero(n, degree);
    for _ in 0..comps {
        let mut idx: Vec<u8> = (0..n as u8).collect();
        for i in (1..idx.len()).rev() {
            let j = rng.below((i + 1) as u64) as usize;
            idx.swap(i, j);
        }
        idx.truncate(degree);
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        form.add_component(&idx, random_polynomial(rng, n, 2, 2));
    }
    form
}

/// Random arrangement with `r` pairwise non-proportional nonzero forms.
///
/// Coordinates are drawn from -4..=4; for n = 2 that grid holds 24 distinct
/// directions, enough for every `r` used by the suites. A rejection budget
/// turns an impossible request into a loud failure instead of a hang.
pub fn random_arrangement(rng: &mut DetRng, n: usize, r: usize) -> Arrangement {
    let mut forms: Vec<Vec<Rat>> = Vec::new();
    let mut attempts = 0usize;
    while forms.len() < r {
        attempts += 1;
        assert!(
            attempts < 10_000,
            "cannot fit {r} directions in dimension {n}"
        );
        let candidate: Vec<Rat> = (0..n).map(|_| rat(rng.int(-4, 4))).collect();
        if candidate.iter().all(|c| c.is_zero()) {
            continue;
        }
        let pairwise_independent = forms
            .iter()
            .all(|f| crate::linalg::rank(&[f.clone(), candidate.clone()]) == 2);
        if pairwise_independent {
            forms.push(candidate);
        }
    }
    Arrangement::reduced(n, forms).expect("generator keeps the invariants")
}

/// Anti-normal form of the single-variable word `x^b d^a` by literal
/// rewriting with `x d = d x - 1`, as a map `(d-exp, x-exp) -> coeff`.
fn word_antinormal_1var(b: u32, a: u32) -> BTreeMap<(u32, u32), Rat> {
    // a word is a sequence of letters, false = x, true = d
    let mut queue: Vec<(Vec<bool>, Rat)> = Vec::new();
    let mut word = vec![false; b as usize];
    word.extend(std::iter::repeat_n(true, a as usize));
    queue.push((word, rat(1)));
    let mut out: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
    while let Some((word, coeff)) = queue.pop() {
        // find an x immediately left of a d
        match word.windows(2).position(|w| !w[0] && w[1]) {
            None => {
                // already d..d x..x
                let d_count = word.iter().filter(|&&l| l).count() as u32;
                let x_count = word.len() as u32 - d_count;
                let entry = out.entry((d_count, x_count)).or_insert_with(Rat::zero);
                *entry += coeff;
            }
            Some(i) => {
                let mut swapped = word.clone();
                swapped.swap(i, i + 1);
                let mut dropped = word;
                dropped.drain(i..=i + 1);
                queue.push((swapped, coeff.clone()));
                queue.push((dropped, -coeff));
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Multivariate oracle: variables commute, so the per-variable expansions
/// combine multiplicatively.
pub fn oracle_antinormal(
    beta: &MultiIndex,
    alpha: &MultiIndex,
) -> BTreeMap<(MultiIndex, MultiIndex), Rat> {
    let n = beta.len();
    let mut acc: BTreeMap<(Vec<u32>, Vec<u32>), Rat> = BTreeMap::new();
    acc.insert((Vec::new(), Vec::new()), rat(1));
    for i in 0..n {
        let var = word_antinormal_1var(beta.0[i], alpha.0[i]);
        let mut next: BTreeMap<(Vec<u32>, Vec<u32>), Rat> = BTreeMap::new();
        for ((ds, xs), c) in &acc {
            for ((dv, xv), w) in &var {
                let mut ds2 = ds.clone();
                let mut xs2 = xs.clone();
                ds2.push(*dv);
                xs2.push(*xv);
                let entry = next.entry((ds2, xs2)).or_insert_with(Rat::zero);
                *entry += c * w;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((d, x), c)| ((MultiIndex(d), MultiIndex(x)), c))
        .collect()
}

/// Connectivity by exhaustion: a subset is disconnected exactly when some
/// bipartition into nonempty halves is rank additive.
pub fn oracle_connected(a: &Arrangement, subset: &[usize]) -> bool {
    oracle_connected_memo(a, subset, &mut HashMap::new())
}

/// Same oracle with a caller-held rank cache keyed by masks over the whole
/// arrangement, so a sweep over every subset shares eliminations.
pub fn oracle_connected_memo(
    a: &Arrangement,
    subset: &[usize],
    rank_memo: &mut HashMap<u64, usize>,
) -> bool {
    if subset.is_empty() {
        return false;
    }
    if subset.len() == 1 {
        return true;
    }
    let mut rank_of = |mask: u64| -> usize {
        if let Some(&r) = rank_memo.get(&mask) {
            return r;
        }
        let rows: Vec<Vec<Rat>> = (0..a.r())
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| a.forms()[j].to_vec())
            .collect();
        let r = crate::linalg::rank(&rows);
        rank_memo.insert(mask, r);
        r
    };
    let m = subset.len();
    let full: u64 = subset.iter().fold(0, |acc, &j| acc | 1 << j);
    let total = rank_of(full);
    // halves containing the first element visit each bipartition once
    for rest in 0u64..(1 << (m - 1)) {
        let positions = (rest << 1) | 1;
        if positions == (1 << m) - 1 {
            continue;
        }
        let half: u64 = (0..m)
            .filter(|i| positions & (1 << i) != 0)
            .fold(0, |acc, i| acc | 1 << subset[i]);
        if rank_of(half) + rank_of(full & !half) == total {
            return false;
        }
    }
    true
}

fn suite<F: FnMut() -> (u64, u64)>(name: &str, mut run: F) -> SuiteReport {
    let (cases, failures) = run();
    SuiteReport {
        name: name.into(),
        cases,
        failures,
    }
}

/// Exhaustive agreement of the closed-form anti-normal expansion with the
/// word-rewriting oracle, all exponents at most 3 in up to 3 variables.
pub fn antinormal_suite() -> SuiteReport {
    suite("antinormal-vs-word-rewriting", || {
        let mut cases = 0;
        let mut failures = 0;
        for n in 1..=3usize {
            let cap = MultiIndex(vec![3; n]);
            let zero = MultiIndex::zero(n);
            for beta in MultiIndex::box_range(&zero, &cap) {
                for alpha in MultiIndex::box_range(&zero, &cap) {
                    cases += 1;
                    if to_antinormal(&beta, &alpha) != oracle_antinormal(&beta, &alpha) {
                        failures += 1;
                    }
                }
            }
        }
        (cases, failures)
    })
}

/// Ideal membership and the sigma invariant against direct inspection of
/// the anti-normal form: membership means no pure-d term survives, and
/// sigma is the scalar term.
pub fn ideal_suite() -> SuiteReport {
    suite("ideal-membership-vs-antinormal", || {
        let mut rng = DetRng::new(0x1dea1);
        let mut cases = 0;
        let mut failures = 0;
        for _ in 0..200 {
            let n = rng.int(1, 3) as usize;
            let terms = rng.int(1, 4) as usize;
            let op = random_operator(&mut rng, n, 3, terms);
            cases += 1;
            let anti = op.anti_normal_form();
            let pure_d_free = anti.iter().all(|((_, gamma, _), _)| !gamma.is_zero());
            let membership = op.in_ideal_dx().expect("s-free operator");
            let sigma = op.sigma_invariant().expect("s-free operator");
            let scalar = anti
                .get(&(MultiIndex::zero(n), MultiIndex::zero(n), 0))
                .cloned()
                .unwrap_or_else(Rat::zero);
            if membership.in_ideal != pure_d_free || sigma != scalar {
                failures += 1;
            }
        }
        (cases, failures)
    })
}

/// Fundamental-circuit block merging against the bipartition oracle on
/// every subset of several random arrangements.
pub fn connectivity_suite() -> SuiteReport {
    suite("connectivity-vs-bipartitions", || {
        let mut rng = DetRng::new(0xc087);
        let mut cases = 0;
        let mut failures = 0;
        for t in 0..6 {
            let n = 2 + (t % 3);
            let r = 6 + rng.int(0, 4) as usize;
            let a = random_arrangement(&mut rng, n, r);
            let mut memo = HashMap::new();
            for mask in 1u64..(1 << r) {
                let subset: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
                cases += 1;
                if a.matroid_connected(&subset) != oracle_connected_memo(&a, &subset, &mut memo) {
                    failures += 1;
                }
            }
        }
        (cases, failures)
    })
}

/// Root witness identity on random homogeneous polynomials.
pub fn euler_witness_suite() -> SuiteReport {
    suite("euler-root-witness", || {
        let mut rng = DetRng::new(0xe01e5);
        let mut cases = 0;
        let mut failures = 0;
        for _ in 0..20 {
            let n = rng.int(1, 4) as usize;
            let d = rng.int(1, 5) as u32;
            let terms = rng.int(1, 3) as usize;
            let f = random_homogeneous(&mut rng, n, d, terms);
            cases += 1;
            match euler_root_witness(&f) {
                Ok(w) if w.verified && w.root == -(rat(n as i64) / rat(i64::from(d))) => {}
                _ => failures += 1,
            }
        }
        (cases, failures)
    })
}

/// Contraction homotopy `h(df ^ w) + df ^ h(w) = f w` on random forms, and
/// the closed-form identities of `omega0 = h(dx)`.
pub fn homotopy_suite() -> SuiteReport {
    suite("euler-contraction-homotopy", || {
        let mut rng = DetRng::new(0xf0a);
        let mut cases = 0;
        let mut failures = 0;
        for _ in 0..50 {
            let n = rng.int(1, 4) as usize;
            let d = rng.int(1, 4) as u32;
            let f = random_homogeneous(&mut rng, n, d, 2);
            let degree = rng.int(0, n as i64 - 1) as usize;
            let omega = random_form(&mut rng, n, degree, 2);
            cases += 1;
            let df = DifferentialForm::from_poly(f.clone()).exterior_d();
            let lhs =
                &df.wedge(&omega).euler_contraction(d) + &df.wedge(&omega.euler_contraction(d));
            if lhs != omega.mul_poly(&f) {
                failures += 1;
            }
        }
        for _ in 0..20 {
            let n = rng.int(1, 4) as usize;
            let d = rng.int(1, 4) as u32;
            let f = random_homogeneous(&mut rng, n, d, 2);
            let w0 = omega0(n, d);
            let vol = DifferentialForm::volume(n);
            cases += 1;
            let df = DifferentialForm::from_poly(f.clone()).exterior_d();
            let wedge_ok = df.wedge(&w0) == vol.mul_poly(&f);
            let d_ok = w0.exterior_d() == vol.scale(&(rat(n as i64) / rat(i64::from(d))));
            if !(wedge_ok && d_ok) {
                failures += 1;
            }
        }
        (cases, failures)
    })
}

/// Runs every suite.
pub fn run_all() -> SelftestReport {
    let suites = vec![
        antinormal_suite(),
        ideal_suite(),
        connectivity_suite(),
        euler_witness_suite(),
        homotopy_suite(),
    ];
    let ok = suites.iter().all(|s| s.failures == 0);
    SelftestReport {
        schema: SCHEMA,
        suites,
        ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_rewriting_small_cases() {
        // x d = d x - 1
        let m = word_antinormal_1var(1, 1);
        assert_eq!(m.get(&(1, 1)), Some(&rat(1)));
        assert_eq!(m.get(&(0, 0)), Some(&rat(-1)));
        // x^2 d = d x^2 - 2 x
        let m = word_antinormal_1var(2, 1);
        assert_eq!(m.get(&(1, 2)), Some(&rat(1)));
        assert_eq!(m.get(&(0, 1)), Some(&rat(-2)));
    }

    #[test]
    fn oracle_connectivity_matches_known_cases() {
        let rv = |vals: &[i64]| vals.iter().map(|&v| rat(v)).collect::<Vec<Rat>>();
        let braid = Arrangement::reduced(2, vec![rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])]).unwrap();
        assert!(oracle_connected(&braid, &[0, 1, 2]));
        assert!(!oracle_connected(&braid, &[0, 1]));
        assert!(oracle_connected(&braid, &[2]));
    }

    #[test]
    fn deterministic_rng_is_stable() {
        let mut a = DetRng::new(7);
        let mut b = DetRng::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn all_suites_pass() {
        let report = run_all();
        for s in &report.suites {
            assert_eq!(s.failures, 0, "suite {} failed", s.name);
            assert!(s.cases > 0);
        }
        assert!(report.ok);
    }
}
