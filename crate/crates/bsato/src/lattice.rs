//! Intersection-lattice combinatorics of an arrangement: Mobius function,
//! characteristic polynomial, Euler characteristic of the projectivized
//! complement, nbc bases of the Orlik-Solomon algebra, and the cohomology
//! of the Aomoto complex `(OS, omega ^ -)` for rational weights.
//!
//! Lattice elements are recorded by the span they generate, so the order
//! relation is containment of supports.  All bases and rewriting below
//! depend on a linear order of the hyperplanes (default: input order);
//! dimensions of the resulting cohomology do not.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::{Arrangement, Flat};
use crate::error::Error;
use crate::linalg::rank as mat_rank;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    /// Sorted by dimension then support; index 0 is the bottom element.
    pub flats: Vec<Flat>,
    /// Mobius values aligned with `flats`.
    pub mobius: Vec<BigInt>,
}

pub fn intersection_lattice(a: &Arrangement, budget: usize) -> Result<IntersectionLattice, Error> {
    let mut flats = vec![Flat {
        support: Vec::new(),
        dim: 0,
    }];
    flats.extend(a.all_closures(budget)?);
    let mut mobius: Vec<BigInt> = Vec::with_capacity(flats.len());
    for i in 0..flats.len() {
        if i == 0 {
            mobius.push(BigInt::from(1));
            continue;
        }
        // strict predecessors all appear earlier in the (dim, support) sort
        let mut acc = BigInt::zero();
        for j in 0..i {
            if is_subset(&flats[j].support, &flats[i].support) {
                acc += &mobius[j];
            }
        }
        mobius.push(-acc);
    }
    Ok(IntersectionLattice { flats, mobius })
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted ascending
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            if b == s {
                continue 'outer;
            }
            if b > s {
                return false;
            }
        }
        return false;
    }
    true
}

/// Ascending coefficients of `sum_X mu(X) t^(n - dim X)`, length `n + 1`.
pub fn char_poly(a: &Arrangement, budget: usize) -> Result<Vec<BigInt>, Error> {
    let lat = intersection_lattice(a, budget)?;
    let mut coeffs = vec![BigInt::zero(); a.n() + 1];
    for (flat, mu) in lat.flats.iter().zip(&lat.mobius) {
        coeffs[a.n() - flat.dim] += mu;
    }
    Ok(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiData {
    /// Ascending coefficients of `char_poly / (t - 1)`.
    pub quotient: Vec<BigInt>,
    /// Euler characteristic of the projectivized complement: quotient at 1.
    pub chi: BigInt,
}

/// For an essential arrangement the characteristic polynomial is divisible
/// by `t - 1`; the quotient evaluated at 1 is the Euler characteristic of
/// the complement in projective space.  Its absolute value predicts the top
/// Betti number of the generic-weight Aomoto complex.
pub fn chi_projective(a: &Arrangement, budget: usize) -> Result<ChiData, Error> {
    if !a.is_essential() {
        return Err(Error::NotEssential);
    }
    let p = char_poly(a, budget)?;
    let n = a.n();
    let mut quotient = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (1..=n).rev() {
        carry += &p[i];
        quotient[i - 1] = carry.clone();
    }
    if p[0] != -&quotient[0] {
        return Err(Error::Invariant(
            "characteristic polynomial not divisible by t - 1".into(),
        ));
    }
    let chi: BigInt = quotient.iter().sum();
    Ok(ChiData { quotient, chi })
}

/// Minimal dependent subsets, each sorted ascending.
pub fn circuits(a: &Arrangement, budget: usize) -> Result<Vec<Vec<usize>>, Error> {
    if a.r() > budget {
        return Err(Error::BudgetExceeded(format!(
            "{} hyperplanes exceed the enumeration budget {}",
            a.r(),
            budget
        )));
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    circuits_rec(a, 0, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

fn circuits_rec(a: &Arrangement, start: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    for j in start..a.r() {
        stack.push(j);
        if a.rank(stack) == stack.len() {
            circuits_rec(a, j + 1, stack, out);
        } else {
            // dependent extension of an independent set: minimal iff every
            // single deletion is independent
            let minimal = (0..stack.len()).all(|k| {
                let mut s = stack.clone();
                s.remove(k);
                a.rank(&s) == s.len()
            });
            if minimal {
                out.push(stack.clone());
            }
        }
        stack.pop();
    }
}

/// Priority lookup for an optional hyperplane order (a permutation of
/// `0..r`; earlier entries are smaller).
fn priorities(r: usize, order: Option<&[usize]>) -> Result<Vec<usize>, Error> {
    match order {
        None => Ok((0..r).collect()),
        Some(ord) => {
            let mut sorted: Vec<usize> = ord.to_vec();
            sorted.sort_unstable();
            if sorted != (0..r).collect::<Vec<_>>() {
                return Err(Error::InvalidInput(format!(
                    "order must be a permutation of 1..={r}"
                )));
            }
            let mut prio = vec![0usize; r];
            for (pos, &j) in ord.iter().enumerate() {
                prio[j] = pos;
            }
            Ok(prio)
        }
    }
}

/// Broken circuits: each circuit minus its smallest element under the
/// chosen order, paired with that pivot.  Deduplicated by the broken set.
fn broken_circuits_with_pivots(
    a: &Arrangement,
    prio: &[usize],
    budget: usize,
) -> Result<Vec<(Vec<usize>, usize)>, Error> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in circuits(a, budget)? {
        let &pivot = c.iter().min_by_key(|&&j| prio[j]).unwrap();
        let broken: Vec<usize> = c.iter().copied().filter(|&j| j != pivot).collect();
        if seen.insert(broken.clone()) {
            out.push((broken, pivot));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcData {
    pub circuits: Vec<Vec<usize>>,
    pub broken_circuits: Vec<Vec<usize>>,
    /// nbc sets grouped by size, degrees `0..=rank`.
    pub nbc: Vec<Vec<Vec<usize>>>,
    pub counts: Vec<u64>,
}

/// Independent subsets containing no broken circuit, graded by size.  The
/// per-degree counts match the unsigned characteristic polynomial
/// coefficients regardless of the chosen order.
pub fn os_nbc(a: &Arrangement, order: Option<&[usize]>, budget: usize) -> Result<NbcData, Error> {
    let prio = priorities(a.r(), order)?;
    let all_circuits = circuits(a, budget)?;
    let broken = broken_circuits_with_pivots(a, &prio, budget)?;
    let broken_sets: Vec<Vec<usize>> = broken.iter().map(|(b, _)| b.clone()).collect();
    let all: Vec<usize> = (0..a.r()).collect();
    let rank = a.rank(&all);
    let mut nbc: Vec<Vec<Vec<usize>>> = vec![Vec::new(); rank + 1];
    nbc[0].push(Vec::new());
    let mut stack = Vec::new();
    nbc_rec(a, &broken_sets, 0, &mut stack, &mut nbc);
    let counts = nbc.iter().map(|level| level.len() as u64).collect();
    Ok(NbcData {
        circuits: all_circuits,
        broken_circuits: broken_sets,
        nbc,
        counts,
    })
}

fn nbc_rec(
    a: &Arrangement,
    broken: &[Vec<usize>],
    start: usize,
    stack: &mut Vec<usize>,
    nbc: &mut Vec<Vec<Vec<usize>>>,
) {
    for j in start..a.r() {
        stack.push(j);
        // supersets of a broken circuit or of a dependent set never recover
        if a.rank(stack) == stack.len() && !broken.iter().any(|b| is_subset(b, stack)) {
            nbc[stack.len()].push(stack.clone());
            nbc_rec(a, broken, j + 1, stack, nbc);
        }
        stack.pop();
    }
}

/// Rewrites exterior monomials (sorted index sets with coefficients) into
/// the nbc basis: dependent sets vanish, and a set containing a broken
/// circuit is resolved through the circuit relation
/// `sum_i (-1)^i e_{C minus c_i} = 0`, eliminating the pivot-free term.
struct Rewriter<'a> {
    a: &'a Arrangement,
    broken: Vec<(Vec<usize>, usize)>,
}

impl Rewriter<'_> {
    fn straighten(&self, terms: BTreeMap<Vec<usize>, Rat>) -> BTreeMap<Vec<usize>, Rat> {
        let mut pending = terms;
        let mut done: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        while let Some((key, coeff)) = pending.pop_first() {
            if coeff.is_zero() {
                continue;
            }
            if self.a.rank(&key) < key.len() {
                continue;
            }
            let Some((broken, pivot)) = self
                .broken
                .iter()
                .find(|(b, _)| is_subset(b, &key))
                .map(|(b, p)| (b.clone(), *p))
            else {
                add_term(&mut done, key, coeff);
                continue;
            };
            // full circuit, ascending; the pivot is outside `key`
            let mut circuit = broken.clone();
            circuit.push(pivot);
            circuit.sort_unstable();
            let rest: Vec<usize> = key
                .iter()
                .copied()
                .filter(|j| !broken.contains(j))
                .collect();
            // signed relation terms: (-1)^i * sort sign of (C minus c_i) ++ rest
            let mut relation: Vec<(Vec<usize>, i32)> = Vec::new();
            let mut self_index = usize::MAX;
            for (i, &ci) in circuit.iter().enumerate() {
                let reduced: Vec<usize> = circuit.iter().copied().filter(|&x| x != ci).collect();
                let mut merged = reduced;
                merged.extend_from_slice(&rest);
                let Some((sorted, sign)) = sort_with_sign(merged) else {
                    continue;
                };
                let signed = if i % 2 == 0 { sign } else { -sign };
                if ci == pivot {
                    debug_assert_eq!(sorted, key);
                    self_index = relation.len();
                }
                relation.push((sorted, signed));
            }
            debug_assert!(self_index != usize::MAX);
            let (_, self_sign) = relation[self_index].clone();
            for (i, (sorted, sign)) in relation.into_iter().enumerate() {
                if i == self_index {
                    continue;
                }
                // key = -(sign / self_sign) * term, scaled by coeff
                let factor = crate::rat::rat(i64::from(-sign * self_sign));
                add_term(&mut pending, sorted, &coeff * factor);
            }
        }
        done
    }
}

fn add_term(map: &mut BTreeMap<Vec<usize>, Rat>, key: Vec<usize>, value: Rat) {
    use std::collections::btree_map::Entry;
    if value.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Sorts an index list, returning the permutation sign; `None` on repeats.
fn sort_with_sign(mut v: Vec<usize>) -> Option<(Vec<usize>, i32)> {
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

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AomotoData {
    /// nbc dimensions per degree.
    pub counts: Vec<u64>,
    /// Ranks of the maps `omega ^ -` out of each degree.
    pub ranks: Vec<usize>,
    /// Cohomology dimensions per degree.
    pub betti: Vec<u64>,
}

/// Cohomology dimensions of `(OS, omega ^ -)` with `omega = sum lambda_j
/// e_j`.  The multiplication is computed in the nbc basis through the
/// straightening rewriter; the composite of consecutive maps is verified to
/// vanish before ranks are taken.
pub fn aomoto_betti(
    a: &Arrangement,
    lambda: &[Rat],
    order: Option<&[usize]>,
    budget: usize,
) -> Result<AomotoData, Error> {
    if lambda.len() != a.r() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} hyperplanes",
            lambda.len(),
            a.r()
        )));
    }
    let prio = priorities(a.r(), order)?;
    let nbc_data = os_nbc(a, order, budget)?;
    let rewriter = Rewriter {
        a,
        broken: broken_circuits_with_pivots(a, &prio, budget)?,
    };
    let top = nbc_data.nbc.len() - 1;

    let index: Vec<BTreeMap<Vec<usize>, usize>> = nbc_data
        .nbc
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect()
        })
        .collect();

    let apply = |s: &[usize]| -> BTreeMap<Vec<usize>, Rat> {
        let mut terms: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        for (j, lj) in lambda.iter().enumerate() {
            if lj.is_zero() || s.contains(&j) {
                continue;
            }
            let below = s.iter().filter(|&&x| x < j).count();
            let sign = if below % 2 == 0 {
                lj.clone()
            } else {
                -lj.clone()
            };
            let mut key = s.to_vec();
            key.push(j);
            key.sort_unstable();
            add_term(&mut terms, key, sign);
        }
        rewriter.straighten(terms)
    };

    let mut ranks = vec![0usize; top + 1];
    for p in 0..top {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for s in &nbc_data.nbc[p] {
            let image = apply(s);
            let mut row = vec![Rat::zero(); nbc_data.nbc[p + 1].len()];
            for (key, value) in &image {
                let col = *index[p + 1].get(key).ok_or_else(|| {
                    Error::Invariant("straightened term escaped the nbc basis".into())
                })?;
                row[col] = value.clone();
            }
            // composite with the next multiplication must vanish
            let mut second: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
            for (key, value) in &image {
                for (k2, v2) in apply(key) {
                    add_term(&mut second, k2, v2 * value);
                }
            }
            if !second.is_empty() {
                return Err(Error::Invariant("omega ^ omega acted nontrivially".into()));
            }
            rows.push(row);
        }
        ranks[p] = mat_rank(&rows);
    }

    let mut betti = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let below = if p == 0 { 0 } else { ranks[p - 1] };
        let dim = nbc_data.counts[p] as i64 - ranks[p] as i64 - below as i64;
        if dim < 0 {
            return Err(Error::Invariant("negative cohomology dimension".into()));
        }
        betti.push(dim as u64);
    }
    Ok(AomotoData {
        counts: nbc_data.counts,
        ranks,
        betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn rv(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    fn braid3() -> Arrangement {
        Arrangement::reduced(2, vec![rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])]).unwrap()
    }

    fn near_pencil4() -> Arrangement {
        Arrangement::reduced(
            3,
            vec![
                rv(&[1, 0, 0]),
                rv(&[0, 1, 0]),
                rv(&[0, 0, 1]),
                rv(&[1, 1, 1]),
            ],
        )
        .unwrap()
    }

    const B: usize = crate::arrangement::DEFAULT_BUDGET;

    #[test]
    fn mobius_of_braid3() {
        let lat = intersection_lattice(&braid3(), B).unwrap();
        assert_eq!(lat.flats.len(), 5);
        let by_support: BTreeMap<Vec<usize>, BigInt> = lat
            .flats
            .iter()
            .map(|f| f.support.clone())
            .zip(lat.mobius.clone())
            .collect();
        assert_eq!(by_support[&vec![]], BigInt::from(1));
        assert_eq!(by_support[&vec![0]], BigInt::from(-1));
        assert_eq!(by_support[&vec![0, 1, 2]], BigInt::from(2));
    }

    #[test]
    fn mobius_sums_vanish() {
        let lat = intersection_lattice(&near_pencil4(), B).unwrap();
        for top in lat.flats.iter().skip(1) {
            let mut acc = BigInt::zero();
            for (j, low) in lat.flats.iter().enumerate() {
                if is_subset(&low.support, &top.support) {
                    acc += &lat.mobius[j];
                }
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn char_poly_of_braid3() {
        // (t - 1)(t - 2)
        let p = char_poly(&braid3(), B).unwrap();
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(1)]);
    }

    #[test]
    fn char_poly_of_near_pencil() {
        let p = char_poly(&near_pencil4(), B).unwrap();
        assert_eq!(
            p,
            vec![
                BigInt::from(-3),
                BigInt::from(6),
                BigInt::from(-4),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn char_poly_non_essential() {
        let a =
            Arrangement::reduced(3, vec![rv(&[1, 0, 0]), rv(&[0, 1, 0]), rv(&[1, 1, 0])]).unwrap();
        let p = char_poly(&a, B).unwrap();
        assert_eq!(
            p,
            vec![
                BigInt::zero(),
                BigInt::from(2),
                BigInt::from(-3),
                BigInt::from(1)
            ]
        );
        assert_eq!(chi_projective(&a, B), Err(Error::NotEssential));
    }

    #[test]
    fn chi_of_braid3() {
        let c = chi_projective(&braid3(), B).unwrap();
        assert_eq!(c.quotient, vec![BigInt::from(-2), BigInt::from(1)]);
        assert_eq!(c.chi, BigInt::from(-1));
    }

    #[test]
    fn chi_of_near_pencil() {
        let c = chi_projective(&near_pencil4(), B).unwrap();
        assert_eq!(
            c.quotient,
            vec![BigInt::from(3), BigInt::from(-3), BigInt::from(1)]
        );
        assert_eq!(c.chi, BigInt::from(1));
    }

    #[test]
    fn circuits_and_broken_circuits() {
        assert_eq!(circuits(&braid3(), B).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(
            circuits(&near_pencil4(), B).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        let boolean = Arrangement::reduced(2, vec![rv(&[1, 0]), rv(&[0, 1])]).unwrap();
        assert!(circuits(&boolean, B).unwrap().is_empty());

        let nbc = os_nbc(&braid3(), None, B).unwrap();
        assert_eq!(nbc.broken_circuits, vec![vec![1, 2]]);
        let reversed = os_nbc(&braid3(), Some(&[2, 1, 0]), B).unwrap();
        assert_eq!(reversed.broken_circuits, vec![vec![0, 1]]);
    }

    #[test]
    fn nbc_counts_match_char_poly() {
        for a in [braid3(), near_pencil4()] {
            let nbc = os_nbc(&a, None, B).unwrap();
            let p = char_poly(&a, B).unwrap();
            let n = a.n();
            for (k, count) in nbc.counts.iter().enumerate() {
                let coeff = p[n - k].magnitude().clone();
                assert_eq!(num_bigint::BigUint::from(*count), coeff);
            }
        }
    }

    #[test]
    fn nbc_sets_of_braid3() {
        let nbc = os_nbc(&braid3(), None, B).unwrap();
        assert_eq!(nbc.counts, vec![1, 3, 2]);
        assert_eq!(nbc.nbc[2], vec![vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn nbc_counts_independent_of_order() {
        let a = near_pencil4();
        let natural = os_nbc(&a, None, B).unwrap();
        let shuffled = os_nbc(&a, Some(&[3, 0, 2, 1]), B).unwrap();
        assert_eq!(natural.counts, shuffled.counts);
        assert_eq!(natural.counts, vec![1, 4, 6, 3]);
    }

    #[test]
    fn aomoto_zero_weights() {
        let data = aomoto_betti(&braid3(), &[rat(0), rat(0), rat(0)], None, B).unwrap();
        assert_eq!(data.betti, vec![1, 3, 2]);
    }

    #[test]
    fn aomoto_nonzero_sum_is_acyclic() {
        let data = aomoto_betti(&braid3(), &[rat(1), rat(1), rat(1)], None, B).unwrap();
        assert_eq!(data.betti, vec![0, 0, 0]);
        let np = aomoto_betti(&near_pencil4(), &[rat(1), rat(2), rat(3), rat(5)], None, B).unwrap();
        assert_eq!(np.betti, vec![0, 0, 0, 0]);
    }

    #[test]
    fn aomoto_resonant_weights() {
        // weights summing to zero on the triple point: cohomology appears
        // in the middle and top degrees
        let lambda = vec![ratio(-2, 3), ratio(-2, 3), ratio(4, 3)];
        let data = aomoto_betti(&braid3(), &lambda, None, B).unwrap();
        assert_eq!(data.betti, vec![0, 1, 1]);
        // alternating sums agree with the nbc Euler characteristic
        let from_counts: i64 = data
            .counts
            .iter()
            .enumerate()
            .map(|(p, &c)| if p % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        let from_betti: i64 = data
            .betti
            .iter()
            .enumerate()
            .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        assert_eq!(from_counts, from_betti);
    }

    #[test]
    fn aomoto_betti_independent_of_order() {
        let lambda = vec![ratio(-2, 3), ratio(-2, 3), ratio(4, 3)];
        let natural = aomoto_betti(&braid3(), &lambda, None, B).unwrap();
        let reversed = aomoto_betti(&braid3(), &lambda, Some(&[2, 1, 0]), B).unwrap();
        assert_eq!(natural.betti, reversed.betti);
    }

    #[test]
    fn straightening_respects_circuit_relation() {
        // e_{1,2} rewrites to e_{0,2} - e_{0,1} for the triple point
        let a = braid3();
        let rewriter = Rewriter {
            a: &a,
            broken: broken_circuits_with_pivots(&a, &[0, 1, 2], B).unwrap(),
        };
        let mut terms = BTreeMap::new();
        terms.insert(vec![1, 2], rat(1));
        let out = rewriter.straighten(terms);
        let expected: BTreeMap<Vec<usize>, Rat> = [(vec![0, 1], rat(-1)), (vec![0, 2], rat(1))]
            .into_iter()
            .collect();
        assert_eq!(out, expected);
    }

    #[test]
    fn straightening_kills_dependent_sets() {
        let a = braid3();
        let rewriter = Rewriter {
            a: &a,
            broken: broken_circuits_with_pivots(&a, &[0, 1, 2], B).unwrap(),
        };
        let mut terms = BTreeMap::new();
        terms.insert(vec![0, 1, 2], rat(5));
        assert!(rewriter.straighten(terms).is_empty());
    }
}
