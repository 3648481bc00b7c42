//! Intersection-lattice invariants: the Mobius function, the characteristic
//! polynomial, the projective Euler characteristic, nbc counts under two
//! hyperplane orders, and the cohomology of the weighted (Aomoto) complex.

use bsato::arrangement::{Arrangement, DEFAULT_BUDGET};
use bsato::lattice::{aomoto_betti, char_poly, chi_projective, intersection_lattice, os_nbc};
use bsato::rat::{rat, ratio, Rat};

fn forms(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| rat(v)).collect())
        .collect()
}

fn main() {
    let braid = Arrangement::reduced(2, forms(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();

    let lat = intersection_lattice(&braid, DEFAULT_BUDGET).unwrap();
    println!("lattice elements (dim, support, mobius):");
    for (flat, mu) in lat.flats.iter().zip(&lat.mobius) {
        println!("  dim {} {:?} mu {}", flat.dim, flat.support, mu);
    }

    // chi(t) = (t-1)(t-2), stored by ascending coefficients
    let cp = char_poly(&braid, DEFAULT_BUDGET).unwrap();
    println!("characteristic polynomial (ascending): {cp:?}");
    assert_eq!(cp, vec![2.into(), (-3).into(), 1.into()]);

    // dividing out (t-1) and evaluating at 1 gives the projective chi
    let chi = chi_projective(&braid, DEFAULT_BUDGET).unwrap();
    println!("projective Euler characteristic: {}", chi.chi);
    assert_eq!(chi.chi, (-1).into());

    // nbc counts match the absolute values of the coefficients, whatever
    // priority order breaks the circuits
    let natural = os_nbc(&braid, None, DEFAULT_BUDGET).unwrap();
    let reversed = os_nbc(&braid, Some(&[2, 1, 0]), DEFAULT_BUDGET).unwrap();
    println!("nbc counts, natural order:  {:?}", natural.counts);
    println!("nbc counts, reversed order: {:?}", reversed.counts);
    assert_eq!(natural.counts, vec![1, 3, 2]);
    assert_eq!(natural.counts, reversed.counts);
    println!(
        "broken circuits, natural order: {:?}",
        natural.broken_circuits
    );

    // weighted complex: generic weights are acyclic below the top
    let generic = aomoto_betti(&braid, &[rat(1), rat(1), rat(1)], None, DEFAULT_BUDGET).unwrap();
    println!("betti at lambda = (1,1,1):        {:?}", generic.betti);
    assert_eq!(generic.betti, vec![0, 0, 0]);

    // resonance: weights summing to zero light up the middle
    let resonant = aomoto_betti(
        &braid,
        &[ratio(-2, 3), ratio(-2, 3), ratio(4, 3)],
        None,
        DEFAULT_BUDGET,
    )
    .unwrap();
    println!("betti at lambda = (-2/3,-2/3,4/3): {:?}", resonant.betti);
    assert_eq!(resonant.betti, vec![0, 1, 1]);
}
