//! Membership in the left ideal D·x1 + .. + D·xn, decided combinatorially
//! from the normal-form coefficients, graded part by graded part.  The sigma
//! invariant is the obstruction in degree zero.

use bsato::parse::parse_operator;
use bsato::report::IdealCheckReport;

fn check(text: &str, n: usize) {
    let op = parse_operator(text, Some(n)).unwrap();
    let membership = op.in_ideal_dx().unwrap();
    let sigma = op.sigma_invariant().unwrap();
    let report = IdealCheckReport::new(&membership, sigma);
    println!("P = {op}");
    print!("{}", report.to_text());

    // cross-check against the anti-normal form: membership means no term
    // with an empty x-block survives
    let anti = op.anti_normal_form();
    let pure_d_free = anti.iter().all(|((_, gamma, _), _)| !gamma.is_zero());
    assert_eq!(membership.in_ideal, pure_d_free);
    println!();
}

fn main() {
    // x1*d1 = d1*x1 - 1 is in the ideal (left factor x1)
    check("x1*d1", 2);

    // the Euler operator misses by sigma = -2 in two variables
    check("x1*d1 + x2*d2", 2);

    // a bare derivative is never in the ideal
    check("d1", 2);

    // adding the right scalar clears the obstruction: this one is a member
    check("x1*d1 + x2*d2 + 2", 2);

    // products of coordinates with anything are members
    check("x1*x2*d1*d2 + x2*d2", 2);
}
