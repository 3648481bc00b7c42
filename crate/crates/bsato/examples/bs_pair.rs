//! Verifying candidate pairs (P(s), b(s)) for the identity
//! P(s) f^{s+1} = b(s) f^s.  The checker is exact and one-sided: it
//! certifies a given pair, it does not search for one.

use bsato::fs::{bs_pair_check, BsPair};
use bsato::parse::{parse_bpoly, parse_operator, parse_polynomial};
use bsato::report::BsCheckReport;

fn check(f_text: &str, p_text: &str, b_text: &str) -> bool {
    let f = parse_polynomial(f_text, None).unwrap();
    let operator = parse_operator(p_text, Some(f.n())).unwrap();
    let bpoly = parse_bpoly(b_text).unwrap();
    let check = bs_pair_check(&BsPair { operator, bpoly }, &f).unwrap();
    println!("f = {f_text:<12} P = {p_text:<18} b = {b_text}");
    print!("{}", BsCheckReport::new(&check).to_text());
    println!();
    check.holds
}

fn main() {
    // the smallest pair: d/dx . x^{s+1} = (s+1) x^s
    assert!(check("x1", "d1", "s+1"));

    // a normal crossing: each factor contributes one root at -1
    assert!(check("x1*x2", "d1*d2", "(s+1)^2"));

    // powers: b(s) = prod_{i=1..a} (s + i/a) for f = x^a, P = a^{-a} d^a
    assert!(check("x1^2", "1/4*d1^2", "(s+1/2)*(s+1)"));
    assert!(check("x1^3", "1/27*d1^3", "(s+1/3)*(s+2/3)*(s+1)"));

    // perturbing b breaks the identity and leaves a nonzero residual
    assert!(!check("x1*x2", "d1*d2", "(s+1)^2 + 1"));
    assert!(!check("x1", "d1", "s+2"));
}
