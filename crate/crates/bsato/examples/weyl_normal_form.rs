//! Normal ordering in the rational Weyl algebra.  Operators are stored with
//! every x to the left of every d; the anti-normal form puts the d's first.

use bsato::parse::parse_operator;
use bsato::weyl::{Gen, WeylOperator};

fn main() {
    // the defining relation, stated in both orders
    let dx = parse_operator("d1*x1", Some(1)).unwrap();
    println!("d1*x1      = {dx}");
    let xd = parse_operator("x1*d1 + 1", Some(1)).unwrap();
    assert_eq!(dx, xd);

    // normal form is computed term by term while multiplying
    let op = parse_operator("(x1*d1)^2", Some(1)).unwrap();
    println!("(x1*d1)^2  = {op}");

    // an operator fixing f^s for f = x1*x2*x3*x4-ish weights
    let symmetric = parse_operator("-1/2*x1*d1 - 1/2*x2*d2 + x3*d3 + x4*d4", None).unwrap();
    println!("weights    = {symmetric}");
    assert_eq!(symmetric.n(), 4);

    // anti-normal form of x^2 d^2 in one variable:
    // d^2 x^2 = x^2 d^2 + 4 x d + 2, so going the other way picks up signs
    let word = WeylOperator::from_word(1, &[Gen::X(0), Gen::X(0), Gen::D(0), Gen::D(0)]);
    println!("x^2 d^2 anti-normal terms:");
    for ((delta, gamma, s), c) in word.anti_normal_form() {
        println!("  d^{:?} x^{:?} s^{s}: {c}", delta.0, gamma.0);
    }

    // s is central and just carried along
    let with_s = parse_operator("s*d1*x1 - s", Some(1)).unwrap();
    println!("s*d1*x1 - s = {with_s}");
    assert_eq!(with_s, parse_operator("x1*d1*s", Some(1)).unwrap());
}
