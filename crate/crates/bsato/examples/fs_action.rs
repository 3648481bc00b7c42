//! The D[s]-module generated by the formal symbol f^s.  Elements are
//! (N/f^m) f^s with N a polynomial in x and s; derivatives follow the
//! twisted chain rule d_i f^s = s (d_i f) f^{s-1}.

use bsato::fs::FsElement;
use bsato::parse::{parse_operator, parse_polynomial};

fn main() {
    let f = parse_polynomial("x1*x2", Some(2)).unwrap();
    let fs = FsElement::fs(f.clone());
    println!("start:        {fs}");

    // one derivative
    let d1 = fs.apply_partial(0);
    println!("d1 . f^s    = {d1}");

    // the mixed second derivative collapses to s^2 f^{s-1}
    let d1d2 = fs.apply_partial(1).apply_partial(0);
    println!("d1 d2 . f^s = {d1d2}");

    // x1 d1 acts as s on f^s = (x1 x2)^s
    let op = parse_operator("x1*d1", Some(2)).unwrap();
    assert_eq!(fs.apply(&op), fs.mul_s());
    println!("x1 d1 . f^s = s f^s, so x1*d1 - s annihilates f^s");

    let ann = parse_operator("x1*d1 - s", Some(2)).unwrap();
    assert!(fs.apply(&ann).is_zero());

    // the t-shift substitutes s -> s+1 and multiplies by f
    let shifted = fs.t_shift();
    println!("t . f^s     = {shifted}");

    // shifting then applying P equals applying the shifted claim directly:
    // here d1 . f^{s+1} = (s+1) x2 f^s
    let lhs = fs.t_shift().apply(&parse_operator("d1", Some(2)).unwrap());
    println!("d1 . f^{{s+1}} = {lhs}");
    assert_eq!(
        lhs.fpow(),
        0,
        "no denominator after one derivative of f^{{s+1}}"
    );
}
