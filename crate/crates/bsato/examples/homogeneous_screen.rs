//! Euler-type relations f^s = sum c_i d_i (x_i f^s), bidegree-pure
//! coordinate splits, separability of a split, and the coordinate screen
//! that combines them over every variable bipartition.

use bsato::homog::{
    bidegree_split_check, coordinate_screen, euler_relation_find, separability_test, EulerOutcome,
};
use bsato::parse::parse_polynomial;
use bsato::rat::{ratio, Rat};
use bsato::report::ScreenJson;

fn fmt_rats(values: &[Rat]) -> String {
    let inner: Vec<String> = values.iter().map(Rat::to_string).collect();
    format!("({})", inner.join(", "))
}

fn main() {
    // three monomials in four variables
    let f = parse_polynomial("x1*x2*x3 + x1^2*x4 + x2^2*x4", None).unwrap();

    match euler_relation_find(&f).unwrap() {
        EulerOutcome::Found(rel) => {
            println!("relation coefficients: {}", fmt_rats(&rel.coefficients));
            // the hand-computed relation is in the solution set
            let known = [ratio(-1, 2), ratio(-1, 2), ratio(1, 1), ratio(1, 1)];
            assert!(bsato::homog::euler_relation_check(&f, &known).unwrap());
        }
        EulerOutcome::Infeasible { .. } => unreachable!("this f has a relation"),
    }

    // a bidegree-pure split: every monomial has S-degree exactly k
    let split = bidegree_split_check(&f, &[0, 1])
        .unwrap()
        .expect("split is pure");
    let (on, off) = split.coefficients.clone().expect("unbalanced split");
    println!(
        "split S = {{1,2}}: k = {}, coefficients ({on}, {off})",
        split.k
    );

    // the same polynomial does not factor through that split
    let sep = separability_test(&f, &[0, 1]).unwrap();
    assert!(!sep.separable);
    let minor = sep.witness.expect("inseparable comes with a witness");
    println!(
        "split S = {{1,2}} is not separable, witness 2x2 minor {}",
        minor.minor
    );

    // the screen over all bipartitions in one call
    let screen = coordinate_screen(&f, 20).unwrap();
    print!("{}", ScreenJson::new(&screen).to_text());
    println!();

    // a polynomial with no relation: the infeasibility certificate shows
    // the all-ones row inside the span of the exponent rows
    let g = parse_polynomial("x1*x2*x3 + x1^3", None).unwrap();
    match euler_relation_find(&g).unwrap() {
        EulerOutcome::Found(_) => unreachable!("exponent matrix forbids it"),
        EulerOutcome::Infeasible { certificate } => {
            println!(
                "no relation for x1*x2*x3 + x1^3, certificate {}",
                fmt_rats(&certificate)
            );
        }
    }

    // a genuinely separable split, recovered with its factors
    let h = parse_polynomial("x1*x3 + x1*x4 + x2*x3 + x2*x4", None).unwrap();
    let sep = separability_test(&h, &[0, 1]).unwrap();
    assert!(sep.separable);
    println!("(x1+x2)(x3+x4) separates over S = {{1,2}}");
}
