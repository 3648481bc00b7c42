//! Exterior calculus on polynomial forms: d, wedge, and the Euler
//! contraction h, which is a homotopy between multiplication by f and zero
//! on the top of the de Rham complex.

use bsato::forms::{omega0, DifferentialForm};
use bsato::parse::parse_polynomial;
use bsato::rat::ratio;

fn main() {
    // f = x1^2*x2 + x2^3, homogeneous of degree 3 in 2 variables
    let f = parse_polynomial("x1^2*x2 + x2^3", Some(2)).unwrap();
    let d = 3;

    let f0 = DifferentialForm::from_poly(f.clone());
    let df = f0.exterior_d();
    println!("df has {} components", df.components().count());

    // h(df) = f: contraction against the rescaled Euler field recovers f
    let h_df = df.euler_contraction(d);
    assert_eq!(h_df, f0, "h(df) = f for homogeneous f of degree d");
    println!("h(df) = f holds");

    // homotopy identity h(df ^ w) + df ^ h(w) = f w on a sample 1-form
    let mut omega = DifferentialForm::zero(2, 1);
    omega.add_component(&[0], parse_polynomial("x2^2", Some(2)).unwrap());
    omega.add_component(&[1], parse_polynomial("x1*x2", Some(2)).unwrap());
    let lhs = &df.wedge(&omega).euler_contraction(d) + &df.wedge(&omega.euler_contraction(d));
    assert_eq!(lhs, omega.mul_poly(&f), "homotopy identity");
    println!("h(df ^ w) + df ^ h(w) = f w holds");

    // omega0 = h(dx) satisfies df ^ omega0 = f dx and d(omega0) = (n/d) dx
    let w0 = omega0(2, d);
    let vol = DifferentialForm::volume(2);
    assert_eq!(df.wedge(&w0), vol.mul_poly(&f), "df ^ omega0 = f dx");
    assert_eq!(
        w0.exterior_d(),
        vol.scale(&ratio(2, 3)),
        "d omega0 = (n/d) dx"
    );
    println!("df ^ omega0 = f dx and d omega0 = (n/d) dx hold");

    // contraction squares to zero
    let hh = df.wedge(&omega).euler_contraction(d).euler_contraction(d);
    assert!(hh.is_zero(), "h of h vanishes");
    println!("h(h(w)) = 0 holds");

    // d^2 = 0 on the sample form
    assert!(omega.exterior_d().exterior_d().is_zero());
    println!("d(d(w)) = 0 holds");
}
