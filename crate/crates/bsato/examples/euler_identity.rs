//! For homogeneous f of degree d in n variables the identity
//! s f^s = -(n/d) f^s + (1/d) sum_i d_i (x_i f^s) holds exactly, which
//! exhibits -n/d as a root of any b-function whose pair fixes f^s.

use bsato::fs::euler_root_witness;
use bsato::parse::parse_polynomial;
use bsato::rat::ratio;
use bsato::report::EulerWitnessReport;
use bsato::Error;

fn main() {
    for text in [
        "x1^2*x2 + x2^3",
        "x1*x2*x3 + x1^2*x4 + x2^2*x4",
        "x1^5",
        "x1*x2*x3*x4",
    ] {
        let f = parse_polynomial(text, None).unwrap();
        let w = euler_root_witness(&f).unwrap();
        println!("f = {text}");
        print!("{}", EulerWitnessReport::new(&w).to_text());
        assert!(w.verified);
        assert_eq!(w.root, ratio(-(w.n as i64), i64::from(w.d)));
        println!();
    }

    // inhomogeneous input is rejected, not silently mangled
    let bad = parse_polynomial("x1^2 + x2", None).unwrap();
    assert_eq!(euler_root_witness(&bad).unwrap_err(), Error::NotHomogeneous);
    println!("inhomogeneous input rejected with NotHomogeneous");
}
