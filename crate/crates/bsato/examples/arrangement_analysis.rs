//! The arrangement pipeline end to end: dense edges, the nonresonance
//! condition, epsilon weights (perturbed when needed), the integer weights
//! mu, the residues, and the final root verdict.

use bsato::arrangement::{Arrangement, DEFAULT_BUDGET};
use bsato::rat::{rat, ratio, Rat};
use bsato::report::AnalysisReport;

fn forms(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| rat(v)).collect())
        .collect()
}

fn main() {
    // x y (x+y): three lines through the origin in the plane
    let braid = Arrangement::reduced(2, forms(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
    let analysis = braid.analyze(DEFAULT_BUDGET).unwrap();
    print!("{}", AnalysisReport::from(&analysis).to_text());
    let verdict = analysis.verdict;
    assert!(verdict.applies);
    assert_eq!(verdict.root, Some(ratio(-2, 3)));
    println!();

    // x y z (x+y+z): a near-pencil in three variables
    let near_pencil =
        Arrangement::reduced(3, forms(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])).unwrap();
    let analysis = near_pencil.analyze(DEFAULT_BUDGET).unwrap();
    print!("{}", AnalysisReport::from(&analysis).to_text());
    assert_eq!(analysis.verdict.root, Some(ratio(-3, 4)));
    println!();

    // multiplicities can break the nonresonance condition: the criterion
    // stays silent instead of claiming a root
    let weighted = Arrangement::new(
        3,
        forms(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1], &[1, 0, 1]]),
        vec![1, 1, 1, 3, 3],
    )
    .unwrap();
    let analysis = weighted.analyze(DEFAULT_BUDGET).unwrap();
    print!("{}", AnalysisReport::from(&analysis).to_text());
    assert!(!analysis.condition_r.pass);
    assert!(!analysis.verdict.applies);
    println!();

    // a decomposable arrangement is reported as such; epsilon and mu are
    // not defined for it
    let boolean = Arrangement::reduced(2, forms(&[&[1, 0], &[0, 1]])).unwrap();
    let analysis = boolean.analyze(DEFAULT_BUDGET).unwrap();
    print!("{}", AnalysisReport::from(&analysis).to_text());
    assert!(!analysis.indecomposable);
    assert!(analysis.epsilon.is_none());
}
