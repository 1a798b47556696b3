//! Gluing functions defined on the pieces of a cover, and where it breaks.
//!
//! cargo run --example gluing

use lip::continuation::build_example3;
use lip::exactpoly::IntPolynomial;
use lip::gluing::{example3_family, glue_check, locally_lip_probe, GluingFamily, Piece};
use lip::lipcore::FunctionSpec;
use lip::numeric::int;

fn main() -> lip::Result<()> {
    let f = FunctionSpec::Poly(IntPolynomial::from_i64s(&[1, 0, 1]));
    let piece = |s: &str| -> lip::Result<Piece> { Ok(Piece { carrier: s.parse()?, function: f.clone() }) };
    let cover = GluingFamily::new(vec![piece("Z \\ {0}")?, piece("apz(0,2)")?], int(-30), int(30))?;
    let report = glue_check(&cover)?;
    println!(
        "cofinite cover: precondition ok = {}, union consistent = {}",
        report.precondition.is_ok(),
        report.verdict.as_ref().unwrap().is_consistent()
    );

    let s = build_example3(&int(12))?;
    let family = example3_family(&s, int(-12), int(12))?;
    let report = glue_check(&family)?;
    println!("2Z ∪ {{-1}} and 2Z ∪ {{1}}: precondition {:?}", report.precondition);
    println!("  pieces consistent: {:?}", report.pieces.unwrap().iter().map(|v| v.is_consistent()).collect::<Vec<_>>());
    println!("  union consistent: {}", report.verdict.unwrap().is_consistent());

    let probe = locally_lip_probe(&"N".parse()?, &FunctionSpec::triangular(), &int(5), (&int(1), &int(40)), 12)?;
    println!("probe for x(x+1)/2 around 5 in N: {probe:?}");
    let probe = locally_lip_probe(&"N".parse()?, &f, &int(5), (&int(1), &int(40)), 12)?;
    println!("probe for x^2+1 around 5 in N: {probe:?}");
    Ok(())
}
