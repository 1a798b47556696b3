//! Extending a function past two incompatible branches, and the sample that
//! is consistent after deleting either branch point but not before.
//!
//! cargo run --example continuation

use lip::continuation::{admissible_extension, branch_coefficients, build_example3, BranchSetup};
use lip::exactpoly::Sample;
use lip::lipcore::lip_check;
use lip::numeric::int;

fn main() -> lip::Result<()> {
    let setup = BranchSetup::new(Sample::from_pairs(&[(0, 0)])?, int(-1), int(1), int(0), int(1))?;
    let (alpha, beta) = branch_coefficients(&setup)?;
    println!("branches differ: alpha = {alpha}, beta = {beta}");
    for x in [2, -2, 3, 4] {
        match admissible_extension(&setup, &int(x)) {
            Ok(class) => println!("x = {x}: admissible values {class}, smallest {}", class.min_abs()),
            Err(e) => println!("x = {x}: {e}"),
        }
    }

    let s = build_example3(&int(8))?;
    println!("window sample: {s}");
    for drop in [-1, 1] {
        let v = lip_check(&s.without(&int(drop)).unwrap());
        println!("  without {drop}: consistent = {}", v.is_consistent());
    }
    let v = lip_check(&s);
    let c = v.circuit().expect("the full sample is inconsistent");
    println!("  full sample: circuit {:?}", c.elements.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(())
}
