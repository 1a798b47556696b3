//! Consistency verdicts and circuit certificates for finite samples.
//!
//! cargo run --example circuits

use lip::exactpoly::Sample;
use lip::lipcore::{exchange_identity_check, find_circuit, lip_check, validate_circuit, LipVerdict};
use lip::numeric::int;

fn show(s: &Sample) -> lip::Result<()> {
    match lip_check(s) {
        LipVerdict::Consistent { witness } => println!("{s}\n  consistent, witness {witness}"),
        LipVerdict::Inconsistent { circuit } => {
            println!(
                "{s}\n  inconsistent, circuit {:?} with leading coefficient {} (d = {})",
                circuit.elements.iter().map(ToString::to_string).collect::<Vec<_>>(),
                circuit.leading_coeff,
                circuit.denominator
            );
            assert!(validate_circuit(&circuit, s)?);
        }
    }
    Ok(())
}

fn main() -> lip::Result<()> {
    show(&Sample::from_pairs(&[(-2, 2), (0, 0), (2, 2)])?)?;
    show(&Sample::from_pairs(&[(0, 0), (2, 1)])?)?;
    show(&Sample::from_pairs(&[(0, 0), (1, 1), (2, 3), (3, 6)])?)?;
    show(&Sample::from_pairs(&[(-3, 9), (0, 0), (1, 1), (4, 16)])?)?;

    let s = Sample::from_pairs(&[(0, 5), (1, -2), (3, 4), (7, 11)])?;
    let c = find_circuit(&s)?;
    println!("circuit of {s}: {:?}", c.elements.iter().map(ToString::to_string).collect::<Vec<_>>());
    let ok = exchange_identity_check(&s, &[int(0), int(1)], &int(3), &int(7))?;
    println!("exchange identity on X = {{0, 1}}, a = 3, b = 7: {ok}");
    Ok(())
}
