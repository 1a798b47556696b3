//! Exact interpolation and the integrality test.
//!
//! cargo run --example interpolation

use lip::exactpoly::{interpolate, is_integer, Sample};
use lip::numeric::int;

fn main() -> lip::Result<()> {
    let s = Sample::from_pairs(&[(-1, 0), (0, 0), (1, 1)])?;
    let p = interpolate(&s);
    println!("interpolant through {s}: {p}");
    println!("integer coefficients? {}", is_integer(&p).is_some());

    // the same polynomial still takes integer values everywhere
    let values: Vec<String> = (-3..=3).map(|x| p.eval(&int(x)).to_string()).collect();
    println!("values on -3..3: {}", values.join(", "));

    let s = Sample::from_pairs(&[(0, 1), (1, 3), (2, 7), (5, 31)])?;
    let p = interpolate(&s);
    println!("interpolant through {s}: {p} (integral: {})", p.is_integer());
    Ok(())
}
