//! Growth bounds: the d!/2^d floor, the factorial threshold and the tau
//! construction.
//!
//! cargo run --example growth

use lip::cli::report_growth;
use lip::exactpoly::IntPolynomial;
use lip::lipcore::{catalog_eval, growth_floor_check, tau_sequence, CatalogEntry, FunctionSpec};
use lip::numeric::{int, Integer};
use num_traits::Pow;

fn main() -> lip::Result<()> {
    let p = IntPolynomial::from_i64s(&[0, -3, 0, 1]);
    let g = growth_floor_check(&p)?;
    println!("{p}: max |p(x)| on 0..3 is {} at x = {}, floor {}", g.value, g.x, g.floor);

    let table = report_growth(&FunctionSpec::example1(), &int(-6), &int(6), 10_000)?;
    println!("alternating factorial series on [-6, 6]:");
    for row in &table.rows {
        println!(
            "  {:>3}  {:>12}  above threshold: {}",
            row.x,
            row.value,
            row.exceeds_threshold.map_or("n/a".into(), |b| b.to_string())
        );
    }

    let c = tau_sequence(|n| n.clone(), 3, 10_000)?;
    println!("c-sequence for tau(n) = n: {c:?}");
    let f = FunctionSpec::Catalog(CatalogEntry::tau(c.clone())?);
    for ck in &c[1..] {
        let x: Integer = ck - 1;
        let v = catalog_eval(&f, &x)?;
        let cap: Integer = Pow::pow(x.clone(), u32::try_from(&x).unwrap());
        println!("  f({x}) has {} digits, {x}^{x} has {}", v.to_string().len(), cap.to_string().len());
    }
    Ok(())
}
