//! Newton-series coordinates of a function along an enumeration.
//!
//! cargo run --example newton_series

use lip::lipcore::{catalog_eval, newton_decompose, Decomposition, Enumeration, FunctionSpec};

fn coordinates(name: &str, f: &FunctionSpec, e: &Enumeration) -> lip::Result<()> {
    let values = e.prefix().iter().map(|x| catalog_eval(f, x)).collect::<lip::Result<Vec<_>>>()?;
    match newton_decompose(e, &values)? {
        Decomposition::Integral { series } => {
            let c: Vec<String> = series.coeffs.iter().map(ToString::to_string).collect();
            println!("{name}: {}", c.join(", "));
        }
        Decomposition::NonIntegral { index, coefficient } => {
            println!("{name}: coefficient a_{index} = {coefficient} is not an integer");
        }
    }
    Ok(())
}

fn main() -> lip::Result<()> {
    let e = Enumeration::standard_integers(10);
    let order: Vec<String> = e.prefix().iter().map(ToString::to_string).collect();
    println!("enumeration: {}", order.join(", "));
    coordinates("alternating factorial series", &FunctionSpec::example1(), &e)?;
    coordinates("x(x+1)/2", &FunctionSpec::triangular(), &e)?;

    let square: FunctionSpec = serde_json::from_str(r#"{"kind":"poly","coeffs":["0","0","1"]}"#).unwrap();
    coordinates("x^2", &square, &e)?;
    coordinates("x^2 along 1, 2, 3, ...", &square, &Enumeration::naturals(6))?;
    Ok(())
}
