//! Residue-class normal forms of set expressions.
//!
//! cargo run --example set_algebra

use lip::numeric::int;
use lip::sets::{ap_intersect, density, kirch_basic_check, meets_infinitely, normalize, Progression, SetExpr};

fn main() -> lip::Result<()> {
    for text in ["ap(1,2) & ap(2,3)", "Z \\ {0, 1}", "apz(1,4) | apz(3,4)", "ap(1,4) & P", "N \\ ap(3,3)"] {
        let e: SetExpr = text.parse()?;
        let n = normalize(&e)?;
        let density = density(&n).map_or("n/a".to_string(), |d| d.to_string());
        println!("{text:<22} -> {n}  (density {density})");
    }

    let p = ap_intersect(&Progression::nonneg(int(1), int(2))?, &Progression::nonneg(int(2), int(3))?);
    println!("ap(1,2) ∩ ap(2,3) = {}", p.map_or("empty".into(), |p| p.to_string()));

    let primes = normalize(&"P".parse()?)?;
    for (a, d) in [(1, 4), (3, 4), (0, 4)] {
        let target = Progression::two_sided(int(a), int(d))?;
        println!("primes meet {target} infinitely: {:?}", meets_infinitely(&primes, &target));
    }

    for (a, d) in [(3, 10), (2, 10), (1, 12)] {
        println!("ap({a},{d}) is a Kirch basic open: {}", kirch_basic_check(&int(a), &int(d))?);
    }
    Ok(())
}
