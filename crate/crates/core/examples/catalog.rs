//! The family catalog: instantiation over Q, reduction modulo a prime,
//! domains, and the maps linking related families.

use sweedler_rb::algebra::h4;
use sweedler_rb::autgroup::conjugate;
use sweedler_rb::catalog::{family, links, list_families, reduce_mod_p, registry, Scope};
use sweedler_rb::field::{Field, Scalar};
use sweedler_rb::rb::is_rb;

fn main() -> sweedler_rb::Result<()> {
    for scope in [Scope::Ma, Scope::Theorems, Scope::Final] {
        let ids: Vec<&str> = list_families(scope).iter().map(|f| f.id.as_str()).collect();
        println!("{scope}: {} families", ids.len());
    }
    println!("total: {}\n", registry().len());

    let lambda = Scalar::rational(2, 1);
    let f = family("final-1")?;
    let params = vec![Scalar::rational(2, 3); f.params.len()];
    let w = f.instantiate(&lambda, &params)?;
    println!("{} at λ = {lambda}, params = {:?}", f.id, f.params);
    println!("  R = {}", w.op);
    println!("  is_rb over Q: {}", is_rb(&h4(Field::Rational)?, &w)?);
    let r5 = reduce_mod_p(&w, 5)?;
    println!("  mod 5: {}  is_rb: {}", r5.op, is_rb(&h4(Field::prime(5)?)?, &r5)?);
    match reduce_mod_p(&w, 3) {
        Ok(r) => println!("  mod 3: {}", r.op),
        Err(e) => println!("  mod 3: {e}"),
    }

    for c in &f.domain {
        println!("  domain: {c}");
    }

    let h = family("ma-h")?;
    let alg = h4(Field::Rational)?;
    let one = Scalar::rational(1, 1);
    println!();
    for p1 in [0, 1] {
        let w = h.instantiate(&one, &[Scalar::rational(p1, 1), Scalar::rational(1, 3)])?;
        println!("ma-h with p1 = {p1}: is_rb = {}", is_rb(&alg, &w)?);
    }
    if let Some(printed) = family("ma-f")?.as_printed() {
        let w = printed.instantiate(&one, &[Scalar::rational(1, 1), Scalar::rational(2, 1)])?;
        println!("ma-f as printed at p1 ≠ p2: is_rb = {}", is_rb(&alg, &w)?);
    }

    println!();
    for l in links() {
        let from = family(&l.from)?;
        let params = vec![Scalar::rational(1, 1); from.params.len()];
        let Ok(w) = from.instantiate(&one, &params) else { continue };
        let phi = l.map(from, &one, &params)?;
        let image = conjugate(&w, &phi)?;
        println!("{} -> {}: conjugate is RB: {}", l.from, l.to, is_rb(&alg, &image)?);
    }
    Ok(())
}
