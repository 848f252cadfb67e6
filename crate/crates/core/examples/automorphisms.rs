//! The (anti)automorphism group of H4 over F_p and its conjugation action on
//! RB operators.

use sweedler_rb::algebra::h4;
use sweedler_rb::autgroup::{brute_force_maps, conjugate, enumerate_maps, validate, AutoMap};
use sweedler_rb::field::Field;
use sweedler_rb::linops::LinearOperator;
use sweedler_rb::rb::{is_rb, WeightedOperator};

fn main() -> sweedler_rb::Result<()> {
    for p in [3, 5, 7] {
        let all = enumerate_maps(p, true)?;
        let anti = all.iter().filter(|m| m.anti).count();
        println!("F_{p}: {} automorphisms, {anti} antiautomorphisms", all.len() - anti);
    }

    let brute = brute_force_maps(3, false)?;
    println!("brute force over all 4x4 matrices on F_3: {} automorphisms", brute.len());

    let f3 = Field::prime(3)?;
    let psi = AutoMap::psi(f3);
    println!("\nψ = {} (anti = {}), valid: {}", psi.op, psi.anti, validate(&psi));
    let phi = AutoMap::from_params(-1, f3.from_i64(1), f3.from_i64(2), f3.from_i64(1), f3.from_i64(0), false)?;
    println!("φ = {}, valid: {}", phi.op, validate(&phi));
    let composed = phi.compose(&psi)?;
    println!("φ∘ψ anti = {}, valid: {}", composed.anti, validate(&composed));

    let alg = h4(f3)?;
    let r = WeightedOperator::new(
        LinearOperator::from_int_columns(f3, &[&[-1, 0, 0, 0], &[-1, 0, 0, 0], &[0; 4], &[0; 4]]),
        f3.one(),
    )?;
    let c = conjugate(&r, &phi)?;
    println!("\nR         = {}", r.op);
    println!("φ⁻¹ R φ   = {}", c.op);
    println!("still RB: {}", is_rb(&alg, &c)?);
    let back = conjugate(&c, &phi.inverse()?)?;
    println!("conjugating back recovers R: {}", back == r);
    Ok(())
}
