//! Multiplicatively closed subspaces of H4 over F_p, their classes up to
//! (anti)automorphism, and the shapes they take.

use sweedler_rb::autgroup::enumerate_maps;
use sweedler_rb::field::Field;
use sweedler_rb::linops::Subspace;
use sweedler_rb::subalg::{census, classify_subalgebra, find_witness, is_subalgebra, SubalgebraClass};

fn main() -> sweedler_rb::Result<()> {
    for p in [3, 5] {
        for d in [2, 3] {
            let c = census(p, d)?;
            println!("F_{p}, dim {d}: {} subalgebras, passes: {}", c.count, c.passes());
            for (label, n) in &c.by_class {
                println!("    {label:<22} {n}");
            }
        }
    }

    let f5 = Field::prime(5)?;
    let s = Subspace::span_ints(f5, 4, &[&[1, 0, 0, 0], &[0, 0, 1, 1]]);
    println!("\n{s}: subalgebra = {}", is_subalgebra(&s));
    let class = classify_subalgebra(&s)?;
    println!("class {class}, representative {}", class.representative(f5));
    if let Some(phi) = find_witness(&s, &enumerate_maps(5, true)?)? {
        println!("mapped from the representative by {} (anti = {})", phi.op, phi.anti);
    }

    let not_closed = Subspace::span_ints(f5, 4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
    println!("\n{not_closed}: subalgebra = {}", is_subalgebra(&not_closed));
    println!("\nall classes: {:?}", SubalgebraClass::ALL.map(|c| c.label()));
    Ok(())
}
