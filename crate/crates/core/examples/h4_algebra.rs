//! The Sweedler algebra from its structure constants: multiplication table,
//! presentation check, and a round trip through JSON.

use sweedler_rb::algebra::{h4, Element, StructureAlgebra, H4_BASIS};
use sweedler_rb::field::Field;

fn show(e: &Element) -> String {
    let terms: Vec<String> = e
        .coords()
        .iter()
        .zip(H4_BASIS)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, name)| match c.to_string().as_str() {
            "1" => name.to_string(),
            "-1" => format!("-{name}"),
            c => format!("{c}·{name}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() -> sweedler_rb::Result<()> {
    let alg = h4(Field::Rational)?;

    println!("{:>4} |{}", "", H4_BASIS.iter().map(|b| format!("{b:>8}")).collect::<String>());
    println!("{}", "-".repeat(38));
    for i in 0..4 {
        let row: String =
            (0..4).map(|j| format!("{:>8}", show(&alg.multiply(&alg.basis(i), &alg.basis(j)).unwrap()))).collect();
        println!("{:>4} |{row}", H4_BASIS[i]);
    }

    let u = alg.element(&[1, 2, 0, -1]);
    let v = alg.element(&[0, 1, 3, 1]);
    println!("\n({}) * ({}) = {}", show(&u), show(&v), show(&alg.multiply(&u, &v)?));

    let violations = alg.verify_presentation();
    println!("associativity and unit violations: {}", violations.len());

    let json = serde_json::to_string(&alg.to_json()).expect("serializes");
    let back = StructureAlgebra::from_json(Field::prime(5)?, &serde_json::from_str(&json).expect("parses"))?;
    let x = back.basis(2);
    println!("over F_5 after JSON round trip: x * x = {}", show(&back.multiply(&x, &x)?));
    Ok(())
}
