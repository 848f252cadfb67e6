//! Exact scalars over Q and F_p, reduction of rationals modulo a prime.

use sweedler_rb::field::{enumerate_field, parse_rational, Field, Scalar};

fn main() -> sweedler_rb::Result<()> {
    let a = Field::Rational.parse("-3/4")?;
    let b = Scalar::rational(5, 6);
    println!("over Q:   {a} + {b} = {}", a.try_add(&b)?);
    println!("          {a} * {b} = {}", a.try_mul(&b)?);
    println!("          1 / {a}  = {}", a.inv()?);

    let f7 = Field::prime(7)?;
    let x = f7.from_i64(3);
    println!("over F_7: 3^-1 = {}, 3^6 = {}", x.inv()?, x.pow(6));

    let q = parse_rational("-1/2")?;
    for p in [3, 5, 7] {
        println!("-1/2 mod {p} = {}", Field::prime(p)?.reduce(&q)?);
    }

    match Field::prime(3)?.reduce(&parse_rational("2/3")?) {
        Ok(v) => println!("2/3 mod 3 = {v}"),
        Err(e) => println!("2/3 mod 3: {e}"),
    }

    let elems: Vec<String> = enumerate_field(5)?.iter().map(|s| s.to_string()).collect();
    println!("F_5 = {{{}}}", elems.join(", "));

    if let Err(e) = Field::prime(9) {
        println!("F_9 rejected: {e}");
    }
    Ok(())
}
