//! Checking the Rota-Baxter identity, locating failing basis pairs, and the
//! dual operator.

use sweedler_rb::algebra::{h4, H4_BASIS};
use sweedler_rb::field::{Field, Scalar};
use sweedler_rb::linops::LinearOperator;
use sweedler_rb::rb::{failing_pairs, is_rb, rb_defect, WeightedOperator};

fn main() -> sweedler_rb::Result<()> {
    let alg = h4(Field::Rational)?;
    let lambda = Scalar::rational(1, 1);

    // R(1) = R(g) = -λ·1, R(x) = R(gx) = 0
    let op = LinearOperator::from_int_columns(Field::Rational, &[&[-1, 0, 0, 0], &[-1, 0, 0, 0], &[0; 4], &[0; 4]]);
    let r = WeightedOperator::new(op, lambda.clone())?;
    println!("R = {}", r.op);
    println!("is_rb(R) = {}", is_rb(&alg, &r)?);
    println!("dual R = {}", r.dual().op);
    println!("is_rb(dual R) = {}", is_rb(&alg, &r.dual())?);

    let bad = WeightedOperator::new(
        LinearOperator::from_int_columns(Field::Rational, &[&[0; 4], &[0; 4], &[1, 0, 0, 0], &[0; 4]]),
        lambda.clone(),
    )?;
    println!("\nS = {}", bad.op);
    for (i, j) in failing_pairs(&alg, &bad)? {
        let d = rb_defect(&alg, &bad, &alg.basis(i), &alg.basis(j))?;
        let coords: Vec<String> = d.coords().iter().map(|c| c.to_string()).collect();
        println!("  defect at ({}, {}) = ({})", H4_BASIS[i], H4_BASIS[j], coords.join(", "));
    }

    for t in [WeightedOperator::zero(&lambda, 4), WeightedOperator::minus_lambda_id(&lambda, 4)] {
        println!("trivial {} : is_rb = {}, is_trivial = {}", t.op, is_rb(&alg, &t)?, t.is_trivial());
    }
    Ok(())
}
