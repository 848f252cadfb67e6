//! Enumerating every RB operator of weight 1 over F_3 and F_5.

use std::time::Instant;

use sweedler_rb::classify::packed::unpack;
use sweedler_rb::classify::{enumerate_packed, enumerate_rb, Fp, Strategy};
use sweedler_rb::field::Scalar;

fn main() -> sweedler_rb::Result<()> {
    let f3 = Fp::new(3)?;
    let t = Instant::now();
    let backtracked = enumerate_packed(f3, 1, Strategy::Backtracking, 1)?;
    println!("F_3 backtracking: {} operators in {:.2?}", backtracked.len(), t.elapsed());

    let t = Instant::now();
    let exhaustive = enumerate_packed(f3, 1, Strategy::Exhaustive, 4)?;
    println!("F_3 exhaustive (3^16 candidates, 4 shards): {} operators in {:.2?}", exhaustive.len(), t.elapsed());
    println!("identical: {}", backtracked == exhaustive);

    let mut by_rank = [0usize; 5];
    for m in &exhaustive {
        by_rank[unpack(f3, m).rank()] += 1;
    }
    for (dim, n) in by_rank.iter().rev().enumerate() {
        println!("  dim ker = {dim}: {n}");
    }

    let t = Instant::now();
    let f5 = enumerate_rb(5, &Scalar::residue(1, 5), Strategy::Backtracking, 2)?;
    println!("F_5 backtracking: {} operators in {:.2?}", f5.len(), t.elapsed());

    if let Err(e) = enumerate_rb(5, &Scalar::residue(1, 5), Strategy::Exhaustive, 1) {
        println!("F_5 exhaustive refused: {e}");
    }
    Ok(())
}
