//! Partitioning the F_3 operators into orbits and matching them against the
//! final list of families.

use sweedler_rb::classify::packed::unpack;
use sweedler_rb::classify::{classify, enumerate_packed, partition_orbits, OrbitContext, Strategy};

fn main() -> sweedler_rb::Result<()> {
    let ctx = OrbitContext::new(3, 1)?;
    let ops = enumerate_packed(ctx.fp, 1, Strategy::Backtracking, 1)?;
    let orbits = partition_orbits(&ctx, &ops);
    println!("{} operators, {} orbits under {} maps and dualization\n", ops.len(), orbits.len(), ctx.maps.len());

    let report = classify(&ctx, &ops)?;
    println!("{:>3}  {:>4}  {:>5}  {:<45} families", "#", "size", "ker", "canonical form");
    for (i, (o, entry)) in orbits.iter().zip(&report.orbits).enumerate() {
        let canon = unpack(ctx.fp, &o.canonical).to_string();
        println!(
            "{i:>3}  {:>4}  {:>5}  {canon:<45} {}",
            entry.size,
            entry.kernel_dim,
            entry.matched_families.join(", ")
        );
    }

    println!("\nunmatched orbits: {}", report.unmatched.len());
    println!("collisions: {}", report.findings.collisions.len());
    println!("complete: {}", report.complete());

    if let Some(w) = report.orbits.iter().filter_map(|o| o.witness.as_ref()).nth(3) {
        println!(
            "\nexample witness: {}({}) via {} (dual = {})",
            w.family,
            w.params.join(", "),
            serde_json::to_string(&w.map).expect("serializes"),
            w.dual
        );
    }
    Ok(())
}
