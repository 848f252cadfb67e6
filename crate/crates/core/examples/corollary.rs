//! Checking the relations between the earlier (a)-(h) families and the final
//! list: exact duality and triviality over Q, conjugacy via orbits over F_3.

use sweedler_rb::classify::verify::{default_weights, verify_corollary, verify_families};
use sweedler_rb::field::Scalar;

fn main() -> sweedler_rb::Result<()> {
    let report = verify_corollary(&Scalar::rational(1, 1), 40, 0, 3)?;
    for item in &report.items {
        println!(
            "({:>3}) {:<36} {:<4} checked {:>3}  skipped {:>3}  witnesses {:>3}",
            item.item,
            item.claim,
            if item.pass { "ok" } else { "FAIL" },
            item.checked,
            item.skipped,
            item.witnesses.len()
        );
        if let Some(c) = item.counterexamples.first() {
            println!(
                "       e.g. params ({}) lands in {:?}: trace {} vs {}, kernels {:?} vs {:?}",
                c.params.join(", "),
                c.lands_in,
                c.source.trace,
                c.target.trace,
                c.source.kernel_pair,
                c.target.kernel_pair
            );
        }
    }
    println!("all items pass: {}", report.pass);

    let families = verify_families(&default_weights(), 10, 0)?;
    let conditional: Vec<String> = families
        .families
        .iter()
        .filter(|f| f.status.starts_with("conditional"))
        .map(|f| format!("{} ({})", f.id, f.status))
        .collect();
    println!("\nfamily validity at λ ∈ {{{}}}: {}", families.weights.join(", "), families.pass);
    println!("conditional families: {}", conditional.join("; "));
    Ok(())
}
