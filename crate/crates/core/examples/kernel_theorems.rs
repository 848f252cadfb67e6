//! Set equality between enumerated operators with a prescribed kernel (and
//! image) and the families listed for that header.

use sweedler_rb::classify::verify::verify_kernel_theorems;
use sweedler_rb::classify::{enumerate_packed, Fp, Strategy};

fn main() -> sweedler_rb::Result<()> {
    let fp = Fp::new(3)?;
    let ops = enumerate_packed(fp, 1, Strategy::Backtracking, 1)?;
    let report = verify_kernel_theorems(fp, 1, &ops)?;
    for g in &report.groups {
        println!(
            "{:<14} {:<30} enumerated {:>3}  instantiated {:>3}  missing {}  extra {}  {}",
            g.group,
            g.header,
            g.enumerated,
            g.instantiated,
            g.missing.len(),
            g.extra.len(),
            if g.pass { "ok" } else { "FAIL" }
        );
    }
    println!("\nall groups pass: {}", report.pass);
    Ok(())
}
