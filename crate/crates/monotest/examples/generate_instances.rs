//! Sample from every hard-instance distribution and inspect the draws.
//!
//! ```bash
//! cargo run -p monotest --example generate_instances
//! ```

use monotest::distance::distance_to_monotone_line;
use monotest::instances::{sample, DistributionId, MuParams, ScaledParams};
use monotest::stream::stream;

fn main() -> monotest::Result<()> {
    // The base family lives on [2^k] with range [m^k].
    let params = MuParams::new(4, 7)?;
    let line = ScaledParams::line(params);

    println!("base family: k=4, m=7, n={}, r={}", line.domain_size(), line.range_bound());
    for (label, id) in [
        ("mu       (monotone)", DistributionId::Mu),
        ("nu-j:1   (level-1 flip)", DistributionId::NuJ(1)),
        ("nu       (uniform flip mixture)", DistributionId::Nu),
    ] {
        let f = sample(id, &line, &mut stream(7, 0))?;
        let values: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
        println!(
            "  {label}: distance={:<3} values={}",
            distance_to_monotone_line(&f),
            values.join(",")
        );
    }

    // The scaled variants concatenate ell independent blocks; one flipped
    // block makes the draw eps-far for eps = 1/(2*ell).
    let scaled = ScaledParams::new(4, MuParams::new(5, 9)?)?;
    println!(
        "\nscaled family: ell=4, k=5, m=9, n={}, eps=1/{}, eps*n={}",
        scaled.domain_size(),
        2 * scaled.ell(),
        scaled.eps_n()
    );
    for (label, id) in [
        ("mu-tilde (monotone)", DistributionId::MuTilde),
        ("nu-tilde (one flipped block)", DistributionId::NuTilde),
    ] {
        for trial in 0..3 {
            let f = sample(id, &scaled, &mut stream(11, trial))?;
            println!(
                "  {label} draw {trial}: distance={} (need >= {} when far)",
                distance_to_monotone_line(&f),
                scaled.eps_n()
            );
        }
    }

    // Draws serialize in the plain text function file format.
    let f = sample(DistributionId::Mu, &ScaledParams::line(MuParams::new(2, 5)?), &mut stream(1, 0))?;
    println!("\nfunction file format for a tiny draw:\n{}", f.to_file_string());
    Ok(())
}
