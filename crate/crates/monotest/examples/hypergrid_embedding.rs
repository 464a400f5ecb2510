//! View line functions on the hypergrid by regrouping argument bits, and
//! watch monotonicity and farness survive the trip.
//!
//! ```bash
//! cargo run -p monotest --example hypergrid_embedding
//! ```

use monotest::distance::{
    disjoint_violating_pairs_greedy, distance_to_monotone_poset, violating_pairs,
};
use monotest::instances::{grid_order, grid_point, sample, DistributionId, MuParams, ScaledParams};
use monotest::stream::stream;

fn main() -> monotest::Result<()> {
    // The bijection splits the binary representation into d groups of b bits.
    println!("grid_point of x = 0b110100 with d=3, b=2: {:?}", grid_point(0b110100, 3, 2)?);

    // ell = 2^a blocks of size 2^k regroup onto [2^b]^d when a + k = d*b.
    let (a, k, d, b) = (2u64, 6u32, 2u32, 4u32);
    let scaled = ScaledParams::new(1 << a, MuParams::new(k, 5)?)?;
    let order = grid_order(d, b)?;
    let n = scaled.domain_size();
    println!(
        "\nscaled family with ell={}, k={k} on [2^{b}]^{d} (n = {n}, eps*n = {})",
        scaled.ell(),
        scaled.eps_n()
    );

    for trial in 0..3 {
        let f = sample(DistributionId::MuTilde, &scaled, &mut stream(100, trial))?;
        let grid_violations = violating_pairs(&f, &order)?.len();
        println!("  monotone draw {trial}: {grid_violations} violating pairs on the grid");
    }

    for trial in 0..3 {
        let g = sample(DistributionId::NuTilde, &scaled, &mut stream(101, trial))?;
        let violations = violating_pairs(&g, &order)?.len();
        let disjoint = disjoint_violating_pairs_greedy(&g, &order)?.len();
        let exact = distance_to_monotone_poset(&g, &order)?;
        println!(
            "  far draw {trial}: {violations} violating pairs, {disjoint} disjoint, \
             exact poset distance {exact} (needs >= {})",
            scaled.eps_n()
        );
    }

    // Flipping one bit of the index moves the point up one grid axis, which
    // is why the single-bit violating pairs stay comparable after regrouping.
    let x = 0b010100u64;
    let bit = 3;
    let y = x | (1 << bit);
    println!(
        "\nsingle-bit pair on the line: {x} < {y}; on the grid: {:?} <= {:?}",
        grid_point(x, d, b)?,
        grid_point(y, d, b)?
    );
    Ok(())
}
