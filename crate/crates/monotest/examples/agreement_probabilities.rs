//! Exact rational agreement probabilities, cross-checked against full
//! support enumeration, and the equality that makes the hard instances
//! hard: a good assignment that does not cut level j agrees with the base
//! family and its level-j flip with exactly the same probability.
//!
//! ```bash
//! cargo run -p monotest --example agreement_probabilities
//! ```

use monotest::function::{agrees, PartialAssignment};
use monotest::instances::{DistributionId, MuParams, ScaledParams};
use monotest::probability::{agreement_probability, enumerate_distribution};
use monotest::value::RankValue;
use monotest::verify::cut_indices;
use num_rational::BigRational;

fn main() -> monotest::Result<()> {
    let params = MuParams::new(2, 4)?;
    let scaled = ScaledParams::line(params);

    // Pinning one point pins one seed digit per level.
    let v = RankValue::from_digits(4, vec![1, 2])?;
    let alpha = PartialAssignment::new([(0, v)])?;
    let p = agreement_probability(&alpha, DistributionId::Mu, &scaled)?;
    println!("P[draw agrees with {{0 -> digits(1,2)}}] = {p} (two pinned digits, (1/3)^2)");

    // A value with a boundary digit can never be produced.
    let impossible = PartialAssignment::new([(0, RankValue::from_digits(4, vec![3, 2])?)])?;
    let p0 = agreement_probability(&impossible, DistributionId::Mu, &scaled)?;
    println!("P[draw agrees with {{0 -> digits(3,2)}}] = {p0} (digit 3 needs a seed digit of 3)");

    // The analytic probabilities match exhaustive enumeration exactly.
    let support = enumerate_distribution(DistributionId::Mu, &scaled)?;
    let enumerated: BigRational = support
        .iter()
        .filter(|(f, _)| agrees(f, &alpha).unwrap())
        .map(|(_, w)| w.clone())
        .sum();
    println!(
        "enumeration over {} seeds gives the same weight: {enumerated}",
        support.len()
    );
    assert_eq!(p, enumerated);

    // The agreement equality: good values, uncut level.
    let params = MuParams::new(3, 5)?;
    let scaled = ScaledParams::line(params);
    let good = PartialAssignment::new([
        (1, RankValue::from_digits(5, vec![1, 2, 3])?),
        (3, RankValue::from_digits(5, vec![1, 3, 2])?),
    ])?;
    let cut = cut_indices(&good, params.k()).cut;
    println!("\nassignment on points {{1, 3}} cuts levels {cut:?}");
    for j in 0..params.k() {
        let p_mu = agreement_probability(&good, DistributionId::Mu, &scaled)?;
        let p_nu = agreement_probability(&good, DistributionId::NuJ(j), &scaled)?;
        let marker = if cut.contains(&j) { "(cut)  " } else { "(uncut)" };
        let relation = if p_mu == p_nu { "=" } else { "!=" };
        println!("  level {j} {marker}: P_mu = {p_mu} {relation} P_nu_j = {p_nu}");
    }
    Ok(())
}
