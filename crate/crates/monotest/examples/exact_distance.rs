//! Exact distance oracles: longest non-decreasing subsequence on the line,
//! minimum vertex cover of the violation graph on small posets, and the
//! greedy disjoint-pair certificate.
//!
//! ```bash
//! cargo run -p monotest --example exact_distance
//! ```

use monotest::distance::{
    distance_to_monotone_line, distance_to_monotone_poset, lnds_length, violating_pairs,
};
use monotest::function::{LineFunction, PosetOrder};
use monotest::testers::{find_disjoint_violating_pairs, max_disjoint_violating_pairs, Eps};

fn main() -> monotest::Result<()> {
    let f = LineFunction::from_ints(&[2, 7, 1, 8, 2, 8, 1, 8]);
    let n = f.n();
    let lnds = lnds_length(&f);
    let dist = distance_to_monotone_line(&f);
    println!("f = {:?}", f.values().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("longest non-decreasing subsequence: {lnds}");
    println!("distance to monotone: n - LNDS = {n} - {lnds} = {dist}");

    // The poset oracle agrees with the line oracle on Line(n).
    let poset = distance_to_monotone_poset(&f, &PosetOrder::line(n))?;
    println!("poset oracle on the same line order: {poset}");
    assert_eq!(poset, dist);

    // All violating pairs, and a maximal disjoint subset of them.
    let pairs = violating_pairs(&f, &PosetOrder::line(n))?;
    println!("violating pairs: {}", pairs.len());
    let disjoint = max_disjoint_violating_pairs(&f);
    println!(
        "maximal greedy disjoint pairs: {:?} (so distance is between {} and {})",
        disjoint.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>(),
        disjoint.len(),
        2 * disjoint.len()
    );

    // With the exact farness eps = distance/n, the neighbor-removal
    // procedure guarantees floor(eps*n/2) pairs with gap at most eps*n.
    let eps = Eps::new(dist, n)?;
    let certified = find_disjoint_violating_pairs(&f, &eps)?;
    println!(
        "certificate at eps={eps}: {} pairs, every gap <= {}",
        certified.len(),
        eps.floor_eps_n(n)
    );

    // Distance is invariant (relatively) under domain inflation.
    let doubled: Vec<u64> =
        (0..2 * n).map(|x| f.value(x / 2).as_u64().unwrap()).collect();
    let g = LineFunction::from_ints(&doubled);
    println!(
        "inflating the domain x2: distance {} on n={} (same ratio {}/{})",
        distance_to_monotone_line(&g),
        g.n(),
        dist,
        n
    );
    Ok(())
}
