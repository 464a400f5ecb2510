//! Run the lemma checkers at small parameters, the same machinery behind
//! `monotest verify`.
//!
//! ```bash
//! cargo run -p monotest --example verify_lemmas
//! ```

use monotest::instances::{MuParams, ScaledParams};
use monotest::stream::stream;
use monotest::verify::{
    check_claim_bad, check_claim_good, check_cut_lemma, check_goodalpha, check_nonmonotone,
    cut_indices_of_points, cut_tightness_points, random_good_assignment, LemmaCheckResult,
};

fn show(result: &LemmaCheckResult) {
    let status = serde_json::to_value(&result.outcome).unwrap();
    println!("  {:<12} {}", result.lemma.to_string(), status);
}

fn main() -> monotest::Result<()> {
    println!("cut bound, exhaustive over point sets of [2^4]:");
    for weight in 1..=4 {
        show(&check_cut_lemma(4, weight, 0, 0));
    }
    println!("cut bound, 2000 random size-8 sets of [2^16]:");
    show(&check_cut_lemma(16, 8, 2000, 1));

    println!("\nthe bound is tight: nested chains cut exactly t-1 levels:");
    for t in 1..=4 {
        let points = cut_tightness_points(4, t)?;
        let report = cut_indices_of_points(&points, 4);
        println!("  t={t}: points {points:?} cut {:?}", report.cut);
    }

    let params = MuParams::new(3, 5)?;
    println!("\nagreement equality on random good assignments (k=3, m=5):");
    let mut rng = stream(5, 0);
    let mut shown = 0;
    while shown < 4 {
        let alpha = random_good_assignment(&params, 2, &mut rng)?;
        let cut = monotest::verify::cut_indices(&alpha, params.k()).cut;
        let Some(j) = (0..params.k()).find(|j| !cut.contains(j)) else { continue };
        show(&check_goodalpha(&params, &alpha, j)?);
        shown += 1;
    }

    println!("\nmixture inequality on random good singletons (k=4, m=5):");
    let params = MuParams::new(4, 5)?;
    for _ in 0..4 {
        let alpha = random_good_assignment(&params, 1, &mut rng)?;
        show(&check_claim_good(&params, &alpha)?);
    }

    println!("\nbad-value search bound (k=6, m=64, q=3, 5000 trials):");
    show(&check_claim_bad(&MuParams::new(6, 64)?, 3, 5000, 2)?);

    println!("\nfarness of the flip mixture (ell=2, k=5, m=5, 100 draws):");
    show(&check_nonmonotone(&ScaledParams::new(2, MuParams::new(5, 5)?)?, 100, 3)?);
    Ok(())
}
