//! Drive the three testers by hand: the log-scheme tester, the
//! binary-search spot checker, and the exhaustive scan.
//!
//! ```bash
//! cargo run -p monotest --example run_testers
//! ```

use monotest::instances::{sample, DistributionId, MuParams, ScaledParams};
use monotest::stream::stream;
use monotest::testers::{
    improved_query_budget, run_tester, Eps, QueryOracle, TesterConfig, TesterId, Verdict,
};

fn main() -> monotest::Result<()> {
    let params = ScaledParams::line(MuParams::new(10, 5)?);
    let eps = Eps::new(1, 2)?;
    let n = params.domain_size();
    println!(
        "n = {n}, eps = {eps}: worst-case budget of the log-scheme tester is {} queries",
        improved_query_budget(&eps, 6, n)
    );

    let monotone = sample(DistributionId::Mu, &params, &mut stream(42, 0))?;
    let far = sample(DistributionId::Nu, &params, &mut stream(42, 1))?;

    for (label, f) in [("monotone draw", &monotone), ("1/2-far draw", &far)] {
        println!("\n{label}:");
        for id in [TesterId::Improved, TesterId::Ergun, TesterId::Exhaustive] {
            let config = TesterConfig::new(eps, 7);
            let report = run_tester(id, QueryOracle::new(f), &config)?;
            let verdict = match report.verdict {
                Verdict::Accept => "accept".to_string(),
                Verdict::Reject => {
                    let w = report.witness.expect("rejects carry witnesses");
                    format!("reject with witness ({}, {})", w.x, w.y)
                }
            };
            println!("  {:<11} {verdict:<32} {:>5} queries", id.to_string(), report.queries);
        }
    }

    // Rejection is probabilistic; repeat the 1-sided tester to see the rate.
    let trials = 200;
    let mut rejects = 0;
    for trial in 0..trials {
        let f = sample(DistributionId::Nu, &params, &mut stream(43, trial))?;
        let config = TesterConfig::new(eps, trial);
        if run_tester(TesterId::Improved, QueryOracle::new(&f), &config)?.verdict
            == Verdict::Reject
        {
            rejects += 1;
        }
    }
    println!("\nlog-scheme tester on {trials} fresh far draws: {rejects} rejections");
    Ok(())
}
