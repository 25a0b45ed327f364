//! Prints one line per acceptance criterion and fails if any gating line
//! fails. The genus-two census runs as a non-gating extra.

use ribbonlab::verify::{
    Verifier, VerifyOptions, CHART_SAMPLES, CHART_TOLERANCE, ELLIPTIC_SAMPLES, ELLIPTIC_TOLERANCE, ROUNDTRIP_TRIPLES,
    ZERO_TOLERANCE,
};

fn main() {
    println!(
        "tolerances: Strebel zeros {ZERO_TOLERANCE:.0e}, charts {CHART_TOLERANCE:.0e} over {CHART_SAMPLES} samples, \
         elliptic {ELLIPTIC_TOLERANCE:.0e} over {ELLIPTIC_SAMPLES} samples, {ROUNDTRIP_TRIPLES} Strebel roundtrips; \
         all rational checks exact"
    );
    let mut verifier = Verifier::new(VerifyOptions {
        jobs: 0,
        include_stretch: true,
    });
    let results = verifier.run_all();
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<usize> = results.iter().filter(|r| r.gating && !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: all 9 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
