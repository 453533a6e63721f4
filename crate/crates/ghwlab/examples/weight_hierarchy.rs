//! Compute a full generalized Hamming weight hierarchy by four independent
//! routes and check the bound report.

use ghwlab::analysis::{analyze, render_table, AnalysisConfig, OutputFormat};
use ghwlab::codes::DMode;
use ghwlab::ghw::{Method, DEFAULT_WORK_CEILING};

fn main() -> ghwlab::Result<()> {
    let cfg = AnalysisConfig {
        p: 3,
        m: 3,
        d_mode: DMode::One,
        methods: Method::ALL.to_vec(),
        r_max: None,
        format: OutputFormat::Table,
        threads: 2,
        ceiling: DEFAULT_WORK_CEILING,
    };
    let analysis = analyze(&cfg)?;
    print!("{}", render_table(&analysis));

    assert!(analysis.methods_agree());
    println!(
        "hierarchy {:?}, r-MDS at ranks {:?}",
        analysis.ghw.hierarchy().unwrap(),
        analysis.bounds.mds_ranks
    );
    Ok(())
}
