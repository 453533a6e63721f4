//! Construct trace-defined codes in both exponent modes and read off
//! length, dimension and the exact weight distribution.

use ghwlab::codes::{build_defining_set, summarize, theorem_nk, DMode, DModeParams};
use ghwlab::gf::FieldCtx;

fn show(p: u64, m: u32, mode: DMode) -> ghwlab::Result<()> {
    let ctx = FieldCtx::build(p, m)?;
    let params = DModeParams::new(&ctx, mode)?;
    let d = build_defining_set(&ctx, params);
    let summary = summarize(&ctx, &d);
    let (tn, tk) = theorem_nk(&ctx, &params);
    println!(
        "(p, m) = ({p}, {m}), mode {}: n = {}, k = {} (closed form predicts n = {tn}, k = {tk})",
        params.mode.as_str(),
        summary.n,
        summary.k
    );
    for (w, count) in &summary.weight_distribution {
        println!("  weight {w:>3}: {count} codewords");
    }
    for warning in params.warnings() {
        println!("  note: {warning}");
    }
    Ok(())
}

fn main() -> ghwlab::Result<()> {
    show(3, 3, DMode::One)?;
    show(7, 2, DMode::Special)?;
    // p = 1 mod 4 empties the defining set entirely
    show(5, 2, DMode::Special)?;
    Ok(())
}
