//! Build a small extension field and poke at its deterministic tables:
//! the modulus, the primitive element, discrete logs and the trace map.

use ghwlab::gf::FieldCtx;

fn main() -> ghwlab::Result<()> {
    let ctx = FieldCtx::build(3, 3)?;
    println!(
        "F_27 built with modulus {:?} and alpha = {:?}",
        ctx.modulus(),
        ctx.alpha().coeffs()
    );

    // the log and antilog tables are inverse to each other
    for j in [0i128, 1, 5, 13, 25] {
        let x = ctx.alpha_pow(j);
        println!("alpha^{j:>2} = {:?}  (dlog = {})", x.coeffs(), ctx.dlog(&x)?);
    }

    // the absolute trace hits every residue equally often
    let mut fibers = vec![0u64; ctx.p() as usize];
    for x in ctx.all_elements() {
        fibers[ctx.trace1(&x) as usize] += 1;
    }
    println!("trace fiber sizes: {fibers:?}");

    // rebuilding the field gives the identical tables
    let again = FieldCtx::build(3, 3)?;
    assert_eq!(ctx.modulus(), again.modulus());
    assert_eq!(ctx.alpha(), again.alpha());
    println!("construction is deterministic");
    Ok(())
}
