//! The two-parameter character sum Omega(a, b) in the semiprimitive
//! setting: the closed form (an integer multiple of a Gaussian period plus
//! a root-of-unity spike) matches the brute-force sum on every pair.

use ghwlab::charsums::{omega_bf, omega_closed, omega_closed_as_cyc, OmegaParams};
use ghwlab::gf::FieldCtx;

fn main() -> ghwlab::Result<()> {
    let ctx = FieldCtx::build(3, 2)?;
    let params = OmegaParams::new(&ctx, 4)?;
    println!(
        "q = 9, M = 4: f = {}, h = {}, d = {}, first-case parity = {}",
        params.f, params.h, params.d, params.parity_first_case
    );

    let mut checked = 0;
    for la in 0..ctx.q() - 1 {
        let a = ctx.alpha_pow(la as i128);
        for enc_b in 0..ctx.q() {
            let b = ctx.decode(enc_b as usize);
            let brute = omega_bf(&ctx, &a, &b, 4)?;
            let closed = omega_closed(&ctx, &params, &a, &b)?;
            assert_eq!(omega_closed_as_cyc(3, &closed)?, brute);
            checked += 1;
        }
    }
    println!("closed form verified against brute force on {checked} (a, b) pairs");

    // one pair in detail
    let a = ctx.alpha_pow(1);
    let b = ctx.alpha_pow(3);
    let closed = omega_closed(&ctx, &params, &a, &b)?;
    println!(
        "Omega(alpha, alpha^3) = {} * eta {:?} + spike {:?}",
        closed.period_coeff,
        closed.period.coeffs(),
        closed.spike
    );
    Ok(())
}
