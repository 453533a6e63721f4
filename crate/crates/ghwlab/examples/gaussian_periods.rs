//! Gaussian periods as exact cyclotomic integers: brute-force sums over
//! cyclotomic classes, compared against the closed form for order 2.

use ghwlab::charsums::{gaussian_period_bf, gaussian_period_closed_n2};
use ghwlab::cyclo::quad_to_cyc;
use ghwlab::gf::FieldCtx;

fn main() -> ghwlab::Result<()> {
    for (p, m) in [(3u64, 2u32), (3, 4), (7, 2), (11, 2)] {
        let ctx = FieldCtx::build(p, m)?;
        println!("q = {}^{}", p, m);
        for i in 0..2 {
            let brute = gaussian_period_bf(&ctx, 2, i)?;
            let closed = gaussian_period_closed_n2(p, m, i);
            assert_eq!(quad_to_cyc(&closed)?, brute);
            println!(
                "  eta_{i}^(2,q) = ({} + {} sqrt(p*))/2 = {:?}",
                closed.u,
                closed.v,
                brute.coeffs()
            );
        }
    }

    // higher-order periods are generally irrational cyclotomic integers
    let ctx = FieldCtx::build(3, 4)?;
    for i in 0..4 {
        let eta = gaussian_period_bf(&ctx, 4, i)?;
        println!("eta_{i}^(4,81) = {:?}", eta.coeffs());
    }
    Ok(())
}
