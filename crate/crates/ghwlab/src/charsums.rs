//! Cyclotomic classes, Gaussian periods and the exponential sum
//! Omega(a,b) = sum over nonzero x of chi(a x^{(q-1)/M} + b x).
//!
//! Each quantity has a brute-force evaluation in Z[zeta_p] and, where a
//! closed form exists (order-2 periods; Omega in the semiprimitive
//! setting), an independent closed-form evaluation whose single point of
//! comparison is the rendered cyclotomic integer.

use crate::cyclo::{CycInt, QuadVal};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};

/// The coset alpha^i <alpha^N> of the index-N subgroup of F_q^*.
pub struct CycloClass<'a> {
    ctx: &'a FieldCtx,
    n: u64,
    index: u64,
}

impl<'a> CycloClass<'a> {
    pub fn new(ctx: &'a FieldCtx, n: u64, index: u64) -> Result<CycloClass<'a>> {
        check_divisor(ctx, n)?;
        Ok(CycloClass {
            ctx,
            n,
            index: index % n,
        })
    }

    pub fn len(&self) -> u64 {
        (self.ctx.q() - 1) / self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.len()).map(move |j| self.ctx.alpha_pow((self.index + j * self.n) as i128))
    }
}

fn check_divisor(ctx: &FieldCtx, n: u64) -> Result<()> {
    if n == 0 || !(ctx.q() - 1).is_multiple_of(n) {
        return Err(Error::NotADivisor {
            arg: n,
            modulus: ctx.q() - 1,
        });
    }
    Ok(())
}

/// Index t with x in C_t^{(N,q)}, i.e. dlog(x) mod N.
pub fn class_index(ctx: &FieldCtx, n: u64, x: &FqElem) -> Result<u64> {
    check_divisor(ctx, n)?;
    Ok(ctx.dlog(x)? % n)
}

/// Gaussian period eta_i^{(N,q)} by direct summation over the class.
pub fn gaussian_period_bf(ctx: &FieldCtx, n: u64, i: u64) -> Result<CycInt> {
    check_divisor(ctx, n)?;
    let p = ctx.p();
    let mut counts = vec![0u64; p as usize];
    let mut j = i % n;
    while j < ctx.q() - 1 {
        counts[ctx.trace1_of_alpha_pow(j) as usize] += 1;
        j += n;
    }
    CycInt::from_counts(p, &counts)
}

/// Closed form for the order-2 Gaussian periods eta_i^{(2,q)}, q = p^m.
///
/// For p = 3 mod 4 the factor (sqrt(-1))^m sqrt(q) is resolved exactly:
/// even m gives the rational (-1)^{m/2} p^{m/2}, odd m lands on the
/// sqrt(-p) axis with coefficient (-1)^{(m-1)/2} p^{(m-1)/2}.
pub fn gaussian_period_closed_n2(p: u64, m: u32, i: u64) -> QuadVal {
    let sign_m1 = if (m - 1).is_multiple_of(2) { 1i64 } else { -1 };
    let eta0 = if p % 4 == 1 {
        if m.is_multiple_of(2) {
            QuadVal::new(p, -1 + sign_m1 * pow_i64(p, m / 2), 0)
        } else {
            // sqrt(q) = p^{(m-1)/2} sqrt(p), and sign_m1 = +1 for odd m
            QuadVal::new(p, -1, pow_i64(p, (m - 1) / 2))
        }
    } else if m.is_multiple_of(2) {
        let sign_i = if (m / 2).is_multiple_of(2) { 1i64 } else { -1 };
        QuadVal::new(p, -1 + sign_m1 * sign_i * pow_i64(p, m / 2), 0)
    } else {
        let sign_i = if ((m - 1) / 2).is_multiple_of(2) { 1i64 } else { -1 };
        QuadVal::new(p, -1, sign_i * pow_i64(p, (m - 1) / 2))
    };
    match i % 2 {
        0 => eta0,
        _ => QuadVal::new(p, -2 - eta0.u, -eta0.v), // eta_1 = -1 - eta_0
    }
}

fn pow_i64(p: u64, e: u32) -> i64 {
    (p as i64).pow(e)
}

/// Parameters of the semiprimitive setting for Omega: q = p^{2fh} with f
/// the least positive integer such that p^f = -1 (mod M).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaParams {
    pub m_order: u64, // subgroup index M with p^f = -1 (mod M)
    pub f: u32,
    pub h: u32,
    pub d: u64,
    /// true when p, h and (p^f+1)/M are all odd (selects the first branch)
    pub parity_first_case: bool,
}

impl OmegaParams {
    pub fn new(ctx: &FieldCtx, m_order: u64) -> Result<OmegaParams> {
        if m_order < 2 {
            return Err(Error::InconsistentParams("M must be >= 2".into()));
        }
        let p = ctx.p();
        // least f with p^f = -1 (mod M); if p has odd order mod M no f exists
        let mut f = None;
        let mut pf = 1u64 % m_order;
        for cand in 1..=(2 * m_order as u32) {
            pf = pf * (p % m_order) % m_order;
            if pf == (m_order - 1) % m_order {
                f = Some(cand);
                break;
            }
        }
        let f = f.ok_or_else(|| {
            Error::InconsistentParams(format!("no f with {p}^f = -1 (mod {m_order})"))
        })?;
        if !ctx.m().is_multiple_of(2 * f) {
            return Err(Error::InconsistentParams(format!(
                "m = {} is not a multiple of 2f = {}",
                ctx.m(),
                2 * f
            )));
        }
        let h = ctx.m() / (2 * f);
        if (h as u64).is_multiple_of(p) {
            return Err(Error::InconsistentParams("gcd(h, p) != 1".into()));
        }
        let d = (ctx.q() - 1) / m_order;
        let pf_plus_1 = p.checked_pow(f).ok_or(Error::Overflow)? + 1;
        if pf_plus_1 % m_order != 0 {
            return Err(Error::InconsistentParams("M does not divide p^f + 1".into()));
        }
        let parity_first_case = h % 2 == 1 && (pf_plus_1 / m_order) % 2 == 1;
        Ok(OmegaParams {
            m_order,
            f,
            h,
            d,
            parity_first_case,
        })
    }
}

/// Closed-form Omega value: an integer multiple of the Gaussian period
/// eta_t^{(d,q)} plus an optional "spike" coeff * zeta_p^exponent coming
/// from the sqrt(q) chi(...) term (a p-th root of unity).
///
/// The period factor is kept as an exact cyclotomic integer; the scalar
/// (sqrt(q)+1)/M resp. ((-1)^h sqrt(q)-1)/M is always an integer in the
/// semiprimitive setting and the division is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaClosed {
    pub period_coeff: i64,
    pub period: CycInt,
    pub spike: Option<Spike>,
}

impl OmegaClosed {
    /// The non-spike part as a quadratic value, when it lies in the
    /// quadratic subring (it does on the two-weight code instances).
    pub fn rational_part_quad(&self) -> Result<QuadVal> {
        self.period.scale(self.period_coeff)?.to_quad()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spike {
    pub coeff: i64,
    pub exponent: u64, // residue mod p
}

/// Brute-force Omega(a,b) over all q-1 nonzero x, via trace-fiber counts.
pub fn omega_bf(ctx: &FieldCtx, a: &FqElem, b: &FqElem, m_order: u64) -> Result<CycInt> {
    check_divisor(ctx, m_order)?;
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    let d = (ctx.q() - 1) / m_order;
    let p = ctx.p();
    let mut counts = vec![0u64; p as usize];
    for j in 0..ctx.q() - 1 {
        let x = ctx.antilog_ref(j);
        let xd = ctx.alpha_pow((j as u128 * d as u128 % (ctx.q() - 1) as u128) as i128);
        let arg = ctx.add(&ctx.mul(a, &xd), &ctx.mul(b, x));
        counts[ctx.trace1(&arg) as usize] += 1;
    }
    CycInt::from_counts(p, &counts)
}

fn exact_div(n: i64, d: i64) -> Result<i64> {
    if d == 0 || n % d != 0 {
        return Err(Error::NotExactlyDivisible);
    }
    Ok(n / d)
}

/// Closed form for Omega(a,b) in the semiprimitive setting: the period
/// eta_t^{(d,q)} is summed over its M-element class and the branch formula
/// only rescales it and adds the sqrt(q) spike.
pub fn omega_closed(
    ctx: &FieldCtx,
    params: &OmegaParams,
    a: &FqElem,
    b: &FqElem,
) -> Result<OmegaClosed> {
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    if ctx.m() != 2 * params.f * params.h || !(ctx.q() - 1).is_multiple_of(params.m_order) {
        return Err(Error::InconsistentParams(
            "params do not describe this field".into(),
        ));
    }
    let d = params.d;
    let t = ctx.dlog(a)? % d;
    let period = gaussian_period_bf(ctx, d, t)?;

    if b.is_zero() {
        return Ok(OmegaClosed {
            period_coeff: i64::try_from(d).map_err(|_| Error::Overflow)?,
            period,
            spike: None,
        });
    }

    let delta = class_index(ctx, params.m_order, b)?;
    let sqrt_q = pow_i64(ctx.p(), params.f * params.h);
    let m_div = i64::try_from(params.m_order).map_err(|_| Error::Overflow)?;
    let shift = ctx.alpha_pow(-((d as i128) * (delta as i128)));
    if params.parity_first_case {
        // sqrt(q) chi(-a alpha^{-d delta}) - (sqrt(q)+1) eta_t / M
        let exponent = ctx.trace1(&ctx.neg(&ctx.mul(a, &shift)));
        Ok(OmegaClosed {
            period_coeff: exact_div(-(sqrt_q + 1), m_div)?,
            period,
            spike: Some(Spike {
                coeff: sqrt_q,
                exponent,
            }),
        })
    } else {
        // (-1)^{h-1} sqrt(q) chi(a alpha^{-d delta}) + ((-1)^h sqrt(q) - 1) eta_t / M
        let sign_h = if params.h.is_multiple_of(2) { 1i64 } else { -1 };
        let exponent = ctx.trace1(&ctx.mul(a, &shift));
        Ok(OmegaClosed {
            period_coeff: exact_div(sign_h * sqrt_q - 1, m_div)?,
            period,
            spike: Some(Spike {
                coeff: -sign_h * sqrt_q,
                exponent,
            }),
        })
    }
}

/// Render a closed-form Omega value in Z[zeta_p] for bit-exact comparison
/// with the brute-force sum.
pub fn omega_closed_as_cyc(p: u64, value: &OmegaClosed) -> Result<CycInt> {
    let mut out = value.period.scale(value.period_coeff)?;
    if let Some(spike) = &value.spike {
        out = out.add(&CycInt::zeta_pow(p, spike.exponent).scale(spike.coeff)?)?;
    }
    Ok(out)
}
