//! Exact arithmetic in F_p and F_{p^m}.
//!
//! A [`FieldCtx`] carries the modulus polynomial, a fixed primitive element
//! and dense log/antilog tables, so that multiplicative operations in the
//! inner loops are table lookups. Construction is deterministic: the modulus
//! is the smallest monic irreducible of degree m (coefficients read as
//! base-p digits, low to high) and alpha is the lexicographically smallest
//! coefficient vector of multiplicative order q-1.

use crate::error::{Error, Result};

/// Default cap on the number of log-table entries a field may need.
pub const DEFAULT_FIELD_CEILING: u64 = 2_000_000;

/// Element of F_{p^m} in the polynomial basis, coefficients low-to-high.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Immutable description of F_{p^m}: modulus, primitive element, tables.
///
/// All operations are pure functions over `&self`; a context can be shared
/// freely across threads once built.
pub struct FieldCtx {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    alpha: FqElem,
    antilog: Vec<FqElem>,
    log: Vec<u32>,
    trace_basis: Vec<u64>,
}

const LOG_NONE: u32 = u32::MAX;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of n, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- polynomial arithmetic over F_p, used only during construction ---

fn ptrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(&mut out);
    out
}

/// Remainder of a modulo the monic polynomial f.
fn prem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    ptrim(&mut a);
    let df = f.len() - 1;
    while a.len() > df {
        let lead = a[a.len() - 1];
        let shift = a.len() - 1 - df;
        for (i, &fc) in f.iter().enumerate() {
            let idx = shift + i;
            let sub = (lead * fc) % p;
            a[idx] = (a[idx] + p - sub) % p;
        }
        ptrim(&mut a);
    }
    a
}

fn pmulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    prem(&pmul(a, b, p), f, p)
}

fn ppowmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = prem(a, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = pmulmod(&acc, &base, f, p);
        }
        base = pmulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a nonzero
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    ptrim(&mut a);
    ptrim(&mut b);
    while !b.is_empty() {
        // reduce a mod b (b need not be monic)
        let inv_lead = inv_mod(b[b.len() - 1], p);
        let monic_b: Vec<u64> = b.iter().map(|&c| c * inv_lead % p).collect();
        let r = prem(&a, &monic_b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over F_p by the distinct-degree criterion: f of degree m
/// is irreducible iff gcd(x^{p^i} - x, f) is constant for all i <= m/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut xpi = x.clone();
    for _ in 1..=(m / 2) {
        xpi = ppowmod(&xpi, p, f, p);
        // xpi - x
        let mut diff = xpi.clone();
        while diff.len() < 2 {
            diff.push(0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        ptrim(&mut diff);
        let g = pgcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldCtx {
    /// Deterministic construction of F_{p^m} with full log/antilog tables.
    pub fn build(p: u64, m: u32) -> Result<FieldCtx> {
        Self::build_with_ceiling(p, m, DEFAULT_FIELD_CEILING)
    }

    pub fn build_with_ceiling(p: u64, m: u32, ceiling: u64) -> Result<FieldCtx> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidDMode("m must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q.checked_mul(p).ok_or(Error::Overflow)?;
            if q > ceiling {
                return Err(Error::FieldTooLarge { q, ceiling });
            }
        }

        // Smallest monic irreducible of degree m, low coefficients read as
        // base-p digits of an increasing counter.
        let mdeg = m as usize;
        let mut modulus = Vec::new();
        for n in 0..q {
            let mut f = vec![0u64; mdeg + 1];
            let mut t = n;
            for c in f.iter_mut().take(mdeg) {
                *c = t % p;
                t /= p;
            }
            f[mdeg] = 1;
            if is_irreducible(&f, p) {
                modulus = f;
                break;
            }
        }
        assert!(!modulus.is_empty(), "no irreducible polynomial found");

        // Smallest primitive element by lexicographic coefficient order.
        let factors = prime_factors(q - 1);
        let mut alpha_poly: Option<Vec<u64>> = None;
        'outer: for n in 1..q {
            // lexicographic order on (c_0, ..., c_{m-1}): c_0 most significant
            let mut cand = vec![0u64; mdeg];
            let mut t = n;
            for i in (0..mdeg).rev() {
                cand[i] = t % p;
                t /= p;
            }
            for &r in &factors {
                let e = (q - 1) / r;
                if ppowmod(&cand, e, &modulus, p) == vec![1] {
                    continue 'outer;
                }
            }
            alpha_poly = Some(cand);
            break;
        }
        let alpha_poly = alpha_poly.expect("F_q^* is cyclic");

        let pad = |v: &[u64]| -> FqElem {
            let mut c = v.to_vec();
            c.resize(mdeg, 0);
            FqElem { coeffs: c }
        };

        // antilog[j] = alpha^j, log by encoding
        let mut antilog = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![LOG_NONE; q as usize];
        let mut cur = vec![1u64];
        for j in 0..(q - 1) {
            let elem = pad(&cur);
            let code = encode_coeffs(&elem.coeffs, p);
            debug_assert_eq!(log[code], LOG_NONE, "alpha order < q-1");
            log[code] = j as u32;
            antilog.push(elem);
            cur = pmulmod(&cur, &alpha_poly, &modulus, p);
        }
        debug_assert_eq!(cur, vec![1], "alpha^{{q-1}} != 1");

        // traces of the basis monomials x^i
        let mut trace_basis = vec![0u64; mdeg];
        for (i, tb) in trace_basis.iter_mut().enumerate() {
            let mut e_i = vec![0u64; i + 1];
            e_i[i] = 1;
            let mut acc = prem(&e_i, &modulus, p);
            let mut frob = acc.clone();
            for _ in 1..m {
                frob = ppowmod(&frob, p, &modulus, p);
                let len = acc.len().max(frob.len());
                acc.resize(len, 0);
                for (k, &c) in frob.iter().enumerate() {
                    acc[k] = (acc[k] + c) % p;
                }
            }
            ptrim(&mut acc);
            assert!(acc.len() <= 1, "trace of basis element not in F_p");
            *tb = acc.first().copied().unwrap_or(0);
        }

        let alpha = pad(&alpha_poly);
        Ok(FieldCtx {
            p,
            m,
            q,
            modulus,
            alpha,
            antilog,
            log,
            trace_basis,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn alpha(&self) -> &FqElem {
        &self.alpha
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            coeffs: vec![0; self.m as usize],
        }
    }

    pub fn one(&self) -> FqElem {
        self.from_residue(1)
    }

    /// The element c * 1 for a residue c of F_p.
    pub fn from_residue(&self, c: u64) -> FqElem {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[0] = c % self.p;
        FqElem { coeffs }
    }

    pub fn encode(&self, x: &FqElem) -> usize {
        encode_coeffs(&x.coeffs, self.p)
    }

    pub fn decode(&self, mut code: usize) -> FqElem {
        let mut coeffs = vec![0u64; self.m as usize];
        for c in coeffs.iter_mut() {
            *c = (code as u64) % self.p;
            code /= self.p as usize;
        }
        FqElem { coeffs }
    }

    pub fn add(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FqElem { coeffs }
    }

    pub fn sub(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        FqElem { coeffs }
    }

    pub fn neg(&self, x: &FqElem) -> FqElem {
        let coeffs = x.coeffs.iter().map(|&a| (self.p - a) % self.p).collect();
        FqElem { coeffs }
    }

    pub fn scale(&self, c: u64, x: &FqElem) -> FqElem {
        let c = c % self.p;
        let coeffs = x.coeffs.iter().map(|&a| a * c % self.p).collect();
        FqElem { coeffs }
    }

    pub fn mul(&self, x: &FqElem, y: &FqElem) -> FqElem {
        if x.is_zero() || y.is_zero() {
            return self.zero();
        }
        let lx = self.log[self.encode(x)] as u64;
        let ly = self.log[self.encode(y)] as u64;
        self.antilog[((lx + ly) % (self.q - 1)) as usize].clone()
    }

    pub fn inv(&self, x: &FqElem) -> Result<FqElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lx = self.log[self.encode(x)] as u64;
        Ok(self.antilog[((self.q - 1 - lx) % (self.q - 1)) as usize].clone())
    }

    pub fn pow(&self, x: &FqElem, e: i64) -> Result<FqElem> {
        if x.is_zero() {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(self.zero()),
                std::cmp::Ordering::Equal => Ok(self.one()),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let lx = self.log[self.encode(x)] as i128;
        let ord = (self.q - 1) as i128;
        let j = (lx * e as i128).rem_euclid(ord);
        Ok(self.antilog[j as usize].clone())
    }

    /// alpha^j for any signed exponent.
    pub fn alpha_pow(&self, j: i128) -> FqElem {
        let ord = (self.q - 1) as i128;
        self.antilog[j.rem_euclid(ord) as usize].clone()
    }

    pub fn dlog(&self, x: &FqElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[self.encode(x)] as u64)
    }

    /// Trace to the subfield F_{p^e}, returned as an embedded element.
    pub fn trace(&self, x: &FqElem, e: u32) -> Result<FqElem> {
        if e == 0 || !self.m.is_multiple_of(e) {
            return Err(Error::NotADivisor {
                arg: e as u64,
                modulus: self.m as u64,
            });
        }
        if x.is_zero() {
            return Ok(self.zero());
        }
        let mut acc = self.zero();
        let mut exp: u64 = 1;
        let pe = self.p.pow(e);
        for _ in 0..(self.m / e) {
            let term = self.pow(x, exp as i64)?;
            acc = self.add(&acc, &term);
            exp = exp * pe % (self.q - 1);
            // p^{e*i} taken mod q-1 is fine: x^{q-1} = 1 for x != 0
        }
        Ok(acc)
    }

    /// Absolute trace to F_p, as a residue. Fast path used by inner loops.
    pub fn trace1(&self, x: &FqElem) -> u64 {
        let mut acc = 0u64;
        for (c, t) in x.coeffs.iter().zip(&self.trace_basis) {
            acc = (acc + c * t) % self.p;
        }
        acc
    }

    /// The p^e elements of the embedded subfield F_{p^e}.
    pub fn embed_subfield(&self, e: u32) -> Result<Vec<FqElem>> {
        if e == 0 || !self.m.is_multiple_of(e) {
            return Err(Error::NotADivisor {
                arg: e as u64,
                modulus: self.m as u64,
            });
        }
        let pe = self.p.pow(e);
        let step = (self.q - 1) / (pe - 1);
        let mut out = vec![self.zero()];
        for j in 0..(pe - 1) {
            out.push(self.antilog[(j * step) as usize].clone());
        }
        Ok(out)
    }

    /// All q elements, in encoding order.
    pub fn all_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q as usize).map(|code| self.decode(code))
    }

    /// Trace of alpha^j to F_p, by table lookup on the exponent.
    pub fn trace1_of_alpha_pow(&self, j: u64) -> u64 {
        self.trace1(&self.antilog[(j % (self.q - 1)) as usize])
    }

    pub fn antilog_ref(&self, j: u64) -> &FqElem {
        &self.antilog[(j % (self.q - 1)) as usize]
    }
}

fn encode_coeffs(coeffs: &[u64], p: u64) -> usize {
    let mut code = 0usize;
    for &c in coeffs.iter().rev() {
        code = code * p as usize + c as usize;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_f3() {
        let ctx = FieldCtx::build(3, 1).unwrap();
        assert_eq!(ctx.q(), 3);
        assert_eq!(ctx.modulus(), &[0, 1]); // modulus x
        assert_eq!(ctx.alpha(), &ctx.from_residue(2));
    }

    #[test]
    fn build_f9() {
        let ctx = FieldCtx::build(3, 2).unwrap();
        assert_eq!(ctx.q(), 9);
        // alpha has order 8: tables hold 8 entries and alpha^8 = 1
        assert_eq!(ctx.antilog.len(), 8);
        assert_eq!(ctx.pow(ctx.alpha(), 8).unwrap(), ctx.one());
        assert_ne!(ctx.pow(ctx.alpha(), 4).unwrap(), ctx.one());
        // the unique element of order 2 is -1
        assert_eq!(
            ctx.pow(ctx.alpha(), 4).unwrap(),
            ctx.neg(&ctx.one())
        );
    }

    #[test]
    fn build_is_deterministic() {
        let a = FieldCtx::build(5, 3).unwrap();
        let b = FieldCtx::build(5, 3).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.alpha(), b.alpha());
        assert_eq!(a.antilog, b.antilog);
    }

    #[test]
    fn frobenius_fixes_field() {
        let ctx = FieldCtx::build(3, 6).unwrap();
        let q = ctx.q() as i64;
        // deterministic sweep standing in for random sampling
        for code in (1..ctx.q()).step_by(17) {
            let x = ctx.decode(code as usize);
            assert_eq!(ctx.pow(&x, q).unwrap(), x);
        }
    }

    #[test]
    fn inverse_sweep_f729() {
        let ctx = FieldCtx::build(3, 6).unwrap();
        for code in 1..ctx.q() as usize {
            let x = ctx.decode(code);
            let y = ctx.inv(&x).unwrap();
            assert_eq!(ctx.mul(&x, &y), ctx.one());
        }
        assert_eq!(ctx.inv(&ctx.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn dlog_is_a_homomorphism() {
        let ctx = FieldCtx::build(3, 6).unwrap();
        let ord = ctx.q() - 1;
        let mut state = 1u64;
        for _ in 0..100 {
            // small deterministic LCG over nonzero codes
            state = (state * 48271) % 0x7fffffff;
            let a = ctx.decode((state % (ctx.q() - 1) + 1) as usize);
            state = (state * 48271) % 0x7fffffff;
            let b = ctx.decode((state % (ctx.q() - 1) + 1) as usize);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let lhs = ctx.dlog(&ctx.mul(&a, &b)).unwrap();
            let rhs = (ctx.dlog(&a).unwrap() + ctx.dlog(&b).unwrap()) % ord;
            assert_eq!(lhs, rhs);
        }
        assert_eq!(ctx.dlog(&ctx.one()).unwrap(), 0);
        assert_eq!(ctx.dlog(ctx.alpha()).unwrap(), 1);
        assert_eq!(ctx.dlog(&ctx.zero()), Err(Error::LogOfZero));
    }

    #[test]
    fn trace_fibers_are_balanced() {
        for (p, m) in [(3u64, 2u32), (3, 4), (5, 2), (7, 2)] {
            let ctx = FieldCtx::build(p, m).unwrap();
            let mut fibers = vec![0u64; p as usize];
            for x in ctx.all_elements() {
                fibers[ctx.trace1(&x) as usize] += 1;
            }
            let expect = ctx.q() / p;
            assert!(fibers.iter().all(|&c| c == expect), "{p}^{m}: {fibers:?}");
        }
    }

    #[test]
    fn trace_is_additive_and_frobenius_invariant() {
        let ctx = FieldCtx::build(3, 4).unwrap();
        let p = ctx.p() as i64;
        for xc in 0..ctx.q() as usize {
            let x = ctx.decode(xc);
            assert_eq!(ctx.trace1(&ctx.pow(&x, p).unwrap()), ctx.trace1(&x));
            let y = ctx.decode((xc * 7 + 5) % ctx.q() as usize);
            let t = ctx.trace1(&ctx.add(&x, &y));
            assert_eq!(t, (ctx.trace1(&x) + ctx.trace1(&y)) % ctx.p());
        }
    }

    #[test]
    fn trace_to_intermediate_subfield() {
        // Tr^6_2 restricted to the embedded F_9 is multiplication by 3 = 0
        let ctx = FieldCtx::build(3, 6).unwrap();
        for u in ctx.embed_subfield(2).unwrap() {
            assert_eq!(ctx.trace(&u, 2).unwrap(), ctx.zero());
        }
        assert!(ctx.trace(&ctx.one(), 4).is_err());
    }

    #[test]
    fn subfield_embedding_is_closed() {
        let ctx = FieldCtx::build(3, 6).unwrap();
        let sub = ctx.embed_subfield(2).unwrap();
        assert_eq!(sub.len(), 9);
        for x in &sub {
            for y in &sub {
                assert!(sub.contains(&ctx.add(x, y)));
                assert!(sub.contains(&ctx.mul(x, y)));
            }
        }
        // e = 1 gives the multiples of the identity
        let prime = ctx.embed_subfield(1).unwrap();
        assert_eq!(prime.len(), 3);
        for c in 0..3 {
            assert!(prime.contains(&ctx.from_residue(c)));
        }
        // e = m gives everything
        assert_eq!(ctx.embed_subfield(6).unwrap().len(), 729);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldCtx::build(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldCtx::build(2, 3), Err(Error::NotPrime(2))));
        assert!(matches!(
            FieldCtx::build(3, 20),
            Err(Error::FieldTooLarge { .. })
        ));
    }
}
