//! Exact arithmetic in Z[zeta_p] and in the quadratic ring (1/2)Z[sqrt(p*)],
//! p* = (-1)^((p-1)/2) p, together with the bridge between the two.
//!
//! A [`CycInt`] is stored in the canonical form with the coefficient of
//! zeta^{p-1} equal to zero: since 1 + zeta + ... + zeta^{p-1} = 0, any
//! vector can be reduced by subtracting its last coordinate from all of
//! them. All arithmetic is overflow-checked.

use crate::error::{Error, Result};

/// Exact element of Z[zeta_p], canonical integer-vector form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u64,
    coeffs: Vec<i64>, // length p, last entry 0 in canonical form
}

impl CycInt {
    pub fn zero(p: u64) -> CycInt {
        CycInt {
            p,
            coeffs: vec![0; p as usize],
        }
    }

    pub fn from_integer(p: u64, n: i64) -> CycInt {
        let mut c = Self::zero(p);
        c.coeffs[0] = n;
        c
    }

    /// zeta_p^j as a ring element.
    pub fn zeta_pow(p: u64, j: u64) -> CycInt {
        let mut coeffs = vec![0i64; p as usize];
        coeffs[(j % p) as usize] = 1;
        canonicalize(p, &mut coeffs).expect("unit coefficients cannot overflow");
        CycInt { p, coeffs }
    }

    /// Build sum_j counts[j] * zeta_p^j; this is how every character sum
    /// enters the ring (counts[j] = number of x with trace j).
    pub fn from_counts(p: u64, counts: &[u64]) -> Result<CycInt> {
        if counts.len() != p as usize {
            return Err(Error::LengthMismatch {
                expected: p as usize,
                got: counts.len(),
            });
        }
        let mut coeffs = Vec::with_capacity(p as usize);
        for &c in counts {
            coeffs.push(i64::try_from(c).map_err(|_| Error::Overflow)?);
        }
        canonicalize(p, &mut coeffs)?;
        Ok(CycInt { p, coeffs })
    }

    pub fn from_signed_counts(p: u64, counts: &[i64]) -> Result<CycInt> {
        if counts.len() != p as usize {
            return Err(Error::LengthMismatch {
                expected: p as usize,
                got: counts.len(),
            });
        }
        let mut coeffs = counts.to_vec();
        canonicalize(p, &mut coeffs)?;
        Ok(CycInt { p, coeffs })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(n) iff the element is the rational integer n.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        self.zip_with(other, |a, b| a.checked_add(b))
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.zip_with(other, |a, b| a.checked_sub(b))
    }

    fn zip_with(
        &self,
        other: &CycInt,
        f: impl Fn(i64, i64) -> Option<i64>,
    ) -> Result<CycInt> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (&a, &b) in self.coeffs.iter().zip(&other.coeffs) {
            coeffs.push(f(a, b).ok_or(Error::Overflow)?);
        }
        canonicalize(self.p, &mut coeffs)?;
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn scale(&self, k: i64) -> Result<CycInt> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            coeffs.push(a.checked_mul(k).ok_or(Error::Overflow)?);
        }
        canonicalize(self.p, &mut coeffs)?;
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn neg(&self) -> CycInt {
        self.scale(-1).expect("negation cannot overflow canonical forms")
    }

    /// Ring product; exponents reduce mod p, then the result canonicalizes.
    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        let p = self.p as usize;
        let mut coeffs = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = (i + j) % p;
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                coeffs[k] = coeffs[k].checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        canonicalize(self.p, &mut coeffs)?;
        Ok(CycInt { p: self.p, coeffs })
    }

    /// Convert into the quadratic subring, if the element lies there.
    ///
    /// An element is quadratic iff its canonical coefficients are constant
    /// on the quadratic residues and constant on the non-residues mod p.
    pub fn to_quad(&self) -> Result<QuadVal> {
        let p = self.p;
        let mut is_qr = vec![false; p as usize];
        for x in 1..p {
            is_qr[(x * x % p) as usize] = true;
        }
        let mut a: Option<i64> = None; // value on residues
        let mut b: Option<i64> = None; // value on non-residues
        for (j, &qr) in is_qr.iter().enumerate().skip(1) {
            let slot = if qr { &mut a } else { &mut b };
            match *slot {
                None => *slot = Some(self.coeffs[j]),
                Some(v) if v == self.coeffs[j] => {}
                Some(_) => return Err(Error::NotQuadratic),
            }
        }
        let a = a.unwrap_or(0);
        let b = b.unwrap_or(0);
        // value = c0 + a*(-1+sqrt(p*))/2 + b*(-1-sqrt(p*))/2
        let u = 2i64
            .checked_mul(self.coeffs[0])
            .and_then(|x| x.checked_sub(a))
            .and_then(|x| x.checked_sub(b))
            .ok_or(Error::Overflow)?;
        let v = a.checked_sub(b).ok_or(Error::Overflow)?;
        Ok(QuadVal { p, u, v })
    }
}

fn canonicalize(p: u64, coeffs: &mut [i64]) -> Result<()> {
    assert_eq!(coeffs.len(), p as usize);
    let last = coeffs[p as usize - 1];
    if last != 0 {
        for c in coeffs.iter_mut() {
            *c = c.checked_sub(last).ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}

/// The quadratic Gauss sum sum_x zeta_p^{x^2}, an exact square root of p*
/// inside Z[zeta_p].
pub fn gauss_sum(p: u64) -> CycInt {
    let mut counts = vec![0u64; p as usize];
    for x in 0..p {
        counts[(x * x % p) as usize] += 1;
    }
    CycInt::from_counts(p, &counts).expect("counts bounded by p")
}

/// p* = (-1)^((p-1)/2) * p.
pub fn p_star(p: u64) -> i64 {
    if p % 4 == 1 {
        p as i64
    } else {
        -(p as i64)
    }
}

/// Exact element of (1/2)Z[sqrt(p*)]; denotes (u + v sqrt(p*)) / 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadVal {
    p: u64,
    pub u: i64,
    pub v: i64,
}

impl QuadVal {
    pub fn new(p: u64, u: i64, v: i64) -> QuadVal {
        QuadVal { p, u, v }
    }

    pub fn zero(p: u64) -> QuadVal {
        QuadVal { p, u: 0, v: 0 }
    }

    pub fn from_integer(p: u64, n: i64) -> Result<QuadVal> {
        Ok(QuadVal {
            p,
            u: n.checked_mul(2).ok_or(Error::Overflow)?,
            v: 0,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_rational(&self) -> bool {
        self.v == 0
    }

    /// Some(n) iff the value is the rational integer n.
    pub fn as_integer(&self) -> Option<i64> {
        if self.v == 0 && self.u % 2 == 0 {
            Some(self.u / 2)
        } else {
            None
        }
    }

    pub fn add(&self, other: &QuadVal) -> Result<QuadVal> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        Ok(QuadVal {
            p: self.p,
            u: self.u.checked_add(other.u).ok_or(Error::Overflow)?,
            v: self.v.checked_add(other.v).ok_or(Error::Overflow)?,
        })
    }

    pub fn sub(&self, other: &QuadVal) -> Result<QuadVal> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        Ok(QuadVal {
            p: self.p,
            u: self.u.checked_sub(other.u).ok_or(Error::Overflow)?,
            v: self.v.checked_sub(other.v).ok_or(Error::Overflow)?,
        })
    }

    pub fn neg(&self) -> QuadVal {
        QuadVal {
            p: self.p,
            u: -self.u,
            v: -self.v,
        }
    }

    pub fn scale(&self, k: i64) -> Result<QuadVal> {
        Ok(QuadVal {
            p: self.p,
            u: self.u.checked_mul(k).ok_or(Error::Overflow)?,
            v: self.v.checked_mul(k).ok_or(Error::Overflow)?,
        })
    }

    /// Product, when it stays in (1/2)Z[sqrt(p*)].
    pub fn mul(&self, other: &QuadVal) -> Result<QuadVal> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        let d = p_star(self.p) as i128;
        let u = self.u as i128 * other.u as i128 + self.v as i128 * other.v as i128 * d;
        let v = self.u as i128 * other.v as i128 + self.v as i128 * other.u as i128;
        if u % 2 != 0 || v % 2 != 0 {
            return Err(Error::NotExactlyDivisible);
        }
        let u = i64::try_from(u / 2).map_err(|_| Error::Overflow)?;
        let v = i64::try_from(v / 2).map_err(|_| Error::Overflow)?;
        Ok(QuadVal { p: self.p, u, v })
    }

    /// Exact division by a positive integer.
    pub fn div_exact(&self, k: i64) -> Result<QuadVal> {
        if k == 0 || self.u % k != 0 || self.v % k != 0 {
            return Err(Error::NotExactlyDivisible);
        }
        Ok(QuadVal {
            p: self.p,
            u: self.u / k,
            v: self.v / k,
        })
    }
}

/// Render (u + v sqrt(p*))/2 inside Z[zeta_p], using the Gauss sum as the
/// exact square root. Fails if the numerator is not divisible by 2 there.
pub fn quad_to_cyc(x: &QuadVal) -> Result<CycInt> {
    let p = x.p;
    let numer = CycInt::from_integer(p, x.u).add(&gauss_sum(p).scale(x.v)?)?;
    // Representatives of `numer` differ by integer multiples of (1,1,...,1);
    // divisibility by 2 holds iff the canonical coordinates share a parity.
    let parity = numer.coeffs[0].rem_euclid(2);
    if numer.coeffs.iter().any(|c| c.rem_euclid(2) != parity) {
        return Err(Error::NotDivisibleByTwo);
    }
    let shifted: Vec<i64> = numer
        .coeffs
        .iter()
        .map(|c| c.checked_add(parity).ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    let halved: Vec<i64> = shifted.iter().map(|c| c / 2).collect();
    CycInt::from_signed_counts(p, &halved)
}
