//! Defining-set trace codes: D = {x in F_q^* : Tr(x^d) = 0} with d = 1 or
//! d = (q-1)/(p+1), the codeword map a -> (Tr(a x))_{x in D}, and the
//! exhaustive length / dimension / weight-distribution summary with its
//! closed-form cross-check.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DMode {
    /// d = 1
    One,
    /// d = (q-1)/(p+1), m even
    Special,
}

impl DMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DMode::One => "one",
            DMode::Special => "special",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisFlags {
    pub gcd_m_p_is_1: bool,
    /// s = m/2 odd; only meaningful in special mode
    pub s_is_odd: Option<bool>,
    pub p_mod_4: u64,
}

impl HypothesisFlags {
    pub fn all_pass(&self, mode: DMode) -> bool {
        self.gcd_m_p_is_1
            && match mode {
                DMode::One => true,
                DMode::Special => self.s_is_odd == Some(true),
            }
    }
}

/// The exponent mode together with the hypothesis record the closed
/// formulas assume. Violated flags downgrade closed-form claims to
/// advisory; brute force stays authoritative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DModeParams {
    pub mode: DMode,
    pub d: u64,
    pub s: Option<u32>,
    pub flags: HypothesisFlags,
}

impl DModeParams {
    pub fn new(ctx: &FieldCtx, mode: DMode) -> Result<DModeParams> {
        let p = ctx.p();
        let m = ctx.m();
        let gcd_m_p_is_1 = !(m as u64).is_multiple_of(p);
        match mode {
            DMode::One => Ok(DModeParams {
                mode,
                d: 1,
                s: None,
                flags: HypothesisFlags {
                    gcd_m_p_is_1,
                    s_is_odd: None,
                    p_mod_4: p % 4,
                },
            }),
            DMode::Special => {
                if !m.is_multiple_of(2) {
                    return Err(Error::InvalidDMode(format!(
                        "d = (q-1)/(p+1) requires even m, got m = {m}"
                    )));
                }
                let s = m / 2;
                let d = (ctx.q() - 1) / (p + 1);
                debug_assert_eq!(d * (p + 1), ctx.q() - 1);
                Ok(DModeParams {
                    mode,
                    d,
                    s: Some(s),
                    flags: HypothesisFlags {
                        gcd_m_p_is_1,
                        s_is_odd: Some(s % 2 == 1),
                        p_mod_4: p % 4,
                    },
                })
            }
        }
    }

    /// Human-readable warnings for violated hypotheses.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.flags.gcd_m_p_is_1 {
            out.push("hypothesis gcd(m, p) = 1 is violated; closed formulas are advisory".into());
        }
        if self.flags.s_is_odd == Some(false) {
            out.push("hypothesis s = m/2 odd is violated; closed formulas are advisory".into());
        }
        out
    }
}

/// The defining set, in ascending discrete-log order.
#[derive(Debug, Clone)]
pub struct DefiningSet {
    pub params: DModeParams,
    elements: Vec<FqElem>,
    dlogs: Vec<u64>,
}

impl DefiningSet {
    pub fn elements(&self) -> &[FqElem] {
        &self.elements
    }

    pub fn dlogs(&self) -> &[u64] {
        &self.dlogs
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Escape hatch for tests: wrap an arbitrary set of nonzero elements.
    #[doc(hidden)]
    pub fn from_elements(ctx: &FieldCtx, params: DModeParams, elements: Vec<FqElem>) -> DefiningSet {
        let mut with_logs: Vec<(u64, FqElem)> = elements
            .into_iter()
            .map(|x| (ctx.dlog(&x).expect("defining sets exclude zero"), x))
            .collect();
        with_logs.sort_by_key(|(l, _)| *l);
        with_logs.dedup_by_key(|(l, _)| *l);
        let (dlogs, elements) = with_logs.into_iter().unzip();
        DefiningSet {
            params,
            elements,
            dlogs,
        }
    }
}

/// Enumerate D = {x in F_q^* : Tr(x^d) = 0} by sweeping discrete logs.
pub fn build_defining_set(ctx: &FieldCtx, params: DModeParams) -> DefiningSet {
    let ord = ctx.q() - 1;
    let mut elements = Vec::new();
    let mut dlogs = Vec::new();
    for j in 0..ord {
        let jd = (j as u128 * params.d as u128 % ord as u128) as u64;
        if ctx.trace1_of_alpha_pow(jd) == 0 {
            elements.push(ctx.antilog_ref(j).clone());
            dlogs.push(j);
        }
    }
    DefiningSet {
        params,
        elements,
        dlogs,
    }
}

/// The codeword (Tr(a x))_{x in D}, entries as residues mod p.
pub fn codeword(ctx: &FieldCtx, d: &DefiningSet, a: &FqElem) -> Vec<u64> {
    if a.is_zero() {
        return vec![0; d.len()];
    }
    let la = ctx.dlog(a).expect("nonzero");
    let ord = ctx.q() - 1;
    d.dlogs
        .iter()
        .map(|&lx| ctx.trace1_of_alpha_pow((la + lx) % ord))
        .collect()
}

/// Exhaustive sweep over all q messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSummary {
    pub n: u64,
    pub k: u32,
    pub kernel_dim: u32,
    pub weight_distribution: BTreeMap<u64, u64>,
}

impl CodeSummary {
    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.weight_distribution
            .keys()
            .copied()
            .filter(|&w| w != 0)
            .collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }
}

/// Length, dimension and weight distribution by full enumeration; k comes
/// from the kernel sweep, never from the closed formula.
pub fn summarize(ctx: &FieldCtx, d: &DefiningSet) -> CodeSummary {
    let n = d.len() as u64;
    let ord = ctx.q() - 1;
    let mut dist: BTreeMap<u64, u64> = BTreeMap::new();
    let mut kernel_size = 1u64; // a = 0
    *dist.entry(0).or_default() += 1;
    for la in 0..ord {
        let mut zeros = 0u64;
        for &lx in &d.dlogs {
            if ctx.trace1_of_alpha_pow((la + lx) % ord) == 0 {
                zeros += 1;
            }
        }
        let w = n - zeros;
        *dist.entry(w).or_default() += 1;
        if w == 0 {
            kernel_size += 1;
        }
    }
    let kernel_dim = exact_log(kernel_size, ctx.p());
    CodeSummary {
        n,
        k: ctx.m() - kernel_dim,
        kernel_dim,
        weight_distribution: dist,
    }
}

fn exact_log(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        assert_eq!(n % p, 0, "kernel size is not a p-power");
        n /= p;
        e += 1;
    }
    e
}

/// The closed-form (n, k) the length/dimension theorem predicts.
pub fn theorem_nk(ctx: &FieldCtx, params: &DModeParams) -> (u64, u32) {
    let p = ctx.p();
    let m = ctx.m();
    match params.mode {
        DMode::One => (p.pow(m - 1) - 1, m - 1),
        DMode::Special => {
            if p % 4 == 1 {
                (0, 0)
            } else {
                (2 * (ctx.q() - 1) / (p + 1), m)
            }
        }
    }
}

/// The two nonzero weights the special-mode proof predicts for p = 3 mod 4.
pub fn special_mode_weights(p: u64, s: u32) -> (u64, u64) {
    let ps = p.pow(s);
    let w_zero_trace = p.pow(s - 1) * (2 * ps - p + 1) * (p - 1) / (p + 1);
    let w_nonzero_trace = 2 * p.pow(s - 1) * (ps + 1) * (p - 1) / (p + 1);
    (w_zero_trace, w_nonzero_trace)
}
