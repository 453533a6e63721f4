//! The weight hierarchy d_1 .. d_k by four independent routes: closed
//! formula, hyperplane intersection, character-sum maximization, and the
//! direct subcode-support oracle. Credibility at desk scale comes from the
//! cross-check, so no route is privileged; a single report arbitrates.

use crate::codes::{CodeSummary, DMode, DModeParams, DefiningSet};
use crate::cyclo::CycInt;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};

/// Feasibility ceiling and worker count for the enumeration methods.
#[derive(Debug, Clone, Copy)]
pub struct GhwConfig {
    /// Max admissible work units (subspace count x per-subspace cost).
    pub ceiling: u64,
    pub threads: usize,
}

pub const DEFAULT_WORK_CEILING: u64 = 10_000_000;

impl Default for GhwConfig {
    fn default() -> Self {
        GhwConfig {
            ceiling: DEFAULT_WORK_CEILING,
            threads: 1,
        }
    }
}

/// Number of r-dimensional subspaces of an m-dimensional space over F_p.
pub fn gaussian_binomial(p: u64, m: u32, r: u32) -> u128 {
    if r > m {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num *= (p as u128).pow(m - i) - 1;
        den *= (p as u128).pow(r - i) - 1;
    }
    debug_assert_eq!(num % den, 0);
    num / den
}

/// Duplicate-free enumeration of the r-dimensional subspaces of F_p^l via
/// canonical reduced-row-echelon bases. Yields r x l coefficient matrices.
pub struct SubspaceIter {
    p: u64,
    l: usize,
    r: usize,
    pivots: Vec<usize>,
    free_pos: Vec<(usize, usize)>,
    free_vals: Vec<u64>,
    started: bool,
    done: bool,
}

impl SubspaceIter {
    pub fn new(p: u64, l: usize, r: usize) -> Result<SubspaceIter> {
        if r > l {
            return Err(Error::RankOutOfRange {
                r: r as u32,
                max: l as u32,
            });
        }
        Ok(SubspaceIter {
            p,
            l,
            r,
            pivots: (0..r).collect(),
            free_pos: Vec::new(),
            free_vals: Vec::new(),
            started: false,
            done: false,
        })
    }

    fn recompute_free_positions(&mut self) {
        self.free_pos.clear();
        for (i, &pi) in self.pivots.iter().enumerate() {
            for c in (pi + 1)..self.l {
                if !self.pivots.contains(&c) {
                    self.free_pos.push((i, c));
                }
            }
        }
        self.free_vals = vec![0; self.free_pos.len()];
    }

    fn emit(&self) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![0u64; self.l]; self.r];
        for (i, &pi) in self.pivots.iter().enumerate() {
            rows[i][pi] = 1;
        }
        for (&(i, c), &v) in self.free_pos.iter().zip(&self.free_vals) {
            rows[i][c] = v;
        }
        rows
    }

    fn advance_pivots(&mut self) -> bool {
        // next r-combination of {0..l-1} in lexicographic order
        let r = self.r;
        let mut i = r;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.pivots[i] < self.l - r + i {
                self.pivots[i] += 1;
                for j in (i + 1)..r {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Vec<Vec<u64>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.recompute_free_positions();
            if self.r == 0 {
                self.done = true;
                return Some(Vec::new());
            }
            return Some(self.emit());
        }
        // odometer over the free entries
        for idx in 0..self.free_vals.len() {
            self.free_vals[idx] += 1;
            if self.free_vals[idx] < self.p {
                return Some(self.emit());
            }
            self.free_vals[idx] = 0;
        }
        if self.advance_pivots() {
            self.recompute_free_positions();
            return Some(self.emit());
        }
        self.done = true;
        None
    }
}

/// Enumerate r-dimensional subspaces of the span of `ambient` (assumed
/// linearly independent), yielding a basis of field elements per subspace.
pub fn enumerate_subspaces<'a>(
    ctx: &'a FieldCtx,
    ambient: &'a [FqElem],
    r: u32,
) -> Result<impl Iterator<Item = Vec<FqElem>> + 'a> {
    let iter = SubspaceIter::new(ctx.p(), ambient.len(), r as usize)?;
    Ok(iter.map(move |rows| {
        rows.iter()
            .map(|row| {
                let mut acc = ctx.zero();
                for (&c, b) in row.iter().zip(ambient) {
                    if c != 0 {
                        acc = ctx.add(&acc, &ctx.scale(c, b));
                    }
                }
                acc
            })
            .collect()
    }))
}

/// All p^r elements of the span of `basis`, by coefficient odometer.
pub fn span_elements(ctx: &FieldCtx, basis: &[FqElem]) -> Vec<FqElem> {
    let p = ctx.p();
    let mut out = vec![ctx.zero()];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for e in &out {
            for c in 0..p {
                next.push(ctx.add(e, &ctx.scale(c, b)));
            }
        }
        out = next;
    }
    out
}

/// Basis of the trace-zero hyperplane {x : Tr(x) = 0}.
pub fn trace_zero_basis(ctx: &FieldCtx) -> Vec<FqElem> {
    let m = ctx.m() as usize;
    let p = ctx.p();
    let unit = |i: usize| {
        let mut coeffs = vec![0u64; m];
        coeffs[i] = 1;
        ctx.decode(crate::ghw::encode_helper(&coeffs, p))
    };
    let traces: Vec<u64> = (0..m).map(|i| ctx.trace1(&unit(i))).collect();
    let pivot = traces
        .iter()
        .position(|&t| t != 0)
        .expect("trace is surjective onto F_p");
    let inv_tp = mod_inverse(traces[pivot], p);
    let mut basis = Vec::with_capacity(m - 1);
    for (i, &t) in traces.iter().enumerate() {
        if i == pivot {
            continue;
        }
        // e_i - (t_i / t_pivot) e_pivot
        let c = t * inv_tp % p;
        let v = ctx.sub(&unit(i), &ctx.scale(c, &unit(pivot)));
        debug_assert_eq!(ctx.trace1(&v), 0);
        basis.push(v);
    }
    basis
}

fn encode_helper(coeffs: &[u64], p: u64) -> usize {
    let mut code = 0usize;
    for &c in coeffs.iter().rev() {
        code = code * p as usize + c as usize;
    }
    code
}

fn mod_inverse(a: u64, p: u64) -> u64 {
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

pub fn monomial_basis(ctx: &FieldCtx) -> Vec<FqElem> {
    let m = ctx.m() as usize;
    (0..m)
        .map(|i| {
            let mut coeffs = vec![0u64; m];
            coeffs[i] = 1;
            ctx.decode(encode_helper(&coeffs, ctx.p()))
        })
        .collect()
}

/// The ambient message space the subcode correspondence runs over: all of
/// F_q in special mode (the codeword map is injective there), a complement
/// of the kernel F_p when d = 1.
///
/// Under the gcd(m, p) = 1 hypothesis Tr(1) != 0 and the trace-zero
/// hyperplane is such a complement; when p | m the prime field sits inside
/// the hyperplane and the monomial complement span(x, ..., x^{m-1}) is
/// used instead. Any complement yields the same set of subcodes.
pub fn message_ambient(ctx: &FieldCtx, d: &DefiningSet) -> Vec<FqElem> {
    match d.params.mode {
        DMode::Special => monomial_basis(ctx),
        DMode::One => {
            if ctx.trace1(&ctx.one()) != 0 {
                trace_zero_basis(ctx)
            } else {
                monomial_basis(ctx)[1..].to_vec()
            }
        }
    }
}

/// The ambient space the hyperplane-intersection route enumerates inside:
/// the defining set with 0 adjoined when d = 1 (the adapted identity runs
/// over hyperplanes of that (m-1)-dimensional space), all of F_q otherwise.
pub fn intersection_ambient(ctx: &FieldCtx, d: &DefiningSet) -> Vec<FqElem> {
    match d.params.mode {
        DMode::Special => monomial_basis(ctx),
        DMode::One => trace_zero_basis(ctx),
    }
}

fn check_rank(r: u32, max: u32) -> Result<()> {
    if r < 1 || r > max {
        return Err(Error::RankOutOfRange { r, max });
    }
    Ok(())
}

fn check_work(work: u128, ceiling: u64) -> Result<()> {
    if work > ceiling as u128 {
        return Err(Error::TooLarge {
            work: work.min(u64::MAX as u128) as u64,
            ceiling,
        });
    }
    Ok(())
}

/// Reduce `eval` over all subspace bases, splitting across threads.
fn reduce_over_subspaces<F>(
    ctx: &FieldCtx,
    ambient: &[FqElem],
    r: u32,
    threads: usize,
    eval: F,
    take_max: bool,
) -> Result<u64>
where
    F: Fn(&[FqElem]) -> Result<u64> + Sync,
{
    let bases: Vec<Vec<FqElem>> = enumerate_subspaces(ctx, ambient, r)?.collect();
    let pick = |a: u64, b: u64| if take_max { a.max(b) } else { a.min(b) };
    let fold = |chunk: &[Vec<FqElem>]| -> Result<Option<u64>> {
        let mut best: Option<u64> = None;
        for basis in chunk {
            let v = eval(basis)?;
            best = Some(best.map_or(v, |b| pick(b, v)));
        }
        Ok(best)
    };
    let merged: Result<Vec<Option<u64>>> = if threads <= 1 || bases.len() < 2 {
        fold(&bases).map(|b| vec![b])
    } else {
        let chunk_size = bases.len().div_ceil(threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = bases
                .chunks(chunk_size)
                .map(|chunk| scope.spawn(|| fold(chunk)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    let best = merged?
        .into_iter()
        .flatten()
        .reduce(pick)
        .expect("at least one subspace");
    Ok(best)
}

/// Direct oracle: min |Supp(U)| over r-dimensional message subspaces
/// (modulo the kernel).
pub fn ghw_subcode_bf(ctx: &FieldCtx, d: &DefiningSet, r: u32, cfg: &GhwConfig) -> Result<u64> {
    let ambient = message_ambient(ctx, d);
    check_rank(r, ambient.len() as u32)?;
    let count = gaussian_binomial(ctx.p(), ambient.len() as u32, r);
    check_work(count * (ctx.p() as u128).pow(r), cfg.ceiling)?;
    let n = d.len() as u64;
    let ord = ctx.q() - 1;
    let dlogs = d.dlogs();
    reduce_over_subspaces(
        ctx,
        &ambient,
        r,
        cfg.threads,
        |basis| {
            let logs: Vec<u64> = basis
                .iter()
                .map(|a| ctx.dlog(a).expect("basis elements are nonzero"))
                .collect();
            let mut zeros = 0u64;
            'coord: for &lx in dlogs {
                for &la in &logs {
                    if ctx.trace1_of_alpha_pow((la + lx) % ord) != 0 {
                        continue 'coord;
                    }
                }
                zeros += 1;
            }
            Ok(n - zeros)
        },
        false,
    )
}

/// Hyperplane route: d_r = n - max |D intersect H| over H of codimension r
/// in the ambient correspondence space.
pub fn ghw_hyperplane(ctx: &FieldCtx, d: &DefiningSet, r: u32, cfg: &GhwConfig) -> Result<u64> {
    let ambient = intersection_ambient(ctx, d);
    let l = ambient.len() as u32;
    check_rank(r, l)?;
    let co_r = l - r;
    let count = gaussian_binomial(ctx.p(), l, co_r);
    check_work(count * (ctx.p() as u128).pow(co_r), cfg.ceiling)?;
    let mut present = vec![false; ctx.q() as usize];
    for x in d.elements() {
        present[ctx.encode(x)] = true;
    }
    let n = d.len() as u64;
    let max_hit = reduce_over_subspaces(
        ctx,
        &ambient,
        co_r,
        cfg.threads,
        |basis| {
            let hits = span_elements(ctx, basis)
                .iter()
                .filter(|e| present[ctx.encode(e)])
                .count();
            Ok(hits as u64)
        },
        true,
    )?;
    Ok(n - max_hit)
}

/// Character-sum route: d_r = n - max N(H_r) where N(H_r) counts the
/// coordinates annihilated by every functional in H_r, evaluated exactly
/// from trace-fiber counts in Z[zeta_p].
pub fn ghw_charsum(ctx: &FieldCtx, d: &DefiningSet, r: u32, cfg: &GhwConfig) -> Result<u64> {
    let ambient = message_ambient(ctx, d);
    let l = ambient.len() as u32;
    check_rank(r, l)?;
    let count = gaussian_binomial(ctx.p(), l, r);
    let p = ctx.p();
    let q = ctx.q();
    let n = d.len() as u64;
    check_work(
        count * (p as u128).pow(r) + q as u128 * n as u128,
        cfg.ceiling,
    )?;

    // fiber[enc(a)][t] = #{x in D : Tr(ax) = t}
    let ord = q - 1;
    let mut fibers = vec![vec![0u64; p as usize]; q as usize];
    fibers[ctx.encode(&ctx.zero())][0] = n;
    for la in 0..ord {
        let enc = ctx.encode(ctx.antilog_ref(la));
        for &lx in d.dlogs() {
            fibers[enc][ctx.trace1_of_alpha_pow((la + lx) % ord) as usize] += 1;
        }
    }

    let pr = p.pow(r);
    let max_n = reduce_over_subspaces(
        ctx,
        &ambient,
        r,
        cfg.threads,
        |basis| {
            let mut counts = vec![0u64; p as usize];
            for a in span_elements(ctx, basis) {
                if a.is_zero() {
                    continue;
                }
                for (acc, &c) in counts.iter_mut().zip(&fibers[ctx.encode(&a)]) {
                    *acc += c;
                }
            }
            let sum = CycInt::from_counts(p, &counts)?
                .as_integer()
                .ok_or(Error::NonIntegerN)?;
            let numer = n as i64 + sum;
            if numer < 0 || !(numer as u64).is_multiple_of(pr) {
                return Err(Error::NonIntegerN);
            }
            Ok(numer as u64 / pr)
        },
        true,
    )?;
    Ok(n - max_n)
}

/// Closed formulas for the hierarchy in both modes.
pub fn ghw_closed(ctx: &FieldCtx, params: &DModeParams, r: u32) -> Result<u64> {
    let p = ctx.p();
    let m = ctx.m();
    match params.mode {
        DMode::One => {
            check_rank(r, m - 1)?;
            Ok(p.pow(m - 1) - p.pow(m - 1 - r))
        }
        DMode::Special => {
            check_rank(r, m)?;
            let s = params.s.expect("special mode always carries s");
            let first = |r: u32| -> Result<u64> {
                // p^s (2p^s + 1 - p) / (p+1) * (1 - p^{-r})
                let ps = (p as u128).pow(s);
                let numer = ps
                    * (2 * ps + 1 - p as u128)
                    * ((p as u128).pow(r) - 1);
                let denom = (p as u128 + 1) * (p as u128).pow(r);
                if !numer.is_multiple_of(denom) {
                    return Err(Error::NotExactlyDivisible);
                }
                u64::try_from(numer / denom).map_err(|_| Error::Overflow)
            };
            let second = |r: u32| -> u64 { 2 * (ctx.q() - 1) / (p + 1) + 1 - p.pow(m - r) };
            if r < s {
                first(r)
            } else if r > s {
                Ok(second(r))
            } else {
                // both branches apply at r = s and must agree
                let a = first(r)?;
                let b = second(r);
                if a != b {
                    return Err(Error::InconsistentParams(format!(
                        "branch overlap mismatch at r = s: {a} vs {b}"
                    )));
                }
                Ok(a)
            }
        }
    }
}

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Closed,
    Hyperplane,
    Charsum,
    Subcode,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Closed,
        Method::Hyperplane,
        Method::Charsum,
        Method::Subcode,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Hyperplane => "hyperplane",
            Method::Charsum => "charsum",
            Method::Subcode => "subcode",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Method, String> {
        match s {
            "closed" => Ok(Method::Closed),
            "hyperplane" => Ok(Method::Hyperplane),
            "charsum" => Ok(Method::Charsum),
            "subcode" => Ok(Method::Subcode),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhwRow {
    pub r: u32,
    /// method -> d_r, in Method::ALL order for the requested subset
    pub values: Vec<(Method, u64)>,
}

impl GhwRow {
    pub fn value(&self, method: Method) -> Option<u64> {
        self.values.iter().find(|(m, _)| *m == method).map(|(_, v)| *v)
    }

    pub fn agreed(&self) -> Option<u64> {
        let mut vals = self.values.iter().map(|(_, v)| *v);
        let first = vals.next()?;
        vals.all(|v| v == first).then_some(first)
    }
}

/// Per-instance record: one row per rank, agreement verdict, warnings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhwReport {
    pub rows: Vec<GhwRow>,
    pub agreement: bool,
    pub warnings: Vec<String>,
}

impl GhwReport {
    /// The consensus hierarchy, when every row agrees.
    pub fn hierarchy(&self) -> Option<Vec<u64>> {
        self.rows.iter().map(|row| row.agreed()).collect()
    }
}

/// Run the requested methods for r = 1 .. min(k, r_max) and arbitrate.
///
/// Strict monotonicity and the Singleton sandwich are theorems, so a
/// violation is reported as a hard error rather than a warning.
pub fn compute_hierarchy(
    ctx: &FieldCtx,
    d: &DefiningSet,
    summary: &CodeSummary,
    methods: &[Method],
    r_max: Option<u32>,
    cfg: &GhwConfig,
) -> Result<GhwReport> {
    let mut warnings = d.params.warnings();
    let k = summary.k;
    if k == 0 {
        warnings.push("degenerate code (k = 0): no weight hierarchy".into());
        return Ok(GhwReport {
            rows: Vec::new(),
            agreement: true,
            warnings,
        });
    }
    let top = r_max.map_or(k, |r| r.min(k));
    let mut rows = Vec::new();
    let mut agreement = true;
    for r in 1..=top {
        let mut values = Vec::new();
        for &method in Method::ALL.iter().filter(|m| methods.contains(m)) {
            let value = match method {
                Method::Closed => ghw_closed(ctx, &d.params, r)?,
                Method::Hyperplane => ghw_hyperplane(ctx, d, r, cfg)?,
                Method::Charsum => ghw_charsum(ctx, d, r, cfg)?,
                Method::Subcode => ghw_subcode_bf(ctx, d, r, cfg)?,
            };
            values.push((method, value));
        }
        let row = GhwRow { r, values };
        if row.agreed().is_none() {
            agreement = false;
        }
        rows.push(row);
    }

    // theorem checks on every method's column
    for &method in Method::ALL.iter().filter(|m| methods.contains(m)) {
        let column: Vec<(u32, u64)> = rows
            .iter()
            .filter_map(|row| row.value(method).map(|v| (row.r, v)))
            .collect();
        for w in column.windows(2) {
            if w[0].1 >= w[1].1 {
                return Err(Error::BoundViolation(format!(
                    "{} hierarchy not strictly increasing at r = {}",
                    method.as_str(),
                    w[1].0
                )));
            }
        }
        for &(r, v) in &column {
            let lower = r as u64;
            let upper = summary.n - k as u64 + r as u64;
            if v < lower || v > upper {
                return Err(Error::BoundViolation(format!(
                    "{} d_{} = {} outside Singleton sandwich [{}, {}]",
                    method.as_str(),
                    r,
                    v,
                    lower,
                    upper
                )));
            }
        }
    }

    Ok(GhwReport {
        rows,
        agreement,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_defining_set, summarize};

    fn instance(p: u64, m: u32, mode: DMode) -> (FieldCtx, DefiningSet, CodeSummary) {
        let ctx = FieldCtx::build(p, m).unwrap();
        let params = DModeParams::new(&ctx, mode).unwrap();
        let d = build_defining_set(&ctx, params);
        let summary = summarize(&ctx, &d);
        (ctx, d, summary)
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 2, 1), 4);
        assert_eq!(gaussian_binomial(3, 6, 3), 33880);
        assert_eq!(gaussian_binomial(5, 4, 2), 806);
        assert_eq!(gaussian_binomial(3, 4, 0), 1);
        assert_eq!(gaussian_binomial(3, 4, 5), 0);
    }

    #[test]
    fn subspace_counts_match_gaussian_binomial() {
        for p in [3u64, 5] {
            for l in 0..=4u32 {
                for r in 0..=l {
                    let count = SubspaceIter::new(p, l as usize, r as usize).unwrap().count();
                    assert_eq!(
                        count as u128,
                        gaussian_binomial(p, l, r),
                        "p={p} l={l} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn subspaces_are_distinct_as_sets() {
        let ctx = FieldCtx::build(3, 3).unwrap();
        let ambient = message_ambient(
            &ctx,
            &build_defining_set(&ctx, DModeParams::new(&ctx, DMode::One).unwrap()),
        );
        // lines inside the 2-dimensional trace-zero plane
        let mut seen = std::collections::HashSet::new();
        for basis in enumerate_subspaces(&ctx, &ambient, 1).unwrap() {
            let mut span: Vec<usize> = span_elements(&ctx, &basis)
                .iter()
                .map(|e| ctx.encode(e))
                .collect();
            span.sort_unstable();
            assert!(seen.insert(span), "duplicate subspace");
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn rank_zero_yields_the_origin() {
        let ctx = FieldCtx::build(3, 2).unwrap();
        let ambient = vec![ctx.one(), ctx.alpha().clone()];
        let all: Vec<_> = enumerate_subspaces(&ctx, &ambient, 0).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn hierarchy_3_3_d1_all_methods() {
        let (ctx, d, summary) = instance(3, 3, DMode::One);
        let cfg = GhwConfig::default();
        for (r, expect) in [(1u32, 6u64), (2, 8)] {
            assert_eq!(ghw_closed(&ctx, &d.params, r).unwrap(), expect);
            assert_eq!(ghw_hyperplane(&ctx, &d, r, &cfg).unwrap(), expect);
            assert_eq!(ghw_charsum(&ctx, &d, r, &cfg).unwrap(), expect);
            assert_eq!(ghw_subcode_bf(&ctx, &d, r, &cfg).unwrap(), expect);
        }
        assert_eq!(summary.min_nonzero_weight(), Some(6));
    }

    #[test]
    fn hierarchy_3_2_special_all_methods() {
        let (ctx, d, summary) = instance(3, 2, DMode::Special);
        let cfg = GhwConfig::default();
        for (r, expect) in [(1u32, 2u64), (2, 4)] {
            assert_eq!(ghw_closed(&ctx, &d.params, r).unwrap(), expect);
            assert_eq!(ghw_hyperplane(&ctx, &d, r, &cfg).unwrap(), expect);
            assert_eq!(ghw_charsum(&ctx, &d, r, &cfg).unwrap(), expect);
            assert_eq!(ghw_subcode_bf(&ctx, &d, r, &cfg).unwrap(), expect);
        }
        assert_eq!(summary.min_nonzero_weight(), Some(2));
    }

    #[test]
    fn derived_instance_7_2_closed_vs_oracle() {
        let (ctx, d, _) = instance(7, 2, DMode::Special);
        let cfg = GhwConfig::default();
        for (r, expect) in [(1u32, 6u64), (2, 12)] {
            assert_eq!(ghw_closed(&ctx, &d.params, r).unwrap(), expect);
            assert_eq!(ghw_subcode_bf(&ctx, &d, r, &cfg).unwrap(), expect);
        }
    }

    #[test]
    fn closed_formula_3_6_d1_values() {
        let ctx = FieldCtx::build(3, 6).unwrap();
        let params = DModeParams::new(&ctx, DMode::One).unwrap();
        let got: Vec<u64> = (1..=5)
            .map(|r| ghw_closed(&ctx, &params, r).unwrap())
            .collect();
        assert_eq!(got, vec![162, 216, 234, 240, 242]);
        assert!(ghw_closed(&ctx, &params, 6).is_err());
    }

    #[test]
    fn closed_formula_3_6_special_values() {
        // carries a hypothesis-violation warning (gcd(6,3) != 1) but the
        // formula itself evaluates
        let ctx = FieldCtx::build(3, 6).unwrap();
        let params = DModeParams::new(&ctx, DMode::Special).unwrap();
        let got: Vec<u64> = (1..=6)
            .map(|r| ghw_closed(&ctx, &params, r).unwrap())
            .collect();
        assert_eq!(got, vec![234, 312, 338, 356, 362, 364]);
        assert_eq!(params.warnings().len(), 1);
    }

    #[test]
    fn hierarchy_report_agreement() {
        let (ctx, d, summary) = instance(3, 2, DMode::Special);
        let report = compute_hierarchy(
            &ctx,
            &d,
            &summary,
            &Method::ALL,
            None,
            &GhwConfig::default(),
        )
        .unwrap();
        assert!(report.agreement);
        assert_eq!(report.hierarchy(), Some(vec![2, 4]));
    }

    #[test]
    fn hierarchy_report_parallel_matches_serial() {
        let (ctx, d, summary) = instance(3, 4, DMode::One);
        let serial = compute_hierarchy(
            &ctx,
            &d,
            &summary,
            &Method::ALL,
            None,
            &GhwConfig {
                ceiling: DEFAULT_WORK_CEILING,
                threads: 1,
            },
        )
        .unwrap();
        let parallel = compute_hierarchy(
            &ctx,
            &d,
            &summary,
            &Method::ALL,
            None,
            &GhwConfig {
                ceiling: DEFAULT_WORK_CEILING,
                threads: 4,
            },
        )
        .unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn degenerate_code_reports_empty_hierarchy() {
        let (ctx, d, summary) = instance(5, 2, DMode::Special);
        let report = compute_hierarchy(
            &ctx,
            &d,
            &summary,
            &Method::ALL,
            None,
            &GhwConfig::default(),
        )
        .unwrap();
        assert!(report.rows.is_empty());
        assert!(report.agreement);
    }

    #[test]
    fn feasibility_ceiling_is_enforced() {
        let (ctx, d, _) = instance(3, 6, DMode::One);
        let tiny = GhwConfig {
            ceiling: 10,
            threads: 1,
        };
        assert!(matches!(
            ghw_subcode_bf(&ctx, &d, 2, &tiny),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(
            ghw_hyperplane(&ctx, &d, 2, &tiny),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn maximizing_hyperplane_value_in_d1_mode() {
        // max |D intersect H| over codim-r subspaces of the trace-zero
        // plane is p^{m-1-r} - 1
        for (p, m) in [(3u64, 3u32), (3, 4), (5, 3)] {
            let ctx = FieldCtx::build(p, m).unwrap();
            let params = DModeParams::new(&ctx, DMode::One).unwrap();
            let d = build_defining_set(&ctx, params);
            let cfg = GhwConfig::default();
            let n = d.len() as u64;
            for r in 1..m {
                let got = ghw_hyperplane(&ctx, &d, r, &cfg).unwrap();
                let max_hit = n - got;
                assert_eq!(max_hit, p.pow(m - 1 - r) - 1, "p={p} m={m} r={r}");
            }
        }
    }

    #[test]
    fn rank_bounds_are_checked() {
        let (ctx, d, _) = instance(3, 3, DMode::One);
        let cfg = GhwConfig::default();
        assert!(matches!(
            ghw_subcode_bf(&ctx, &d, 0, &cfg),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            ghw_subcode_bf(&ctx, &d, 3, &cfg),
            Err(Error::RankOutOfRange { .. })
        ));
    }
}
