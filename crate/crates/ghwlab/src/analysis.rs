//! End-to-end instance analysis (codes + ghw + bounds) and the diagnostic
//! dumps behind the CLI verbs. Output is fully deterministic: identical
//! configuration yields identical bytes, and the timing block reports
//! deterministic work counters rather than wall-clock time.

use crate::bounds::{evaluate_bounds, BoundReport};
use crate::charsums::{
    class_index, gaussian_period_bf, gaussian_period_closed_n2, omega_bf, omega_closed,
    omega_closed_as_cyc, OmegaParams,
};
use crate::codes::{build_defining_set, summarize, CodeSummary, DMode, DModeParams};
use crate::cyclo::quad_to_cyc;
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::ghw::{
    compute_hierarchy, gaussian_binomial, intersection_ambient, message_ambient, GhwConfig,
    GhwReport, Method,
};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<OutputFormat, String> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub p: u64,
    pub m: u32,
    pub d_mode: DMode,
    pub methods: Vec<Method>,
    pub r_max: Option<u32>,
    pub format: OutputFormat,
    pub threads: usize,
    pub ceiling: u64,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub p: u64,
    pub m: u32,
    pub d_mode: DMode,
    pub modulus: Vec<u64>,
    pub alpha: Vec<u64>,
    pub methods: Vec<Method>,
    pub summary: CodeSummary,
    pub ghw: GhwReport,
    pub bounds: BoundReport,
    pub warnings: Vec<String>,
    /// deterministic work counters, not wall time
    pub messages_swept: u64,
    pub subspace_work_units: u64,
}

impl Analysis {
    pub fn methods_agree(&self) -> bool {
        self.ghw.agreement
    }
}

/// The hierarchy the bound report is evaluated against: the consensus when
/// all methods agree, otherwise the most-authoritative available column
/// (brute force before formulas).
fn authoritative_hierarchy(report: &GhwReport) -> Vec<u64> {
    if let Some(h) = report.hierarchy() {
        return h;
    }
    for method in [
        Method::Subcode,
        Method::Hyperplane,
        Method::Charsum,
        Method::Closed,
    ] {
        let column: Vec<u64> = report
            .rows
            .iter()
            .filter_map(|row| row.value(method))
            .collect();
        if column.len() == report.rows.len() {
            return column;
        }
    }
    Vec::new()
}

pub fn analyze(cfg: &AnalysisConfig) -> Result<Analysis> {
    if cfg.methods.is_empty() {
        return Err(Error::InconsistentParams("no methods requested".into()));
    }
    if cfg.threads < 1 {
        return Err(Error::InconsistentParams("threads must be >= 1".into()));
    }
    let ctx = FieldCtx::build(cfg.p, cfg.m)?;
    let params = DModeParams::new(&ctx, cfg.d_mode)?;
    let d = build_defining_set(&ctx, params);
    let summary = summarize(&ctx, &d);
    let ghw_cfg = GhwConfig {
        ceiling: cfg.ceiling,
        threads: cfg.threads,
    };
    let ghw = compute_hierarchy(&ctx, &d, &summary, &cfg.methods, cfg.r_max, &ghw_cfg)?;
    let hierarchy = authoritative_hierarchy(&ghw);
    let bounds = evaluate_bounds(summary.n, summary.k, cfg.p, &hierarchy)?;

    let mut warnings = ghw.warnings.clone();
    let (theorem_n, theorem_k) = crate::codes::theorem_nk(&ctx, &params);
    if theorem_n != summary.n || theorem_k != summary.k {
        warnings.push(format!(
            "closed-form (n, k) = ({theorem_n}, {theorem_k}) disagrees with \
             enumerated ({}, {}); brute force is authoritative",
            summary.n, summary.k
        ));
    }

    let subspace_work_units = estimate_subspace_work(&ctx, &d, &ghw, &cfg.methods);
    Ok(Analysis {
        p: cfg.p,
        m: cfg.m,
        d_mode: cfg.d_mode,
        modulus: ctx.modulus().to_vec(),
        alpha: ctx.alpha().coeffs().to_vec(),
        methods: cfg.methods.clone(),
        summary,
        ghw,
        bounds,
        warnings,
        messages_swept: ctx.q(),
        subspace_work_units,
    })
}

fn estimate_subspace_work(
    ctx: &FieldCtx,
    d: &crate::codes::DefiningSet,
    report: &GhwReport,
    methods: &[Method],
) -> u64 {
    let p = ctx.p();
    let msg_dim = message_ambient(ctx, d).len() as u32;
    let int_dim = intersection_ambient(ctx, d).len() as u32;
    let mut work: u128 = 0;
    for row in &report.rows {
        let r = row.r;
        for &method in methods {
            work += match method {
                Method::Closed => 1,
                Method::Subcode | Method::Charsum => {
                    gaussian_binomial(p, msg_dim, r) * (p as u128).pow(r)
                }
                Method::Hyperplane => {
                    gaussian_binomial(p, int_dim, int_dim - r) * (p as u128).pow(int_dim - r)
                }
            };
        }
    }
    work.min(u64::MAX as u128) as u64
}

// --- rendering ---

pub fn render(analysis: &Analysis) -> Value {
    let mut params = Map::new();
    params.insert("p".into(), json!(analysis.p));
    params.insert("m".into(), json!(analysis.m));
    params.insert("d_mode".into(), json!(analysis.d_mode.as_str()));
    params.insert("modulus".into(), json!(analysis.modulus));
    params.insert("alpha".into(), json!(analysis.alpha));

    let mut code = Map::new();
    code.insert("n".into(), json!(analysis.summary.n));
    code.insert("k".into(), json!(analysis.summary.k));
    let dist: Vec<Value> = analysis
        .summary
        .weight_distribution
        .iter()
        .map(|(w, c)| json!([w, c]))
        .collect();
    code.insert("weight_distribution".into(), json!(dist));

    let mut ghw = Map::new();
    for row in &analysis.ghw.rows {
        let mut per_method = Map::new();
        for (method, value) in &row.values {
            per_method.insert(method.as_str().into(), json!(value));
        }
        ghw.insert(row.r.to_string(), Value::Object(per_method));
    }

    let mut bounds = Map::new();
    bounds.insert("degenerate".into(), json!(analysis.bounds.degenerate));
    bounds.insert("mds_ranks".into(), json!(analysis.bounds.mds_ranks));
    let rows: Vec<Value> = analysis
        .bounds
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            obj.insert("r".into(), json!(row.r));
            obj.insert("d_r".into(), json!(row.d_r));
            obj.insert("singleton_upper".into(), json!(row.singleton_upper));
            obj.insert("plotkin_like".into(), json!(row.plotkin_like));
            obj.insert("griesmer_like".into(), json!(row.griesmer_like));
            obj.insert("meets_plotkin".into(), json!(row.meets_plotkin));
            obj.insert("meets_griesmer".into(), json!(row.meets_griesmer));
            obj.insert("is_r_mds".into(), json!(row.is_r_mds));
            Value::Object(obj)
        })
        .collect();
    bounds.insert("rows".into(), json!(rows));

    let mut timing = Map::new();
    timing.insert("messages_swept".into(), json!(analysis.messages_swept));
    timing.insert(
        "subspace_work_units".into(),
        json!(analysis.subspace_work_units),
    );

    let mut root = Map::new();
    root.insert("params".into(), Value::Object(params));
    root.insert("code".into(), Value::Object(code));
    root.insert("ghw".into(), Value::Object(ghw));
    root.insert("bounds".into(), Value::Object(bounds));
    root.insert("warnings".into(), json!(analysis.warnings));
    root.insert("timing".into(), Value::Object(timing));
    Value::Object(root)
}

pub fn render_json(analysis: &Analysis) -> String {
    let mut out = serde_json::to_string_pretty(&render(analysis)).expect("no non-finite values");
    out.push('\n');
    out
}

pub fn render_csv(analysis: &Analysis) -> String {
    let mut out = String::from(
        "r,d_closed,d_hyperplane,d_charsum,d_subcode,singleton_up,plotkin,griesmer,flags\n",
    );
    for row in &analysis.ghw.rows {
        let cell = |m: Method| {
            row.value(m)
                .map(|v| v.to_string())
                .unwrap_or_default()
        };
        let bound_row = analysis.bounds.rows.iter().find(|b| b.r == row.r);
        let (su, pl, gr, flags) = match bound_row {
            Some(b) => {
                let mut flags = Vec::new();
                if b.meets_plotkin {
                    flags.push("P");
                }
                if b.meets_griesmer {
                    flags.push("G");
                }
                if b.is_r_mds {
                    flags.push("MDS");
                }
                (
                    b.singleton_upper.to_string(),
                    b.plotkin_like.to_string(),
                    b.griesmer_like.to_string(),
                    flags.join(";"),
                )
            }
            None => (String::new(), String::new(), String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            row.r,
            cell(Method::Closed),
            cell(Method::Hyperplane),
            cell(Method::Charsum),
            cell(Method::Subcode),
            su,
            pl,
            gr,
            flags
        ));
    }
    out
}

pub fn render_table(analysis: &Analysis) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "code C_D over F_{}  (q = {}^{}, d-mode = {})\n",
        analysis.p, analysis.p, analysis.m, analysis.d_mode.as_str()
    ));
    out.push_str(&format!(
        "modulus = {:?}  alpha = {:?}\n",
        analysis.modulus, analysis.alpha
    ));
    out.push_str(&format!(
        "n = {}, k = {}\n",
        analysis.summary.n, analysis.summary.k
    ));
    if analysis.bounds.degenerate {
        out.push_str("degenerate code (empty defining set)\n");
    }
    let dist: Vec<String> = analysis
        .summary
        .weight_distribution
        .iter()
        .map(|(w, c)| format!("{w}:{c}"))
        .collect();
    out.push_str(&format!("weights  {}\n", dist.join("  ")));
    if !analysis.ghw.rows.is_empty() {
        out.push_str("  r  closed  hyperplane  charsum  subcode  singleton  plotkin  griesmer  flags\n");
        for row in &analysis.ghw.rows {
            let cell = |m: Method| {
                row.value(m)
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "-".into())
            };
            let b = analysis.bounds.rows.iter().find(|b| b.r == row.r);
            let mut flags = Vec::new();
            if let Some(b) = b {
                if b.meets_plotkin {
                    flags.push("P");
                }
                if b.meets_griesmer {
                    flags.push("G");
                }
                if b.is_r_mds {
                    flags.push("MDS");
                }
            }
            out.push_str(&format!(
                "{:>3}  {:>6}  {:>10}  {:>7}  {:>7}  {:>9}  {:>7}  {:>8}  {}\n",
                row.r,
                cell(Method::Closed),
                cell(Method::Hyperplane),
                cell(Method::Charsum),
                cell(Method::Subcode),
                b.map(|b| b.singleton_upper.to_string()).unwrap_or_default(),
                b.map(|b| b.plotkin_like.to_string()).unwrap_or_default(),
                b.map(|b| b.griesmer_like.to_string()).unwrap_or_default(),
                flags.join(";")
            ));
        }
        out.push_str(&format!(
            "method agreement: {}\n",
            if analysis.ghw.agreement { "yes" } else { "NO" }
        ));
    }
    for w in &analysis.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

pub fn render_format(analysis: &Analysis, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => render_table(analysis),
        OutputFormat::Json => render_json(analysis),
        OutputFormat::Csv => render_csv(analysis),
    }
}

// --- diagnostic dumps ---

/// Modulus, primitive element and (optionally) the trace-fiber histogram.
pub fn field_report(p: u64, m: u32, fibers: bool) -> Result<String> {
    let ctx = FieldCtx::build(p, m)?;
    let mut out = format!(
        "F_{{{p}^{m}}}: modulus = {:?}, alpha = {:?}\n",
        ctx.modulus(),
        ctx.alpha().coeffs()
    );
    if fibers {
        let mut counts = vec![0u64; p as usize];
        for x in ctx.all_elements() {
            counts[ctx.trace1(&x) as usize] += 1;
        }
        out.push_str("trace fibers:");
        for (t, c) in counts.iter().enumerate() {
            out.push_str(&format!("  {t}:{c}"));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Gaussian periods of order N, brute force always and (for N = 2) the
/// closed form next to it with an equality verdict.
pub fn periods_report(p: u64, m: u32, n_order: u64) -> Result<String> {
    let ctx = FieldCtx::build(p, m)?;
    let mut out = String::new();
    for i in 0..n_order {
        let brute = gaussian_period_bf(&ctx, n_order, i)?;
        out.push_str(&format!("eta_{i} = {:?}", brute.coeffs()));
        if let Some(v) = brute.as_integer() {
            out.push_str(&format!(" = {v}"));
        }
        if n_order == 2 {
            let closed = gaussian_period_closed_n2(p, m, i);
            let verdict = if quad_to_cyc(&closed)? == brute {
                "closed=brute"
            } else {
                "closed!=brute"
            };
            out.push_str(&format!(
                "  closed = ({} + {} sqrt(p*))/2  [{verdict}]",
                closed.u, closed.v
            ));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Omega(a, b) brute-force and closed-form with an equality verdict.
/// `b_log` of None means b = 0.
pub fn omega_report(p: u64, m: u32, m_order: u64, a_log: u64, b_log: Option<u64>) -> Result<String> {
    let ctx = FieldCtx::build(p, m)?;
    let a = ctx.alpha_pow(a_log as i128);
    let b = match b_log {
        Some(j) => ctx.alpha_pow(j as i128),
        None => ctx.zero(),
    };
    let brute = omega_bf(&ctx, &a, &b, m_order)?;
    let params = OmegaParams::new(&ctx, m_order)?;
    let closed = omega_closed(&ctx, &params, &a, &b)?;
    let rendered = omega_closed_as_cyc(p, &closed)?;
    let verdict = if rendered == brute {
        "closed=brute"
    } else {
        "closed!=brute"
    };
    let t = class_index(&ctx, params.d, &a)?;
    let mut out = format!(
        "Omega(a, b) with a = alpha^{a_log}, b = {}, M = {m_order} (f = {}, h = {}, d = {}, t = {t})\n",
        match b_log {
            Some(j) => format!("alpha^{j}"),
            None => "0".into(),
        },
        params.f,
        params.h,
        params.d
    );
    out.push_str(&format!("brute  = {:?}\n", brute.coeffs()));
    out.push_str(&format!(
        "closed = {} * eta_t {:?}{}\n",
        closed.period_coeff,
        closed.period.coeffs(),
        match &closed.spike {
            Some(s) => format!(" + {} zeta^{}", s.coeff, s.exponent),
            None => String::new(),
        }
    ));
    out.push_str(&format!("verdict: {verdict}\n"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(p: u64, m: u32, d_mode: DMode) -> AnalysisConfig {
        AnalysisConfig {
            p,
            m,
            d_mode,
            methods: Method::ALL.to_vec(),
            r_max: None,
            format: OutputFormat::Json,
            threads: 1,
            ceiling: crate::ghw::DEFAULT_WORK_CEILING,
        }
    }

    #[test]
    fn analyze_reference_8_2() {
        let analysis = analyze(&config(3, 3, DMode::One)).unwrap();
        assert_eq!((analysis.summary.n, analysis.summary.k), (8, 2));
        assert!(analysis.methods_agree());
        assert_eq!(analysis.ghw.hierarchy(), Some(vec![6, 8]));
        assert_eq!(analysis.bounds.mds_ranks, vec![2]);
    }

    #[test]
    fn analyze_degenerate() {
        let analysis = analyze(&config(5, 2, DMode::Special)).unwrap();
        assert_eq!((analysis.summary.n, analysis.summary.k), (0, 0));
        assert!(analysis.bounds.degenerate);
    }

    #[test]
    fn json_output_is_deterministic_and_round_trips() {
        let a = analyze(&config(3, 2, DMode::Special)).unwrap();
        let b = analyze(&config(3, 2, DMode::Special)).unwrap();
        let ja = render_json(&a);
        let jb = render_json(&b);
        assert_eq!(ja, jb);
        // re-serializing the parsed document is byte-identical
        let parsed: Value = serde_json::from_str(&ja).unwrap();
        let mut re = serde_json::to_string_pretty(&parsed).unwrap();
        re.push('\n');
        assert_eq!(ja, re);
        // fixed top-level key order
        let obj = parsed.as_object().unwrap();
        let keys: Vec<&String> = obj.keys().collect();
        assert_eq!(
            keys,
            ["params", "code", "ghw", "bounds", "warnings", "timing"]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .iter()
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn csv_has_one_row_per_rank() {
        let analysis = analyze(&config(3, 3, DMode::One)).unwrap();
        let csv = render_csv(&analysis);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 3); // header + 2 ranks
        assert!(lines[1].starts_with("1,6,6,6,6,"));
    }

    #[test]
    fn absent_methods_print_empty_cells() {
        let mut cfg = config(3, 3, DMode::One);
        cfg.methods = vec![Method::Closed, Method::Subcode];
        let analysis = analyze(&cfg).unwrap();
        let csv = render_csv(&analysis);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert!(lines[1].starts_with("1,6,,,6,"));
    }

    #[test]
    fn warnings_surface_the_3_6_discrepancy() {
        let mut cfg = config(3, 6, DMode::Special);
        cfg.methods = vec![Method::Closed];
        let analysis = analyze(&cfg).unwrap();
        assert!(analysis
            .warnings
            .iter()
            .any(|w| w.contains("gcd(m, p)")));
        assert!(analysis
            .warnings
            .iter()
            .any(|w| w.contains("disagrees")));
    }

    #[test]
    fn diagnostics_render() {
        let field = field_report(3, 1, true).unwrap();
        assert!(field.contains("alpha = [2]"));
        let periods = periods_report(3, 2, 2).unwrap();
        assert!(periods.contains("closed=brute"));
        let omega = omega_report(3, 2, 4, 0, Some(0)).unwrap();
        assert!(omega.contains("closed=brute"));
    }

    #[test]
    fn empty_method_list_is_rejected() {
        let mut cfg = config(3, 3, DMode::One);
        cfg.methods.clear();
        assert!(matches!(
            analyze(&cfg),
            Err(Error::InconsistentParams(_))
        ));
    }
}
