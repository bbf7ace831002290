//! The `qzeta` command-line front end.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::Error;
use crate::groups::{parse_group_literal, GroupAction};
use crate::monodromy::{yomdin_charpoly, yomdin_milnor};
use crate::rat::{fmt_rat, parse_rat, parse_rat_list, Rat};
use crate::resolution::{
    hj_resolve, hj_stratification, tetra_stratification, yomdin_stratification, Generated, YomdinParams,
};
use crate::strata_file::{parse_strata, print_strata, StrataFile};
use crate::symring::render::{json_rat, poly_json, poly_latex, zeta_json, zeta_latex};
use crate::symring::{ChiEnv, MotPoly, TopZeta, ZetaExpr};
use crate::tetra::{stringy_euler_tetra, TetraGroup, TetraParams};
use crate::zetacore::{
    gor_measure_origin, local_monomial_zeta, orb_measure_origin, stratified_zeta, SmallPolicy, Stratification,
    Stratum,
};

#[derive(Parser, Debug)]
#[command(name = "qzeta", version, about = "Motivic and topological zeta functions on quotient singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args, Debug, Default)]
struct OutputOpts {
    /// Print the topological zeta function.
    #[arg(long, global = true)]
    euler: bool,
    /// Print candidate poles and the poles of the topological zeta function.
    #[arg(long, global = true)]
    poles: bool,
    /// Expand in T = L^(-s) up to T^M.
    #[arg(long, global = true, value_name = "M")]
    series: Option<String>,
    /// Evaluate the series coefficients at L = P (needs --series).
    #[arg(long = "eval-L", global = true, value_name = "P")]
    eval_l: Option<String>,
    /// Value of a class symbol for --eval-L, as NAME=VALUE.
    #[arg(long = "sym", global = true, value_name = "NAME=VALUE")]
    sym: Vec<String>,
    /// Render as LaTeX.
    #[arg(long, global = true)]
    latex: bool,
    /// Render as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the stratification used to FILE.
    #[arg(long = "emit-strata", global = true, value_name = "FILE")]
    emit_strata: Option<PathBuf>,
    /// Accept groups with reflections; the result is then the integral over
    /// the quotient presentation rather than an intrinsic invariant.
    #[arg(long = "allow-nonsmall", global = true)]
    allow_nonsmall: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zeta function of a monomial divisor on a quotient `C^n / G`.
    Monomial {
        #[arg(long)]
        group: String,
        #[arg(long = "N", allow_hyphen_values = true)]
        n: String,
        #[arg(long = "nu", allow_hyphen_values = true)]
        nu: String,
    },
    /// Zeta function assembled from a strata file.
    Strata { file: PathBuf },
    /// Zeta function of `x^N1 y^N2` on `1/d(a,b)` through its Hirzebruch-Jung resolution.
    Hj {
        #[arg(long)]
        d: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long = "N")]
        n: String,
        #[arg(long = "nu")]
        nu: String,
        /// Compare with the zeta function computed directly on the quotient.
        #[arg(long)]
        check: bool,
    },
    /// The Yomdin-type surface `f_m + l^{m+k}` with `D_2 = (a - 1) L`.
    Yomdin {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        a: i64,
        /// Print the monodromy characteristic polynomial and the pole checks.
        #[arg(long)]
        monodromy: bool,
    },
    /// The tetrahedral quotient `C^3 / G_{d,q}` with `D_1 = (xyz)^N`.
    Tetra {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: u64,
        #[arg(long = "N", default_value = "1")]
        n: String,
        #[arg(long = "nu", default_value = "1")]
        nu: String,
        /// Print the stringy Euler number and compare with the conjugacy class count.
        #[arg(long)]
        stringy: bool,
    },
    /// Structure of a diagonal abelian group and its measures at the origin.
    Group {
        #[arg(long)]
        group: String,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn usage<T>(r: crate::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

/// What a subcommand produced before rendering.
struct Outcome {
    zeta: ZetaExpr,
    chi: ChiEnv,
    strata: StrataFile,
    notices: Vec<String>,
    extra: Vec<String>,
    extra_json: serde_json::Map<String, Value>,
    /// Failed checks turn the exit status into 1 after printing.
    failed: bool,
}

impl Outcome {
    fn new(zeta: ZetaExpr, strata: StrataFile, notices: Vec<String>) -> Self {
        let chi = strata.chi_env();
        Outcome { zeta, chi, strata, notices, extra: Vec::new(), extra_json: Default::default(), failed: false }
    }
}

fn policy(o: &OutputOpts) -> SmallPolicy {
    if o.allow_nonsmall { SmallPolicy::AllowNonSmall } else { SmallPolicy::Require }
}

fn nonsmall_notice(g: &GroupAction) -> String {
    format!("notice: {g} is not small; computing the integral over this presentation, which is not an invariant of the quotient")
}

fn gindex(g: &GroupAction, vals: &[Rat]) -> u64 {
    vals.iter()
        .fold(g.d_exp(), |acc, x| acc.lcm(&x.denom().to_u64().unwrap_or(1)))
}

fn monomial(group: &str, n: &str, nu: &str, o: &OutputOpts) -> Result<Outcome, CliError> {
    let g = parse_group_literal(group)?;
    let n_vec = usage(parse_rat_list(n))?;
    let nu_vec = usage(parse_rat_list(nu))?;
    let z = local_monomial_zeta(&g, &n_vec, &nu_vec, policy(o))?;
    let notices = if g.is_small() { vec![] } else { vec![nonsmall_notice(&g)] };
    let all: Vec<Rat> = n_vec.iter().chain(&nu_vec).cloned().collect();
    let r = gindex(&g, &all);
    let st = Stratum::new(MotPoly::one(), n_vec, nu_vec, g.clone());
    let s = Stratification::new(g.dimension(), r, vec![st])?;
    Ok(Outcome::new(z, StrataFile { strata: s, symbols: BTreeMap::new() }, notices))
}

fn from_strata(f: StrataFile, o: &OutputOpts) -> Result<Outcome, CliError> {
    let z = stratified_zeta(&f.strata, policy(o))?;
    let mut notices: Vec<String> = f.strata.warnings().into_iter().map(|w| format!("warning: {w}")).collect();
    for s in &f.strata.strata {
        if !s.group.is_small() {
            notices.push(nonsmall_notice(&s.group));
        }
    }
    Ok(Outcome::new(z, f, notices))
}

fn from_generated(g: Generated, o: &OutputOpts) -> Result<Outcome, CliError> {
    let notices: Vec<String> = g.notices.iter().map(|n| format!("notice: {n}")).collect();
    let mut out = from_strata(StrataFile::from_generated(&g), o)?;
    out.notices.splice(0..0, notices);
    Ok(out)
}

fn pair(s: &str, what: &str) -> Result<(Rat, Rat), CliError> {
    let v = usage(parse_rat_list(s))?;
    match v.as_slice() {
        [x, y] => Ok((x.clone(), y.clone())),
        _ => Err(CliError::Usage(format!("--{what} needs two comma separated values, got {s:?}"))),
    }
}

fn hj(d: u64, a: i64, b: i64, n: &str, nu: &str, check: bool, o: &OutputOpts) -> Result<Outcome, CliError> {
    let (n1, n2) = pair(n, "N")?;
    let (nu1, nu2) = pair(nu, "nu")?;
    let chain = hj_resolve(d, a, b)?;
    let s = hj_stratification(&chain, &n1, &n2, &nu1, &nu2)?;
    let mut out = from_strata(StrataFile { strata: s, symbols: BTreeMap::new() }, o)?;
    let kappa: Vec<String> = chain.kappa.iter().map(|k| k.to_string()).collect();
    out.extra.push(format!("self-intersections: -({})", kappa.join(", ")));
    out.extra_json.insert("kappa".into(), json!(chain.kappa));
    if check {
        let g = GroupAction::cyclic(d, vec![a, b])?;
        let direct = local_monomial_zeta(&g, &[n1, n2], &[nu1, nu2], SmallPolicy::AllowNonSmall)?;
        let equal = direct.equal(&out.zeta);
        out.failed = !equal;
        let verdict = if equal { "EQUAL" } else { "DIFFERENT" };
        out.extra.push(format!("cross-check vs quotient formula: {verdict}"));
        out.extra_json.insert("cross_check_equal".into(), json!(equal));
    }
    Ok(out)
}

fn yomdin(y: YomdinParams, monodromy: bool, o: &OutputOpts) -> Result<Outcome, CliError> {
    let mut out = from_generated(yomdin_stratification(&y)?, o)?;
    if monodromy {
        let c = yomdin_charpoly(&y);
        out.extra.push(format!("characteristic polynomial: {c}"));
        if let Some(e) = c.render_expanded() {
            out.extra.push(format!("expanded: {e}"));
        }
        out.extra.push(format!("degree: {} (Milnor number {})", c.degree(), yomdin_milnor(&y)));
        let mut checks = Vec::new();
        for p in y.listed_poles() {
            let ok = c.is_eigenvalue_pole(&p);
            out.extra.push(format!(
                "pole {} -> eigenvalue of order {}: {}",
                fmt_rat(&p),
                p.denom(),
                if ok { "yes" } else { "no" }
            ));
            checks.push(json!({ "pole": json_rat(&p), "eigenvalue": ok }));
        }
        let exps: serde_json::Map<String, Value> =
            c.exponents().iter().map(|(m, e)| (m.to_string(), json!(e))).collect();
        out.extra_json.insert(
            "monodromy".into(),
            json!({ "exponents": exps, "degree": c.degree(), "milnor": yomdin_milnor(&y), "pole_checks": checks }),
        );
    }
    Ok(out)
}

fn tetra(d: u64, q: u64, n: &str, nu: &str, stringy: bool, o: &OutputOpts) -> Result<Outcome, CliError> {
    let t = TetraParams::new(d, q)?;
    let n = usage(parse_rat(n))?;
    let nu = usage(parse_rat(nu))?;
    let mut out = from_generated(tetra_stratification(&t, &n, &nu)?, o)?;
    if stringy {
        let small = if t.is_small() { t } else { t.reduced() };
        let e = stringy_euler_tetra(&small)?;
        let classes = TetraGroup::build(small.d, small.q)?.conjugacy_count();
        let matches = Rat::from_integer(classes.into()) == e;
        out.failed = !matches;
        out.extra.push(fmt_rat(&e));
        out.extra.push(format!(
            "conjugacy classes: {classes} ({})",
            if matches { "match" } else { "MISMATCH" }
        ));
        out.extra_json.insert("stringy_euler".into(), json_rat(&e));
        out.extra_json.insert("conjugacy_classes".into(), json!(classes));
    }
    Ok(out)
}

fn group_info(text: &str, o: &OutputOpts, w: &mut dyn Write) -> Result<(), CliError> {
    let g = parse_group_literal(text)?;
    let (h, _) = g.small_reduce();
    let gor = gor_measure_origin(&g);
    let orb = orb_measure_origin(&g);
    let e_st = gor.specialize_chi(&ChiEnv::new())?;
    if o.json {
        let v = json!({
            "group": g.to_string(),
            "dimension": g.dimension(),
            "order": g.order(),
            "small": g.is_small(),
            "small_reduction": h.to_string(),
            "gorenstein_measure": poly_json(&gor),
            "orbifold_measure": poly_json(&orb),
            "stringy_euler": e_st.to_string(),
        });
        writeln!(w, "{v}").ok();
        return Ok(());
    }
    let render = |p: &MotPoly| if o.latex { poly_latex(p) } else { p.to_string() };
    let lines = [
        format!("group: {g}"),
        format!("dimension: {}", g.dimension()),
        format!("order: {}", g.order()),
        format!("small: {}", g.is_small()),
        format!("small reduction: {h}"),
        format!("gorenstein measure at origin: {}", render(&gor)),
        format!("orbifold measure at origin: {}", render(&orb)),
        format!("stringy euler number: {e_st}"),
    ];
    for l in lines {
        writeln!(w, "{l}").ok();
    }
    Ok(())
}

fn parse_sym(items: &[String]) -> Result<BTreeMap<String, Rat>, CliError> {
    items
        .iter()
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--sym expects NAME=VALUE, got {s:?}")))?;
            Ok((k.trim().to_string(), usage(parse_rat(v))?))
        })
        .collect()
}

/// Distinct `T` exponents of a series, ascending, with their coefficients.
fn t_coefficients(p: &MotPoly) -> Vec<(Rat, MotPoly)> {
    let mut ts: Vec<Rat> = p.terms().map(|(m, _)| m.t.clone()).collect();
    ts.sort();
    ts.dedup();
    ts.into_iter().map(|t| {
        let c = p.coefficient_of_t(&t);
        (t, c)
    }).collect()
}

fn render(out: &Outcome, o: &OutputOpts, w: &mut dyn Write) -> Result<(), CliError> {
    let top = || -> Result<TopZeta, CliError> { Ok(out.zeta.euler(&out.chi)?) };
    let series = match &o.series {
        Some(m) => Some(out.zeta.series(&usage(parse_rat(m))?)?),
        None => None,
    };
    let evaluated = match (&o.eval_l, &series) {
        (Some(p), Some(s)) => {
            let p = usage(parse_rat(p))?;
            let env = parse_sym(&o.sym)?;
            let mut rows = Vec::new();
            for (t, c) in t_coefficients(s) {
                rows.push((t, c.eval_l(&p, &env)?));
            }
            Some((p, rows))
        }
        _ => None,
    };
    if o.json {
        let mut v = serde_json::Map::new();
        v.insert("zeta".into(), zeta_json(&out.zeta));
        if o.euler {
            let t = top()?;
            v.insert("topological".into(), json!(t.to_string()));
        }
        if o.poles {
            let c: Vec<Value> = out.zeta.candidate_poles().iter().map(json_rat).collect();
            v.insert("candidate_poles".into(), Value::Array(c));
            if let Ok(t) = top() {
                let p: Vec<Value> =
                    t.poles().iter().map(|(s, e)| json!({ "pole": json_rat(s), "order": e })).collect();
                v.insert("poles".into(), Value::Array(p));
            }
        }
        if let Some(s) = &series {
            v.insert("series".into(), poly_json(s));
        }
        if let Some((p, rows)) = &evaluated {
            let r: Vec<Value> = rows.iter().map(|(t, c)| json!({ "T": json_rat(t), "value": json_rat(c) })).collect();
            v.insert("eval_L".into(), json!({ "L": json_rat(p), "coefficients": r }));
        }
        v.insert("notices".into(), json!(out.notices));
        for (k, x) in &out.extra_json {
            v.insert(k.clone(), x.clone());
        }
        writeln!(w, "{}", Value::Object(v)).ok();
        return Ok(());
    }
    for n in &out.notices {
        writeln!(w, "{n}").ok();
    }
    if o.latex {
        writeln!(w, "{}", zeta_latex(&out.zeta)).ok();
    } else {
        writeln!(w, "{}", out.zeta).ok();
    }
    if o.euler {
        let t = top()?;
        let body = if o.latex { t.to_latex() } else { t.to_string() };
        writeln!(w, "topological: {body}").ok();
    }
    if o.poles {
        let c: Vec<String> = out.zeta.candidate_poles().iter().map(fmt_rat).collect();
        writeln!(w, "candidate poles: {}", c.join(", ")).ok();
        match top() {
            Ok(t) => {
                let p: Vec<String> = t.poles().iter().map(|(s, e)| format!("{} (order {e})", fmt_rat(s))).collect();
                writeln!(w, "topological poles: {}", if p.is_empty() { "none".into() } else { p.join(", ") }).ok();
            }
            Err(CliError::Domain(e)) | Err(CliError::Usage(e)) => {
                writeln!(w, "topological poles: unavailable ({e})").ok();
            }
        }
    }
    if let Some(s) = &series {
        let body = if o.latex { poly_latex(s) } else { s.to_string() };
        writeln!(w, "series to T^{}: {body}", o.series.as_deref().unwrap_or_default()).ok();
    }
    if let Some((p, rows)) = &evaluated {
        writeln!(w, "coefficients at L = {}:", fmt_rat(p)).ok();
        for (t, c) in rows {
            writeln!(w, "  T^{}: {}", fmt_rat(t), fmt_rat(c)).ok();
        }
    }
    for l in &out.extra {
        writeln!(w, "{l}").ok();
    }
    Ok(())
}

fn dispatch(cli: Cli, w: &mut dyn Write) -> Result<bool, CliError> {
    let o = &cli.out;
    if o.eval_l.is_some() && o.series.is_none() {
        return Err(CliError::Usage("--eval-L needs --series".into()));
    }
    if o.json && o.latex {
        return Err(CliError::Usage("--json and --latex cannot be combined".into()));
    }
    let outcome = match &cli.command {
        Command::Monomial { group, n, nu } => monomial(group, n, nu, o)?,
        Command::Strata { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", file.display())))?;
            from_strata(parse_strata(&text)?, o)?
        }
        Command::Hj { d, a, b, n, nu, check } => hj(*d, *a, *b, n, nu, *check, o)?,
        Command::Yomdin { m, k, p, q, a, monodromy } => {
            yomdin(YomdinParams::new(*m, *k, *p, *q, *a)?, *monodromy, o)?
        }
        Command::Tetra { d, q, n, nu, stringy } => tetra(*d, *q, n, nu, *stringy, o)?,
        Command::Group { group } => {
            group_info(group, o, w)?;
            return Ok(true);
        }
    };
    if let Some(path) = &o.emit_strata {
        std::fs::write(path, print_strata(&outcome.strata))
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    render(&outcome, o, w)?;
    Ok(!outcome.failed)
}

/// Runs the command line and returns the exit status: 0 on success, 1 on a
/// domain error or failed check, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                write!(out, "{text}").ok();
            } else {
                write!(err, "{text}").ok();
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(CliError::Domain(m)) => {
            writeln!(err, "error: {m}").ok();
            1
        }
        Err(CliError::Usage(m)) => {
            writeln!(err, "usage error: {m}").ok();
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qzeta").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn monomial_half_turn() {
        let (code, out, _) = call(&["monomial", "--group", "(2;1,1)", "--N", "0,0", "--nu", "1,1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "L^-2 * (1 + L)\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["monomial", "--group", "(4;1,2)", "--N", "1,1", "--nu", "1,1"]).0, 1);
        let (code, out, _) = call(&["monomial", "--group", "(4;1,2)", "--N", "1,1", "--nu", "1,1", "--allow-nonsmall"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("notice:"));
        assert_eq!(call(&["monomial", "--group", "(2;1,1)"]).0, 2);
        assert_eq!(call(&["monomial", "--group", "(2;1,1)", "--N", "x", "--nu", "1,1"]).0, 2);
        assert_eq!(call(&["monomial", "--group", "(2;1,1)", "--N", "1,1", "--nu", "1,1", "--eval-L", "2"]).0, 2);
        assert_eq!(call(&["hj", "--d", "6", "--a", "2", "--b", "1", "--N", "1,1", "--nu", "1,1"]).0, 1);
    }

    #[test]
    fn shared_flags() {
        let (code, out, _) =
            call(&["monomial", "--group", "(1;0)", "--N", "1", "--nu", "1", "--euler", "--poles", "--series", "2", "--eval-L", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("topological: 1 / (s + 1)"));
        assert!(out.contains("candidate poles: -1"));
        assert!(out.contains("  T^1: 1/4"));
        let (code, out, _) = call(&["monomial", "--group", "(1;0)", "--N", "1", "--nu", "1", "--json", "--euler"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["topological"], "1 / (s + 1)");
    }

    #[test]
    fn hj_check_and_tetra_stringy() {
        let (code, out, _) = call(&["hj", "--d", "7", "--a", "1", "--b", "3", "--N", "1,1", "--nu", "1,1", "--check"]);
        assert_eq!(code, 0);
        assert!(out.contains("cross-check vs quotient formula: EQUAL"));
        let (code, out, _) = call(&["tetra", "--d", "3", "--q", "2", "--stringy"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert!(lines.contains(&"11"));
        assert!(lines.contains(&"conjugacy classes: 11 (match)"));
    }
}
