//! Command-line front end. Machine output is JSON, one record per line, on
//! stdout; `--pretty` adds a human-readable table on stderr.
//!
//! Exit codes: 0 success, 1 a verification mismatch, 2 usage or input
//! error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arithmetic::{binomial_divides_pgl, minimal_simple_scan, ArithmeticError};
use crate::catalog::{
    element_from_word, element_words, groups_of_order, parse_group_spec, CatalogError,
};
use crate::cayley::{cayley_graph, CayleyError, ConnectionSet};
use crate::constructions::{
    difference_profiles_equal, dihedral_aut_search, dihedral_character_check, dihedral_pair,
    ConstructionError, X_S, X_T,
};
use crate::field::is_prime;
use crate::graph::Graph;
use crate::group::{automorphisms, Group, GroupError};
use crate::iso::{isomorphic_with, IsoError, IsoOptions};
use crate::search::{census, find_cospectral_mates, with_jobs, SearchError, SearchScope};
use crate::spectra::{char_poly_with_limit, eigenvalues_approx, SpectraError};
use crate::verify::{self, CheckReport, VerifyError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "cayley-spectra",
    version,
    about = "Cayley graphs, exact spectra and cospectral mates"
)]
struct Cli {
    /// Human-readable summary on stderr.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group structure.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Characteristic polynomial and approximate eigenvalues of a Cayley graph.
    Spectrum {
        #[arg(long)]
        group: String,
        /// Comma-separated words.
        #[arg(long)]
        set: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Cospectrality and isomorphism of two Cayley graphs, each `<spec>:<words>`.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Connected Cayley graphs over a group up to isomorphism.
    Census {
        #[arg(long)]
        group: String,
    },
    /// Cospectral non-isomorphic Cayley graphs over every built-in group of an order.
    Search {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// The 6-valent involution pair over D_2p.
    DihedralPair {
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    Arith {
        #[command(subcommand)]
        action: ArithAction,
    },
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Subcommand, Debug)]
enum GroupAction {
    /// Order, element-order histogram and |Aut|.
    Show { spec: String },
}

#[derive(Subcommand, Debug)]
enum ArithAction {
    /// C(p+1, (p+1)/2) against |PGL(2,p)| for odd primes up to --max.
    Pgl {
        #[arg(long)]
        max: u64,
    },
    /// Primes up to --max passing the factorization filter.
    MinimalSimple {
        #[arg(long)]
        max: u64,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Every fixture, census and acceptance check.
    Paper {
        /// A fixture table id, criterion name or criterion number.
        #[arg(long)]
        section: Option<String>,
    },
}

#[derive(Args, Debug)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Graph6,
}

/// Parses `argv` (program name first) and runs it against the process's
/// stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        pretty: cli.pretty,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            2
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    pretty: bool,
}

impl Ctx<'_> {
    fn emit(&mut self, v: &Value) -> Result<(), CliError> {
        writeln!(self.out, "{v}")?;
        Ok(())
    }

    fn say(&mut self, text: impl AsRef<str>) -> Result<(), CliError> {
        if self.pretty {
            writeln!(self.err, "{}", text.as_ref())?;
        }
        Ok(())
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<i32, CliError> {
    match cmd {
        Command::Group {
            action: GroupAction::Show { spec },
        } => group_show(&spec, ctx),
        Command::Spectrum { group, set, format } => spectrum(&group, &set, format.format, ctx),
        Command::Compare { a, b } => compare(&a, &b, ctx),
        Command::Census { group } => {
            let g = parse_group_spec(&group)?;
            let report = census(&g)?;
            ctx.say(format!(
                "{}: {} connected Cayley graphs",
                report.group, report.total
            ))?;
            for (d, c) in &report.per_degree {
                ctx.say(format!("  degree {d:>3}: {c}"))?;
            }
            ctx.emit(&json!(report))?;
            Ok(0)
        }
        Command::Search {
            order,
            connected,
            max_degree,
            jobs,
        } => search(order, connected, max_degree, jobs, ctx),
        Command::DihedralPair { prime, format } => dihedral(prime, format.format, ctx),
        Command::Arith { action } => arith(action, ctx),
        Command::Verify {
            target: VerifyTarget::Paper { section },
        } => verify_suite(section.as_deref(), ctx),
    }
}

/// A group spec and its connection set from `<spec>:<w1,w2,...>`.
fn parse_spec_and_words(text: &str) -> Result<(Group, ConnectionSet, Vec<String>), CliError> {
    let (spec, words) = text
        .rsplit_once(':')
        .ok_or_else(|| CliError::Input(format!("expected <spec>:<words>, got '{text}'")))?;
    let g = parse_group_spec(spec)?;
    let (s, words) = connection_set(&g, words)?;
    Ok((g, s, words))
}

fn connection_set(g: &Group, words: &str) -> Result<(ConnectionSet, Vec<String>), CliError> {
    let words: Vec<String> = words
        .split(',')
        .map(|w| w.trim().to_string())
        .filter(|w| !w.is_empty())
        .collect();
    let elems = words
        .iter()
        .map(|w| element_from_word(g, w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ConnectionSet::new(g, &elems)?, words))
}

fn group_show(spec: &str, ctx: &mut Ctx) -> Result<i32, CliError> {
    let g = parse_group_spec(spec)?;
    let hist = g.element_order_histogram();
    let aut = automorphisms(&g)?.order();
    ctx.say(format!(
        "{}: order {}, |Aut| = {aut}, element orders {hist:?}",
        g.label(),
        g.order()
    ))?;
    let words = element_words(&g);
    let gens: Vec<&str> = g.generators().iter().map(|&x| words[x].as_str()).collect();
    ctx.emit(&json!({
        "group": g.label(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "generators": gens,
        "element_orders": hist,
        "aut_order": aut,
    }))?;
    Ok(0)
}

fn spectrum(spec: &str, set: &str, format: Format, ctx: &mut Ctx) -> Result<i32, CliError> {
    let g = parse_group_spec(spec)?;
    let (s, words) = connection_set(&g, set)?;
    let graph = cayley_graph(&g, &s);
    if format == Format::Graph6 {
        writeln!(ctx.out, "{}", graph.to_graph6())?;
        return Ok(0);
    }
    let p = char_poly_with_limit(&graph, graph.n())?;
    let eig = eigenvalues_approx(&graph);
    ctx.say(format!("{} {{{}}}: {p}", g.label(), words.join(", ")))?;
    ctx.emit(&json!({
        "group": g.label(),
        "words": words,
        "elements": s.elements(),
        "vertices": graph.n(),
        "degree": s.len(),
        "connected": graph.is_connected(),
        "char_poly": p,
        "eigenvalues": eig,
    }))?;
    Ok(0)
}

fn iso_options(n: usize) -> IsoOptions {
    IsoOptions {
        max_vertices: n.max(IsoOptions::default().max_vertices),
        ..IsoOptions::default()
    }
}

fn compare(a: &str, b: &str, ctx: &mut Ctx) -> Result<i32, CliError> {
    let (ga, sa, wa) = parse_spec_and_words(a)?;
    let (gb, sb, wb) = parse_spec_and_words(b)?;
    let (x, y) = (cayley_graph(&ga, &sa), cayley_graph(&gb, &sb));
    let n = x.n().max(y.n());
    let (px, py) = (char_poly_with_limit(&x, n)?, char_poly_with_limit(&y, n)?);
    let cospectral = px == py;
    let iso = isomorphic_with(&x, &y, iso_options(n))?;
    ctx.say(format!(
        "cospectral: {cospectral}\nisomorphic: {}",
        iso.is_some()
    ))?;
    let side = |g: &Group, s: &ConnectionSet, w: &[String], graph: &Graph| {
        json!({
            "group": g.label(),
            "words": w,
            "elements": s.elements(),
            "vertices": graph.n(),
            "degree": s.len(),
            "connected": graph.is_connected(),
        })
    };
    let witnesses = if cospectral {
        json!({"char_poly": px, "isomorphism": iso})
    } else {
        json!({"char_poly_a": px, "char_poly_b": py, "isomorphism": iso})
    };
    ctx.emit(&json!({
        "a": side(&ga, &sa, &wa, &x),
        "b": side(&gb, &sb, &wb, &y),
        "cospectral": cospectral,
        "isomorphic": iso.is_some(),
        "witnesses": witnesses,
    }))?;
    Ok(0)
}

fn search(
    order: usize,
    connected: bool,
    max_degree: Option<usize>,
    jobs: Option<usize>,
    ctx: &mut Ctx,
) -> Result<i32, CliError> {
    let groups = groups_of_order(order)?;
    let labels: Vec<String> = groups.iter().map(|g| g.label().to_string()).collect();
    let mut scope = SearchScope::new(groups);
    if connected {
        scope = scope.connected_only();
    }
    if let Some(d) = max_degree {
        scope = scope.degrees(0, d);
    }
    let pairs = with_jobs(jobs, || find_cospectral_mates(&scope))??;
    ctx.say(format!("{} pairs over {}", pairs.len(), labels.join(", ")))?;
    for p in &pairs {
        ctx.say(format!(
            "  {} {{{}}}  ~  {} {{{}}}",
            p.first.group,
            p.first.words.join(", "),
            p.second.group,
            p.second.words.join(", ")
        ))?;
        ctx.emit(&json!(p))?;
    }
    Ok(0)
}

fn dihedral(p: u64, format: Format, ctx: &mut Ctx) -> Result<i32, CliError> {
    let pair = dihedral_pair(p)?;
    let a = cayley_graph(&pair.group, &pair.s);
    let b = cayley_graph(&pair.group, &pair.t);
    if format == Format::Graph6 {
        writeln!(ctx.out, "{}\n{}", a.to_graph6(), b.to_graph6())?;
        return Ok(0);
    }
    let n = a.n();
    let (pa, pb) = (char_poly_with_limit(&a, n)?, char_poly_with_limit(&b, n)?);
    let cospectral = pa == pb;
    let isomorphic = isomorphic_with(&a, &b, iso_options(n))?.is_some();
    let affine = dihedral_aut_search(p, &X_S, &X_T);
    let characters = dihedral_character_check(p, &X_S)? && dihedral_character_check(p, &X_T)?;
    ctx.say(format!(
        "D{}: cospectral {cospectral}, isomorphic {isomorphic}",
        2 * p
    ))?;
    let words = |xs: &[u64]| -> Vec<String> {
        xs.iter()
            .map(|&x| match x {
                0 => "a".to_string(),
                1 => "ab".to_string(),
                _ => format!("ab^{x}"),
            })
            .collect()
    };
    ctx.emit(&json!({
        "p": p,
        "group": format!("D{}", 2 * p),
        "x_s": X_S,
        "x_t": X_T,
        "s_words": words(&X_S),
        "t_words": words(&X_T),
        "cospectral": cospectral,
        "isomorphic": isomorphic,
        "char_poly": cospectral.then_some(pa),
        "difference_profiles_equal": difference_profiles_equal(&X_S, &X_T, p),
        "affine_map": affine,
        "character_check": characters,
    }))?;
    Ok(0)
}

fn arith(action: ArithAction, ctx: &mut Ctx) -> Result<i32, CliError> {
    match action {
        ArithAction::Pgl { max } => {
            for p in (3..=max).filter(|&p| is_prime(p)) {
                let r = binomial_divides_pgl(p)?;
                ctx.say(format!(
                    "p = {p}: C = {}, |PGL| = {}, divides {}",
                    r.binomial, r.pgl_order, r.divides
                ))?;
                ctx.emit(&json!({
                    "p": p,
                    "binomial": r.binomial.to_string(),
                    "pgl_order": r.pgl_order.to_string(),
                    "divides": r.divides,
                }))?;
            }
        }
        ArithAction::MinimalSimple { max } => {
            let primes = minimal_simple_scan(max)?;
            ctx.say(format!("{} primes up to {max}", primes.len()))?;
            ctx.emit(&json!({"max": max, "primes": primes}))?;
        }
    }
    Ok(0)
}

fn verify_suite(section: Option<&str>, ctx: &mut Ctx) -> Result<i32, CliError> {
    let reports: Vec<CheckReport> = match section {
        Some(s) => vec![verify::run_section(s)?],
        None => verify::run_all(),
    };
    let mut code = 0;
    for r in &reports {
        ctx.say(format!(
            "{:>2} {:<16} {} {:.3}s",
            r.criterion,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.elapsed.as_secs_f64()
        ))?;
        for m in &r.mismatches {
            ctx.say(format!(
                "     {}: expected {} got {}",
                m.item, m.expected, m.actual
            ))?;
        }
        if !r.passed {
            code = 1;
        }
        ctx.emit(&json!(r))?;
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("cayley-spectra").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["census", "--bogus"]).0, 2);
        assert_eq!(run_capture(&[]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn bad_input_exits_2() {
        let (code, _, err) = run_capture(&["spectrum", "--group", "C7", "--set", "a,z"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
        assert_eq!(run_capture(&["compare", "--a", "C7", "--b", "C7:a"]).0, 2);
    }

    #[test]
    fn dihedral_compare() {
        let (code, out, _) = run_capture(&[
            "compare",
            "--a",
            "D26:a,ab,ab^2,ab^6,ab^8,ab^11",
            "--b",
            "D26:a,ab^2,ab^4,ab^5,ab^10,ab^11",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["cospectral"], json!(true));
        assert_eq!(v["isomorphic"], json!(false));
    }

    #[test]
    fn compare_reports_witness() {
        let (_, out, _) = run_capture(&["compare", "--a", "C8:a,a^-1", "--b", "D8:a,ab"]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["isomorphic"], json!(true));
        assert_eq!(v["witnesses"]["isomorphism"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn census_and_group_show() {
        let (_, out, _) = run_capture(&["census", "--group", "C11"]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["total"], json!(7));
        let (_, out, _) = run_capture(&["group", "show", "Q8"]);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["aut_order"], json!(24));
        assert_eq!(v["element_orders"], json!({"1": 1, "2": 1, "4": 6}));
    }

    #[test]
    fn search_output_independent_of_jobs() {
        let base = run_capture(&["search", "--order", "12"]);
        for j in ["1", "3"] {
            assert_eq!(
                run_capture(&["search", "--order", "12", "--jobs", j]).1,
                base.1
            );
        }
        assert!(!base.1.is_empty());
    }

    #[test]
    fn graph6_output() {
        let (code, out, _) = run_capture(&[
            "spectrum", "--group", "C5", "--set", "a,a^-1", "--format", "graph6",
        ]);
        assert_eq!(code, 0);
        let g = Graph::from_graph6(out.trim()).unwrap();
        assert_eq!(g.edge_count(), 5);
        let (_, out, _) = run_capture(&["dihedral-pair", "--prime", "13", "--format", "graph6"]);
        assert_eq!(out.lines().count(), 2);
    }

    #[test]
    fn arith_records() {
        let (_, out, _) = run_capture(&["arith", "pgl", "--max", "13"]);
        let lines: Vec<Value> = out
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1]["p"], json!(5));
        assert_eq!(lines[1]["divides"], json!(true));
        let (_, out, _) = run_capture(&["arith", "minimal-simple", "--max", "1000"]);
        assert_eq!(out.trim(), r#"{"max":1000,"primes":[]}"#);
    }

    #[test]
    fn verify_section_exit_codes() {
        assert_eq!(
            run_capture(&["verify", "paper", "--section", "special"]).0,
            0
        );
        let (code, out, _) = run_capture(&["verify", "paper", "--section", "order-27"]);
        assert_eq!(code, 1);
        assert!(out.contains("order-27 table, row 3"));
        assert_eq!(run_capture(&["verify", "paper", "--section", "nope"]).0, 2);
    }
}
