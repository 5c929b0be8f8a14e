//! Command-line front end for the origami toolkit.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use origami_core::descriptor::{Coord, GroupDesc, Witness};
use origami_core::numtheory::{progression_for_m, semidirect_exists};
use origami_core::oracle::decide;
use origami_core::origami::{one_cylinder, regular_origami};
use origami_core::search::tables::{AppendixAReport, GmRow};
use origami_core::search::{
    enumerate_regular, summary_gm, t_of_g, table_appendix_a, verify_appendix_b, BoundStatus, EnumLimits, TransBound,
};
use origami_core::sl2::{
    build_generating_pair, closure_order, commutator, mat_order, mw_generates, DEFAULT_CLOSURE_CAP,
};
use origami_core::Stratum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "origami", version, about = "Regular origamis, strata and translation counts")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    output: Format,
    /// Worker threads for parallel searches.
    #[arg(long, env = "ORIGAMI_WORKERS", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest group order materialized from a descriptor.
    #[arg(long, default_value_t = 1 << 20, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    closure_budget: u64,
    /// Largest square count handed to the exhaustive enumerator.
    #[arg(long, default_value_t = EnumLimits::default().max_n as u64, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    enum_budget: u64,
    /// Largest p for which SL(2, p) closures are computed.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    sl2_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a stratum contains a regular origami.
    StratumExists { stratum: String },
    /// Maximal translation count t(g) among genus-g origamis.
    TOfG {
        g: u64,
        /// Resolve undecided strata of group order up to N by enumeration.
        #[arg(long, default_value_t = 0)]
        budget: usize,
    },
    /// The one-cylinder origami of genus G with 2(G − 1) translations.
    OneCylinder { g: u64 },
    /// The regular origami of a group with a generating pair.
    RegularOrigami {
        #[arg(long)]
        group: String,
        /// Generator coordinates, e.g. `1,1` or `[1,0],[0,1]`.
        #[arg(long)]
        gens: String,
    },
    /// A pair in SL(2, P) with commutator of order D generating SL(2, P).
    PslPair { p: u64, d: u64 },
    /// Residues of the admissible primes for M.
    Progression {
        m: u64,
        /// Largest residue count produced.
        #[arg(long, default_value_t = 1 << 20)]
        max_residues: usize,
    },
    /// Whether some Z/m ⋊_d Z/n with mn = UL has derived subgroup of order U.
    SemidirectExists { u: u64, l: u64 },
    /// All regular origamis with N squares, up to isomorphism.
    Enumerate { n: usize },
    /// Reproduce a published table.
    #[command(subcommand)]
    Table(Table),
    /// Compare the semidirect criterion with exhaustive search.
    VerifyAppendixB { u_max: u64, l_max: u64 },
}

#[derive(Subcommand, Debug)]
enum Table {
    /// Values of t(g) and the PSL(2, p) genera.
    AppendixA {
        /// Restrict to these genera.
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<u64>>,
    },
    /// Classification of G(m) for m ≤ M.
    SummaryGm { m: u64 },
}

/// A command result in all three formats.
struct Report {
    json: Value,
    text: String,
    /// Header first.
    csv: Vec<Vec<String>>,
    mismatch: bool,
}

impl Report {
    fn new(json: Value, text: String, csv: Vec<Vec<String>>) -> Self {
        Report {
            json,
            text,
            csv,
            mismatch: false,
        }
    }

    fn render(&self, format: Format) -> Result<Vec<u8>> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_vec(&self.json)?;
                s.push(b'\n');
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s.into_bytes()
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row)?;
                }
                w.into_inner()?
            }
        })
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn cells<const N: usize>(xs: [&dyn ToString; N]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn header(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn stratum_exists(input: &str) -> Result<Report> {
    let stratum = match input.parse::<Stratum>() {
        Ok(s) => s,
        Err(e) => match Stratum::parse_lenient(input) {
            Ok(s) if s.as_uniform().is_none() && !s.is_empty() => s,
            _ => return Err(e.into()),
        },
    };
    let v = decide(&stratum)?;
    let status = to_json(&v.status)?.as_str().unwrap_or_default().to_string();
    let witness = v.witness.as_ref().map(|w| w.group.to_string()).unwrap_or_default();
    let reason = v.reason.map(|r| r.tag().to_string()).unwrap_or_default();
    let mut text = format!("{}: {status}", v.stratum);
    if !witness.is_empty() {
        let gens = v
            .witness
            .as_ref()
            .map(|w| format!("{}, {}", w.generators[0], w.generators[1]));
        text += &format!(" via {witness} with generators {}", gens.unwrap_or_default());
    }
    if !reason.is_empty() {
        text += &format!(" ({reason})");
    }
    let csv = vec![
        header(&["stratum", "status", "witness", "reason"]),
        cells([&v.stratum, &status, &witness, &reason]),
    ];
    Ok(Report::new(to_json(&v)?, text, csv))
}

fn bound_text(b: &TransBound) -> String {
    let value = match b.status {
        BoundStatus::Exact => b.lower.to_string(),
        BoundStatus::Interval => format!("[{}, {}]", b.lower, b.upper),
    };
    let mut text = format!(
        "g = {}: t(g) = {value}, m(g) = {}, stratum {}, witness {}",
        b.g,
        b.m,
        b.stratum(),
        b.witness
    );
    for blk in &b.blocking {
        let status = serde_json::to_value(blk.verdict.status).unwrap_or_default();
        text += &format!(
            "\n  m = {} (t = {}): {} {}",
            blk.m,
            blk.t,
            blk.verdict.stratum,
            status.as_str().unwrap_or_default()
        );
    }
    text
}

fn t_of_g_cmd(g: u64, budget: usize, enum_budget: usize) -> Result<Report> {
    let b = t_of_g(g, budget.min(enum_budget))?;
    let status = to_json(&b.status)?.as_str().unwrap_or_default().to_string();
    let csv = vec![
        header(&["g", "status", "lower", "upper", "m", "stratum", "witness"]),
        cells([&b.g, &status, &b.lower, &b.upper, &b.m, &b.stratum(), &b.witness]),
    ];
    Ok(Report::new(to_json(&b)?, bound_text(&b), csv))
}

fn one_cylinder_cmd(g: u64) -> Result<Report> {
    let o = one_cylinder(g)?;
    let t = o.translation_count();
    let json = json!({
        "g": g,
        "origami": o.to_string(),
        "stratum": o.stratum(),
        "translations": t,
    });
    let text = format!("g = {g}: {o}\nstratum {}, {t} translations", o.stratum());
    let csv = vec![
        header(&["g", "origami", "stratum", "translations"]),
        cells([&g, &o, &o.stratum(), &t]),
    ];
    Ok(Report::new(json, text, csv))
}

fn parse_gens(s: &str) -> Result<[Coord; 2]> {
    let coords: Vec<Coord> =
        serde_json::from_str(&format!("[{s}]")).with_context(|| format!("cannot parse generators {s:?}"))?;
    match <[Coord; 2]>::try_from(coords) {
        Ok(pair) => Ok(pair),
        Err(v) => bail!("expected two generators, got {}", v.len()),
    }
}

fn regular_origami_cmd(group: &str, gens: &str, budget: u64) -> Result<Report> {
    let desc: GroupDesc = group.parse()?;
    if desc.order() > budget as u128 {
        bail!("group order {} exceeds the closure budget {budget}", desc.order());
    }
    let w = Witness {
        group: desc,
        generators: parse_gens(gens)?,
    };
    let (g, x, y) = w.materialize()?;
    let o = regular_origami(&g, x, y)?;
    let c = g.element_order(g.commutator(x, y));
    let json = json!({
        "group": w.group,
        "generators": w.generators,
        "order": g.order(),
        "commutator_order": c,
        "stratum": o.stratum(),
        "genus": o.genus(),
        "origami": o.to_string(),
    });
    let text = format!(
        "{} with generators {}, {}: {} squares, commutator order {c}, stratum {}, genus {}\n{o}",
        w.group,
        w.generators[0],
        w.generators[1],
        g.order(),
        o.stratum(),
        o.genus()
    );
    let csv = vec![
        header(&["group", "order", "commutator_order", "stratum", "genus"]),
        cells([&w.group, &g.order(), &c, &o.stratum(), &o.genus()]),
    ];
    Ok(Report::new(json, text, csv))
}

fn psl_pair_cmd(p: u64, d: u64, cap: u64) -> Result<Report> {
    let (a, b) = build_generating_pair(p, d)?;
    let c = mat_order(&commutator(&a, &b)?)?;
    let generates = mw_generates(p, &a, &b)?;
    let closure = if p <= cap {
        Some(closure_order(p, &a, &b, cap)?)
    } else {
        None
    };
    let json = json!({
        "p": p,
        "d": d,
        "a": a.to_string(),
        "b": b.to_string(),
        "commutator_order": c,
        "generates": generates,
        "closure_order": closure,
    });
    let closure_s = closure.map(|n| n.to_string()).unwrap_or_else(|| "skipped".into());
    let text = format!(
        "p = {p}, d = {d}\nA = {a}\nB = {b}\nord([A, B]) = {c}, generates SL(2, {p}): {generates}, closure order {closure_s}"
    );
    let csv = vec![
        header(&["p", "d", "a", "b", "commutator_order", "generates", "closure_order"]),
        cells([&p, &d, &a, &b, &c, &generates, &closure_s]),
    ];
    Ok(Report::new(json, text, csv))
}

fn progression_cmd(m: u64, max_residues: usize) -> Result<Report> {
    let sys = progression_for_m(m, max_residues)?;
    let json = json!({ "modulus": sys.modulus, "residues": sys.residues });
    let list: Vec<String> = sys.residues.iter().map(u64::to_string).collect();
    let text = format!("p ≡ {} (mod {})", list.join(", "), sys.modulus);
    let mut csv = vec![header(&["modulus", "residue"])];
    csv.extend(sys.residues.iter().map(|r| cells([&sys.modulus, r])));
    Ok(Report::new(json, text, csv))
}

fn semidirect_cmd(u: u64, l: u64) -> Result<Report> {
    let spec = semidirect_exists(u, l)?;
    let json = json!({ "u": u, "l": l, "exists": spec.is_some(), "witness": spec });
    let (text, row) = match spec {
        Some(s) => (
            format!("u = {u}, l = {l}: exists, Z/{} ⋊_{} Z/{}", s.m, s.d, s.n),
            cells([&u, &l, &true, &s.m, &s.n, &s.d]),
        ),
        None => (
            format!("u = {u}, l = {l}: none"),
            cells([&u, &l, &false, &"", &"", &""]),
        ),
    };
    let csv = vec![header(&["u", "l", "exists", "m", "n", "d"]), row];
    Ok(Report::new(json, text, csv))
}

fn enumerate_cmd(n: usize, enum_budget: usize) -> Result<Report> {
    let limits = EnumLimits {
        max_n: enum_budget,
        ..EnumLimits::default()
    };
    let ws = enumerate_regular(n, limits)?;
    let mut text = format!("{} regular origamis with {n} squares", ws.len());
    let mut csv = vec![header(&["n", "stratum", "genus", "group", "origami"])];
    for w in &ws {
        text += &format!(
            "\n{:<14} genus {:<3} {:<28} {}",
            w.stratum.to_string(),
            w.genus,
            w.group,
            w.origami
        );
        csv.push(cells([&n, &w.stratum, &w.genus, &w.group, &w.origami]));
    }
    Ok(Report::new(to_json(&ws)?, text, csv))
}

fn appendix_a_cmd(rows: Option<&[u64]>) -> Result<Report> {
    let r: AppendixAReport = table_appendix_a(rows)?;
    let mut text = format!(
        "{:>4}  {:>12}  {:>4}  {:<10}  {:<24}  {}\n",
        "g", "t(g)", "m(g)", "stratum", "witness", "agreement"
    );
    let mut csv = vec![header(&[
        "table",
        "g",
        "status",
        "lower",
        "upper",
        "m",
        "stratum",
        "witness",
        "expected_t",
        "expected_group",
        "agreement",
    ])];
    for row in &r.t_of_g {
        let b = &row.computed;
        let value = match b.status {
            BoundStatus::Exact => b.lower.to_string(),
            BoundStatus::Interval => format!("[{}, {}]", b.lower, b.upper),
        };
        let agreement = to_json(&row.agreement)?.as_str().unwrap_or_default().to_string();
        let note = row
            .table_claims
            .map(|t| format!(" (table claims {t})"))
            .unwrap_or_default();
        text += &format!(
            "{:>4}  {:>12}  {:>4}  {:<10}  {:<24}  {agreement}{note}\n",
            row.g,
            value,
            b.m.to_string(),
            row.stratum.to_string(),
            b.witness.to_string()
        );
        let status = to_json(&b.status)?.as_str().unwrap_or_default().to_string();
        csv.push(cells([
            &"t_of_g",
            &row.g,
            &status,
            &b.lower,
            &b.upper,
            &b.m,
            &row.stratum,
            &b.witness,
            &row.expected_t,
            &row.expected_group,
            &agreement,
        ]));
    }
    if !r.psl.is_empty() {
        text += &format!("\n{:>4}  {:>7}  {:>17}  {:>17}  {}\n", "m", "p", "g", "n", "agrees");
    }
    for row in &r.psl {
        text += &format!(
            "{:>4}  {:>7}  {:>17}  {:>17}  {}\n",
            row.m, row.p, row.g, row.n, row.agrees
        );
        csv.push(cells([
            &"psl",
            &row.g,
            &"",
            &row.n,
            &"",
            &row.m,
            &"",
            &format!("psl({})", row.p),
            &row.expected.1,
            &"",
            &row.agrees,
        ]));
    }
    let mut report = Report::new(to_json(&r)?, text, csv);
    report.mismatch = r.mismatches() > 0;
    Ok(report)
}

fn summary_gm_cmd(m_max: u64) -> Result<Report> {
    let rows: Vec<GmRow> = summary_gm(m_max)?;
    let mut text = format!("{:>4}  {:<50}  {:<6}  {}\n", "m", "G(m)", "agrees", "basis");
    let mut csv = vec![header(&["m", "class", "expected", "agrees", "basis"])];
    for r in &rows {
        let agrees = r.agrees.map(|a| a.to_string()).unwrap_or_else(|| "-".into());
        text += &format!("{:>4}  {:<50}  {:<6}  {}\n", r.m, r.class.to_string(), agrees, r.basis);
        let expected = r.expected.map(|p| p.to_string()).unwrap_or_default();
        csv.push(cells([&r.m, &r.class, &expected, &agrees, &r.basis]));
    }
    let mut report = Report::new(to_json(&rows)?, text, csv);
    report.mismatch = rows.iter().any(|r| r.agrees == Some(false));
    Ok(report)
}

fn appendix_b_cmd(u_max: u64, l_max: u64) -> Result<Report> {
    let r = verify_appendix_b(u_max, l_max)?;
    let text = format!(
        "{} pairs (u odd ≤ {u_max}, l ≤ {l_max}), {} exist, {} disagreements, {} bad witnesses",
        r.pairs,
        r.exists,
        r.disagreements.len(),
        r.bad_witnesses.len()
    );
    let csv = vec![
        header(&["pairs", "exists", "disagreements", "bad_witnesses"]),
        cells([&r.pairs, &r.exists, &r.disagreements.len(), &r.bad_witnesses.len()]),
    ];
    let mut report = Report::new(to_json(&r)?, text, csv);
    report.mismatch = !r.disagreements.is_empty() || !r.bad_witnesses.is_empty();
    Ok(report)
}

fn run(cli: &Cli) -> Result<Report> {
    let enum_budget = usize::try_from(cli.enum_budget).unwrap_or(usize::MAX);
    match &cli.command {
        Command::StratumExists { stratum } => stratum_exists(stratum),
        Command::TOfG { g, budget } => t_of_g_cmd(*g, *budget, enum_budget),
        Command::OneCylinder { g } => one_cylinder_cmd(*g),
        Command::RegularOrigami { group, gens } => regular_origami_cmd(group, gens, cli.closure_budget),
        Command::PslPair { p, d } => psl_pair_cmd(*p, *d, cli.sl2_cap),
        Command::Progression { m, max_residues } => progression_cmd(*m, *max_residues),
        Command::SemidirectExists { u, l } => semidirect_cmd(*u, *l),
        Command::Enumerate { n } => enumerate_cmd(*n, enum_budget),
        Command::Table(Table::AppendixA { rows }) => appendix_a_cmd(rows.as_deref()),
        Command::Table(Table::SummaryGm { m }) => summary_gm_cmd(*m),
        Command::VerifyAppendixB { u_max, l_max } => appendix_b_cmd(*u_max, *l_max),
    }
}

fn write_out(cli: &Cli, bytes: &[u8]) -> Result<()> {
    match &cli.out {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(bytes))
            .with_context(|| format!("cannot write {}", path.display())),
        None => Ok(io::stdout().lock().write_all(bytes)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        let threads = usize::try_from(w).unwrap_or(usize::MAX);
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = report.render(cli.output).and_then(|b| write_out(&cli, &b));
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.mismatch {
        eprintln!("fixture mismatch");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
