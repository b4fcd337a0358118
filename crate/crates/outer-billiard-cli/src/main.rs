mod cli;
mod parse;
mod render;
mod svg;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use outer_billiard::billiard::{theta_expand, BilliardError, DecagonSystem, Flavor, Orientation, PentagonSystem};
use outer_billiard::closedform::{beta, length_formulas, p_hexagon, p_square, p_triangle};
use outer_billiard::substlang::{bispecial_families, family_descriptors, folded_language, FamilyKind};
use outer_billiard::wordcomb::{word_to_string, BispecialKind};
use outer_billiard::{Point, Table};

use cli::{Cli, Command, KindFilter, Output};
use render::{digits, opt, PointDump, Rendered};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or a point or polygon outside the domain; exit code 2.
    Usage(String),
    /// A check failed; exit code 1.
    Verification(String),
}

impl From<BilliardError> for CliError {
    fn from(e: BilliardError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    let (rendered, output, failure) = match command {
        Command::Orbit { k, steps, start, output } => (orbit(k, steps, start.as_deref(), &output)?, output, None),
        Command::Code { k, steps, start, output } => (code(k, steps, start.as_deref(), &output)?, output, None),
        Command::Language { k, nmax, compare_formula, output } => (language(k, nmax, compare_formula)?, output, None),
        Command::Bispecial { k, nmax, only, output } => (bispecial(k, nmax, only)?, output, None),
        Command::Families { depth, only, output } => (families(depth, only), output, None),
        Command::Verify { only, eps, flip_tangency, output } => {
            let (r, failed) = verify_cmd(only.as_deref(), &eps, flip_tangency, output.seed)?;
            (r, output, failed)
        }
        Command::Beta { eps, output } => (beta_cmd(&eps)?, output, None),
        Command::DecagonMap { steps, start, output } => {
            let (r, failed) = decagon_map(steps, start.as_deref(), &output)?;
            (r, output, failed)
        }
    };
    let text = rendered.emit(output.format)?;
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    match failure {
        Some(msg) => Err(CliError::Verification(msg)),
        None => Ok(()),
    }
}

fn table(k: usize) -> Result<Table, CliError> {
    Ok(Table::new(k)?)
}

fn start_point(table: &Table, start: Option<&str>, seed: u64) -> Result<Point, CliError> {
    let x = match start {
        Some(s) => parse::parse_point(table, s).map_err(usage)?,
        None => table.sample_sector_points(1, 4, seed).remove(0),
    };
    match table.tangent_vertex(&x) {
        Err(BilliardError::InsidePolygon) => Err(usage(format!("start point {x} is inside polygon"))),
        _ => Ok(x),
    }
}

#[derive(Serialize)]
struct OrbitRow {
    step: usize,
    cone: usize,
    point: PointDump,
}

#[derive(Serialize)]
struct OrbitDump {
    k: usize,
    start: PointDump,
    rows: Vec<OrbitRow>,
}

fn orbit(k: usize, steps: usize, start: Option<&str>, output: &Output) -> Result<Rendered, CliError> {
    let t = table(k)?;
    let x = start_point(&t, start, output.seed)?;
    let records = if steps == 0 { Vec::new() } else { t.orbit(&x, steps - 1)? };
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let (px, py) = r.point.to_f64();
            vec![r.step.to_string(), r.cone.to_string(), format!("{px:.6}"), format!("{py:.6}"), r.point.to_string()]
        })
        .collect();
    let dump = OrbitDump {
        k,
        start: PointDump::new(&x),
        rows: records.iter().map(|r| OrbitRow { step: r.step, cone: r.cone, point: PointDump::new(&r.point) }).collect(),
    };
    let points: Vec<Point> = records.iter().map(|r| r.point.clone()).collect();
    let mut rendered = Rendered::new(dump, &["step", "cone", "x", "y", "exact"], rows);
    rendered.svg = Some(svg::orbit_svg(&t, &points));
    Ok(rendered)
}

#[derive(Serialize)]
struct CodeDump {
    k: usize,
    start: PointDump,
    rho: String,
    eta: Option<String>,
}

fn code(k: usize, steps: usize, start: Option<&str>, output: &Output) -> Result<Rendered, CliError> {
    let t = table(k)?;
    let x = start_point(&t, start, output.seed)?;
    let rho = t.code_orbit(&x, steps + 1, Flavor::Rho)?;
    let eta = match t.code_orbit(&x, steps, Flavor::Eta) {
        Ok(c) => Some(digits(&c.letters)),
        Err(BilliardError::NotInSector) => None,
        Err(e) => return Err(e.into()),
    };
    let rho_s = digits(&rho.letters);
    let rows = vec![vec!["rho".into(), rho_s.clone()], vec!["eta".into(), opt(eta.clone())]];
    let dump = CodeDump { k, start: PointDump::new(&x), rho: rho_s, eta };
    Ok(Rendered::new(dump, &["coding", "word"], rows).note(format!("start {x}")))
}

#[derive(Serialize)]
struct LanguageRow {
    n: usize,
    p: usize,
    s: i64,
    b: i64,
    cassaigne_residual: Option<i64>,
    formula: Option<i64>,
    matches: Option<bool>,
}

fn formula_value(k: usize, n: usize) -> Option<i64> {
    match k {
        4 => Some(p_square(n as u64) as i64),
        6 => Some(p_hexagon(n as u64) as i64),
        3 => p_triangle(n as u64).ok(),
        _ => None,
    }
}

fn language(k: usize, nmax: usize, compare: bool) -> Result<Rendered, CliError> {
    table(k)?;
    let lang = folded_language(k, nmax + 3).map_err(usage)?;
    let mut rows = Vec::new();
    for n in 0..=nmax {
        let p = lang.complexity(n).map_err(usage)?;
        let s = lang.s(n).map_err(usage)?;
        let b = lang.b(n).map_err(usage)?;
        let residual = lang.s(n + 1).map_err(usage)? - s - b;
        let formula = if compare { formula_value(k, n) } else { None };
        rows.push(LanguageRow {
            n,
            p,
            s,
            b,
            cassaigne_residual: Some(residual),
            formula,
            matches: formula.map(|f| f == p as i64),
        });
    }
    let mut headers = vec!["n", "p", "s", "b", "cassaigne_residual"];
    if compare {
        headers.extend(["formula", "matches"]);
    }
    let table_rows = rows
        .iter()
        .map(|r| {
            let mut v =
                vec![r.n.to_string(), r.p.to_string(), r.s.to_string(), r.b.to_string(), opt(r.cassaigne_residual)];
            if compare {
                v.extend([opt(r.formula), opt(r.matches)]);
            }
            v
        })
        .collect();
    Ok(Rendered::new(&rows, &headers, table_rows))
}

#[derive(Serialize)]
struct BispecialRow {
    word: String,
    length: usize,
    m_l: usize,
    m_r: usize,
    m_b: usize,
    index: i64,
    kind: String,
    family: Option<String>,
}

fn kind_matches(filter: Option<KindFilter>, kind: BispecialKind) -> bool {
    match filter {
        None => true,
        Some(KindFilter::Strong) => kind == BispecialKind::Strong,
        Some(KindFilter::Weak) => kind == BispecialKind::Weak,
        Some(KindFilter::Neutral) => kind == BispecialKind::Neutral,
    }
}

fn bispecial(k: usize, nmax: usize, only: Option<KindFilter>) -> Result<Rendered, CliError> {
    table(k)?;
    if nmax < 2 {
        return Err(usage("--nmax must be at least 2"));
    }
    let lang = folded_language(k, nmax).map_err(usage)?;
    let names: std::collections::BTreeMap<Vec<u8>, String> = if k == 5 {
        let descs = family_descriptors();
        bispecial_families(None, nmax)
            .into_iter()
            .map(|i| {
                let mut name = descs[i.family].name.clone();
                if let Some(k) = i.k {
                    name.push_str(&format!(" k={k}"));
                }
                if let Some(n) = i.n {
                    name.push_str(&format!(" n={n}"));
                }
                (i.word, name)
            })
            .collect()
    } else {
        Default::default()
    };
    let mut rows = Vec::new();
    for n in 0..=nmax - 2 {
        for r in lang.bispecials(n).map_err(usage)? {
            if !kind_matches(only, r.kind) {
                continue;
            }
            rows.push(BispecialRow {
                word: word_to_string(&r.word),
                length: r.word.len(),
                m_l: r.m_l,
                m_r: r.m_r,
                m_b: r.m_b,
                index: r.index,
                kind: r.kind.to_string(),
                family: names.get(&r.word).cloned(),
            });
        }
    }
    let table_rows = rows
        .iter()
        .map(|r| {
            vec![
                r.word.clone(),
                r.length.to_string(),
                r.m_l.to_string(),
                r.m_r.to_string(),
                r.m_b.to_string(),
                r.index.to_string(),
                r.kind.clone(),
                opt(r.family.clone()),
            ]
        })
        .collect();
    Ok(Rendered::new(&rows, &["word", "length", "m_l", "m_r", "m_b", "index", "kind", "family"], table_rows))
}

#[derive(Serialize)]
struct FamilyRow {
    id: usize,
    name: String,
    kind: String,
    k: Option<usize>,
    n: Option<usize>,
    length: usize,
    word: String,
}

fn families(depth: usize, only: Option<KindFilter>) -> Rendered {
    let kind = only.map(|k| match k {
        KindFilter::Strong => FamilyKind::Strong,
        KindFilter::Weak => FamilyKind::Weak,
        KindFilter::Neutral => FamilyKind::Neutral,
    });
    let descs = family_descriptors();
    let formulas = length_formulas();
    let rows: Vec<FamilyRow> = bispecial_families(kind, depth)
        .into_iter()
        .map(|i| {
            let d = &descs[i.family];
            debug_assert_eq!(
                formulas[i.family].value(i.k.unwrap_or(0) as u32, i.n.unwrap_or(0) as u32).ok(),
                Some(i.word.len() as i128)
            );
            FamilyRow {
                id: d.id,
                name: d.name.clone(),
                kind: d.kind.to_string(),
                k: i.k,
                n: i.n,
                length: i.word.len(),
                word: word_to_string(&i.word),
            }
        })
        .collect();
    let table_rows = rows
        .iter()
        .map(|r| vec![r.id.to_string(), r.name.clone(), r.kind.clone(), opt(r.k), opt(r.n), r.length.to_string(), r.word.clone()])
        .collect();
    Rendered::new(&rows, &["id", "name", "kind", "k", "n", "length", "word"], table_rows)
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    checks: Vec<verify::CheckResult>,
}

fn verify_cmd(only: Option<&str>, eps: &str, flip: bool, seed: u64) -> Result<(Rendered, Option<String>), CliError> {
    let eps = parse::positive_eps(eps).map_err(usage)?;
    let names: Vec<&str> = match only {
        Some(name) if verify::CHECK_NAMES.contains(&name) => vec![name],
        Some(name) => {
            return Err(usage(format!("unknown check {name}; known checks: {}", verify::CHECK_NAMES.join(", "))))
        }
        None => verify::CHECK_NAMES.to_vec(),
    };
    let settings = verify::Settings {
        eps,
        orientation: if flip { Orientation::Flipped } else { Orientation::Standard },
        seed,
    };
    let checks: Vec<verify::CheckResult> = names.iter().map(|n| verify::run(n, &settings)).collect();
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let failure = (!failed.is_empty()).then(|| failed.join(", "));
    let rows = checks
        .iter()
        .map(|c| vec![c.name.clone(), if c.passed { "ok".into() } else { "FAILED".into() }, c.detail.clone()])
        .collect();
    let summary = match &failure {
        None => "all checks passed".to_string(),
        Some(f) => format!("failed: {f}"),
    };
    let report = VerifyReport { passed: failure.is_none(), checks };
    let rendered = Rendered::new(report, &["check", "status", "detail"], rows).note(summary);
    Ok((rendered, failure))
}

#[derive(Serialize)]
struct BetaDump {
    lower: String,
    upper: String,
    approx: [f64; 2],
}

fn beta_cmd(eps: &str) -> Result<Rendered, CliError> {
    let eps = parse::positive_eps(eps).map_err(usage)?;
    let interval = beta(&eps).map_err(usage)?;
    let (lo, hi) = interval.to_f64();
    let dump = BetaDump { lower: interval.lo.to_string(), upper: interval.hi.to_string(), approx: [lo, hi] };
    let rows = vec![vec![format!("{lo:.12}"), format!("{hi:.12}")]];
    Ok(Rendered::new(dump, &["lower", "upper"], rows).note(format!("beta in [{lo:.9}, {hi:.9}]")))
}

#[derive(Serialize)]
struct DecagonRow {
    start: PointDump,
    decagon: String,
    expanded: String,
    pentagon: String,
    matches: bool,
}

fn decagon_map(steps: usize, start: Option<&str>, output: &Output) -> Result<(Rendered, Option<String>), CliError> {
    let pentagon = PentagonSystem::new()?;
    let deca = DecagonSystem::new(&pentagon)?;
    let starts: Vec<Point> = match start {
        Some(s) => vec![parse::parse_point(&deca.table, s).map_err(usage)?],
        None => deca.table.sample_sector_points(20, 3, output.seed),
    };
    let mut rows = Vec::new();
    for x in &starts {
        let dc = match deca.table.code_orbit(x, steps, Flavor::Eta) {
            Ok(c) => c,
            Err(e) if start.is_none() && matches!(e, BilliardError::SingularAtStep(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let expanded = theta_expand(&dc.letters);
        let y = deca.to_pentagon(&pentagon, x);
        let pc = pentagon.table.code_orbit(&y, expanded.len(), Flavor::Eta)?;
        rows.push(DecagonRow {
            start: PointDump::new(x),
            decagon: digits(&dc.letters),
            expanded: digits(&expanded),
            pentagon: digits(&pc.letters),
            matches: pc.letters == expanded,
        });
    }
    let mismatches = rows.iter().filter(|r| !r.matches).count();
    let failure = (mismatches > 0).then(|| format!("{mismatches} decagon codings differ from their pentagon images"));
    let table_rows = rows
        .iter()
        .map(|r| vec![r.decagon.clone(), r.expanded.clone(), r.pentagon.clone(), r.matches.to_string()])
        .collect();
    Ok((Rendered::new(&rows, &["decagon", "theta", "pentagon", "matches"], table_rows), failure))
}
