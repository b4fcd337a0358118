use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde::Serialize;

use outer_billiard::billiard::{
    check_induction_on_samples, coding_law_holds, conjugating_similarity, theta_expand, BilliardError, DecagonSystem,
    Flavor, Orientation, PentagonSystem, Region, DEFAULT_RETURN_BOUND,
};
use outer_billiard::closedform::{
    abelianize, beta, count_bispecials_upto, family_length_by_matrices, length_formulas, p_hexagon, p_square,
    p_triangle_from_base, xyzt_vectors,
};
use outer_billiard::planegeom::{in_closed_triangle, Compose, PlaneMap};
use outer_billiard::substlang::{bispecial_families, family_descriptors, folded_language, FamilyKind, SigmaSeed};
use outer_billiard::wordcomb::{BispecialKind, Word};
use outer_billiard::Table;

pub const CHECK_NAMES: [&str; 9] =
    ["cells", "isometries", "coding", "returns", "families", "formulas", "decagon", "cassaigne", "beta"];

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub struct Settings {
    pub eps: BigRational,
    pub orientation: Orientation,
    pub seed: u64,
}

type Outcome = Result<String, String>;

pub fn run(name: &str, settings: &Settings) -> CheckResult {
    let outcome = match name {
        "cells" => cells(settings),
        "isometries" => isometries(),
        "coding" => coding(settings),
        "returns" => returns(settings),
        "families" => families(),
        "formulas" => formulas(),
        "decagon" => decagon(settings),
        "cassaigne" => cassaigne(),
        "beta" => beta_check(settings),
        other => Err(format!("unknown check {other}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult { name: name.to_string(), passed, detail }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn pentagon(orientation: Orientation) -> Result<PentagonSystem<BigRational>, String> {
    PentagonSystem::from_table(Table::with_orientation(5, orientation).map_err(err)?).map_err(err)
}

fn cells(settings: &Settings) -> Outcome {
    let p = pentagon(settings.orientation)?;
    let acf = p.triangle("ACF");
    let mut in_first = 0;
    for x in p.table.sample_sector_points(200, 3, settings.seed) {
        let (y, n) = match p.table.step_hat_t(&x) {
            Ok(r) => r,
            Err(BilliardError::OnSingularLine) => continue,
            Err(e) => return Err(format!("folded step failed on a sector sample: {e}")),
        };
        let z = p.from_table_frame(&y);
        if z != p.maps[n - 1].apply(&p.from_table_frame(&x)) {
            return Err(format!("sample with letter {n} does not follow the piece F({n})"));
        }
        if n == 1 {
            if !in_closed_triangle(&z, [&acf[0], &acf[1], &acf[2]]) {
                return Err("image of U1 leaves the triangle ACF".into());
            }
            in_first += 1;
        }
    }
    for (from, to) in [('C', 'H'), ('H', 'E'), ('I', 'C'), ('E', 'G'), ('B', 'F')] {
        if &p.maps[1].apply(p.point(from)) != p.point(to) {
            return Err(format!("F(2) does not send {from} to {to}"));
        }
    }
    Ok(format!("{in_first} samples of U1 land in ACF; F(2) moves C, H, I, E, B as expected"))
}

fn isometries() -> Outcome {
    let p = pentagon(Orientation::Standard)?;
    let t = p.translation_t();
    let tab = p.tabachnikov_system().map_err(err)?;
    let checks = [
        ("F(223) t = t F(2)", p.word_map(&[2, 2, 3]).compose(&t) == t.compose(&p.word_map(&[2]))),
        ("F(2223223) t = t F(1)", p.word_map(&[2, 2, 2, 3, 2, 2, 3]).compose(&t) == t.compose(&p.word_map(&[1]))),
        ("D a = aababaa D", tab.d.compose(&tab.a) == tab.word("aababaa").compose(&tab.d)),
        ("D b = aaa D", tab.d.compose(&tab.b) == tab.word("aaa").compose(&tab.d)),
    ];
    match checks.iter().find(|c| !c.1) {
        Some((name, _)) => Err(format!("{name} fails")),
        None => Ok(checks.map(|c| c.0).join("; ")),
    }
}

fn coding(settings: &Settings) -> Outcome {
    let mut orbits = 0;
    for k in [3, 4, 5, 6, 10] {
        let table = Table::new(k).map_err(err)?;
        for x in table.sample_sector_points(20, 4, settings.seed) {
            let Ok(eta) = table.code_orbit(&x, 40, Flavor::Eta) else { continue };
            let rho = table.code_orbit(&x, 41, Flavor::Rho).map_err(err)?;
            if !coding_law_holds(&rho.letters, &eta.letters, k) {
                return Err(format!("k = {k}: eta is not the difference of rho"));
            }
            orbits += 1;
        }
    }
    Ok(format!("v_n = u_(n+1) - u_n mod k on {orbits} orbits of length 40"))
}

fn returns(settings: &Settings) -> Outcome {
    let square = Table::new(4).map_err(err)?;
    let words = vec![vec![2, 1], vec![2]];
    let source: Vec<_> = (1..=2).map(|n| square.cell_map(n)).collect();
    let target: Vec<_> = words.iter().map(|w| square.word_map(w)).collect();
    let u = conjugating_similarity(&source, &target).map_err(err)?;
    check_induction_on_samples(&square, &square, &u, 2, &words, &square.sample_sector_points(40, 4, settings.seed))?;
    let triangle = Table::new(3).map_err(err)?;
    let mut seen = BTreeSet::new();
    for x in triangle.sample_sector_points(600, 5, settings.seed) {
        if let Ok((_, w)) = triangle.first_return(Region::Cell(2), &x, DEFAULT_RETURN_BOUND) {
            seen.insert(w);
        }
    }
    let expected: BTreeSet<Vec<usize>> = [vec![2, 1], vec![2, 1, 1], vec![2, 1, 1, 1]].into();
    if seen != expected {
        return Err(format!("triangle return words {seen:?}"));
    }
    Ok("square first return to cell 2 conjugate to the folded map; triangle return words 21, 211, 2111".into())
}

fn families() -> Outcome {
    let top = 28;
    let lang = folded_language(5, top + 2).map_err(err)?;
    let descs = family_descriptors();
    let instances = bispecial_families(None, top);
    let words: BTreeMap<Word, usize> = instances.iter().map(|i| (i.word.clone(), i.family)).collect();
    for inst in &instances {
        let rep = lang.bispecial_report(&inst.word).map_err(err)?;
        let expected = match descs[inst.family].kind {
            FamilyKind::Strong => BispecialKind::Strong,
            FamilyKind::Weak => BispecialKind::Weak,
            FamilyKind::Neutral => BispecialKind::Neutral,
        };
        if rep.kind != expected {
            return Err(format!("{} in {} is {}", crate::render::digits(&to_usize(&inst.word)), descs[inst.family].name, rep.kind));
        }
    }
    for n in 0..=top {
        for rep in lang.bispecials(n).map_err(err)? {
            if rep.kind != BispecialKind::Neutral && !words.contains_key(&rep.word) {
                return Err(format!("{} bispecial {} is in no family", rep.kind, crate::render::digits(&to_usize(&rep.word))));
            }
        }
    }
    Ok(format!("{} family members up to length {top} have their kind; every strong or weak bispecial belongs to a family", instances.len()))
}

fn to_usize(w: &[u8]) -> Vec<usize> {
    w.iter().map(|&l| l as usize).collect()
}

fn formulas() -> Outcome {
    let square = folded_language(4, 40).map_err(err)?;
    let hexagon = folded_language(6, 40).map_err(err)?;
    let triangle = folded_language(3, 40).map_err(err)?;
    for n in 0..=40 {
        if square.complexity(n).map_err(err)? as u64 != p_square(n as u64) {
            return Err(format!("square p({n})"));
        }
        if hexagon.complexity(n).map_err(err)? as u64 != p_hexagon(n as u64) {
            return Err(format!("hexagon p({n})"));
        }
    }
    let base: [i64; 13] = std::array::from_fn(|i| triangle.complexity(i).unwrap() as i64);
    for n in 0..=40 {
        if p_triangle_from_base(n as u64, &base) != triangle.complexity(n).map_err(err)? as i64 {
            return Err(format!("triangle p({n}) off the per-residue quadratic"));
        }
    }
    for n in 0..=6u32 {
        let v = xyzt_vectors(n).map_err(err)?;
        for (i, s) in [SigmaSeed::X, SigmaSeed::Y, SigmaSeed::Z, SigmaSeed::T].into_iter().enumerate() {
            if abelianize(&s.word(n as usize), 1, 2) != v[i] {
                return Err(format!("{}_{n}", s.name()));
            }
        }
    }
    for f in length_formulas() {
        for k in 0..=12 {
            for n in 0..=12 {
                if f.value(k, n).ok() != family_length_by_matrices(f.family, k, n).ok() {
                    return Err(format!("length of family {} at ({k}, {n})", f.family));
                }
            }
        }
    }
    Ok("square and hexagon formulas to n = 40; triangle per-residue quadratic; XYZT; 24 length formulas".into())
}

fn decagon(settings: &Settings) -> Outcome {
    let p = pentagon(Orientation::Standard)?;
    let d = DecagonSystem::new(&p).map_err(err)?;
    for n in 1..=5 {
        let word: Vec<i8> = theta_expand(&[n]).iter().map(|&l| l as i8).collect();
        if d.s.compose(&d.maps[n - 1]).compose(&d.s.inverse()) != p.word_map(&word) {
            return Err(format!("decagon piece {n}"));
        }
    }
    let mut coded = 0;
    for x in d.table.sample_sector_points(100, 3, settings.seed) {
        let Ok(dc) = d.table.code_orbit(&x, 6, Flavor::Eta) else { continue };
        let expanded = theta_expand(&dc.letters);
        let pc = p.table.code_orbit(&d.to_pentagon(&p, &x), expanded.len(), Flavor::Eta).map_err(err)?;
        if pc.letters != expanded {
            return Err("a theta-expanded decagon coding differs from the pentagon coding".into());
        }
        coded += 1;
        if coded == 20 {
            break;
        }
    }
    Ok(format!("five pieces conjugate exactly; {coded} sampled codings agree"))
}

fn cassaigne() -> Outcome {
    let mut parts = Vec::new();
    for (k, n_max) in [(3, 30), (4, 30), (5, 30), (6, 30), (10, 12)] {
        let lang = folded_language(k, n_max).map_err(err)?;
        let report = lang.check_cassaigne(0..=n_max - 2).map_err(err)?;
        if let Some(row) = report.failures().first() {
            return Err(format!("k = {k} at n = {}", row.n));
        }
        parts.push(format!("k={k}"));
    }
    Ok(format!("s(n+1) - s(n) = b(n) for {}", parts.join(", ")))
}

fn beta_check(settings: &Settings) -> Outcome {
    let interval = beta(&settings.eps).map_err(err)?;
    let (lo, hi) = interval.to_f64();
    let n = 100_000;
    let (strong, weak) = count_bispecials_upto(n);
    let rate = (strong as f64 - weak as f64) / n as f64;
    let mid = (lo + hi) / 2.0;
    let detail = format!("beta in [{lo:.9}, {hi:.9}]; (strong - weak)/N = {rate:.6} at N = {n}");
    if (rate - mid).abs() <= 0.05 * mid {
        Ok(detail)
    } else {
        Err(detail)
    }
}
