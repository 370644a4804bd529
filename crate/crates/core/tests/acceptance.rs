//! One pass/fail line per acceptance criterion; exits non-zero on failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use hsformal::atlas::{self, nonformality_inequality, CriterionVerdict, FamilySpec, PRINTED_TABLE};
use hsformal::cdga::Element;
use hsformal::cohomology::{betti_table, massey_triple};
use hsformal::descriptor::{parse, ResolvedSpace};
use hsformal::formality::{decide, decide_model, reduce_to_torus, DecideOptions, Method};
use hsformal::lie::TorusEmbedding;
use hsformal::models::{biquotient_model, homogeneous_model, minimize_pure};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t <= limit, "{what} took {:.1?}, limit {:.0?}", t, limit);
    Ok(())
}

const TWO_BLOCK: &str = "SU(6)/(SU(3)xSU(3))";

fn two_block_betti() -> Outcome {
    let start = Instant::now();
    let m = model(TWO_BLOCK);
    let t = betti_table(&m.algebra, 19).map_err(err)?;
    let expected: Vec<usize> = (0..=19).map(|k| usize::from([0, 4, 6, 13, 15, 19].contains(&k))).collect();
    ensure!(t.betti == expected, "betti {:?}", t.betti);
    within(start, Duration::from_secs(5), "betti table")?;
    Ok(format!("b = {:?}", t.betti))
}

fn two_block_minimal_model() -> Outcome {
    let min = minimize_pure(&model(TWO_BLOCK)).map_err(err)?.model;
    let alg = &min.algebra;
    let even: Vec<u32> = min.even_generators().iter().map(|g| g.degree).collect();
    let odd: Vec<u32> = min.odd_generators().iter().map(|g| g.degree).collect();
    ensure!(even == [4, 6] && odd == [7, 9, 11], "degrees {even:?} {odd:?}");
    let (e, f) = (&min.even_generators()[0].name, &min.even_generators()[1].name);
    let expected = [format!("{e}^2"), format!("{e}*{f}"), format!("{f}^2")];
    let found: Vec<String> = min.odd_generators().iter().map(|g| alg.render(alg.differential_of(g.id))).collect();
    ensure!(found == expected, "differentials {found:?}");
    Ok(format!("d = {}", found.join(", ")))
}

fn two_block_massey() -> Outcome {
    let min = minimize_pure(&model(TWO_BLOCK)).map_err(err)?.model;
    let alg = &min.algebra;
    let t = betti_table(alg, 19).map_err(err)?;
    let e: Element<Q> = alg.gen(min.even_generators()[0].id);
    let f: Element<Q> = alg.gen(min.even_generators()[1].id);
    let m = massey_triple(alg, &t, &e, &e, &f).map_err(err)?;
    ensure!(m.degree == 13 && m.nontrivial, "<e,e,e'> in degree {} nontrivial {}", m.degree, m.nontrivial);
    let d = parse(TWO_BLOCK).map_err(err)?;
    let plain = decide::<Q>(&d, DecideOptions::default()).map_err(err)?;
    let confirmed = decide::<Q>(&d, DecideOptions { massey_confirm: true, ..DecideOptions::default() }).map_err(err)?;
    ensure!(!plain.formal && !confirmed.formal, "decide says formal");
    ensure!(confirmed.method == Method::MasseyWitness, "method {}", confirmed.method.as_str());
    ensure!(confirmed.massey.as_ref().is_some_and(|w| w.nontrivial), "no witness returned");
    Ok(format!("nontrivial in degree 13; methods {} and {}", plain.method.as_str(), confirmed.method.as_str()))
}

fn formal_verdicts() -> Outcome {
    let start = Instant::now();
    let v = decide::<Q>(&parse("SU(7)/(SU(3)xSU(4))").map_err(err)?, DecideOptions::default()).map_err(err)?;
    ensure!(v.formal, "SU(7)/(SU(3)xSU(4)) is not formal");
    let spheres = v.splitting.sphere_degrees();
    ensure!(spheres.contains(&13), "split spheres {spheres:?}");
    for s in ["SU(4)/(SU(2)xSU(2))", "SU(5)/(SU(2)xSU(3))"] {
        let v = decide::<Q>(&parse(s).map_err(err)?, DecideOptions::default()).map_err(err)?;
        ensure!(v.formal, "{s} is not formal");
    }
    within(start, Duration::from_secs(10), "verdicts")?;
    Ok(format!("split spheres {spheres:?}"))
}

fn unitary_grid() -> Outcome {
    let start = Instant::now();
    let mut fired = 0;
    for p1 in 2..=4u32 {
        for p2 in p1..=(9 - p1) {
            let d = parse(&format!("SU({})/(SU({p1})xSU({p2}))", p1 + p2)).map_err(err)?;
            let c = atlas::criteria_for(&d);
            ensure!(c.len() == 1, "({p1},{p2}): {} criteria", c.len());
            let fires = c[0].verdict == CriterionVerdict::NonFormal;
            let formal = decide::<Q>(&d, DecideOptions::default()).map_err(err)?.formal;
            ensure!(!fires || !formal, "({p1},{p2}) fires but is formal");
            fired += usize::from(fires);
            match (p1, p2) {
                (3, 3) => ensure!(!fires && !formal, "(3,3): fires {fires}, formal {formal}"),
                (3, 4) => ensure!(!fires && formal, "(3,4): fires {fires}, formal {formal}"),
                _ => {}
            }
        }
    }
    within(start, Duration::from_secs(300), "grid")?;
    Ok(format!("{fired} pairs fire, all non-formal"))
}

fn thresholds() -> Outcome {
    let sp = |p| nonformality_inequality(&FamilySpec::SymplecticRow { big: p, blocks: vec![p], symplectic: vec![], unitary: vec![] });
    let so = |p| nonformality_inequality(&FamilySpec::EvenOrthogonalRow { blocks: vec![p], even: vec![] });
    let fires = |r: &atlas::CriterionResult| r.applicable && r.verdict == CriterionVerdict::NonFormal;
    ensure!(!fires(&sp(6)) && fires(&sp(7)), "Sp row: p=6 {}, p=7 {}", sp(6).inequality_value, sp(7).inequality_value);
    ensure!(!fires(&so(7)) && fires(&so(8)), "SO(2n) row: p=7 {}, p=8 {}", so(7).inequality_value, so(8).inequality_value);
    Ok(format!(
        "Sp values {} / {}, SO(2n) values {} / {}",
        sp(6).inequality_value,
        sp(7).inequality_value,
        so(7).inequality_value,
        so(8).inequality_value
    ))
}

fn series_table() -> Outcome {
    let start = Instant::now();
    let mut corrected = Vec::new();
    for (class, series, k, n, stated) in PRINTED_TABLE {
        let row = atlas::rebuild_row(class, series).ok_or(format!("class {class}: no row for {series}"))?;
        ensure!(
            row.stated_dimension == stated,
            "class {class}: {series} starts at {} instead of {stated}",
            row.stated_dimension
        );
        if (row.k, row.n) != (k, n) {
            corrected.push(format!("class {class} printed (k,N)=({k},{n}), rebuilt ({},{})", row.k, row.n));
        }
    }
    let starts: Vec<i64> = PRINTED_TABLE.iter().map(|r| r.4).collect();
    ensure!(starts == [48, 49, 50, 67, 52, 69, 54, 87, 56, 57, 58, 59, 76, 77, 78, 47], "starts {starts:?}");
    let missing: Vec<i64> = (72..=200).filter(|&d| atlas::scan_dimension(d).is_none()).collect();
    ensure!(missing.is_empty(), "no space in dimensions {missing:?}");
    within(start, Duration::from_secs(30), "table")?;
    let mut note = "16 rows, scan 72..200 complete".to_string();
    if !corrected.is_empty() {
        note.push_str(&format!("; {}", corrected.join("; ")));
    }
    Ok(note)
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    for s in CATALOG {
        let m = model(s);
        let fd = m.formal_dimension() as u32;
        ensure!(fd <= 40, "{s}: formal dimension {fd}");
        for g in m.algebra.generators() {
            ensure!(m.algebra.d(&m.algebra.d(&m.algebra.gen(g.id))).is_zero(), "{s}: dd{} != 0", g.name);
        }
        let t = betti_table(&m.algebra, fd).map_err(err)?;
        ensure!((0..=fd).all(|k| t.betti(k) == t.betti(fd - k)) && t.betti(fd) == 1, "{s}: no duality");
        let min = minimize_pure(&m).map_err(err)?;
        let tm = betti_table(&min.model.algebra, fd).map_err(err)?;
        ensure!(tm.betti == t.betti, "{s}: minimizing changed betti numbers");
        let d = descriptor(s);
        if d.numerator.rank() == d.denominator.rank() {
            ensure!(t.euler_characteristic() > 0, "{s}: chi {}", t.euler_characteristic());
            ensure!(decide::<Q>(&d, DecideOptions::default()).map_err(err)?.formal, "{s}: equal rank but not formal");
        }
    }
    let pairs = ["SU(6)/(SU(3)xSU(3))", "SU(7)/(SU(3)xSU(4))", "SU(4)/(SU(2)xSU(2))", "SO(9)/(SO(3)xSO(4))", "Sp(3)/Sp(1)"];
    for s in pairs {
        let ResolvedSpace::Homogeneous { g, h, embedding } = parse(s).map_err(err)?.resolve().map_err(err)? else {
            return Err(format!("{s} is not homogeneous"));
        };
        let direct = decide_model(&homogeneous_model::<Q>(&g, &h, &embedding).map_err(err)?).map_err(err)?;
        let (g2, t, e2) = reduce_to_torus(&g, &h, &embedding).map_err(err)?;
        let reduced = decide_model(&homogeneous_model::<Q>(&g2, &t, &e2).map_err(err)?).map_err(err)?;
        ensure!(direct == reduced, "{s}: {direct} directly, {reduced} over the torus");
    }
    let m = model("SU(6)/S(U(3)xU(3))");
    let chi = betti_table(&m.algebra, 18).map_err(err)?.euler_characteristic();
    ensure!(chi == 720 / 36, "Grassmannian chi {chi}");
    within(start, Duration::from_secs(600), "property suites")?;
    Ok(format!("{} spaces, {} reduction pairs, chi = {chi}", CATALOG.len(), pairs.len()))
}

fn biquotient_sanity() -> Outcome {
    for s in ["SU(6)/(SU(3)xSU(3))", "Sp(3)/(U(2)xSp(1))", "SO(9)/(SO(3)xSO(4))"] {
        let d = parse(s).map_err(err)?;
        let ResolvedSpace::Homogeneous { g, h, embedding } = d.resolve().map_err(err)? else {
            return Err(format!("{s} is not homogeneous"));
        };
        let zero = TorusEmbedding::new(h.clone(), g.clone(), vec![vec![0; h.coordinates()]; g.coordinates()]).map_err(err)?;
        let bq = biquotient_model::<Q>(&g, &h, &embedding, &zero).map_err(err)?;
        let hom = homogeneous_model::<Q>(&g, &h, &embedding).map_err(err)?;
        ensure!(bq.algebra == hom.algebra && bq.even_count == hom.even_count, "{s}: trivial right map differs");
        let same = biquotient_model::<Q>(&g, &h, &embedding, &embedding).map_err(err)?;
        ensure!(
            same.odd_generators().iter().all(|x| same.algebra.differential_of(x.id).is_zero()),
            "{s}: left = right has nonzero differentials"
        );
    }
    Ok("3 spaces".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("two-block betti table", two_block_betti),
        ("two-block minimal model", two_block_minimal_model),
        ("two-block Massey product", two_block_massey),
        ("formal verdicts", formal_verdicts),
        ("unitary criterion grid", unitary_grid),
        ("row thresholds", thresholds),
        ("series table and scan", series_table),
        ("property suites", property_suites),
        ("biquotient sanity", biquotient_sanity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{t:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why}) [{t:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
