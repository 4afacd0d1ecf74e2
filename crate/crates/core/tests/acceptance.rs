//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (integers, rationals or cyclotomic numbers); the
//! only tolerances are the wall-clock limits, which are generous for a debug
//! build. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use weak_moonshine::chartab::CharacterTable;
use weak_moonshine::distinguish::{self, Verdict};
use weak_moonshine::frobenius::{self, Tuple};
use weak_moonshine::group;
use weak_moonshine::moonshine::{self, ModuleSpec};
use weak_moonshine::qseries::hauptmodul;
use weak_moonshine::series::LaurentSeries;
use weak_moonshine::{Cyclotomic, Report};

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coeffs(s: &LaurentSeries, from: i64, to: i64) -> Result<Vec<i64>, String> {
    (from..to)
        .map(|k| {
            let c = s.coeff(k).map_err(|e| e.to_string())?;
            ensure(c.is_integer(), || format!("q^{k} coefficient {c} is not integral"))?;
            i64::try_from(c.to_integer()).map_err(|_| format!("q^{k} coefficient {c} overflows"))
        })
        .collect()
}

fn expect_coeffs(name: &str, s: &LaurentSeries, from: i64, expected: &[i64]) -> Result<(), String> {
    let got = coeffs(s, from, from + expected.len() as i64)?;
    ensure(got == expected, || format!("{name}: got {got:?}, expected {expected:?}"))
}

fn table(name: &str) -> CharacterTable {
    CharacterTable::for_group(group::bundled(name).expect("bundled group")).expect("character table")
}

fn spec(name: &str, precision: i64) -> Result<ModuleSpec, String> {
    moonshine::default_assignment(table(name), precision).map_err(|e| e.to_string())
}

fn reports_pass(reports: &[Report]) -> Result<usize, String> {
    for r in reports {
        if let Some(v) = r.violations.first() {
            return Err(format!("{}: {} gives {} != {}", r.identity, v.context, v.lhs, v.rhs));
        }
    }
    Ok(reports.iter().map(|r| r.checked).sum())
}

fn hauptmoduln() -> Check {
    let f1 = hauptmodul(1, 5).map_err(|e| e.to_string())?;
    expect_coeffs("f1", &f1, -1, &[1, 0, 196884, 21493760, 864299970, 20245856256])?;
    let f2 = hauptmodul(2, 6).map_err(|e| e.to_string())?;
    expect_coeffs("f2", &f2, -1, &[1, 0, 276, -2048, 11202, -49152, 184024])?;
    let f4 = hauptmodul(4, 12).map_err(|e| e.to_string())?;
    expect_coeffs(
        "f4",
        &f4,
        -1,
        &[1, 0, 20, 0, -62, 0, 216, 0, -641, 0, 1636, 0, -3778],
    )?;
    Ok("f1 through q^4, f2 through q^5, f4 through q^11".into())
}

fn multiplicity_series() -> Check {
    let expected: [(i64, &[i64]); 5] = [
        (-1, &[1, 0, 24788, 2685440, 108044482]),
        (1, &[24640, 2686464, 108038912]),
        (1, &[24640, 2686464, 108038912]),
        (1, &[24512, 2687488, 108033280]),
        (1, &[49152, 5373952, 216072192]),
    ];
    for name in ["D4", "Q8"] {
        let s = spec(name, 4)?;
        let m = moonshine::multiplicities(&s);
        for (i, (from, want)) in expected.iter().enumerate() {
            let mi = m.rational(i).map_err(|e| e.to_string())?;
            expect_coeffs(&format!("{name} M{}", i + 1), &mi, *from, want)?;
            // nothing below the first printed exponent
            ensure(mi.valuation() >= Some(*from), || format!("{name} M{} starts too early", i + 1))?;
        }
        ensure(m.series(1) == m.series(2), || format!("{name}: M2 != M3"))?;
    }
    Ok("M1..M5 through q^3 for D4 and Q8, M2 = M3".into())
}

fn width_two_series() -> Check {
    let want = [98304, 10747904, 432144384];
    for (name, tuple, sign) in [("D4", "r3s,rs", 1), ("Q8", "-k,k", -1)] {
        let s = spec(name, 4)?;
        let m = moonshine::multiplicities(&s);
        let t = Tuple::parse(s.table().group(), tuple).map_err(|e| e.to_string())?;
        let series = moonshine::frob_series(&s, &m, t.entries())
            .to_rational()
            .ok_or("width-2 series is not rational")?;
        let expected: Vec<i64> = [0, 0].iter().chain(&want).map(|c| c * sign).collect();
        expect_coeffs(&format!("{name} T(2,({tuple}))"), &series, -1, &expected)?;
    }
    Ok("T(2,(r3s,rs)) = 98304q + 10747904q^2 + 432144384q^3 and its negative at (-k,k)".into())
}

fn deltas() -> Check {
    // printed with five digits cut off (not rounded); d2 = d3
    let printed: [[&str; 4]; 4] = [
        ["0.16779", "0.16678", "0.16592", "0.33271"],
        ["0.16659", "0.16665", "0.16671", "0.33337"],
        ["0.16666", "0.16666", "0.16665", "0.33332"],
        ["0.16666", "0.16666", "0.16666", "0.33333"],
    ];
    let s = spec("D4", 6)?;
    let m = moonshine::multiplicities(&s);
    let mut mismatches = Vec::new();
    for (row, n) in printed.iter().zip(1..) {
        let d = moonshine::asymptotic_deltas(s.table(), &m, n).map_err(|e| e.to_string())?;
        let r = d.rendered();
        ensure(r[1] == r[2], || format!("n={n}: d2 != d3"))?;
        for (col, want) in [0, 1, 3, 4].iter().zip(row) {
            if r[*col] != *want {
                mismatches.push((n, col + 1, r[*col].clone(), *want, d.values[*col].clone()));
            }
        }
    }
    // the printed d1(3) disagrees with the exact ratio 108044482/648227778 = 0.1666767...
    // in the last digit; every other entry agrees
    let known = BigRational::new(108044482.into(), 648227778.into());
    match mismatches.as_slice() {
        [] => Ok("all sixteen printed entries agree".into()),
        [(3, 1, got, "0.16666", exact)] if *exact == known && got == "0.16667" => Ok(
            "n=1 and n=4 rows agree exactly; 15 of 16 entries agree overall, the printed \
             d1(3) = 0.16666 is one unit off the exact 108044482/648227778 = 0.1666767..."
                .into(),
        ),
        other => Err(format!("mismatches (n, i, computed, printed, exact): {other:?}")),
    }
}

fn orthogonality_sweep() -> Check {
    let mut checked = 0;
    let mut groups = 0;
    for g in group::all_bundled().into_iter().filter(|g| g.order() <= 8) {
        let t = CharacterTable::for_group(g).map_err(|e| e.to_string())?;
        let width = (1..=3)
            .take_while(|&r| frobenius::ensure_budget(t.group().order(), r).is_ok())
            .last()
            .unwrap_or(0);
        let report = frobenius::verify_orthogonality(&t, width).map_err(|e| e.to_string())?;
        checked += reports_pass(&[report])?;
        groups += 1;
    }
    Ok(format!("{checked} exact sums over {groups} groups of order <= 8, r <= 3"))
}

fn lemma_suite() -> Check {
    let mut checked = 0;
    for name in ["D4", "Q8"] {
        let t = table(name);
        let reports = frobenius::verify_lemmas(&t, 3).map_err(|e| e.to_string())?;
        checked += reports_pass(&reports)?;
        for i in 1..t.len() {
            for r in 1..=3 {
                let s = frobenius::check_zero_sum(&t, i, r).map_err(|e| e.to_string())?;
                ensure(s.is_zero(), || format!("{name} chi{} r={r}: sum {s}", i + 1))?;
            }
        }
    }
    Ok(format!("{checked} instances on D4 and Q8"))
}

fn recovery() -> Check {
    for name in ["D4", "Q8"] {
        let s = spec(name, 4)?;
        let m = moonshine::multiplicities(&s);
        let rec = moonshine::recover_multiplicities(&s, &m, 2, 4).map_err(|e| e.to_string())?;
        let ok = rec.agrees_below(m.series(4), 4).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{name}: recovered {rec} vs M5 {}", m.series(4)))?;
    }
    Ok("width-2 recovery of M5 over all 64 pairs, D4 and Q8, through q^3".into())
}

fn distinguishing() -> Check {
    let d4 = table("D4");
    let q8 = table("Q8");
    let w1 = distinguish::equivalent_up_to_width(&d4, &q8, 1).map_err(|e| e.to_string())?;
    ensure(w1.is_equivalent(), || "width 1 should not separate D4 and Q8".into())?;
    let w2 = distinguish::equivalent_up_to_width(&d4, &q8, 2).map_err(|e| e.to_string())?;
    let Verdict::Separated(_) = &w2 else {
        return Err("width 2 should separate D4 and Q8".into());
    };
    let w = w2.witness().ok_or("separated without a tuple witness")?;
    ensure(distinguish::witness_holds(&d4, &q8, w), || "witness does not re-verify".into())?;
    let (gd, gq) = (d4.group(), q8.group());
    let lab = |g: &group::FiniteGroup, t: &[usize]| t.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(",");
    let pairs = [
        ("s,r2s", 2),
        ("s,s", -2),
        ("r2s,s", 2),
        ("r2s,r2s", -2),
        ("rs,r3s", 2),
        ("rs,rs", -2),
        ("r3s,rs", 2),
        ("r3s,r3s", -2),
    ];
    let tuple = lab(gd, &w.tuple);
    let listed = pairs.iter().find(|(t, _)| *t == tuple);
    let d4_value = w.values[w.character].clone();
    let q8_value = w.image_values[w.character].clone();
    ensure(
        matches!(listed, Some((_, v)) if Cyclotomic::from_integer(*v) == d4_value)
            && q8_value == -&d4_value
            && w.character == 4,
        || format!("witness ({tuple}) -> ({}) is not one of the listed pairs", lab(gq, &w.image)),
    )?;
    let a = distinguish::value_multiset(&d4, 4, 2).map_err(|e| e.to_string())?;
    let b = distinguish::value_multiset(&q8, 4, 2).map_err(|e| e.to_string())?;
    ensure(distinguish::same_multiset(&a, &b), || "chi5^(2) multisets differ".into())?;
    Ok(format!(
        "width 1 equivalent; width 2 separated by chi5^(2)({tuple}) = {d4_value} vs chi5^(2)({}) = {q8_value}; multisets coincide",
        lab(gq, &w.image)
    ))
}

fn cross_formula() -> Check {
    let mut checked = 0;
    for g in group::all_bundled() {
        let t = CharacterTable::for_group(g).map_err(|e| e.to_string())?;
        checked += reports_pass(&[frobenius::verify_cycle_formula(&t, 3).map_err(|e| e.to_string())?])?;
    }
    for order in [1, 6, 8] {
        checked += reports_pass(&[frobenius::verify_omega(order, 4, 6).map_err(|e| e.to_string())?])?;
    }
    Ok(format!("{checked} exact comparisons"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Hauptmodul golden values", 1, hauptmoduln),
        ("multiplicity series of D4 and Q8", 1, multiplicity_series),
        ("width-2 McKay-Thompson series", 1, width_two_series),
        ("asymptotic distribution table", 1, deltas),
        ("r-character orthogonality sweep", 60, orthogonality_sweep),
        ("conjugation/translation sums and zero sums", 30, lemma_suite),
        ("multiplicities recovered from width-2 series", 5, recovery),
        ("D4 and Q8 separated at width 2", 10, distinguishing),
        ("recursion vs permutation expansion, pair statistic", 60, cross_formula),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit} s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {}  {name}: {detail} ({elapsed:.2?})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}  {name}: {detail} ({elapsed:.2?})", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
