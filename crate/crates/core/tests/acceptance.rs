//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use branchiso::branch::ComplexPoint;
use branchiso::invariants::{
    char_exponents, delta_from_multiplicities, delta_mu, equisingular, invariant_set,
    mult_seq_from_char, Certificate,
};
use branchiso::isotopy::{
    build_plan, integrate_flow, multiplicative_field, verify_isotopy, BumpSpec, VerifyOptions,
};
use branchiso::resolution::{dual_graph, resolve, Chart, DEFAULT_MAX_STEPS};
use branchiso::series::rat_int;
use branchiso::{implicitize, newton_puiseux, Branch};
use num::complex::Complex64;

const PRECISION: u32 = 64;
const ROUND_TRIP_T: u32 = 24;
const CLOSED_FORM_TOL: f64 = 1e-9;
const AXIS_TOL: f64 = 1e-9;
const STEP: f64 = 1e-3;
const ISOTOPY_TOL: f64 = 1e-3;
const IDENTITY_TOL: f64 = 1e-12;

const CORPUS: &[(&str, &str)] = &[
    ("cusp", "x = t^2\ny = t^3"),
    ("cusp_t4", "x = t^2\ny = t^3 + t^4"),
    ("cusp_scaled", "x = t^2\ny = 2 t^3"),
    ("cusp_t5", "x = t^2\ny = t^3 + 1/2 t^5"),
    ("line", "x = t\ny = t"),
    ("e6", "x = t^3\ny = t^4"),
    ("a4", "x = t^2\ny = t^5"),
    ("e8_like", "x = t^3\ny = t^5 + t^7"),
    ("two_pairs", "x = t^4\ny = t^6 + t^7"),
];

fn branch(src: &str) -> Branch {
    Branch::parse(src).unwrap().extend_precision(PRECISION)
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let b = branch("x = t^2\ny = t^3");
    let rd = resolve(&b, DEFAULT_MAX_STEPS).map_err(err)?;
    let g = dual_graph(&rd);
    check(rd.r() == 3, format!("r = {}", rd.r()))?;
    check(rd.multiplicities() == vec![2, 1, 1], "multiplicities")?;
    check(g.weights() == vec![-3, -2, -1], format!("weights {:?}", g.weights()))?;
    check(g.edges == BTreeSet::from([(1, 3), (2, 3)]), "edges")?;
    check(g.arrow.0 == 3, "arrow")?;
    // by hand: (t^2,t^3) -A,0-> (t^2,t) -B,0-> (t,t) -A,1-> (t,0)
    let hand = vec![(Chart::A, rat_int(0)), (Chart::B, rat_int(0)), (Chart::A, rat_int(1))];
    check(rd.chart_path().steps == hand, "chart path differs from hand computation")?;
    let inv = invariant_set(&b).map_err(err)?;
    check(inv.char_exponents.n == 2 && inv.char_exponents.betas == vec![3], "exponents")?;
    check(inv.semigroup_gens == vec![2, 3], "semigroup")?;
    check(inv.delta == 1 && inv.milnor == 2, "delta/mu")?;
    check(inv.mult_seq == rd.multiplicities(), "Euclidean sequence")?;
    check(delta_mu(&rd) == (1, 2), "delta/mu from resolution")?;
    Ok("r=3 mult=[2,1,1] weights=[-3,-2,-1] semigroup=[2,3] delta=1 mu=2".into())
}

fn criterion_2() -> Outcome {
    let cusp = branch("x = t^2\ny = t^3");
    let v = equisingular(&cusp, &branch("x = t^2\ny = t^3 + t^4")).map_err(err)?;
    check(v.equal && v.certificate == Certificate::IdenticalGraphs, "cusp vs cusp+t^4")?;
    let v = equisingular(&cusp, &branch("x = t^4\ny = t^6 + t^7")).map_err(err)?;
    check(!v.equal, "cusp vs (t^4, t^6+t^7) reported equal")?;
    let cert = v.certificate.to_string();
    check(cert == "r differs (3 vs 5)", format!("certificate {cert}"))?;
    Ok(format!("equal, then not equal with '{cert}'"))
}

fn criterion_3() -> Outcome {
    for (name, src) in CORPUS {
        let b = branch(src);
        let rd = resolve(&b, DEFAULT_MAX_STEPS).map_err(err)?;
        let ce = char_exponents(&b).map_err(err)?;
        let euclid = mult_seq_from_char(&ce);
        check(rd.multiplicities() == euclid, format!("{name}: {:?} vs {euclid:?}", rd.multiplicities()))?;
        let (delta, mu) = delta_mu(&rd);
        check(delta == delta_from_multiplicities(&euclid), format!("{name}: delta"))?;
        check(mu == 2 * delta, format!("{name}: mu"))?;
    }
    Ok(format!("{} branches", CORPUS.len()))
}

fn criterion_4() -> Outcome {
    for (name, src) in CORPUS {
        let parsed = Branch::parse(src).map_err(err)?;
        let n = parsed.monomial_x().ok_or("non-monomial x")?;
        let f = implicitize(&parsed).map_err(err)?;
        let back = newton_puiseux(&f, n, ROUND_TRIP_T).map_err(|e| format!("{name}: {e}"))?;
        let expect = parsed.extend_precision(ROUND_TRIP_T).normalized();
        check(back.monomial_x() == Some(n), format!("{name}: ramification"))?;
        for k in 0..ROUND_TRIP_T {
            check(
                back.ys().coeff(k).map_err(err)? == expect.ys().coeff(k).map_err(err)?,
                format!("{name}: coefficient of t^{k}"),
            )?;
        }
        let r = f.eval_series(back.xs(), back.ys());
        check(
            r.order().is_none_or(|o| o >= ROUND_TRIP_T),
            format!("{name}: residual order {:?}", r.order()),
        )?;
    }
    Ok(format!("{} branches, T={ROUND_TRIP_T}", CORPUS.len()))
}

fn criterion_5() -> Outcome {
    let bump = BumpSpec::at_origin(1.0, 2.0).ok_or("bump")?;
    let f = multiplicative_field(&rat_int(1), &rat_int(2), bump).map_err(err)?;
    let mut worst = 0.0f64;
    for k in 0..100 {
        let a = 0.35 * (k as f64 / 100.0);
        let th = k as f64 * 2.399963;
        let p = ComplexPoint::new(
            Complex64::from_polar(a, th),
            Complex64::from_polar(0.1 + 0.1 * (k % 7) as f64 / 7.0, -th),
        );
        let out = integrate_flow(&f, &p, STEP).map_err(err)?;
        let expect = ComplexPoint::new(p.x, p.y * 2.0);
        worst = worst.max(out.dist(&expect));
    }
    check(worst < CLOSED_FORM_TOL, format!("closed form error {worst:e}"))?;
    for k in 0..100 {
        let th = k as f64 * 0.7;
        let p = ComplexPoint::new(Complex64::from_polar(2.1 + k as f64 * 0.01, th), Complex64::from_polar(0.3, -th));
        let out = integrate_flow(&f, &p, STEP).map_err(err)?;
        check(out == p, format!("point {k} outside the support moved"))?;
    }
    let mut axis = 0.0f64;
    for k in 0..50 {
        let s = 0.01 + 0.008 * k as f64;
        let on_v = ComplexPoint::new(Complex64::new(0.0, 0.0), Complex64::from_polar(s, k as f64));
        let on_u = ComplexPoint::new(Complex64::from_polar(s, k as f64), Complex64::new(0.0, 0.0));
        axis = axis.max(integrate_flow(&f, &on_v, STEP).map_err(err)?.x.norm());
        axis = axis.max(integrate_flow(&f, &on_u, STEP).map_err(err)?.y.norm());
    }
    check(axis < AXIS_TOL, format!("axis drift {axis:e}"))?;
    Ok(format!("closed-form error {worst:.2e}, axis drift {axis:.2e}"))
}

fn criterion_6() -> Outcome {
    let opts = VerifyOptions {
        samples: 40,
        radius: 0.05,
        tol: ISOTOPY_TOL,
        step: STEP,
    };
    let cusp = branch("x = t^2\ny = t^3");
    let mut parts = Vec::new();
    for (name, other) in [("2t^3", "x = t^2\ny = 2 t^3"), ("t^3+t^4", "x = t^2\ny = t^3 + t^4")] {
        let g2 = branch(other);
        let plan = build_plan(&cusp, &g2).map_err(err)?;
        let report = verify_isotopy(&cusp, &g2, &plan, &opts).map_err(err)?;
        check(
            report.pass && report.max_distance < ISOTOPY_TOL,
            format!("{name}: max_distance {:e}", report.max_distance),
        )?;
        parts.push(format!("{name}: {:.2e}", report.max_distance));
    }
    let plan = build_plan(&cusp, &cusp).map_err(err)?;
    let report = verify_isotopy(&cusp, &cusp, &plan, &opts).map_err(err)?;
    check(
        report.max_distance < IDENTITY_TOL,
        format!("identity: max_distance {:e}", report.max_distance),
    )?;
    parts.push(format!("identity: {:.2e}", report.max_distance));
    Ok(parts.join(", "))
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let path = |name: &str| -> PathBuf { dir.path().join(format!("{name}.txt")) };
    for (name, src) in CORPUS {
        fs::write(path(name), src).map_err(err)?;
    }
    let mut runs: Vec<Vec<String>> = Vec::new();
    for (name, _) in CORPUS {
        let file = path(name).display().to_string();
        for cmd in ["resolve", "invariants", "implicitize"] {
            runs.push(vec![cmd.into(), file.clone()]);
        }
    }
    for (a, b) in [("cusp", "cusp_t4"), ("cusp", "cusp_scaled"), ("cusp", "two_pairs"), ("e6", "a4")] {
        for cmd in ["equisingular", "isotopy"] {
            runs.push(vec![cmd.into(), path(a).display().to_string(), path(b).display().to_string()]);
        }
    }
    for args in &runs {
        let once = || {
            Command::new(env!("CARGO_BIN_EXE_branchiso"))
                .args(args)
                .arg("--no-timing")
                .output()
        };
        let a = once().map_err(err)?;
        let b = once().map_err(err)?;
        check(
            a.stdout == b.stdout && a.status.code() == b.status.code(),
            format!("output differs for {}", args.join(" ")),
        )?;
    }
    Ok(format!("{} command lines, each run twice", runs.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("cusp pipeline", criterion_1),
        ("equisingularity verdicts", criterion_2),
        ("cross-oracle invariants", criterion_3),
        ("implicitization round trip", criterion_4),
        ("flow numerics", criterion_5),
        ("end-to-end isotopy", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{ms:.0} ms] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{ms:.0} ms] {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
