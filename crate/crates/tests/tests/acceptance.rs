//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed whether or not it passes.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use schwarz::bounds::{
    ruscheweyh_bound, szasz_bound, theorem31_bound, theorem31_branch_value, BoundBranch,
};
use schwarz::disks::{dieudonne_disk, second_derivative_disk};
use schwarz::sampling::{random_disk_point, random_schur_from, sample_rng};
use schwarz::{
    verify_attainment, Attainment, ClosedDiskPoint, Extremal, PrescribedData, RandomFunctionConfig,
    UnitDiskPoint,
};
use schwarz_cli::{
    run_attainment_suite, run_membership_suite, run_tightness_search, AttainmentOptions,
    HarnessConfig, HarnessReport, MembershipSuite,
};
use schwarz_tests::ddcomplex;

const SEED: u64 = 42;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn cfg(samples: u64) -> HarnessConfig {
    HarnessConfig {
        samples,
        ..HarnessConfig::with_seed(SEED)
    }
}

fn u(z: Complex64) -> UnitDiskPoint {
    UnitDiskPoint::new(z).unwrap()
}

fn clean(report: &HarnessReport) -> Result<(), String> {
    if report.violations == 0 {
        Ok(())
    } else {
        Err(format!(
            "{}: {} violations in {} samples (worst margin {:?})",
            report.suite, report.violations, report.samples, report.worst_margin
        ))
    }
}

fn membership_thm21() -> Verdict {
    let started = Instant::now();
    let report = run_membership_suite(&cfg(10_000), MembershipSuite::Thm21);
    let elapsed = started.elapsed();
    clean(&report)?;
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("10000 samples, 0 violations, {elapsed:.2?}"))
}

fn membership_dieudonne() -> Verdict {
    let report = run_membership_suite(&cfg(10_000), MembershipSuite::Dieudonne);
    clean(&report)?;
    Ok(format!(
        "10000 samples, 0 violations, worst margin {:.3e}",
        report.worst_margin.unwrap()
    ))
}

fn yamashita() -> Verdict {
    let inequality = HarnessConfig {
        tol_membership: 1e-9,
        ..cfg(10_000)
    };
    let report = run_membership_suite(&inequality, MembershipSuite::Yamashita);
    clean(&report)?;
    let equality = run_membership_suite(&cfg(1_000), MembershipSuite::YamashitaEquality);
    clean(&equality)?;
    Ok(format!(
        "inequality slack >= {:.3e}; equality gap <= {:.3e}",
        report.worst_margin.unwrap(),
        -equality.worst_margin.unwrap()
    ))
}

fn attainment() -> Verdict {
    // |g''(z0) - c2| = rho2 on a grid with |alpha| = 1
    let mut worst = 0.0f64;
    let mut checks = 0;
    for (i, &r) in [0.0, 0.3, 0.6].iter().enumerate() {
        for (j, &s) in [0.0, 0.4, 0.8].iter().enumerate() {
            for (k, &t) in [0.0, 0.5, 0.9].iter().enumerate() {
                for a in 0..8 {
                    let data = PrescribedData {
                        z0: u(Complex64::from_polar(r, i as f64 + 0.3)),
                        delta0: u(Complex64::from_polar(s, j as f64 - 1.0)),
                        delta1: u(Complex64::from_polar(t, 2.0 * k as f64)).closed(),
                    };
                    let ex = Extremal::Thm21Boundary {
                        z0: data.z0,
                        delta0: data.delta0,
                        delta1: data.delta1.interior().unwrap(),
                        alpha: ClosedDiskPoint::unimodular(a as f64 * std::f64::consts::TAU / 8.0),
                    };
                    let g2 = ex.build().unwrap().eval_jet(data.z0).unwrap().f2;
                    let d = second_derivative_disk(&data);
                    worst = worst.max(((g2 - d.center).norm() - d.radius).abs());
                    checks += 1;
                }
            }
        }
    }
    if worst > 1e-9 {
        return Err(format!(
            "boundary distance {worst:.3e} over {checks} extremals"
        ));
    }

    let mut worst_rel = 0.0f64;
    for &r in &[0.1, 0.3, 0.5, 0.7, 0.9] {
        for &big_r in &[0.0, 0.25, 0.5, 0.75, 0.95] {
            let z0 = u(Complex64::new(r, 0.0));
            let delta0 = u(Complex64::new(big_r, 0.0));
            let bound = theorem31_bound(r, big_r).unwrap();
            let ex = if bound.branch == BoundBranch::RR2 {
                Extremal::Thm31Deg1 { z0, delta0 }
            } else {
                Extremal::Thm31Deg2 {
                    z0,
                    delta0,
                    theta: 0.0,
                }
            };
            let g2 = ex.build().unwrap().eval_jet(z0).unwrap().f2.norm();
            worst_rel = worst_rel.max((g2 - bound.value).abs() / bound.value);
        }
    }
    if worst_rel > 1e-8 {
        return Err(format!("branch bound relative gap {worst_rel:.3e}"));
    }

    let mut worst_szasz = 0.0f64;
    for &r in &[0.0, 0.25, 0.5, 0.75, 0.9] {
        let ex = Extremal::SzaszExtremal {
            z0: u(Complex64::new(r, 0.0)),
            theta: 0.0,
        };
        let bound = szasz_bound(r).unwrap().value;
        let report = verify_attainment(&ex, Attainment::Bound(bound), 1e-8).unwrap();
        worst_szasz = worst_szasz.max(report.margin.abs());
    }
    if worst_szasz > 1e-8 {
        return Err(format!("szasz gap {worst_szasz:.3e}"));
    }

    let suite = run_attainment_suite(&cfg(200), &AttainmentOptions::default())
        .map_err(|e| e.to_string())?;
    clean(&suite)?;
    Ok(format!(
        "disk boundary {worst:.1e}, branch bounds {worst_rel:.1e} rel, szasz {worst_szasz:.1e}, random sweep {} ok",
        suite.samples
    ))
}

fn spot_values() -> Verdict {
    let mut failures = Vec::new();
    let mut check = |what: &str, got: f64, want: f64| {
        if (got - want).abs() > 1e-7 {
            failures.push(format!("{what} = {got:.7}, expected {want}"));
        }
    };
    check(
        "theorem31_bound(0.5, 0.25)",
        theorem31_bound(0.5, 0.25).unwrap().value,
        3.6111111,
    );
    check(
        "theorem31_bound(0.5, 0.9)",
        theorem31_bound(0.5, 0.9).unwrap().value,
        0.9457778,
    );
    check("szasz_bound(0.5)", szasz_bound(0.5).unwrap().value, 3.78125);
    check(
        "ruscheweyh_bound(2, 0.5, 0)",
        ruscheweyh_bound(2, 0.5, 0.0).unwrap().value,
        5.3333333,
    );
    let d = dieudonne_disk(u(Complex64::new(0.5, 0.0)), Complex64::new(0.25, 0.0)).unwrap();
    check("dieudonne_disk(0.5, 0.25) center", d.center.re, 0.5);
    check("dieudonne_disk(0.5, 0.25) radius", d.radius, 0.4);
    if failures.is_empty() {
        Ok("all spot values within 1e-7".into())
    } else {
        Err(failures.join("; "))
    }
}

fn domination() -> Verdict {
    let mut worst_r = f64::INFINITY;
    let mut worst_s = f64::INFINITY;
    for i in 0..100 {
        for j in 0..100 {
            let (r, big_r) = (i as f64 / 100.0, j as f64 / 100.0);
            let t = theorem31_bound(r, big_r).unwrap().value;
            let rus = ruscheweyh_bound(2, r, big_r).unwrap().value;
            let sz = szasz_bound(r).unwrap().value;
            worst_r = worst_r.min(rus - t);
            worst_s = worst_s.min(sz - t);
        }
    }
    if worst_r < -1e-12 {
        return Err(format!("thm31 exceeds ruscheweyh by {:.3e}", -worst_r));
    }
    if worst_s < -1e-9 {
        return Err(format!("thm31 exceeds szasz by {:.3e}", -worst_s));
    }
    let mut seam = 0.0f64;
    for i in 1..100 {
        let r = i as f64 / 100.0;
        let big_r = (2.0 - r) / 2.0;
        let a = theorem31_branch_value(BoundBranch::RR1, r, big_r).unwrap();
        let b = theorem31_branch_value(BoundBranch::RR2, r, big_r).unwrap();
        seam = seam.max((a - b).abs());
    }
    if seam > 1e-12 {
        return Err(format!("branches differ by {seam:.3e} on r + 2R = 2"));
    }
    Ok(format!(
        "min slack {worst_r:.3e} / {worst_s:.3e}, seam gap {seam:.1e}"
    ))
}

fn jets() -> Verdict {
    let functions = RandomFunctionConfig::with_seed(SEED);
    let (mut worst1, mut worst2) = (0.0f64, 0.0f64);
    for i in 0..500 {
        let mut rng = sample_rng(SEED ^ 0x6a65_7473, i);
        let mut f = random_schur_from(&mut rng, &functions);
        if rng.gen::<bool>() {
            f = f.after(random_schur_from(&mut rng, &functions));
        }
        let z = random_disk_point(&mut rng, 0.9);
        let jet = f.eval_jet(u(z)).unwrap();
        let (d1, d2) = ddcomplex::central_differences(&f, z, 1e-5);
        worst1 = worst1.max((jet.f1 - d1).norm() / (1.0 + d1.norm()));
        worst2 = worst2.max((jet.f2 - d2).norm() / (1.0 + d2.norm()));
    }
    if worst1 > 1e-6 || worst2 > 1e-6 {
        return Err(format!("relative error f1 {worst1:.3e}, f2 {worst2:.3e}"));
    }
    Ok(format!(
        "500 pairs, relative error f1 {worst1:.1e}, f2 {worst2:.1e}"
    ))
}

fn tightness() -> Verdict {
    let started = Instant::now();
    let mut parts = Vec::new();
    for (r, big_r) in [(0.5, 0.0), (0.5, 0.9), (0.3, 0.5)] {
        let report = run_tightness_search(&cfg(10_000), r, big_r).map_err(|e| e.to_string())?;
        let t = report.tightness.as_ref().unwrap();
        if t.best > t.bound + 1e-8 || t.bound - t.best > 1e-6 {
            return Err(format!(
                "({r}, {big_r}): best {} vs bound {}",
                t.best, t.bound
            ));
        }
        clean(&report)?;
        parts.push(format!("({r}, {big_r}) gap {:.1e}", t.bound - t.best));
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{}, {elapsed:.2?}", parts.join(", ")))
}

fn all_reports(parallel: bool) -> Vec<HarnessReport> {
    let c = HarnessConfig {
        parallel,
        ..cfg(2_000)
    };
    let mut reports: Vec<_> = MembershipSuite::ALL
        .into_iter()
        .map(|s| run_membership_suite(&c, s))
        .collect();
    reports.push(run_attainment_suite(&c, &AttainmentOptions::default()).unwrap());
    reports.push(run_tightness_search(&c, 0.3, 0.5).unwrap());
    reports
}

fn runtime_and_determinism(serial_elapsed: Duration) -> Verdict {
    if serial_elapsed > Duration::from_secs(60) {
        return Err(format!("serial criteria took {serial_elapsed:?}"));
    }
    let serial = serde_json::to_string(&all_reports(false)).unwrap();
    let parallel = serde_json::to_string(&all_reports(true)).unwrap();
    if serial != parallel {
        return Err("parallel reports differ from serial reports".into());
    }
    Ok(format!(
        "criteria 1-8 in {serial_elapsed:.2?} single-threaded; parallel reports byte-identical"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("second-derivative membership", membership_thm21),
        (
            "first-derivative membership with f(0) = 0",
            membership_dieudonne,
        ),
        ("Yamashita inequality and equality", yamashita),
        ("extremal attainment", attainment),
        ("closed-form spot values", spot_values),
        ("bound domination and branch continuity", domination),
        ("jets against finite differences", jets),
        ("bound tightness search", tightness),
    ];
    let started = Instant::now();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, verdict: Verdict| match verdict {
        Ok(detail) => println!("PASS criterion {n}: {name}: {detail}"),
        Err(detail) => {
            failed += 1;
            println!("FAIL criterion {n}: {name}: {detail}");
        }
    };
    for (i, (name, run)) in criteria.iter().enumerate() {
        report(i + 1, name, run());
    }
    let elapsed = started.elapsed();
    report(
        9,
        "runtime and parallel determinism",
        runtime_and_determinism(elapsed),
    );
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
