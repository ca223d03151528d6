//! Acceptance criteria. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::process::ExitCode;

use simplex_centers::centers::all_centers;
use simplex_centers::classify::{facet_circumradii, facet_inradii, is_equiareal, is_equifacetal, is_regular};
use simplex_centers::constructions::{
    coincident_if_simplex, equiareal_equiradial_not_equifacetal, equiradial_apex_edge,
    equiradial_not_equiareal, facet_gram_determinant, gram_thm41, gram_thm43,
    regular_circumradius, rhombus_fold_tetrahedron, scan_coincident_if_base,
    solve_equal_inradius_t, thm41_feasible_interval, thm43_parameter,
};
use simplex_centers::geometry::facet_volumes;
use simplex_centers::tolerance::relative_spread;
use simplex_centers::verify::{infrastructure_checks, max_pairwise, verify, Check, TheoremId};
use simplex_centers::{Result, Tolerance};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Result<Outcome> + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_checks(checks: &[Check]) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} = {:.3e} (want {} {:.1e})", c.name, c.value, c.relation, c.threshold))
        .collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            failed.join("; ")
        },
    }
}

fn suite(ids: &[(TheoremId, Option<usize>)], seed: u64, tol: &Tolerance) -> Outcome {
    let mut checks = Vec::new();
    for &(id, samples) in ids {
        let run = verify(id, seed, samples, tol);
        checks.extend(run.details.into_iter().map(|mut c| {
            c.name = format!("{id}: {}", c.name);
            c
        }));
    }
    from_checks(&checks)
}

fn criterion_1(tol: &Tolerance) -> Result<Outcome> {
    let t = solve_equal_inradius_t()?;
    let s = rhombus_fold_tetrahedron(t)?;
    let r = facet_inradii(&s)?;
    let spread = r.iter().cloned().fold(f64::MIN, f64::max) - r.iter().cloned().fold(f64::MAX, f64::min);
    let t_err = (t - (3.0 + 33f64.sqrt()) / 6.0).abs();
    let equifacetal = is_equifacetal(&s, tol)?;
    Ok(Outcome {
        passed: t_err <= 1e-12 && spread <= 1e-9 && !equifacetal,
        detail: format!("t = {t:.15}, |t - (3+sqrt33)/6| = {t_err:.1e}, inradius spread = {spread:.1e}, equifacetal = {equifacetal}"),
    })
}

fn criterion_4(tol: &Tolerance) -> Result<Outcome> {
    let h = equiradial_apex_edge(4);
    let rt = regular_circumradius(3);
    let s = equiradial_not_equiareal(4)?;
    let target = 1.0 / 3f64.sqrt();
    let radii = facet_circumradii(&s)?;
    let worst = radii.iter().map(|r| (r - target).abs()).fold(0.0, f64::max);
    let spread = relative_spread(&facet_volumes(&s));
    let equiareal = is_equiareal(&s, tol);
    let h_err = (h - 0.5f64.sqrt()).abs();
    let feasible = h > rt && (rt - (3.0f64 / 8.0).sqrt()).abs() < 1e-15;
    Ok(Outcome {
        passed: h_err <= 1e-15 && feasible && worst <= 1e-9 && !equiareal && spread > 1e-3,
        detail: format!(
            "h = {h:.15}, h > sqrt(3/8): {feasible}, facet circumradii = {:.15} (max |R_i - 1/sqrt3| = {worst:.3e}), equiareal = {equiareal}, volume spread = {spread:.3}",
            radii[0]
        ),
    })
}

fn criterion_5(tol: &Tolerance) -> Result<Outcome> {
    let (lo, hi) = thm41_feasible_interval();
    let n = 50;
    let mut spread: f64 = 0.0;
    let mut vol_err: f64 = 0.0;
    let mut trace_err: f64 = 0.0;
    for k in 0..n {
        let x = lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
        let (g, s) = gram_thm41(x)?;
        trace_err = trace_err.max((g.trace() - 5.0).abs());
        let c = all_centers(&s, tol)?;
        spread = spread.max(max_pairwise(&[&c.centroid, &c.circumcenter, &c.incenter, &c.fermat_torricelli]));
        let want = 2.5 * (1.0 - 2.0 * x - 4.0 * x * x).sqrt();
        for j in 0..5 {
            vol_err = vol_err.max((facet_gram_determinant(&s, j).sqrt() - want).abs() / want);
        }
    }
    let (_, near) = gram_thm41(-0.25 + 1e-6)?;
    let regular = is_regular(&near, &Tolerance::new(tol.abs_tol, 1e-4)?);
    Ok(Outcome {
        passed: spread <= 1e-8 && vol_err <= 1e-8 && trace_err == 0.0 && regular,
        detail: format!(
            "interval ({lo:.6}, {hi:.6}), center spread = {spread:.1e}, V_A rel err = {vol_err:.1e}, trace err = {trace_err:.1e}, regular near -1/4: {regular}"
        ),
    })
}

fn criterion_6(tol: &Tolerance) -> Result<Outcome> {
    let x = thm43_parameter();
    let (g, s) = gram_thm43()?;
    let ev = g.eigenvalues();
    let zero = ev.iter().filter(|l| l.abs() < 1e-10).count();
    let positive = ev.iter().filter(|l| **l >= 1e-10).count();
    let spread = relative_spread(&facet_volumes(&s));
    let c = all_centers(&s, tol)?;
    let gc = (&c.centroid - &c.circumcenter).norm();
    let gf = (&c.centroid - &c.fermat_torricelli).norm();
    let cf = (&c.circumcenter - &c.fermat_torricelli).norm();
    Ok(Outcome {
        passed: (x - (4.0 - 17f64.sqrt())).abs() < 1e-15
            && zero == 1
            && positive == 4
            && spread <= 1e-9
            && gc.min(gf).min(cf) > 1e-4,
        detail: format!(
            "x = {x:.15}, zero/positive eigenvalues = {zero}/{positive}, facet volume spread = {spread:.1e}, |G-C| = {gc:.4}, |G-F| = {gf:.4}, |C-F| = {cf:.4}"
        ),
    })
}

fn criterion_7(tol: &Tolerance) -> Result<Outcome> {
    let out = equiareal_equiradial_not_equifacetal()?;
    let m = out.triangle;
    let h2 = out.h * out.h;
    let r2 = m.circumradius.powi(2);
    let shape_residual = (r2 - 3.0 * m.u / 25.0).abs().max((h2 - m.u / 5.0).abs());
    let height_residual = (h2 - (2.0 * m.u - 15.0 * r2)).abs();
    let quartic_residual = (2.0 * h2 * h2 - m.u * (h2 - r2)).abs();
    let u_err = (m.u - 25.0 / 3.0).abs();
    let h_err = (h2 - 5.0 / 3.0).abs();
    let r_err = (m.circumradius - 1.0).abs();
    let rep = simplex_centers::classify(&out.simplex, tol)?;
    Ok(Outcome {
        passed: u_err <= 1e-10
            && h_err <= 1e-10
            && r_err <= 1e-10
            && shape_residual <= 1e-10
            && height_residual <= 1e-10
            && quartic_residual <= 1e-10
            && rep.equiareal
            && rep.equiradial
            && !rep.equifacetal,
        detail: format!(
            "u err = {u_err:.1e}, h^2 err = {h_err:.1e}, relation residuals = {shape_residual:.1e}/{height_residual:.1e}/{quartic_residual:.1e}, equiareal = {}, equiradial = {}, equifacetal = {}",
            rep.equiareal, rep.equiradial, rep.equifacetal
        ),
    })
}

fn criterion_8(tol: &Tolerance) -> Result<Outcome> {
    let (a, b, c) = scan_coincident_if_base(0.05)?;
    let out = coincident_if_simplex(a, b, c)?;
    let ratio = out.base_circumradius / out.base_inradius;
    let rep = all_centers(&out.simplex, tol)?;
    let gap = (&rep.incenter - &rep.fermat_torricelli).norm();
    let equifacetal = is_equifacetal(&out.simplex, tol)?;
    Ok(Outcome {
        passed: gap <= 1e-8 && !equifacetal && ratio > 3.0 && ratio < 15f64.sqrt(),
        detail: format!("base ({a}, {b}, {c:.4}), R/r = {ratio:.6}, |I - F| = {gap:.1e}, equifacetal = {equifacetal}"),
    })
}

fn main() -> ExitCode {
    let tol = Tolerance::default();
    let seed = 20;
    let criteria: Vec<Criterion> = vec![
        ("equal facet inradii, not equifacetal", Box::new(|| criterion_1(&tol))),
        (
            "equifacetal tetrahedra: five centers coincide",
            Box::new(|| Ok(suite(&[(TheoremId::T2_1, Some(100))], seed, &tol))),
        ),
        (
            "center coincidences vs facial properties",
            Box::new(|| Ok(suite(&[(TheoremId::T3_2, Some(50))], seed, &tol))),
        ),
        ("equiradial, not equiareal, d = 4", Box::new(|| criterion_4(&tol))),
        ("four-center Gram family", Box::new(|| criterion_5(&tol))),
        ("equiareal with distinct centers", Box::new(|| criterion_6(&tol))),
        ("equiareal and equiradial, not equifacetal", Box::new(|| criterion_7(&tol))),
        ("I = F without equifacetal", Box::new(|| criterion_8(&tol))),
        (
            "equal cevians: equivalences and exterior circumcenter",
            Box::new(|| Ok(suite(&[(TheoremId::T5_1, Some(500)), (TheoremId::T5_5, Some(10_000))], seed, &tol))),
        ),
        (
            "acute triangle bounds",
            Box::new(|| Ok(suite(&[(TheoremId::L4_5, Some(1000))], seed, &tol))),
        ),
        (
            "infrastructure properties",
            Box::new(|| Ok(from_checks(&infrastructure_checks(seed, 1000, &tol)?))),
        ),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let outcome = run().unwrap_or_else(|e| Outcome {
            passed: false,
            detail: format!("error: {e}"),
        });
        let mark = if outcome.passed { "PASS" } else { "FAIL" };
        failures += usize::from(!outcome.passed);
        println!("{mark} criterion {:>2} ({title}): {}", i + 1, outcome.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
