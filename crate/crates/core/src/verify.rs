//! Named verification suites, one per theorem or lemma, plus the
//! infrastructure checks shared by every suite.
//!
//! Each suite draws its samples from a seeded generator, so a run is
//! reproducible bit for bit.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::centers::{all_centers, complementary_1_centroid, fermat_residual, fermat_torricelli, incenter, one_center, vertex_pull, CenterReport, FermatMode};
use crate::cevians::{cevian_feet, lemma52_structure, theorem51_suite};
use crate::classify::{classify, facet_circumradii, facet_inradii, facet_perimeters, is_equifacetal, is_equiradial, is_regular};
use crate::constructions::{
    coincident_if_simplex, equally_inclined_basis, equiareal_equiradial_not_equifacetal,
    equifacetal_tetrahedron, equiradial_apex_edge, equiradial_not_equiareal,
    exterior_circumcenter_equal_cevians, facet_gram_determinant, fold_face_inradius_sq4,
    gram_thm41, gram_thm43, gram_thm43_matrix, isosceles_circumradius, isosceles_over,
    regular_circumradius, regular_simplex, rhombus_fold_tetrahedron, scan_coincident_if_base,
    solve_equal_inradius_t, split_sum_unit_vectors, thm41_facet_determinant,
    thm41_feasible_interval, thm43_facet_polynomial, thm43_parameter, triangle_metrics,
};
use crate::corpus::{
    constrained_simplex, edge_tangent_simplex, random_acute_triangle, random_gc_simplex,
    random_isometry, random_simplex, random_unit_sphere_simplex, random_unit_vector, seeded_rng,
    Target,
};
use crate::error::Result;
use crate::geometry::{
    affine_independence, barycentric, barycentric_gradients, cayley_menger_sq_volume,
    facet_distance, facet_volumes, gram_matrix,
    simplex_from_gram, simplex_volume, GramSpec, Point, Simplex,
};
use crate::tolerance::{relative_spread, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "T2.1")]
    T2_1,
    #[serde(rename = "T2.2")]
    T2_2,
    #[serde(rename = "T2.3")]
    T2_3,
    #[serde(rename = "T3.1")]
    T3_1,
    #[serde(rename = "T3.2")]
    T3_2,
    #[serde(rename = "T3.3")]
    T3_3,
    #[serde(rename = "T3.4")]
    T3_4,
    #[serde(rename = "T3.5")]
    T3_5,
    #[serde(rename = "T4.1")]
    T4_1,
    #[serde(rename = "T4.3")]
    T4_3,
    #[serde(rename = "T4.4")]
    T4_4,
    #[serde(rename = "T4.6")]
    T4_6,
    #[serde(rename = "L4.5")]
    L4_5,
    #[serde(rename = "T5.1")]
    T5_1,
    #[serde(rename = "L5.2")]
    L5_2,
    #[serde(rename = "L5.3")]
    L5_3,
    #[serde(rename = "L5.4")]
    L5_4,
    #[serde(rename = "T5.5")]
    T5_5,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::T2_1,
        TheoremId::T2_2,
        TheoremId::T2_3,
        TheoremId::T3_1,
        TheoremId::T3_2,
        TheoremId::T3_3,
        TheoremId::T3_4,
        TheoremId::T3_5,
        TheoremId::T4_1,
        TheoremId::T4_3,
        TheoremId::T4_4,
        TheoremId::T4_6,
        TheoremId::L4_5,
        TheoremId::T5_1,
        TheoremId::L5_2,
        TheoremId::L5_3,
        TheoremId::L5_4,
        TheoremId::T5_5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "T2.1",
            TheoremId::T2_2 => "T2.2",
            TheoremId::T2_3 => "T2.3",
            TheoremId::T3_1 => "T3.1",
            TheoremId::T3_2 => "T3.2",
            TheoremId::T3_3 => "T3.3",
            TheoremId::T3_4 => "T3.4",
            TheoremId::T3_5 => "T3.5",
            TheoremId::T4_1 => "T4.1",
            TheoremId::T4_3 => "T4.3",
            TheoremId::T4_4 => "T4.4",
            TheoremId::T4_6 => "T4.6",
            TheoremId::L4_5 => "L4.5",
            TheoremId::T5_1 => "T5.1",
            TheoremId::L5_2 => "L5.2",
            TheoremId::L5_3 => "L5.3",
            TheoremId::L5_4 => "L5.4",
            TheoremId::T5_5 => "T5.5",
        }
    }

    /// Sample count used when none is given.
    pub fn default_samples(self) -> usize {
        match self {
            TheoremId::T2_1 | TheoremId::T2_3 | TheoremId::T3_1 | TheoremId::T3_4 => 100,
            TheoremId::T3_2 | TheoremId::T4_1 | TheoremId::T4_4 | TheoremId::T3_5 => 50,
            TheoremId::L4_5 => 1000,
            TheoremId::T5_1 => 500,
            TheoremId::T5_5 => 10_000,
            TheoremId::L5_2 | TheoremId::L5_3 | TheoremId::L5_4 => 100,
            TheoremId::T2_2 | TheoremId::T3_3 | TheoremId::T4_3 | TheoremId::T4_6 => 1,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let known: Vec<&str> = TheoremId::ALL.iter().map(|id| id.as_str()).collect();
                format!("unknown theorem id {s:?}; known ids: {}", known.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One measured quantity compared against its threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst value observed over the samples.
    pub value: f64,
    pub threshold: f64,
    /// `"<="` or `">"`.
    pub relation: String,
    pub samples: usize,
}

impl Check {
    /// Passes when `value <= threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64, samples: usize) -> Self {
        Check {
            name: name.into(),
            passed: value <= threshold,
            value,
            threshold,
            relation: "<=".into(),
            samples,
        }
    }

    /// Passes when `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64, samples: usize) -> Self {
        Check {
            name: name.into(),
            passed: value > threshold,
            value,
            threshold,
            relation: ">".into(),
            samples,
        }
    }

    /// Passes when no sample failed; `value` is the failure count.
    pub fn failures(name: impl Into<String>, failures: usize, samples: usize) -> Self {
        Check::at_most(name, failures as f64, 0.0, samples)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRun {
    pub theorem_id: TheoremId,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: Tolerance,
    pub verdict: Verdict,
    pub details: Vec<Check>,
}

/// Run the suite of `id`. Errors raised inside a suite become a failed check.
pub fn verify(id: TheoremId, seed: u64, samples: Option<usize>, tol: &Tolerance) -> VerificationRun {
    let n = samples.unwrap_or_else(|| id.default_samples()).max(1);
    let mut rng = seeded_rng(seed);
    let result = match id {
        TheoremId::T2_1 => suite_t2_1(&mut rng, n, tol),
        TheoremId::T2_2 => suite_t2_2(tol),
        TheoremId::T2_3 => suite_t2_3(&mut rng, n, tol),
        TheoremId::T3_1 => suite_t3_1(&mut rng, n, tol),
        TheoremId::T3_2 => suite_t3_2(&mut rng, n, tol),
        TheoremId::T3_3 => suite_t3_3(tol),
        TheoremId::T3_4 => suite_t3_4(&mut rng, n, tol),
        TheoremId::T3_5 => suite_t3_5(&mut rng, n, tol),
        TheoremId::T4_1 => suite_t4_1(n, tol),
        TheoremId::T4_3 => suite_t4_3(tol),
        TheoremId::T4_4 => suite_t4_4(&mut rng, n, tol),
        TheoremId::T4_6 => suite_t4_6(tol),
        TheoremId::L4_5 => suite_l4_5(&mut rng, n),
        TheoremId::T5_1 => suite_t5_1(&mut rng, n, tol),
        TheoremId::L5_2 => suite_l5_2(&mut rng, n, tol),
        TheoremId::L5_3 => suite_l5_3(&mut rng, n),
        TheoremId::L5_4 => suite_l5_4(&mut rng, n),
        TheoremId::T5_5 => suite_t5_5(&mut rng, n, tol),
    };
    let details = result.unwrap_or_else(|e| {
        vec![Check {
            name: format!("suite aborted: {e}"),
            passed: false,
            value: f64::INFINITY,
            threshold: 0.0,
            relation: "<=".into(),
            samples: 0,
        }]
    });
    let verdict = if details.iter().all(|c| c.passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    VerificationRun {
        theorem_id: id,
        seed,
        samples: n,
        tolerance: *tol,
        verdict,
        details,
    }
}

/// Largest pairwise distance among `points`.
pub fn max_pairwise(points: &[&Point]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            worst = worst.max((*a - *b).norm());
        }
    }
    worst
}

/// Smallest pairwise distance among `points`.
pub fn min_pairwise(points: &[&Point]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.min((*a - *b).norm());
        }
    }
    best
}

fn five_centers(rep: &CenterReport) -> [&Point; 5] {
    [&rep.centroid, &rep.incenter, &rep.circumcenter, &rep.fermat_torricelli, &rep.monge]
}

fn gci_distances(rep: &CenterReport) -> (f64, f64, f64) {
    (
        (&rep.centroid - &rep.circumcenter).norm(),
        (&rep.circumcenter - &rep.incenter).norm(),
        (&rep.incenter - &rep.centroid).norm(),
    )
}

/// Random equifacetal tetrahedron in general position.
fn random_equifacetal(rng: &mut impl Rng) -> Result<Simplex> {
    let tri = random_acute_triangle(rng);
    let s = equifacetal_tetrahedron(tri.a, tri.b, tri.c)?;
    random_isometry(rng, 3, 1.0).apply_simplex(&s)
}

fn suite_t2_1(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut spread: f64 = 0.0;
    let mut perimeter: f64 = 0.0;
    let mut opposite: f64 = 0.0;
    let mut not_equifacetal = 0;
    for _ in 0..n {
        let s = random_equifacetal(rng)?;
        let rep = all_centers(&s, tol)?;
        spread = spread.max(max_pairwise(&five_centers(&rep)));
        perimeter = perimeter.max(relative_spread(&facet_perimeters(&s)));
        let l = |i, j| s.edge_length(i, j);
        for (x, y) in [(l(0, 1), l(2, 3)), (l(0, 2), l(1, 3)), (l(0, 3), l(1, 2))] {
            opposite = opposite.max((x - y).abs() / x);
        }
        not_equifacetal += usize::from(!is_equifacetal(&s, tol)?);
    }
    let mut separation = f64::INFINITY;
    let mut equifacetal_generic = 0;
    for _ in 0..n {
        let s = random_simplex(rng, 3, 1.0)?;
        let rep = all_centers(&s, tol)?;
        separation = separation.min(min_pairwise(&five_centers(&rep)));
        equifacetal_generic += usize::from(is_equifacetal(&s, tol)?);
    }
    Ok(vec![
        Check::at_most("equifacetal: max distance among G, I, C, F, M", spread, 1e-8, n),
        Check::at_most("equifacetal: facet perimeter spread", perimeter, tol.rel_tol, n),
        Check::at_most("equifacetal: opposite edge mismatch", opposite, tol.rel_tol, n),
        Check::failures("equifacetal: classified equifacetal", not_equifacetal, n),
        Check::above("generic: min distance among G, I, C, F, M", separation, 1e-6, n),
        Check::failures("generic: classified non-equifacetal", equifacetal_generic, n),
    ])
}

fn suite_t2_2(tol: &Tolerance) -> Result<Vec<Check>> {
    let t = solve_equal_inradius_t()?;
    let s = rhombus_fold_tetrahedron(t)?;
    let inradii = facet_inradii(&s)?;
    let max = inradii.iter().cloned().fold(f64::MIN, f64::max);
    let min = inradii.iter().cloned().fold(f64::MAX, f64::min);
    Ok(vec![
        Check::at_most("t - (3 + sqrt 33) / 6", (t - (3.0 + 33f64.sqrt()) / 6.0).abs(), 1e-12, 1),
        Check::at_most("f(t) - 1/3", (fold_face_inradius_sq4(t) - 1.0 / 3.0).abs(), 1e-12, 1),
        Check::at_most("3t^3 - 6t^2 + t + 2", (3.0 * t.powi(3) - 6.0 * t * t + t + 2.0).abs(), 1e-12, 1),
        Check::at_most("facet inradius spread", max - min, 1e-9, 1),
        Check::at_most(
            "facet inradius - 1 / (2 sqrt 3)",
            (max - 1.0 / (2.0 * 3f64.sqrt())).abs(),
            1e-9,
            1,
        ),
        Check::failures("tetrahedron is not equifacetal", usize::from(is_equifacetal(&s, tol)?), 1),
    ])
}

fn suite_t2_3(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let t = solve_equal_inradius_t()?;
    let fold = rhombus_fold_tetrahedron(t)?;
    let fold_gap = (incenter(&fold).0 - complementary_1_centroid(&fold)).norm();

    let mut equal_gap: f64 = 0.0;
    let mut missed = 0;
    for _ in 0..n {
        let s = random_equifacetal(rng)?;
        equal_gap = equal_gap.max((incenter(&s).0 - complementary_1_centroid(&s)).norm());
        missed += usize::from(!crate::classify::facet_inradii_equal(&s, tol)?);
    }
    let mut generic_gap = f64::INFINITY;
    let mut false_equal = 0;
    for k in 0..n {
        // Alternate generic tetrahedra with other members of the fold family.
        let s = if k % 2 == 0 {
            random_simplex(rng, 3, 1.0)?
        } else {
            let mut u: f64 = rng.random_range(0.3..1.7);
            if (u - 1.0).abs() < 0.05 || (u - t).abs() < 0.05 {
                u = 0.6;
            }
            rhombus_fold_tetrahedron(u)?
        };
        generic_gap = generic_gap.min((incenter(&s).0 - complementary_1_centroid(&s)).norm());
        false_equal += usize::from(crate::classify::facet_inradii_equal(&s, tol)?);
    }
    Ok(vec![
        Check::at_most("equal-inradius fold: |I - J|", fold_gap, 1e-9, 1),
        Check::at_most("equifacetal: |I - J|", equal_gap, 1e-8, n),
        Check::failures("equifacetal: facet inradii equal", missed, n),
        Check::above("unequal facet inradii: |I - J|", generic_gap, 1e-6, n),
        Check::failures("unequal facet inradii: predicate false", false_equal, n),
    ])
}

fn dim_cycle(k: usize, lo: usize, hi: usize) -> usize {
    lo + k % (hi - lo + 1)
}

fn suite_t3_1(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut worst: f64 = 0.0;
    let mut absorbed = 0;
    for k in 0..n {
        let d = dim_cycle(k, 2, 5);
        let s = random_gc_simplex(rng, d)?;
        let s = random_isometry(rng, d, 1.0).apply_simplex(&s)?;
        let rep = all_centers(&s, tol)?;
        absorbed += usize::from(rep.ft_mode != FermatMode::Floating);
        let scale = 1.0 + rep.circumradius;
        worst = worst.max(max_pairwise(&[&rep.centroid, &rep.circumcenter, &rep.fermat_torricelli]) / scale);
    }
    let mut separation = f64::INFINITY;
    for k in 0..n {
        let d = dim_cycle(k, 2, 5);
        let s = random_simplex(rng, d, 1.0)?;
        let rep = all_centers(&s, tol)?;
        separation = separation.min(min_pairwise(&[&rep.centroid, &rep.circumcenter, &rep.fermat_torricelli]));
    }
    Ok(vec![
        Check::at_most("G = C corpus: max |G, C, F| / (1 + R)", worst, tol.abs_tol, n),
        Check::failures("G = C corpus: F floating", absorbed, n),
        Check::above("generic: min pairwise distance of G, C, F", separation, 1e-6, n),
    ])
}

fn suite_t3_2(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut iv_violations = 0;
    let mut iv_samples = 0;
    let mut record_iv = |rep: &crate::classify::ClassificationReport, centers: &CenterReport| {
        let props = [rep.well_distributed, rep.equiradial, rep.equiareal];
        let held = props.iter().filter(|p| **p).count();
        let scale = 1.0 + centers.circumradius;
        let (gc, ci, ig) = gci_distances(centers);
        let all = [gc, ci, ig].iter().all(|x| *x <= tol.abs_tol * scale);
        iv_samples += 1;
        if (held >= 2 && held != 3) || (held >= 2) != all {
            iv_violations += 1;
        }
    };
    for target in Target::ALL {
        let mut fails = 0;
        let mut worst_relation: f64 = 0.0;
        for k in 0..n {
            let d = dim_cycle(k, 3, 5);
            let s = constrained_simplex(rng, d, target)?;
            let rep = classify(&s, tol)?;
            let centers = all_centers(&s, tol)?;
            let scale = 1.0 + centers.circumradius;
            let (gc, ci, ig) = gci_distances(&centers);
            let ok = match target {
                Target::CentroidIsCircumcenter => rep.well_distributed,
                Target::WellDistributed => gc <= tol.abs_tol * scale,
                Target::CircumcenterIsIncenter => rep.equiradial,
                Target::Equiradial => ci <= tol.abs_tol * scale,
                Target::IncenterIsCentroid => rep.equiareal,
                Target::Equiareal => ig <= tol.abs_tol * scale,
            };
            if matches!(target, Target::CircumcenterIsIncenter | Target::Equiradial) {
                let want = centers.circumradius.powi(2) - centers.inradius.powi(2);
                for ri in &rep.witnesses.facet_circumradii {
                    worst_relation = worst_relation.max((ri * ri - want).abs());
                }
            }
            fails += usize::from(!ok);
            record_iv(&rep, &centers);
        }
        let label = match target {
            Target::CentroidIsCircumcenter => "G = C implies well-distributed edges",
            Target::WellDistributed => "well-distributed edges imply G = C",
            Target::CircumcenterIsIncenter => "C = I implies equiradial",
            Target::Equiradial => "equiradial implies C = I",
            Target::IncenterIsCentroid => "I = G implies equiareal",
            Target::Equiareal => "equiareal implies I = G",
        };
        checks.push(Check::failures(label, fails, n));
        if matches!(target, Target::CircumcenterIsIncenter | Target::Equiradial) {
            checks.push(Check::at_most(
                format!("R_i^2 - (R^2 - r^2) on {target:?} corpus"),
                worst_relation,
                1e-9,
                n,
            ));
        }
    }
    let mut generic_fail = 0;
    for k in 0..n {
        let d = dim_cycle(k, 3, 5);
        let s = random_simplex(rng, d, 1.0)?;
        let rep = classify(&s, tol)?;
        let centers = all_centers(&s, tol)?;
        let scale = 1.0 + centers.circumradius;
        let (gc, ci, ig) = gci_distances(&centers);
        let any = rep.well_distributed
            || rep.equiradial
            || rep.equiareal
            || [gc, ci, ig].iter().any(|x| *x <= tol.abs_tol * scale);
        generic_fail += usize::from(any);
        record_iv(&rep, &centers);
    }
    for k in 0..n {
        let (lo, hi) = thm41_feasible_interval();
        let x = lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
        let (_, s) = gram_thm41(x)?;
        let rep = classify(&s, tol)?;
        let centers = all_centers(&s, tol)?;
        record_iv(&rep, &centers);
    }
    checks.push(Check::failures("generic: no predicate and no coincidence", generic_fail, n));

    // An equiradial simplex whose circumcenter lies outside has C at an
    // excenter: equidistant from every facet hyperplane but not I.
    let ext = equiareal_equiradial_not_equifacetal()?.simplex;
    let centers = all_centers(&ext, tol)?;
    let grads = barycentric_gradients(&ext)?;
    let dists: Vec<f64> = (0..=ext.dim())
        .map(|j| facet_distance(&grads, &ext, j, &centers.circumcenter).abs())
        .collect();
    checks.push(Check::at_most(
        "exterior C: spread of |C - facet hyperplane|",
        relative_spread(&dists),
        tol.rel_tol,
        1,
    ));
    checks.push(Check::above(
        "exterior C: |C - I|",
        (&centers.circumcenter - &centers.incenter).norm(),
        1e-3,
        1,
    ));
    checks.push(Check::failures("two properties imply the third and G = C = I", iv_violations, iv_samples));
    Ok(checks)
}

fn suite_t3_3(tol: &Tolerance) -> Result<Vec<Check>> {
    let (a, b, c) = scan_coincident_if_base(0.05)?;
    let out = coincident_if_simplex(a, b, c)?;
    let rep = all_centers(&out.simplex, tol)?;
    let ratio = out.base_circumradius / out.base_inradius;
    Ok(vec![
        Check::at_most("|I - F|", (&rep.incenter - &rep.fermat_torricelli).norm(), 1e-8, 1),
        Check::failures("not equifacetal", usize::from(is_equifacetal(&out.simplex, tol)?), 1),
        Check::failures("F floating", usize::from(rep.ft_mode != FermatMode::Floating), 1),
        Check::above("base R/r - 3", ratio - 3.0, 0.0, 1),
        Check::above("sqrt 15 - base R/r", 15f64.sqrt() - ratio, 0.0, 1),
        Check::above("apex height - R / sqrt 15", out.apex_height - out.center_height, 0.0, 1),
        Check::failures(
            "regular base rejected",
            usize::from(coincident_if_simplex(1.0, 1.0, 1.0).is_ok()),
            1,
        ),
    ])
}

fn suite_t3_4(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for d in 4..=6 {
        let s = equiradial_not_equiareal(d)?;
        let base_radius = regular_circumradius(d - 1);
        let radii = facet_circumradii(&s)?;
        let worst = radii.iter().map(|r| (r - base_radius).abs()).fold(0.0, f64::max);
        checks.push(Check::at_most(format!("d={d}: facet circumradius - R_T"), worst, 1e-9, 1));
        checks.push(Check::failures(format!("d={d}: equiradial"), usize::from(!is_equiradial(&s, tol)?), 1));
        checks.push(Check::above(
            format!("d={d}: facet volume spread"),
            relative_spread(&facet_volumes(&s)),
            1e-3,
            1,
        ));
        checks.push(Check::above(format!("d={d}: h - R_T"), equiradial_apex_edge(d) - base_radius, 0.0, 1));
    }
    checks.push(Check::at_most(
        "d=4: h - 1/sqrt 2",
        (equiradial_apex_edge(4) - 0.5f64.sqrt()).abs(),
        1e-15,
        1,
    ));
    checks.push(Check::failures("d=3 rejected", usize::from(equiradial_not_equiareal(3).is_ok()), 1));

    let mut worst: f64 = 0.0;
    for k in 0..n {
        let d = dim_cycle(k, 3, 5);
        let raw = random_simplex(rng, d - 1, 1.0)?;
        let (c, rt) = crate::centers::circumcenter(&raw)?;
        let base = raw.map_vertices(|v| v - &c, tol)?;
        let h_edge = rt * rng.random_range(1.1..3.0);
        let s = isosceles_over(&base, (h_edge * h_edge - rt * rt).sqrt(), tol)?;
        let formula = isosceles_circumradius(h_edge, rt)?;
        let numeric = crate::centers::circumcenter(&s)?.1;
        worst = worst.max((formula - numeric).abs() / numeric);
    }
    checks.push(Check::at_most("isosceles circumradius formula vs numeric (relative)", worst, 1e-9, n));
    Ok(checks)
}

fn suite_t3_5(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut missing = 0;
    let mut tangent_err: f64 = 0.0;
    let mut separation = f64::INFINITY;
    for k in 0..n {
        let d = dim_cycle(k, 2, 5);
        let (t, s) = edge_tangent_simplex(rng, d)?;
        match one_center(&s, tol)? {
            Some(oc) => {
                for (a, b) in oc.tangent_lengths.iter().zip(&t) {
                    tangent_err = tangent_err.max((a - b).abs());
                }
                let (c, _) = crate::centers::circumcenter(&s)?;
                separation = separation.min((&oc.center - c).norm());
            }
            None => missing += 1,
        }
    }
    let mut regular_gap: f64 = 0.0;
    for d in 2..=6 {
        let s = regular_simplex(d, 1.0)?;
        let oc = one_center(&s, tol)?;
        regular_gap = regular_gap.max(oc.map_or(f64::INFINITY, |o| o.center.norm()));
    }
    let mut spurious = 0;
    for k in 0..n {
        let d = dim_cycle(k, 3, 5);
        let s = random_simplex(rng, d, 1.0)?;
        spurious += usize::from(one_center(&s, tol)?.is_some());
    }
    Ok(vec![
        Check::failures("edge-tangent corpus: 1-center found", missing, n),
        Check::at_most("edge-tangent corpus: tangent length error", tangent_err, 1e-8, n),
        Check::above("non-regular: |1-center - C|", separation, 1e-6, n),
        Check::at_most("regular: |1-center - C|", regular_gap, 1e-9, 5),
        Check::failures("generic d >= 3: no 1-center", spurious, n),
    ])
}

fn suite_t4_1(n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let (lo, hi) = thm41_feasible_interval();
    let want_lo = -(1.0 + 5f64.sqrt()) / 4.0;
    let want_hi = (5f64.sqrt() - 1.0) / 4.0;
    let mut spread: f64 = 0.0;
    let mut det_err: f64 = 0.0;
    let mut trace_err: f64 = 0.0;
    for k in 0..n {
        let x = lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
        let (g, s) = gram_thm41(x)?;
        trace_err = trace_err.max((g.trace() - 5.0).abs());
        let rep = all_centers(&s, tol)?;
        spread = spread.max(max_pairwise(&[
            &rep.centroid,
            &rep.circumcenter,
            &rep.incenter,
            &rep.fermat_torricelli,
        ]));
        let want = thm41_facet_determinant(x);
        for j in 0..5 {
            det_err = det_err.max((facet_gram_determinant(&s, j) - want).abs() / want);
        }
    }
    let (_, near) = gram_thm41(-0.25 + 1e-6)?;
    let (_, zero) = gram_thm41(0.0)?;
    Ok(vec![
        Check::at_most("feasible interval lower end", (lo - want_lo).abs(), 1e-6, 1),
        Check::at_most("feasible interval upper end", (hi - want_hi).abs(), 1e-6, 1),
        Check::at_most("max distance among G, C, I, F", spread, 1e-8, n),
        Check::at_most("facet determinant vs (25/4)(1 - 2x - 4x^2), relative", det_err, 1e-8, n),
        Check::at_most("Gram trace - 5", trace_err, 0.0, n),
        Check::failures(
            "x = -1/4 + 1e-6 regular within 1e-4",
            usize::from(!is_regular(&near, &Tolerance::new(tol.abs_tol, 1e-4)?)),
            1,
        ),
        Check::failures("x = 0 not regular", usize::from(is_regular(&zero, tol)), 1),
    ])
}

fn suite_t4_3(tol: &Tolerance) -> Result<Vec<Check>> {
    let x = thm43_parameter();
    let (g, s) = gram_thm43()?;
    let ev = g.eigenvalues();
    let rep = all_centers(&s, tol)?;
    let poly = thm43_facet_polynomial(x);
    let det_err = (0..5)
        .map(|j| (facet_gram_determinant(&s, j) - poly).abs() / poly)
        .fold(0.0, f64::max);
    let gc = (&rep.centroid - &rep.circumcenter).norm();
    let gf = (&rep.centroid - &rep.fermat_torricelli).norm();
    let cf = (&rep.circumcenter - &rep.fermat_torricelli).norm();
    Ok(vec![
        Check::at_most("x^2 - 8x - 1", (x * x - 8.0 * x - 1.0).abs(), 1e-14, 1),
        Check::at_most("smallest |eigenvalue|", ev[4].abs(), 1e-10, 1),
        Check::above("fourth eigenvalue", ev[3], 1e-3, 1),
        Check::at_most("facet volume spread", relative_spread(&facet_volumes(&s)), 1e-9, 1),
        Check::at_most("facet determinant vs 4 - 20x - 4x^2 + 20x^3, relative", det_err, 1e-9, 1),
        Check::at_most("|C|", rep.circumcenter.norm(), tol.abs_tol, 1),
        Check::above("|G - C|", gc, 1e-4, 1),
        Check::above("|G - F|", gf, 1e-4, 1),
        Check::above("|C - F|", cf, 1e-4, 1),
        Check::at_most(
            "row sums of G nonzero",
            -(0..5)
                .map(|i| gram_thm43_matrix(x).row(i).sum().abs())
                .fold(0.0, f64::max),
            -1e-3,
            1,
        ),
    ])
}

fn suite_t4_4(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let (_, s) = gram_thm43()?;
    let rep = all_centers(&s, tol)?;
    let (gc, ci, ig) = gci_distances(&rep);
    let mut min_other = f64::INFINITY;
    let mut worst_gc: f64 = 0.0;
    for _ in 0..n {
        let s = random_gc_simplex(rng, 4)?;
        let rep = all_centers(&s, tol)?;
        let (gc, ci, ig) = gci_distances(&rep);
        worst_gc = worst_gc.max(gc);
        min_other = min_other.min(ci.min(ig));
    }
    Ok(vec![
        Check::at_most("equiareal example: |I - G|", ig, tol.abs_tol * (1.0 + rep.circumradius), 1),
        Check::above("equiareal example: |G - C|", gc, 1e-4, 1),
        Check::above("equiareal example: |C - I|", ci, 1e-4, 1),
        Check::at_most("G = C corpus: |G - C|", worst_gc, tol.abs_tol, n),
        Check::above("G = C corpus: min(|C - I|, |I - G|)", min_other, 1e-6, n),
    ])
}

fn suite_t4_6(tol: &Tolerance) -> Result<Vec<Check>> {
    let out = equiareal_equiradial_not_equifacetal()?;
    let tri = out.triangle;
    let h2 = out.h * out.h;
    let rep = classify(&out.simplex, tol)?;

    // Moving the apex so that h^2 grows by 1% breaks one of the two properties.
    let base = crate::geometry::facet(&out.simplex, 4)?;
    let rt2 = tri.u / 8.0;
    let bumped = isosceles_over(&base_centered(&base, tol)?, (1.01 * h2 - rt2).sqrt(), tol)?;
    let bumped_rep = classify(&bumped, tol)?;
    let grown = bumped_rep
        .witnesses
        .facet_volume_spread
        .max(bumped_rep.witnesses.facet_circumradius_spread);
    Ok(vec![
        Check::at_most("R - 1", (tri.circumradius - 1.0).abs(), 1e-10, 1),
        Check::at_most("u - 25/3", (tri.u - 25.0 / 3.0).abs(), 1e-10, 1),
        Check::at_most("h^2 - 5/3", (h2 - 5.0 / 3.0).abs(), 1e-10, 1),
        Check::at_most("h^2 - (2u - 15 R^2)", (h2 - (2.0 * tri.u - 15.0)).abs(), 1e-10, 1),
        Check::at_most("2h^4 - u(h^2 - R^2)", (2.0 * h2 * h2 - tri.u * (h2 - 1.0)).abs(), 1e-10, 1),
        Check::failures("equiareal", usize::from(!rep.equiareal), 1),
        Check::failures("equiradial", usize::from(!rep.equiradial), 1),
        Check::failures("not equifacetal", usize::from(rep.equifacetal), 1),
        Check::above("1% change of h^2: witness spread", grown, 10.0 * tol.rel_tol, 1),
    ])
}

/// A facet returned by [`crate::geometry::facet`] re-centered at its circumcenter.
fn base_centered(base: &Simplex, tol: &Tolerance) -> Result<Simplex> {
    let (c, _) = crate::centers::circumcenter(base)?;
    base.map_vertices(|v| v - &c, tol)
}

fn suite_l4_5(rng: &mut impl Rng, n: usize) -> Result<Vec<Check>> {
    let mut bound_violation: f64 = 0.0;
    let mut identity: f64 = 0.0;
    for _ in 0..n {
        let m = random_acute_triangle(rng);
        let r2 = m.circumradius.powi(2);
        let lower = m.u / 9.0 - r2;
        let upper = r2 - m.u / 8.0;
        bound_violation = bound_violation.max(lower.max(upper) / r2);
        identity = identity.max(m.angle_identity_residual());
    }
    let right = triangle_metrics(3.0, 4.0, 5.0)?;
    let eq = triangle_metrics(1.0, 1.0, 1.0)?;
    Ok(vec![
        Check::at_most("acute: max(u/9 - R^2, R^2 - u/8) / R^2", bound_violation, 1e-12, n),
        Check::at_most("acute: u vs 8R^2(1 + cosA cosB cosC), relative", identity, 1e-10, n),
        Check::at_most("right triangle: |u - 8R^2|", (right.u - 8.0 * right.circumradius.powi(2)).abs(), 1e-12, 1),
        Check::at_most("equilateral: |u - 9R^2|", (eq.u - 9.0 * eq.circumradius.powi(2)).abs(), 1e-12, 1),
    ])
}

fn suite_t5_1(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut disagree = 0;
    let mut decisive = 0;
    let mut constructed_false = 0;
    let constructed = 50;
    for k in 0..n + constructed {
        let d = dim_cycle(k, 2, 5);
        let s = if k < n {
            random_simplex(rng, d, 1.0)?
        } else {
            let s = random_gc_simplex(rng, d)?;
            random_isometry(rng, d, 1.0).apply_simplex(&s)?
        };
        let v = theorem51_suite(&s, tol)?;
        if v.decisive {
            decisive += 1;
            disagree += usize::from(!v.agree);
        }
        if k >= n && !(v.agree && v.centroid_is_circumcenter) {
            constructed_false += 1;
        }
    }
    Ok(vec![
        Check::failures("four conditions agree", disagree, decisive),
        Check::failures("G = C corpus: all four conditions hold", constructed_false, constructed),
        Check::above("decisive samples", decisive as f64, 0.0, n + constructed),
    ])
}

fn suite_l5_2(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut regular_fail = 0;
    for d in 2..=6 {
        let reg = regular_simplex(d, 1.0)?;
        let unit = reg.map_vertices(|v| v / v.norm(), tol)?;
        regular_fail += usize::from(lemma52_structure(&unit, tol)?.map(|l| l.r) != Some(0));
    }
    let mut built_fail = 0;
    let mut built = 0;
    let mut residual: f64 = 0.0;
    for d in 4..=7 {
        for r in (2..).take_while(|r| 2 * r < d + 1) {
            let s = exterior_circumcenter_equal_cevians(d, r)?;
            let l = lemma52_structure(&s, tol)?;
            built += 1;
            match l {
                Some(l) if l.r == r && l.first.len() == r => residual = residual.max(l.residual),
                _ => built_fail += 1,
            }
        }
    }
    let mut spurious = 0;
    for k in 0..n {
        let d = dim_cycle(k, 2, 5);
        let s = random_unit_sphere_simplex(rng, d)?;
        spurious += usize::from(lemma52_structure(&s, tol)?.is_some());
    }
    Ok(vec![
        Check::failures("regular: r = 0", regular_fail, 5),
        Check::failures("exterior constructions: r recovered", built_fail, built),
        Check::at_most("exterior constructions: relation residual", residual, 1e-10, built),
        Check::failures("random inscribed: no partition", spurious, n),
    ])
}

fn suite_l5_3(rng: &mut impl Rng, n: usize) -> Result<Vec<Check>> {
    let mut sum_err: f64 = 0.0;
    let mut norm_err: f64 = 0.0;
    let mut incl: f64 = 0.0;
    let mut dependent = 0;
    for k in 0..n {
        let dim = dim_cycle(k, 2, 6);
        let v = random_unit_vector(rng, dim);
        let mut t = rng.random_range(-(dim as f64) * 0.99..dim as f64 * 0.99);
        if t.abs() < 1e-3 {
            t = 0.5;
        }
        let bs = equally_inclined_basis(&v, t, dim)?;
        let sum = bs.iter().fold(Point::zeros(dim), |a, b| a + b);
        sum_err = sum_err.max((sum - &v * t).norm());
        let mut ips = Vec::new();
        for (i, b) in bs.iter().enumerate() {
            norm_err = norm_err.max((b.norm() - 1.0).abs());
            for c in &bs[i + 1..] {
                ips.push(b.dot(c));
            }
        }
        let max = ips.iter().cloned().fold(f64::MIN, f64::max);
        let min = ips.iter().cloned().fold(f64::MAX, f64::min);
        incl = incl.max(max - min);
        let m = nalgebra::DMatrix::from_fn(dim, dim, |r, c| bs[c][r]);
        dependent += usize::from(m.determinant().abs() < 1e-9);
    }
    Ok(vec![
        Check::at_most("|sum B_j - tV|", sum_err, 1e-10, n),
        Check::at_most("| |B_j| - 1 |", norm_err, 1e-12, n),
        Check::at_most("inner product spread", incl, 1e-12, n),
        Check::failures("linearly independent", dependent, n),
    ])
}

fn suite_l5_4(rng: &mut impl Rng, n: usize) -> Result<Vec<Check>> {
    let tol = Tolerance::default();
    let mut rel: f64 = 0.0;
    let mut norm_err: f64 = 0.0;
    let mut dependent = 0;
    let mut k = 0;
    let mut done = 0;
    while done < n {
        k += 1;
        let d = dim_cycle(k, 3, 7);
        let r = rng.random_range(2..d);
        let b = rng.random_range(0.2..5.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let c = rng.random_range(0.2..5.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        if (b * r as f64 + c * (d - r + 1) as f64).abs() < 0.1 {
            continue;
        }
        done += 1;
        let out = split_sum_unit_vectors(b, c, r, d)?;
        let v = &out.vertices;
        let lhs = v[..r].iter().fold(Point::zeros(d), |a, x| a + x) * b
            + v[r..].iter().fold(Point::zeros(d), |a, x| a + x) * c;
        rel = rel.max(lhs.norm());
        for x in v {
            norm_err = norm_err.max((x.norm() - 1.0).abs());
        }
        dependent += usize::from(!affine_independence(v, &tol)?);
    }
    Ok(vec![
        Check::at_most("|b sum_first + c sum_rest|", rel, 1e-10, n),
        Check::at_most("| |A_j| - 1 |", norm_err, 1e-12, n),
        Check::failures("affinely independent", dependent, n),
    ])
}

fn suite_t5_5(rng: &mut impl Rng, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut spread: f64 = 0.0;
    let mut max_min_weight = f64::NEG_INFINITY;
    let mut wrong_r = 0;
    let mut built = 0;
    for d in 4..=7 {
        for r in (2..).take_while(|r| 2 * r < d + 1) {
            let s = exterior_circumcenter_equal_cevians(d, r)?;
            let origin = Point::zeros(d);
            let rep = cevian_feet(&s, &origin, tol)?;
            spread = spread.max(rep.spread);
            let min = barycentric(&s, &origin)?.min();
            max_min_weight = max_min_weight.max(min);
            wrong_r += usize::from(rep.lemma52_r != Some(r));
            built += 1;
        }
    }
    let mut exterior_equal = 0;
    for k in 0..n {
        let d = dim_cycle(k, 2, 3);
        let s = random_unit_sphere_simplex(rng, d)?;
        if let Some(l) = lemma52_structure(&s, tol)? {
            let outside = barycentric(&s, &Point::zeros(d))?.min() < -tol.abs_tol;
            exterior_equal += usize::from(l.r >= 1 && outside);
        }
    }
    Ok(vec![
        Check::at_most("constructions: cevian length spread", spread, 1e-9, built),
        Check::at_most("constructions: most negative weight", max_min_weight, -1e-3, built),
        Check::failures("constructions: partition size r", wrong_r, built),
        Check::failures(
            "d = 3 rejected",
            usize::from(exterior_circumcenter_equal_cevians(3, 1).is_ok()),
            1,
        ),
        Check::failures("d in {2, 3}: no exterior equal-cevian simplex", exterior_equal, n),
    ])
}

/// Gram round trip, Cayley–Menger volume, isometry equivariance of every
/// center, and the Fermat–Torricelli optimality residual on `n` random
/// simplices with `d` cycling through 2..=5.
pub fn infrastructure_checks(seed: u64, n: usize, tol: &Tolerance) -> Result<Vec<Check>> {
    let mut rng = seeded_rng(seed);
    let mut gram_err: f64 = 0.0;
    let mut volume_err: f64 = 0.0;
    let mut equivariance: f64 = 0.0;
    let mut mismatched = 0;
    let mut weiszfeld: f64 = 0.0;
    let mut absorbed_bad = 0;
    for k in 0..n {
        let d = dim_cycle(k, 2, 5);
        let s = random_simplex(&mut rng, d, 1.0)?;

        let g = gram_matrix(&s);
        let back = simplex_from_gram(&g, tol)?;
        let g2: GramSpec = gram_matrix(&back);
        let scale = g.entries().amax().max(1.0);
        gram_err = gram_err.max((g.entries() - g2.entries()).amax() / scale);

        let cm = cayley_menger_sq_volume(&s.distance_matrix(), tol)?;
        let v = simplex_volume(&s);
        volume_err = volume_err.max((cm.max(0.0).sqrt() - v).abs() / v);

        let iso = random_isometry(&mut rng, d, 1.0);
        let moved = iso.apply_simplex(&s)?;
        let a = all_centers(&s, tol)?;
        let b = all_centers(&moved, tol)?;
        let scale = 1.0 + a.circumradius;
        let na = a.named();
        let nb = b.named();
        if na.len() != nb.len() || a.ft_mode != b.ft_mode {
            mismatched += 1;
        }
        for (name, p) in na {
            match b.get(name) {
                Some(q) => equivariance = equivariance.max((iso.apply(p) - q).norm() / scale),
                None => mismatched += 1,
            }
        }

        let f = fermat_torricelli(&s, tol)?;
        match f.mode {
            FermatMode::Floating => {
                weiszfeld = weiszfeld.max(fermat_residual(&s, &f.point).norm());
            }
            FermatMode::Absorbed(i) => {
                absorbed_bad += usize::from(vertex_pull(&s, i).norm() > 1.0 + tol.abs_tol);
            }
        }
    }
    Ok(vec![
        Check::at_most("Gram round trip, relative", gram_err, 1e-9, n),
        Check::at_most("Cayley-Menger vs determinant volume, relative", volume_err, 1e-9, n),
        Check::at_most("isometry equivariance of all centers / (1 + R)", equivariance, tol.abs_tol, n),
        Check::failures("isometry preserves which centers exist", mismatched, n),
        Check::at_most("Fermat-Torricelli residual", weiszfeld, 1e-9, n),
        Check::failures("absorbed vertices satisfy |f(i)| <= 1", absorbed_bad, n),
    ])
}
