//! Seeded random corpora: generic simplices, isometries, and simplices
//! constrained to satisfy a center coincidence or a facial property.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::centers::{centroid, circumcenter, incenter};
use crate::classify::{facet_circumradii, facet_edge_square_sums};
use crate::constructions::{regular_simplex, triangle_metrics, TriangleMetrics};
use crate::error::{GeometryError, Result};
use crate::geometry::{facet_volumes, simplex_from_distances, DistanceMatrix, Point, Simplex};
use crate::tolerance::Tolerance;

/// Minimum ratio of smallest to largest singular value of the edge frame.
pub const CONDITIONING: f64 = 1e-4;
const MAX_ATTEMPTS: usize = 10_000;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    /// Circumcenter at the origin and circumradius 1.
    UnitCircumradius,
    /// Centroid at the origin.
    Centered,
    /// Every triangular face is acute.
    AcuteBase,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomCorpusSpec {
    pub dimension: usize,
    pub count: usize,
    /// Coordinates are drawn uniformly from `[-range, range]`.
    pub range: f64,
    pub constraint: Option<Constraint>,
    pub seed: u64,
    /// Draws allowed per simplex when a constraint is filtered by rejection.
    #[serde(default = "default_max_attempts")]
    pub max_attempts: usize,
}

pub const DEFAULT_CORPUS_ATTEMPTS: usize = 100 * MAX_ATTEMPTS;

fn default_max_attempts() -> usize {
    DEFAULT_CORPUS_ATTEMPTS
}

fn well_conditioned(vertices: &[Point]) -> bool {
    let d = vertices.len() - 1;
    let last = &vertices[d];
    let frame = DMatrix::from_fn(d, d, |r, c| vertices[c][r] - last[r]);
    let sv = frame.singular_values();
    let max = sv.max();
    max > 0.0 && sv.min() >= CONDITIONING * max
}

fn checked(vertices: Vec<Point>) -> Option<Simplex> {
    if well_conditioned(&vertices) {
        Simplex::new(vertices, &Tolerance::default()).ok()
    } else {
        None
    }
}

/// Vertices drawn i.i.d. uniform in the cube `[-range, range]^d`, rejected
/// until the edge frame is well conditioned.
pub fn random_simplex(rng: &mut impl Rng, d: usize, range: f64) -> Result<Simplex> {
    for _ in 0..MAX_ATTEMPTS {
        let verts = (0..=d)
            .map(|_| Point::from_fn(d, |_, _| rng.random_range(-range..=range)))
            .collect();
        if let Some(s) = checked(verts) {
            return Ok(s);
        }
    }
    Err(GeometryError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        reason: "no well-conditioned simplex drawn".into(),
    })
}

pub fn random_unit_vector(rng: &mut impl Rng, d: usize) -> Point {
    loop {
        let v = Point::from_fn(d, |_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

/// `d + 1` independent uniform points on the unit sphere, so the circumcenter
/// is the origin and the circumradius is 1.
pub fn random_unit_sphere_simplex(rng: &mut impl Rng, d: usize) -> Result<Simplex> {
    for _ in 0..MAX_ATTEMPTS {
        let verts = (0..=d).map(|_| random_unit_vector(rng, d)).collect();
        if let Some(s) = checked(verts) {
            return Ok(s);
        }
    }
    Err(GeometryError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        reason: "no well-conditioned inscribed simplex drawn".into(),
    })
}

/// Orthogonal map plus translation.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    pub linear: DMatrix<f64>,
    pub translation: Point,
}

impl Isometry {
    pub fn apply(&self, p: &Point) -> Point {
        &self.linear * p + &self.translation
    }

    pub fn apply_simplex(&self, s: &Simplex) -> Result<Simplex> {
        s.map_vertices(|v| self.apply(v), &Tolerance::default())
    }
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// signs of `R`'s diagonal folded into `Q`) and a uniform translation.
pub fn random_isometry(rng: &mut impl Rng, d: usize, shift: f64) -> Isometry {
    let gauss = DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = gauss.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..d {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    let translation = Point::from_fn(d, |_, _| rng.random_range(-shift..=shift));
    Isometry {
        linear: q,
        translation,
    }
}

/// Unit vectors summing to zero: the centroid and circumcenter coincide at
/// the origin. The last two vectors close the sum.
pub fn random_gc_simplex(rng: &mut impl Rng, d: usize) -> Result<Simplex> {
    if d < 2 {
        return Err(GeometryError::Precondition("need d >= 2".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let mut verts: Vec<Point> = (0..d - 1).map(|_| random_unit_vector(rng, d)).collect();
        let w = -verts.iter().fold(Point::zeros(d), |a, v| a + v);
        let wn = w.norm();
        if !(wn > 1e-3 && wn < 2.0 - 1e-3) {
            continue;
        }
        let mut n = random_unit_vector(rng, d);
        n -= &w * (w.dot(&n) / (wn * wn));
        if n.norm() < 1e-6 {
            continue;
        }
        n /= n.norm();
        let h = (1.0 - wn * wn / 4.0).sqrt();
        verts.push(&w / 2.0 + &n * h);
        verts.push(&w / 2.0 - &n * h);
        if let Some(s) = checked(verts) {
            return Ok(s);
        }
    }
    Err(GeometryError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        reason: "no well-conditioned zero-sum configuration drawn".into(),
    })
}

/// Acute triangle with sides in `[1, 2]`.
pub fn random_acute_triangle(rng: &mut impl Rng) -> TriangleMetrics {
    loop {
        let a = rng.random_range(1.0..2.0);
        let b = rng.random_range(1.0..2.0);
        let c = rng.random_range(1.0..2.0);
        if let Ok(m) = triangle_metrics(a, b, c) {
            let cos = m.cosines();
            if cos.iter().all(|x| *x > 1e-3) {
                return m;
            }
        }
    }
}

/// Simplex with edge lengths `t_i + t_j` for tangent lengths drawn from
/// `[0.5, 1.5]`; its edge-tangent sphere exists by construction.
pub fn edge_tangent_simplex(rng: &mut impl Rng, d: usize) -> Result<(Vec<f64>, Simplex)> {
    let tol = Tolerance::default();
    for _ in 0..MAX_ATTEMPTS {
        let t: Vec<f64> = (0..=d).map(|_| rng.random_range(0.5..1.5)).collect();
        let m = DMatrix::from_fn(d + 1, d + 1, |i, j| if i == j { 0.0 } else { t[i] + t[j] });
        let Ok(dm) = DistanceMatrix::new(m, &tol) else { continue };
        let Ok(s) = simplex_from_distances(&dm, &tol) else { continue };
        if well_conditioned(s.vertices()) {
            return Ok((t, s));
        }
    }
    Err(GeometryError::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        reason: "no embeddable tangent-length system drawn".into(),
    })
}

pub fn generate_corpus(spec: &RandomCorpusSpec) -> Result<Vec<Simplex>> {
    if spec.dimension == 0 || !(spec.range > 0.0 && spec.range.is_finite()) {
        return Err(GeometryError::Precondition(format!(
            "corpus needs dimension >= 1 and a positive range, got d={}, range={}",
            spec.dimension, spec.range
        )));
    }
    let tol = Tolerance::default();
    let mut rng = seeded_rng(spec.seed);
    let d = spec.dimension;
    let mut out = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let s = match spec.constraint {
            None => random_simplex(&mut rng, d, spec.range)?,
            Some(Constraint::Centered) => {
                let s = random_simplex(&mut rng, d, spec.range)?;
                let g = centroid(&s);
                s.map_vertices(|v| v - &g, &tol)?
            }
            Some(Constraint::UnitCircumradius) => {
                let s = random_simplex(&mut rng, d, spec.range)?;
                let (c, r) = circumcenter(&s)?;
                s.map_vertices(|v| (v - &c) / r, &tol)?
            }
            Some(Constraint::AcuteBase) => random_acute_faced(&mut rng, d, spec.range, spec.max_attempts)?,
        };
        out.push(s);
    }
    for s in &out {
        verify_constraint(s, spec.constraint, &tol)?;
    }
    Ok(out)
}

fn all_faces_acute(s: &Simplex) -> bool {
    let n = s.dim() + 1;
    let l2 = |i, j| s.edge_length(i, j).powi(2);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (l2(j, k), l2(i, k), l2(i, j));
                if a >= b + c || b >= a + c || c >= a + b {
                    return false;
                }
            }
        }
    }
    true
}

fn random_acute_faced(rng: &mut impl Rng, d: usize, range: f64, attempts: usize) -> Result<Simplex> {
    for _ in 0..attempts {
        let s = random_simplex(rng, d, range)?;
        if all_faces_acute(&s) {
            return Ok(s);
        }
    }
    Err(GeometryError::GenerationFailed {
        attempts,
        reason: "no simplex with all triangular faces acute drawn".into(),
    })
}

fn verify_constraint(s: &Simplex, c: Option<Constraint>, tol: &Tolerance) -> Result<()> {
    let ok = match c {
        None => true,
        Some(Constraint::Centered) => centroid(s).norm() <= tol.abs_tol * (1.0 + s.diameter()),
        Some(Constraint::UnitCircumradius) => s
            .vertices()
            .iter()
            .all(|v| (v.norm() - 1.0).abs() <= tol.abs_tol),
        Some(Constraint::AcuteBase) => all_faces_acute(s),
    };
    if ok {
        Ok(())
    } else {
        Err(GeometryError::GenerationFailed {
            attempts: 1,
            reason: format!("generated simplex violates constraint {c:?}"),
        })
    }
}

/// Target property for [`constrained_simplex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    CentroidIsCircumcenter,
    CircumcenterIsIncenter,
    IncenterIsCentroid,
    WellDistributed,
    Equiradial,
    Equiareal,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::CentroidIsCircumcenter,
        Target::CircumcenterIsIncenter,
        Target::IncenterIsCentroid,
        Target::WellDistributed,
        Target::Equiradial,
        Target::Equiareal,
    ];

    fn residual(self, s: &Simplex) -> Result<Vec<f64>> {
        let diffs = |v: Vec<f64>| v[1..].iter().map(|x| x - v[0]).collect::<Vec<_>>();
        Ok(match self {
            Target::CentroidIsCircumcenter => (centroid(s) - circumcenter(s)?.0).iter().copied().collect(),
            Target::CircumcenterIsIncenter => (circumcenter(s)?.0 - incenter(s).0).iter().copied().collect(),
            Target::IncenterIsCentroid => (incenter(s).0 - centroid(s)).iter().copied().collect(),
            Target::WellDistributed => diffs(facet_edge_square_sums(s)),
            Target::Equiradial => diffs(facet_circumradii(s)?),
            Target::Equiareal => diffs(facet_volumes(s)),
        })
    }
}

fn from_flat(x: &[f64], d: usize) -> Simplex {
    Simplex::from_vertices_unchecked(
        (0..=d).map(|i| Point::from_column_slice(&x[i * d..(i + 1) * d])).collect(),
    )
}

fn residual_at(target: Target, x: &[f64], d: usize) -> Option<nalgebra::DVector<f64>> {
    let r = target.residual(&from_flat(x, d)).ok()?;
    let v = nalgebra::DVector::from_vec(r);
    v.iter().all(|x| x.is_finite()).then_some(v)
}

/// Simplex satisfying `target` to about `1e-13`, found by Gauss–Newton with
/// minimal-norm steps from a perturbed regular simplex. The perturbation is
/// kept, so the result is generically far from regular.
pub fn constrained_simplex(rng: &mut impl Rng, d: usize, target: Target) -> Result<Simplex> {
    let reg = regular_simplex(d, 1.0)?;
    let n = d * (d + 1);
    for _ in 0..50 {
        let mut x: Vec<f64> = reg
            .vertices()
            .iter()
            .flat_map(|v| v.iter().copied().collect::<Vec<_>>())
            .map(|c| c + rng.random_range(-0.15..0.15))
            .collect();
        if let Some(s) = gauss_newton(target, &mut x, d, n) {
            if well_conditioned(s.vertices())
                && !crate::classify::is_regular(&s, &Tolerance::new(1e-9, 1e-3)?)
                && (target != Target::Equiradial || circumcenter_inside(&s)?)
            {
                return Ok(s);
            }
        }
    }
    Err(GeometryError::GenerationFailed {
        attempts: 50,
        reason: format!("Gauss-Newton did not reach {target:?} in d={d}"),
    })
}

/// Equiradial simplices with an exterior circumcenter have C at an excenter,
/// so the Equiradial corpus keeps C inside.
fn circumcenter_inside(s: &Simplex) -> Result<bool> {
    let (c, _) = circumcenter(s)?;
    Ok(crate::geometry::barycentric(s, &c)?.min() > 1e-3)
}

fn gauss_newton(target: Target, x: &mut [f64], d: usize, n: usize) -> Option<Simplex> {
    let h = 1e-6;
    let mut r = residual_at(target, x, d)?;
    for _ in 0..60 {
        if r.norm() <= 1e-14 {
            break;
        }
        let m = r.len();
        let mut jac = DMatrix::zeros(m, n);
        for k in 0..n {
            let orig = x[k];
            x[k] = orig + h;
            let rp = residual_at(target, x, d);
            x[k] = orig - h;
            let rm = residual_at(target, x, d);
            x[k] = orig;
            let col = (rp? - rm?) / (2.0 * h);
            jac.set_column(k, &col);
        }
        let step = jac.svd(true, true).solve(&r, 1e-12).ok()?;
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a - scale * s).collect();
            if let Some(rt) = residual_at(target, &trial, d) {
                if rt.norm() < r.norm() {
                    x.copy_from_slice(&trial);
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (r.norm() <= 1e-12).then(|| from_flat(x, d))
}
