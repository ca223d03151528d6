//! Deterministic generators for the extremal and counterexample simplices:
//! equifacetal tetrahedra, isosceles simplices over a centered base, the
//! rhombus-fold family, Gram-matrix constructions in dimension four and
//! unit-vector configurations with prescribed weighted sums.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::centers::{circumcenter, fermat_torricelli, incenter, FermatMode};
use crate::error::{GeometryError, Result};
use crate::geometry::{
    affine_independence, gram_matrix, point, simplex_from_gram, GramSpec, Point, Simplex,
};
use crate::tolerance::Tolerance;

const ROOT_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 200;

fn precondition(msg: impl Into<String>) -> GeometryError {
    GeometryError::Precondition(msg.into())
}

/// Bisect `f` on `[lo, hi]`, where `f(lo)` and `f(hi)` have opposite signs.
pub(crate) fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(precondition(format!(
            "root is not bracketed on [{lo}, {hi}] (values {flo:e}, {fhi:e})"
        )));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || hi - lo <= ROOT_TOL * 1e-3 * (1.0 + mid.abs()) {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Circumradius of the regular k-simplex with unit edge, `sqrt(k / (2 (k + 1)))`.
pub fn regular_circumradius(k: usize) -> f64 {
    (k as f64 / (2.0 * (k as f64 + 1.0))).sqrt()
}

/// Regular d-simplex with the given edge, centered at its circumcenter.
pub fn regular_simplex(d: usize, edge: f64) -> Result<Simplex> {
    if d == 0 || !(edge > 0.0 && edge.is_finite()) {
        return Err(precondition(format!("regular simplex needs d >= 1 and edge > 0, got d={d}, edge={edge}")));
    }
    // e_1..e_d together with t(1,..,1), t = (1 - sqrt(d+1)) / d, has all edges sqrt 2.
    let t = (1.0 - ((d + 1) as f64).sqrt()) / d as f64;
    let mut verts: Vec<Point> = (0..d)
        .map(|i| Point::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 }))
        .collect();
    verts.push(Point::from_element(d, t));
    let center = verts.iter().fold(Point::zeros(d), |a, v| a + v) / (d + 1) as f64;
    let scale = edge / 2f64.sqrt();
    let verts = verts.into_iter().map(|v| (v - &center) * scale).collect();
    Ok(Simplex::from_vertices_unchecked(verts))
}

/// Metric data of a triangle with sides `a, b, c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleMetrics {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Area.
    pub area: f64,
    pub circumradius: f64,
    pub inradius: f64,
    /// `a^2 + b^2 + c^2`
    pub u: f64,
    /// `a^2 b^2 + b^2 c^2 + c^2 a^2`
    pub v: f64,
    /// `a^2 b^2 c^2`
    pub w: f64,
    /// `16 K^2 = 4v - u^2`
    pub q: f64,
    pub acute: bool,
}

impl TriangleMetrics {
    /// Cosines of the angles opposite `a`, `b`, `c`.
    pub fn cosines(&self) -> [f64; 3] {
        let (a2, b2, c2) = (self.a * self.a, self.b * self.b, self.c * self.c);
        [
            (b2 + c2 - a2) / (2.0 * self.b * self.c),
            (a2 + c2 - b2) / (2.0 * self.a * self.c),
            (a2 + b2 - c2) / (2.0 * self.a * self.b),
        ]
    }

    /// Relative residual of `u = 8 R^2 (1 + cos A cos B cos C)`.
    pub fn angle_identity_residual(&self) -> f64 {
        let [ca, cb, cc] = self.cosines();
        let rhs = 8.0 * self.circumradius.powi(2) * (1.0 + ca * cb * cc);
        (self.u - rhs).abs() / self.u
    }
}

pub fn triangle_metrics(a: f64, b: f64, c: f64) -> Result<TriangleMetrics> {
    let sides = [a, b, c];
    if sides.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(precondition("triangle sides must be positive"));
    }
    if a >= b + c || b >= a + c || c >= a + b {
        return Err(precondition(format!(
            "sides {a}, {b}, {c} violate the strict triangle inequality"
        )));
    }
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let u = a2 + b2 + c2;
    let v = a2 * b2 + b2 * c2 + c2 * a2;
    let w = a2 * b2 * c2;
    // Product form of Heron is more accurate than 4v - u^2 for thin triangles.
    let q = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
    let area = q.sqrt() / 4.0;
    Ok(TriangleMetrics {
        a,
        b,
        c,
        area,
        circumradius: (w / q).sqrt(),
        inradius: 2.0 * area / (a + b + c),
        u,
        v,
        w,
        q,
        acute: a2 < b2 + c2 && b2 < a2 + c2 && c2 < a2 + b2,
    })
}

/// Tetrahedron with edges `1, 1, 1, 1, 1, t`: a unit rhombus folded along its
/// short diagonal `AC` until `|BD| = t`. Vertex order `A, B, C, D`.
pub fn rhombus_fold_tetrahedron(t: f64) -> Result<Simplex> {
    let limit = 3f64.sqrt();
    if !(t > 0.0 && t < limit) {
        return Err(precondition(format!("fold parameter {t} outside (0, sqrt 3)")));
    }
    let h = limit / 2.0;
    let cos = 1.0 - 2.0 * t * t / 3.0;
    let sin = (1.0 - cos * cos).max(0.0).sqrt();
    let verts = vec![
        point(&[0.0, 0.0, 0.0]),
        point(&[0.5, h, 0.0]),
        point(&[1.0, 0.0, 0.0]),
        point(&[0.5, h * cos, h * sin]),
    ];
    Simplex::new(verts, &Tolerance::default())
}

/// Four times the squared inradius of the isosceles triangle `(1, 1, t)`,
/// `t^2 (2 - t) / (t + 2)`.
pub fn fold_face_inradius_sq4(t: f64) -> f64 {
    t * t * (2.0 - t) / (t + 2.0)
}

/// The fold parameter `t != 1` in `(0, sqrt 3)` at which the faces
/// `(1, 1, t)` and `(1, 1, 1)` have equal inradii.
pub fn solve_equal_inradius_t() -> Result<f64> {
    let target = fold_face_inradius_sq4(1.0);
    let g = |t: f64| fold_face_inradius_sq4(t) - target;
    // g > 0 just above 1; walk right until it changes sign.
    let limit = 3f64.sqrt();
    let mut lo = 1.0 + 1e-3;
    let step = 1e-2;
    while lo + step < limit && g(lo + step) > 0.0 {
        lo += step;
    }
    bisect(lo, (lo + step).min(limit), g)
}

/// Equifacetal tetrahedron `T = (a, b, c, a, b, c)` centered at the origin,
/// with opposite edges equal. Edges in the order `a12, a23, a13, a34, a14,
/// a24` read `a, b, c, a, b, c`.
pub fn equifacetal_tetrahedron(a: f64, b: f64, c: f64) -> Result<Simplex> {
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let p2 = (-a2 + b2 + c2) / 8.0;
    let q2 = (a2 - b2 + c2) / 8.0;
    let s2 = (a2 + b2 - c2) / 8.0;
    if !(p2 > 0.0 && q2 > 0.0 && s2 > 0.0) {
        return Err(precondition(format!("sides {a}, {b}, {c} do not form an acute triangle")));
    }
    let (p, q, s) = (p2.sqrt(), q2.sqrt(), s2.sqrt());
    let verts = vec![
        point(&[p, q, s]),
        point(&[p, -q, -s]),
        point(&[-p, -q, s]),
        point(&[-p, q, -s]),
    ];
    Simplex::new(verts, &Tolerance::default())
}

/// Isosceles simplex `[T, P]`: the base is embedded in the hyperplane
/// `x_d = 0` and the apex is placed at `(0, .., 0, h)`.
pub fn isosceles_over(base: &Simplex, apex_height: f64, tol: &Tolerance) -> Result<Simplex> {
    if !(apex_height > 0.0 && apex_height.is_finite()) {
        return Err(precondition(format!("apex height must be positive, got {apex_height}")));
    }
    let (c, radius) = circumcenter(base)?;
    if c.norm() > tol.abs_tol * (1.0 + radius) {
        return Err(precondition(format!(
            "base circumcenter is {:e} away from the origin",
            c.norm()
        )));
    }
    let d = base.dim() + 1;
    let mut verts: Vec<Point> = base
        .vertices()
        .iter()
        .map(|v| Point::from_fn(d, |r, _| if r < d - 1 { v[r] } else { 0.0 }))
        .collect();
    verts.push(Point::from_fn(d, |r, _| if r == d - 1 { apex_height } else { 0.0 }));
    Simplex::new(verts, tol)
}

/// Circumradius of an isosceles simplex with apex edge `h` over a base of
/// circumradius `R_T`: `h^2 / (2 sqrt(h^2 - R_T^2))`.
pub fn isosceles_circumradius(h_edge: f64, base_circumradius: f64) -> Result<f64> {
    if !(base_circumradius > 0.0 && h_edge > base_circumradius) {
        return Err(precondition(format!(
            "apex edge {h_edge} cannot reach a base of circumradius {base_circumradius}"
        )));
    }
    Ok(h_edge * h_edge / (2.0 * (h_edge * h_edge - base_circumradius.powi(2)).sqrt()))
}

/// Isosceles d-simplex over a regular unit-edge base whose apex edge
/// `h = R_F / sqrt(1 - R_F^2)` makes every facet share the base circumradius,
/// while the facet volumes differ. `R_F` is the circumradius of the base's
/// facets. Requires `d >= 4`.
pub fn equiradial_not_equiareal(d: usize) -> Result<Simplex> {
    if d < 4 {
        return Err(precondition(format!("equiradial non-equiareal simplices need d >= 4, got {d}")));
    }
    let ridge_radius = regular_circumradius(d - 2);
    let base_radius = regular_circumradius(d - 1);
    let h = equiradial_apex_edge(d);
    if h <= base_radius {
        return Err(precondition("apex edge does not exceed the base circumradius"));
    }
    debug_assert!(ridge_radius > 0.5);
    let base = regular_simplex(d - 1, 1.0)?;
    isosceles_over(&base, (h * h - base_radius * base_radius).sqrt(), &Tolerance::default())
}

/// Apex edge of [`equiradial_not_equiareal`].
pub fn equiradial_apex_edge(d: usize) -> f64 {
    let rf = regular_circumradius(d.saturating_sub(2));
    rf / (1.0 - rf * rf).sqrt()
}

/// Result of the incenter / Fermat–Torricelli coincidence construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CoincidentIf {
    pub simplex: Simplex,
    pub base: (f64, f64, f64),
    pub base_circumradius: f64,
    pub base_inradius: f64,
    pub apex_height: f64,
    /// Common height of the incenter and the Fermat–Torricelli point above the base.
    pub center_height: f64,
}

/// Circumradius and inradius of the equifacetal tetrahedron `(a, b, c, a, b, c)`.
pub fn equifacetal_radii(a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    let t = equifacetal_tetrahedron(a, b, c)?;
    let (_, r_big) = circumcenter(&t)?;
    let (_, r_small) = incenter(&t);
    Ok((r_big, r_small))
}

/// Scan isosceles acute bases `(1, 1, c)` for one whose equifacetal
/// tetrahedron satisfies `3 + delta < R / r < sqrt 15 - delta`.
pub fn scan_coincident_if_base(delta: f64) -> Result<(f64, f64, f64)> {
    let hi = 15f64.sqrt() - delta;
    let lo = 3.0 + delta;
    let mut c = 1.0;
    while c < 2f64.sqrt() {
        c += 1e-3;
        if let Ok((rb, rs)) = equifacetal_radii(1.0, 1.0, c) {
            let ratio = rb / rs;
            if ratio > lo && ratio < hi {
                return Ok((1.0, 1.0, c));
            }
        }
    }
    Err(precondition("no acute isosceles base found in the admissible ratio window"))
}

/// Isosceles 4-simplex over the equifacetal tetrahedron `(a, b, c, a, b, c)`
/// whose incenter coincides with its (floating) Fermat–Torricelli point.
///
/// The Fermat–Torricelli point sits at height `R / sqrt 15` once the apex is
/// high enough; the apex height is bisected until the incenter reaches the
/// same height. Needs `3 r < R < sqrt 15 r` for the base.
pub fn coincident_if_simplex(a: f64, b: f64, c: f64) -> Result<CoincidentIf> {
    let tol = Tolerance::default();
    let base = equifacetal_tetrahedron(a, b, c)?;
    let (_, big) = circumcenter(&base)?;
    let (_, small) = incenter(&base);
    let ratio = big / small;
    let strict = 1e-9;
    if !(ratio > 3.0 * (1.0 + strict) && ratio < 15f64.sqrt()) {
        return Err(precondition(format!(
            "base ratio R/r = {ratio} lies outside the open window (3, sqrt 15)"
        )));
    }
    let f_height = big / 15f64.sqrt();
    let incenter_height = |h: f64| -> Result<f64> {
        let s = isosceles_over(&base, h, &tol)?;
        Ok(incenter(&s).0[3])
    };
    let mut lo = f_height;
    let mut hi = 2.0 * f_height;
    while incenter_height(hi)? < f_height {
        lo = hi;
        hi *= 2.0;
        if hi > 1e8 * big {
            return Err(precondition("apex height bisection failed to bracket"));
        }
    }
    let apex = bisect(lo, hi, |h| incenter_height(h).map(|i| i - f_height).unwrap_or(f64::NAN))?;
    let simplex = isosceles_over(&base, apex, &tol)?;
    if apex <= f_height {
        return Err(precondition("apex too low, the Fermat-Torricelli point would be absorbed"));
    }
    if let FermatMode::Absorbed(i) = fermat_torricelli(&simplex, &tol)?.mode {
        return Err(precondition(format!("Fermat-Torricelli point absorbed at vertex {i}")));
    }
    Ok(CoincidentIf {
        simplex,
        base: (a, b, c),
        base_circumradius: big,
        base_inradius: small,
        apex_height: apex,
        center_height: f_height,
    })
}

/// Gram matrix of the one-parameter family with coinciding centroid,
/// circumcenter, incenter and Fermat–Torricelli point: unit diagonal, rows
/// summing to zero, `y = Y = x` and `z = Z = X = -1/2 - x`.
pub fn gram_thm41_matrix(x: f64) -> DMatrix<f64> {
    let z = -0.5 - x;
    // (A, B, C, D) inner products; E closes each row to zero.
    let inner = [[1.0, x, x, z], [x, 1.0, z, x], [x, z, 1.0, z], [z, x, z, 1.0]];
    let mut g = DMatrix::zeros(5, 5);
    for i in 0..4 {
        for j in 0..4 {
            g[(i, j)] = inner[i][j];
        }
        let row: f64 = inner[i].iter().sum();
        g[(i, 4)] = -row;
        g[(4, i)] = -row;
    }
    g[(4, 4)] = -(0..4).map(|i| g[(4, i)]).sum::<f64>();
    g
}

/// Build and factor the family member at `x`. Fails outside the interval
/// where the matrix is positive semidefinite of rank four.
pub fn gram_thm41(x: f64) -> Result<(GramSpec, Simplex)> {
    let tol = Tolerance::default();
    let g = GramSpec::new(gram_thm41_matrix(x), &tol)?;
    let s = simplex_from_gram(&g, &tol)?;
    Ok((g, s))
}

/// Closed-form facet Gram determinant of the family, `(25/4)(1 - 2x - 4x^2)`;
/// its square root is `(5/2) sqrt(1 - 2x - 4x^2)`.
pub fn thm41_facet_determinant(x: f64) -> f64 {
    6.25 * (1.0 - 2.0 * x - 4.0 * x * x)
}

/// Numerically determined open interval of `x` for which the family's Gram
/// matrix is positive semidefinite of rank four.
pub fn thm41_feasible_interval() -> (f64, f64) {
    let tol = Tolerance::default();
    let ok = |x: f64| {
        let g = GramSpec::new(gram_thm41_matrix(x), &tol).expect("symmetric by construction");
        let ev = g.eigenvalues();
        ev[3] > tol.abs_tol * ev[0].max(1.0)
    };
    let edge = |inside: f64, outside: f64| {
        let (mut a, mut b) = (inside, outside);
        for _ in 0..MAX_BISECTIONS {
            let m = 0.5 * (a + b);
            if ok(m) {
                a = m;
            } else {
                b = m;
            }
        }
        a
    };
    (edge(0.0, -2.0), edge(0.0, 2.0))
}

/// Determinant of `M M^t` for the facet opposite vertex `j`, where the rows of
/// `M` are the facet's edge vectors from its first vertex.
pub fn facet_gram_determinant(s: &Simplex, j: usize) -> f64 {
    let d = s.dim();
    let rest: Vec<&Point> = (0..=d).filter(|&i| i != j).map(|i| s.vertex(i)).collect();
    let m = DMatrix::from_fn(d - 1, d, |r, c| rest[r + 1][c] - rest[0][c]);
    (&m * m.transpose()).determinant()
}

/// The parameter `4 - sqrt 17` of the equiareal construction with pairwise
/// distinct centroid, circumcenter and Fermat–Torricelli point.
pub fn thm43_parameter() -> f64 {
    4.0 - 17f64.sqrt()
}

pub fn gram_thm43_matrix(x: f64) -> DMatrix<f64> {
    let mut g = DMatrix::from_element(5, 5, x);
    for i in 0..5 {
        g[(i, i)] = 1.0;
    }
    g[(0, 3)] = -1.0 - 2.0 * x;
    g[(3, 0)] = -1.0 - 2.0 * x;
    g[(1, 2)] = 5.0 * x;
    g[(2, 1)] = 5.0 * x;
    g
}

/// Facet volume polynomial `4 - 20x - 4x^2 + 20x^3` of the construction.
pub fn thm43_facet_polynomial(x: f64) -> f64 {
    4.0 - 20.0 * x - 4.0 * x * x + 20.0 * x.powi(3)
}

pub fn gram_thm43() -> Result<(GramSpec, Simplex)> {
    let tol = Tolerance::default();
    let g = GramSpec::new(gram_thm43_matrix(thm43_parameter()), &tol)?;
    let s = simplex_from_gram(&g, &tol)?;
    Ok((g, s))
}

/// Parameters of the equiareal, equiradial, non-equifacetal 4-simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct EquiarealEquiradial {
    pub simplex: Simplex,
    pub triangle: TriangleMetrics,
    /// Base angle of the isosceles face triangle inscribed in the unit circle.
    pub base_angle: f64,
    /// Apex edge length.
    pub h: f64,
}

/// `a^2 + b^2 + c^2` of the isosceles triangle inscribed in the unit circle
/// with base angles `theta`.
pub fn inscribed_isosceles_u(theta: f64) -> f64 {
    4.0 * (2.0 * theta.sin().powi(2) + (2.0 * theta).sin().powi(2))
}

/// An isosceles 4-simplex over an equifacetal tetrahedron whose face
/// triangle has circumradius 1 and `u = 25/3`, with apex edge `h^2 = u / 5`.
pub fn equiareal_equiradial_not_equifacetal() -> Result<EquiarealEquiradial> {
    let target = 25.0 / 3.0;
    // u rises from 8 (right triangle) at pi/4 to 9 (equilateral) at pi/3.
    let theta = bisect(FRAC_PI_4, FRAC_PI_3, |t| inscribed_isosceles_u(t) - target)?;
    let a = 2.0 * (2.0 * theta).sin();
    let b = 2.0 * theta.sin();
    let tri = triangle_metrics(a, b, b)?;
    let base = equifacetal_tetrahedron(a, b, b)?;
    let h2 = tri.u / 5.0;
    let rt2 = tri.u / 8.0;
    if h2 <= rt2 {
        return Err(precondition("apex edge does not exceed the base circumradius"));
    }
    let simplex = isosceles_over(&base, (h2 - rt2).sqrt(), &Tolerance::default())?;
    Ok(EquiarealEquiradial {
        simplex,
        triangle: tri,
        base_angle: theta,
        h: h2.sqrt(),
    })
}

/// Orthonormal basis of the complement of the unit vector `v`, from
/// Gram–Schmidt on the standard basis, skipping the axis most aligned with `v`.
fn complement_basis(v: &Point) -> Vec<Point> {
    let dim = v.len();
    let skip = (0..dim)
        .max_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
        .unwrap_or(0);
    let mut basis: Vec<Point> = Vec::with_capacity(dim - 1);
    for k in (0..dim).filter(|&k| k != skip) {
        let mut e = Point::from_fn(dim, |r, _| if r == k { 1.0 } else { 0.0 });
        e -= v * v.dot(&e);
        for b in &basis {
            let proj = b.dot(&e);
            e -= b * proj;
        }
        basis.push(e.normalize());
    }
    basis
}

/// `dim` equally inclined unit vectors, linearly independent, summing to
/// `t V`. Requires `t` in `(-dim, dim)`, `t != 0`, and `|V| = 1`.
pub fn equally_inclined_basis(v: &Point, t: f64, dim: usize) -> Result<Vec<Point>> {
    let tol = Tolerance::default();
    if dim < 2 || v.len() != dim {
        return Err(GeometryError::DimensionMismatch(format!(
            "need dim >= 2 and a direction of length dim, got dim={dim}, |V|={}",
            v.len()
        )));
    }
    if (v.norm() - 1.0).abs() > tol.abs_tol {
        return Err(precondition(format!("direction has norm {}, expected 1", v.norm())));
    }
    let n = dim as f64;
    if t.is_nan() || t.abs() >= n || t == 0.0 {
        return Err(precondition(format!("sum length {t} must be non-zero and inside (-{dim}, {dim})")));
    }
    let x = t / (n * n - t * t).sqrt();
    let complement = complement_basis(v);
    // Regular (dim-1)-simplex of circumradius 1 inside the complement.
    let simplex = regular_simplex(dim - 1, 1.0 / regular_circumradius(dim - 1))?;
    let norm = (1.0 + x * x).sqrt();
    Ok(simplex
        .vertices()
        .iter()
        .map(|e| {
            let lifted = complement
                .iter()
                .enumerate()
                .fold(Point::zeros(dim), |acc, (k, b)| acc + b * e[k]);
            (lifted + v * x) / norm
        })
        .collect())
}

/// Output of [`split_sum_unit_vectors`].
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSum {
    pub vertices: Vec<Point>,
    /// Divisor applied to `(b, c)` so both group sums fit the equal-inclination range.
    pub scale: f64,
}

/// Affinely independent unit vectors with
/// `b (A_1 + .. + A_r) + c (A_{r+1} + .. + A_{d+1}) = 0`.
///
/// `R^d` splits as `U_{r-1} + U_1 + U_{d-r}` along coordinate axes; the first
/// `r` vectors live in `U_{r-1} + U_1` and sum to `-c' V`, the rest live in
/// `U_1 + U_{d-r}` and sum to `b' V`, where `(b', c') = (b, c) / K`.
pub fn split_sum_unit_vectors(b: f64, c: f64, r: usize, d: usize) -> Result<SplitSum> {
    if r < 2 || r + 1 > d {
        return Err(precondition(format!("need 2 <= r <= d - 1, got r={r}, d={d}")));
    }
    if b == 0.0 || c == 0.0 || !b.is_finite() || !c.is_finite() {
        return Err(precondition("coefficients must be non-zero and finite"));
    }
    let rest = d - r + 1;
    if b * r as f64 + c * rest as f64 == 0.0 {
        return Err(precondition("coefficient sum b r + c (d - r + 1) vanishes"));
    }
    let margin = 0.1;
    let scale = (1.0 + margin) * (c.abs() / r as f64).max(b.abs() / rest as f64);
    let (bs, cs) = (b / scale, c / scale);

    let axis = r - 1;
    let first = equally_inclined_basis(&unit(r, r - 1), -cs, r)?;
    let second = equally_inclined_basis(&unit(rest, 0), bs, rest)?;
    let mut vertices: Vec<Point> = first
        .iter()
        .map(|u| Point::from_fn(d, |k, _| if k < r { u[k] } else { 0.0 }))
        .collect();
    vertices.extend(second.iter().map(|u| {
        Point::from_fn(d, |k, _| if k >= axis { u[k - axis] } else { 0.0 })
    }));
    let tol = Tolerance::default();
    if !affine_independence(&vertices, &tol)? {
        return Err(GeometryError::AffinelyDependent {
            smallest: 0.0,
            threshold: tol.abs_tol,
        });
    }
    Ok(SplitSum { vertices, scale })
}

fn unit(dim: usize, k: usize) -> Point {
    Point::from_fn(dim, |r, _| if r == k { 1.0 } else { 0.0 })
}

/// Simplex with an exterior circumcenter whose cevians through the
/// circumcenter are all equal. Needs `d >= 4` and `2 <= r < (d + 1) / 2`.
pub fn exterior_circumcenter_equal_cevians(d: usize, r: usize) -> Result<Simplex> {
    if d < 4 {
        return Err(precondition(format!(
            "an exterior circumcenter with equal cevians needs d >= 4, got {d}"
        )));
    }
    if r < 2 || 2 * r > d {
        return Err(precondition(format!("need 2 <= r < (d + 1) / 2, got r={r}, d={d}")));
    }
    let b = (2 * d - 2 * r + 1) as f64;
    let c = -((2 * r - 1) as f64);
    let split = split_sum_unit_vectors(b, c, r, d)?;
    Simplex::new(split.vertices, &Tolerance::default())
}

/// Gram matrix of `s` after translating its centroid to the origin.
pub fn centered_gram(s: &Simplex) -> GramSpec {
    let g = crate::centers::centroid(s);
    let moved = Simplex::from_vertices_unchecked(s.vertices().iter().map(|v| v - &g).collect());
    gram_matrix(&moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centers::{all_centers, centroid};
    use crate::classify::{classify, facet_circumradii, facet_inradii, is_equifacetal};
    use crate::geometry::{facet_volumes, simplex_volume};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn regular_has_unit_edges() {
        for d in 1..=7 {
            let s = regular_simplex(d, 1.0).unwrap();
            for (_, _, l) in s.edges() {
                assert!((l - 1.0).abs() < 1e-14, "d={d} edge {l}");
            }
            assert!(centroid(&s).norm() < 1e-15);
            assert!((s.vertex(0).norm() - regular_circumradius(d)).abs() < 1e-14);
        }
    }

    #[test]
    fn triangle_metric_fixtures() {
        let m = triangle_metrics(3.0, 4.0, 5.0).unwrap();
        assert!((m.area - 6.0).abs() < 1e-14);
        assert!((m.circumradius - 2.5).abs() < 1e-14);
        assert!((m.inradius - 1.0).abs() < 1e-14);
        assert_eq!(m.u, 50.0);
        assert!((m.u - 8.0 * m.circumradius.powi(2)).abs() < 1e-12);
        assert!(!m.acute);
        assert!((m.q - (4.0 * m.v - m.u * m.u)).abs() < 1e-9);
        assert!((m.w - m.circumradius.powi(2) * m.q).abs() < 1e-9);

        let e = triangle_metrics(1.0, 1.0, 1.0).unwrap();
        assert!((e.circumradius - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((e.u - 9.0 * e.circumradius.powi(2)).abs() < 1e-14);

        let g = triangle_metrics(2.0, 2.2, 2.4).unwrap();
        assert!(g.acute);
        let r2 = g.circumradius.powi(2);
        assert!(g.u / 9.0 <= r2 && r2 <= g.u / 8.0);
        assert!(g.angle_identity_residual() < 1e-14);

        assert!(triangle_metrics(1.0, 2.0, 3.0).is_err());
    }

    #[test]
    fn rhombus_fold() {
        let s = rhombus_fold_tetrahedron(1.0).unwrap();
        for (_, _, l) in s.edges() {
            assert!((l - 1.0).abs() < 1e-14);
        }
        let t = solve_equal_inradius_t().unwrap();
        let s = rhombus_fold_tetrahedron(t).unwrap();
        assert!((s.edge_length(1, 3) - t).abs() < 1e-14);
        assert!(rhombus_fold_tetrahedron(3f64.sqrt()).is_err());
        assert!(rhombus_fold_tetrahedron(0.0).is_err());
        let flat = rhombus_fold_tetrahedron(3f64.sqrt() - 1e-9).unwrap();
        assert!(simplex_volume(&flat) < 1e-4);
    }

    #[test]
    fn equal_inradius_root() {
        let t = solve_equal_inradius_t().unwrap();
        assert!((t - (3.0 + 33f64.sqrt()) / 6.0).abs() < 1e-12);
        assert!((fold_face_inradius_sq4(1.0) - 1.0 / 3.0).abs() < 1e-16);
        assert!((fold_face_inradius_sq4(t) - 1.0 / 3.0).abs() < 1e-12);
        assert!((3.0 * t.powi(3) - 6.0 * t * t + t + 2.0).abs() < 1e-12);
    }

    #[test]
    fn equifacetal_examples() {
        let s = equifacetal_tetrahedron(1.0, 1.0, 1.0).unwrap();
        for (_, _, l) in s.edges() {
            assert!((l - 1.0).abs() < 1e-15);
        }
        let s = equifacetal_tetrahedron(2.0, 2.2, 2.4).unwrap();
        let want = [2.0, 2.2, 2.4, 2.0, 2.2, 2.4];
        let order = [(0, 1), (1, 2), (0, 2), (2, 3), (0, 3), (1, 3)];
        for ((i, j), w) in order.iter().zip(want) {
            assert!((s.edge_length(*i, *j) - w).abs() < 1e-14);
        }
        let (c, r) = circumcenter(&s).unwrap();
        assert!(c.norm() < 1e-15);
        assert!((r * r - (4.0 + 4.84 + 5.76) / 8.0).abs() < 1e-12);
        assert!(equifacetal_tetrahedron(1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn isosceles_examples() {
        let t = tol();
        let eq2 = regular_simplex(2, 1.0).unwrap();
        let r = regular_circumradius(2);
        let s = isosceles_over(&eq2, (1.0 - r * r).sqrt(), &t).unwrap();
        for (_, _, l) in s.edges() {
            assert!((l - 1.0).abs() < 1e-14);
        }
        let off = eq2.map_vertices(|v| v + point(&[0.1, 0.0]), &t).unwrap();
        assert!(isosceles_over(&off, 1.0, &t).is_err());
    }

    #[test]
    fn isosceles_circumradius_examples() {
        let r = isosceles_circumradius(1.0, 1.0 / 3f64.sqrt()).unwrap();
        assert!((r - (3.0f64 / 8.0).sqrt()).abs() < 1e-15);
        let rt = 0.7;
        let h = rt * 2f64.sqrt();
        assert!((isosceles_circumradius(h, rt).unwrap() - h * h / (2.0 * rt)).abs() < 1e-15);
        assert!(isosceles_circumradius(0.5, 0.5).is_err());
    }

    #[test]
    fn equiradial_construction_d4() {
        let s = equiradial_not_equiareal(4).unwrap();
        let h = equiradial_apex_edge(4);
        assert!((h - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(h > regular_circumradius(3));
        // Every facet shares the base circumradius sqrt(3/8); the base's own
        // facets (equilateral triangles) have circumradius 1/sqrt 3.
        for r in facet_circumradii(&s).unwrap() {
            assert!((r - (3.0f64 / 8.0).sqrt()).abs() < 1e-12);
        }
        let base = crate::geometry::facet(&s, 4).unwrap();
        for r in facet_circumradii(&base).unwrap() {
            assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
        let rep = classify(&s, &tol()).unwrap();
        assert!(rep.equiradial && !rep.equiareal);
        assert!(equiradial_not_equiareal(3).is_err());
    }

    #[test]
    fn equiradial_construction_d5() {
        let s = equiradial_not_equiareal(5).unwrap();
        let rep = classify(&s, &tol()).unwrap();
        assert!(rep.equiradial && !rep.equiareal);
    }

    #[test]
    fn coincident_if_rejects_equilateral() {
        assert!(coincident_if_simplex(1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn coincident_if_construction() {
        let (a, b, c) = scan_coincident_if_base(0.05).unwrap();
        let out = coincident_if_simplex(a, b, c).unwrap();
        let rep = all_centers(&out.simplex, &tol()).unwrap();
        assert!((&rep.incenter - &rep.fermat_torricelli).norm() <= 1e-8);
        assert!(!is_equifacetal(&out.simplex, &tol()).unwrap());
        assert!((rep.incenter[3] - out.center_height).abs() < 1e-8);
    }

    #[test]
    fn thm41_family() {
        let (g, s) = gram_thm41(0.0).unwrap();
        assert_eq!(g.trace(), 5.0);
        for j in 0..5 {
            assert!((facet_gram_determinant(&s, j) - 6.25).abs() < 1e-10);
        }
        let (lo, hi) = thm41_feasible_interval();
        assert!((lo + (1.0 + 5f64.sqrt()) / 4.0).abs() < 1e-8);
        assert!((hi - (5f64.sqrt() - 1.0) / 4.0).abs() < 1e-8);
        assert!(gram_thm41(0.5).is_err());
        let (_, reg) = gram_thm41(-0.25).unwrap();
        let e = reg.edge_length(0, 1);
        for (_, _, l) in reg.edges() {
            assert!((l - e).abs() < 1e-12);
        }
    }

    #[test]
    fn thm43_construction() {
        let x = thm43_parameter();
        assert!((x * x - 8.0 * x - 1.0).abs() < 1e-14);
        let (g, s) = gram_thm43().unwrap();
        let ev = g.eigenvalues();
        assert!(ev[4].abs() < 1e-10);
        assert!(ev[..4].iter().all(|&l| l > 1e-3));
        let p = thm43_facet_polynomial(x);
        for j in 0..5 {
            assert!((facet_gram_determinant(&s, j) - p).abs() < 1e-10);
        }
        let vols = facet_volumes(&s);
        assert!(crate::tolerance::relative_spread(&vols) < 1e-12);
    }

    #[test]
    fn thm46_construction() {
        let out = equiareal_equiradial_not_equifacetal().unwrap();
        let tri = out.triangle;
        assert!((tri.circumradius - 1.0).abs() < 1e-12);
        assert!((tri.u - 25.0 / 3.0).abs() < 1e-10);
        let h2 = out.h * out.h;
        assert!((h2 - 5.0 / 3.0).abs() < 1e-10);
        assert!((h2 - (2.0 * tri.u - 15.0)).abs() < 1e-10);
        assert!((2.0 * h2 * h2 - tri.u * (h2 - 1.0)).abs() < 1e-10);
        let rep = classify(&out.simplex, &tol()).unwrap();
        assert!(rep.equiareal && rep.equiradial && !rep.equifacetal);
    }

    #[test]
    fn equally_inclined_plane() {
        let v = point(&[0.0, 1.0]);
        let bs = equally_inclined_basis(&v, 1.0, 2).unwrap();
        let s3 = 3f64.sqrt() / 2.0;
        assert!((&bs[0] - point(&[s3, 0.5])).norm() < 1e-15);
        assert!((&bs[1] - point(&[-s3, 0.5])).norm() < 1e-15);
    }

    #[test]
    fn equally_inclined_bounds() {
        let v = unit(4, 2);
        let bs = equally_inclined_basis(&v, 3.9, 4).unwrap();
        let sum = bs.iter().fold(Point::zeros(4), |a, b| a + b);
        assert!((sum - &v * 3.9).norm() < 1e-12);
        let ip = bs[0].dot(&bs[1]);
        for i in 0..4 {
            assert!((bs[i].norm() - 1.0).abs() < 1e-14);
            for j in 0..4 {
                if i != j {
                    assert!((bs[i].dot(&bs[j]) - ip).abs() < 1e-13);
                }
            }
        }
        assert!(equally_inclined_basis(&v, 4.0, 4).is_err());
        assert!(equally_inclined_basis(&v, 0.0, 4).is_err());
        assert!(equally_inclined_basis(&(v * 2.0), 1.0, 4).is_err());
    }

    #[test]
    fn split_sum_d4() {
        let out = split_sum_unit_vectors(5.0, -3.0, 2, 4).unwrap();
        assert!(out.scale > 1.5f64.max(5.0 / 3.0));
        let mut rel = Point::zeros(4);
        for (k, v) in out.vertices.iter().enumerate() {
            assert!((v.norm() - 1.0).abs() < 1e-14);
            rel += v * if k < 2 { 5.0 } else { -3.0 };
        }
        assert!(rel.norm() < 1e-10);
        assert!(split_sum_unit_vectors(5.0, -3.0, 1, 4).is_err());
        assert!(split_sum_unit_vectors(3.0, -2.0, 2, 4).is_err());
    }

    #[test]
    fn exterior_circumcenter_requests() {
        assert!(exterior_circumcenter_equal_cevians(3, 1).is_err());
        assert!(exterior_circumcenter_equal_cevians(4, 3).is_err());
        let s = exterior_circumcenter_equal_cevians(5, 2).unwrap();
        assert!(s.vertices().iter().all(|v| (v.norm() - 1.0).abs() < 1e-14));
    }

    #[test]
    fn facet_inradii_of_fold() {
        let t = solve_equal_inradius_t().unwrap();
        let s = rhombus_fold_tetrahedron(t).unwrap();
        for r in facet_inradii(&s).unwrap() {
            assert!((r - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-12);
        }
    }
}
