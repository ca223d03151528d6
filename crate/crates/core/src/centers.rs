//! Classical and derived centers of a d-simplex.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::geometry::{
    barycentric_gradients, facet_volumes, serde_point, simplex_volume, Point, Simplex,
};
use crate::tolerance::Tolerance;

/// Iteration cap for the Fermat–Torricelli solver.
pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

/// Arithmetic mean of the vertices.
pub fn centroid(s: &Simplex) -> Point {
    let n = s.vertices().len() as f64;
    s.vertices()
        .iter()
        .fold(Point::zeros(s.dim()), |acc, v| acc + v)
        / n
}

/// Center and radius of the circumsphere.
///
/// Solves `2 (A_i - A_last) . y = |A_i - A_last|^2` in coordinates relative
/// to the last vertex, so the system stays well scaled under translation.
pub fn circumcenter(s: &Simplex) -> Result<(Point, f64)> {
    let d = s.dim();
    let last = s.vertex(d);
    let m = DMatrix::from_fn(d, d, |r, c| 2.0 * (s.vertex(r)[c] - last[c]));
    let rhs = DVector::from_fn(d, |r, _| (s.vertex(r) - last).norm_squared());
    let y = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| GeometryError::Singular("circumcenter system".into()))?;
    let radius = y.norm();
    Ok((last + y, radius))
}

/// Incenter `sum a_i A_i / sum a_i` weighted by facet volumes, and inradius
/// `d V / sum a_i`.
pub fn incenter(s: &Simplex) -> (Point, f64) {
    let weights = facet_volumes(s);
    let total: f64 = weights.iter().sum();
    let mut p = Point::zeros(s.dim());
    for (w, v) in weights.iter().zip(s.vertices()) {
        p += v * (*w / total);
    }
    let r = s.dim() as f64 * simplex_volume(s) / total;
    (p, r)
}

/// Whether the Fermat–Torricelli point lies inside the simplex or sits on a
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FermatMode {
    Floating,
    Absorbed(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermatPoint {
    #[serde(with = "serde_point")]
    pub point: Point,
    pub mode: FermatMode,
    /// Norm of the unit-vector sum at the returned point (zero for absorbed).
    pub residual: f64,
    pub iterations: usize,
}

/// Sum of unit vectors from `A_i` towards every other vertex.
pub fn vertex_pull(s: &Simplex, i: usize) -> Point {
    let a = s.vertex(i);
    s.vertices()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .fold(Point::zeros(s.dim()), |acc, (_, v)| {
            let diff = v - a;
            let n = diff.norm();
            acc + diff / n
        })
}

fn distance_sum(s: &Simplex, p: &Point) -> f64 {
    s.vertices().iter().map(|v| (p - v).norm()).sum()
}

/// Sum of unit vectors `(P - A_i) / |P - A_i|`; vanishes at a floating
/// Fermat–Torricelli point.
pub fn fermat_residual(s: &Simplex, p: &Point) -> Point {
    s.vertices()
        .iter()
        .fold(Point::zeros(s.dim()), |acc, v| {
            let diff = p - v;
            let n = diff.norm();
            acc + diff / n
        })
}

/// The point minimising the sum of distances to the vertices.
pub fn fermat_torricelli(s: &Simplex, tol: &Tolerance) -> Result<FermatPoint> {
    fermat_torricelli_with_limit(s, tol, DEFAULT_MAX_ITERATIONS)
}

/// As [`fermat_torricelli`] with an explicit iteration cap.
///
/// A vertex whose pull `|f(i)|` is at most `1 + abs_tol` absorbs the point.
/// Otherwise the minimiser is floating and is found by Weiszfeld iteration
/// from the centroid or from a point just off a vertex. Near the optimum a
/// safeguarded Newton step on the (strictly convex) objective is taken
/// whenever it shrinks the residual.
pub fn fermat_torricelli_with_limit(
    s: &Simplex,
    tol: &Tolerance,
    max_iterations: usize,
) -> Result<FermatPoint> {
    let n = s.vertices().len();
    let pulls: Vec<f64> = (0..n).map(|i| vertex_pull(s, i).norm()).collect();
    if let Some((i, _)) = pulls
        .iter()
        .enumerate()
        .filter(|(_, &p)| p <= 1.0 + tol.abs_tol)
        .min_by(|a, b| a.1.total_cmp(b.1))
    {
        return Ok(FermatPoint {
            point: s.vertex(i).clone(),
            mode: FermatMode::Absorbed(i),
            residual: 0.0,
            iterations: 0,
        });
    }

    let scale = s.diameter();
    let target = tol.abs_tol * 1e-3;
    // A vertex with pull just above 1 has the minimiser right next to it,
    // where Weiszfeld crawls; start from the best of the candidates.
    let mut p = (0..n)
        .map(|k| step_off_vertex(s, k))
        .chain(std::iter::once(centroid(s)))
        .min_by(|a, b| distance_sum(s, a).total_cmp(&distance_sum(s, b)))
        .expect("a simplex has vertices");
    let mut residual = fermat_residual(s, &p).norm();
    let mut iterations = 0;
    while iterations < max_iterations && residual > target {
        iterations += 1;
        if let Some(k) = s
            .vertices()
            .iter()
            .position(|v| (&p - v).norm() <= 1e-12 * (1.0 + scale))
        {
            // Not absorbed, so the optimum is elsewhere: step off the vertex.
            p = step_off_vertex(s, k);
            residual = fermat_residual(s, &p).norm();
            continue;
        }

        if let Some(q) = newton_step(s, &p) {
            let r = fermat_residual(s, &q).norm();
            if r < residual {
                p = q;
                residual = r;
                continue;
            }
        }

        let q = weiszfeld_step(s, &p, distance_sum(s, &p));
        let moved = (&q - &p).norm();
        p = q;
        residual = fermat_residual(s, &p).norm();
        if moved <= f64::EPSILON * (1.0 + scale) {
            break;
        }
    }

    if residual <= tol.abs_tol {
        Ok(FermatPoint {
            point: p,
            mode: FermatMode::Floating,
            residual,
            iterations,
        })
    } else {
        Err(GeometryError::NoConvergence {
            iterations,
            residual,
        })
    }
}

fn weiszfeld_step(s: &Simplex, p: &Point, current: f64) -> Point {
    let mut num = Point::zeros(s.dim());
    let mut den = 0.0;
    for v in s.vertices() {
        let w = 1.0 / (p - v).norm();
        num += v * w;
        den += w;
    }
    let full = num / den;
    let mut step = &full - p;
    // Pure Weiszfeld never increases the objective in exact arithmetic; halve if rounding says otherwise.
    for _ in 0..30 {
        let cand = p + &step;
        if distance_sum(s, &cand) <= current {
            return cand;
        }
        step *= 0.5;
    }
    p.clone()
}

/// Minimizer of the second-order model of the distance sum along the
/// steepest descent ray leaving vertex `k`.
fn step_off_vertex(s: &Simplex, k: usize) -> Point {
    let d = s.dim();
    let vk = s.vertex(k);
    let mut grad = Point::zeros(d);
    let mut hess = DMatrix::zeros(d, d);
    for (j, v) in s.vertices().iter().enumerate() {
        if j == k {
            continue;
        }
        let diff = vk - v;
        let n = diff.norm();
        let u = &diff / n;
        grad += &u;
        hess += (DMatrix::identity(d, d) - &u * u.transpose()) / n;
    }
    let g = grad.norm();
    let dir = -&grad / g;
    let curvature = dir.dot(&(&hess * &dir)).max(f64::MIN_POSITIVE);
    let floor = 1e-10 * s.diameter();
    vk + dir * ((g - 1.0) / curvature).max(floor)
}

fn newton_step(s: &Simplex, p: &Point) -> Option<Point> {
    let d = s.dim();
    let mut hess = DMatrix::zeros(d, d);
    let mut grad = Point::zeros(d);
    for v in s.vertices() {
        let diff = p - v;
        let n = diff.norm();
        let u = &diff / n;
        grad += &u;
        hess += (DMatrix::identity(d, d) - &u * u.transpose()) / n;
    }
    let step = hess.cholesky()?.solve(&grad);
    Some(p - step)
}

/// Common point of the hyperplanes through the centroid of `d - 1` vertices
/// perpendicular to the edge joining the other two:
/// `((d + 1) G - 2 C) / (d - 1)`, which is `2G - C` for tetrahedra.
pub fn monge_point(s: &Simplex) -> Result<Point> {
    let (c, _) = circumcenter(s)?;
    Ok(monge_from(s.dim(), &centroid(s), &c))
}

fn monge_from(d: usize, g: &Point, c: &Point) -> Point {
    if d < 2 {
        return g.clone();
    }
    let d = d as f64;
    (g * (d + 1.0) - c * 2.0) / (d - 1.0)
}

/// Common point of the d+1 altitudes, if they concur.
///
/// Each altitude runs through `A_j` along the normal of the opposite facet.
/// The candidate is the least-squares point of the lines; it is accepted when
/// every pair of altitudes passes within `abs_tol * (1 + R)` of each other and
/// of the candidate.
pub fn orthocenter(s: &Simplex, tol: &Tolerance) -> Result<Option<Point>> {
    let d = s.dim();
    let (_, radius) = circumcenter(s)?;
    let normals: Vec<Point> = barycentric_gradients(s)?
        .into_iter()
        .map(|g| g.normalize())
        .collect();
    let threshold = tol.abs_tol * (1.0 + radius);

    for i in 0..=d {
        for j in i + 1..=d {
            if line_distance(s.vertex(i), &normals[i], s.vertex(j), &normals[j]) > threshold {
                return Ok(None);
            }
        }
    }

    let mut lhs = DMatrix::zeros(d, d);
    let mut rhs = Point::zeros(d);
    for (a, u) in s.vertices().iter().zip(&normals) {
        let proj = DMatrix::identity(d, d) - u * u.transpose();
        rhs += &proj * a;
        lhs += proj;
    }
    let x = lhs
        .lu()
        .solve(&rhs)
        .ok_or_else(|| GeometryError::Singular("altitude least squares".into()))?;
    let worst = s
        .vertices()
        .iter()
        .zip(&normals)
        .map(|(a, u)| {
            let w = &x - a;
            (&w - u * u.dot(&w)).norm()
        })
        .fold(0.0, f64::max);
    Ok((worst <= threshold).then_some(x))
}

/// Distance between the lines `a + t u` and `b + s v` (unit directions).
fn line_distance(a: &Point, u: &Point, b: &Point, v: &Point) -> f64 {
    let w = a - b;
    let uv = u.dot(v);
    let den = 1.0 - uv * uv;
    if den < 1e-14 {
        return (&w - u * u.dot(&w)).norm();
    }
    let t = (uv * v.dot(&w) - u.dot(&w)) / den;
    let s = (v.dot(&w) - uv * u.dot(&w)) / den;
    (w + u * t - v * s).norm()
}

/// Vertex average weighted by the total edge length of the opposite facet.
/// For tetrahedra the weights are the facet perimeters.
pub fn complementary_1_centroid(s: &Simplex) -> Point {
    let n = s.vertices().len();
    let edges = s.edges();
    let weights: Vec<f64> = (0..n)
        .map(|k| {
            edges
                .iter()
                .filter(|(i, j, _)| *i != k && *j != k)
                .map(|e| e.2)
                .sum()
        })
        .collect();
    let total: f64 = weights.iter().sum();
    let mut p = Point::zeros(s.dim());
    for (w, v) in weights.iter().zip(s.vertices()) {
        p += v * (*w / total);
    }
    p
}

/// A sphere tangent to every edge of the simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneCenter {
    #[serde(with = "serde_point")]
    pub center: Point,
    pub radius: f64,
    /// Tangent length from each vertex to the sphere.
    pub tangent_lengths: Vec<f64>,
}

/// Center of the sphere tangent to all edges, when it exists.
///
/// First solves `t_i + t_j = |A_i A_j|` for the tangent lengths in least
/// squares; a residual above `abs_tol * (1 + mean edge)` or a non-positive
/// tangent length means no such sphere. The center is then the least-squares
/// point of the hyperplanes perpendicular to each edge at its division point.
pub fn one_center(s: &Simplex, tol: &Tolerance) -> Result<Option<OneCenter>> {
    let n = s.vertices().len();
    let d = s.dim();
    let edges = s.edges();
    let mean_edge = edges.iter().map(|e| e.2).sum::<f64>() / edges.len() as f64;
    let threshold = tol.abs_tol * (1.0 + mean_edge);

    let inc = DMatrix::from_fn(edges.len(), n, |r, c| {
        if edges[r].0 == c || edges[r].1 == c {
            1.0
        } else {
            0.0
        }
    });
    let lens = DVector::from_iterator(edges.len(), edges.iter().map(|e| e.2));
    let tangents = inc
        .clone()
        .svd(true, true)
        .solve(&lens, f64::EPSILON)
        .map_err(|e| GeometryError::Singular(e.to_string()))?;
    let fit = (&inc * &tangents - &lens).amax();
    if fit > threshold || tangents.iter().any(|&t| t <= threshold) {
        return Ok(None);
    }

    let m = DMatrix::from_fn(edges.len(), d, |r, c| {
        let (i, j, l) = edges[r];
        (s.vertex(j)[c] - s.vertex(i)[c]) / l
    });
    let rhs = DVector::from_fn(edges.len(), |r, _| {
        let (i, j, l) = edges[r];
        let u = (s.vertex(j) - s.vertex(i)) / l;
        tangents[i] + u.dot(s.vertex(i))
    });
    let x = m
        .clone()
        .svd(true, true)
        .solve(&rhs, f64::EPSILON)
        .map_err(|e| GeometryError::Singular(e.to_string()))?;
    if (&m * &x - &rhs).amax() > threshold {
        return Ok(None);
    }

    let dists: Vec<f64> = edges
        .iter()
        .map(|&(i, j, l)| {
            let u = (s.vertex(j) - s.vertex(i)) / l;
            let w = &x - s.vertex(i);
            (&w - &u * u.dot(&w)).norm()
        })
        .collect();
    let lo = dists.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = dists.iter().copied().fold(0.0, f64::max);
    if hi - lo > threshold {
        return Ok(None);
    }
    Ok(Some(OneCenter {
        center: x,
        radius: dists.iter().sum::<f64>() / dists.len() as f64,
        tangent_lengths: tangents.iter().copied().collect(),
    }))
}

/// Every center of one simplex, with the pairs that coincide.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterReport {
    #[serde(with = "serde_point")]
    pub centroid: Point,
    #[serde(with = "serde_point")]
    pub circumcenter: Point,
    pub circumradius: f64,
    #[serde(with = "serde_point")]
    pub incenter: Point,
    pub inradius: f64,
    #[serde(with = "serde_point")]
    pub fermat_torricelli: Point,
    pub ft_mode: FermatMode,
    #[serde(with = "serde_point")]
    pub monge: Point,
    #[serde(with = "serde_point::option")]
    pub orthocenter: Option<Point>,
    #[serde(with = "serde_point")]
    pub complementary_1_centroid: Point,
    #[serde(with = "serde_point::option")]
    pub one_center: Option<Point>,
    pub one_center_radius: Option<f64>,
    /// Sorted name pairs of centers within `abs_tol * (1 + circumradius)`.
    pub coincidences: Vec<(String, String)>,
}

impl CenterReport {
    /// Named centers that exist for this simplex.
    pub fn named(&self) -> Vec<(&'static str, &Point)> {
        let mut out = vec![
            ("centroid", &self.centroid),
            ("circumcenter", &self.circumcenter),
            ("incenter", &self.incenter),
            ("fermat_torricelli", &self.fermat_torricelli),
            ("monge", &self.monge),
            ("complementary_1_centroid", &self.complementary_1_centroid),
        ];
        if let Some(o) = &self.orthocenter {
            out.push(("orthocenter", o));
        }
        if let Some(o) = &self.one_center {
            out.push(("one_center", o));
        }
        out
    }

    pub fn get(&self, name: &str) -> Option<&Point> {
        self.named().into_iter().find(|(n, _)| *n == name).map(|(_, p)| p)
    }

    pub fn coincide(&self, a: &str, b: &str) -> bool {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.coincidences.iter().any(|(x, y)| x == a && y == b)
    }
}

pub fn all_centers(s: &Simplex, tol: &Tolerance) -> Result<CenterReport> {
    let g = centroid(s);
    let (c, radius) = circumcenter(s)?;
    let (i, inradius) = incenter(s);
    let ft = fermat_torricelli(s, tol)?;
    let m = monge_from(s.dim(), &g, &c);
    let o = orthocenter(s, tol)?;
    let j = complementary_1_centroid(s);
    let one = one_center(s, tol)?;
    let mut report = CenterReport {
        centroid: g,
        circumcenter: c,
        circumradius: radius,
        incenter: i,
        inradius,
        fermat_torricelli: ft.point,
        ft_mode: ft.mode,
        monge: m,
        orthocenter: o,
        complementary_1_centroid: j,
        one_center: one.as_ref().map(|o| o.center.clone()),
        one_center_radius: one.map(|o| o.radius),
        coincidences: Vec::new(),
    };
    let named = report.named();
    let mut pairs = Vec::new();
    for (k, (na, pa)) in named.iter().enumerate() {
        for (nb, pb) in &named[k + 1..] {
            if tol.coincide((*pa - *pb).norm(), radius) {
                let (x, y) = if na <= nb { (na, nb) } else { (nb, na) };
                pairs.push((x.to_string(), y.to_string()));
            }
        }
    }
    pairs.sort();
    report.coincidences = pairs;
    Ok(report)
}
