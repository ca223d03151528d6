//! Cevians through a point: feet, lengths, the equal-length criterion and
//! the vertex partition of unit-circumradius simplices with equal cevians
//! through the circumcenter.

use serde::{Deserialize, Serialize};

use crate::centers::{centroid, circumcenter, fermat_torricelli, FermatMode};
use crate::error::{GeometryError, Result};
use crate::geometry::{barycentric, serde_point, Point, Simplex};
use crate::tolerance::{relative_spread, Tolerance};

/// Coefficients `a_j` of `sum a_j (A_j - P) = 0`, normalized to sum 1.
///
/// These are the barycentric coordinates of `P`. Fails when `P` is a vertex
/// or when some `d` coefficients sum to zero, which leaves the cevian through
/// the remaining vertex parallel to its facet.
pub fn dependence_coefficients(s: &Simplex, p: &Point, tol: &Tolerance) -> Result<Vec<f64>> {
    let scale = s.diameter();
    if let Some(v) = (0..=s.dim()).find(|&j| (s.vertex(j) - p).norm() <= tol.abs_tol * (1.0 + scale)) {
        return Err(GeometryError::PointAtVertex { vertex: v });
    }
    let w = barycentric(s, p)?.weights;
    if let Some(k) = (0..w.len()).find(|&k| (1.0 - w[k]).abs() <= tol.abs_tol) {
        return Err(GeometryError::DegenerateCevian {
            vertex: k,
            sum: 1.0 - w[k],
        });
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CevianReport {
    #[serde(with = "serde_point")]
    pub through: Point,
    pub coefficients: Vec<f64>,
    #[serde(with = "serde_point::list")]
    pub feet: Vec<Point>,
    /// Direct lengths `|A_j - A_j*|`.
    pub lengths: Vec<f64>,
    /// Closed form `|s| / |s - a_j| * |A_j - P|`.
    pub closed_form_lengths: Vec<f64>,
    pub spread: f64,
    pub equal: bool,
    /// Set when `through` is the circumcenter and the cevians are equal.
    pub lemma52_r: Option<usize>,
}

pub fn cevian_feet(s: &Simplex, p: &Point, tol: &Tolerance) -> Result<CevianReport> {
    let a = dependence_coefficients(s, p, tol)?;
    let sum: f64 = a.iter().sum();
    let mut feet = Vec::with_capacity(a.len());
    let mut lengths = Vec::with_capacity(a.len());
    let mut closed = Vec::with_capacity(a.len());
    for (j, aj) in a.iter().enumerate() {
        let q = s.vertex(j) - p;
        let foot = p - &q * (aj / (sum - aj));
        lengths.push((s.vertex(j) - &foot).norm());
        closed.push(sum.abs() / (sum - aj).abs() * q.norm());
        feet.push(foot);
    }
    let spread = relative_spread(&lengths);
    let equal = spread <= tol.rel_tol;
    let lemma52_r = if equal {
        let (c, radius) = circumcenter(s)?;
        if (&c - p).norm() <= tol.abs_tol * (1.0 + radius) {
            let unit = s.map_vertices(|v| (v - &c) / radius, tol)?;
            lemma52_structure(&unit, tol)?.map(|l| l.r)
        } else {
            None
        }
    } else {
        None
    };
    Ok(CevianReport {
        through: p.clone(),
        coefficients: a,
        feet,
        lengths,
        closed_form_lengths: closed,
        spread,
        equal,
        lemma52_r,
    })
}

/// Vertex partition realizing
/// `(2d - 2r + 1)(A_1 + .. + A_r) - (2r - 1)(A_{r+1} + .. + A_{d+1}) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma52 {
    pub r: usize,
    /// Indices carrying the weight `2d - 2r + 1`.
    pub first: Vec<usize>,
    /// Indices carrying the weight `-(2r - 1)`.
    pub rest: Vec<usize>,
    /// Norm of the weighted vertex sum.
    pub residual: f64,
}

/// For a simplex inscribed in the unit sphere about the origin, return the
/// partition behind equal cevians through the origin, or `None` when those
/// cevians are not equal (or not defined).
pub fn lemma52_structure(s: &Simplex, tol: &Tolerance) -> Result<Option<Lemma52>> {
    if let Some(j) = (0..=s.dim()).find(|&j| (s.vertex(j).norm() - 1.0).abs() > tol.abs_tol) {
        return Err(GeometryError::Precondition(format!(
            "vertex {j} has norm {}, expected a unit circumradius about the origin",
            s.vertex(j).norm()
        )));
    }
    let origin = Point::zeros(s.dim());
    let w = match dependence_coefficients(s, &origin, tol) {
        Ok(w) => w,
        Err(GeometryError::DegenerateCevian { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    // With unit vertices the cevian lengths are 1 / |1 - a_j|.
    let lengths: Vec<f64> = w.iter().map(|a| 1.0 / (1.0 - a).abs()).collect();
    if relative_spread(&lengths) > tol.rel_tol {
        return Ok(None);
    }
    let d = s.dim();
    let (first, rest): (Vec<usize>, Vec<usize>) = (0..=d).partition(|&j| w[j] > 1.0);
    let r = first.len();
    if 2 * r > d {
        return Ok(None);
    }
    let b = (2 * d - 2 * r + 1) as f64;
    let c = (2 * r) as f64 - 1.0;
    let sum_of = |idx: &[usize]| idx.iter().fold(Point::zeros(d), |acc, &j| acc + s.vertex(j));
    let residual = (sum_of(&first) * b - sum_of(&rest) * c).norm();
    if residual > tol.abs_tol * (1.0 + b) * (d + 1) as f64 * 10.0 {
        return Ok(None);
    }
    Ok(Some(Lemma52 {
        r,
        first,
        rest,
        residual,
    }))
}

/// The four conditions of the centroid/circumcenter cevian equivalence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem51Verdict {
    /// (1) centroid equals circumcenter.
    pub centroid_is_circumcenter: bool,
    /// (2) equal cevians through the centroid.
    pub equal_through_centroid: bool,
    /// (3) equal cevians through the Fermat–Torricelli point; `None` if absorbed.
    pub equal_through_fermat: Option<bool>,
    /// (4) circumcenter in the closed simplex with equal cevians through it.
    pub circumcenter_condition: bool,
    pub circumcenter_inside: bool,
    /// Fermat–Torricelli point floating and circumcenter membership clear-cut.
    pub decisive: bool,
    /// All available verdicts agree.
    pub agree: bool,
}

fn equal_through(s: &Simplex, p: &Point, tol: &Tolerance) -> Result<bool> {
    match cevian_feet(s, p, tol) {
        Ok(rep) => Ok(rep.equal),
        Err(GeometryError::DegenerateCevian { .. }) | Err(GeometryError::PointAtVertex { .. }) => {
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

pub fn theorem51_suite(s: &Simplex, tol: &Tolerance) -> Result<Theorem51Verdict> {
    let g = centroid(s);
    let (c, radius) = circumcenter(s)?;
    let gc = (&g - &c).norm() <= tol.abs_tol * (1.0 + radius);
    let through_g = equal_through(s, &g, tol)?;
    let fermat = fermat_torricelli(s, tol)?;
    let through_f = match fermat.mode {
        FermatMode::Floating => Some(equal_through(s, &fermat.point, tol)?),
        FermatMode::Absorbed(_) => None,
    };
    let bary = barycentric(s, &c)?;
    let min = bary.min();
    let inside = min >= -tol.abs_tol;
    let through_c = inside && equal_through(s, &c, tol)?;
    let decisive = through_f.is_some() && min.abs() > tol.abs_tol;
    let mut verdicts = vec![gc, through_g, through_c];
    verdicts.extend(through_f);
    let agree = verdicts.iter().all(|v| *v == verdicts[0]);
    Ok(Theorem51Verdict {
        centroid_is_circumcenter: gc,
        equal_through_centroid: through_g,
        equal_through_fermat: through_f,
        circumcenter_condition: through_c,
        circumcenter_inside: inside,
        decisive,
        agree,
    })
}
