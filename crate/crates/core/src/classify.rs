//! Facial-structure predicates: regular, equifacetal, equiareal, equiradial,
//! well-distributed edges, isosceles, orthocentric, equal facet inradii.

use serde::{Deserialize, Serialize};

use crate::centers::{circumcenter, incenter, orthocenter};
use crate::error::{GeometryError, Result};
use crate::geometry::{facet, facet_volumes, simplex_volume, Simplex};
use crate::tolerance::{relative_spread, Tolerance};

/// Largest dimension accepted by the facet congruence search.
pub const MAX_EQUIFACETAL_DIM: usize = 7;

fn facets(s: &Simplex) -> Result<Vec<Simplex>> {
    (0..=s.dim()).map(|j| facet(s, j)).collect()
}

/// Circumradius of each facet, indexed by the opposite vertex.
pub fn facet_circumradii(s: &Simplex) -> Result<Vec<f64>> {
    facets(s)?
        .iter()
        .map(|f| circumcenter(f).map(|(_, r)| r))
        .collect()
}

/// Inradius of each facet, indexed by the opposite vertex.
pub fn facet_inradii(s: &Simplex) -> Result<Vec<f64>> {
    Ok(facets(s)?.iter().map(|f| incenter(f).1).collect())
}

/// Sum of squared edge lengths of each facet.
pub fn facet_edge_square_sums(s: &Simplex) -> Vec<f64> {
    facet_edge_sums(s, |l| l * l)
}

/// Sum of edge lengths of each facet.
pub fn facet_perimeters(s: &Simplex) -> Vec<f64> {
    facet_edge_sums(s, |l| l)
}

fn facet_edge_sums(s: &Simplex, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let edges = s.edges();
    (0..=s.dim())
        .map(|j| {
            edges
                .iter()
                .filter(|(a, b, _)| *a != j && *b != j)
                .map(|(_, _, l)| f(*l))
                .sum()
        })
        .collect()
}

fn edge_ratio_spread(s: &Simplex) -> f64 {
    let lengths: Vec<f64> = s.edges().into_iter().map(|(_, _, l)| l).collect();
    let max = lengths.iter().cloned().fold(f64::MIN, f64::max);
    let min = lengths.iter().cloned().fold(f64::MAX, f64::min);
    max / min - 1.0
}

pub fn is_regular(s: &Simplex, tol: &Tolerance) -> bool {
    edge_ratio_spread(s) <= tol.rel_tol
}

/// Congruence of two simplices of equal dimension by vertex-permutation
/// matching of their distance matrices.
pub fn congruent(a: &Simplex, b: &Simplex, tol: &Tolerance) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let da = a.distance_matrix();
    let db = b.distance_matrix();
    let scale = a.diameter().max(b.diameter()).max(f64::MIN_POSITIVE);
    let close = |x: f64, y: f64| (x - y).abs() <= tol.rel_tol * scale;

    let mut la: Vec<f64> = a.edges().into_iter().map(|e| e.2).collect();
    let mut lb: Vec<f64> = b.edges().into_iter().map(|e| e.2).collect();
    la.sort_by(f64::total_cmp);
    lb.sort_by(f64::total_cmp);
    if !la.iter().zip(&lb).all(|(x, y)| close(*x, *y)) {
        return false;
    }

    let n = a.dim() + 1;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn extend(
        perm: &mut Vec<usize>,
        used: &mut [bool],
        n: usize,
        ok: &dyn Fn(usize, usize, usize, usize) -> bool,
    ) -> bool {
        let k = perm.len();
        if k == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || !(0..k).all(|i| ok(i, k, perm[i], cand)) {
                continue;
            }
            used[cand] = true;
            perm.push(cand);
            if extend(perm, used, n, ok) {
                return true;
            }
            perm.pop();
            used[cand] = false;
        }
        false
    }
    let ok = |i: usize, j: usize, pi: usize, pj: usize| close(da.get(i, j), db.get(pi, pj));
    extend(&mut perm, &mut used, n, &ok)
}

pub fn is_equifacetal(s: &Simplex, tol: &Tolerance) -> Result<bool> {
    if s.dim() > MAX_EQUIFACETAL_DIM {
        return Err(GeometryError::DimensionTooLarge {
            dim: s.dim(),
            max: MAX_EQUIFACETAL_DIM,
        });
    }
    if s.dim() < 2 {
        return Ok(true);
    }
    let fs = facets(s)?;
    Ok(fs[1..].iter().all(|f| congruent(&fs[0], f, tol)))
}

pub fn is_equiareal(s: &Simplex, tol: &Tolerance) -> bool {
    relative_spread(&facet_volumes(s)) <= tol.rel_tol
}

pub fn is_equiradial(s: &Simplex, tol: &Tolerance) -> Result<bool> {
    Ok(relative_spread(&facet_circumradii(s)?) <= tol.rel_tol)
}

pub fn has_well_distributed_edges(s: &Simplex, tol: &Tolerance) -> bool {
    relative_spread(&facet_edge_square_sums(s)) <= tol.rel_tol
}

/// Smallest vertex index whose incident edges all share one length.
pub fn is_isosceles(s: &Simplex, tol: &Tolerance) -> Option<usize> {
    (0..=s.dim()).find(|&p| {
        let lens: Vec<f64> = (0..=s.dim())
            .filter(|&q| q != p)
            .map(|q| s.edge_length(p, q))
            .collect();
        relative_spread(&lens) <= tol.rel_tol
    })
}

/// Residuals `(A_i - A_k) . (A_j - A_l)` over the three pairs of opposite
/// edges of a tetrahedron, each normalized by the two edge lengths.
pub fn opposite_edge_dot_residuals(s: &Simplex) -> Result<[f64; 3]> {
    if s.dim() != 3 {
        return Err(GeometryError::DimensionMismatch(format!(
            "opposite-edge residuals need a tetrahedron, got d={}",
            s.dim()
        )));
    }
    let v = s.vertices();
    let pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    Ok(pairs.map(|((i, k), (j, l))| {
        let e1 = &v[i] - &v[k];
        let e2 = &v[j] - &v[l];
        e1.dot(&e2).abs() / (1.0 + e1.norm() * e2.norm())
    }))
}

pub fn is_orthocentric(s: &Simplex, tol: &Tolerance) -> Result<bool> {
    if s.dim() <= 2 {
        return Ok(true);
    }
    if s.dim() == 3 {
        return Ok(opposite_edge_dot_residuals(s)?.iter().all(|r| *r <= tol.abs_tol));
    }
    Ok(orthocenter(s, tol)?.is_some())
}

pub fn facet_inradii_equal(s: &Simplex, tol: &Tolerance) -> Result<bool> {
    Ok(relative_spread(&facet_inradii(s)?) <= tol.rel_tol)
}

/// Numeric evidence behind each predicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witnesses {
    /// `max / min - 1` over all edge lengths.
    pub edge_spread: f64,
    pub facet_volume_spread: f64,
    pub facet_circumradius_spread: f64,
    pub facet_inradius_spread: f64,
    pub edge_square_sum_spread: f64,
    pub facet_volumes: Vec<f64>,
    pub facet_circumradii: Vec<f64>,
    pub facet_inradii: Vec<f64>,
    pub edge_square_sums: Vec<f64>,
    /// Tetrahedra only: `(a12 - a34, a13 - a24, a14 - a23)` edge differences.
    pub opposite_edge_differences: Option<[f64; 3]>,
    /// Tetrahedra only.
    pub facet_perimeters: Option<Vec<f64>>,
    /// Tetrahedra only: normalized opposite-edge dot products.
    pub orthocentric_residuals: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub regular: bool,
    pub equifacetal: bool,
    pub equiareal: bool,
    pub equiradial: bool,
    pub well_distributed: bool,
    pub isosceles: Option<usize>,
    pub orthocentric: bool,
    pub facet_inradii_equal: bool,
    /// Tetrahedra only: opposite edges pairwise equal.
    pub opposite_edges_equal: Option<bool>,
    /// Tetrahedra only: all facet perimeters equal.
    pub facet_perimeters_equal: Option<bool>,
    /// Volume below `abs_tol`; the predicates are unreliable.
    pub degenerate: bool,
    pub witnesses: Witnesses,
}

pub fn classify(s: &Simplex, tol: &Tolerance) -> Result<ClassificationReport> {
    let volumes = facet_volumes(s);
    let circumradii = facet_circumradii(s)?;
    let inradii = facet_inradii(s)?;
    let sq_sums = facet_edge_square_sums(s);
    let spread = |v: &[f64]| relative_spread(v);

    let (opp, perimeters, ortho_res) = if s.dim() == 3 {
        let l = |i, j| s.edge_length(i, j);
        let diffs = [l(0, 1) - l(2, 3), l(0, 2) - l(1, 3), l(0, 3) - l(1, 2)];
        (
            Some(diffs),
            Some(facet_perimeters(s)),
            Some(opposite_edge_dot_residuals(s)?),
        )
    } else {
        (None, None, None)
    };
    let scale = s.diameter();
    let opposite_edges_equal =
        opp.map(|d| d.iter().all(|x| x.abs() <= tol.rel_tol * scale));
    let facet_perimeters_equal = perimeters.as_ref().map(|p| spread(p) <= tol.rel_tol);

    let equifacetal = if s.dim() <= MAX_EQUIFACETAL_DIM {
        is_equifacetal(s, tol)?
    } else {
        false
    };

    Ok(ClassificationReport {
        regular: is_regular(s, tol),
        equifacetal,
        equiareal: spread(&volumes) <= tol.rel_tol,
        equiradial: spread(&circumradii) <= tol.rel_tol,
        well_distributed: spread(&sq_sums) <= tol.rel_tol,
        isosceles: is_isosceles(s, tol),
        orthocentric: is_orthocentric(s, tol)?,
        facet_inradii_equal: spread(&inradii) <= tol.rel_tol,
        opposite_edges_equal,
        facet_perimeters_equal,
        degenerate: simplex_volume(s) < tol.abs_tol,
        witnesses: Witnesses {
            edge_spread: edge_ratio_spread(s),
            facet_volume_spread: spread(&volumes),
            facet_circumradius_spread: spread(&circumradii),
            facet_inradius_spread: spread(&inradii),
            edge_square_sum_spread: spread(&sq_sums),
            facet_volumes: volumes,
            facet_circumradii: circumradii,
            facet_inradii: inradii,
            edge_square_sums: sq_sums,
            opposite_edge_differences: opp,
            facet_perimeters: perimeters,
            orthocentric_residuals: ortho_res,
        },
    })
}
