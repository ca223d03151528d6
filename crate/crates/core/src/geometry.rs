//! Floating-point primitives for d-simplices: vertices, volumes, Gram
//! matrices, barycentric coordinates, and reconstruction of a simplex from
//! its Gram matrix.
//!
//! Vertex indices are zero-based throughout the crate.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::tolerance::Tolerance;

/// A point (or position vector) in Euclidean d-space.
pub type Point = DVector<f64>;

/// Build a point from a coordinate slice.
pub fn point(coords: &[f64]) -> Point {
    DVector::from_column_slice(coords)
}

/// A non-degenerate d-simplex given by its `d + 1` vertices in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    /// Validate and wrap `vertices`.
    ///
    /// Rejects non-finite coordinates, vertex counts that do not equal the
    /// ambient dimension plus one, and affinely dependent vertex sets.
    pub fn new(vertices: Vec<Point>, tol: &Tolerance) -> Result<Self> {
        check_shape(&vertices)?;
        for (i, v) in vertices.iter().enumerate() {
            if v.iter().any(|x| !x.is_finite()) {
                return Err(GeometryError::NonFinite { vertex: i });
            }
        }
        let (smallest, threshold) = independence_margin(&vertices, tol);
        if smallest <= threshold {
            return Err(GeometryError::AffinelyDependent {
                smallest,
                threshold,
            });
        }
        Ok(Self { vertices })
    }

    /// Build from plain coordinate rows.
    pub fn from_rows(rows: &[Vec<f64>], tol: &Tolerance) -> Result<Self> {
        Self::new(rows.iter().map(|r| point(r)).collect(), tol)
    }

    /// Internal constructor for vertex sets that are non-degenerate by
    /// construction (facets of a valid simplex, isometric images).
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point>) -> Self {
        debug_assert!(check_shape(&vertices).is_ok());
        Self { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn edge_length(&self, i: usize, j: usize) -> f64 {
        (&self.vertices[i] - &self.vertices[j]).norm()
    }

    /// All edges as `(i, j, length)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push((i, j, self.edge_length(i, j)));
            }
        }
        out
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.vertices.len();
        let m = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                self.edge_length(i, j)
            }
        });
        DistanceMatrix { entries: m }
    }

    /// Largest vertex-to-vertex distance, used as a length scale.
    pub fn diameter(&self) -> f64 {
        self.edges().iter().map(|e| e.2).fold(0.0, f64::max)
    }

    /// Apply a map to every vertex and re-validate.
    pub fn map_vertices(&self, f: impl Fn(&Point) -> Point, tol: &Tolerance) -> Result<Self> {
        Self::new(self.vertices.iter().map(f).collect(), tol)
    }

    /// Columns are `A_i - A_last` for `i < d`.
    fn edge_frame(&self) -> DMatrix<f64> {
        let d = self.dim();
        let last = &self.vertices[d];
        DMatrix::from_fn(d, d, |r, c| self.vertices[c][r] - last[r])
    }
}

fn check_shape(vertices: &[Point]) -> Result<()> {
    if vertices.len() < 2 {
        return Err(GeometryError::DimensionMismatch(format!(
            "a simplex needs at least 2 vertices, got {}",
            vertices.len()
        )));
    }
    let d = vertices.len() - 1;
    for (i, v) in vertices.iter().enumerate() {
        if v.len() != d {
            return Err(GeometryError::DimensionMismatch(format!(
                "vertex {i} has {} coordinates, expected {d} for {} vertices",
                v.len(),
                vertices.len()
            )));
        }
    }
    Ok(())
}

/// Smallest singular value of the difference matrix and the rank threshold
/// it is compared against.
fn independence_margin(vertices: &[Point], tol: &Tolerance) -> (f64, f64) {
    let d = vertices.len() - 1;
    let last = &vertices[d];
    let m = DMatrix::from_fn(d, d, |r, c| vertices[r][c] - last[c]);
    let sv = m.singular_values();
    let largest = sv.max();
    let smallest = sv.min();
    (smallest, tol.abs_tol * largest.max(1.0))
}

/// Whether `d + 1` points of dimension `d` are affinely independent, i.e.
/// whether the difference vectors `A_i - A_last` have full rank.
pub fn affine_independence(vertices: &[Point], tol: &Tolerance) -> Result<bool> {
    check_shape(vertices)?;
    let (smallest, threshold) = independence_margin(vertices, tol);
    Ok(smallest > threshold)
}

/// Symmetric matrix of pairwise distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    entries: DMatrix<f64>,
}

impl DistanceMatrix {
    /// Validate symmetry, zero diagonal, positive off-diagonal entries and
    /// the triangle inequality on every index triple.
    pub fn new(entries: DMatrix<f64>, tol: &Tolerance) -> Result<Self> {
        let n = entries.nrows();
        if n != entries.ncols() || n < 2 {
            return Err(GeometryError::DimensionMismatch(format!(
                "distance matrix must be square with size >= 2, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::InvalidDistanceMatrix {
                reason: "non-finite entry".into(),
                residual: f64::NAN,
            });
        }
        let scale = entries.amax();
        let slack = tol.abs_tol * (1.0 + scale);
        for i in 0..n {
            if entries[(i, i)].abs() > slack {
                return Err(GeometryError::InvalidDistanceMatrix {
                    reason: format!("diagonal entry {i} is not zero"),
                    residual: entries[(i, i)],
                });
            }
            for j in i + 1..n {
                let asym = (entries[(i, j)] - entries[(j, i)]).abs();
                if asym > slack {
                    return Err(GeometryError::InvalidDistanceMatrix {
                        reason: format!("entries ({i},{j}) and ({j},{i}) differ"),
                        residual: asym,
                    });
                }
                if entries[(i, j)] <= 0.0 {
                    return Err(GeometryError::InvalidDistanceMatrix {
                        reason: format!("distance ({i},{j}) is not positive"),
                        residual: entries[(i, j)],
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let excess = entries[(i, k)] - entries[(i, j)] - entries[(j, k)];
                    if excess > slack {
                        return Err(GeometryError::InvalidDistanceMatrix {
                            reason: format!("triangle inequality fails on ({i},{j},{k})"),
                            residual: excess,
                        });
                    }
                }
            }
        }
        let mut entries = entries;
        for i in 0..n {
            entries[(i, i)] = 0.0;
        }
        Ok(Self { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// The matrix with row and column `j` deleted: the distance matrix of
    /// the facet opposite vertex `j`.
    pub fn minor(&self, j: usize) -> Result<DistanceMatrix> {
        let n = self.size();
        if j >= n {
            return Err(GeometryError::IndexOutOfRange { index: j, len: n });
        }
        if n < 3 {
            return Err(GeometryError::DimensionMismatch(
                "minor of a 2x2 distance matrix has no edges".into(),
            ));
        }
        Ok(Self {
            entries: self.entries.clone().remove_row(j).remove_column(j),
        })
    }

    /// Largest absolute entry difference against another matrix of the same size.
    pub fn max_abs_diff(&self, other: &DistanceMatrix) -> f64 {
        (&self.entries - &other.entries).amax()
    }
}

/// Squared k-volume of the simplex with the given pairwise distances, from
/// the bordered Cayley–Menger determinant
/// `(-1)^(k+1) 2^k (k!)^2 V^2 = det CM`.
///
/// Slightly negative results within tolerance are clamped to zero; anything
/// more negative means the distances are not realisable in Euclidean space.
pub fn cayley_menger_sq_volume(distances: &DistanceMatrix, tol: &Tolerance) -> Result<f64> {
    let n = distances.size();
    let k = n - 1;
    let mut border = DMatrix::zeros(n + 1, n + 1);
    let mut max_sq: f64 = 0.0;
    for i in 0..n {
        border[(0, i + 1)] = 1.0;
        border[(i + 1, 0)] = 1.0;
        for j in 0..n {
            let sq = distances.get(i, j).powi(2);
            border[(i + 1, j + 1)] = sq;
            max_sq = max_sq.max(sq);
        }
    }
    let det = border.lu().determinant();
    let sign = if (k + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm = 2f64.powi(k as i32) * factorial(k).powi(2);
    let v2 = sign * det / norm;
    let floor = tol.abs_tol * max_sq.max(1.0).powi(k as i32);
    if v2 < -floor {
        return Err(GeometryError::InvalidDistanceMatrix {
            reason: "Cayley-Menger determinant gives negative squared volume".into(),
            residual: v2,
        });
    }
    Ok(v2.max(0.0))
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// d-volume `|det(A_i - A_last)| / d!`.
pub fn simplex_volume(s: &Simplex) -> f64 {
    s.edge_frame().determinant().abs() / factorial(s.dim())
}

/// (d-1)-volumes of all facets, computed from the Gram determinant of each
/// facet's edge vectors in the ambient space.
///
/// For a 1-simplex the facets are points and carry unit 0-volume.
pub fn facet_volumes(s: &Simplex) -> Vec<f64> {
    let d = s.dim();
    if d == 1 {
        return vec![1.0, 1.0];
    }
    (0..=d)
        .map(|j| {
            let rest: Vec<&Point> = (0..=d).filter(|&i| i != j).map(|i| s.vertex(i)).collect();
            let base = rest[0];
            let m = DMatrix::from_fn(d - 1, d, |r, c| rest[r + 1][c] - base[c]);
            let g = &m * m.transpose();
            g.determinant().max(0.0).sqrt() / factorial(d - 1)
        })
        .collect()
}

/// The facet opposite vertex `j`, re-expressed as a genuine (d-1)-simplex in
/// an orthonormal basis of its affine hull. The first remaining vertex is
/// mapped to the origin.
pub fn facet(s: &Simplex, j: usize) -> Result<Simplex> {
    let d = s.dim();
    if j > d {
        return Err(GeometryError::IndexOutOfRange {
            index: j,
            len: d + 1,
        });
    }
    if d < 2 {
        return Err(GeometryError::DimensionMismatch(
            "facets of a 1-simplex are points".into(),
        ));
    }
    let rest: Vec<&Point> = (0..=d).filter(|&i| i != j).map(|i| s.vertex(i)).collect();
    let base = rest[0];
    let frame = DMatrix::from_fn(d, d - 1, |r, c| rest[c + 1][r] - base[r]);
    let q = frame.qr().q();
    let verts = rest
        .iter()
        .map(|v| q.tr_mul(&(*v - base)))
        .collect::<Vec<_>>();
    Ok(Simplex::from_vertices_unchecked(verts))
}

/// Symmetric matrix of vertex inner products `A_i . A_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSpec {
    entries: DMatrix<f64>,
}

impl GramSpec {
    /// Validate squareness, finiteness and symmetry. Positive
    /// semidefiniteness is checked when the matrix is factored.
    pub fn new(entries: DMatrix<f64>, tol: &Tolerance) -> Result<Self> {
        let n = entries.nrows();
        if n != entries.ncols() || n < 2 {
            return Err(GeometryError::DimensionMismatch(format!(
                "Gram matrix must be square with size >= 2, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::Precondition(
                "Gram matrix has a non-finite entry".into(),
            ));
        }
        let asym = (&entries - entries.transpose()).amax();
        if asym > tol.abs_tol * (1.0 + entries.amax()) {
            return Err(GeometryError::NotSymmetric { residual: asym });
        }
        let sym = (&entries + entries.transpose()) * 0.5;
        Ok(Self { entries: sym })
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// Number of eigenvalues above `abs_tol * max(1, largest eigenvalue)`.
    pub fn numerical_rank(&self, tol: &Tolerance) -> usize {
        let ev = self.eigenvalues();
        let cut = tol.abs_tol * ev[0].max(1.0);
        ev.iter().filter(|&&l| l > cut).count()
    }
}

/// Gram matrix of the vertex position vectors.
pub fn gram_matrix(s: &Simplex) -> GramSpec {
    let n = s.dim() + 1;
    let m = DMatrix::from_fn(n, n, |i, j| s.vertex(i).dot(s.vertex(j)));
    GramSpec { entries: m }
}

/// Pairwise distances `sqrt(G_ii + G_jj - 2 G_ij)`.
pub fn distances_from_gram(g: &GramSpec, tol: &Tolerance) -> Result<DistanceMatrix> {
    let n = g.size();
    let floor = tol.abs_tol * (1.0 + g.entries.amax());
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let rad = g.get(i, i) + g.get(j, j) - 2.0 * g.get(i, j);
            if rad < -floor {
                return Err(GeometryError::NotPositiveSemidefinite {
                    eigenvalues: g.eigenvalues(),
                });
            }
            let dist = rad.max(0.0).sqrt();
            m[(i, j)] = dist;
            m[(j, i)] = dist;
        }
    }
    DistanceMatrix::new(m, tol)
}

/// Recover a simplex from its Gram matrix by symmetric eigendecomposition,
/// `G = U Λ U^t`, taking `H = U_d sqrt(Λ_d)` with the null direction dropped.
/// The rows of `H` are the vertices; the result is unique up to an orthogonal
/// transformation.
pub fn simplex_from_gram(g: &GramSpec, tol: &Tolerance) -> Result<Simplex> {
    let n = g.size();
    let d = n - 1;
    let eig = SymmetricEigen::new(g.entries.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let cut = tol.abs_tol * values[0].max(1.0);
    if values.iter().any(|&l| l < -cut) {
        return Err(GeometryError::NotPositiveSemidefinite { eigenvalues: values });
    }
    let rank = values.iter().filter(|&&l| l > cut).count();
    if rank != d {
        return Err(GeometryError::RankMismatch {
            rank,
            expected: d,
            eigenvalues: values,
        });
    }
    let verts: Vec<Point> = (0..n)
        .map(|row| {
            DVector::from_fn(d, |c, _| {
                let k = order[c];
                eig.eigenvectors[(row, k)] * values[c].sqrt()
            })
        })
        .collect();
    Simplex::new(verts, tol)
}

/// Embed a simplex with the given edge lengths. The last vertex lands at the
/// origin before factorisation.
pub fn simplex_from_distances(dm: &DistanceMatrix, tol: &Tolerance) -> Result<Simplex> {
    let n = dm.size();
    let last = n - 1;
    let g = DMatrix::from_fn(n, n, |i, j| {
        0.5 * (dm.get(i, last).powi(2) + dm.get(j, last).powi(2) - dm.get(i, j).powi(2))
    });
    simplex_from_gram(&GramSpec::new(g, tol)?, tol)
}

/// Affine weights of a point with respect to the vertices of a simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarycentricCoords {
    pub weights: Vec<f64>,
}

impl BarycentricCoords {
    pub fn min(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Closed-simplex membership: every weight at least `-abs_tol`.
    pub fn is_inside(&self, tol: &Tolerance) -> bool {
        self.min() >= -tol.abs_tol
    }

    pub fn reconstruct(&self, s: &Simplex) -> Point {
        let mut p = Point::zeros(s.dim());
        for (w, v) in self.weights.iter().zip(s.vertices()) {
            p += v * *w;
        }
        p
    }
}

/// Solve `sum w_j A_j = P`, `sum w_j = 1`. Exterior points get negative
/// weights.
pub fn barycentric(s: &Simplex, p: &Point) -> Result<BarycentricCoords> {
    let d = s.dim();
    if p.len() != d {
        return Err(GeometryError::DimensionMismatch(format!(
            "point has {} coordinates, simplex lives in R^{d}",
            p.len()
        )));
    }
    let rhs = p - s.vertex(d);
    let partial = s
        .edge_frame()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| GeometryError::Singular("barycentric system".into()))?;
    let mut weights: Vec<f64> = partial.iter().copied().collect();
    weights.push(1.0 - partial.sum());
    Ok(BarycentricCoords { weights })
}

/// Gradients of the barycentric coordinate functions. Entry `j` is normal to
/// the facet opposite `A_j`, points towards `A_j`, and has length `1 / h_j`
/// where `h_j` is the altitude from `A_j`.
pub fn barycentric_gradients(s: &Simplex) -> Result<Vec<Point>> {
    let d = s.dim();
    let inv = s
        .edge_frame()
        .try_inverse()
        .ok_or_else(|| GeometryError::Singular("edge frame is not invertible".into()))?;
    let mut grads: Vec<Point> = (0..d).map(|i| inv.row(i).transpose()).collect();
    let sum = grads.iter().fold(Point::zeros(d), |acc, g| acc + g);
    grads.push(-sum);
    Ok(grads)
}

/// Signed distance from `p` to the hyperplane of the facet opposite `A_j`;
/// positive on the side of `A_j`.
pub fn facet_distance(grads: &[Point], s: &Simplex, j: usize, p: &Point) -> f64 {
    // The barycentric coordinate is affine with gradient grads[j] and is zero on the facet.
    let anchor = s.vertex(if j == 0 { 1 } else { 0 });
    grads[j].dot(&(p - anchor)) / grads[j].norm()
}

/// Plain serde shape of a point: a JSON array of coordinates.
pub(crate) mod serde_point {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Point;

    pub fn serialize<S: Serializer>(p: &Point, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(p.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Point, D::Error> {
        let v = Vec::<f64>::deserialize(de)?;
        Ok(Point::from_vec(v))
    }

    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::Point;

        pub fn serialize<S: Serializer>(p: &Option<Point>, ser: S) -> Result<S::Ok, S::Error> {
            match p {
                Some(p) => ser.collect_seq(p.iter()),
                None => ser.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Point>, D::Error> {
            Ok(Option::<Vec<f64>>::deserialize(de)?.map(Point::from_vec))
        }
    }

    pub mod list {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::Point;

        pub fn serialize<S: Serializer>(ps: &[Point], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(ps.len()))?;
            for p in ps {
                seq.serialize_element(&p.iter().copied().collect::<Vec<f64>>())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Point>, D::Error> {
            Ok(Vec::<Vec<f64>>::deserialize(de)?
                .into_iter()
                .map(Point::from_vec)
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::regular_simplex;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn corner3() -> Simplex {
        Simplex::from_rows(
            &[
                vec![0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            &tol(),
        )
        .unwrap()
    }

    #[test]
    fn independence_examples() {
        let t = tol();
        let tri = [point(&[0.0, 0.0]), point(&[1.0, 0.0]), point(&[0.3, 0.8])];
        assert!(affine_independence(&tri, &t).unwrap());
        let line = [point(&[0.0, 0.0]), point(&[1.0, 1.0]), point(&[2.0, 2.0])];
        assert!(!affine_independence(&line, &t).unwrap());
        let reg4 = regular_simplex(4, 1.0).unwrap();
        assert!(affine_independence(reg4.vertices(), &t).unwrap());
    }

    #[test]
    fn independence_rejects_mixed_dimensions() {
        let bad = [point(&[0.0, 0.0]), point(&[1.0, 0.0, 0.0]), point(&[0.0, 1.0])];
        assert!(matches!(
            affine_independence(&bad, &tol()),
            Err(GeometryError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let t = tol();
        assert!(matches!(
            Simplex::from_rows(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]], &t),
            Err(GeometryError::AffinelyDependent { .. })
        ));
        assert!(matches!(
            Simplex::from_rows(&[vec![0.0, f64::NAN], vec![1.0, 0.0], vec![0.0, 1.0]], &t),
            Err(GeometryError::NonFinite { vertex: 0 })
        ));
        assert!(matches!(
            Simplex::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]], &t),
            Err(GeometryError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn cayley_menger_right_triangle() {
        let dm = DistanceMatrix::new(
            DMatrix::from_row_slice(3, 3, &[0.0, 3.0, 4.0, 3.0, 0.0, 5.0, 4.0, 5.0, 0.0]),
            &tol(),
        )
        .unwrap();
        let v2 = cayley_menger_sq_volume(&dm, &tol()).unwrap();
        assert!((v2 - 36.0).abs() < 1e-9);
    }

    #[test]
    fn cayley_menger_regular_tetrahedron() {
        // Coordinate embedding oracle: REG(3) with edge 1 has V = 1/(6 sqrt 2).
        let dm = DistanceMatrix::new(
            DMatrix::from_fn(4, 4, |i, j| if i == j { 0.0 } else { 1.0 }),
            &tol(),
        )
        .unwrap();
        let v2 = cayley_menger_sq_volume(&dm, &tol()).unwrap();
        assert!((v2 - 1.0 / 72.0).abs() < 1e-14);
    }

    #[test]
    fn cayley_menger_flat_square() {
        let r2 = 2f64.sqrt();
        let dm = DistanceMatrix::new(
            DMatrix::from_row_slice(
                4,
                4,
                &[
                    0.0, 1.0, r2, 1.0, //
                    1.0, 0.0, 1.0, r2, //
                    r2, 1.0, 0.0, 1.0, //
                    1.0, r2, 1.0, 0.0,
                ],
            ),
            &tol(),
        )
        .unwrap();
        assert!(cayley_menger_sq_volume(&dm, &tol()).unwrap() < 1e-12);
    }

    #[test]
    fn cayley_menger_rejects_non_embeddable() {
        // Four points pairwise at distance 1 with one pair at 1.9 cannot be
        // placed in any Euclidean space.
        let mut m = DMatrix::from_fn(4, 4, |i, j| if i == j { 0.0 } else { 1.0 });
        m[(0, 1)] = 1.9;
        m[(1, 0)] = 1.9;
        let dm = DistanceMatrix::new(m, &tol()).unwrap();
        assert!(cayley_menger_sq_volume(&dm, &tol()).is_err());
    }

    #[test]
    fn distance_matrix_validation() {
        let t = tol();
        let asym = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0]);
        assert!(DistanceMatrix::new(asym, &t).is_err());
        let tri = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 5.0, 1.0, 0.0, 1.0, 5.0, 1.0, 0.0]);
        assert!(DistanceMatrix::new(tri, &t).is_err());
        let zero = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 0.0]);
        assert!(DistanceMatrix::new(zero, &t).is_err());
    }

    #[test]
    fn volumes() {
        assert!((simplex_volume(&corner3()) - 1.0 / 6.0).abs() < 1e-15);
        let eq2 = regular_simplex(2, 1.0).unwrap();
        assert!((simplex_volume(&eq2) - 3f64.sqrt() / 4.0).abs() < 1e-14);
        let reg4 = regular_simplex(4, 1.0).unwrap();
        let cm = cayley_menger_sq_volume(&reg4.distance_matrix(), &tol()).unwrap();
        assert!((simplex_volume(&reg4).powi(2) - cm).abs() < 1e-10);
    }

    #[test]
    fn facets() {
        let f = facet(&corner3(), 0).unwrap();
        assert_eq!(f.dim(), 2);
        for (_, _, l) in f.edges() {
            assert!((l - 2f64.sqrt()).abs() < 1e-14);
        }
        let reg3 = regular_simplex(3, 1.0).unwrap();
        for j in 0..4 {
            for (_, _, l) in facet(&reg3, j).unwrap().edges() {
                assert!((l - 1.0).abs() < 1e-14);
            }
        }
        let s = corner3();
        for j in 0..4 {
            let minor = s.distance_matrix().minor(j).unwrap();
            assert!(facet(&s, j).unwrap().distance_matrix().max_abs_diff(&minor) < 1e-14);
        }
        assert!(matches!(
            facet(&s, 4),
            Err(GeometryError::IndexOutOfRange { index: 4, len: 4 })
        ));
    }

    #[test]
    fn facet_volumes_match_facets() {
        let s = corner3();
        let vols = facet_volumes(&s);
        assert!((vols[0] - 3f64.sqrt() / 2.0).abs() < 1e-14);
        for (j, v) in vols.iter().enumerate().skip(1) {
            assert!((v - 0.5).abs() < 1e-14);
            assert!((simplex_volume(&facet(&s, j).unwrap()) - v).abs() < 1e-14);
        }
    }

    #[test]
    fn gram_of_centered_regular() {
        // Unit circumradius: diagonal 1, off-diagonal -1/4.
        let reg4 = regular_simplex(4, 1.0).unwrap();
        let r = reg4.vertex(0).norm();
        let g = gram_matrix(&reg4);
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { 1.0 } else { -0.25 };
                assert!((g.get(i, j) / (r * r) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gram_of_corner() {
        let g = gram_matrix(&corner3());
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j && i > 0 { 1.0 } else { 0.0 };
                assert_eq!(g.get(i, j), want);
            }
        }
        assert_eq!(g.numerical_rank(&tol()), 3);
    }

    #[test]
    fn distances_from_gram_examples() {
        let t = tol();
        let g = GramSpec::new(
            DMatrix::from_fn(5, 5, |i, j| if i == j { 1.0 } else { -0.25 }),
            &t,
        )
        .unwrap();
        let dm = distances_from_gram(&g, &t).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert!((dm.get(i, j) - 2.5f64.sqrt()).abs() < 1e-15);
                }
            }
        }
        let id = GramSpec::new(DMatrix::identity(2, 2), &t).unwrap();
        assert!((distances_from_gram(&id, &t).unwrap().get(0, 1) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn simplex_from_unit_gram() {
        let t = tol();
        let g = GramSpec::new(
            DMatrix::from_fn(5, 5, |i, j| if i == j { 1.0 } else { -0.25 }),
            &t,
        )
        .unwrap();
        let s = simplex_from_gram(&g, &t).unwrap();
        for v in s.vertices() {
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
        let edge = s.edge_length(0, 1);
        for (_, _, l) in s.edges() {
            assert!((l - edge).abs() < 1e-14);
        }
    }

    #[test]
    fn simplex_from_gram_rejects() {
        let t = tol();
        let not_psd = GramSpec::new(DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]), &t).unwrap();
        assert!(matches!(
            simplex_from_gram(&not_psd, &t),
            Err(GeometryError::NotPositiveSemidefinite { .. })
        ));
        let full = GramSpec::new(DMatrix::identity(3, 3), &t).unwrap();
        assert!(matches!(
            simplex_from_gram(&full, &t),
            Err(GeometryError::RankMismatch { rank: 3, expected: 2, .. })
        ));
        assert!(matches!(
            GramSpec::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]), &t),
            Err(GeometryError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn barycentric_examples() {
        let s = corner3();
        let g = s.vertices().iter().fold(Point::zeros(3), |a, v| a + v) / 4.0;
        let w = barycentric(&s, &g).unwrap();
        for x in &w.weights {
            assert!((x - 0.25).abs() < 1e-15);
        }
        let w = barycentric(&s, s.vertex(0)).unwrap();
        assert!((w.weights[0] - 1.0).abs() < 1e-15);
        assert!(w.weights[1..].iter().all(|x| x.abs() < 1e-15));
        let out = barycentric(&s, &point(&[1.0, 1.0, 1.0])).unwrap();
        assert!(!out.is_inside(&tol()));
        assert!((out.reconstruct(&s) - point(&[1.0, 1.0, 1.0])).norm() < 1e-14);
    }

    #[test]
    fn gradients_are_inverse_altitudes() {
        let s = corner3();
        let grads = barycentric_gradients(&s).unwrap();
        // Altitude from the origin onto x + y + z = 1 is 1/sqrt 3.
        assert!((grads[0].norm() - 3f64.sqrt()).abs() < 1e-14);
        for j in 0..4 {
            assert!((facet_distance(&grads, &s, j, s.vertex(j)) - 1.0 / grads[j].norm()).abs() < 1e-14);
        }
    }
}
