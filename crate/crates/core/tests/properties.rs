//! Property tests. Each invariant is checked against an oracle computed
//! here from first principles rather than through the library routine
//! under test.

use nalgebra::DMatrix;
use proptest::prelude::*;

use simplex_centers::centers::{
    centroid, circumcenter, complementary_1_centroid, fermat_torricelli, incenter, monge_point,
    FermatMode,
};
use simplex_centers::cevians::cevian_feet;
use simplex_centers::classify::{classify, congruent};
use simplex_centers::constructions::{
    equifacetal_tetrahedron, gram_thm41, thm41_feasible_interval, triangle_metrics,
};
use simplex_centers::geometry::{
    barycentric, cayley_menger_sq_volume, gram_matrix, simplex_from_gram, simplex_volume, Point,
    Simplex,
};
use simplex_centers::io::{read_simplex, simplex_to_json};
use simplex_centers::{all_centers, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Random simplex with d in 2..=5, rejecting poorly conditioned draws.
fn simplex() -> impl Strategy<Value = Simplex> {
    (2usize..=5)
        .prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-1.0f64..1.0, d), d + 1))
        .prop_filter_map("ill-conditioned", |rows| {
            let d = rows.len() - 1;
            let m = DMatrix::from_fn(d, d, |r, c| rows[c + 1][r] - rows[0][r]);
            let sv = m.singular_values();
            (sv.min() > 0.05 * sv.max()).then(|| Simplex::from_rows(&rows, &tol()).ok())?
        })
}

/// Unit normal of the hyperplane through all vertices except `j`, by SVD.
fn facet_normal(s: &Simplex, j: usize) -> (Point, Point) {
    let d = s.dim();
    let rest: Vec<&Point> = (0..=d).filter(|&i| i != j).map(|i| s.vertex(i)).collect();
    let m = DMatrix::from_fn(d - 1, d, |r, c| rest[r + 1][c] - rest[0][c]);
    let full = DMatrix::from_fn(d, d, |r, c| if r < d - 1 { m[(r, c)] } else { 0.0 });
    let svd = full.svd(false, true);
    let vt = svd.v_t.unwrap();
    let k = (0..d)
        .min_by(|a, b| svd.singular_values[*a].total_cmp(&svd.singular_values[*b]))
        .unwrap();
    (vt.row(k).transpose(), rest[0].clone())
}

fn hyperplane_distance(s: &Simplex, j: usize, p: &Point) -> f64 {
    let (n, anchor) = facet_normal(s, j);
    n.dot(&(p - anchor)).abs()
}

fn distance_sum(s: &Simplex, p: &Point) -> f64 {
    s.vertices().iter().map(|v| (p - v).norm()).sum()
}

/// Orthogonal factor of a diagonally dominated matrix built from `seed`.
fn rotation(d: usize, seed: &[f64]) -> DMatrix<f64> {
    let m = DMatrix::from_fn(d, d, |r, c| seed[(r * d + c) % seed.len()] + if r == c { 2.0 } else { 0.0 });
    m.qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn circumcenter_is_equidistant(s in simplex()) {
        let (c, r) = circumcenter(&s).unwrap();
        for v in s.vertices() {
            prop_assert!(((v - &c).norm() - r).abs() <= 1e-9 * (1.0 + r));
        }
    }

    #[test]
    fn incenter_touches_every_facet_hyperplane(s in simplex()) {
        let (i, r) = incenter(&s);
        for j in 0..=s.dim() {
            prop_assert!((hyperplane_distance(&s, j, &i) - r).abs() <= 1e-9);
        }
        prop_assert!(barycentric(&s, &i).unwrap().min() > 0.0);
    }

    #[test]
    fn centroid_is_vertex_mean(s in simplex()) {
        let g = centroid(&s);
        let n = s.vertices().len() as f64;
        let mean = s.vertices().iter().fold(Point::zeros(s.dim()), |a, v| a + v) / n;
        prop_assert!((g - mean).norm() <= 1e-15);
    }

    #[test]
    fn barycentric_reconstructs(s in simplex(), w in prop::collection::vec(-1.0f64..1.0, 6)) {
        let d = s.dim();
        let p = s.vertices().iter().zip(&w).fold(Point::zeros(d), |a, (v, x)| a + v * *x);
        let b = barycentric(&s, &p).unwrap();
        prop_assert!((b.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!((b.reconstruct(&s) - &p).norm() <= 1e-10);
    }

    #[test]
    fn cayley_menger_matches_determinant(s in simplex()) {
        let d = s.dim();
        let m = DMatrix::from_fn(d, d, |r, c| s.vertex(c + 1)[r] - s.vertex(0)[r]);
        let mut fact = 1.0;
        for k in 2..=d { fact *= k as f64; }
        let oracle = m.determinant().abs() / fact;
        let cm = cayley_menger_sq_volume(&s.distance_matrix(), &tol()).unwrap().sqrt();
        prop_assert!((cm - oracle).abs() <= 1e-9 * oracle);
        prop_assert!((simplex_volume(&s) - oracle).abs() <= 1e-12 * oracle.max(1.0));
    }

    #[test]
    fn volume_scales_with_power_of_dimension(s in simplex(), k in 0.1f64..5.0) {
        let scaled = s.map_vertices(|v| v * k, &tol()).unwrap();
        let want = simplex_volume(&s) * k.powi(s.dim() as i32);
        prop_assert!((simplex_volume(&scaled) - want).abs() <= 1e-12 * want.max(1e-300) * 10.0);
    }

    #[test]
    fn gram_round_trip_preserves_distances(s in simplex()) {
        let back = simplex_from_gram(&gram_matrix(&s), &tol()).unwrap();
        for (i, j, l) in s.edges() {
            prop_assert!((back.edge_length(i, j) - l).abs() <= 1e-9);
        }
    }

    #[test]
    fn fermat_point_minimizes_distance_sum(s in simplex(), dirs in prop::collection::vec(-1.0f64..1.0, 40)) {
        let f = fermat_torricelli(&s, &tol()).unwrap();
        let best = distance_sum(&s, &f.point);
        let d = s.dim();
        for chunk in dirs.chunks(d).filter(|c| c.len() == d) {
            let q = &f.point + Point::from_column_slice(chunk) * 1e-3;
            prop_assert!(distance_sum(&s, &q) >= best - 1e-12);
        }
        for v in s.vertices() {
            prop_assert!(distance_sum(&s, v) >= best - 1e-12);
        }
        if let FermatMode::Floating = f.mode {
            let grad: Point = s.vertices().iter().fold(Point::zeros(d), |a, v| a + (&f.point - v).normalize());
            prop_assert!(grad.norm() <= 1e-9);
        }
    }

    #[test]
    fn centers_commute_with_isometries(s in simplex(), seed in prop::collection::vec(-1.0f64..1.0, 25), shift in prop::collection::vec(-3.0f64..3.0, 5)) {
        let d = s.dim();
        let q = rotation(d, &seed);
        let t = Point::from_column_slice(&shift[..d]);
        let moved = s.map_vertices(|v| &q * v + &t, &tol()).unwrap();
        let a = all_centers(&s, &tol()).unwrap();
        let b = all_centers(&moved, &tol()).unwrap();
        prop_assert_eq!(a.ft_mode, b.ft_mode);
        for (name, p) in a.named() {
            let image = &q * p + &t;
            let other = b.get(name);
            prop_assert!(other.is_some(), "{} missing after isometry", name);
            prop_assert!((image - other.unwrap()).norm() <= 1e-8, "{}", name);
        }
    }

    #[test]
    fn centers_ignore_vertex_order(s in simplex(), rot in 0usize..6) {
        let mut verts = s.vertices().to_vec();
        let k = rot % verts.len();
        verts.rotate_left(k);
        verts.swap(0, 1);
        let p = Simplex::new(verts, &tol()).unwrap();
        let a = all_centers(&s, &tol()).unwrap();
        let b = all_centers(&p, &tol()).unwrap();
        for (name, x) in a.named() {
            prop_assert!((x - b.get(name).unwrap()).norm() <= 1e-8, "{}", name);
        }
        let ca = classify(&s, &tol()).unwrap();
        let cb = classify(&p, &tol()).unwrap();
        prop_assert_eq!(ca.equiareal, cb.equiareal);
        prop_assert_eq!(ca.equiradial, cb.equiradial);
        prop_assert_eq!(ca.well_distributed, cb.well_distributed);
    }

    #[test]
    fn monge_point_lies_on_mid_perpendicular_hyperplanes(s in simplex()) {
        let m = monge_point(&s).unwrap();
        let n = s.dim() + 1;
        for i in 0..n {
            for j in i + 1..n {
                let rest: Vec<&Point> = (0..n).filter(|&k| k != i && k != j).map(|k| s.vertex(k)).collect();
                let c = rest.iter().fold(Point::zeros(s.dim()), |a, v| a + *v) / rest.len() as f64;
                let e = s.vertex(i) - s.vertex(j);
                prop_assert!((&m - c).dot(&e).abs() <= 1e-9 * (1.0 + m.norm()) * e.norm());
            }
        }
    }

    #[test]
    fn complementary_centroid_from_wire_frame(s in simplex()) {
        // Oracle: with W the centroid of the edge skeleton as a uniform wire,
        // opposite-facet edge weights give J = ((d + 1) G - 2 W) / (d - 1).
        let d = s.dim() as f64;
        let edges = s.edges();
        let total: f64 = edges.iter().map(|e| e.2).sum();
        let wire = edges
            .iter()
            .fold(Point::zeros(s.dim()), |a, (i, j, l)| a + (s.vertex(*i) + s.vertex(*j)) * (l / 2.0))
            / total;
        let want = (centroid(&s) * (d + 1.0) - wire * 2.0) / (d - 1.0);
        prop_assert!((complementary_1_centroid(&s) - want).norm() <= 1e-12);
    }

    #[test]
    fn cevian_feet_meet_facet_hyperplanes(s in simplex(), w in prop::collection::vec(0.05f64..1.0, 6)) {
        let d = s.dim();
        let total: f64 = w[..=d].iter().sum();
        let p = s.vertices().iter().zip(&w).fold(Point::zeros(d), |a, (v, x)| a + v * (*x / total));
        let rep = cevian_feet(&s, &p, &tol()).unwrap();
        for k in 0..=d {
            let foot = &rep.feet[k];
            prop_assert!(hyperplane_distance(&s, k, foot) <= 1e-9);
            let a = s.vertex(k) - &p;
            let b = foot - &p;
            let cross = a.dot(&b).abs() - a.norm() * b.norm();
            prop_assert!(cross.abs() <= 1e-9 * a.norm() * b.norm().max(1.0));
            prop_assert!((rep.lengths[k] - (s.vertex(k) - foot).norm()).abs() <= 1e-12);
            prop_assert!((rep.closed_form_lengths[k] - rep.lengths[k]).abs() <= 1e-8 * rep.lengths[k]);
        }
    }

    #[test]
    fn json_round_trip_is_exact(s in simplex()) {
        let back = read_simplex(&simplex_to_json(&s), &tol()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn acute_triangle_bounds(a in 1.0f64..2.0, b in 1.0f64..2.0, c in 1.0f64..2.0) {
        let (a2, b2, c2) = (a * a, b * b, c * c);
        prop_assume!(a2 < b2 + c2 && b2 < a2 + c2 && c2 < a2 + b2);
        let m = triangle_metrics(a, b, c).unwrap();
        // Oracle: circumradius from abc / 4K with Heron's formula.
        let s2 = (a + b + c) / 2.0;
        let area = (s2 * (s2 - a) * (s2 - b) * (s2 - c)).sqrt();
        let r = a * b * c / (4.0 * area);
        prop_assert!((m.circumradius - r).abs() <= 1e-12 * r);
        let u = a2 + b2 + c2;
        prop_assert!(u / 9.0 <= r * r * (1.0 + 1e-12));
        prop_assert!(r * r <= u / 8.0 * (1.0 + 1e-12));
        let cos = |x: f64, y: f64, z: f64| (y * y + z * z - x * x) / (2.0 * y * z);
        let prod = cos(a, b, c) * cos(b, a, c) * cos(c, a, b);
        prop_assert!((u - 8.0 * r * r * (1.0 + prod)).abs() <= 1e-10 * u);
    }

    #[test]
    fn equifacetal_tetrahedra_are_centered(a in 1.0f64..2.0, b in 1.0f64..2.0, c in 1.0f64..2.0) {
        let (a2, b2, c2) = (a * a, b * b, c * c);
        prop_assume!(a2 < 0.98 * (b2 + c2) && b2 < 0.98 * (a2 + c2) && c2 < 0.98 * (a2 + b2));
        let s = equifacetal_tetrahedron(a, b, c).unwrap();
        let mut lengths: Vec<f64> = s.edges().into_iter().map(|e| e.2).collect();
        lengths.sort_by(f64::total_cmp);
        let mut want = vec![a, a, b, b, c, c];
        want.sort_by(f64::total_cmp);
        for (x, y) in lengths.iter().zip(&want) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
        let rep = all_centers(&s, &tol()).unwrap();
        let g = &rep.centroid;
        for p in [&rep.circumcenter, &rep.incenter, &rep.fermat_torricelli, &rep.monge] {
            prop_assert!((p - g).norm() <= 1e-9);
        }
        let f0 = simplex_centers::geometry::facet(&s, 0).unwrap();
        for j in 1..4 {
            prop_assert!(congruent(&f0, &simplex_centers::geometry::facet(&s, j).unwrap(), &tol()));
        }
    }

    #[test]
    fn four_center_family_coincides(t in 0.01f64..0.99) {
        let (lo, hi) = thm41_feasible_interval();
        let x = lo + (hi - lo) * t;
        let (_, s) = gram_thm41(x).unwrap();
        let rep = all_centers(&s, &tol()).unwrap();
        let g = &rep.centroid;
        for p in [&rep.circumcenter, &rep.incenter, &rep.fermat_torricelli] {
            prop_assert!((p - g).norm() <= 1e-8);
        }
    }
}
