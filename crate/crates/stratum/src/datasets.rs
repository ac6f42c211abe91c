//! Reference complexes and seeded point-cloud generators.
//!
//! The fixture complexes are small hand-built spaces with one singular
//! point each, used as ground truth throughout the test suites. The
//! generators sample classical surfaces with a counter-based RNG
//! (ChaCha8) so that a (kind, parameters, seed) triple always produces
//! the identical cloud, byte for byte, on every platform.

use crate::cloud::PointCloud;
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

fn simplex(vs: &[u32]) -> Simplex {
    Simplex::new(vs.iter().copied())
}

/// A circle (vertices 0, 1, 2) with a whisker edge to vertex 3 attached
/// at vertex 0. Vertices enter at value 0, edges at value 1; the
/// attachment vertex 0 is the natural singular point.
pub fn circle_whisker_complex() -> FilteredComplex {
    FilteredComplex::from_simplices(vec![
        (simplex(&[0]), 0.0),
        (simplex(&[1]), 0.0),
        (simplex(&[2]), 0.0),
        (simplex(&[3]), 0.0),
        (simplex(&[0, 1]), 1.0),
        (simplex(&[1, 2]), 1.0),
        (simplex(&[0, 2]), 1.0),
        (simplex(&[0, 3]), 1.0),
    ])
    .unwrap()
}

/// Two squares (4-cycles) sharing vertex 0 — the simplicial model of a
/// figure eight. All simplices enter at value 0; the shared vertex 0 is
/// the singular point.
pub fn wedge_circles_complex() -> FilteredComplex {
    let mut simplices: Vec<(Simplex, f64)> = (0..7).map(|v| (simplex(&[v]), 0.0)).collect();
    for cycle in [[0u32, 1, 2, 3], [0, 4, 5, 6]] {
        for i in 0..4 {
            simplices.push((simplex(&[cycle[i], cycle[(i + 1) % 4]]), 0.0));
        }
    }
    FilteredComplex::from_simplices(simplices).unwrap()
}

/// Two hollow octahedra sharing vertex 0 — the simplicial model of two
/// spheres joined at a point. All simplices enter at value 0; the shared
/// vertex 0 is the singular point. 11 vertices, 24 edges, 16 triangles.
pub fn wedge_spheres_complex() -> FilteredComplex {
    let mut simplices: Vec<(Simplex, f64)> = Vec::new();
    // An octahedron has poles a, b and an equatorial 4-cycle; its 8
    // triangles join each pole to each equator edge.
    let mut add_octahedron = |ids: [u32; 6]| {
        let [a, b, e0, e1, e2, e3] = ids;
        for v in ids {
            simplices.push((simplex(&[v]), 0.0));
        }
        let equator = [e0, e1, e2, e3];
        for i in 0..4 {
            let (u, v) = (equator[i], equator[(i + 1) % 4]);
            simplices.push((simplex(&[u, v]), 0.0));
            simplices.push((simplex(&[a, u]), 0.0));
            simplices.push((simplex(&[b, u]), 0.0));
            simplices.push((simplex(&[a, u, v]), 0.0));
            simplices.push((simplex(&[b, u, v]), 0.0));
        }
    };
    // Vertex 0 is a pole of both octahedra and is emitted twice; dedupe.
    add_octahedron([0, 1, 2, 3, 4, 5]);
    add_octahedron([0, 6, 7, 8, 9, 10]);
    simplices.sort_by(|a, b| a.0.cmp(&b.0));
    simplices.dedup_by(|a, b| a.0 == b.0);
    FilteredComplex::from_simplices(simplices).unwrap()
}

/// `count` disjoint solid tetrahedra — every face included, all values 0 —
/// on vertices 4i..4i+3. A synthetic stress fixture: 15 simplices per
/// block across dimensions 0..=3, scaling linearly and trivially
/// verifiable. Used to exercise allowability checks at large vertex
/// counts.
pub fn disjoint_tetrahedra_complex(count: usize) -> Result<FilteredComplex> {
    if count == 0 {
        return Err(Error::InvalidParameter {
            name: "count",
            reason: "need at least one tetrahedron".into(),
        });
    }
    let mut simplices: Vec<(Simplex, f64)> = Vec::with_capacity(15 * count);
    for b in 0..count as u32 {
        let v = [4 * b, 4 * b + 1, 4 * b + 2, 4 * b + 3];
        for i in 0..4 {
            simplices.push((simplex(&[v[i]]), 0.0));
            for j in (i + 1)..4 {
                simplices.push((simplex(&[v[i], v[j]]), 0.0));
                for k in (j + 1)..4 {
                    simplices.push((simplex(&[v[i], v[j], v[k]]), 0.0));
                }
            }
        }
        simplices.push((Simplex::new(v), 0.0));
    }
    FilteredComplex::from_simplices(simplices)
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be a finite positive number, got {v}"),
        });
    }
    Ok(())
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "sample count must be at least 1".into(),
        });
    }
    Ok(())
}

/// One point sampled uniformly by area on the sphere of given radius
/// around `centre`, via the measure-preserving cylindrical projection:
/// height and azimuth are independent uniforms.
fn sphere_point(rng: &mut ChaCha8Rng, centre: [f64; 3], radius: f64) -> Vec<f64> {
    let z = rng.gen_range(-radius..=radius);
    let theta = rng.gen_range(0.0..TAU);
    let ring = (radius * radius - z * z).max(0.0).sqrt();
    vec![
        centre[0] + ring * theta.cos(),
        centre[1] + ring * theta.sin(),
        centre[2] + z,
    ]
}

/// Samples two tangent spheres of the given radius joined at the origin,
/// with centres (±radius, 0, 0): the wedge point first, then `n` points
/// uniform by area on each sphere (the +x sphere first). 2n + 1 points.
pub fn sample_wedge_spheres(n: usize, radius: f64, seed: u64) -> Result<PointCloud> {
    check_count(n)?;
    check_positive("radius", radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(2 * n + 1);
    points.push(vec![0.0, 0.0, 0.0]);
    for centre in [[radius, 0.0, 0.0], [-radius, 0.0, 0.0]] {
        for _ in 0..n {
            points.push(sphere_point(&mut rng, centre, radius));
        }
    }
    PointCloud::new(points)
}

/// Samples two tangent circles of the given radius joined at the origin,
/// with centres (±radius, 0): the wedge point first, then `n` points at
/// uniform angles on each circle (the +x circle first). 2n + 1 points.
pub fn sample_wedge_circles(n: usize, radius: f64, seed: u64) -> Result<PointCloud> {
    check_count(n)?;
    check_positive("radius", radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(2 * n + 1);
    points.push(vec![0.0, 0.0]);
    for cx in [radius, -radius] {
        for _ in 0..n {
            let a = rng.gen_range(0.0..TAU);
            points.push(vec![cx + radius * a.cos(), radius * a.sin()]);
        }
    }
    PointCloud::new(points)
}

/// Samples a torus of revolution with the given major and minor radii:
/// ((R + r·cos φ)·cos θ, (R + r·cos φ)·sin θ, r·sin φ) over parameter
/// angles (θ, φ) drawn uniformly.
pub fn sample_torus(n: usize, major: f64, minor: f64, seed: u64) -> Result<PointCloud> {
    check_count(n)?;
    check_positive("major", major)?;
    check_positive("minor", minor)?;
    if minor >= major {
        return Err(Error::InvalidParameter {
            name: "minor",
            reason: format!("minor radius {minor} must be below the major radius {major}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| {
            let theta = rng.gen_range(0.0..TAU);
            let phi = rng.gen_range(0.0..TAU);
            let ring = major + minor * phi.cos();
            vec![ring * theta.cos(), ring * theta.sin(), minor * phi.sin()]
        })
        .collect();
    PointCloud::new(points)
}

/// Samples a pinched torus: a torus of revolution whose tube radius
/// shrinks to zero once along the main angle,
/// ρ(θ) = r·sin(θ/2), giving the surface point
/// ((R + ρ·cos φ)·cos θ, (R + ρ·cos φ)·sin θ, ρ·sin φ) with (θ, φ)
/// uniform. The tube collapses at θ = 0, producing the single singular
/// point (R, 0, 0).
pub fn sample_pinched_torus(n: usize, major: f64, minor: f64, seed: u64) -> Result<PointCloud> {
    check_count(n)?;
    check_positive("major", major)?;
    check_positive("minor", minor)?;
    if minor >= major {
        return Err(Error::InvalidParameter {
            name: "minor",
            reason: format!("minor radius {minor} must be below the major radius {major}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| {
            let theta = rng.gen_range(0.0..TAU);
            let phi = rng.gen_range(0.0..TAU);
            let rho = minor * (theta / 2.0).sin();
            let ring = major + rho * phi.cos();
            vec![ring * theta.cos(), ring * theta.sin(), rho * phi.sin()]
        })
        .collect();
    PointCloud::new(points)
}

/// Samples a single origin-centred sphere of the given radius in R³,
/// uniform by area.
pub fn sample_sphere(n: usize, radius: f64, seed: u64) -> Result<PointCloud> {
    check_count(n)?;
    check_positive("radius", radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| sphere_point(&mut rng, [0.0, 0.0, 0.0], radius))
        .collect();
    PointCloud::new(points)
}

/// A cloud generator specification: which surface, its parameters, and
/// the RNG seed. Carries everything needed to reproduce the sample and
/// to document it in a file header.
#[derive(Clone, Debug, PartialEq)]
pub enum CloudSpec {
    WedgeSpheres { n: usize, radius: f64, seed: u64 },
    WedgeCircles { n: usize, radius: f64, seed: u64 },
    Torus { n: usize, major: f64, minor: f64, seed: u64 },
    PinchedTorus { n: usize, major: f64, minor: f64, seed: u64 },
    Sphere { n: usize, radius: f64, seed: u64 },
}

impl CloudSpec {
    /// Draws the sample this specification describes.
    pub fn sample(&self) -> Result<PointCloud> {
        match *self {
            CloudSpec::WedgeSpheres { n, radius, seed } => sample_wedge_spheres(n, radius, seed),
            CloudSpec::WedgeCircles { n, radius, seed } => sample_wedge_circles(n, radius, seed),
            CloudSpec::Torus {
                n,
                major,
                minor,
                seed,
            } => sample_torus(n, major, minor, seed),
            CloudSpec::PinchedTorus {
                n,
                major,
                minor,
                seed,
            } => sample_pinched_torus(n, major, minor, seed),
            CloudSpec::Sphere { n, radius, seed } => sample_sphere(n, radius, seed),
        }
    }

    /// Header lines documenting the generator, suitable for
    /// [`crate::cloud::write_cloud`]. Contains no timestamps or machine
    /// state: regenerating the same spec writes the identical file.
    pub fn header(&self) -> Vec<String> {
        let mut lines = Vec::new();
        let (kind, seed) = match *self {
            CloudSpec::WedgeSpheres { n, radius, seed } => {
                lines.push(format!("n = {n}"));
                lines.push(format!("radius = {radius}"));
                ("wedge-spheres", seed)
            }
            CloudSpec::WedgeCircles { n, radius, seed } => {
                lines.push(format!("n = {n}"));
                lines.push(format!("radius = {radius}"));
                ("wedge-circles", seed)
            }
            CloudSpec::Torus {
                n,
                major,
                minor,
                seed,
            } => {
                lines.push(format!("n = {n}"));
                lines.push(format!("major = {major}"));
                lines.push(format!("minor = {minor}"));
                ("torus", seed)
            }
            CloudSpec::PinchedTorus {
                n,
                major,
                minor,
                seed,
            } => {
                lines.push(format!("n = {n}"));
                lines.push(format!("major = {major}"));
                lines.push(format!("minor = {minor}"));
                ("pinched-torus", seed)
            }
            CloudSpec::Sphere { n, radius, seed } => {
                lines.push(format!("n = {n}"));
                lines.push(format!("radius = {radius}"));
                ("sphere", seed)
            }
        };
        lines.insert(0, format!("kind = {kind}"));
        lines.push(format!("seed = {seed}"));
        lines.push("rng = chacha8".to_string());
        lines.push("format-version = 1".to_string());
        lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{betti_numbers, compute_persistence};

    #[test]
    fn fixture_complexes_have_the_advertised_shape() {
        let whisker = circle_whisker_complex();
        assert_eq!(whisker.counts_by_dim(), vec![4, 4]);
        let ph = compute_persistence(&whisker, 1).unwrap();
        assert_eq!(betti_numbers(&ph, f64::INFINITY), vec![1, 1]);

        let circles = wedge_circles_complex();
        assert_eq!(circles.counts_by_dim(), vec![7, 8]);
        let ph = compute_persistence(&circles, 1).unwrap();
        assert_eq!(betti_numbers(&ph, f64::INFINITY), vec![1, 2]);

        let spheres = wedge_spheres_complex();
        assert_eq!(spheres.counts_by_dim(), vec![11, 24, 16]);
        let ph = compute_persistence(&spheres, 2).unwrap();
        assert_eq!(betti_numbers(&ph, f64::INFINITY), vec![1, 0, 2]);
    }

    #[test]
    fn tetrahedra_blocks_count_out() {
        let complex = disjoint_tetrahedra_complex(5).unwrap();
        assert_eq!(complex.counts_by_dim(), vec![20, 30, 20, 5]);
        let ph = compute_persistence(&complex, 3).unwrap();
        assert_eq!(betti_numbers(&ph, f64::INFINITY), vec![5, 0, 0, 0]);
        assert!(disjoint_tetrahedra_complex(0).is_err());
    }

    #[test]
    fn generators_are_deterministic_in_the_seed() {
        let a = sample_wedge_spheres(50, 1.0, 7).unwrap();
        let b = sample_wedge_spheres(50, 1.0, 7).unwrap();
        let c = sample_wedge_spheres(50, 1.0, 8).unwrap();
        for i in 0..a.len() {
            assert_eq!(a.point(i), b.point(i));
        }
        assert!(
            (0..a.len()).any(|i| a.point(i) != c.point(i)),
            "different seeds must differ"
        );
    }

    /// Chi-square statistic of octant counts around a centre; under
    /// uniformity it follows chi-square with 7 degrees of freedom, whose
    /// 0.001 quantile is 24.32. Seeds are fixed, so this never flakes.
    fn octant_chi_square(points: &[Vec<f64>], centre: [f64; 3]) -> f64 {
        let mut counts = [0usize; 8];
        for p in points {
            let mut idx = 0;
            for (a, c) in centre.iter().enumerate() {
                if p[a] >= *c {
                    idx |= 1 << a;
                }
            }
            counts[idx] += 1;
        }
        let expected = points.len() as f64 / 8.0;
        counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum()
    }

    #[test]
    fn wedge_spheres_lie_on_the_spheres_uniformly() {
        let n = 400;
        let radius = 1.5;
        let cloud = sample_wedge_spheres(n, radius, 42).unwrap();
        assert_eq!(cloud.len(), 2 * n + 1);
        assert_eq!(cloud.point(0), &[0.0, 0.0, 0.0]);
        let centres = [[radius, 0.0, 0.0], [-radius, 0.0, 0.0]];
        for i in 1..cloud.len() {
            let p = cloud.point(i);
            let on_some = centres.iter().any(|c| {
                let d2: f64 = p.iter().zip(c).map(|(x, y)| (x - y) * (x - y)).sum();
                (d2.sqrt() - radius).abs() < 1e-12
            });
            assert!(on_some, "point {i} is off both spheres: {p:?}");
        }
        for (s, centre) in centres.iter().enumerate() {
            let points: Vec<Vec<f64>> = (1 + s * n..1 + (s + 1) * n)
                .map(|i| cloud.point(i).to_vec())
                .collect();
            let chi = octant_chi_square(&points, *centre);
            assert!(chi < 24.32, "sphere {s} octant chi-square {chi}");
        }
    }

    #[test]
    fn wedge_circles_lie_on_the_circles() {
        let n = 300;
        let cloud = sample_wedge_circles(n, 1.0, 11).unwrap();
        assert_eq!(cloud.len(), 2 * n + 1);
        assert_eq!(cloud.point(0), &[0.0, 0.0]);
        for i in 1..cloud.len() {
            let p = cloud.point(i);
            let on_some = [1.0f64, -1.0].iter().any(|cx| {
                let d2 = (p[0] - cx) * (p[0] - cx) + p[1] * p[1];
                (d2.sqrt() - 1.0).abs() < 1e-12
            });
            assert!(on_some, "point {i} is off both circles: {p:?}");
        }
    }

    #[test]
    fn torus_points_satisfy_the_surface_equation() {
        let (major, minor) = (2.0, 0.5);
        let cloud = sample_torus(500, major, minor, 3).unwrap();
        for i in 0..cloud.len() {
            let p = cloud.point(i);
            let ring = (p[0] * p[0] + p[1] * p[1]).sqrt() - major;
            let tube = (ring * ring + p[2] * p[2]).sqrt();
            assert!((tube - minor).abs() < 1e-9, "point {i}: tube radius {tube}");
        }
    }

    #[test]
    fn pinched_torus_tube_shrinks_with_the_main_angle() {
        let (major, minor) = (2.0, 1.0);
        let cloud = sample_pinched_torus(800, major, minor, 5).unwrap();
        let mut min_rho = f64::INFINITY;
        let mut max_rho: f64 = 0.0;
        for i in 0..cloud.len() {
            let p = cloud.point(i);
            let mut theta = p[1].atan2(p[0]);
            if theta < 0.0 {
                theta += TAU;
            }
            let ring = (p[0] * p[0] + p[1] * p[1]).sqrt() - major;
            let rho = (ring * ring + p[2] * p[2]).sqrt();
            let expected = minor * (theta / 2.0).sin();
            assert!(
                (rho - expected).abs() < 1e-9,
                "point {i}: tube radius {rho} at angle {theta}, expected {expected}"
            );
            min_rho = min_rho.min(rho);
            max_rho = max_rho.max(rho);
        }
        assert!(min_rho < 0.05 * minor, "no points near the pinch: {min_rho}");
        assert!(max_rho > 0.9 * minor, "no points on the fat side: {max_rho}");
    }

    #[test]
    fn sphere_sample_is_uniform_on_the_sphere() {
        let cloud = sample_sphere(800, 2.0, 9).unwrap();
        let mut points = Vec::new();
        for i in 0..cloud.len() {
            let p = cloud.point(i);
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 2.0).abs() < 1e-12);
            points.push(p.to_vec());
        }
        let chi = octant_chi_square(&points, [0.0; 3]);
        assert!(chi < 24.32, "octant chi-square {chi}");
    }

    #[test]
    fn parameters_are_validated() {
        assert!(sample_wedge_spheres(0, 1.0, 0).is_err());
        assert!(sample_wedge_spheres(10, 0.0, 0).is_err());
        assert!(sample_torus(10, 1.0, 1.0, 0).is_err(), "minor must stay below major");
        assert!(sample_pinched_torus(10, 1.0, 2.0, 0).is_err());
        assert!(sample_sphere(10, -1.0, 0).is_err());
    }

    #[test]
    fn spec_headers_are_stable() {
        let spec = CloudSpec::PinchedTorus {
            n: 1500,
            major: 2.0,
            minor: 1.0,
            seed: 13,
        };
        assert_eq!(
            spec.header(),
            vec![
                "kind = pinched-torus",
                "n = 1500",
                "major = 2",
                "minor = 1",
                "seed = 13",
                "rng = chacha8",
                "format-version = 1",
            ]
        );
        let cloud = spec.sample().unwrap();
        assert_eq!(cloud.len(), 1500);
    }
}
