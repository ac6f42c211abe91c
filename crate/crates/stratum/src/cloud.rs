//! Point clouds: fixed-dimension real coordinates, text I/O, and exact
//! nearest-neighbour queries.

use crate::error::{Error, Result};
use std::io::{BufRead, Write};

/// A finite set of points in `R^dim` with finite coordinates, stored
/// row-major. Point ids are positions (0-based) and double as vertex ids in
/// complexes built on top of the cloud.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    data: Vec<f64>,
}

impl PointCloud {
    /// Builds a cloud from one coordinate row per point. Every row must
    /// have the same positive length and all coordinates must be finite.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("point cloud"));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::MalformedCloud("points need at least one coordinate".into()));
        }
        let mut data = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::MalformedCloud(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            for &c in p {
                if !c.is_finite() {
                    return Err(Error::MalformedCloud(format!(
                        "point {i} has a non-finite coordinate"
                    )));
                }
                data.push(c);
            }
        }
        Ok(PointCloud { dim, data })
    }

    /// Builds a cloud from row-major coordinates.
    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || data.is_empty() || data.len() % dim != 0 {
            return Err(Error::MalformedCloud(format!(
                "flat data of length {} does not split into rows of {dim}",
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|c| !c.is_finite()) {
            return Err(Error::MalformedCloud(format!(
                "point {} has a non-finite coordinate",
                i / dim
            )));
        }
        Ok(PointCloud { dim, data })
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    /// True when the cloud holds no points (unreachable through the
    /// validating constructors, but kept for completeness).
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of point `i`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Squared Euclidean distance between points `i` and `j`.
    pub fn sq_distance(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.point(i), self.point(j));
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
    }

    /// Euclidean distance between points `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.sq_distance(i, j).sqrt()
    }

    /// The `k` nearest neighbours of point `i`, excluding `i` itself,
    /// nearest first. Exact (all pairs are examined); ties at equal
    /// distance are broken by ascending point id, so the result is
    /// deterministic.
    pub fn k_nearest(&self, i: usize, k: usize) -> Result<Vec<usize>> {
        if k + 1 > self.len() {
            return Err(Error::PatchTooLarge {
                requested: k,
                available: self.len(),
            });
        }
        let mut order: Vec<(f64, usize)> = (0..self.len())
            .filter(|&j| j != i)
            .map(|j| (self.sq_distance(i, j), j))
            .collect();
        let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k > 0 && k < order.len() {
            order.select_nth_unstable_by(k - 1, cmp);
        }
        order.truncate(k);
        order.sort_unstable_by(cmp);
        Ok(order.into_iter().map(|(_, j)| j).collect())
    }
}

/// Reads a cloud from whitespace-separated text: one point per line, `#`
/// starts a comment, blank lines are ignored.
pub fn read_cloud<R: BufRead>(reader: R) -> Result<PointCloud> {
    let mut points = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let coords: std::result::Result<Vec<f64>, _> =
            content.split_whitespace().map(str::parse::<f64>).collect();
        match coords {
            Ok(cs) => points.push(cs),
            Err(e) => {
                return Err(Error::Parse {
                    what: "point cloud",
                    line: lineno + 1,
                    reason: e.to_string(),
                })
            }
        }
    }
    PointCloud::new(points)
}

/// Writes a cloud in the text format accepted by [`read_cloud`]. Each
/// `header` entry becomes one leading `#` comment line. Coordinates are
/// printed with Rust's shortest round-trip `f64` formatting, so reading the
/// file back reproduces the cloud exactly.
pub fn write_cloud<W: Write>(mut w: W, cloud: &PointCloud, header: &[String]) -> Result<()> {
    for h in header {
        writeln!(w, "# {h}")?;
    }
    for i in 0..cloud.len() {
        let coords: Vec<String> = cloud.point(i).iter().map(|c| c.to_string()).collect();
        writeln!(w, "{}", coords.join(" "))?;
    }
    Ok(())
}
