//! Nested lower strata marking the singular part of a filtered complex.

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;
use std::collections::HashSet;
use std::fmt::Write as _;

/// A depth-d stratification stores the lower strata
/// X₀ ⊆ X₁ ⊆ … ⊆ X_{d−1} as explicit simplex sets. The top stratum X_d
/// is the whole complex and is never stored; X_{−1} is empty by
/// definition.
///
/// Invariants, checked at construction against the complex:
///
/// - every stratum simplex belongs to the complex,
/// - each stratum is closed under taking faces,
/// - the strata are nested upward,
/// - X_i contains only simplices of dimension ≤ i.
///
/// The dimension bound makes each X_i an honest subcomplex of dimension
/// at most i; allowability checks rely on it to cut their face search
/// off early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    lower: Vec<HashSet<Simplex>>,
}

impl Stratification {
    /// The stratification with every lower stratum empty. Intersection
    /// homology over it coincides with ordinary persistent homology.
    pub fn trivial(depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidStratification(
                "depth must be at least 1".into(),
            ));
        }
        Ok(Stratification {
            lower: vec![HashSet::new(); depth],
        })
    }

    /// Builds the stratification from explicit lower strata
    /// `sets[0] = X₀, …, sets[d−1] = X_{d−1}`, validating every
    /// invariant against `complex`.
    pub fn from_lower_strata(
        complex: &FilteredComplex,
        sets: Vec<HashSet<Simplex>>,
    ) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidStratification(
                "depth must be at least 1".into(),
            ));
        }
        for (i, set) in sets.iter().enumerate() {
            for s in set {
                if complex.index_of(s).is_none() {
                    return Err(Error::InvalidStratification(format!(
                        "stratum {i} contains {s:?}, which is not in the complex"
                    )));
                }
                if s.dim() > i {
                    return Err(Error::InvalidStratification(format!(
                        "stratum {i} contains {s:?} of dimension {}, above the stratum index",
                        s.dim()
                    )));
                }
                for facet in s.facets() {
                    if !set.contains(&facet) {
                        return Err(Error::InvalidStratification(format!(
                            "stratum {i} contains {s:?} but not its face {facet:?}"
                        )));
                    }
                }
            }
            if i > 0 && !sets[i - 1].is_subset(set) {
                return Err(Error::InvalidStratification(format!(
                    "stratum {} is not contained in stratum {i}",
                    i - 1
                )));
            }
        }
        Ok(Stratification { lower: sets })
    }

    /// The isolated-singular-point stratification: every lower stratum
    /// equals the given set of singular vertices. Reads naturally at any
    /// depth because a point is a 0-dimensional stratum of every level.
    pub fn from_singular_vertices(
        complex: &FilteredComplex,
        vertices: &[u32],
        depth: usize,
    ) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidStratification(
                "depth must be at least 1".into(),
            ));
        }
        let mut set = HashSet::with_capacity(vertices.len());
        for &v in vertices {
            let s = Simplex::vertex(v);
            if complex.index_of(&s).is_none() {
                return Err(Error::UnknownVertex(v));
            }
            set.insert(s);
        }
        Ok(Stratification {
            lower: vec![set; depth],
        })
    }

    /// Number of stored lower strata (the depth d).
    pub fn depth(&self) -> usize {
        self.lower.len()
    }

    /// Whether `simplex` lies in the lower stratum X_level.
    ///
    /// Panics if `level ≥ depth`; the top stratum is the whole complex
    /// and is never queried through this method.
    pub fn contains(&self, level: usize, simplex: &Simplex) -> bool {
        self.lower[level].contains(simplex)
    }

    /// Whether every lower stratum is empty.
    pub fn is_trivial(&self) -> bool {
        self.lower.iter().all(HashSet::is_empty)
    }

    /// The simplices of the lower stratum X_level.
    pub fn stratum(&self, level: usize) -> &HashSet<Simplex> {
        &self.lower[level]
    }
}

/// Parses a stratification from its text form.
///
/// Each line reads `level: v0 v1 v2 …`, assigning vertices to a stratum
/// level in `0..depth`. Strata accumulate upward: X_i is the union of
/// all assignments to levels ≤ i, so a file containing only a `0:` line
/// describes isolated singular points at every depth. Lines starting
/// with `#` and blank lines are skipped. Only vertices can be assigned
/// through this format; their face closure is automatic.
pub fn read_stratification(
    text: &str,
    complex: &FilteredComplex,
    depth: usize,
) -> Result<Stratification> {
    if depth == 0 {
        return Err(Error::InvalidStratification(
            "depth must be at least 1".into(),
        ));
    }
    let mut new_at_level: Vec<Vec<u32>> = vec![Vec::new(); depth];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((level_part, rest)) = line.split_once(':') else {
            return Err(Error::Parse {
                what: "stratification",
                line: lineno + 1,
                reason: "expected `level: vertex ids`".into(),
            });
        };
        let level: usize = level_part.trim().parse().map_err(|_| Error::Parse {
            what: "stratification",
            line: lineno + 1,
            reason: format!("invalid stratum level {:?}", level_part.trim()),
        })?;
        if level >= depth {
            return Err(Error::Parse {
                what: "stratification",
                line: lineno + 1,
                reason: format!("stratum level {level} exceeds maximum {}", depth - 1),
            });
        }
        for tok in rest.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| Error::Parse {
                what: "stratification",
                line: lineno + 1,
                reason: format!("invalid vertex id {tok:?}"),
            })?;
            new_at_level[level].push(v);
        }
    }
    let mut sets: Vec<HashSet<Simplex>> = Vec::with_capacity(depth);
    let mut acc: HashSet<Simplex> = HashSet::new();
    for vs in &new_at_level {
        for &v in vs {
            let s = Simplex::vertex(v);
            if complex.index_of(&s).is_none() {
                return Err(Error::UnknownVertex(v));
            }
            acc.insert(s);
        }
        sets.push(acc.clone());
    }
    Ok(Stratification { lower: sets })
}

/// Writes a vertex stratification in the format read by
/// [`read_stratification`]: one `level: ids` line per level that
/// introduces new vertices, ids ascending. Fails on stratifications with
/// simplices of positive dimension, which have no text form.
pub fn write_stratification(strat: &Stratification) -> Result<String> {
    let mut out = String::new();
    let mut seen: HashSet<u32> = HashSet::new();
    for (level, set) in strat.lower.iter().enumerate() {
        let mut fresh: Vec<u32> = Vec::new();
        for s in set {
            if s.dim() > 0 {
                return Err(Error::InvalidStratification(format!(
                    "stratum {level} contains {s:?} of positive dimension; \
                     only vertex stratifications have a text form"
                )));
            }
            let v = s.vertices()[0];
            if seen.insert(v) {
                fresh.push(v);
            }
        }
        if fresh.is_empty() {
            continue;
        }
        fresh.sort_unstable();
        write!(out, "{level}:").expect("string write");
        for v in fresh {
            write!(out, " {v}").expect("string write");
        }
        out.push('\n');
    }
    Ok(out)
}
