//! Filtered simplicial complexes: canonical simplex order, Vietoris–Rips
//! construction, barycentric subdivision, and text I/O.

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::par;
use crate::simplex::Simplex;
use std::collections::HashMap;
use std::io::{BufRead, Write};

/// A finite simplicial complex with a filtration value per simplex.
///
/// Simplices are kept in a fixed total order: non-decreasing value, then
/// dimension, then lexicographic vertex order. Because values never
/// decrease from a face to a coface, every face precedes its cofaces, so
/// index prefixes are subcomplexes and boundary matrices are strictly
/// upper-triangular.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    values: Vec<f64>,
    index: HashMap<Simplex, u32>,
    dim: usize,
}

impl PartialEq for FilteredComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices && self.values == other.values
    }
}

/// The canonical simplex order: value, then dimension, then vertex lists
/// lexicographically.
fn canonical_cmp(a: &(Simplex, f64), b: &(Simplex, f64)) -> std::cmp::Ordering {
    a.1.total_cmp(&b.1)
        .then_with(|| a.0.dim().cmp(&b.0.dim()))
        .then_with(|| a.0.vertices().cmp(b.0.vertices()))
}

impl FilteredComplex {
    /// Builds a complex from `(simplex, value)` pairs in any order.
    ///
    /// Validates that values are finite, simplices are distinct, every
    /// face of a simplex is present, and values never decrease from face
    /// to coface.
    pub fn from_simplices(simplices: Vec<(Simplex, f64)>) -> Result<Self> {
        let mut items = simplices;
        for (s, v) in &items {
            if !v.is_finite() {
                return Err(Error::InvalidComplex(format!(
                    "simplex {s} has a non-finite filtration value"
                )));
            }
        }
        items.sort_unstable_by(canonical_cmp);
        let mut index = HashMap::with_capacity(items.len());
        let mut dim = 0;
        for (i, (s, _)) in items.iter().enumerate() {
            if index.insert(s.clone(), i as u32).is_some() {
                return Err(Error::InvalidComplex(format!("duplicate simplex {s}")));
            }
            dim = dim.max(s.dim());
        }
        // Closure and monotonicity: every facet must exist with a value
        // not above its coface's.
        for (s, v) in &items {
            for facet in s.facets() {
                match index.get(&facet) {
                    None => {
                        return Err(Error::InvalidComplex(format!(
                            "missing face {facet} of {s}"
                        )))
                    }
                    Some(&fi) => {
                        let fv = items[fi as usize].1;
                        if fv > *v {
                            return Err(Error::InvalidComplex(format!(
                                "face {facet} (value {fv}) exceeds coface {s} (value {v})"
                            )));
                        }
                    }
                }
            }
        }
        let (simplices, values) = items.into_iter().unzip();
        Ok(FilteredComplex {
            simplices,
            values,
            index,
            dim,
        })
    }

    /// Number of simplices.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    /// True when the complex holds no simplices.
    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension (0 for an empty complex).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The simplex at filtration position `i`.
    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    /// The filtration value at position `i`.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Position of `s` in the filtration order.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    /// Whether `s` is a simplex of this complex.
    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Iterates `(simplex, value)` in filtration order.
    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, f64)> {
        self.simplices.iter().zip(self.values.iter().copied())
    }

    /// Vertex ids present in the complex, ascending.
    pub fn vertex_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .simplices
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect();
        ids.sort_unstable();
        ids
    }

    /// Number of simplices per dimension, indexed by dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dim + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Filtration positions of the facets of the simplex at position `i`,
    /// ascending. All of them precede `i`.
    pub fn boundary_indices(&self, i: usize) -> Vec<u32> {
        let mut out: Vec<u32> = self.simplices[i]
            .facets()
            .iter()
            .map(|f| self.index[f])
            .collect();
        out.sort_unstable();
        out
    }
}

/// Builds the Vietoris–Rips complex of `cloud` at scale `epsilon`: one
/// vertex per point (value 0), an edge per pair at distance ≤ `epsilon`
/// (value the distance), and a simplex per clique of the neighbourhood
/// graph up to dimension `max_dim` (value the largest pairwise distance).
///
/// The clique expansion runs per starting vertex — in parallel under the
/// `parallel` feature — and the result is identical to the sequential
/// order because the final complex is sorted canonically.
pub fn build_rips(cloud: &PointCloud, epsilon: f64, max_dim: usize) -> Result<FilteredComplex> {
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            reason: format!("must be a finite non-negative scale, got {epsilon}"),
        });
    }
    let n = cloud.len();
    if max_dim + 1 > n {
        return Err(Error::InvalidParameter {
            name: "max_dim",
            reason: format!("complex on {n} points supports dimension at most {}", n - 1),
        });
    }

    // Forward neighbour lists: for each vertex, the strictly larger ids
    // within distance epsilon, ascending, with the distance cached.
    let eps_sq = epsilon * epsilon;
    let forward: Vec<Vec<(u32, f64)>> = par::map_indexed(n, |v| {
        let mut nbrs = Vec::new();
        for u in (v + 1)..n {
            let d2 = cloud.sq_distance(v, u);
            if d2 <= eps_sq {
                nbrs.push((u as u32, d2.sqrt()));
            }
        }
        nbrs
    });

    // Expand cliques from each vertex over forward neighbours only, so
    // every clique is discovered exactly once, from its smallest vertex.
    let per_vertex: Vec<Vec<(Simplex, f64)>> = par::map_indexed(n, |v| {
        let mut found = Vec::new();
        if max_dim == 0 {
            return found;
        }
        let mut members: Vec<u32> = vec![v as u32];
        let cand: Vec<u32> = forward[v].iter().map(|&(u, _)| u).collect();
        expand_cliques(cloud, &forward, max_dim, &mut members, &cand, 0.0, &mut found);
        found
    });

    let mut simplices: Vec<(Simplex, f64)> = (0..n)
        .map(|v| (Simplex::vertex(v as u32), 0.0))
        .collect();
    for mut chunk in per_vertex {
        simplices.append(&mut chunk);
    }
    FilteredComplex::from_simplices(simplices)
}

/// Depth-first clique expansion. `members` is the current clique (vertices
/// ascending), `cand` the ids (all larger than the last member) adjacent
/// to every member, and `value` the largest pairwise distance so far.
fn expand_cliques(
    cloud: &PointCloud,
    forward: &[Vec<(u32, f64)>],
    max_dim: usize,
    members: &mut Vec<u32>,
    cand: &[u32],
    value: f64,
    found: &mut Vec<(Simplex, f64)>,
) {
    for (ci, &u) in cand.iter().enumerate() {
        // Distance from u to every current member is within epsilon by
        // construction of `cand`; the filtration value is the max pairwise
        // distance, computed in a fixed order for determinism.
        let mut new_value = value;
        for &m in members.iter() {
            new_value = new_value.max(cloud.distance(m as usize, u as usize));
        }
        members.push(u);
        found.push((Simplex::new(members.iter().copied()), new_value));
        if members.len() <= max_dim {
            // Candidates for deeper cliques: remaining cand entries past u
            // that are also forward neighbours of u.
            let rest = &cand[ci + 1..];
            let next: Vec<u32> = intersect_sorted(rest, &forward[u as usize]);
            if !next.is_empty() {
                expand_cliques(cloud, forward, max_dim, members, &next, new_value, found);
            }
        }
        members.pop();
    }
}

/// Intersection of a sorted id slice with the ids of a sorted `(id, dist)`
/// slice, ascending.
fn intersect_sorted(a: &[u32], b: &[(u32, f64)]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Barycentric subdivision. Each input simplex becomes a vertex (its id is
/// its position in the input filtration order); each strictly increasing
/// chain of faces σ₀ ⊂ σ₁ ⊂ … ⊂ σ_k becomes a k-simplex whose value is the
/// largest input value along the chain. Homeomorphic to the input, so all
/// homology is preserved.
pub fn barycentric_subdivision(complex: &FilteredComplex) -> Result<FilteredComplex> {
    let mut out: Vec<(Simplex, f64)> = Vec::new();
    // Enumerate chains by their top simplex, extending downwards through
    // proper faces. Chains are sequences of input *indices*.
    for top in 0..complex.len() {
        let mut chain = vec![top as u32];
        push_chains(complex, &mut chain, complex.value(top), &mut out);
    }
    FilteredComplex::from_simplices(out)
}

fn push_chains(
    complex: &FilteredComplex,
    chain: &mut Vec<u32>,
    value: f64,
    out: &mut Vec<(Simplex, f64)>,
) {
    out.push((Simplex::new(chain.iter().copied()), value));
    let bottom = complex.simplex(chain[chain.len() - 1] as usize);
    if bottom.dim() == 0 {
        return;
    }
    // All proper faces of the bottom simplex extend the chain downwards.
    for l in (0..bottom.dim()).rev() {
        for face in bottom.faces_of_dim(l) {
            let fi = complex.index_of(&face).expect("complex is face-closed") as u32;
            chain.push(fi);
            push_chains(complex, chain, value, out);
            chain.pop();
        }
    }
}

/// Reads an explicit complex: one simplex per line as `v0 v1 … vk value`,
/// `#` comments and blank lines ignored. The usual complex invariants are
/// enforced after parsing.
pub fn read_complex<R: BufRead>(reader: R) -> Result<FilteredComplex> {
    let mut simplices = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let parse_err = |reason: String| Error::Parse {
            what: "complex",
            line: lineno + 1,
            reason,
        };
        if tokens.len() < 2 {
            return Err(parse_err("expected `v0 … vk value`".into()));
        }
        let value: f64 = tokens[tokens.len() - 1]
            .parse()
            .map_err(|e: std::num::ParseFloatError| parse_err(e.to_string()))?;
        let mut vertices = Vec::with_capacity(tokens.len() - 1);
        for t in &tokens[..tokens.len() - 1] {
            let v: u32 = t
                .parse()
                .map_err(|e: std::num::ParseIntError| parse_err(e.to_string()))?;
            vertices.push(v);
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_err("repeated vertex in simplex".into()));
        }
        simplices.push((Simplex::new(vertices), value));
    }
    if simplices.is_empty() {
        return Err(Error::EmptyInput("complex file"));
    }
    FilteredComplex::from_simplices(simplices)
}

/// Writes a complex in the format accepted by [`read_complex`], in
/// filtration order, with optional leading `#` header lines.
pub fn write_complex<W: Write>(
    mut w: W,
    complex: &FilteredComplex,
    header: &[String],
) -> Result<()> {
    for h in header {
        writeln!(w, "# {h}")?;
    }
    for (s, v) in complex.iter() {
        for vertex in s.vertices() {
            write!(w, "{vertex} ")?;
        }
        writeln!(w, "{v}")?;
    }
    Ok(())
}
