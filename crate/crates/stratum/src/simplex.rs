//! Simplices: sorted vertex tuples with face enumeration.

use smallvec::SmallVec;
use std::fmt;

/// Inline storage sized for the common case (dimension ≤ 7); larger
/// simplices spill to the heap transparently.
pub type VertexVec = SmallVec<[u32; 8]>;

/// An abstract simplex: a non-empty set of vertex ids, stored sorted and
/// distinct. The dimension is one less than the number of vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: VertexVec,
}

impl Simplex {
    /// Builds a simplex from vertex ids in any order.
    ///
    /// Panics if `vertices` is empty or contains duplicates; callers that
    /// consume untrusted input must validate before constructing.
    pub fn new<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        let mut vs: VertexVec = vertices.into_iter().collect();
        vs.sort_unstable();
        assert!(!vs.is_empty(), "a simplex needs at least one vertex");
        assert!(
            vs.windows(2).all(|w| w[0] != w[1]),
            "simplex vertices must be distinct"
        );
        Simplex { vertices: vs }
    }

    /// A single vertex as a 0-simplex.
    pub fn vertex(v: u32) -> Self {
        Simplex {
            vertices: SmallVec::from_slice(&[v]),
        }
    }

    /// Sorted vertex ids.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Dimension: number of vertices minus one.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Whether `v` is a vertex of this simplex.
    pub fn contains_vertex(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Whether `self` is a face of `other` (vertex-set inclusion; a simplex
    /// counts as a face of itself).
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.vertices.len() > other.vertices.len() {
            return false;
        }
        // Two-pointer subset test over the sorted vertex lists.
        let mut oi = 0;
        'outer: for &v in &self.vertices {
            while oi < other.vertices.len() {
                match other.vertices[oi].cmp(&v) {
                    std::cmp::Ordering::Less => oi += 1,
                    std::cmp::Ordering::Equal => {
                        oi += 1;
                        continue 'outer;
                    }
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// The codimension-1 faces (facets), i.e. each simplex obtained by
    /// dropping one vertex. Empty for vertices. Emitted in lexicographic
    /// order of their vertex lists.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.dim() == 0 {
            return Vec::new();
        }
        // Dropping vertex i yields a face; dropping a *later* vertex keeps
        // an earlier prefix, so lexicographic order of the results means
        // dropping vertices from last to first.
        let mut out = Vec::with_capacity(self.vertices.len());
        for drop in (0..self.vertices.len()).rev() {
            let mut vs = VertexVec::with_capacity(self.vertices.len() - 1);
            for (i, &v) in self.vertices.iter().enumerate() {
                if i != drop {
                    vs.push(v);
                }
            }
            out.push(Simplex { vertices: vs });
        }
        out
    }

    /// Enumerates the `l`-dimensional faces in **reverse lexicographic**
    /// order of their vertex lists, lazily.
    ///
    /// Reverse order puts faces with large vertex ids first, which pairs
    /// with early-exit searches: callers probing for *any* face inside a
    /// set can stop at the first hit. Yields nothing when `l > dim`.
    pub fn faces_of_dim(&self, l: usize) -> ReverseLexFaces<'_> {
        ReverseLexFaces::new(&self.vertices, l + 1)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Lazy iterator over the size-`m` subsets of a sorted vertex list, in
/// reverse lexicographic order of the resulting vertex lists.
pub struct ReverseLexFaces<'a> {
    vertices: &'a [u32],
    /// Current combination as positions into `vertices`, or `None` once
    /// exhausted (also used for the empty case `m > n` or `m == 0`).
    positions: Option<SmallVec<[usize; 8]>>,
}

impl<'a> ReverseLexFaces<'a> {
    fn new(vertices: &'a [u32], m: usize) -> Self {
        let n = vertices.len();
        let positions = if m == 0 || m > n {
            None
        } else {
            // Lexicographically largest combination: the top m positions.
            Some((n - m..n).collect())
        };
        ReverseLexFaces {
            vertices,
            positions,
        }
    }
}

impl Iterator for ReverseLexFaces<'_> {
    type Item = Simplex;

    fn next(&mut self) -> Option<Simplex> {
        let positions = self.positions.as_mut()?;
        let face = Simplex {
            vertices: positions.iter().map(|&p| self.vertices[p]).collect(),
        };
        // Step to the lexicographic predecessor: find the rightmost
        // position that can still move left, move it, and push every later
        // position to its maximum.
        let n = self.vertices.len();
        let m = positions.len();
        let mut i = m;
        while i > 0 {
            let lower = if i == 1 { 0 } else { positions[i - 2] + 1 };
            if positions[i - 1] > lower {
                positions[i - 1] -= 1;
                for j in i..m {
                    positions[j] = n - m + j;
                }
                break;
            }
            i -= 1;
        }
        if i == 0 {
            self.positions = None;
        }
        Some(face)
    }
}
