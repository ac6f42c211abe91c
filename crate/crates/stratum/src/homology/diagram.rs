//! Persistence diagrams, barcodes, and their text formats.

use crate::error::{Error, Result};
use std::io::{BufRead, Write};

/// One birth/death pair of a persistence diagram.
///
/// `death` is `f64::INFINITY` for essential classes. The index fields
/// record the filtration positions that created and killed the class; they
/// are internal bookkeeping and are not serialised.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistencePair {
    pub dimension: usize,
    pub birth: f64,
    pub death: f64,
    pub birth_index: usize,
    pub death_index: Option<usize>,
}

impl PersistencePair {
    /// Whether the class never dies.
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    /// Lifetime `death - birth` (infinite for essential classes).
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// Whether the pair was born and killed at the same filtration value.
    pub fn is_zero_persistence(&self) -> bool {
        self.death == self.birth
    }
}

/// All persistence pairs of one homological dimension.
///
/// Zero-persistence pairs (equal birth and death) are retained internally;
/// the default view [`PersistenceDiagram::pairs`] hides them, and callers
/// that need the raw pairing use [`PersistenceDiagram::all_pairs`].
#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceDiagram {
    pub dimension: usize,
    pairs: Vec<PersistencePair>,
}

impl PersistenceDiagram {
    /// Builds a diagram, sorting pairs by (birth, death, birth index) for
    /// deterministic output.
    pub fn new(dimension: usize, mut pairs: Vec<PersistencePair>) -> Self {
        pairs.sort_by(|a, b| {
            a.birth
                .total_cmp(&b.birth)
                .then(a.death.total_cmp(&b.death))
                .then(a.birth_index.cmp(&b.birth_index))
        });
        PersistenceDiagram { dimension, pairs }
    }

    /// The default view: every pair with positive (or infinite) lifetime.
    pub fn pairs(&self) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(|p| !p.is_zero_persistence())
    }

    /// Every pair, including zero-persistence ones.
    pub fn all_pairs(&self) -> &[PersistencePair] {
        &self.pairs
    }

    /// Finite pairs of the default view (positive lifetime, not essential).
    pub fn finite_pairs(&self) -> impl Iterator<Item = &PersistencePair> {
        self.pairs().filter(|p| !p.is_essential())
    }

    /// Essential pairs (infinite death).
    pub fn essential_pairs(&self) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(|p| p.is_essential())
    }

    /// Number of essential classes.
    pub fn essential_count(&self) -> usize {
        self.essential_pairs().count()
    }

    /// Number of classes alive at filtration value `t`: pairs with
    /// `birth <= t < death`. A positive-infinite `t` counts the essential
    /// classes.
    pub fn betti_at(&self, t: f64) -> usize {
        if t.is_infinite() && t > 0.0 {
            return self.essential_count();
        }
        self.pairs
            .iter()
            .filter(|p| p.birth <= t && t < p.death)
            .count()
    }
}

/// Betti numbers per dimension read off a family of diagrams at value `t`
/// (pass positive infinity for the Betti numbers of the full complex).
pub fn betti_numbers(diagrams: &[PersistenceDiagram], at: f64) -> Vec<usize> {
    diagrams.iter().map(|d| d.betti_at(at)).collect()
}

fn fmt_value(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        v.to_string()
    }
}

/// Writes diagrams as one block per dimension (index 0 upward), each line
/// `birth death` with `inf` for infinite deaths, blocks separated by a
/// single blank line. With `keep_zero` the zero-persistence pairs are
/// included; otherwise the default view is written.
///
/// Values use shortest round-trip formatting, so reading the file back
/// reproduces the multiset of pairs exactly.
pub fn write_diagram<W: Write>(
    mut w: W,
    diagrams: &[PersistenceDiagram],
    keep_zero: bool,
) -> Result<()> {
    for d in diagrams {
        let pairs: Vec<&PersistencePair> = if keep_zero {
            d.all_pairs().iter().collect()
        } else {
            d.pairs().collect()
        };
        for p in pairs {
            writeln!(w, "{} {}", fmt_value(p.birth), fmt_value(p.death))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Reads diagrams written by [`write_diagram`]. Block `k` becomes the
/// dimension-`k` diagram. Index bookkeeping is not stored in the format,
/// so the pairs come back with zeroed indices.
pub fn read_diagram<R: BufRead>(reader: R) -> Result<Vec<PersistenceDiagram>> {
    let mut blocks: Vec<Vec<PersistencePair>> = Vec::new();
    let mut current: Vec<PersistencePair> = Vec::new();
    let mut open = false; // saw content or separator for the current block
    let mut lineno = 0usize;
    for line in reader.lines() {
        lineno += 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            if line.trim().is_empty() && !line.trim_start().starts_with('#') {
                // A genuinely blank line closes the current block.
                blocks.push(std::mem::take(&mut current));
                open = false;
            }
            continue;
        }
        open = true;
        let mut tokens = content.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<f64> {
            let tok = tok.ok_or_else(|| Error::Parse {
                what: "diagram",
                line: lineno,
                reason: "expected `birth death`".into(),
            })?;
            if tok == "inf" {
                return Ok(f64::INFINITY);
            }
            tok.parse::<f64>().map_err(|e| Error::Parse {
                what: "diagram",
                line: lineno,
                reason: e.to_string(),
            })
        };
        let birth = parse(tokens.next())?;
        let death = parse(tokens.next())?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                what: "diagram",
                line: lineno,
                reason: "trailing tokens after `birth death`".into(),
            });
        }
        current.push(PersistencePair {
            dimension: blocks.len(),
            birth,
            death,
            birth_index: 0,
            death_index: None,
        });
    }
    if open {
        blocks.push(current);
    }
    Ok(blocks
        .into_iter()
        .enumerate()
        .map(|(dim, pairs)| PersistenceDiagram::new(dim, pairs))
        .collect())
}

/// Writes one diagram as a barcode: per interval, the two endpoint lines
/// `birth index` and `death index` followed by a blank line, giving
/// jump-separated segments that plot directly as horizontal bars. Bar
/// indices count intervals from 0 within this diagram.
pub fn write_barcode<W: Write>(
    mut w: W,
    diagram: &PersistenceDiagram,
    keep_zero: bool,
) -> Result<()> {
    let pairs: Vec<&PersistencePair> = if keep_zero {
        diagram.all_pairs().iter().collect()
    } else {
        diagram.pairs().collect()
    };
    for (idx, p) in pairs.iter().enumerate() {
        writeln!(w, "{} {idx}", fmt_value(p.birth))?;
        writeln!(w, "{} {idx}", fmt_value(p.death))?;
        writeln!(w)?;
    }
    Ok(())
}
