//! Configurations on graphs and the fire/pull moves that generate
//! cokernel equivalence.
//!
//! A configuration is an integer labeling of the vertices. Firing a vertex
//! adds one chip to each of its neighbors; in Laplacian semantics the fired
//! vertex also loses its degree, in adjacency semantics it is unchanged.
//! Pulling is the inverse move. Equivalence classes of configurations under
//! these moves are exactly the cokernel elements of the Laplacian
//! (respectively adjacency) matrix.
//!
//! `apply_firing_sequence` evaluates a whole sequence as the vector
//! identity c - M*f. In Laplacian semantics a positive count means that
//! many fires; in adjacency semantics the fired vertex does not compensate
//! its neighbors, which flips the sign: there a positive count of f means
//! that many pulls. The unit tests pin this correspondence move by move.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPermutation};
use crate::matrix::IntMatrix;
use crate::snf::{smith_normal_form, SmithDecomposition};

/// Integer labeling of the vertices of a graph; represents a cokernel
/// element. Graph-agnostic: just a vector plus its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    labels: Vec<BigInt>,
}

/// Fire (positive) and pull (negative) counts per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiringSequence {
    counts: Vec<BigInt>,
}

/// Which matrix drives the moves: the Laplacian (critical group) or the
/// adjacency matrix (Smith group).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    Laplacian,
    Adjacency,
}

impl Configuration {
    pub fn new(labels: Vec<BigInt>) -> Self {
        Configuration { labels }
    }

    pub fn zero(vertex_count: usize) -> Self {
        Configuration {
            labels: vec![BigInt::zero(); vertex_count],
        }
    }

    pub fn from_i64(labels: &[i64]) -> Self {
        Configuration {
            labels: labels.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BigInt] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &BigInt {
        &self.labels[v]
    }

    pub fn set_label(&mut self, v: usize, value: BigInt) {
        self.labels[v] = value;
    }

    pub fn sum(&self) -> BigInt {
        self.labels.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Configuration {
            labels: self.labels.iter().map(|l| l * k).collect(),
        }
    }

    pub fn add(&self, other: &Configuration) -> Result<Configuration> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Configuration) -> Result<Configuration> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Configuration, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Configuration> {
        if self.vertex_count() != other.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count(),
                got: other.vertex_count(),
            });
        }
        Ok(Configuration {
            labels: self
                .labels
                .iter()
                .zip(&other.labels)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Parse either an n x n grid (n lines of n integers) or a flat vector
    /// introduced by a `FLAT V` header.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        let Some(&(first_ln, first)) = lines.first() else {
            return Err(Error::Parse {
                line: 1,
                message: "empty configuration".into(),
            });
        };
        let parse_int = |s: &str, ln: usize| -> Result<BigInt> {
            s.parse().map_err(|_| Error::Parse {
                line: ln + 1,
                message: format!("bad integer {s:?}"),
            })
        };
        let mut fields = first.split_whitespace();
        if fields.next() == Some("FLAT") {
            let v: usize = fields
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or(Error::Parse {
                    line: first_ln + 1,
                    message: "expected `FLAT V` header".into(),
                })?;
            let mut labels = Vec::with_capacity(v);
            for &(ln, line) in &lines[1..] {
                for tok in line.split_whitespace() {
                    labels.push(parse_int(tok, ln)?);
                }
            }
            if labels.len() != v {
                return Err(Error::Parse {
                    line: first_ln + 1,
                    message: format!("expected {v} labels, got {}", labels.len()),
                });
            }
            return Ok(Configuration { labels });
        }
        // grid form: every line is one row, all rows the same width
        let width = first.split_whitespace().count();
        let mut labels = Vec::new();
        for &(ln, line) in &lines {
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != width {
                return Err(Error::Parse {
                    line: ln + 1,
                    message: format!("ragged row: expected {width} entries, got {}", row.len()),
                });
            }
            for tok in row {
                labels.push(parse_int(tok, ln)?);
            }
        }
        if lines.len() != width {
            return Err(Error::Parse {
                line: first_ln + 1,
                message: format!("grid must be square, got {} x {width}", lines.len()),
            });
        }
        Ok(Configuration { labels })
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.labels.len();
        let n = (1..=v).find(|n| n * n == v);
        match n {
            Some(n) => {
                for i in 0..n {
                    let row: Vec<String> =
                        self.labels[i * n..(i + 1) * n].iter().map(|x| x.to_string()).collect();
                    writeln!(f, "{}", row.join(" "))?;
                }
            }
            None => {
                writeln!(f, "FLAT {v}")?;
                let row: Vec<String> = self.labels.iter().map(|x| x.to_string()).collect();
                writeln!(f, "{}", row.join(" "))?;
            }
        }
        Ok(())
    }
}

impl FiringSequence {
    pub fn new(counts: Vec<BigInt>) -> Self {
        FiringSequence { counts }
    }

    pub fn zero(vertex_count: usize) -> Self {
        FiringSequence {
            counts: vec![BigInt::zero(); vertex_count],
        }
    }

    pub fn from_i64(counts: &[i64]) -> Self {
        FiringSequence {
            counts: counts.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn negated(&self) -> Self {
        FiringSequence {
            counts: self.counts.iter().map(|c| -c).collect(),
        }
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            vertex_count: g.vertex_count(),
        });
    }
    Ok(())
}

/// Fire at v: neighbors gain one chip each; in Laplacian semantics v also
/// loses its degree.
pub fn fire(g: &Graph, c: &Configuration, v: usize, sem: Semantics) -> Result<Configuration> {
    check_vertex(g, v)?;
    if c.vertex_count() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            got: c.vertex_count(),
        });
    }
    let mut out = c.clone();
    if sem == Semantics::Laplacian {
        let new = out.label(v) - BigInt::from(g.degree(v));
        out.set_label(v, new);
    }
    for &u in g.neighbors(v) {
        let new = out.label(u) + BigInt::one();
        out.set_label(u, new);
    }
    Ok(out)
}

/// Pull at v: the inverse of `fire`.
pub fn pull(g: &Graph, c: &Configuration, v: usize, sem: Semantics) -> Result<Configuration> {
    check_vertex(g, v)?;
    if c.vertex_count() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            got: c.vertex_count(),
        });
    }
    let mut out = c.clone();
    if sem == Semantics::Laplacian {
        let new = out.label(v) + BigInt::from(g.degree(v));
        out.set_label(v, new);
    }
    for &u in g.neighbors(v) {
        let new = out.label(u) - BigInt::one();
        out.set_label(u, new);
    }
    Ok(out)
}

/// Evaluate a firing sequence as the exact vector identity c - m*f.
pub fn apply_firing_sequence(
    c: &Configuration,
    f: &FiringSequence,
    m: &IntMatrix,
) -> Result<Configuration> {
    if m.rows() != c.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: c.vertex_count(),
        });
    }
    if m.cols() != f.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            got: f.vertex_count(),
        });
    }
    let mf = m.mul_vec(f.counts());
    Ok(Configuration::new(
        c.labels().iter().zip(&mf).map(|(a, b)| a - b).collect(),
    ))
}

/// Automorphism action: the label at v moves to sigma(v).
pub fn act(sigma: &VertexPermutation, c: &Configuration) -> Result<Configuration> {
    Ok(Configuration::new(permute(sigma, c.labels())?))
}

/// The same action on a firing sequence (used to transport sequences
/// along automorphisms).
pub fn act_on_sequence(sigma: &VertexPermutation, f: &FiringSequence) -> Result<FiringSequence> {
    Ok(FiringSequence::new(permute(sigma, f.counts())?))
}

fn permute(sigma: &VertexPermutation, values: &[BigInt]) -> Result<Vec<BigInt>> {
    if sigma.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: sigma.len(),
            got: values.len(),
        });
    }
    let mut out = vec![BigInt::zero(); values.len()];
    for (v, value) in values.iter().enumerate() {
        out[sigma.apply(v)] = value.clone();
    }
    Ok(out)
}

/// Two configurations represent the same cokernel element iff their
/// difference lies in the column lattice of m.
pub fn is_equivalent(a: &Configuration, b: &Configuration, m: &IntMatrix) -> Result<bool> {
    let diff = a.sub(b)?;
    Ok(smith_normal_form(m, true)
        .solve_in_image(diff.labels())?
        .is_some())
}

/// Exact order of [c] in coker m.
pub fn element_order(c: &Configuration, m: &IntMatrix) -> Result<BigInt> {
    smith_normal_form(m, true).order_in_cokernel(c.labels())
}

/// Same, against a precomputed decomposition.
pub fn element_order_with(c: &Configuration, snf: &SmithDecomposition) -> Result<BigInt> {
    snf.order_in_cokernel(c.labels())
}
