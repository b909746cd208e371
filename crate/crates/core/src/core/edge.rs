use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A set of vertices stored sorted ascending without duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Edge(Vec<Vertex>);

impl Edge {
    /// Sorts `vertices`; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Edge> {
        if vertices.is_empty() {
            return Err(Error::InvalidEdge("empty vertex set".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Edge(vertices))
    }

    pub fn from_iter_checked(vertices: impl IntoIterator<Item = Vertex>) -> Result<Edge> {
        Edge::new(vertices.into_iter().collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersection(&self, other: &Edge) -> Vec<Vertex> {
        self.0.iter().copied().filter(|&v| other.contains(v)).collect()
    }

    pub fn overlap(&self, other: &Edge) -> usize {
        self.0.iter().filter(|&&v| other.contains(v)).count()
    }

    pub fn is_disjoint(&self, other: &Edge) -> bool {
        self.overlap(other) == 0
    }

    pub fn max_vertex(&self) -> Vertex {
        *self.0.last().expect("edges are non-empty")
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl TryFrom<Vec<Vertex>> for Edge {
    type Error = Error;
    fn try_from(v: Vec<Vertex>) -> Result<Edge> {
        Edge::new(v)
    }
}

impl From<Edge> for Vec<Vertex> {
    fn from(e: Edge) -> Vec<Vertex> {
        e.0
    }
}

/// Edge color. Red is bit 1 in every bitmap and in the CNF encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub fn complement(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn from_bit(bit: bool) -> Color {
        if bit {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn bit(self) -> bool {
        self == Color::Red
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}
