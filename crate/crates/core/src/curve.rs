use crate::error::{Error, Result};
use crate::geometry::{check_dim, Point, Segment};

/// A polygonal curve: a non-empty ordered sequence of vertices of common
/// dimension. A single vertex is a point; consecutive duplicates produce
/// degenerate edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    id: String,
    vertices: Vec<Point>,
}

impl Curve {
    pub fn new(id: impl Into<String>, vertices: Vec<Point>) -> Result<Self> {
        let first = vertices.first().ok_or(Error::Empty("curve has no vertices"))?;
        let dim = first.dim();
        for v in &vertices[1..] {
            check_dim(dim, v.dim())?;
        }
        Ok(Self { id: id.into(), vertices })
    }

    /// Builds a curve from raw coordinate rows.
    pub fn from_coords(id: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let vertices = rows.iter().map(|r| Point::new(r.clone())).collect::<Result<Vec<_>>>()?;
        Self::new(id, vertices)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn first(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point {
        &self.vertices[self.vertices.len() - 1]
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The `i`-th edge, from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i].clone(), self.vertices[i + 1].clone())
            .expect("vertices share a dimension")
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| {
            Segment::new(w[0].clone(), w[1].clone()).expect("vertices share a dimension")
        })
    }

    pub fn reversed(&self) -> Curve {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Curve { id: self.id.clone(), vertices }
    }

    /// Applies `f` to every vertex.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Curve {
        Curve { id: self.id.clone(), vertices: self.vertices.iter().map(f).collect() }
    }

    /// Largest distance between a vertex of `self` and a vertex of `other`.
    pub fn max_vertex_distance(&self, other: &Curve) -> f64 {
        self.vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| a.dist2(b)))
            .fold(0.0, f64::max)
            .sqrt()
    }

    /// Inserts evenly spaced points on every edge so that consecutive
    /// vertices are at most `spacing` apart. Original vertices are kept.
    pub fn resample(&self, spacing: f64) -> Curve {
        assert!(spacing > 0.0, "spacing must be positive");
        let mut out = vec![self.vertices[0].clone()];
        for e in self.edges() {
            let n = (e.length2().sqrt() / spacing).ceil().max(1.0) as usize;
            for i in 1..n {
                out.push(e.at(i as f64 / n as f64));
            }
            out.push(e.end().clone());
        }
        Curve { id: self.id.clone(), vertices: out }
    }
}
