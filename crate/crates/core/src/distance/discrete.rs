use crate::curve::Curve;
use crate::error::{Error, Result};

/// A coupling of two vertex sequences: index pairs starting at `(0, 0)`,
/// ending at `(m1 - 1, m2 - 1)`, each step advancing each index by 0 or 1
/// and at least one of them by 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traversal(Vec<(usize, usize)>);

impl Traversal {
    pub fn new(pairs: Vec<(usize, usize)>, m1: usize, m2: usize) -> Result<Self> {
        let invalid = |msg: &str| Err(Error::InvalidParameter(format!("traversal: {msg}")));
        if m1 == 0 || m2 == 0 {
            return invalid("empty sequence");
        }
        if pairs.first() != Some(&(0, 0)) {
            return invalid("must start at (0, 0)");
        }
        if pairs.last() != Some(&(m1 - 1, m2 - 1)) {
            return invalid("must end at the last pair");
        }
        for w in pairs.windows(2) {
            let (di, dj) = (w[1].0.wrapping_sub(w[0].0), w[1].1.wrapping_sub(w[0].1));
            if di > 1 || dj > 1 || di + dj == 0 {
                return invalid("invalid step");
            }
        }
        Ok(Self(pairs))
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Largest vertex distance along the traversal.
    pub fn cost(&self, a: &Curve, b: &Curve) -> f64 {
        self.0
            .iter()
            .map(|&(i, j)| a.vertices()[i].dist2(&b.vertices()[j]))
            .fold(0.0, f64::max)
            .sqrt()
    }
}

fn dist2_matrix(a: &Curve, b: &Curve) -> Vec<Vec<f64>> {
    a.vertices().iter().map(|p| b.vertices().iter().map(|q| p.dist2(q)).collect()).collect()
}

/// Squared discrete Fréchet distance by the O(m1·m2) dynamic program.
pub(crate) fn discrete_frechet2(a: &Curve, b: &Curve) -> f64 {
    let (n, m) = (a.len(), b.len());
    let mut prev = vec![0.0f64; m];
    let mut cur = vec![0.0f64; m];
    for i in 0..n {
        for j in 0..m {
            let d = a.vertices()[i].dist2(&b.vertices()[j]);
            let reach = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]),
            };
            cur[j] = d.max(reach);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}

/// Discrete Fréchet distance: minimum over traversals of the largest
/// coupled vertex distance.
pub fn discrete_frechet(a: &Curve, b: &Curve) -> f64 {
    discrete_frechet2(a, b).sqrt()
}

/// Discrete Fréchet distance together with an optimal traversal.
pub fn discrete_frechet_traversal(a: &Curve, b: &Curve) -> (f64, Traversal) {
    let (n, m) = (a.len(), b.len());
    let d = dist2_matrix(a, b);
    let mut ca = vec![vec![0.0f64; m]; n];
    for i in 0..n {
        for j in 0..m {
            let reach = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => ca[0][j - 1],
                (_, 0) => ca[i - 1][0],
                _ => ca[i - 1][j].min(ca[i - 1][j - 1]).min(ca[i][j - 1]),
            };
            ca[i][j] = d[i][j].max(reach);
        }
    }
    let mut path = vec![(n - 1, m - 1)];
    let (mut i, mut j) = (n - 1, m - 1);
    while (i, j) != (0, 0) {
        (i, j) = match (i, j) {
            (0, _) => (0, j - 1),
            (_, 0) => (i - 1, 0),
            _ => [(i - 1, j - 1), (i - 1, j), (i, j - 1)]
                .into_iter()
                .min_by(|x, y| ca[x.0][x.1].total_cmp(&ca[y.0][y.1]))
                .expect("three candidates"),
        };
        path.push((i, j));
    }
    path.reverse();
    let t = Traversal::new(path, n, m).expect("backtracked path is a traversal");
    (ca[n - 1][m - 1].sqrt(), t)
}

/// Squared directed Hausdorff distance between the vertex sets.
pub(crate) fn directed_discrete_hausdorff2(from: &Curve, to: &Curve) -> f64 {
    from.vertices()
        .iter()
        .map(|p| to.vertices().iter().map(|q| p.dist2(q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Directed Hausdorff distance from the vertex set of `from` to that of `to`.
pub fn directed_discrete_hausdorff(from: &Curve, to: &Curve) -> f64 {
    directed_discrete_hausdorff2(from, to).sqrt()
}

pub(crate) fn discrete_hausdorff2(a: &Curve, b: &Curve) -> f64 {
    directed_discrete_hausdorff2(a, b).max(directed_discrete_hausdorff2(b, a))
}

/// Symmetric Hausdorff distance between the two vertex sets.
pub fn discrete_hausdorff(a: &Curve, b: &Curve) -> f64 {
    discrete_hausdorff2(a, b).sqrt()
}
