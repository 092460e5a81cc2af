//! Seeded synthetic curve datasets.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::range::Dataset;
use crate::vc_lab::CircleConstruction;

/// What to generate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Synthetic {
    /// `n` walks of `m` vertices in `d` dimensions. The first vertex and
    /// every step are uniform in `[-1, 1]^d`.
    RandomWalk { n: usize, m: usize, d: usize },
    /// `n` copies of `template`, every coordinate shifted by an independent
    /// uniform amount in `[-noise, noise]`.
    PerturbedTemplate { n: usize, template: Vec<Vec<f64>>, noise: f64 },
    /// The ground set of the circle construction with `k` points.
    CirclePoints { k: usize },
}

pub fn generate_synthetic(kind: &Synthetic, seed: u64) -> Result<Dataset> {
    match kind {
        Synthetic::RandomWalk { n, m, d } => random_walk(*n, *m, *d, seed),
        Synthetic::PerturbedTemplate { n, template, noise } => perturbed_template(*n, template, *noise, seed),
        Synthetic::CirclePoints { k } => circle_points(*k),
    }
}

fn positive(what: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(())
}

pub fn random_walk(n: usize, m: usize, d: usize, seed: u64) -> Result<Dataset> {
    positive("n", n)?;
    positive("m", m)?;
    positive("d", d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let curves = (0..n)
        .map(|i| {
            let mut at: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let mut pts = Vec::with_capacity(m);
            pts.push(Point::new(at.clone())?);
            for _ in 1..m {
                for x in &mut at {
                    *x += rng.random_range(-1.0..=1.0);
                }
                pts.push(Point::new(at.clone())?);
            }
            Curve::new(format!("walk-{i}"), pts)
        })
        .collect::<Result<_>>()?;
    Dataset::new(curves)
}

pub fn perturbed_template(n: usize, template: &[Vec<f64>], noise: f64, seed: u64) -> Result<Dataset> {
    positive("n", n)?;
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(Error::InvalidParameter(format!("noise {noise}")));
    }
    let base = Curve::from_coords("template", template)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let curves = (0..n)
        .map(|i| {
            let rows: Vec<Vec<f64>> = base
                .vertices()
                .iter()
                .map(|p| {
                    p.coords()
                        .iter()
                        .map(|&c| if noise > 0.0 { c + rng.random_range(-noise..=noise) } else { c })
                        .collect()
                })
                .collect();
            Curve::from_coords(format!("copy-{i}"), &rows)
        })
        .collect::<Result<_>>()?;
    Dataset::new(curves)
}

pub fn circle_points(k: usize) -> Result<Dataset> {
    Dataset::new(CircleConstruction::new(k)?.ground().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_walk_is_reproducible() {
        let a = random_walk(5, 4, 2, 7).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.curves().iter().all(|c| c.len() == 4 && c.dim() == 2));
        assert_eq!(a, random_walk(5, 4, 2, 7).unwrap());
        assert_ne!(a, random_walk(5, 4, 2, 8).unwrap());
        for c in a.curves() {
            for e in c.edges() {
                assert!(e.direction().iter().all(|x| x.abs() <= 1.0));
            }
        }
        assert!(random_walk(0, 4, 2, 7).is_err());
    }

    #[test]
    fn zero_noise_copies_template() {
        let t = vec![vec![0.0, 1.0], vec![2.0, 3.5]];
        let ds = perturbed_template(3, &t, 0.0, 1).unwrap();
        assert!(ds.curves().iter().all(|c| c.vertices().iter().map(|p| p.coords().to_vec()).eq(t.iter().cloned())));
        let noisy = perturbed_template(3, &t, 0.1, 1).unwrap();
        for c in noisy.curves() {
            for (p, row) in c.vertices().iter().zip(&t) {
                assert!(p.coords().iter().zip(row).all(|(a, b)| (a - b).abs() <= 0.1));
            }
        }
        assert!(perturbed_template(3, &t, -1.0, 1).is_err());
    }

    #[test]
    fn circle_points_match_construction() {
        let ds = circle_points(6).unwrap();
        let c = CircleConstruction::new(6).unwrap();
        assert_eq!(ds.curves(), c.ground());
        let p = ds.curves()[1].first().coords();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }
}
