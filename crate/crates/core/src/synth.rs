//! Seeded synthetic datasets with ground-truth anomaly labels.
//!
//! All randomness comes from [`SplitMix64`](crate::rng::SplitMix64) seeded
//! with the given seed, consumed in a fixed documented order, so a dataset
//! is a pure function of its parameters.
//!
//! Anomalies are made the same way in every generator: pick `n_anom`
//! distinct items (Floyd sampling), then move each one by
//! `noise_scale * scale` along a uniformly random direction, where `scale`
//! is the natural size of the clean data (1 for the unit square, `sqrt(dim)`
//! for unit-covariance Gaussians).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::rng::SplitMix64;
use crate::solver::{binomial, brute_force_densest, DEFAULT_ENUMERATION_CAP};

/// Displacement used for the 2-D uniform benchmark, in unit-square sides.
pub const UNIFORM_NOISE_SCALE: f64 = 2.0;
/// Displacement used for the Gaussian mixture, in units of `sqrt(dim)`.
pub const MIXTURE_NOISE_SCALE: f64 = 2.0;
/// Distance between the two mixture means, in standard deviations.
pub const MIXTURE_SEPARATION: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Normal,
    Anomaly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub features: FeatureMatrix,
    pub labels: Vec<Label>,
}

impl LabeledDataset {
    pub fn n_anomalies(&self) -> usize {
        self.labels.iter().filter(|&&l| l == Label::Anomaly).count()
    }

    /// Indices labelled [`Label::Anomaly`], ascending.
    pub fn anomaly_indices(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == Label::Anomaly).collect()
    }
}

/// Parameters of [`gen_gaussian_mixture_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureParams {
    pub n: usize,
    pub dim: usize,
    pub n_anom: usize,
    pub separation: f64,
    pub noise_scale: f64,
    pub seed: u64,
}

impl MixtureParams {
    pub fn new(n: usize, dim: usize, n_anom: usize, seed: u64) -> Self {
        Self {
            n,
            dim,
            n_anom,
            separation: MIXTURE_SEPARATION,
            noise_scale: MIXTURE_NOISE_SCALE,
            seed,
        }
    }
}

fn check_counts(n: usize, n_anom: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("need at least 2 points, got {n}")));
    }
    if n_anom >= n {
        return Err(Error::InvalidConfig(format!(
            "anomaly count {n_anom} must be below point count {n}"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")))
    }
}

fn random_direction(rng: &mut SplitMix64, out: &mut [f64]) {
    loop {
        for v in out.iter_mut() {
            *v = rng.normal();
        }
        let norm = libm::sqrt(out.iter().map(|v| v * v).sum());
        if norm > 1e-12 {
            out.iter_mut().for_each(|v| *v /= norm);
            return;
        }
    }
}

/// Picks anomalies, displaces them and labels the result.
fn perturb(data: &mut [f64], n: usize, dim: usize, n_anom: usize, magnitude: f64, rng: &mut SplitMix64) -> Vec<Label> {
    let (mut picks, mut seen) = (Vec::new(), Vec::new());
    rng.sample_distinct(n, n_anom, &mut picks, &mut seen);
    let mut labels = vec![Label::Normal; n];
    let mut dir = vec![0.0; dim];
    for &i in &picks {
        labels[i] = Label::Anomaly;
        random_direction(rng, &mut dir);
        for (x, d) in data[i * dim..(i + 1) * dim].iter_mut().zip(&dir) {
            *x += magnitude * d;
        }
    }
    labels
}

/// `n` points uniform on `[0, 1]^2`, `n_anom` of them pushed
/// `noise_scale` away in a random direction.
///
/// Draw order: `2n` uniforms for the coordinates, then the anomaly picks,
/// then one direction per anomaly.
pub fn gen_uniform_2d(n: usize, n_anom: usize, noise_scale: f64, seed: u64) -> Result<LabeledDataset> {
    check_counts(n, n_anom)?;
    check_positive("noise_scale", noise_scale)?;
    let mut rng = SplitMix64::new(seed);
    let mut data: Vec<f64> = (0..2 * n).map(|_| rng.next_f64()).collect();
    let labels = perturb(&mut data, n, 2, n_anom, noise_scale, &mut rng);
    Ok(LabeledDataset { features: FeatureMatrix::new(n, 2, data)?, labels })
}

/// Equal-weight mixture of two unit-covariance Gaussians in `dim`
/// dimensions, means at `(+-MIXTURE_SEPARATION / 2, 0, ..., 0)`.
pub fn gen_gaussian_mixture(n: usize, dim: usize, n_anom: usize, seed: u64) -> Result<LabeledDataset> {
    gen_gaussian_mixture_with(&MixtureParams::new(n, dim, n_anom, seed))
}

/// Draw order: per point, one uniform for the component then `dim` normals;
/// then the anomaly picks and directions as in [`gen_uniform_2d`].
pub fn gen_gaussian_mixture_with(p: &MixtureParams) -> Result<LabeledDataset> {
    check_counts(p.n, p.n_anom)?;
    if p.dim < 1 {
        return Err(Error::InvalidConfig("dim must be at least 1".into()));
    }
    check_positive("separation", p.separation)?;
    check_positive("noise_scale", p.noise_scale)?;
    let mut rng = SplitMix64::new(p.seed);
    let mut data = Vec::with_capacity(p.n * p.dim);
    for _ in 0..p.n {
        let offset = if rng.next_f64() < 0.5 { -0.5 } else { 0.5 } * p.separation;
        for d in 0..p.dim {
            let centre = if d == 0 { offset } else { 0.0 };
            data.push(centre + rng.normal());
        }
    }
    let magnitude = p.noise_scale * libm::sqrt(p.dim as f64);
    let labels = perturb(&mut data, p.n, p.dim, p.n_anom, magnitude, &mut rng);
    Ok(LabeledDataset { features: FeatureMatrix::new(p.n, p.dim, data)?, labels })
}

/// `n - k` inliers uniform in the unit disk and `k` outliers evenly spaced
/// (random phase) on a circle wide enough that every outlier is at least
/// `separation` from every other point. Outliers sit at random indices.
///
/// When `separation` is at least 10 inlier diameters and the enumeration is
/// within [`DEFAULT_ENUMERATION_CAP`], the brute-force optimum is checked to
/// be exactly the outlier set. With `k = 1` every singleton scores zero, so
/// the check is instead that the outlier has the largest distance row sum.
pub fn gen_planted(n: usize, k: usize, separation: f64, seed: u64) -> Result<LabeledDataset> {
    check_counts(n, k)?;
    if k < 1 {
        return Err(Error::InvalidConfig("planted outlier count must be at least 1".into()));
    }
    check_positive("separation", separation)?;
    let mut rng = SplitMix64::new(seed);
    let (mut outliers, mut seen) = (Vec::new(), Vec::new());
    rng.sample_distinct(n, k, &mut outliers, &mut seen);

    let chord_radius = if k >= 2 {
        separation / (2.0 * libm::sin(core::f64::consts::PI / k as f64))
    } else {
        0.0
    };
    let radius = (separation + 1.0).max(chord_radius);
    let phase = rng.next_f64() * core::f64::consts::TAU;

    let mut labels = vec![Label::Normal; n];
    let mut data = vec![0.0; 2 * n];
    for (slot, &i) in outliers.iter().enumerate() {
        labels[i] = Label::Anomaly;
        let angle = phase + core::f64::consts::TAU * slot as f64 / k as f64;
        data[2 * i] = radius * libm::cos(angle);
        data[2 * i + 1] = radius * libm::sin(angle);
    }
    for i in 0..n {
        if labels[i] == Label::Anomaly {
            continue;
        }
        let (x, y) = loop {
            let x = 2.0 * rng.next_f64() - 1.0;
            let y = 2.0 * rng.next_f64() - 1.0;
            if x * x + y * y <= 1.0 {
                break (x, y);
            }
        };
        data[2 * i] = x;
        data[2 * i + 1] = y;
    }

    let dataset = LabeledDataset { features: FeatureMatrix::new(n, 2, data)?, labels };
    if separation >= 20.0 && binomial(n, k) <= DEFAULT_ENUMERATION_CAP {
        let best = if k == 1 {
            vec![farthest_item(&dataset.features)]
        } else {
            brute_force_densest(&dataset.features, k)?.0
        };
        if best != dataset.anomaly_indices() {
            return Err(Error::InvalidConfig(format!(
                "planted outliers are not the densest {k}-subset at separation {separation}"
            )));
        }
    }
    Ok(dataset)
}

/// Item with the largest distance row sum, lowest index on ties.
fn farthest_item(features: &FeatureMatrix) -> usize {
    let n = features.n_items();
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..n {
        let sum: f64 = (0..n).map(|j| features.distance(i, j)).sum();
        if sum > best.1 {
            best = (i, sum);
        }
    }
    best.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_anomalies() {
        let d = gen_uniform_2d(50, 0, UNIFORM_NOISE_SCALE, 1).unwrap();
        assert!(d.labels.iter().all(|&l| l == Label::Normal));
        assert!(d.features.as_slice().iter().all(|v| (0.0..1.0).contains(v)));
        let g = gen_gaussian_mixture(200, 2, 0, 1).unwrap();
        assert_eq!(g.n_anomalies(), 0);
    }

    #[test]
    fn seeded_determinism() {
        assert_eq!(gen_uniform_2d(100, 9, 2.0, 4).unwrap(), gen_uniform_2d(100, 9, 2.0, 4).unwrap());
        assert_ne!(gen_uniform_2d(100, 9, 2.0, 4).unwrap(), gen_uniform_2d(100, 9, 2.0, 5).unwrap());
        assert_eq!(gen_gaussian_mixture(60, 5, 6, 2).unwrap(), gen_gaussian_mixture(60, 5, 6, 2).unwrap());
        assert_eq!(gen_planted(12, 3, 100.0, 3).unwrap(), gen_planted(12, 3, 100.0, 3).unwrap());
    }

    #[test]
    fn label_counts() {
        let d = gen_uniform_2d(100, 9, 2.0, 0).unwrap();
        assert_eq!(d.n_anomalies(), 9);
        let g = gen_gaussian_mixture(300, 10, 30, 0).unwrap();
        assert_eq!(g.n_anomalies(), 30);
        assert_eq!(g.features.n_dims(), 10);
    }

    #[test]
    fn mixture_has_two_clusters() {
        let g = gen_gaussian_mixture(2000, 2, 0, 7).unwrap();
        let firsts: Vec<f64> = (0..2000).map(|i| g.features.row(i)[0]).collect();
        let left = firsts.iter().filter(|&&x| x < 0.0).count();
        assert!((800..1200).contains(&left), "{left}");
        let mean_left = firsts.iter().filter(|&&x| x < 0.0).sum::<f64>() / left as f64;
        assert!(mean_left < -1.5, "{mean_left}");
    }

    #[test]
    fn planted_geometry() {
        for seed in 0..10 {
            let d = gen_planted(12, 3, 100.0, seed).unwrap();
            let out = d.anomaly_indices();
            assert_eq!(out.len(), 3);
            for &o in &out {
                for j in 0..12 {
                    if j != o {
                        assert!(d.features.distance(o, j) >= 100.0 - 1e-9);
                    }
                }
            }
        }
        let single = gen_planted(8, 1, 50.0, 2).unwrap();
        assert_eq!(vec![farthest_item(&single.features)], single.anomaly_indices());
    }

    #[test]
    fn rejects_bad_counts() {
        assert!(gen_uniform_2d(10, 10, 2.0, 0).unwrap_err().is_usage());
        assert!(gen_gaussian_mixture(10, 0, 1, 0).is_err());
        assert!(gen_planted(5, 0, 10.0, 0).is_err());
        assert!(gen_uniform_2d(10, 1, -1.0, 0).is_err());
    }
}
