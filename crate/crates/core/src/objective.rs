//! Exact objective and gradient evaluation, computed without materializing `D`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

/// Total novelty score of a set: the sum of `d(i, j)` over all ordered pairs
/// of members, so each unordered pair counts twice. Duplicate indices are
/// treated as a single member.
pub fn novelty_score(features: &FeatureMatrix, support: &[usize]) -> Result<f64> {
    for &i in support {
        features.check_index(i)?;
    }
    let mut members = support.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut total = 0.0;
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a + 1..] {
            total += features.distance(i, j);
        }
    }
    Ok(2.0 * total)
}

/// `w^T D w`.
///
/// Zero entries of `w` are skipped, so the cost is `O(P^2 M)` for a vector
/// with `P` non-zeros and the extra space is `O(P)`.
pub fn quadratic_form(features: &FeatureMatrix, w: &[f64]) -> Result<f64> {
    check_len(features, w)?;
    let support: Vec<usize> = (0..w.len()).filter(|&i| w[i] != 0.0).collect();
    Ok(quadratic_form_on(features, w, &support))
}

/// `w^T D w` restricted to the listed indices.
pub(crate) fn quadratic_form_on(features: &FeatureMatrix, w: &[f64], support: &[usize]) -> f64 {
    let mut total = 0.0;
    for (a, &i) in support.iter().enumerate() {
        let mut row = 0.0;
        for &j in &support[a + 1..] {
            row += features.distance(i, j) * w[j];
        }
        total += w[i] * row;
    }
    2.0 * total
}

/// Gradient of `w^T D w`, i.e. `2 D w`, one row at a time.
pub fn full_gradient(features: &FeatureMatrix, w: &[f64]) -> Result<Vec<f64>> {
    check_len(features, w)?;
    let mut g = apply_distance(features, w);
    for v in &mut g {
        *v *= 2.0;
    }
    Ok(g)
}

/// `D w` without storing `D`. Zero entries of `w` are skipped.
pub(crate) fn apply_distance(features: &FeatureMatrix, w: &[f64]) -> Vec<f64> {
    let support: Vec<usize> = (0..w.len()).filter(|&i| w[i] != 0.0).collect();
    (0..features.n_items())
        .map(|i| support.iter().map(|&j| features.distance(i, j) * w[j]).sum())
        .collect()
}

fn check_len(features: &FeatureMatrix, w: &[f64]) -> Result<()> {
    if w.len() == features.n_items() {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "weight vector has length {}, expected {}",
            w.len(),
            features.n_items()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn line() -> FeatureMatrix {
        FeatureMatrix::from_rows(&[[0.0], [1.0], [2.0]]).unwrap()
    }

    #[test]
    fn novelty_score_examples() {
        let f = line();
        assert_eq!(novelty_score(&f, &[1]).unwrap(), 0.0);
        assert_eq!(novelty_score(&f, &[0, 1, 2]).unwrap(), 8.0);
        assert_eq!(novelty_score(&f, &[2, 0, 1, 2]).unwrap(), 8.0);
        let pair = FeatureMatrix::from_rows(&[[0.0], [5.0]]).unwrap();
        assert_eq!(novelty_score(&pair, &[0, 1]).unwrap(), 10.0);
        assert!(novelty_score(&f, &[3]).is_err());
    }

    #[test]
    fn quadratic_form_examples() {
        let f = line();
        assert_eq!(quadratic_form(&f, &[1.0, 1.0, 1.0]).unwrap(), 8.0);
        assert_eq!(quadratic_form(&f, &[1.0, 0.0, 1.0]).unwrap(), 4.0);
        // s_i = 1/sqrt(3): (1/3) * 8
        let u = 1.0 / libm::sqrt(3.0);
        assert_relative_eq!(quadratic_form(&f, &[u, u, u]).unwrap(), 8.0 / 3.0, max_relative = 1e-12);

        let dup = FeatureMatrix::from_rows(&[[1.0, 2.0]; 4]).unwrap();
        assert_eq!(quadratic_form(&dup, &[0.3, 0.1, 0.9, 0.2]).unwrap(), 0.0);
        assert!(quadratic_form(&f, &[1.0]).is_err());
    }

    #[test]
    fn gradient_examples() {
        let f = line();
        assert_eq!(full_gradient(&f, &[1.0, 0.0, 0.0]).unwrap(), vec![0.0, 2.0, 4.0]);
        let dup = FeatureMatrix::from_rows(&[[1.0, 2.0]; 3]).unwrap();
        assert_eq!(full_gradient(&dup, &[0.5, 0.5, 0.5]).unwrap(), vec![0.0; 3]);
    }
}
