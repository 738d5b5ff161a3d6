use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};

const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;

/// `φ(x) = r·Qx + t` with `0 < r < 1` and `Q` orthogonal (row-major).
#[derive(Debug, Clone, PartialEq)]
pub struct Similarity {
    ratio: f64,
    rotation: Vec<f64>,
    translation: Vec<f64>,
}

impl Similarity {
    pub fn new(ratio: f64, rotation: Vec<f64>, translation: Vec<f64>) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(domain(format!("contraction ratio {ratio} outside (0,1)")));
        }
        let d = translation.len();
        if d == 0 {
            return Err(domain("similarity needs a nonzero dimension"));
        }
        check_orthogonal(&rotation, d)?;
        if translation.iter().any(|t| !t.is_finite()) {
            return Err(domain("translation must be finite"));
        }
        Ok(Similarity {
            ratio,
            rotation,
            translation,
        })
    }

    /// `x ↦ r·x + t`.
    pub fn scaling(ratio: f64, translation: Vec<f64>) -> Result<Self> {
        let d = translation.len();
        Self::new(ratio, identity(d), translation)
    }

    /// `x ↦ r·R_θ x + t` in the plane.
    pub fn planar(ratio: f64, angle: f64, translation: [f64; 2]) -> Result<Self> {
        let (s, c) = angle.sin_cos();
        Self::new(ratio, vec![c, -s, s, c], translation.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn rotation(&self) -> &[f64] {
        &self.rotation
    }

    pub fn translation(&self) -> &[f64] {
        &self.translation
    }

    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        apply_affine(self.ratio, &self.rotation, &self.translation, x, out);
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.apply_into(x, &mut out);
        out
    }

    /// The linear part applied to a direction: `r·Qv`.
    pub fn apply_linear(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| self.ratio * dot_row(&self.rotation[i * d..(i + 1) * d], v))
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        let (ratio, rotation, translation) = compose_parts(
            self.ratio,
            &self.rotation,
            &self.translation,
            other.ratio,
            &other.rotation,
            &other.translation,
        );
        Similarity {
            ratio,
            rotation,
            translation,
        }
    }

    /// The unique `x` with `φ(x) = x`.
    pub fn fixed_point(&self) -> Vec<f64> {
        let d = self.dim();
        let mut m = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                m[i * d + j] = (i == j) as u8 as f64 - self.ratio * self.rotation[i * d + j];
            }
        }
        solve(d, m, self.translation.clone())
    }
}

pub(crate) fn identity(d: usize) -> Vec<f64> {
    let mut m = vec![0.0; d * d];
    for i in 0..d {
        m[i * d + i] = 1.0;
    }
    m
}

fn dot_row(row: &[f64], v: &[f64]) -> f64 {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub(crate) fn apply_affine(scale: f64, q: &[f64], t: &[f64], x: &[f64], out: &mut [f64]) {
    let d = t.len();
    for i in 0..d {
        out[i] = scale * dot_row(&q[i * d..(i + 1) * d], x) + t[i];
    }
}

pub(crate) fn compose_parts(
    r1: f64,
    q1: &[f64],
    t1: &[f64],
    r2: f64,
    q2: &[f64],
    t2: &[f64],
) -> (f64, Vec<f64>, Vec<f64>) {
    let d = t1.len();
    let mut q = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            q[i * d + j] = (0..d).map(|k| q1[i * d + k] * q2[k * d + j]).sum();
        }
    }
    let mut t = vec![0.0; d];
    apply_affine(r1, q1, t1, t2, &mut t);
    (r1 * r2, q, t)
}

pub(crate) fn check_orthogonal(q: &[f64], d: usize) -> Result<()> {
    if q.len() != d * d {
        return Err(domain(format!(
            "rotation has {} entries, expected {}",
            q.len(),
            d * d
        )));
    }
    for i in 0..d {
        for j in 0..d {
            let g: f64 = (0..d).map(|k| q[k * d + i] * q[k * d + j]).sum();
            let target = (i == j) as u8 as f64;
            if !((g - target).abs() <= ORTHOGONALITY_TOLERANCE) {
                return Err(domain("rotation matrix is not orthogonal"));
            }
        }
    }
    Ok(())
}

pub(crate) fn transpose(q: &[f64], d: usize) -> Vec<f64> {
    let mut t = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            t[j * d + i] = q[i * d + j];
        }
    }
    t
}

/// Gaussian elimination with partial pivoting on a small dense system.
fn solve(d: usize, mut m: Vec<f64>, mut b: Vec<f64>) -> Vec<f64> {
    for col in 0..d {
        let piv = (col..d)
            .max_by(|&a, &c| m[a * d + col].abs().total_cmp(&m[c * d + col].abs()))
            .unwrap_or(col);
        if piv != col {
            for k in 0..d {
                m.swap(piv * d + k, col * d + k);
            }
            b.swap(piv, col);
        }
        let p = m[col * d + col];
        for row in col + 1..d {
            let factor = m[row * d + col] / p;
            for k in col..d {
                m[row * d + k] -= factor * m[col * d + k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; d];
    for row in (0..d).rev() {
        let s: f64 = (row + 1..d).map(|k| m[row * d + k] * x[k]).sum();
        x[row] = (b[row] - s) / m[row * d + row];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::dist;

    #[test]
    fn fixed_point_and_composition() {
        let a = Similarity::planar(0.5, 0.3, [1.0, -2.0]).unwrap();
        let p = a.fixed_point();
        assert!(dist(&a.apply(&p), &p) < 1e-14);

        let b = Similarity::scaling(1.0 / 3.0, vec![0.2, 0.1]).unwrap();
        let ab = a.compose(&b);
        let x = [0.7, -0.4];
        assert!(dist(&ab.apply(&x), &a.apply(&b.apply(&x))) < 1e-15);
        assert!((ab.ratio() - 0.5 / 3.0).abs() < 1e-17);
    }

    #[test]
    fn rejects_non_similarities() {
        assert!(Similarity::scaling(1.0, vec![0.0]).is_err());
        assert!(Similarity::new(0.5, vec![1.0, 0.1, 0.0, 1.0], vec![0.0, 0.0]).is_err());
    }
}
