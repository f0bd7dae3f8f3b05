//! Real subspaces of `R^{2n}` and their projection distance.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// A real subspace given by an orthonormal basis (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    pub basis: DMatrix<f64>,
}

/// Complex vector as a real vector, interleaved `(Re, Im)`.
pub fn to_real(v: &[Complex64]) -> DVector<f64> {
    DVector::from_iterator(2 * v.len(), v.iter().flat_map(|c| [c.re, c.im]))
}

pub fn to_complex(v: &DVector<f64>) -> Vec<Complex64> {
    v.as_slice().chunks(2).map(|p| Complex64::new(p[0], p[1])).collect()
}

impl Subspace {
    /// Orthonormalizes `vectors` with modified Gram–Schmidt, dropping any
    /// vector whose residual falls below `rank_tol` times the largest norm.
    pub fn span(vectors: &[DVector<f64>], rank_tol: f64, dim: usize) -> Self {
        let scale = vectors.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let mut cols: Vec<DVector<f64>> = Vec::new();
        for v in vectors {
            let mut w = v.clone();
            for _ in 0..2 {
                for q in &cols {
                    let c = q.dot(&w);
                    w.axpy(-c, q, 1.0);
                }
            }
            let nw = w.norm();
            if scale > 0.0 && nw > rank_tol * scale {
                cols.push(w / nw);
            }
        }
        let basis = if cols.is_empty() { DMatrix::zeros(dim, 0) } else { DMatrix::from_columns(&cols) };
        Self { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * v)
    }

    /// Principal angles with `other`, ascending; empty if either is trivial.
    pub fn principal_angles(&self, other: &Subspace) -> Vec<f64> {
        if self.dim() == 0 || other.dim() == 0 {
            return Vec::new();
        }
        let m = self.basis.transpose() * &other.basis;
        let mut s: Vec<f64> = m.singular_values().iter().map(|&x| x.clamp(-1.0, 1.0).acos()).collect();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        s
    }

    /// Projection (chordal) distance `‖P − Q‖_F / √2`; `None` when the
    /// dimensions differ.
    pub fn distance(&self, other: &Subspace) -> Option<f64> {
        if self.dim() != other.dim() || self.ambient() != other.ambient() {
            return None;
        }
        Some((self.projector() - other.projector()).norm() / std::f64::consts::SQRT_2)
    }

    /// Largest `‖proj_self(v)‖` over unit `v` in `other`, i.e. the top
    /// singular value of `selfᵀ·other`, with the maximizing pair
    /// `(u ∈ self, v ∈ other)`.
    pub fn max_alignment(&self, other: &Subspace) -> (f64, DVector<f64>, DVector<f64>) {
        let zero = || DVector::zeros(self.ambient());
        if self.dim() == 0 || other.dim() == 0 {
            return (0.0, zero(), zero());
        }
        let m = self.basis.transpose() * &other.basis;
        let svd = m.svd(true, true);
        let (k, s) = svd
            .singular_values
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        let u = svd.u.as_ref().unwrap().column(k).into_owned();
        let vt = svd.v_t.as_ref().unwrap().row(k).transpose();
        (s.max(0.0), &self.basis * u, &other.basis * vt)
    }
}
