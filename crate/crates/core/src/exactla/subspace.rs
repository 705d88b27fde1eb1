//! Subspaces of Q^n in a canonical basis, so that equality of subspaces is
//! equality of representations.

use num_traits::Zero;

use super::mat::Mat;
use super::rat::Rat;
use crate::error::{Error, Result};

/// A linear subspace of Q^n. The basis matrix has the subspace dimension many
/// columns and is kept in reduced column-echelon form with unit pivots
/// (the transpose of a reduced row-echelon form), which is unique per
/// subspace: `a == b` exactly when the two span the same space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
}

impl Subspace {
    /// The span of the columns of `generators`, canonicalized.
    pub fn span(ambient_dim: usize, generators: &Mat) -> Result<Self> {
        if generators.rows() != ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "generators live in Q^{}, expected Q^{}",
                generators.rows(),
                ambient_dim
            )));
        }
        let (rref, pivots) = generators.transpose().rref();
        let basis = Mat::from_fn(ambient_dim, pivots.len(), |i, j| rref[(j, i)].clone());
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one column per basis vector.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector in wrong ambient space");
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let col = Mat::column(v);
        self.basis.hstack(&col).rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self.basis.hstack(&other.basis).rank() == self.dim())
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Subspace::span(self.ambient_dim, &self.basis.hstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        // Solve a x = b y; the intersection is a applied to the x-parts.
        let stacked = self.basis.hstack(&(-&other.basis));
        let null = kernel(&stacked);
        let x_parts = null.basis().block(0, 0, self.dim(), null.dim());
        Subspace::span(self.ambient_dim, &(&self.basis * &x_parts))
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

/// Kernel {v : m v = 0}, canonical.
pub fn kernel(m: &Mat) -> Subspace {
    let (rref, pivots) = m.rref();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut generators = Mat::zeros(n, free.len());
    for (j, &fc) in free.iter().enumerate() {
        generators[(fc, j)] = Rat::from_integer(1.into());
        for (r, &pc) in pivots.iter().enumerate() {
            generators[(pc, j)] = -rref[(r, fc)].clone();
        }
    }
    Subspace::span(n, &generators).expect("kernel generators have ambient rows")
}

/// Column span of m, canonical.
pub fn image(m: &Mat) -> Subspace {
    Subspace::span(m.rows(), m).expect("image generators have ambient rows")
}

/// Annihilator {xi : xi(u) = 0 for all u in U}, with the dual of Q^n
/// identified with Q^n via the standard basis.
pub fn annihilator(u: &Subspace) -> Subspace {
    kernel(&u.basis().transpose())
}
