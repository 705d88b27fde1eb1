//! Bilinear pairings between coordinate spaces, stored as Gram matrices.

use super::mat::Mat;
use super::rat::Rat;
use super::subspace::{kernel, Subspace};
use crate::error::{Error, Result};

/// A bilinear pairing `B : Q^left_dim x Q^right_dim -> Q`, with
/// `B(x, y) = x^T G y` (left argument indexes rows of the Gram matrix).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bilin {
    gram: Mat,
}

impl Bilin {
    pub fn new(gram: Mat) -> Self {
        Bilin { gram }
    }

    pub fn zero(left_dim: usize, right_dim: usize) -> Self {
        Bilin {
            gram: Mat::zeros(left_dim, right_dim),
        }
    }

    pub fn left_dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn right_dim(&self) -> usize {
        self.gram.cols()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.gram.apply(y);
        x.iter().zip(gy.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram.is_square() && self.gram == self.gram.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.gram.is_square() && self.gram == -&self.gram.transpose()
    }

    /// Symmetric part `(B + B^T) / 2` of a square pairing.
    pub fn symmetric_part(&self) -> Bilin {
        assert!(self.gram.is_square());
        let sum = &self.gram + &self.gram.transpose();
        Bilin::new(sum.scale(&super::rat::ratio(1, 2)))
    }

    pub fn skew_part(&self) -> Bilin {
        assert!(self.gram.is_square());
        let diff = &self.gram - &self.gram.transpose();
        Bilin::new(diff.scale(&super::rat::ratio(1, 2)))
    }

    /// The transposed pairing `B^T(y, x) = B(x, y)`.
    pub fn transpose(&self) -> Bilin {
        Bilin::new(self.gram.transpose())
    }

    /// A pairing between spaces is nondegenerate when it identifies one with
    /// the dual of the other; that forces equal dimensions and an invertible
    /// Gram matrix. Vacuously true for the 0 x 0 pairing.
    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_square() && self.gram.rank() == self.gram.rows()
    }

    /// Pullback along linear maps: `B'(x, y) = B(a x, b y)`.
    pub fn pullback(&self, a: &Mat, b: &Mat) -> Bilin {
        Bilin::new(&(&a.transpose() * &self.gram) * b)
    }
}

/// Orthogonal complement {w : g(w, u) = 0 for all u in U} with respect to a
/// square pairing on the ambient space of `u`.
pub fn perp(u: &Subspace, g: &Bilin) -> Result<Subspace> {
    if g.left_dim() != g.right_dim() || g.left_dim() != u.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "perp: pairing is {}x{}, subspace ambient is {}",
            g.left_dim(),
            g.right_dim(),
            u.ambient_dim()
        )));
    }
    // g(w, u_j) = 0 for each basis column u_j reads (G u_j)^T w = 0.
    Ok(kernel(&(&g.gram * u.basis()).transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat::rat;

    fn hyperbolic2() -> Bilin {
        Bilin::new(Mat::from_int_rows(&[&[0, 1], &[1, 0]]))
    }

    #[test]
    fn perp_isotropic_line_in_hyperbolic_plane() {
        let u = Subspace::span(2, &Mat::from_int_rows(&[&[1], &[0]])).unwrap();
        let p = perp(&u, &hyperbolic2()).unwrap();
        assert_eq!(p, u);
    }

    #[test]
    fn perp_of_zero_is_full() {
        let p = perp(&Subspace::zero(2), &hyperbolic2()).unwrap();
        assert!(p.is_full());
    }

    #[test]
    fn perp_under_identity_form() {
        let u = Subspace::span(2, &Mat::from_int_rows(&[&[1], &[1]])).unwrap();
        let p = perp(&u, &Bilin::new(Mat::identity(2))).unwrap();
        let expected = Subspace::span(2, &Mat::from_int_rows(&[&[1], &[-1]])).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn perp_dimension_mismatch() {
        let u = Subspace::zero(3);
        assert!(perp(&u, &hyperbolic2()).is_err());
    }

    #[test]
    fn apply_and_parts() {
        let b = Bilin::new(Mat::from_int_rows(&[&[0, 1], &[0, 0]]));
        assert_eq!(b.apply(&[rat(1), rat(0)], &[rat(0), rat(1)]), rat(1));
        assert!(b.symmetric_part().is_symmetric());
        assert!(b.skew_part().is_skew());
        let recombined = &b.symmetric_part().gram + b.skew_part().gram();
        assert_eq!(&recombined, b.gram());
    }
}
