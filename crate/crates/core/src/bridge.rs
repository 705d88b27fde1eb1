//! The classifying correspondences: tuples classify constant symplectic
//! 2-groupoids, dropping the skew part classifies equivalence classes, and
//! equivalence classes match constant Courant algebroids. Also the constant
//! model of the cotangent-double integration as the standard example.

use crate::courant::{new_algebroid, ConstantCourantAlgebroid};
use crate::doldkan::{kan_report, realize, verify_simplicial, ChainComplex3, LinearTwoGroupoid};
use crate::error::{Error, Result};
use crate::exactla::{ratio, Bilin, Mat};
use crate::forms::{
    build_from_c, delta_omega, is_simplicially_nondegenerate, reduce_to_c, ConstantTwoForm,
};
use crate::report::Report;

/// The minimal classification datum of a constant symplectic 2-groupoid:
/// `(W1, W0, <.,.>, boundary, r)` with the pairing symmetric nondegenerate,
/// the image of the adjoint boundary isotropic, and `r` skew on W1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CsgTuple {
    dim_w1: usize,
    dim_w0: usize,
    pairing: Bilin,
    boundary: Mat,
    r: Bilin,
}

impl CsgTuple {
    pub fn new(pairing: Bilin, boundary: Mat, r: Bilin) -> Result<Self> {
        let n1 = pairing.left_dim();
        if !pairing.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let g_inv = pairing.gram().inverse().map_err(|_| Error::DegeneratePairing)?;
        if boundary.cols() != n1 {
            return Err(Error::DimensionMismatch(format!(
                "boundary has {} columns, expected {}",
                boundary.cols(),
                n1
            )));
        }
        if r.left_dim() != n1 || r.right_dim() != n1 || !r.is_skew() {
            return Err(Error::NotSkew(3, 2));
        }
        if !(&(&boundary * &g_inv) * &boundary.transpose()).is_zero() {
            return Err(Error::IsotropyViolation);
        }
        Ok(CsgTuple {
            dim_w1: n1,
            dim_w0: boundary.rows(),
            pairing,
            boundary,
            r,
        })
    }

    pub fn dim_w1(&self) -> usize {
        self.dim_w1
    }

    pub fn dim_w0(&self) -> usize {
        self.dim_w0
    }

    pub fn pairing(&self) -> &Bilin {
        &self.pairing
    }

    pub fn boundary(&self) -> &Mat {
        &self.boundary
    }

    pub fn r(&self) -> &Bilin {
        &self.r
    }

    pub fn is_reduced(&self) -> bool {
        self.r.gram().is_zero()
    }
}

/// A linear 2-groupoid with a constant closed multiplicative normalized
/// simplicially nondegenerate 2-form on its 2-simplices, bundled with its
/// chain complex. Constructed by [`ConstantSymplectic2Groupoid::new`], which
/// checks all of those conditions exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstantSymplectic2Groupoid {
    groupoid: LinearTwoGroupoid,
    complex: ChainComplex3,
    form: ConstantTwoForm,
}

impl ConstantSymplectic2Groupoid {
    pub fn new(complex: ChainComplex3, form: ConstantTwoForm) -> Result<Self> {
        let dims = (complex.dim_w2(), complex.dim_w1(), complex.dim_w0());
        if form.dims() != dims {
            return Err(Error::DimensionMismatch(format!(
                "form dimensions {:?} do not match complex dimensions {dims:?}",
                form.dims()
            )));
        }
        let groupoid = realize(&complex);
        if !form.is_normalized() {
            return Err(Error::NotNormalized("constant symplectic 2-groupoid".into()));
        }
        if !delta_omega(&form, &groupoid)?.gram().is_zero() {
            return Err(Error::NotMultiplicative("delta omega != 0".into()));
        }
        if !is_simplicially_nondegenerate(&form)? {
            return Err(Error::DegeneratePairing);
        }
        Ok(ConstantSymplectic2Groupoid {
            groupoid,
            complex,
            form,
        })
    }

    pub fn groupoid(&self) -> &LinearTwoGroupoid {
        &self.groupoid
    }

    pub fn complex(&self) -> &ChainComplex3 {
        &self.complex
    }

    pub fn form(&self) -> &ConstantTwoForm {
        &self.form
    }

    /// The symmetric representatives are the ones whose `C32` block is
    /// symmetric; they are the groupoids the Dirac-side constructions use.
    pub fn is_symmetric(&self) -> bool {
        self.form.c(3, 2).transpose() == *self.form.c(3, 2)
    }

    /// Re-checks every defining condition and reports each one. `closed` is
    /// a recorded no-op: constant forms on a vector space are closed.
    pub fn verification_report(&self) -> Report {
        let mut report = Report::new();
        report.absorb("groupoid.simplicial", verify_simplicial(&self.groupoid));
        report.absorb("groupoid.kan", kan_report(&self.groupoid));
        report.record("form.closed", self.form.is_closed(), "unreachable");
        report.record(
            "form.normalized",
            self.form.is_normalized(),
            "degeneracy pullback does not vanish",
        );
        let multiplicative = delta_omega(&self.form, &self.groupoid)
            .map(|d| d.gram().is_zero())
            .unwrap_or(false);
        report.record("form.multiplicative", multiplicative, "delta omega != 0");
        let nondeg = is_simplicially_nondegenerate(&self.form).unwrap_or(false);
        report.record(
            "form.simplicially_nondegenerate",
            nondeg,
            "C41 or sym C32 is degenerate",
        );
        report
    }
}

/// Realizes a tuple as a constant symplectic 2-groupoid: the chain complex is
/// `W0* -> W1 -> W0` with `d2 = g^{-1} d^T`, and the form is built from
/// `C41 = id` (the canonical pairing of W0 with W0*) and `C32 = 1/2 g + r`.
pub fn tuple_to_csg(t: &CsgTuple) -> Result<ConstantSymplectic2Groupoid> {
    let g_inv = t.pairing.gram().inverse()?;
    let d2 = &g_inv * &t.boundary.transpose();
    let complex = ChainComplex3::new(t.dim_w0, t.dim_w1, t.dim_w0, d2, t.boundary.clone())?;
    let c41 = Bilin::new(Mat::identity(t.dim_w0));
    let c32 = Bilin::new(&t.pairing.gram().scale(&ratio(1, 2)) + t.r.gram());
    let form = build_from_c(&c41, &c32, &complex)?;
    ConstantSymplectic2Groupoid::new(complex, form)
}

/// Reads the tuple back off a constant symplectic 2-groupoid:
/// `g = C32 + C32^T`, `r` the skew part of `C32`, and the boundary `d1`.
/// For a groupoid whose `C41` is not the canonical pairing this is the tuple
/// of its normal form, reached by the change of basis `w2 -> C41^{-1} w2`
/// on W2 (which `d2` absorbs); the tuple itself carries no W2 data.
pub fn csg_to_tuple(s: &ConstantSymplectic2Groupoid) -> Result<CsgTuple> {
    let (_c41, c32) = reduce_to_c(s.form(), s.complex())?;
    let pairing = Bilin::new(c32.gram() + &c32.gram().transpose());
    let r = c32.skew_part();
    CsgTuple::new(pairing, s.complex().d1().clone(), r)
}

/// The reduced representative of the equivalence class: `r = 0`.
pub fn reduce_tuple(t: &CsgTuple) -> CsgTuple {
    CsgTuple {
        dim_w1: t.dim_w1,
        dim_w0: t.dim_w0,
        pairing: t.pairing.clone(),
        boundary: t.boundary.clone(),
        r: Bilin::zero(t.dim_w1, t.dim_w1),
    }
}

/// Forgetting `r` lands on the constant Courant algebroid with the same
/// pairing and boundary.
pub fn tuple_to_courant(t: &CsgTuple) -> Result<ConstantCourantAlgebroid> {
    new_algebroid(t.pairing.clone(), t.boundary.clone())
}

/// The reduced tuple of a constant Courant algebroid.
pub fn courant_to_tuple(e: &ConstantCourantAlgebroid) -> Result<CsgTuple> {
    CsgTuple::new(
        e.pairing().clone(),
        e.boundary().clone(),
        Bilin::zero(e.dim_w1(), e.dim_w1()),
    )
}

/// The tuple of the constant model of the `TM + T*M` integration at a point:
/// `W0 = Q^n`, `W1 = Q^n + (Q^n)*` with the hyperbolic pairing,
/// `d(v, xi) = v`, `r = 0`.
pub fn standard_tuple(n: usize) -> CsgTuple {
    let zero_n = Mat::zeros(n, n);
    let id_n = Mat::identity(n);
    let pairing = Bilin::new(Mat::from_blocks(&[
        vec![&zero_n, &id_n],
        vec![&id_n, &zero_n],
    ]));
    let boundary = Mat::from_blocks(&[vec![&id_n, &zero_n]]);
    CsgTuple::new(pairing, boundary, Bilin::zero(2 * n, 2 * n))
        .expect("standard tuple is always valid")
}

/// The standard example as a constant symplectic 2-groupoid. Its `B` pairing
/// is the hyperbolic block matrix and its `A` pairing the identity.
pub fn standard_example(n: usize) -> ConstantSymplectic2Groupoid {
    tuple_to_csg(&standard_tuple(n)).expect("standard tuple realizes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::forms::{are_equivalent, pairings};

    #[test]
    fn standard_tuple_realizes_with_expected_blocks() {
        let s = standard_example(1);
        assert_eq!(s.groupoid().dim_v(2), 6);
        assert_eq!(s.form().c(4, 1), &Mat::identity(1));
        let expected_c32 = Mat::from_fn(2, 2, |i, j| {
            if i != j {
                ratio(1, 2)
            } else {
                rat(0)
            }
        });
        assert_eq!(s.form().c(3, 2), &expected_c32);
        assert!(s.is_symmetric());
    }

    #[test]
    fn standard_example_pairings() {
        for n in 0..=3 {
            let s = standard_example(n);
            let p = pairings(s.form()).unwrap();
            assert_eq!(p.a.gram(), &Mat::identity(n));
            let zero_n = Mat::zeros(n, n);
            let id_n = Mat::identity(n);
            let hyperbolic = Mat::from_blocks(&[vec![&zero_n, &id_n], vec![&id_n, &zero_n]]);
            assert_eq!(p.b.gram(), &hyperbolic);
            assert!(p.nondegenerate_a && p.nondegenerate_b);
            assert!(s.verification_report().all_passed());
        }
    }

    #[test]
    fn tuple_roundtrip_exact() {
        let t = standard_tuple(2);
        let s = tuple_to_csg(&t).unwrap();
        assert_eq!(csg_to_tuple(&s).unwrap(), t);
    }

    #[test]
    fn tuple_with_r_changes_only_skew_part() {
        let mut r = Mat::zeros(2, 2);
        r[(0, 1)] = rat(1);
        r[(1, 0)] = rat(-1);
        let t0 = standard_tuple(1);
        let t1 = CsgTuple::new(t0.pairing().clone(), t0.boundary().clone(), Bilin::new(r)).unwrap();
        let s0 = tuple_to_csg(&t0).unwrap();
        let s1 = tuple_to_csg(&t1).unwrap();
        assert_eq!(s0.complex(), s1.complex());
        assert_eq!(s0.form().c(4, 1), s1.form().c(4, 1));
        let (_, c32a) = reduce_to_c(s0.form(), s0.complex()).unwrap();
        let (_, c32b) = reduce_to_c(s1.form(), s1.complex()).unwrap();
        assert_eq!(c32a.symmetric_part(), c32b.symmetric_part());
        assert_ne!(c32a.skew_part(), c32b.skew_part());

        // Equivalent with a verified witness; reductions coincide.
        let w = are_equivalent(s0.form(), s1.form(), s0.complex()).unwrap();
        assert!(w.is_some());
        assert_eq!(reduce_tuple(&t0), reduce_tuple(&t1));
    }

    #[test]
    fn degenerate_w0_tuple_is_legal() {
        let t = CsgTuple::new(
            Bilin::new(Mat::from_int_rows(&[&[0, 1], &[1, 0]])),
            Mat::zeros(0, 2),
            Bilin::zero(2, 2),
        )
        .unwrap();
        let s = tuple_to_csg(&t).unwrap();
        assert_eq!(s.groupoid().dim_v(2), 4);
        assert!(s.verification_report().all_passed());
        assert_eq!(csg_to_tuple(&s).unwrap(), t);
    }

    #[test]
    fn invalid_tuples_rejected() {
        // Degenerate pairing.
        assert_eq!(
            CsgTuple::new(Bilin::zero(2, 2), Mat::zeros(1, 2), Bilin::zero(2, 2)).unwrap_err(),
            Error::DegeneratePairing
        );
        // Isotropy violation.
        assert_eq!(
            CsgTuple::new(
                Bilin::new(Mat::identity(2)),
                Mat::from_int_rows(&[&[1, 0]]),
                Bilin::zero(2, 2)
            )
            .unwrap_err(),
            Error::IsotropyViolation
        );
        // Non-skew r.
        assert!(CsgTuple::new(
            Bilin::new(Mat::from_int_rows(&[&[0, 1], &[1, 0]])),
            Mat::from_int_rows(&[&[1, 0]]),
            Bilin::new(Mat::identity(2))
        )
        .is_err());
    }

    #[test]
    fn non_canonical_c41_normalizes_through_the_tuple() {
        // A csg with C41 = [2]: compatibility forces d2 = (0, 2)^T.
        let complex = ChainComplex3::new(
            1,
            2,
            1,
            Mat::from_int_rows(&[&[0], &[2]]),
            Mat::from_int_rows(&[&[1, 0]]),
        )
        .unwrap();
        let c41 = Bilin::new(Mat::from_int_rows(&[&[2]]));
        let c32 = Bilin::new(Mat::from_fn(2, 2, |i, j| if i != j { ratio(1, 2) } else { rat(0) }));
        let form = build_from_c(&c41, &c32, &complex).unwrap();
        let s = ConstantSymplectic2Groupoid::new(complex.clone(), form).unwrap();

        // The tuple is the standard one; rebuilding rescales W2 so that
        // d2 absorbs the C41 factor: d2_new = d2 * C41^{-1}.
        let t = csg_to_tuple(&s).unwrap();
        assert_eq!(t, standard_tuple(1));
        let rebuilt = tuple_to_csg(&t).unwrap();
        assert_eq!(rebuilt.form().c(4, 1), &Mat::identity(1));
        let expected_d2 = complex.d2() * &c41.gram().inverse().unwrap();
        assert_eq!(rebuilt.complex().d2(), &expected_d2);
    }

    #[test]
    fn courant_tuple_roundtrips() {
        let t = standard_tuple(2);
        let e = tuple_to_courant(&t).unwrap();
        assert_eq!(courant_to_tuple(&e).unwrap(), reduce_tuple(&t));
        assert_eq!(tuple_to_courant(&reduce_tuple(&t)).unwrap(), e);
    }
}
