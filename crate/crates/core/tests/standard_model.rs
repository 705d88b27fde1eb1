//! Cross-check against the cotangent-double model written in its own
//! coordinates. The level-0..2 tangent data of that groupoid is transcribed
//! here directly (faces, degeneracies, and the explicit 2-form), and the
//! whole extraction chain is run on it: kernel splittings, block
//! decomposition, reduction to `(C41, C32)`, and the classification tuple.
//! The result must be the standard example up to the explicit change of
//! basis between the kernel model and the `(v, xi)` coordinates.

use cs2g::bridge::{standard_tuple, CsgTuple};
use cs2g::doldkan::{realize, ChainComplex3};
use cs2g::exactla::{kernel, Bilin, Mat};
use cs2g::forms::{reduce_to_c, ConstantTwoForm};

/// The tangent data at a unit point, in the coordinates
/// `T0 = v`, `T1 = (v1, v2, xi)`, `T2 = (v1, v2, xi1, v3, xi2, xi3)`
/// with each slot of dimension n.
struct CotangentModel {
    n: usize,
    f01: Mat,
    f11: Mat,
    s00: Mat,
    f02: Mat,
    f12: Mat,
    f22: Mat,
    s01: Mat,
    s11: Mat,
    omega: Mat,
}

fn cotangent_model(n: usize) -> CotangentModel {
    let id = Mat::identity(n);
    let z = Mat::zeros(n, n);

    let f01 = Mat::from_blocks(&[vec![&id, &z, &z]]);
    let f11 = Mat::from_blocks(&[vec![&z, &id, &z]]);
    let s00 = Mat::from_blocks(&[vec![&id], vec![&id], vec![&z]]);

    // f0(v1,v2,xi1,v3,xi2,xi3) = (v1, v2, xi1)
    let f02 = Mat::from_blocks(&[
        vec![&id, &z, &z, &z, &z, &z],
        vec![&z, &id, &z, &z, &z, &z],
        vec![&z, &z, &id, &z, &z, &z],
    ]);
    // f1 = (v1, v3, xi2 + xi3)
    let f12 = Mat::from_blocks(&[
        vec![&id, &z, &z, &z, &z, &z],
        vec![&z, &z, &z, &id, &z, &z],
        vec![&z, &z, &z, &z, &id, &id],
    ]);
    // f2 = (v2, v3, xi3)
    let f22 = Mat::from_blocks(&[
        vec![&z, &id, &z, &z, &z, &z],
        vec![&z, &z, &z, &id, &z, &z],
        vec![&z, &z, &z, &z, &z, &id],
    ]);
    // s0(v1,v2,xi) = (v1, v2, xi, v2, xi, 0)
    let s01 = Mat::from_blocks(&[
        vec![&id, &z, &z],
        vec![&z, &id, &z],
        vec![&z, &z, &id],
        vec![&z, &id, &z],
        vec![&z, &z, &id],
        vec![&z, &z, &z],
    ]);
    // s1(v1,v2,xi) = (v1, v1, 0, v2, 0, xi)
    let s11 = Mat::from_blocks(&[
        vec![&id, &z, &z],
        vec![&id, &z, &z],
        vec![&z, &z, &z],
        vec![&z, &id, &z],
        vec![&z, &z, &z],
        vec![&z, &z, &id],
    ]);

    // omega(u, u') = xi1'(v2) - xi1(v2') - xi2'(v3) + xi2(v3'), assembled as
    // the matrix with omega(u, u') = u^T M u'.
    let mut omega = Mat::zeros(6 * n, 6 * n);
    let slot = |s: usize, i: usize| s * n + i;
    for i in 0..n {
        // + xi1'(v2): row v2, column xi1'.
        omega[(slot(1, i), slot(2, i))] = cs2g::exactla::rat(1);
        // - xi1(v2').
        omega[(slot(2, i), slot(1, i))] = cs2g::exactla::rat(-1);
        // - xi2'(v3).
        omega[(slot(3, i), slot(4, i))] = cs2g::exactla::rat(-1);
        // + xi2(v3').
        omega[(slot(4, i), slot(3, i))] = cs2g::exactla::rat(1);
    }

    CotangentModel {
        n,
        f01,
        f11,
        s00,
        f02,
        f12,
        f22,
        s01,
        s11,
        omega,
    }
}

fn pullback(m: &Mat, along: &Mat) -> Mat {
    &(&along.transpose() * m) * along
}

#[test]
fn transcription_satisfies_low_degree_simplicial_identities() {
    for n in 1..=2 {
        let x = cotangent_model(n);
        let id1 = Mat::identity(3 * n);
        assert_eq!(&x.f01 * &x.s00, Mat::identity(n));
        assert_eq!(&x.f11 * &x.s00, Mat::identity(n));
        assert_eq!(&x.f02 * &x.s01, id1);
        assert_eq!(&x.f12 * &x.s01, id1);
        assert_eq!(&x.f22 * &x.s01, &x.s00 * &x.f11);
        assert_eq!(&x.f02 * &x.s11, &x.s00 * &x.f01);
        assert_eq!(&x.f12 * &x.s11, id1);
        assert_eq!(&x.f22 * &x.s11, id1);
        // Face-face: f_i^1 f_j^2 = f_{j-1}^1 f_i^2 for i < j.
        assert_eq!(&x.f01 * &x.f12, &x.f01 * &x.f02);
        assert_eq!(&x.f01 * &x.f22, &x.f11 * &x.f02);
        assert_eq!(&x.f11 * &x.f22, &x.f11 * &x.f12);
    }
}

#[test]
fn form_is_skew_normalized_with_the_displayed_pairings() {
    for n in 1..=2 {
        let x = cotangent_model(n);
        assert_eq!(x.omega, -&x.omega.transpose());
        assert!(pullback(&x.omega, &x.s01).is_zero());
        assert!(pullback(&x.omega, &x.s11).is_zero());

        // The A pairing against T2 through the double degeneracy
        // sigma^2 = s01 s00: A(v, w) = xi1(v) - xi2(v).
        let sigma2 = &x.s01 * &x.s00;
        let a_tilde = &sigma2.transpose() * &x.omega;
        let mut expected_a = Mat::zeros(x.n, 6 * x.n);
        for i in 0..x.n {
            expected_a[(i, 2 * x.n + i)] = cs2g::exactla::rat(1);
            expected_a[(i, 4 * x.n + i)] = cs2g::exactla::rat(-1);
        }
        assert_eq!(a_tilde, expected_a);

        // B(theta, eta) = omega(s11 theta, s01 eta) + omega(s11 eta, s01 theta):
        // in coordinates xi'(v1 - v2) + xi(v1' - v2').
        let b_tilde = {
            let m = &(&x.s11.transpose() * &x.omega) * &x.s01;
            &m + &m.transpose()
        };
        let mut expected_b = Mat::zeros(3 * x.n, 3 * x.n);
        for i in 0..x.n {
            expected_b[(i, 2 * x.n + i)] = cs2g::exactla::rat(1); // xi'(v1)
            expected_b[(x.n + i, 2 * x.n + i)] = cs2g::exactla::rat(-1); // -xi'(v2)
            expected_b[(2 * x.n + i, i)] = cs2g::exactla::rat(1);
            expected_b[(2 * x.n + i, x.n + i)] = cs2g::exactla::rat(-1);
        }
        assert_eq!(b_tilde, expected_b);
    }
}

#[test]
fn extraction_chain_recovers_the_standard_tuple() {
    for n in 1..=2 {
        let x = cotangent_model(n);

        // Kernel models of the normalized tangent spaces.
        let w1 = kernel(&x.f01);
        assert_eq!(w1.dim(), 2 * n);
        let b1 = w1.basis().clone();
        let d1 = -&(&x.f11 * &b1);

        let lambda22 = x.f02.vstack(&x.f12);
        let w2 = kernel(&lambda22);
        assert_eq!(w2.dim(), n);
        let b2 = w2.basis().clone();
        let f22_on_w2 = &x.f22 * &b2;
        assert!((&x.f01 * &f22_on_w2).is_zero());
        let d2 = b1.solve(&f22_on_w2).unwrap();
        let complex = ChainComplex3::new(n, 2 * n, n, d2, d1.clone()).unwrap();

        // The splitting basis of T2: kernel block, two filler images of the
        // W1 copies, and the doubly degenerate W0 block.
        let phi_first = &(&x.s01 - &x.s11) * &b1;
        let phi_second = &x.s11 * &b1;
        let units = &x.s01 * &x.s00;
        let p = Mat::from_blocks(&[vec![&b2, &phi_first, &phi_second, &units]]);
        assert!(p.inverse().is_ok(), "splitting basis spans T2");

        // omega in split coordinates reduces to (C41, C32) data.
        let omega_split = pullback(&x.omega, &p);
        let form =
            ConstantTwoForm::disassemble(&Bilin::new(omega_split), n, 2 * n, n).unwrap();
        assert!(form.is_normalized());
        let (c41, c32) = reduce_to_c(&form, &complex).unwrap();
        assert!(c41.is_nondegenerate());
        let g = Bilin::new(c32.gram() + &c32.gram().transpose());
        assert!(c32.skew_part().gram().is_zero(), "the model is symmetric");

        // Change of basis from the kernel coordinates of W1 (which represent
        // (v, xi) as (0, -v, xi) in T1) to the standard (v, xi) coordinates.
        let idn = Mat::identity(n);
        let zn = Mat::zeros(n, n);
        let minus = -&idn;
        let t = Mat::from_blocks(&[vec![&minus, &zn], vec![&zn, &idn]]);
        let g_std = Bilin::new(&(&t.transpose() * g.gram()) * &t);
        let d1_std = &d1 * &t;
        let tuple = CsgTuple::new(g_std, d1_std, Bilin::zero(2 * n, 2 * n)).unwrap();
        assert_eq!(tuple, standard_tuple(n));

        // Realizing the extracted complex intertwines with the transcribed
        // model through the same splittings, level by level.
        let realized = realize(&complex);
        let iso1 = Mat::from_blocks(&[vec![&b1, &x.s00]]);
        assert_eq!(&x.f01 * &iso1, realized.face(1, 0).clone());
        assert_eq!(&x.f11 * &iso1, realized.face(1, 1).clone());
        for i in 0..=2 {
            let lhs = match i {
                0 => &x.f02,
                1 => &x.f12,
                _ => &x.f22,
            } * &p;
            let rhs = &iso1 * realized.face(2, i);
            assert_eq!(lhs, rhs, "face {i} intertwines");
        }
        assert_eq!(&x.s01 * &iso1, &p * realized.degeneracy(1, 0));
        assert_eq!(&x.s11 * &iso1, &p * realized.degeneracy(1, 1));
        assert_eq!(x.s00, &iso1 * realized.degeneracy(0, 0));
    }
}
