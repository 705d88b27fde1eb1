//! Exact linear algebra over Q: matrices, canonical subspaces, annihilators,
//! and orthogonals with respect to bilinear pairings.
//!
//! Everything is immutable after construction and exact; no floating point
//! appears anywhere in this crate.

mod bilin;
mod mat;
mod rat;
mod subspace;

pub use bilin::{perp, Bilin};
pub use mat::Mat;
pub use rat::{as_small_integer, format_rat, is_zero, parse_rat, rat, ratio, Rat};
pub use subspace::{annihilator, image, kernel, Subspace};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-3i64..=3, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
    }

    fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(small_rat(), rows * cols)
            .prop_map(move |v| Mat::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
    }

    fn dims() -> impl Strategy<Value = (usize, usize)> {
        (0usize..=5, 0usize..=5)
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c) in dims(), seed in 0u64..u64::MAX) {
            let m = sample_mat(r, c, seed);
            prop_assert_eq!(kernel(&m).dim() + image(&m).dim(), c);
        }

        #[test]
        fn annihilator_involution((r, c) in dims(), seed in 0u64..u64::MAX) {
            let m = sample_mat(r, c, seed);
            let u = image(&m);
            prop_assert_eq!(annihilator(&annihilator(&u)), u);
        }

        #[test]
        fn span_is_idempotent(m in small_mat(4, 3)) {
            let u = Subspace::span(4, &m).unwrap();
            let again = Subspace::span(4, u.basis()).unwrap();
            prop_assert_eq!(u.basis(), again.basis());
        }

        #[test]
        fn sum_contains_both(a in small_mat(4, 2), b in small_mat(4, 2)) {
            let ua = Subspace::span(4, &a).unwrap();
            let ub = Subspace::span(4, &b).unwrap();
            let s = ua.sum(&ub).unwrap();
            prop_assert!(s.contains(&ua).unwrap());
            prop_assert!(s.contains(&ub).unwrap());
            let i = ua.intersect(&ub).unwrap();
            prop_assert!(ua.contains(&i).unwrap());
            prop_assert!(ub.contains(&i).unwrap());
            // Modular dimension identity.
            prop_assert_eq!(s.dim() + i.dim(), ua.dim() + ub.dim());
        }
    }

    // Deterministic helper so the two dims and the entries shrink separately.
    fn sample_mat(rows: usize, cols: usize, seed: u64) -> Mat {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Mat::from_fn(rows, cols, |_, _| rat(rng.gen_range(-2..=2)))
    }

    // The involution needs a symmetric or skew pairing (left and right
    // orthogonals coincide there); those are the only pairings this crate
    // takes orthogonals against.
    #[test]
    fn perp_involution_for_invertible_symmetric_or_skew_pairings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tried = 0;
        while tried < 60 {
            let n = rng.gen_range(1..=5);
            let a = Mat::from_fn(n, n, |_, _| rat(rng.gen_range(-2..=2)));
            let g = if rng.gen_bool(0.5) {
                &a + &a.transpose()
            } else {
                &a - &a.transpose()
            };
            if g.rank() != n {
                continue;
            }
            tried += 1;
            let gens = Mat::from_fn(n, rng.gen_range(0..=n), |_, _| rat(rng.gen_range(-2..=2)));
            let u = Subspace::span(n, &gens).unwrap();
            let b = Bilin::new(g);
            let p = perp(&u, &b).unwrap();
            assert_eq!(p.dim() + u.dim(), n);
            let pp = perp(&p, &b).unwrap();
            assert_eq!(pp, u);
        }
    }
}
