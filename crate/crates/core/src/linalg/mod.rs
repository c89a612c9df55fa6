//! Exact linear algebra over prime fields and the rationals.

mod mat;
mod scalar;

pub use mat::{Echelon, Mat};
pub use scalar::{Field, Scalar};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_mat() -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..6, prop::sample::select(vec![2u32, 3, 7]))
            .prop_flat_map(|(r, c, p)| {
                prop::collection::vec(0i64..7, r * c).prop_map(move |v| {
                    let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                    Mat::from_i64(Field::Fp(p), &rows)
                })
            })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_mat()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn solve_reproduces_rhs(m in small_mat(), x in prop::collection::vec(0i64..7, 5)) {
            let f = m.field();
            let xs: Vec<Scalar> = x[..m.cols()].iter().map(|&v| f.from_i64(v)).collect();
            let b = Mat::from_columns(f, m.rows(), &[m.mul_vec(&xs)]);
            let sol = m.solve(&b).expect("b is in the column space");
            prop_assert_eq!(m.mul(&sol), b);
        }

        #[test]
        fn elimination_is_deterministic(m in small_mat()) {
            prop_assert_eq!(m.echelon().reduced, m.clone().echelon().reduced);
        }
    }
}
