use proptest::prelude::*;

use schweitzer_core::builtin;
use schweitzer_core::invariants::*;
use schweitzer_core::random::{random_complex, random_items, rng, scrambled_sum};
use schweitzer_core::schweitzer::{component_pairing, euler_chi_pq, euler_chi_pq_from_dims, s_dims};
use schweitzer_core::shapes::make_square;
use schweitzer_core::symbol::{exactness_check, Covector};
use schweitzer_core::zigzag::Calibration;
use schweitzer_core::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| {
        Scalar::new(Rational::new(a, b), Rational::new(c, d))
    })
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![3 => Just(Scalar::ZERO), 2 => scalar()], r * c)
            .prop_map(move |v| Matrix::from_fn(r, c, |i, j| v[i * c + j].clone()))
    })
}

fn complex() -> impl Strategy<Value = DoubleComplex> {
    (1usize..=3, any::<u64>()).prop_map(|(n, seed)| random_complex(n, 2, seed))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv(), Scalar::ONE);
        }
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in matrix(5)) {
        prop_assert_eq!(m.rank() + m.kernel().cols(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.mul(&m.kernel()).is_zero());
    }

    #[test]
    fn rank_of_product(m in matrix(4), k in 0usize..=4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let entries: Vec<i64> = (0..m.cols() * k).map(|_| rand::Rng::gen_range(&mut r, -2..=2)).collect();
        let n = Matrix::from_ints(m.cols(), k, &entries);
        prop_assert!(m.mul(&n).rank() <= m.rank().min(n.rank()));
    }

    #[test]
    fn inclusion_exclusion(a in matrix(4), b in matrix(4)) {
        let u = Subspace::column_span(&a);
        let w = Subspace::column_span(&Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            if i < b.rows() { b[(i, j)].clone() } else { Scalar::ZERO }
        }));
        let sum = u.sum(&w).unwrap();
        let cap = u.intersection(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(sum.contains(&u).unwrap() && u.contains(&cap).unwrap());
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn generated_complexes_are_valid(a in complex()) {
        prop_assert!(a.is_valid());
        prop_assert!(a.dual().unwrap().is_valid());
        prop_assert!(a.conjugate().unwrap().is_valid());
    }

    #[test]
    fn schweitzer_is_additive(a in complex(), seed in any::<u64>()) {
        let b = random_complex(a.n(), 2, seed);
        let ab = a.direct_sum(&b).unwrap();
        let n = a.n() as i64;
        for p in -1..=n + 2 {
            for q in -1..=n + 2 {
                let (sa, sb, sab) = (s_dims(&a, p, q).unwrap(), s_dims(&b, p, q).unwrap(), s_dims(&ab, p, q).unwrap());
                for (k, v) in sab {
                    prop_assert_eq!(v, sa.get(&k).copied().unwrap_or(0) + sb.get(&k).copied().unwrap_or(0));
                }
            }
        }
    }

    #[test]
    fn squares_are_invisible(a in complex(), c in 0usize..3, d in 0usize..3) {
        let n = a.n();
        let (c, d) = (c % n, d % n);
        let with = a.direct_sum(&make_square(c, d, n).unwrap()).unwrap();
        prop_assert_eq!(InvariantReport::new(&with).unwrap().h_bc, bott_chern_direct(&a).unwrap());
        for p in 0..=n as i64 + 1 {
            for q in 0..=n as i64 + 1 {
                prop_assert_eq!(s_dims(&with, p, q).unwrap(), s_dims(&a, p, q).unwrap());
            }
        }
    }

    #[test]
    fn bott_chern_is_dual_to_aeppli(a in complex()) {
        let n = a.n();
        let bc = bott_chern_direct(&a).unwrap();
        let ae = aeppli_direct(&a.dual().unwrap()).unwrap();
        for p in 0..=n {
            for q in 0..=n {
                prop_assert_eq!(bc[p][q], ae[n - p][n - q]);
            }
        }
    }

    #[test]
    fn conjugation_transposes_grids(a in complex()) {
        let c = a.conjugate().unwrap();
        let n = a.n();
        let (bc, bcc) = (bott_chern_direct(&a).unwrap(), bott_chern_direct(&c).unwrap());
        let col = frolicher(&a, Orientation::Row).unwrap();
        let conj_col = frolicher(&c, Orientation::Column).unwrap();
        for p in 0..=n {
            for q in 0..=n {
                prop_assert_eq!(bc[p][q], bcc[q][p]);
                prop_assert_eq!(col.page(1).dims[p][q], conj_col.page(1).dims[q][p]);
            }
        }
        prop_assert_eq!(de_rham(&a).unwrap(), de_rham(&c).unwrap());
    }

    #[test]
    fn spectral_sequence_bookkeeping(a in complex()) {
        let r = InvariantReport::new(&a).unwrap();
        let n = r.n;
        for fss in [&r.fss_col, &r.fss_row] {
            for w in fss.pages.windows(2) {
                for p in 0..=n {
                    for q in 0..=n {
                        prop_assert_eq!(w[1].dims[p][q], w[0].dims[p][q] - w[0].rank_out[p][q] - w[0].rank_in[p][q]);
                    }
                }
            }
        }
        prop_assert_eq!(&r.fss_col.page(1).dims, &r.h_dolbeault);
        for k in 0..=2 * n {
            let mut fd = 0i64;
            let mut h = 0i64;
            for p in 0..=n.min(k) {
                if k - p <= n {
                    fd += r.fd(p, k - p) as i64;
                    h += r.h_dolbeault[p][k - p] as i64;
                }
            }
            prop_assert_eq!(fd, h - r.betti[k] as i64);
        }
    }

    #[test]
    fn euler_characteristic_is_rank_free(a in complex()) {
        let n = a.n() as i64;
        for p in -1..=n + 2 {
            for q in -1..=n + 2 {
                prop_assert_eq!(euler_chi_pq(&a, p, q).unwrap(), euler_chi_pq_from_dims(&a, p, q));
            }
        }
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn multiplicities_ignore_basis(n in 1usize..=2, seed in any::<u64>(), other in any::<u64>()) {
        let mut r = rng(seed);
        let items = random_items(n, 2, &mut r);
        let cal = Calibration::new(n).unwrap();
        let (a, truth) = scrambled_sum(n, &items, seed).unwrap();
        let (b, _) = scrambled_sum(n, &items, other).unwrap();
        let ta = cal.multiplicities(&a).unwrap();
        prop_assert_eq!(&ta, &truth);
        prop_assert_eq!(cal.multiplicities(&b).unwrap(), truth);
        prop_assert_eq!(cal.aggregate(&ta), cal.observe(&a).unwrap());
    }

    #[test]
    fn dual_reflects_multiplicities(n in 1usize..=2, seed in any::<u64>()) {
        let cal = Calibration::new(n).unwrap();
        let a = random_complex(n, 2, seed);
        let t = cal.multiplicities(&a).unwrap();
        prop_assert_eq!(cal.multiplicities(&a.dual().unwrap()).unwrap(), t.reflected(n));
    }

    #[test]
    fn symbol_exactness_is_conjugation_and_scale_invariant(
        n in 1usize..=2, p in 0i64..=3, q in 0i64..=3, seed in any::<u64>(), c in scalar()
    ) {
        prop_assume!(!c.is_zero());
        let xi = Covector::random(n, &mut rng(seed));
        let base = exactness_check(p, q, &xi).unwrap();
        prop_assert!(base.exact);
        prop_assert_eq!(exactness_check(p, q, &xi.conj()).unwrap().exact, base.exact);
        prop_assert_eq!(exactness_check(p, q, &xi.scaled(&c)).unwrap().exact, base.exact);
    }
}

#[test]
fn integration_pairing_is_perfect_on_forms() {
    for name in ["torus(2)", "iwasawa", "kodaira_thurston"] {
        let m = lie_model(builtin::builtin(name).unwrap().lie().unwrap(), &Scalar::ZERO).unwrap();
        let n = m.n();
        for r in 0..=n {
            for s in 0..=n {
                let g = component_pairing(&m, r, s);
                assert!(g.is_square_invertible(), "{name} ({r},{s})");
            }
        }
    }
}
