//! Hand-checkable values: each test pins one known answer.

use schweitzer_core::builtin::{self, iwasawa, iwasawa_family, kodaira_thurston, p1_synthetic, torus};
use schweitzer_core::invariants::*;
use schweitzer_core::random::scrambled_sum;
use schweitzer_core::schweitzer::*;
use schweitzer_core::shapes::*;
use schweitzer_core::symbol::{exactness_check, Covector};
use schweitzer_core::zigzag::multiplicities;
use schweitzer_core::*;

fn model(m: &LieModel) -> DoubleComplex {
    lie_model(m, &Scalar::ZERO).unwrap().into_complex()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn s(a: &DoubleComplex, p: i64, q: i64, k: i32) -> usize {
    s_dims(a, p, q).unwrap().get(&k).copied().unwrap_or(0)
}

#[test]
fn matrix_ranks() {
    assert_eq!(Matrix::zeros(3, 3).rank(), 0);
    assert_eq!(Matrix::identity(3).rank(), 3);
    let m = Matrix::from_rows(
        vec![vec![Scalar::ONE, Scalar::I], vec![Scalar::I, Scalar::from_int(-1)]],
        2,
    )
    .unwrap();
    assert_eq!(m.rank(), 1);
}

#[test]
fn kernels_and_intersections() {
    assert_eq!(Subspace::kernel(&Matrix::identity(2)).dim(), 0);
    assert_eq!(Subspace::kernel(&Matrix::zeros(2, 2)).dim(), 2);
    let k = Subspace::kernel(&Matrix::from_ints(1, 2, &[1, 1]));
    assert_eq!(k.dim(), 1);
    assert!(k.contains_vector(&[Scalar::ONE, Scalar::from_int(-1)]));

    let u = Subspace::column_span(&Matrix::from_ints(3, 2, &[1, 0, 0, 1, 0, 0]));
    let w = Subspace::column_span(&Matrix::from_ints(3, 2, &[1, 0, 1, 0, 0, 1]));
    assert_eq!(u.intersection(&w).unwrap().dim(), 1);
    assert_eq!(u.intersection(&u).unwrap(), u);
    assert_eq!(u.quotient_dim(&u).unwrap(), 0);
}

#[test]
fn sums_and_duals_of_dots() {
    let a = p1_synthetic();
    assert_eq!(a.dims_grid(), vec![vec![1, 0], vec![0, 1]]);
    assert_eq!(make_dot(0, 0, 1).unwrap().dual().unwrap(), make_dot(1, 1, 1).unwrap());
    assert_eq!(make_dot(1, 0, 1).unwrap().conjugate().unwrap(), make_dot(0, 1, 1).unwrap());
    let t = model(&torus(2));
    assert_eq!(t.direct_sum(&DoubleComplex::zero(2)).unwrap(), t);
    assert_eq!(t.dual().unwrap().dims_grid(), t.dims_grid());
}

#[test]
fn anticommutation_violation_is_located() {
    let mut a = make_square(0, 0, 1).unwrap();
    // Flip the sign of ∂̄ out of (1,0): now ∂∂̄ = +∂̄∂ ≠ 0.
    let flipped = a.delbar(1, 0).neg();
    a.set_delbar(1, 0, flipped).unwrap();
    let d = a.validate();
    assert!(!d.is_valid());
    assert_eq!(d.failures[0].at, Bidegree::new(0, 0));
    assert!(model(&torus(2)).is_valid());
}

#[test]
fn total_complexes() {
    let sq = make_square(0, 0, 1).unwrap().total_complex().unwrap();
    assert_eq!((sq.dim(0), sq.dim(1), sq.dim(2)), (1, 2, 1));
    assert!(sq.cohomology().values().all(|&d| d == 0));
    assert_eq!(de_rham(&model(&torus(1))).unwrap(), vec![1, 2, 1]);
    let t2 = de_rham(&model(&torus(2))).unwrap();
    assert_eq!(t2, (0..=4).map(|k| binomial(4, k)).collect::<Vec<_>>());
}

#[test]
fn zigzag_shapes() {
    let col = ZigzagShape::from_dots(vec![Bidegree::new(0, 0), Bidegree::new(0, 1)]).unwrap();
    let h = dolbeault(&make_zigzag(&col, 1).unwrap()).unwrap();
    assert_eq!((h[0][0], h[0][1]), (0, 0));
    let f = frolicher(&make_zigzag(&col, 1).unwrap(), Orientation::Column).unwrap();
    assert!(f.page(1).dims.iter().flatten().all(|&d| d == 0));

    let l = ZigzagShape::from_dots(vec![Bidegree::new(0, 1), Bidegree::new(0, 0), Bidegree::new(1, 0)]).unwrap();
    let b = de_rham(&make_zigzag(&l, 1).unwrap()).unwrap();
    assert_eq!((b[0], b[1]), (0, 1));

    assert_eq!(enumerate_shapes(0), vec![ZigzagShape::dot(0, 0)]);
    let one = enumerate_shapes(1);
    assert_eq!(one.iter().filter(|z| z.len() == 1).count(), 4);
    assert_eq!(one.iter().filter(|z| z.len() == 2).count(), 4);
    assert!(one.iter().all(|z| z.fits(1)));
}

#[test]
fn model_invariants() {
    let iw = model(&iwasawa());
    let h = dolbeault(&iw).unwrap();
    assert_eq!((h[1][0], h[0][1]), (3, 2));
    assert_eq!(de_rham(&iw).unwrap()[1], 4);
    assert_eq!(bott_chern_direct(&iw).unwrap()[0][1], 2);
    assert_eq!(frolicher(&iw, Orientation::Column).unwrap().e_infinity()[0][1], 2);
    assert!(chi_p(&iw).unwrap().iter().all(|&c| c == 0));

    let kt = model(&kodaira_thurston());
    assert_eq!(de_rham(&kt).unwrap()[1], 3);
    let f = frolicher(&kt, Orientation::Column).unwrap();
    let h = dolbeault(&kt).unwrap();
    assert_eq!(fd_defect(&kt, 0, 1).unwrap(), h[0][1] - f.e_infinity()[0][1]);

    assert_eq!(chi_p(&p1_synthetic()).unwrap(), vec![1, -1]);
    assert_eq!(model(&iwasawa_family()), iw);
}

#[test]
fn torus_grids_are_binomial() {
    for n in 1..=3 {
        let t = model(&torus(n));
        let want: Vec<Vec<usize>> = (0..=n).map(|p| (0..=n).map(|q| binomial(n, p) * binomial(n, q)).collect()).collect();
        assert_eq!(dolbeault(&t).unwrap(), want);
        assert_eq!(bott_chern_direct(&t).unwrap(), want);
        assert_eq!(de_rham(&t).unwrap(), (0..=2 * n).map(|k| binomial(2 * n, k)).collect::<Vec<_>>());
        let f = frolicher(&t, Orientation::Column).unwrap();
        assert!(f.pages.iter().skip(1).all(|pg| pg.rank_out.iter().flatten().all(|&r| r == 0)));
        for p in 0..=n as i64 + 1 {
            for q in 0..=n as i64 + 1 {
                assert_eq!(euler_chi_pq(&t, p, q).unwrap(), 0);
            }
        }
    }
}

#[test]
fn schweitzer_regions() {
    let mut got = region(3, 2, 1, 0);
    got.extend(region(3, 2, 1, 1));
    assert_eq!(got, vec![Bidegree::new(0, 0), Bidegree::new(1, 0)]);
    for k in 2..=6 {
        let r = region(3, 2, 1, k);
        assert!(r.iter().all(|b| b.p >= 2 && b.q >= 1 && b.p + b.q == k as usize + 1));
    }
    assert!(region(3, -1, 5, 0).is_empty());
}

#[test]
fn dots_in_schweitzer_complexes() {
    for (a, b) in [(0, 0), (1, 0), (1, 1), (0, 2), (2, 1)] {
        let d = make_dot(a, b, 2).unwrap();
        for p in -1..=4i64 {
            for q in -1..=4i64 {
                let table = s_dims(&d, p, q).unwrap();
                let nonzero: Vec<(i32, usize)> = table.into_iter().filter(|&(_, v)| v > 0).collect();
                let (a, b) = (a as i64, b as i64);
                let want = if a < p && b < q {
                    vec![((a + b) as i32, 1)]
                } else if a >= p && b >= q {
                    vec![((a + b - 1) as i32, 1)]
                } else {
                    vec![]
                };
                assert_eq!(nonzero, want, "dot ({a},{b}) at ({p},{q})");
            }
        }
    }
}

#[test]
fn bott_chern_and_aeppli_via_l() {
    let t1 = model(&torus(1));
    assert_eq!(bott_chern_via_l(&t1, 1, 1).unwrap(), 1);
    assert_eq!(aeppli_via_l(&t1, 2, 2).unwrap(), 1);
    assert_eq!(aeppli_via_l(&make_dot(0, 0, 1).unwrap(), 1, 1).unwrap(), 1);
    assert_eq!(bott_chern_via_l(&model(&iwasawa()), 0, 1).unwrap(), 2);
    let sq = make_square(0, 0, 1).unwrap();
    assert_eq!(bott_chern_via_l(&sq, 1, 1).unwrap(), 0);
    assert_eq!(aeppli_via_l(&sq, 1, 1).unwrap(), 0);
    assert_eq!(euler_chi_pq(&p1_synthetic(), 1, 0).unwrap(), -1);
    assert_eq!(euler_chi_pq(&sq, 1, 1).unwrap(), 0);
}

#[test]
fn degenerate_parameters_are_shifted_total_complexes() {
    let iw = model(&iwasawa());
    let b = de_rham(&iw).unwrap();
    for k in 0..=6 {
        assert_eq!(s(&iw, 0, 0, k - 1), b[k as usize]);
        assert_eq!(s(&iw, 4, 4, k), b[k as usize]);
    }
}

#[test]
fn dot_duality_example() {
    let v = duality_dim_check(&make_dot(0, 0, 1).unwrap(), 1, 1, 0).unwrap();
    assert_eq!((v.s, v.s_dual), (1, 1));
    assert!(v.holds());
}

#[test]
fn torus_pairing_is_a_nonzero_scalar() {
    let m = lie_model(&torus(1), &Scalar::ZERO).unwrap();
    let r = pairing_matrix(&m, 1, 1, 1).unwrap();
    assert_eq!(r.matrix.shape(), (1, 1));
    assert!(!r.matrix[(0, 0)].is_zero());
    let empty = pairing_matrix(&m, 0, 0, 5).unwrap();
    assert_eq!(empty.matrix.shape(), (0, 0));
    assert!(empty.perfect);
}

#[test]
fn euler_identity_examples() {
    let p1 = p1_synthetic();
    let c = euler_identity_check(&p1, 1, 0).unwrap();
    assert_eq!((c.lhs, c.rhs), (-1, -1));
    let dot = make_dot(0, 0, 1).unwrap();
    let c = euler_identity_check(&dot, 1, 1).unwrap();
    assert_eq!((c.lhs, c.rhs), (1, 0));
    let serre = serre_chi_check(&dot).unwrap();
    assert!(!serre.passed());
    let with_partner = dot.direct_sum(&dot.dual().unwrap()).unwrap();
    assert!(serre_chi_check(&with_partner).unwrap().passed());
}

#[test]
fn ktheory_examples() {
    let d: Vec<Vec<i64>> = (0..=3).map(|r| (0..=3).map(|s| (binomial(3, r) * binomial(3, s)) as i64).collect()).collect();
    let c = ktheory_dims_identity(&d, 3, 2, 1).unwrap();
    assert_eq!((c.lhs, c.rhs), (0, 0));
    let ones = vec![vec![1i64; 3]; 3];
    for p in 0..=3 {
        for q in 0..=3 {
            assert!(ktheory_dims_identity(&ones, 2, p, q).unwrap().holds());
        }
    }
    let bad = vec![vec![1, 0], vec![0, 0]];
    assert!(matches!(ktheory_dims_identity(&bad, 1, 0, 0), Err(Error::AsymmetricGrid(..))));
}

#[test]
fn defect_and_index_examples() {
    let iw = frolicher_defect_identities_n3(&model(&iwasawa())).unwrap();
    assert!(iw.passed());
    assert_eq!((iw.checks[0].lhs, iw.checks[0].rhs), (2, 2));
    let t = model(&torus(3));
    assert_eq!(s(&t, 1, 0, 2), 19);
    let v = frolicher_defect_identities_n3(&t).unwrap();
    assert_eq!((v.checks[0].lhs, v.checks[0].rhs), (3, 3));
    assert_eq!((v.checks[1].lhs, v.checks[1].rhs), (0, 0));
}

#[test]
fn zigzag_tables() {
    let t = multiplicities(&make_square(0, 0, 1).unwrap()).unwrap();
    assert_eq!(t.total_squares(), 1);
    assert_eq!(t.total_zigzags(), 0);

    let items = vec![
        Indecomposable::Zigzag(ZigzagShape::dot(0, 0)),
        Indecomposable::Zigzag(ZigzagShape::dot(1, 1)),
        Indecomposable::Square(Bidegree::new(0, 0)),
    ];
    let (a, truth) = scrambled_sum(1, &items, 42).unwrap();
    assert_eq!(multiplicities(&a).unwrap(), truth);
    assert_eq!(scrambled_sum(2, &[], 1).unwrap().0, DoubleComplex::zero(2));

    let iw = multiplicities(&model(&iwasawa())).unwrap();
    let odd_deg1: usize = iw
        .zigzags
        .iter()
        .filter(|(z, _)| z.len() % 2 == 1 && z.dots()[0].p + z.dots()[0].q == 1)
        .map(|(_, m)| m)
        .sum();
    assert_eq!(odd_deg1, 4);
}

#[test]
fn symbol_examples() {
    let e = exactness_check(1, 1, &Covector::new(vec![Scalar::ONE])).unwrap();
    assert!(e.exact && !e.trivial);
    let z = exactness_check(1, 1, &Covector::zero(1)).unwrap();
    assert!(!z.exact);
    assert!(builtin::builtin("torus(7)").is_err());
}
