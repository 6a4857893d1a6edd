use foldlie::exactalg::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank_cap: usize) -> RatMatrix {
    // product of rows×k and k×cols integer matrices has rank ≤ k
    let k = rng.gen_range(0..=rank_cap);
    let a: Vec<Vec<Rat>> = (0..rows).map(|_| (0..k).map(|_| ri(rng.gen_range(-3..=3))).collect()).collect();
    let b: Vec<Vec<Rat>> = (0..k).map(|_| (0..cols).map(|_| ri(rng.gen_range(-3..=3))).collect()).collect();
    if k == 0 {
        return RatMatrix::zeros(rows, cols);
    }
    &RatMatrix::from_rows(a) * &RatMatrix::from_rows(b)
}

fn int_matrix(entries: &[i64], n: usize) -> RatMatrix {
    RatMatrix::from_rows(entries.chunks(n).map(|r| r.iter().map(|&x| ri(x)).collect()).collect())
}

#[test]
fn rank_nullity_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
        let m = random_matrix(&mut rng, r, c, 5);
        let kernel = m.kernel();
        assert_eq!(m.rank() + kernel.len(), c);
        for v in &kernel {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(m.rank(), m.transpose().rank());
    }
}

#[test]
fn triangular_determinant_and_eigenvalues() {
    let m = int_matrix(&[2, 5, -7, 0, -1, 3, 0, 0, 4], 3);
    assert_eq!(m.det().unwrap(), ri(-8));
    let eig = [ri(2), ri(-1), ri(4)];
    for k in 1..=3 {
        assert_eq!(exterior_trace(&m, k).unwrap(), elementary_symmetric(&eig, k).unwrap());
    }
    assert!(exterior_trace(&m, 4).is_err());
    assert!(RatMatrix::zeros(2, 3).det().is_err());
}

#[test]
fn char_poly_of_companion_matrix() {
    // companion matrix of x³ − 2x + 5
    let m = int_matrix(&[0, 0, -5, 1, 0, 2, 0, 1, 0], 3);
    let p = char_poly(&m).unwrap();
    assert_eq!(p.coeff(&[3]), ri(1));
    assert_eq!(p.coeff(&[2]), ri(0));
    assert_eq!(p.coeff(&[1]), ri(-2));
    assert_eq!(p.coeff(&[0]), ri(5));
}

#[test]
fn inverse_and_solve() {
    let m = int_matrix(&[1, 2, 0, 3, 1, 1, 0, 1, 4], 3);
    let inv = m.inverse().unwrap();
    assert_eq!(&m * &inv, RatMatrix::identity(3));
    let b = vec![ri(1), ri(0), rat(1, 2)];
    let x = m.solve(&b).unwrap();
    assert_eq!(m.mul_vec(&x), b);
    assert!(int_matrix(&[1, 2, 2, 4], 2).inverse().is_none());
}

#[test]
fn tower_field_relations() {
    let r = Tower::r();
    let i = Tower::i();
    assert_eq!((r.clone() * r.clone()).rational_part(), Some(rat(2, 3)));
    assert_eq!((i.clone() * i.clone()).rational_part(), Some(ri(-1)));
    let ri_ = r.clone() * i.clone();
    assert_eq!((ri_.clone() * ri_).rational_part(), Some(rat(-2, 3)));
    assert_eq!(r.rational_part(), None);
}

#[test]
fn polynomial_calculus() {
    let vars = ["x", "y"];
    let x = MultiPoly::var(&vars, 0);
    let y = MultiPoly::var(&vars, 1);
    let f = x.pow(3).checked_add(&x.checked_mul(&y).unwrap()).unwrap();
    assert!(f.is_quasi_homogeneous(&[1, 2], 3));
    assert_eq!(f.derivative(0), x.pow(2).scale(&ri(3)).checked_add(&y).unwrap());
    assert_eq!(f.eval(&[ri(2), ri(-1)]).unwrap(), ri(6));
    let g = f.substitute(&[y.clone(), x.clone()]).unwrap();
    assert_eq!(g.eval(&[ri(-1), ri(2)]).unwrap(), ri(6));
    assert!(MultiPoly::zero(&vars).is_zero());
    assert_eq!(MultiPoly::constant(&vars, Rat::one()).degree(), Some(0));
}

fn small_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| int_matrix(&v, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cofactor_minors_agree_with_char_poly(m in small_matrix(4)) {
        let rows: Vec<Vec<Rat>> = (0..4).map(|i| m.row(i)).collect();
        for k in 1..=4 {
            prop_assert_eq!(principal_minor_sum(&rows, k), exterior_trace(&m, k).unwrap());
        }
        prop_assert_eq!(det_generic(&rows), m.det().unwrap());
    }

    #[test]
    fn invariants_under_conjugation(m in small_matrix(3), p in small_matrix(3)) {
        prop_assume!(p.inverse().is_some());
        let q = &(&p * &m) * &p.inverse().unwrap();
        for k in 1..=3 {
            prop_assert_eq!(exterior_trace(&q, k).unwrap(), exterior_trace(&m, k).unwrap());
        }
        prop_assert_eq!(q.rank(), m.rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in small_matrix(3), b in small_matrix(3)) {
        prop_assert_eq!((&a * &b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }
}
