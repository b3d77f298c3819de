mod common;

use common::{determinant, rank_mod};
use degenlab::apolarity::{hilbert_function, pairing_matrix, partials, perp_slice};
use degenlab::cohomology::kunneth;
use degenlab::poly::{monomial_basis, monomial_index};
use degenlab::random::seeded_rng;
use degenlab::skew::pfaffian;
use degenlab::{Alphabet, ExactMatrix, Field, HomogPoly, Scalar, SkewLinearMatrix};
use proptest::prelude::*;

fn small_prime() -> Field {
    Field::prime(101).unwrap()
}

fn random_skew(field: Field, n: usize, seed: u64) -> ExactMatrix {
    let mut rng = seeded_rng(seed, 100);
    let mut a = ExactMatrix::zeros(field, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let c = field.random(&mut rng);
            a.set(j, i, -&c);
            a.set(i, j, c);
        }
    }
    a
}

fn random_square(field: Field, n: usize, seed: u64) -> ExactMatrix {
    let mut rng = seeded_rng(seed, 101);
    let rows = (0..n)
        .map(|_| (0..n).map(|_| field.random(&mut rng)).collect())
        .collect();
    ExactMatrix::from_rows(field, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..6, seed: u64, rational: bool) {
        let field = if rational { Field::Rational } else { small_prime() };
        let a = random_skew(field, 2 * half, seed);
        let pf = pfaffian(&a).unwrap();
        prop_assert_eq!(&pf * &pf, determinant(&a));
    }

    #[test]
    fn pfaffian_under_congruence(half in 1usize..5, seed: u64) {
        let field = small_prime();
        let n = 2 * half;
        let a = random_skew(field, n, seed);
        let p = random_square(field, n, seed);
        let b = p.transpose().mul(&a).unwrap().mul(&p).unwrap();
        prop_assert_eq!(pfaffian(&b).unwrap(), &determinant(&p) * &pfaffian(&a).unwrap());
    }

    #[test]
    fn monomial_index_inverts_the_basis(nvars in 1usize..5, degree in 0usize..7) {
        for (i, e) in monomial_basis(nvars, degree).iter().enumerate() {
            prop_assert_eq!(monomial_index(e), i);
        }
    }

    #[test]
    fn hilbert_function_is_symmetric(k in 1usize..7, seed: u64) {
        let f = HomogPoly::random(small_prime(), Alphabet::dual(3), k, &mut seeded_rng(seed, 102));
        prop_assume!(!f.is_zero());
        let h = hilbert_function(&f).unwrap();
        prop_assert_eq!(h.len(), k + 1);
        for d in 0..=k {
            prop_assert_eq!(h[d], h[k - d]);
        }
    }

    #[test]
    fn partials_and_annihilator_split(k in 1usize..7, d in 0usize..8, seed: u64) {
        let field = small_prime();
        let dual = Alphabet::dual(3);
        let f = HomogPoly::random(field, dual, k, &mut seeded_rng(seed, 103));
        let perp = perp_slice(&f, d).unwrap();
        let rank = if d <= k { partials(&f, d).unwrap().dim() } else { 0 };
        prop_assert_eq!(perp.dim() + rank, dual.dim(d));
    }

    #[test]
    fn pairing_is_symmetric_in_complementary_degrees(k in 1usize..7, seed: u64) {
        let f = HomogPoly::random(small_prime(), Alphabet::dual(3), k, &mut seeded_rng(seed, 104));
        for d in 0..=k {
            let a = pairing_matrix(&f, d).unwrap();
            let b = pairing_matrix(&f, k - d).unwrap();
            prop_assert_eq!(rank_mod(&a), rank_mod(&b));
        }
    }

    #[test]
    fn kunneth_commutes(a in prop::collection::vec(0u64..50, 1..5), b in prop::collection::vec(0u64..50, 1..5)) {
        prop_assert_eq!(kunneth(&a, &b), kunneth(&b, &a));
        let total: u64 = kunneth(&a, &b).iter().sum();
        prop_assert_eq!(total, a.iter().sum::<u64>() * b.iter().sum::<u64>());
    }

    #[test]
    fn flip_is_an_involution(n in 2usize..9, m in 1usize..5, seed: u64) {
        let s = SkewLinearMatrix::random(small_prime(), n, m, &mut seeded_rng(seed, 105));
        prop_assert_eq!(s.flip().unflip().unwrap(), s);
    }

    #[test]
    fn rank_drops_exactly_where_minors_vanish(n in 4usize..8, seed: u64) {
        let field = small_prime();
        let s = SkewLinearMatrix::random(field, n, 3, &mut seeded_rng(seed, 106));
        let pencil = s.flip();
        let minors = pencil.maximal_minors();
        let mut rng = seeded_rng(seed, 107);
        for _ in 0..5 {
            let x: Vec<Scalar> = (0..n).map(|_| field.random(&mut rng)).collect();
            let rank = rank_mod(&pencil.evaluate(&x).unwrap());
            let all_vanish = HomogPoly::evaluate_all(&minors, &x).unwrap().iter().all(Scalar::is_zero);
            prop_assert_eq!(rank < 3, all_vanish);
        }
    }
}
