use artinian::form::parse_monomials;
use artinian::lefschetz::{check_mrp, check_slp, check_wlp, degree_condition_checkers};
use artinian::linalg::Matrix;
use artinian::{seed, Field, GradedIdeal, PrimeField, Quotient};
use proptest::prelude::*;

fn random_invertible(f: &PrimeField, n: usize, s: u64) -> Vec<Vec<u32>> {
    let mut rng = seed::rng(s);
    loop {
        let g: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| f.sample(&mut rng)).collect()).collect();
        if f.rank(&Matrix::from_rows(g.clone(), n)) == n {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strong_implies_maximal_rank_implies_weak(
        degrees in prop::collection::vec(2usize..=3, 3..=4),
        s in any::<u64>(),
    ) {
        let q = Quotient::new(GradedIdeal::random(PrimeField::default(), 3, &degrees, s).unwrap());
        let slp = check_slp(&q, 3, s).unwrap();
        let mrp = check_mrp(&q, 3, s).unwrap();
        let wlp = check_wlp(&q, 3, s).unwrap();
        prop_assert!(!slp.holds || mrp.holds);
        prop_assert!(!mrp.holds || wlp.holds);
        prop_assert!(wlp.surjectivity_is_monotone());
    }

    #[test]
    fn two_variables_have_the_strong_property(
        degrees in prop::collection::vec(1usize..=5, 2..=4),
        s in any::<u64>(),
    ) {
        let q = Quotient::new(GradedIdeal::random(PrimeField::default(), 2, &degrees, s).unwrap());
        prop_assert!(check_slp(&q, 3, s).unwrap().holds);
    }

    #[test]
    fn weak_property_survives_coordinate_changes(
        degrees in prop::collection::vec(2usize..=3, 3..=4),
        s in any::<u64>(),
    ) {
        let f = PrimeField::default();
        let i = GradedIdeal::random(f, 3, &degrees, s).unwrap();
        let moved = i.linear_substitution(&random_invertible(&f, 3, s ^ 1)).unwrap();
        let (a, b) = (Quotient::new(i), Quotient::new(moved));
        prop_assert_eq!(a.hilbert_function(None), b.hilbert_function(None));
        prop_assert_eq!(check_wlp(&a, 3, s).unwrap().holds, check_wlp(&b, 3, s).unwrap().holds);
    }
}

#[test]
fn failure_survives_coordinate_changes() {
    let f = PrimeField::default();
    let (n, ms) = parse_monomials("x^2,xy,xz,y^3,z^3", None).unwrap();
    let i = GradedIdeal::monomial(f, n, &ms).unwrap();
    for s in 0..3 {
        let moved = i.linear_substitution(&random_invertible(&f, 3, s)).unwrap();
        let v = check_wlp(&Quotient::new(moved), 5, s).unwrap();
        assert!(!v.holds, "seed {s}");
        assert_eq!((v.witnesses[0].t, v.witnesses[0].achieved), (1, 2));
    }
}

#[test]
fn monomial_complete_intersections_meeting_a_criterion_have_the_weak_property() {
    let f = PrimeField::default();
    let mut fired = 0;
    for n in 2..=4usize {
        let mut degrees = vec![2; n];
        loop {
            let c = degree_condition_checkers(n, &degrees);
            if c.large_last_degree == Some(true) {
                let q = Quotient::new(GradedIdeal::monomial_ci(f, &degrees).unwrap());
                assert!(check_wlp(&q, 3, 0).unwrap().holds, "{degrees:?}");
                fired += 1;
            }
            // next nondecreasing tuple in 2..=5
            match (0..n).rev().find(|&k| degrees[k] < 5) {
                Some(k) => {
                    let v = degrees[k] + 1;
                    degrees[k..].iter_mut().for_each(|d| *d = v);
                }
                None => break,
            }
        }
    }
    assert!(fired > 10);
}
