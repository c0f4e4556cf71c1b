use mub_core::exactfield::{primes_up_to, Cyclotomic};
use mub_core::mub::{build_mub_set, StateVector};
use mub_core::support::{
    admissible_sorted_profiles, all_pair_checks, canonical_class_representatives, check_complete_bound,
    complete_bound, count_shift_classes, equal_support_condition, incompatibility_violation, random_state,
    support_profile, support_size, symmetry_variants, BoundStatus, SupportProfile,
};
use mub_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binom(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn documented_profiles() {
    let set3 = build_mub_set(3).unwrap();
    let c = |v: i64| Cyclotomic::from_int(3, v);
    let psi = StateVector::new(3, vec![c(1), c(-1), c(0)]).unwrap();
    assert_eq!(support_profile(&psi, &set3).unwrap().sizes, vec![2, 2, 2, 2]);
    let minus_w = StateVector::new(3, vec![c(1), -&Cyclotomic::root(3, 1), c(0)]).unwrap();
    for j in 0..4 {
        assert_eq!(support_size(&minus_w, set3.basis(j)).unwrap(), 2);
    }
    // (1, ω, 0) is not saturating
    let w = StateVector::from_exponents(3, &[Some(0), Some(1), None]).unwrap();
    assert_ne!(support_profile(&w, &set3).unwrap().total, 8);

    let set5 = build_mub_set(5).unwrap();
    let p = support_profile(&StateVector::basis_state(5, 3), &set5).unwrap();
    assert_eq!(p.sizes, vec![1, 5, 5, 5, 5, 5]);
    assert_eq!(p.total, 26);
    let two = set5.state(1, 0).checked_sub(&set5.state(1, 1)).unwrap();
    let p = support_profile(&two, &set5).unwrap();
    assert_eq!(p.sizes[1], 2);
    assert_eq!(p.total, 22);
}

#[test]
fn pair_bounds_and_symmetries_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for d in primes_up_to(13) {
        let set = build_mub_set(d).unwrap();
        for _ in 0..300 {
            let psi = random_state(&set, &mut rng);
            let p = support_profile(&psi, &set).unwrap();
            assert!(all_pair_checks(&p).iter().all(|c| c.holds()), "d={d} {p:?}");
            assert_ne!(check_complete_bound(&p), BoundStatus::Violated);
            let j = rng.gen_range(0..=d as usize);
            for (kind, v) in symmetry_variants(&psi, &set, j, &mut rng).unwrap() {
                assert_eq!(support_size(&v, set.basis(j)).unwrap(), p.sizes[j], "{kind:?}");
            }
        }
    }
}

#[test]
fn saturation_iff_equal_supports() {
    for d in [3u32, 5, 7, 11, 13] {
        let t = complete_bound(d);
        assert_eq!(*t.denom(), 1);
        let t = *t.numer() as usize;
        let profiles = admissible_sorted_profiles(d, t);
        assert!(!profiles.is_empty());
        for sizes in profiles {
            let p = SupportProfile::from_sizes(d, sizes).unwrap();
            assert_eq!(p.total, t, "nothing below T(d) is admissible");
            assert!(equal_support_condition(&p));
        }
    }
    assert!(admissible_sorted_profiles(2, 4).is_empty());
}

#[test]
fn qutrit_exception_to_incompatibility() {
    let set = build_mub_set(3).unwrap();
    let psi = StateVector::new(3, vec![Cyclotomic::one(3), -&Cyclotomic::one(3), Cyclotomic::zero(3)]).unwrap();
    assert_eq!(incompatibility_violation(&psi, &set).unwrap(), None);
}

#[test]
fn shift_class_counts() {
    for d in primes_up_to(19).into_iter().filter(|&d| d > 2) {
        for n in 1..d {
            let expected = (binom(d as u64, n as u64) / d as u64) as usize;
            assert_eq!(count_shift_classes(d, n), expected, "d={d} n={n}");
            assert_eq!(canonical_class_representatives(d, n).unwrap().len(), expected);
        }
    }
    assert!(matches!(canonical_class_representatives(7, 7), Err(Error::TrivialClass { .. })));
}

#[test]
fn zero_state_is_degenerate() {
    let set = build_mub_set(5).unwrap();
    let zero = StateVector::new(5, vec![Cyclotomic::zero(5); 5]).unwrap();
    assert!(matches!(support_profile(&zero, &set), Err(Error::DegenerateState(_))));
}
