use mub_core::mub::build_mub_set;
use mub_core::search::{
    all_selectors, classify_d3, kernel_ray, minors_certify, qutrit_saturating_states, sharp_bound,
    support5_triple_search, verify_lemma5, KernelSystem, MinorMode,
};
use mub_core::support::{support_profile, Achievable};

#[test]
fn qutrit_classification_matches_the_list() {
    let rays = classify_d3().unwrap();
    let listed = qutrit_saturating_states();
    assert_eq!(rays.len(), 9);
    for l in &listed {
        assert_eq!(rays.iter().filter(|r| r.same_ray(l)).count(), 1);
    }
}

#[test]
fn kernel_ray_from_two_bases_d5() {
    let set = build_mub_set(5).unwrap();
    let sys = KernelSystem::from_zero_sets(&set, &[(0, vec![3, 4]), (1, vec![3, 4])]);
    let psi = kernel_ray(&sys).unwrap();
    assert!(sys.satisfied_by(&psi).unwrap());
    let p = support_profile(&psi, &set).unwrap();
    assert_eq!(&p.sizes[..2], &[3, 3]);
    assert!(p.sizes[2..].iter().all(|&s| s == 5));
}

#[test]
fn lemma5_exhaustive() {
    let r = verify_lemma5().unwrap();
    assert_eq!(r.min_total, 26);
}

#[test]
fn minors_of_all_matrices_up_to_d5_and_hadamards_at_d7() {
    for d in [2u32, 3, 5] {
        for sel in all_selectors(d, true) {
            minors_certify(d, sel, MinorMode::Exhaustive { max_order: d as usize }).unwrap();
        }
    }
    for sel in all_selectors(7, false) {
        minors_certify(7, sel, MinorMode::Exhaustive { max_order: 7 }).unwrap();
    }
}

#[test]
fn sharp_bound_d7() {
    let b = sharp_bound(7).unwrap();
    assert_eq!(b.bound.t_s, Some(44));
    assert_eq!(b.bound.witnesses.len(), 1176);
    assert_eq!(b.bound.achievable, Achievable::No);
    assert_eq!(b.cross_check_min_total, Some(44));
    let f35 = b.facts.iter().find(|f| f.pattern == [3, 5]).unwrap();
    assert!(f35.holds);
    assert_eq!((f35.min_total, f35.max_total), (50, 50));
}

#[test]
fn support5_pairs_and_triples_d7() {
    let r = support5_triple_search().unwrap();
    assert_eq!(r.pair_witnesses.len(), 28);
    for w in &r.pair_witnesses {
        assert!(w.bases.iter().all(|&b| w.sizes[b] == 5));
    }
    assert_eq!(r.candidates, 56 * 21 * 21 * 21);
    // Six constraints in dimension seven always leave a ray; what the
    // enumeration shows is that such rays have full support elsewhere.
    assert_eq!(r.min_total, Some(50));
}
