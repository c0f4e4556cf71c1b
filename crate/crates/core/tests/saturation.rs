use mub_core::search::{saturation_search, SaturationOptions};
use mub_core::Error;

fn run(d: u32, symmetry: bool, prefilter: bool) -> mub_core::search::SearchReport {
    let opts = SaturationOptions {
        symmetry,
        prefilter,
        ..Default::default()
    };
    saturation_search(d, &opts).unwrap()
}

#[test]
fn no_three_half_supports_d5_d7() {
    for d in [5, 7] {
        for sym in [true, false] {
            for pre in [true, false] {
                let r = run(d, sym, pre);
                assert!(r.complete);
                assert_eq!(r.hit_count, 0, "d={d} sym={sym} pre={pre}");
                assert!(r.pair_stats.iter().all(|p| p.max_half_bases == 2));
            }
        }
    }
}

#[test]
fn symmetry_and_prefilter_agree_on_pair_stats() {
    let d = 7;
    let plain = run(d, false, false);
    let reduced = run(d, true, false);
    let fast = run(d, true, true);
    for ((a, b), c) in plain.pair_stats.iter().zip(&reduced.pair_stats).zip(&fast.pair_stats) {
        assert_eq!(a.max_half_bases, b.max_half_bases);
        assert_eq!(a.max_half_bases, c.max_half_bases);
        assert_eq!(a.min_total, b.min_total);
        assert_eq!(c.min_total, None);
    }
    assert_eq!(plain.candidates, 8 * 7 * 35 * 35);
    assert_eq!(reduced.candidates, 8 * 7 * 5 * 35);
    assert_eq!(plain.exact_solves, plain.candidates);
    assert!(fast.exact_solves < fast.candidates / 10);
}

#[test]
fn interrupted_run_resumes_to_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.json");
    let base = SaturationOptions {
        checkpoint: Some(path.clone()),
        batch_size: 7,
        ..Default::default()
    };
    let partial = saturation_search(7, &SaturationOptions { stop_after: Some(100), ..base.clone() }).unwrap();
    assert!(!partial.complete);
    assert_eq!(partial.completed_items, 100);
    let resumed = saturation_search(7, &base).unwrap();
    assert!(resumed.complete);
    let fresh = run(7, true, true);
    assert_eq!(resumed.candidates, fresh.candidates);
    assert_eq!(resumed.pair_stats, fresh.pair_stats);
    assert_eq!(resumed.exact_solves, fresh.exact_solves);
}

#[test]
fn mismatched_checkpoint_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.json");
    let opts = SaturationOptions {
        checkpoint: Some(path.clone()),
        stop_after: Some(3),
        ..Default::default()
    };
    saturation_search(5, &opts).unwrap();
    let err = saturation_search(7, &opts).unwrap_err();
    assert!(matches!(err, Error::Resume(_)));
    assert_eq!(err.exit_code(), 4);
    let flipped = SaturationOptions { prefilter: false, ..opts.clone() };
    assert!(matches!(saturation_search(5, &flipped), Err(Error::Resume(_))));
    std::fs::write(&path, "{ not json").unwrap();
    assert!(matches!(saturation_search(5, &opts), Err(Error::Resume(_))));
}

#[test]
fn no_three_half_supports_d11() {
    let r = run(11, true, true);
    assert!(r.complete);
    assert_eq!(r.hit_count, 0);
}

#[test]
#[ignore = "about four minutes on one core"]
fn no_three_half_supports_d13() {
    let r = run(13, true, true);
    assert!(r.complete);
    assert_eq!(r.hit_count, 0);
}
