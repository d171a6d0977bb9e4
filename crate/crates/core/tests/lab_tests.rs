use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmlab::channels::sample_distinct_points;
use rmlab::lab::{
    run_bec_experiment, run_bsc_experiment, run_expected_size_experiment, run_experiment,
    run_rank_experiment, trial_rng, wilson95, write_json_lines, DegreeSpec, ExperimentConfig, Mode,
    Report, Sampling, SizeSpec,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn cfg(mode: Mode, m: usize, r: usize, k: usize, trials: usize) -> ExperimentConfig {
    ExperimentConfig::new(mode, m, DegreeSpec::R(r), Some(SizeSpec::K(k)))
        .with_trials(trials)
        .with_seed(99)
}

fn json(report: Report) -> String {
    let mut buf = Vec::new();
    write_json_lines(&mut buf, &[report]).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn thread_count_does_not_change_output() {
    for c in [
        cfg(Mode::Rank, 7, 2, 25, 300),
        cfg(Mode::Bsc, 8, 1, 4, 100),
        cfg(Mode::Closure, 6, 2, 10, 100),
    ] {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| {
                let run = run_experiment(&c).unwrap();
                (run.records, json(Report::Experiment(run.summary)))
            })
        };
        assert_eq!(run(1), run(4));
    }
}

#[test]
fn rank_bec_and_expected_size_share_trials() {
    for (m, r, k) in [(6, 2, 18), (7, 1, 6), (8, 3, 70)] {
        let rank = run_rank_experiment(&cfg(Mode::Rank, m, r, k, 400)).unwrap();
        let bec = run_bec_experiment(&cfg(Mode::Bec, m, r, k, 400)).unwrap();
        let es = run_expected_size_experiment(&cfg(Mode::ExpectedSize, m, r, k, 400)).unwrap();
        let bits =
            |rs: &[rmlab::lab::TrialRecord]| rs.iter().map(|t| t.success).collect::<Vec<_>>();
        assert_eq!(bits(&rank.records), bits(&bec.records));
        assert_eq!(bits(&rank.records), bits(&es.records));
        assert_eq!(rank.summary.violations + bec.summary.violations, 0);
    }
}

#[test]
fn distinct_pairs_always_full_rank() {
    let run = run_rank_experiment(&cfg(Mode::Rank, 2, 1, 2, 2000)).unwrap();
    assert_eq!(run.summary.success_rate, 1.0);
}

#[test]
fn with_replacement_pairs_collide_a_quarter_of_the_time() {
    let c = cfg(Mode::Rank, 2, 1, 2, 10_000).with_sampling(Sampling::WithReplacement);
    let s = run_rank_experiment(&c).unwrap().summary;
    // Two uniform draws from 4 points coincide with probability 1/4.
    let (lo, hi) = s.wilson95;
    assert!(lo <= 0.75 && 0.75 <= hi, "{lo} {hi}");
}

#[test]
fn collisions_only_hurt() {
    for m in [3, 5, 8] {
        let k = m + 1;
        let distinct = run_rank_experiment(&cfg(Mode::Rank, m, 1, k, 3000))
            .unwrap()
            .summary;
        let repl = run_rank_experiment(
            &cfg(Mode::Rank, m, 1, k, 3000).with_sampling(Sampling::WithReplacement),
        )
        .unwrap()
        .summary;
        assert!(repl.success_rate <= distinct.success_rate, "m={m}");
    }
}

#[test]
fn trivial_sizes() {
    assert_eq!(
        run_bec_experiment(&cfg(Mode::Bec, 6, 2, 1, 200))
            .unwrap()
            .summary
            .success_rate,
        1.0
    );
    assert_eq!(
        run_bsc_experiment(&cfg(Mode::Bsc, 6, 1, 0, 50))
            .unwrap()
            .summary
            .success_rate,
        1.0
    );
    let es = run_expected_size_experiment(&cfg(Mode::ExpectedSize, 5, 2, 0, 50))
        .unwrap()
        .summary;
    let stats = es.expected_size_mc.unwrap();
    assert_eq!(stats.mc_mean, 1.0);
    assert_eq!(stats.exact, Some(1.0));
}

#[test]
fn bsc_records_predicates() {
    let s = run_bsc_experiment(
        &ExperimentConfig::new(Mode::Bsc, 9, DegreeSpec::R(1), Some(SizeSpec::Epsilon(0.5)))
            .with_trials(300),
    )
    .unwrap()
    .summary;
    assert_eq!(s.violations, 0);
    let stats = s.bsc.unwrap();
    assert!(stats.both_predicates_rate <= stats.independence_rate);
    assert!(s.success_rate >= stats.both_predicates_rate);
}

#[test]
fn sampled_points_are_uniform() {
    // First coordinate of each K-sample, and the K = 1 case, binned over 16 points.
    let critical = ChiSquared::new(15.0).unwrap().inverse_cdf(0.999);
    for k in [1usize, 5] {
        let mut counts = [0f64; 16];
        let draws = 32_000;
        for t in 0..draws {
            let mut rng = trial_rng(7, t);
            counts[sample_distinct_points(4, k, &mut rng).unwrap()[0] as usize] += 1.0;
        }
        let expected = draws as f64 / 16.0;
        let chi2: f64 = counts
            .iter()
            .map(|c| (c - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < critical, "K={k}: chi2 {chi2} >= {critical}");
    }
}

#[test]
fn trial_streams_are_independent_of_each_other() {
    let mut a = trial_rng(1, 0);
    let mut b = trial_rng(1, 1);
    let x: Vec<u32> = sample_distinct_points(16, 8, &mut a).unwrap();
    let y: Vec<u32> = sample_distinct_points(16, 8, &mut b).unwrap();
    assert_ne!(x, y);
    let mut again = trial_rng(1, 0);
    assert_eq!(sample_distinct_points(16, 8, &mut again).unwrap(), x);
    let _ = ChaCha8Rng::seed_from_u64(0);
}

#[test]
fn wilson_contains_truth_for_most_seeds() {
    // Bernoulli(0.3) batches of 200; coverage should be near 95%.
    use rand::Rng;
    let mut covered = 0;
    for seed in 0..400 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = (0..200).filter(|_| rng.gen_bool(0.3)).count();
        let (lo, hi) = wilson95(s, 200);
        covered += (lo <= 0.3 && 0.3 <= hi) as usize;
    }
    assert!(covered >= 360, "{covered}/400");
}
