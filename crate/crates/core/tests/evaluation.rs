mod common;

use std::collections::BTreeSet;

use common::*;
use foci::data::{generate_synthetic, Question, SyntheticSpec, UserId};
use foci::eval::{
    average_precision_at_k, baseline_random, evaluate, ndcg_at_k, reciprocal_rank, sweep,
    FociRanker, QAInstance, RandomRanker, DEFAULT_ALPHAS, DEFAULT_BETAS,
};
use foci::rank::{RankedList, SimilarityMetric};
use foci::solver::{fit, HyperParams};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn small_instance(seed: u64) -> QAInstance {
    let inst = generate_synthetic(&SyntheticSpec {
        communities: 3,
        users_per_community: 6,
        p_in: 0.6,
        words_per_topic: 6,
        questions_per_topic: 2,
        seed,
        ..SyntheticSpec::default()
    })
    .unwrap();
    QAInstance::new(inst.network, inst.content, inst.vocab, inst.questions).unwrap()
}

fn list_of(order: &[usize]) -> RankedList {
    RankedList::from_scores(order.iter().enumerate().map(|(i, &u)| (UserId(u), -(i as f64))))
}

#[test]
fn random_positions_average_to_the_middle() {
    let list = baseline_random(10, 100_000, 42).unwrap();
    for e in list.entries() {
        assert!((-e.score - 5.5).abs() < 0.1, "{e:?}");
    }
}

#[test]
fn random_baseline_is_seeded() {
    assert_eq!(baseline_random(12, 5, 1).unwrap(), baseline_random(12, 5, 1).unwrap());
    assert_ne!(baseline_random(12, 1, 1).unwrap(), baseline_random(12, 1, 2).unwrap());
    assert!(baseline_random(0, 5, 1).is_err());
}

#[test]
fn evaluation_ignores_question_order() {
    let qa = small_instance(3);
    let h = HyperParams { k: 3, max_iters: 50, ..HyperParams::default() };
    let (f, _) = fit(&qa.content, &qa.network, &h, None).unwrap();
    let ranker = FociRanker { factors: &f, vocab: &qa.vocab, metric: SimilarityMetric::Cosine };
    let a = evaluate("m", &qa, &ranker, 5).unwrap();
    let mut shuffled = qa.clone();
    shuffled.questions.reverse();
    shuffled.questions.shuffle(&mut rng(1));
    assert_eq!(evaluate("m", &shuffled, &ranker, 5).unwrap(), a);
    let random = RandomRanker { m: qa.num_connections(), trials: 10, seed: 4 };
    assert_eq!(
        evaluate("r", &qa, &random, 5).unwrap(),
        evaluate("r", &shuffled, &random, 5).unwrap()
    );
}

#[test]
fn one_by_one_sweep_equals_direct_evaluation() {
    let qa = small_instance(5);
    let h = HyperParams { alpha: 0.5, beta: 2.0, k: 3, max_iters: 40, ..HyperParams::default() };
    let grid = sweep(&qa, &[0.5], &[2.0], &h, SimilarityMetric::Pcc, 5, 1).unwrap();
    assert_eq!(grid.cells.len(), 1);
    let (f, _) = fit(&qa.content, &qa.network, &h, None).unwrap();
    let ranker = FociRanker { factors: &f, vocab: &qa.vocab, metric: SimilarityMetric::Pcc };
    let direct = evaluate(&grid.method, &qa, &ranker, 5).unwrap();
    let cell = grid.cells[0].metrics.as_ref().unwrap();
    assert_eq!((cell.mrr, cell.map_at_k, cell.ndcg_at_k), (direct.mrr, direct.map_at_k, direct.ndcg_at_k));
}

#[test]
fn default_grid_has_twelve_cells_and_parallelism_does_not_change_it() {
    let qa = small_instance(6);
    let h = HyperParams { k: 2, max_iters: 20, ..HyperParams::default() };
    let serial = sweep(&qa, &DEFAULT_ALPHAS, &DEFAULT_BETAS, &h, SimilarityMetric::Euclidean, 5, 1).unwrap();
    let parallel = sweep(&qa, &DEFAULT_ALPHAS, &DEFAULT_BETAS, &h, SimilarityMetric::Euclidean, 5, 3).unwrap();
    assert_eq!(serial.cells.len(), 12);
    assert_eq!(serial, parallel);
    for cell in &serial.cells {
        assert!(cell.metrics.is_some(), "{cell:?}");
    }
    let json = serde_json::to_value(&serial).unwrap();
    let cell = &json["cells"][0];
    for key in ["alpha", "beta", "metrics"] {
        assert!(cell.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn failing_cells_are_recorded_not_fatal() {
    let qa = small_instance(7);
    let h = HyperParams { k: 2, max_iters: 10, ..HyperParams::default() };
    let grid = sweep(&qa, &[0.0, 1.0], &[0.0, 1.0], &h, SimilarityMetric::Cosine, 5, 1).unwrap();
    let dead = grid.cell(0.0, 0.0).unwrap();
    assert!(dead.metrics.is_none() && dead.error.is_some());
    assert!(grid.cell(1.0, 1.0).unwrap().metrics.is_some());
}

#[test]
fn single_candidate_instance_scores_perfectly_for_every_method() {
    let counts = [(UserId(0), [("w".to_string(), 1u64)].into()), (UserId(1), [("w".to_string(), 2u64)].into())]
        .into_iter()
        .collect();
    let (s, vocab) = foci::data::build_user_word_matrix(2, &counts, 1).unwrap();
    let n = foci::data::load_ego_network(2, &[(UserId(1), UserId(0))]).unwrap();
    let q = Question::new("q", vec!["w".into()], [UserId(1)]);
    let qa = QAInstance::new(n, s, vocab, vec![q]).unwrap();
    let h = HyperParams { k: 2, max_iters: 10, ..HyperParams::default() };
    let (f, _) = fit(&qa.content, &qa.network, &h, None).unwrap();
    let model = FociRanker { factors: &f, vocab: &qa.vocab, metric: SimilarityMetric::Euclidean };
    let reports = [
        evaluate("model", &qa, &model, 5).unwrap(),
        evaluate("random", &qa, &RandomRanker { m: 1, trials: 100, seed: 0 }, 5).unwrap(),
    ];
    for r in reports {
        assert_eq!((r.mrr, r.map_at_k, r.ndcg_at_k), (1.0, 1.0, 1.0));
    }
}

#[test]
fn metric_worked_examples() {
    let order = [5, 2, 9, 4, 3, 1, 7];
    let list = list_of(&order);
    let acc = |v: &[usize]| v.iter().map(|&u| UserId(u)).collect::<BTreeSet<_>>();
    assert_eq!(reciprocal_rank(&list, &acc(&[5])).unwrap(), 1.0);
    assert_eq!(reciprocal_rank(&list, &acc(&[4])).unwrap(), 0.25);
    assert_eq!(reciprocal_rank(&list, &acc(&[3, 2])).unwrap(), 0.5);
    assert_eq!(average_precision_at_k(&list, &acc(&[2]), 5).unwrap(), 0.5);
    assert_eq!(average_precision_at_k(&list, &acc(&[5, 2]), 5).unwrap(), 1.0);
    assert_eq!(average_precision_at_k(&list, &acc(&[2, 4]), 5).unwrap(), 0.5);
    assert_eq!(ndcg_at_k(&list, &acc(&[5]), 5).unwrap(), 1.0);
    assert!((ndcg_at_k(&list, &acc(&[2]), 5).unwrap() - 1.0 / 3f64.log2()).abs() < 1e-15);
    assert_eq!(ndcg_at_k(&list, &acc(&[1, 7]), 5).unwrap(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn metrics_lie_in_unit_interval(
        order in (1usize..30).prop_flat_map(|m| Just((1..=m).collect::<Vec<_>>()).prop_shuffle()),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6),
        k in 1usize..10,
    ) {
        let list = list_of(&order);
        let accepted: BTreeSet<UserId> = picks.iter().map(|i| UserId(order[i.index(order.len())])).collect();
        for v in [
            reciprocal_rank(&list, &accepted).unwrap(),
            average_precision_at_k(&list, &accepted, k).unwrap(),
            ndcg_at_k(&list, &accepted, k).unwrap(),
        ] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        let top = accepted.contains(&UserId(order[0]));
        prop_assert_eq!(reciprocal_rank(&list, &accepted).unwrap() == 1.0, top);
    }
}

#[test]
fn harmonic_expectation_of_random_reciprocal_rank() {
    let mut total = 0.0;
    for q in 0..2000u64 {
        let list = baseline_random(10, 20, q).unwrap();
        total += reciprocal_rank(&list, &BTreeSet::from([UserId(1 + (q as usize % 10))])).unwrap();
    }
    let mrr = total / 2000.0;
    assert!((mrr - harmonic(10) / 10.0).abs() < 0.03, "{mrr}");
}
