use coincidence::montecarlo::{
    simulate_alt_likelihood, simulate_frequentist, simulate_weighted_draw, SimConfig,
};
use coincidence_core::bayesian::{
    alt_name_likelihood, PersonWeight, TombInscriptions, Weight, WeightTable,
};
use coincidence_core::frequentist::{
    evaluate_scenario, AnchorSpec, FreqScenario, TargetSetSpec, TombPopulation,
};
use coincidence_core::rational::{ratio, to_f64};
use coincidence_core::sample::RosterDraw;
use coincidence_core::{Gender, NameRecord, Onomasticon, RatioModel};

fn abc() -> [Weight; 3] {
    [ratio(2, 1), ratio(1, 1), ratio(1, 1)].map(Weight::Finite)
}

fn ab() -> RosterDraw {
    RosterDraw {
        persons: vec![0, 1],
        others: 0,
    }
}

fn onomasticon() -> Onomasticon {
    Onomasticon::new(
        100,
        50,
        vec![
            NameRecord::new("jesus", Gender::Male, 10),
            NameRecord::new("joseph", Gender::Male, 30),
            NameRecord::new("mariam", Gender::Female, 20),
        ],
    )
    .unwrap()
}

#[test]
fn two_of_three_matches_five_twelfths() {
    let cfg = SimConfig::new(200_000, 1);
    let map = simulate_weighted_draw(&abc(), &ratio(0, 1), 2, &cfg).unwrap();
    assert!(map[&ab()].agrees_with(5.0 / 12.0, 3.0));
    let total: u64 = map.values().map(|e| e.hits).sum();
    assert_eq!(total, cfg.trials);
}

#[test]
fn forced_member_in_every_draw() {
    let w = [
        Weight::Finite(ratio(1, 1)),
        Weight::Infinite,
        Weight::Finite(ratio(5, 1)),
    ];
    let map = simulate_weighted_draw(&w, &ratio(2, 1), 3, &SimConfig::new(20_000, 9)).unwrap();
    assert!(map.keys().all(|d| d.persons.contains(&1)));
}

#[test]
fn same_seed_same_estimate() {
    let cfg = SimConfig::new(30_000, 77);
    let a = simulate_weighted_draw(&abc(), &ratio(1, 1), 2, &cfg).unwrap();
    let b = simulate_weighted_draw(&abc(), &ratio(1, 1), 2, &cfg.with_batch_size(333)).unwrap();
    assert_eq!(a, b);
    let c = simulate_weighted_draw(&abc(), &ratio(1, 1), 2, &SimConfig::new(30_000, 78)).unwrap();
    assert_ne!(a, c);
}

#[test]
fn coverage_over_independent_seeds() {
    let inside = (0..100u64)
        .filter(|&seed| {
            let est = simulate_weighted_draw(&abc(), &ratio(0, 1), 2, &SimConfig::new(5_000, seed))
                .unwrap()[&ab()];
            (est.point - 5.0 / 12.0).abs() <= 2.0 * est.standard_error
        })
        .count();
    assert!(inside >= 90, "{inside} of 100 within 2 SE");
}

fn scenario(target: TargetSetSpec, tombs: usize) -> FreqScenario {
    FreqScenario {
        target,
        ratio: RatioModel::Equal,
        anchor: AnchorSpec::single("jesus"),
        population: TombPopulation::uniform(tombs, 6).unwrap(),
    }
}

#[test]
fn frequentist_estimate_near_exact() {
    let o = onomasticon();
    let s = scenario(
        TargetSetSpec::new(
            "s",
            [("joseph", Gender::Male), ("mariam", Gender::Female)],
            3,
        )
        .unwrap(),
        20,
    );
    let exact = to_f64(&evaluate_scenario(&o, &s).unwrap().p_value);
    let est = simulate_frequentist(&o, &s, &SimConfig::new(200_000, 4));
    assert!(est.agrees_with(exact, 3.0), "{est:?} vs {exact}");
}

#[test]
fn empty_target_set_never_interesting() {
    let o = onomasticon();
    let empty = scenario(TargetSetSpec::new::<_, &str>("none", [], 3).unwrap(), 50);
    assert_eq!(
        simulate_frequentist(&o, &empty, &SimConfig::new(10_000, 2)).point,
        0.0
    );
}

#[test]
fn alternative_likelihood_cases() {
    let o = onomasticon();
    let cfg = SimConfig::new(200_000, 12);

    let forced = WeightTable::new(
        "forced",
        vec![
            PersonWeight::new("j", Gender::Male, "jesus", Weight::Infinite),
            PersonWeight::new("m", Gender::Female, "mariam", Weight::Infinite),
        ],
        ratio(0, 1),
        ratio(0, 1),
    )
    .unwrap();
    let insc = TombInscriptions::new(&["jesus"], &["mariam"]);
    assert_eq!(simulate_alt_likelihood(&insc, &forced, &o, &cfg).point, 1.0);

    // person drawn, or an other who happens to bear the name
    let branch = WeightTable::new(
        "branch",
        vec![PersonWeight::new(
            "p",
            Gender::Male,
            "joseph",
            Weight::Finite(ratio(2, 1)),
        )],
        ratio(3, 1),
        ratio(0, 1),
    )
    .unwrap();
    let one = TombInscriptions::new(&["joseph"], &[] as &[&str]);
    let exact = alt_name_likelihood(&one, &branch, &o).unwrap();
    assert_eq!(exact, ratio(2, 5) + ratio(3, 5) * ratio(30, 100));
    assert!(simulate_alt_likelihood(&one, &branch, &o, &cfg).agrees_with(to_f64(&exact), 3.0));

    let impossible = TombInscriptions::new(&["nobody"], &[] as &[&str]);
    assert!(alt_name_likelihood(&impossible, &branch, &o).unwrap() == ratio(0, 1));
    assert_eq!(
        simulate_alt_likelihood(&impossible, &branch, &o, &cfg).point,
        0.0
    );
}
