use mosaic_core::frontier::{brute_force_front, pareto_gavanelli, saugmencon, FrontStatus};
use mosaic_core::instance::{generate_synthetic, DiscreteInstance, SyntheticConfig};
use mosaic_core::objectives::{evaluate, Objective};
use mosaic_core::preprocess::{assign_clouds, discretize};
use mosaic_core::solver::Budget;

fn instance(images: usize, seed: u64) -> DiscreteInstance {
    // Large footprints overlap heavily, which gives fronts with many points.
    let raw = generate_synthetic(&SyntheticConfig { images, seed, scale: 0.4..=0.9, ..Default::default() }).unwrap();
    let (inst, _) = discretize(&raw).unwrap();
    assign_clouds(&inst, &raw, seed).unwrap().0
}

#[test]
fn algorithms_agree_with_brute_force() {
    for m in [4, 6, 8, 10, 12] {
        for seed in 0..6 {
            let inst = instance(m, seed);
            let oracle = brute_force_front(&inst).unwrap();
            let gav = pareto_gavanelli(&inst, Budget::unlimited());
            let eps = saugmencon(&inst, Objective::Cost, Budget::unlimited());
            assert_eq!(gav.status, FrontStatus::Complete);
            assert_eq!(eps.status, FrontStatus::Complete);
            assert_eq!(gav.vectors(), oracle.vectors(), "gavanelli m={m} seed={seed}");
            assert_eq!(eps.vectors(), oracle.vectors(), "saugmencon m={m} seed={seed}");
            for p in gav.points.iter().chain(&eps.points) {
                assert_eq!(evaluate(&inst, &p.taken).unwrap(), p.objectives);
            }
        }
    }
}

#[test]
fn any_main_objective_gives_the_same_front() {
    let inst = instance(8, 21);
    let oracle = brute_force_front(&inst).unwrap().vectors();
    for main in Objective::ALL {
        assert_eq!(saugmencon(&inst, main, Budget::unlimited()).vectors(), oracle, "main {main:?}");
    }
}
