use grid_rearrange::grid::{GridSpec, Instance, validate_plan};
use grid_rearrange::solvers::{solve_grm, GrmVariant, MatchingMode};
use rand::prelude::*;
fn main() {
    for (m1, m2) in [(12, 9), (18, 12), (30, 30)] {
        let mut worst2 = 0; let mut worst4 = 0;
        let t0 = std::time::Instant::now();
        for seed in 0..20u64 {
            let grid = GridSpec::open_2d(m1, m2);
            let starts = grid.free_vertices();
            let mut goals = starts.clone();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            goals.shuffle(&mut rng);
            let inst = Instance::new(grid, starts, goals).unwrap();
            let (p2, _) = solve_grm(&inst, GrmVariant::Block2, MatchingMode::Hall).unwrap();
            let (p4, _) = solve_grm(&inst, GrmVariant::Block4, MatchingMode::Hall).unwrap();
            assert!(validate_plan(&inst.grid, &inst, &p2).is_valid());
            assert!(validate_plan(&inst.grid, &inst, &p4).is_valid());
            worst2 = worst2.max(p2.makespan());
            worst4 = worst4.max(p4.makespan());
        }
        let b2 = 7 * (m1 + 2 * m2) as usize + 24;
        let b4 = 4 * (m1 + 2 * m2) as usize + 24;
        println!("{m1}x{m2}: block2 worst {worst2} / bound {b2} | block4 worst {worst4} / bound {b4} | 40 solves in {:?}", t0.elapsed());
    }
}
