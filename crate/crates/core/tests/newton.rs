use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spin7_core::spin7::{quadratic_probe, random_in_ball, ProjectionOptions, ThetaProjector};

/// |F(psi1) - F(psi2)| <= C |psi1 - psi2| (|psi1| + |psi2|) on a small ball,
/// sampled over 1000 random pairs.
#[test]
fn quadratic_estimate_on_random_pairs() {
    let proj = ThetaProjector::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let opts = ProjectionOptions::default();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = random_in_ball(&mut rng, 0.05);
        let b = random_in_ball(&mut rng, 0.05);
        worst = worst.max(quadratic_probe(&proj, &a, &b, opts).unwrap());
    }
    println!("largest ratio over 1000 pairs: {worst:.4}");
    assert!(worst.is_finite() && worst < 5.0, "{worst}");
}
