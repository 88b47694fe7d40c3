use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
fn main() {
    for seed in 0u64..5 {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let l: Vec<f64> = (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect();
        println!("seed {} lambda {:?}", seed, l);
    }
}
