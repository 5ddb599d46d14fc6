use slick_core::SplitMix64;

/// `n` distinct keys drawn from the splitmix64 stream seeded with `seed`.
pub fn gen_keys(n: usize, seed: u64) -> Vec<u64> {
    SplitMix64::new(seed).take(n).collect()
}
