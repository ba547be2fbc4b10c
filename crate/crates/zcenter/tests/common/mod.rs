#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zcenter::center::CenterCategory;
use zcenter::halfbraid::CenterObject;
use zcenter::Category;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Toric-code label of a simple of Z(Vec_Z2), read off from the carrier, the half-braiding with g,
/// and the twist.
pub fn toric_label(cat: &Category, z: &CenterObject) -> &'static str {
    let charge = cat.beta_character(z, 1).re < 0.0;
    if z.carrier.mult[0] == 1 {
        if charge {
            "e"
        } else {
            "1"
        }
    } else if cat.twist(z).re < 0.0 {
        "f"
    } else {
        "m"
    }
}

/// Sorted toric labels of the summands of an object of Z(Vec_Z2).
pub fn toric_labels(cat: &Category, z: &CenterCategory, summands: &[usize]) -> Vec<&'static str> {
    let mut v: Vec<&'static str> = summands.iter().map(|&j| toric_label(cat, &z.simples[j].obj)).collect();
    v.sort();
    v
}
