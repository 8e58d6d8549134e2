//! Seeded random inputs for the verification batteries.

use eigenspace_core::eigen::{is_generic, Weight};
use eigenspace_core::linalg;
use eigenspace_core::{Cyclotomic, GroupElement, ReflectionGroup};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_611;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// a/b with |a| ≤ 12 and 1 ≤ b ≤ 5.
pub fn rational(rng: &mut impl Rng) -> Cyclotomic {
    Cyclotomic::from_fraction(rng.gen_range(-12..=12), rng.gen_range(1..=5))
}

pub fn translation(rng: &mut impl Rng, n: usize) -> Vec<Cyclotomic> {
    (0..n).map(|_| rational(rng)).collect()
}

/// n random translations that span ℝⁿ.
pub fn spanning_translations(rng: &mut impl Rng, n: usize) -> Vec<Vec<Cyclotomic>> {
    loop {
        let ys: Vec<Vec<Cyclotomic>> = (0..n).map(|_| translation(rng, n)).collect();
        if linalg::rank(&ys) == n {
            return ys;
        }
    }
}

pub fn group_element(rng: &mut impl Rng, group: &ReflectionGroup) -> GroupElement {
    GroupElement {
        translation: translation(rng, group.dimension()),
        rotation: rng.gen_range(0..group.order()),
    }
}

pub fn model_coordinates(rng: &mut impl Rng, len: usize) -> Vec<Cyclotomic> {
    (0..len).map(|_| rational(rng)).collect()
}

/// i·(q₁, …, q_n) with random rationals, redrawn until generic.
pub fn generic_weight(rng: &mut impl Rng, group: &ReflectionGroup) -> Weight {
    let i = Cyclotomic::i();
    loop {
        let lambda = (0..group.dimension()).map(|_| i.mul(&rational(rng))).collect();
        let w = Weight::new(lambda).expect("imaginary entries");
        if is_generic(group, &w) {
            return w;
        }
    }
}

/// i·(w + s·w) for a random pseudo-reflection s and random integer w;
/// fixed by s, hence never generic. None if the group has no reflections.
pub fn fixed_weight(rng: &mut impl Rng, group: &ReflectionGroup) -> Option<Weight> {
    let reflections: Vec<usize> = (0..group.order())
        .filter(|&k| group.pseudo_reflection_flags()[k])
        .collect();
    if reflections.is_empty() {
        return None;
    }
    let s = reflections[rng.gen_range(0..reflections.len())];
    let w: Vec<i64> = (0..group.dimension()).map(|_| rng.gen_range(-9..=9)).collect();
    Some(Weight::fixed_by(group, s, &w))
}

/// One sample per rotation plus a few extra, all with random translations.
pub fn dual_samples(rng: &mut impl Rng, group: &ReflectionGroup) -> Vec<GroupElement> {
    let n = group.dimension();
    let mut out: Vec<GroupElement> = (0..group.order())
        .map(|k| GroupElement {
            translation: translation(rng, n),
            rotation: k,
        })
        .collect();
    out.extend((0..4).map(|_| group_element(rng, group)));
    out
}
