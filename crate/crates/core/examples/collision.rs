//! Total collision area through the quadtree, checked against the plain
//! double sum over all ordered pairs.

use chartgen::geometry::Rect;
use chartgen::metrics::total_collision_area_of;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_force(rects: &[Rect]) -> f64 {
    let mut total = 0.0;
    for (i, a) in rects.iter().enumerate() {
        for (j, b) in rects.iter().enumerate() {
            if i != j {
                total += a.overlap_area(b);
            }
        }
    }
    total
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [10, 100, 500] {
        let rects: Vec<Rect> = (0..n)
            .map(|_| {
                Rect::new(
                    rng.random_range(0.0..800.0f64).round(),
                    rng.random_range(0.0..600.0f64).round(),
                    rng.random_range(1.0..60.0f64).round(),
                    rng.random_range(1.0..30.0f64).round(),
                )
            })
            .collect();
        let fast = total_collision_area_of(&rects);
        let slow = brute_force(&rects);
        println!("{n:>4} boxes: quadtree {fast:.1} px², brute force {slow:.1} px², equal: {}", fast == slow);
    }
}
