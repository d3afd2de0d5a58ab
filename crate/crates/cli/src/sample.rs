//! Seeded random inputs for sweeps and property suites.

use miquel_core::{Point, Triangle, Vertex};
use rand::Rng;

/// Smallest interior angle accepted for random triangles, in radians (2°).
pub const MIN_ANGLE: f64 = 0.035;

/// A triangle at a random scale and position with all angles at least `MIN_ANGLE`.
pub fn triangle<R: Rng>(rng: &mut R) -> Triangle {
    loop {
        let scale = 10f64.powf(rng.random_range(-1.0..2.0));
        let offset = Point::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)) * scale;
        let mut v = || offset + Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale;
        let (a, b, c) = (v(), v(), v());
        if let Ok(t) = Triangle::new(a, b, c) {
            if Vertex::ALL.iter().all(|&x| t.angle(x) >= MIN_ANGLE) {
                return t;
            }
        }
    }
}

pub fn vertex<R: Rng>(rng: &mut R) -> Vertex {
    Vertex::ALL[rng.random_range(0..3)]
}

/// Uniform point in the square of half-width `1.5 R` about the circumcentre.
pub fn point_near<R: Rng>(rng: &mut R, tri: &Triangle) -> Point {
    let c = tri.circumcircle();
    let h = 1.5 * c.radius;
    c.center + Point::new(rng.random_range(-h..h), rng.random_range(-h..h))
}
