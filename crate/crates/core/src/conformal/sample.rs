//! Random rational test data for the group: points, Spin(n) elements and
//! cell elements with known factors.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::GnFactors;
use crate::clifford::{Multivector, Signature};
use crate::scalar::{rational, Rational};

/// A small random rational `p/q` with `|p| <= 9`, `1 <= q <= 6`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    rational(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn random_point<R: Rng>(n: usize, rng: &mut R) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// A rational point on the unit sphere of `R^n`, by inverse stereographic
/// projection from `R^(n-1)`.
pub fn rational_unit_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<Rational> {
    if n == 1 {
        return vec![if rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() }];
    }
    let t = random_point(n - 1, rng);
    let t2 = t.iter().fold(Rational::zero(), |acc, c| acc + c * c);
    let denom = &t2 + Rational::one();
    let mut out: Vec<Rational> = t.iter().map(|c| rational(2, 1) * c / &denom).collect();
    out.push((t2 - Rational::one()) / denom);
    out
}

/// A nonzero point with rational length, returned with that length.
pub fn rational_length_point<R: Rng>(n: usize, rng: &mut R) -> (Vec<Rational>, Rational) {
    let u = rational_unit_vector(n, rng);
    let mut len = small_rational(rng).abs();
    if len.is_zero() {
        len = rational(7, 3);
    }
    (u.iter().map(|c| c * &len).collect(), len)
}

/// A product of two or four rational unit vectors: an element of Spin(n).
pub fn random_spin<R: Rng>(n: usize, rng: &mut R) -> Multivector<Rational> {
    let sig = Signature::euclidean(n);
    let count = if rng.gen_bool(0.5) { 2 } else { 4 };
    (0..count).fold(Multivector::one(sig), |acc, _| &acc * &Multivector::vector(sig, &rational_unit_vector(n, rng)))
}

/// Random factors `nbar_v m a(r) n_u` with rational entries.
pub fn random_factors<R: Rng>(n: usize, rng: &mut R) -> GnFactors<Rational> {
    let r = rational(rng.gen_range(1..=9), rng.gen_range(1..=9));
    GnFactors { v: random_point(n, rng), m: random_spin(n, rng), r, u: random_point(n, rng) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_have_the_promised_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            let u = rational_unit_vector(n, &mut rng);
            assert_eq!(u.iter().fold(Rational::zero(), |acc, c| acc + c * c), Rational::one());
            let m = random_spin(n, &mut rng);
            assert_eq!(&m * &m.alpha(), Multivector::one(Signature::euclidean(n)));
        }
    }
}
