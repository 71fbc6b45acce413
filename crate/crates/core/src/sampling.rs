//! Seeded random draws for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::accessory::{is_admissible, AccessoryChart};
use crate::df::DFParams;
use crate::error::{Error, Result};
use crate::exact::{rat, Scalar};
use crate::hg::HGParams;

/// Bound on numerators and denominators of drawn rationals.
pub const MAX_HEIGHT: i64 = 50;
/// Attempts before a rejection loop gives up.
pub const MAX_ATTEMPTS: usize = 10_000;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Derived sampler for an independent stream, so suites do not shift
    /// each other's draws.
    pub fn substream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn rational(&mut self) -> Scalar {
        let num = self.rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT);
        let den = self.rng.gen_range(1..=MAX_HEIGHT);
        rat(num, den)
    }

    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let x = self.rational();
            if x != rat(0, 1) {
                return x;
            }
        }
    }

    pub fn unit_f64(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Draws until `accept` returns `Ok`, giving up after [`MAX_ATTEMPTS`].
    pub fn until<T>(&mut self, what: &str, mut draw: impl FnMut(&mut Self) -> Result<T>) -> Result<T> {
        for _ in 0..MAX_ATTEMPTS {
            if let Ok(v) = draw(self) {
                return Ok(v);
            }
        }
        Err(Error::InvalidInput(format!(
            "no acceptable {what} after {MAX_ATTEMPTS} draws"
        )))
    }

    pub fn generic_params(&mut self) -> HGParams {
        HGParams::generic(
            self.rational(),
            self.rational(),
            self.rational(),
            self.rational(),
            self.rational(),
            self.rational(),
        )
    }

    pub fn okubo_params(&mut self) -> HGParams {
        HGParams::okubo(self.rational(), self.rational(), self.rational(), self.rational())
    }

    pub fn admissible_exponents(&mut self) -> Result<[Scalar; 4]> {
        self.until("exponents", |s| {
            let e = [s.rational(), s.rational(), s.rational(), s.rational()];
            if is_admissible(&e[0], &e[1], &e[2], &e[3]) {
                Ok(e)
            } else {
                Err(Error::InvalidInput(String::new()))
            }
        })
    }

    /// An admissible chart with `r1, r2, r3` drawn and `r4` solved from the
    /// determinant condition.
    pub fn chart(&mut self) -> Result<AccessoryChart> {
        self.until("chart", |s| {
            let [a, b, c, d] = s.admissible_exponents()?;
            let chart = AccessoryChart::complete_r4(a, b, c, d, [s.rational(), s.rational(), s.rational()])?;
            chart.validate()?;
            Ok(chart)
        })
    }

    pub fn df_params(&mut self) -> DFParams {
        DFParams::new(self.rational(), self.rational(), self.rational(), self.rational())
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Signed;

    use super::*;

    #[test]
    fn reproducible() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..20 {
            assert_eq!(a.rational(), b.rational());
        }
        assert_ne!(Sampler::substream(7, 1).rational(), Sampler::substream(7, 2).rational());
    }

    #[test]
    fn heights_are_bounded() {
        let mut s = Sampler::new(1);
        for _ in 0..500 {
            let x = s.rational();
            assert!(x.numer().abs() <= MAX_HEIGHT.into() && *x.denom() <= MAX_HEIGHT.into());
        }
    }

    #[test]
    fn charts_validate() {
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            assert!(s.chart().unwrap().validate().is_ok());
        }
    }
}
