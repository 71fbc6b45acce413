//! Half-sums of signed parameters, indexed by four signs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{rat, Scalar};

use super::params::HGParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Plus, Sign::Minus, Sign::Zero];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }
}

/// Signs applied, in order, to `alpha1, alpha2, beta1, beta2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LambdaIndex(pub [Sign; 4]);

impl LambdaIndex {
    pub fn flipped(self) -> LambdaIndex {
        LambdaIndex(self.0.map(Sign::flip))
    }

    /// All 81 sign combinations.
    pub fn all() -> impl Iterator<Item = LambdaIndex> {
        Sign::ALL.into_iter().flat_map(|s0| {
            Sign::ALL.into_iter().flat_map(move |s1| {
                Sign::ALL.into_iter().flat_map(move |s2| {
                    Sign::ALL
                        .into_iter()
                        .map(move |s3| LambdaIndex([s0, s1, s2, s3]))
                })
            })
        })
    }
}

impl FromStr for LambdaIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs: Vec<Sign> = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                '0' => Ok(Sign::Zero),
                _ => Err(Error::Parse(format!("bad sign {c:?} in lambda index {s:?}"))),
            })
            .collect::<Result<_>>()?;
        let signs: [Sign; 4] = signs
            .try_into()
            .map_err(|_| Error::Parse(format!("lambda index {s:?} needs four signs")))?;
        Ok(LambdaIndex(signs))
    }
}

impl fmt::Display for LambdaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

/// `(s1 alpha1 + s2 alpha2 + s3 beta1 + s4 beta2) / 2`
pub fn lambda(idx: LambdaIndex, p: &HGParams) -> Scalar {
    let params = [&p.alpha1, &p.alpha2, &p.beta1, &p.beta2];
    let sum: Scalar = idx
        .0
        .iter()
        .zip(params)
        .map(|(s, x)| x * Scalar::from_integer(s.factor().into()))
        .sum();
    sum * rat(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> HGParams {
        HGParams::okubo(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11))
    }

    #[test]
    fn full_plus_index() {
        let p = sample();
        let expected = (rat(1, 3) + rat(1, 7) + rat(1, 5) + rat(1, 11)) * rat(1, 2);
        assert_eq!(lambda("++++".parse().unwrap(), &p), expected);
        assert_eq!(lambda("----".parse().unwrap(), &p), -expected);
    }

    #[test]
    fn single_term() {
        assert_eq!(lambda("+000".parse().unwrap(), &sample()), rat(1, 6));
    }

    #[test]
    fn sign_symmetry_for_every_index() {
        let p = sample();
        let all: Vec<_> = LambdaIndex::all().collect();
        assert_eq!(all.len(), 81);
        for idx in all {
            assert_eq!(lambda(idx.flipped(), &p), -lambda(idx, &p), "{idx}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("++x+".parse::<LambdaIndex>().is_err());
        assert!("+++".parse::<LambdaIndex>().is_err());
        assert_eq!("+-0+".parse::<LambdaIndex>().unwrap().to_string(), "+-0+");
    }
}
