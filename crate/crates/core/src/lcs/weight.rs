use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

/// A disjunct likelihood: an exact rational in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Ratio<u64>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid weight `{0}`: expected a rational in [0, 1] such as 0.8 or 4/5")]
pub struct WeightError(pub String);

impl Weight {
    pub const ONE: Weight = Weight(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Option<Weight> {
        if denom == 0 || numer > denom {
            return None;
        }
        Some(Weight(Ratio::new(numer, denom)))
    }

    pub fn ratio(self) -> Ratio<u64> {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// `1 - self`.
    pub fn complement(self) -> Weight {
        Weight(Ratio::from_integer(1) - self.0)
    }

    pub fn is_one(self) -> bool {
        self.0 == Ratio::from_integer(1)
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeightError(s.to_string());
        let ratio = if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.parse().map_err(|_| bad())?;
            let d: u64 = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ratio::new(n, d)
        } else if let Some((int, frac)) = s.split_once('.') {
            if int.is_empty() && frac.is_empty() {
                return Err(bad());
            }
            if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit())
            {
                return Err(bad());
            }
            if frac.len() > 18 {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let denom = 10u64.pow(frac.len() as u32);
            let frac: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad())?
            };
            let numer = int
                .checked_mul(denom)
                .and_then(|v| v.checked_add(frac))
                .ok_or_else(bad)?;
            Ratio::new(numer, denom)
        } else {
            Ratio::from_integer(s.parse().map_err(|_| bad())?)
        };
        if ratio > Ratio::from_integer(1) {
            return Err(bad());
        }
        Ok(Weight(ratio))
    }
}

impl fmt::Display for Weight {
    /// Terminating decimals print as decimals (`0.8`), everything else as `n/d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        if d == 1 {
            return write!(f, "{n}");
        }
        let mut rest = d;
        let (mut twos, mut fives) = (0u32, 0u32);
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        let places = twos.max(fives);
        if rest != 1 || places > 18 {
            return write!(f, "{n}/{d}");
        }
        let scale = 10u64.pow(places);
        let scaled = n as u128 * (scale / d) as u128;
        let int = scaled / scale as u128;
        let frac = scaled % scale as u128;
        let digits = format!("{frac:0width$}", width = places as usize);
        write!(f, "{int}.{}", digits.trim_end_matches('0'))
    }
}
