//! The counts `N_{n,k}` and the even moments of the V-monotone central limit law.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Triangle `N_{n,k}`, `0 <= n <= n_max`, `1 <= k <= n + 1`, built row by row
/// from `N_{0,1} = 1`.
#[derive(Debug, Clone)]
pub struct NkTable {
    rows: Vec<Vec<BigUint>>,
}

impl NkTable {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 0..n_max {
            let row = (1..=n + 2).map(|k| next_entry(&rows, n, k)).collect();
            rows.push(row);
        }
        NkTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&BigUint> {
        if n > self.n_max() || k == 0 || k > n + 1 {
            return Err(Error::OutOfRange(format!("N_{{{n},{k}}}")));
        }
        Ok(&self.rows[n][k - 1])
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }
}

// N_{n+1,k} from rows 0..=n.
fn next_entry(rows: &[Vec<BigUint>], n: usize, k: usize) -> BigUint {
    let nk = |m: usize, r: usize| &rows[m][r - 1];
    let mut total = BigUint::zero();
    for m in 0..=n {
        let lo = (m + k).saturating_sub(n + 1);
        let hi = (k - 1).min(m + 1);
        for l in lo..=hi {
            let c = binomial(BigUint::from(k - 1), BigUint::from(l))
                * binomial(BigUint::from(n + 2 - k), BigUint::from(m + 1 - l));
            if c.is_zero() {
                continue;
            }
            let inner: BigUint = if l == 0 {
                nk(m, 1).clone()
            } else {
                (1..=l).map(|r| nk(m, r)).sum()
            };
            total += c * inner * nk(n - m, k - l);
        }
    }
    total
}

/// `N_{n,k}` for a single pair, building the rows it needs.
pub fn nk_recurrence(n: usize, k: usize) -> Result<BigUint> {
    if k == 0 || k > n + 1 {
        return Err(Error::OutOfRange(format!("N_{{{n},{k}}}")));
    }
    Ok(NkTable::new(n).get(n, k)?.clone())
}

fn factorial(k: usize) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

/// Moment of the given order of the standard V-monotone Gaussian law.
pub fn clt_moment(order: usize) -> BigRational {
    if order % 2 == 1 {
        return BigRational::zero();
    }
    let k = order / 2;
    let table = NkTable::new(k);
    ratio(table.get(k, k + 1).expect("in range"), &factorial(k))
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// One row of the even-moment table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTableEntry {
    pub order: usize,
    /// `N_{k,k+1}` for order `2k`.
    pub numerator: BigUint,
    /// `k!`.
    pub denominator: BigUint,
    pub decimal: f64,
}

impl MomentTableEntry {
    /// Exact value; the stored fraction is not reduced.
    pub fn value(&self) -> BigRational {
        ratio(&self.numerator, &self.denominator)
    }
}

/// Even moments of orders `2, 4, ..., 2 k_max`.
pub fn moment_table(k_max: usize) -> Vec<MomentTableEntry> {
    let table = NkTable::new(k_max);
    (1..=k_max)
        .map(|k| {
            let numerator = table.get(k, k + 1).expect("in range").clone();
            let denominator = factorial(k);
            let decimal = ratio(&numerator, &denominator).to_f64().unwrap_or(f64::NAN);
            MomentTableEntry {
                order: 2 * k,
                numerator,
                denominator,
                decimal,
            }
        })
        .collect()
}

/// Even moments `(2k - 1)!!` of the arcsine law scaled to variance 1, times `k!`,
/// i.e. the numerators for the same denominators `k!`.
pub fn arcsine_numerator(k: usize) -> BigUint {
    (1..=k).map(|j| BigUint::from(2 * j - 1)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let t = NkTable::new(3);
        assert_eq!(t.row(0), &[BigUint::from(1u32)]);
        assert_eq!(t.row(1), &[BigUint::from(1u32), BigUint::from(1u32)]);
        let r2: Vec<u32> = t.row(2).iter().map(|x| x.to_u32().unwrap()).collect();
        assert_eq!(r2, vec![3, 3, 4]);
        let r3: Vec<u32> = t.row(3).iter().map(|x| x.to_u32().unwrap()).collect();
        assert_eq!(r3, vec![15, 15, 20, 28]);
        assert!(t.get(2, 4).is_err());
        assert!(nk_recurrence(3, 0).is_err());
        assert_eq!(nk_recurrence(0, 1).unwrap(), BigUint::one());
    }

    #[test]
    fn first_column_is_double_factorial() {
        let t = NkTable::new(10);
        for n in 0..=10 {
            assert_eq!(t.get(n, 1).unwrap(), &arcsine_numerator(n));
        }
    }

    #[test]
    fn moments() {
        assert_eq!(clt_moment(0), BigRational::one());
        assert_eq!(clt_moment(2), BigRational::one());
        assert_eq!(clt_moment(4), BigRational::from_integer(2.into()));
        assert_eq!(clt_moment(8), BigRational::new(278.into(), 24.into()));
        assert!(clt_moment(7).is_zero());
        let table = moment_table(3);
        assert_eq!(table[2].numerator, BigUint::from(28u32));
        assert_eq!(table[2].value(), BigRational::new(28.into(), 6.into()));
    }
}
