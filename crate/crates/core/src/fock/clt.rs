use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::vector::{FockBasisIndex, FockOperator, FockVector};
use crate::error::{Error, Result};
use crate::moments::clt_moment;
use crate::partitions::Partition;

/// `Σ_{i ≤ N} a_i`, i.e. `√N a(N)`.
pub fn creation_sum<T: crate::moments::Ring>(n: u64) -> FockOperator<T> {
    FockOperator::from_rule(move |w: &FockBasisIndex| {
        FockVector::from_terms((1..=n).filter_map(|i| w.prepend(i)).map(|x| (x, T::one())))
    })
}

/// `Σ_{i ≤ N} a_i*`, i.e. `√N a*(N)`.
pub fn annihilation_sum<T: crate::moments::Ring>(n: u64) -> FockOperator<T> {
    FockOperator::from_rule(move |w: &FockBasisIndex| match w.head() {
        Some(h) if h <= n => FockVector::basis(w.tail()),
        _ => FockVector::zero(),
    })
}

/// `√N ω(N)`.
pub fn omega_sum<T: crate::moments::Ring>(n: u64) -> FockOperator<T> {
    creation_sum(n).plus(&annihilation_sum(n))
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("N must be at least 1".into()));
    }
    Ok(())
}

fn n_pow(n: u64, e: usize) -> BigInt {
    Pow::pow(BigInt::from(n), e)
}

/// `φ(ω(N)^k)` by applying `ω(N)` word by word to the vacuum. Cost grows like
/// `N^{k/2}`; meant for small `N`.
pub fn omega_n_moment_sparse(n: u64, k: usize) -> Result<BigRational> {
    check_n(n)?;
    if k % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let op = omega_sum::<BigInt>(n);
    let mut v = FockVector::<BigInt>::vacuum();
    for left in (0..k).rev() {
        v = op.apply(&v);
        v.truncate(left);
    }
    Ok(BigRational::new(v.vacuum_coefficient(), n_pow(n, k / 2)))
}

// Diagonal form of an `a_π(N)`-type operator scaled by `N^{|π|}`: on a word with
// first letter `j` it multiplies by `p[j-1]` if the word is increasing and by
// `q[j-1]` otherwise. Index `N` (letter `N+1`) stands for the vacuum.
#[derive(Clone)]
struct Diagonal {
    p: Vec<BigInt>,
    q: Vec<BigInt>,
}

impl Diagonal {
    fn identity(n: usize) -> Self {
        Diagonal {
            p: vec![BigInt::one(); n + 1],
            q: vec![BigInt::one(); n + 1],
        }
    }

    fn zero(n: usize) -> Self {
        Diagonal {
            p: vec![BigInt::zero(); n + 1],
            q: vec![BigInt::zero(); n + 1],
        }
    }

    // The pair factor of `a* X a` for diagonal `X`, as (increasing, other):
    // a letter `i < j` can only be created in front of an increasing word.
    fn wrap(x: &Diagonal, n: usize) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut below = BigInt::zero();
        let total_q: BigInt = x.q[..n].iter().sum();
        let mut above = total_q;
        let mut inc = Vec::with_capacity(n + 1);
        let mut other = Vec::with_capacity(n + 1);
        for j in 0..=n {
            if j < n {
                above -= &x.q[j];
            }
            inc.push(&below + &above);
            other.push(above.clone());
            if j < n {
                below += &x.p[j];
            }
        }
        (inc, other)
    }

    fn join(inner: &Diagonal, outer: &Diagonal, n: usize) -> Diagonal {
        let (inc, other) = Diagonal::wrap(inner, n);
        Diagonal {
            p: inc.iter().zip(&outer.p).map(|(a, b)| a * b).collect(),
            q: other.iter().zip(&outer.q).map(|(a, b)| a * b).collect(),
        }
    }

    fn add_assign(&mut self, other: &Diagonal) {
        for (a, b) in self.p.iter_mut().zip(&other.p) {
            *a += b;
        }
        for (a, b) in self.q.iter_mut().zip(&other.q) {
            *a += b;
        }
    }
}

/// `φ(ω(N)^k)`, exact. Uses the diagonal action of the summed `a_π(N)` on
/// words, which depends only on the first letter and on whether the word is
/// increasing; the cost is `O(k² N)`.
pub fn omega_n_moment(n: u64, k: usize) -> Result<BigRational> {
    check_n(n)?;
    if k % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let size = usize::try_from(n).map_err(|_| Error::OutOfRange("N too large".into()))?;
    let half = k / 2;
    let mut sums: Vec<Diagonal> = vec![Diagonal::identity(size)];
    for m in 0..half {
        let mut next = Diagonal::zero(size);
        for a in 0..=m {
            next.add_assign(&Diagonal::join(&sums[a], &sums[m - a], size));
        }
        sums.push(next);
    }
    Ok(BigRational::new(sums[half].p[size].clone(), n_pow(n, half)))
}

fn diagonal_of(pi: &Partition, n: usize) -> Result<Diagonal> {
    match pi.split_first_pair()? {
        None => Ok(Diagonal::identity(n)),
        Some((inner, outer)) => Ok(Diagonal::join(
            &diagonal_of(&inner, n)?,
            &diagonal_of(&outer, n)?,
            n,
        )),
    }
}

/// `φ(a_π(N))` for a non-crossing pair partition, exact.
pub fn a_pi_moment(pi: &Partition, n: u64) -> Result<BigRational> {
    check_n(n)?;
    let size = usize::try_from(n).map_err(|_| Error::OutOfRange("N too large".into()))?;
    let d = diagonal_of(pi, size)?;
    Ok(BigRational::new(d.p[size].clone(), n_pow(n, pi.len())))
}

/// `N^{|π|} a_π(N)` built from the decomposition `a*(N) a_{π'}(N) a(N) a_{π''}(N)`.
pub fn a_pi_operator(pi: &Partition, n: u64) -> Result<FockOperator<BigInt>> {
    check_n(n)?;
    match pi.split_first_pair()? {
        None => Ok(FockOperator::identity()),
        Some((inner, outer)) => {
            let inner = a_pi_operator(&inner, n)?;
            let outer = a_pi_operator(&outer, n)?;
            Ok(annihilation_sum(n)
                .compose(&inner)
                .compose(&creation_sum(n))
                .compose(&outer))
        }
    }
}

/// A letter of a lattice word: `a` (written `1`) or `a*` (written `*`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Epsilon {
    #[serde(rename = "1")]
    Create,
    #[serde(rename = "*")]
    Annihilate,
}

impl Epsilon {
    pub fn sign(self) -> i64 {
        match self {
            Epsilon::Create => -1,
            Epsilon::Annihilate => 1,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Create => "1",
            Epsilon::Annihilate => "*",
        })
    }
}

/// The word `ε` with `a_π = a^{ε_1} ⋯ a^{ε_{2n}}`: `*` at the left leg of each
/// pair, `1` at the right leg.
pub fn epsilon_word(pi: &Partition) -> Result<Vec<Epsilon>> {
    if !pi.is_pair_partition() {
        return Err(Error::NotPairPartition);
    }
    if !pi.is_non_crossing() {
        return Err(Error::Crossing);
    }
    let mut eps = vec![Epsilon::Create; pi.n()];
    for b in pi.blocks() {
        eps[b[0] - 1] = Epsilon::Annihilate;
    }
    Ok(eps)
}

/// Inverse of [`epsilon_word`]. The word must have nonnegative partial sign
/// sums and total zero.
pub fn partition_from_epsilon(eps: &[Epsilon]) -> Result<Partition> {
    let mut open = Vec::new();
    let mut blocks = Vec::with_capacity(eps.len() / 2);
    for (p, e) in eps.iter().enumerate() {
        match e {
            Epsilon::Annihilate => open.push(p + 1),
            Epsilon::Create => {
                let l = open.pop().ok_or_else(|| {
                    Error::InvalidPartition(format!("negative prefix sum at {}", p + 1))
                })?;
                blocks.push(vec![l, p + 1]);
            }
        }
    }
    if !open.is_empty() {
        return Err(Error::InvalidPartition("sign sum is not zero".into()));
    }
    Partition::new(eps.len(), blocks)
}

/// One line of a convergence scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub order: usize,
    pub value: f64,
    pub error: f64,
    /// Log-log slope of the error against the previous `N` of the scan.
    pub slope: Option<f64>,
}

/// `φ(ω(N)^order)` and its distance to the limit moment for every pair.
pub fn convergence_scan(ns: &[u64], orders: &[usize]) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(ns.len() * orders.len());
    for &order in orders {
        let limit = clt_moment(order);
        let mut prev: Option<(u64, f64)> = None;
        for &n in ns {
            let value = omega_n_moment(n, order)?;
            let error = (&value - &limit).abs().to_f64().unwrap_or(f64::NAN);
            let slope = prev.and_then(|(n0, e0)| {
                (e0 > 0.0 && error > 0.0)
                    .then(|| (error.ln() - e0.ln()) / ((n as f64).ln() - (n0 as f64).ln()))
            });
            rows.push(ConvergenceRow {
                n,
                order,
                value: value.to_f64().unwrap_or(f64::NAN),
                error,
                slope,
            });
            prev = Some((n, error));
        }
    }
    Ok(rows)
}

/// Least-squares `α` in `error ≈ C N^{-α}`; `None` with fewer than two points
/// or a vanishing error.
pub fn fit_decay_exponent(points: &[(u64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(_, e)| !(e > 0.0)) {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, e)| e.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Some(-sxy / sxx)
}
