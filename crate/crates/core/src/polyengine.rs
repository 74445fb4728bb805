//! Exact univariate polynomials over the rationals and the polynomial
//! recursions `P_π, Q_π` and `P_n, Q_n` whose values at 1 give the even
//! moments of the central limit law.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Polynomial with exact rational coefficients in ascending degree; trailing
/// zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        RatPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn x() -> Self {
        RatPoly::from_ints(&[0, 1])
    }

    /// `(1 - x)^n`.
    pub fn one_minus_x_pow(n: usize) -> Self {
        (0..n).fold(RatPoly::one(), |p, _| p * RatPoly::from_ints(&[1, -1]))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `∫₀ˣ p(t) dt`.
    pub fn integral_from_zero(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(BigRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / rat(k as i64 + 1));
        }
        RatPoly::new(out)
    }

    /// `∫ₓ¹ p(t) dt`.
    pub fn integral_to_one(&self) -> Self {
        let f = self.integral_from_zero();
        RatPoly::constant(f.eval(&BigRational::one())) - f
    }

    /// `∫₀¹ p(t) dt`.
    pub fn integral_unit(&self) -> BigRational {
        self.integral_from_zero().eval(&BigRational::one())
    }
}

impl Zero for RatPoly {
    fn zero() -> Self {
        RatPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RatPoly {
    fn one() -> Self {
        RatPoly::from_ints(&[1])
    }
}

impl Add for RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: RatPoly) -> RatPoly {
        &self + &rhs
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Sub for RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: RatPoly) -> RatPoly {
        self + (-rhs)
    }
}

impl Mul for RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: RatPoly) -> RatPoly {
        &self * &rhs
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct JsonCoeff(#[serde(with = "crate::json::rational")] BigRational);

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<JsonCoeff> = self.coeffs.iter().cloned().map(JsonCoeff).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<JsonCoeff>::deserialize(d)?;
        Ok(RatPoly::new(v.into_iter().map(|c| c.0).collect()))
    }
}

/// `(P_π, Q_π)` for a non-crossing pair partition, by the recursion over the
/// decomposition `π = {1, 2m+2} ∪ π' ∪ π''`.
pub fn p_q_of_partition(pi: &Partition) -> Result<(RatPoly, RatPoly)> {
    match pi.split_first_pair()? {
        None => Ok((RatPoly::one(), RatPoly::one())),
        Some((inner, outer)) => {
            let (p1, q1) = p_q_of_partition(&inner)?;
            let (p2, q2) = p_q_of_partition(&outer)?;
            let q1_tail = q1.integral_to_one();
            let p = (p1.integral_from_zero() + q1_tail.clone()) * p2;
            let q = q1_tail * q2;
            Ok((p, q))
        }
    }
}

/// The constant `q_π` with `Q_π = q_π (1 - x)^{|π|}`.
pub fn q_pi(pi: &Partition) -> Result<BigRational> {
    match pi.split_first_pair()? {
        None => Ok(BigRational::one()),
        Some((inner, outer)) => Ok(q_pi(&inner)? * q_pi(&outer)? / rat(inner.len() as i64 + 1)),
    }
}

/// `q_π (1 - x)^{|π|}`.
pub fn q_pi_closed_form(pi: &Partition) -> Result<RatPoly> {
    Ok(RatPoly::one_minus_x_pow(pi.len()).scale(&q_pi(pi)?))
}

/// `P_0..=P_n` and `Q_0..=Q_n` from the convolution recursions.
#[derive(Debug, Clone)]
pub struct PolyTable {
    pub p: Vec<RatPoly>,
    pub q: Vec<RatPoly>,
}

impl PolyTable {
    pub fn new(n: usize) -> Self {
        let mut p = vec![RatPoly::one()];
        let mut q = vec![RatPoly::one()];
        let mut p_int = Vec::new();
        let mut q_int = Vec::new();
        for k in 0..n {
            p_int.push(p[k].integral_from_zero());
            q_int.push(q[k].integral_to_one());
            let mut pk = RatPoly::zero();
            let mut qk = RatPoly::zero();
            for m in 0..=k {
                pk = pk + &(&p_int[m] + &q_int[m]) * &p[k - m];
                qk = qk + &q_int[m] * &q[k - m];
            }
            p.push(pk);
            q.push(qk);
        }
        PolyTable { p, q }
    }
}

/// `(P_n, Q_n)`.
pub fn pn_qn(n: usize) -> (RatPoly, RatPoly) {
    let mut t = PolyTable::new(n);
    (t.p.swap_remove(n), t.q.swap_remove(n))
}

/// `q_n = 2⁻ⁿ C(2n, n)`.
pub fn arcsine_q(n: usize) -> BigRational {
    let c: BigInt = num_integer::binomial(BigInt::from(2 * n), BigInt::from(n));
    BigRational::new(c, BigInt::from(2).pow(n as u32))
}

/// Even moment of the given order as `P_{order/2}(1)`.
pub fn moment_via_poly(order: usize) -> Result<BigRational> {
    if order % 2 == 1 {
        return Err(Error::OutOfRange(format!(
            "odd order {order}: odd moments vanish"
        )));
    }
    Ok(pn_qn(order / 2).0.eval(&BigRational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_nc_pair;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn part(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn integrals() {
        let one_minus_x = RatPoly::from_ints(&[1, -1]);
        assert_eq!(
            one_minus_x.integral_to_one(),
            RatPoly::one_minus_x_pow(2).scale(&q(1, 2))
        );
        assert_eq!(RatPoly::one().integral_from_zero(), RatPoly::x());
        let p = RatPoly::from_ints(&[3, -2, 5, 7]);
        let expected = q(3, 1) + q(-2, 2) + q(5, 3) + q(7, 4);
        assert_eq!(p.integral_unit(), expected);
    }

    #[test]
    fn arithmetic() {
        let a = RatPoly::from_ints(&[1, 1]);
        let b = RatPoly::from_ints(&[1, -1]);
        assert_eq!(&a * &b, RatPoly::from_ints(&[1, 0, -1]));
        assert_eq!((&a * &b).degree(), Some(2));
        assert_eq!((a.clone() - a).degree(), None);
        assert_eq!(RatPoly::new(vec![q(0, 1), q(0, 1)]), RatPoly::zero());
    }

    #[test]
    fn json_form() {
        let p = RatPoly::new(vec![q(1, 6), q(0, 1), q(1, 2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1,6],[0,1],[1,2]]");
        assert_eq!(serde_json::from_str::<RatPoly>(&s).unwrap(), p);
    }

    #[test]
    fn small_partitions() {
        let (p, qq) = p_q_of_partition(&part(2, &[&[1, 2]])).unwrap();
        assert_eq!(p, RatPoly::one());
        assert_eq!(qq, RatPoly::from_ints(&[1, -1]));
        let (p, _) = p_q_of_partition(&part(4, &[&[1, 4], &[2, 3]])).unwrap();
        assert_eq!(p, RatPoly::new(vec![q(1, 2), q(0, 1), q(1, 2)]));
        let (p, qq) = p_q_of_partition(&part(6, &[&[1, 6], &[2, 5], &[3, 4]])).unwrap();
        assert_eq!(p, RatPoly::new(vec![q(1, 6), q(0, 1), q(1, 2)]));
        assert_eq!(qq, RatPoly::one_minus_x_pow(3).scale(&q(1, 6)));
        assert!(p_q_of_partition(&part(3, &[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn closed_form_q_matches_recursion() {
        for n in 0..=6 {
            for pi in enumerate_nc_pair(2 * n).unwrap() {
                assert_eq!(
                    p_q_of_partition(&pi).unwrap().1,
                    q_pi_closed_form(&pi).unwrap(),
                    "{pi}"
                );
            }
        }
    }

    #[test]
    fn sums_over_partitions() {
        let table = PolyTable::new(6);
        for n in 0..=6 {
            let (mut ps, mut qs) = (RatPoly::zero(), RatPoly::zero());
            for pi in enumerate_nc_pair(2 * n).unwrap() {
                let (p, q) = p_q_of_partition(&pi).unwrap();
                ps = ps + p;
                qs = qs + q;
            }
            assert_eq!(ps, table.p[n], "P_{n}");
            assert_eq!(qs, table.q[n], "Q_{n}");
        }
    }

    #[test]
    fn arcsine_constants() {
        let mut qs = vec![BigRational::one()];
        for n in 0..20 {
            let next = (0..=n)
                .map(|m| &qs[m] * &qs[n - m] / rat(m as i64 + 1))
                .sum();
            qs.push(next);
        }
        for (n, qn) in qs.iter().enumerate() {
            assert_eq!(qn, &arcsine_q(n), "q_{n}");
        }
    }

    #[test]
    fn catalan_bound() {
        let table = PolyTable::new(12);
        for n in 0..=12 {
            let c = crate::partitions::catalan(n);
            for j in 0..=20 {
                let x = q(j, 20);
                let v = table.p[n].eval(&x);
                assert!(v <= BigRational::from_integer(c.into()), "P_{n}({x})");
                assert!(v >= -BigRational::from_integer(c.into()));
            }
        }
    }

    #[test]
    fn degrees() {
        // Regression guard for the observed pattern deg P_n = n once n >= 2.
        let table = PolyTable::new(10);
        assert_eq!(table.p[0].degree(), Some(0));
        assert_eq!(table.p[1].degree(), Some(0));
        for n in 2..=10 {
            assert_eq!(table.p[n].degree(), Some(n), "P_{n}");
            assert_eq!(table.q[n].degree(), Some(n));
        }
    }

    #[test]
    fn moments() {
        assert_eq!(moment_via_poly(0).unwrap(), BigRational::one());
        assert_eq!(moment_via_poly(4).unwrap(), rat(2));
        assert_eq!(moment_via_poly(12).unwrap(), q(55928, 720));
        assert!(moment_via_poly(3).is_err());
    }
}
