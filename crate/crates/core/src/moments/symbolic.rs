//! Formal moments: polynomials in variables `x_B` standing for `φ(a_B)`, and
//! an algebra of formal products of the original letters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::space::StateSpace;

/// Variable `x_B` for the leg word `B` (positions in the order they multiply).
pub type Var = Vec<usize>;

/// A monomial: sorted multiset of variables.
pub type Monomial = Vec<Var>;

/// Sparse polynomial with integer coefficients in subset-indexed variables.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

/// One term of a [`SymPoly`] in its JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub vars: Vec<Var>,
    #[serde(with = "crate::json::big_int")]
    pub coeff: BigInt,
}

impl SymPoly {
    /// The variable `x_word`; the empty word gives the constant 1.
    pub fn var(word: &[usize]) -> Self {
        if word.is_empty() {
            return SymPoly::one();
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![word.to_vec()], BigInt::one());
        SymPoly { terms }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        SymPoly { terms }
    }

    /// `coeff · Π x_B` from a list of leg words.
    pub fn monomial(coeff: impl Into<BigInt>, vars: &[&[usize]]) -> Self {
        let mut m: Monomial = vars.iter().map(|v| v.to_vec()).collect();
        m.sort();
        let mut terms = BTreeMap::new();
        let c = coeff.into();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SymPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(m, c)| Term {
                vars: m.clone(),
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn from_terms(terms: &[Term]) -> Self {
        terms.iter().fold(SymPoly::zero(), |acc, t| {
            let vars: Vec<&[usize]> = t.vars.iter().map(Vec::as_slice).collect();
            acc + SymPoly::monomial(t.coeff.clone(), &vars)
        })
    }

    /// Every leg word appearing in some variable.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flatten().cloned().collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Substitutes numeric values for the variables.
    pub fn eval<T, F>(&self, value: F) -> T
    where
        T: Clone + Zero + One + Add<Output = T> + Mul<Output = T> + From<BigInt>,
        F: Fn(&[usize]) -> T,
    {
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let prod = m.iter().fold(T::from(c.clone()), |p, v| p * value(v));
            acc + prod
        })
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() || m.is_empty() {
                write!(f, "{mag}")?;
            }
            for (j, v) in m.iter().enumerate() {
                if j > 0 || !mag.is_one() {
                    write!(f, " ")?;
                }
                let idx: Vec<String> = v.iter().map(usize::to_string).collect();
                write!(
                    f,
                    "x{}",
                    idx.join(if v.iter().any(|&p| p > 9) { "," } else { "" })
                )?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Zero for SymPoly {
    fn zero() -> Self {
        SymPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymPoly {
    fn one() -> Self {
        SymPoly::constant(1)
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(mut self, rhs: SymPoly) -> SymPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(mut self) -> SymPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: SymPoly) -> SymPoly {
        self + (-rhs)
    }
}

impl Mul for SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m: Monomial = m1.iter().chain(m2).cloned().collect();
                m.sort();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

/// An element of the formal algebra generated by the letters: a combination
/// of leg words with [`SymPoly`] coefficients. The empty word is the unit.
pub type SymElem = BTreeMap<Var, SymPoly>;

/// The letter at position `p`, as a formal element.
pub fn letter(p: usize) -> SymElem {
    let mut e = SymElem::new();
    e.insert(vec![p], SymPoly::one());
    e
}

/// Formal states: `φ(a_B) = x_B` for every leg word `B`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymbolicState;

fn accumulate(out: &mut SymElem, w: Var, c: SymPoly) {
    let slot = out.entry(w.clone()).or_default();
    *slot = std::mem::take(slot) + c;
    if slot.is_zero() {
        out.remove(&w);
    }
}

impl StateSpace for SymbolicState {
    type Scalar = SymPoly;
    type Elem = SymElem;

    fn phi(&self, _alg: u64, a: &SymElem) -> SymPoly {
        a.iter().fold(SymPoly::zero(), |acc, (w, c)| {
            acc + c.clone() * SymPoly::var(w)
        })
    }

    fn mul(&self, _alg: u64, a: &SymElem, b: &SymElem) -> SymElem {
        let mut out = SymElem::new();
        for (w1, c1) in a {
            for (w2, c2) in b {
                let w: Var = w1.iter().chain(w2).copied().collect();
                accumulate(&mut out, w, c1.clone() * c2.clone());
            }
        }
        out
    }

    fn sub_unit(&self, _alg: u64, a: &SymElem, s: &SymPoly) -> SymElem {
        let mut out = a.clone();
        accumulate(&mut out, Vec::new(), -s.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = SymPoly::var(&[1]);
        let y = SymPoly::var(&[2, 4]);
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let expected =
            SymPoly::monomial(1, &[&[1], &[1]]) - SymPoly::monomial(1, &[&[2, 4], &[2, 4]]);
        assert_eq!(p, expected);
        assert!((x.clone() - x).is_zero());
        assert_eq!(SymPoly::var(&[]), SymPoly::one());
    }

    #[test]
    fn display_and_terms() {
        let w = SymPoly::monomial(1, &[&[1, 3, 5], &[2], &[4]]) - SymPoly::monomial(2, &[&[1]]);
        assert_eq!(w.to_string(), "-2 x1 + x135 x2 x4");
        assert_eq!(SymPoly::from_terms(&w.to_terms()), w);
        let json = serde_json::to_string(&w.to_terms()[1]).unwrap();
        assert_eq!(json, r#"{"vars":[[1,3,5],[2],[4]],"coeff":1}"#);
    }

    #[test]
    fn formal_state() {
        let s = SymbolicState;
        let a = letter(1);
        let b = letter(3);
        let ab = s.mul(1, &a, &b);
        assert_eq!(s.phi(1, &ab), SymPoly::var(&[1, 3]));
        let a0 = s.center(1, &a);
        assert!(s.phi(1, &a0).is_zero());
        let a0b = s.mul(1, &a0, &b);
        assert_eq!(
            s.phi(1, &a0b),
            SymPoly::var(&[1, 3]) - SymPoly::var(&[1]) * SymPoly::var(&[3])
        );
    }
}
