use std::collections::BTreeMap;
use std::fmt::Debug;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::labelings::is_valley;
use crate::moments::Ring;

/// Keys of a sparse Fock vector. The empty word is the vacuum.
pub trait BasisWord: Ord + Clone + Debug {
    fn vacuum() -> Self;
    fn len(&self) -> usize;
    fn is_vacuum(&self) -> bool {
        self.len() == 0
    }
}

/// A valley word `(i_1, ..., i_n)`, standing for `e_{i_1} ⊗ ... ⊗ e_{i_n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FockBasisIndex(Vec<u64>);

impl FockBasisIndex {
    pub fn new(word: Vec<u64>) -> Result<Self> {
        if !is_valley(&word) {
            return Err(Error::NotValley);
        }
        Ok(FockBasisIndex(word))
    }

    pub fn letters(&self) -> &[u64] {
        &self.0
    }

    pub fn head(&self) -> Option<u64> {
        self.0.first().copied()
    }

    /// `(i, word)`, if that is still a valley.
    pub fn prepend(&self, i: u64) -> Option<Self> {
        prepends(i, &self.0).then(|| {
            let mut w = Vec::with_capacity(self.0.len() + 1);
            w.push(i);
            w.extend_from_slice(&self.0);
            FockBasisIndex(w)
        })
    }

    pub fn tail(&self) -> Self {
        FockBasisIndex(self.0.get(1..).unwrap_or_default().to_vec())
    }

    /// Whether the word is strictly increasing (its pivot is the first letter).
    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl BasisWord for FockBasisIndex {
    fn vacuum() -> Self {
        FockBasisIndex(Vec::new())
    }
    fn len(&self) -> usize {
        self.0.len()
    }
}

// (i, seq) is a valley, for a valley `seq`.
pub(crate) fn prepends(i: u64, seq: &[u64]) -> bool {
    match seq.first() {
        None => true,
        Some(&h) if i > h => true,
        Some(&h) if i < h => seq.windows(2).all(|w| w[0] < w[1]),
        _ => false,
    }
}

/// Finitely supported vector; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T, K = FockBasisIndex> {
    coeffs: BTreeMap<K, T>,
}

impl<T: Ring, K: BasisWord> Default for FockVector<T, K> {
    fn default() -> Self {
        FockVector {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<T: Ring, K: BasisWord> FockVector<T, K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut v = Self::zero();
        v.add_term(k, T::one());
        v
    }

    pub fn vacuum() -> Self {
        Self::basis(K::vacuum())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, T)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, k: K, c: T) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &T) {
        for (k, v) in &other.coeffs {
            self.add_term(k.clone(), c.clone() * v.clone());
        }
    }

    pub fn get(&self, k: &K) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `⟨v, Ω⟩`.
    pub fn vacuum_coefficient(&self) -> T {
        self.get(&K::vacuum())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &T)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Longest word in the support.
    pub fn depth(&self) -> usize {
        self.coeffs.keys().map(K::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(k, v)| (k.clone(), c.clone() * v.clone())),
        )
    }

    pub fn truncate(&mut self, depth: usize) {
        self.coeffs.retain(|k, _| k.len() <= depth);
    }

    /// Real inner product.
    pub fn inner(&self, other: &Self) -> T {
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .coeffs
            .iter()
            .filter_map(|(k, a)| big.coeffs.get(k).map(|b| a.clone() * b.clone()))
            .fold(T::zero(), |acc, x| acc + x)
    }

    pub fn norm_sq(&self) -> T {
        self.inner(self)
    }
}

impl<T: Ring, K: BasisWord> std::ops::Add for FockVector<T, K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.coeffs {
            self.add_term(k, c);
        }
        self
    }
}

impl<T: Ring, K: BasisWord> std::ops::Sub for FockVector<T, K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.coeffs {
            self.add_term(k, -c);
        }
        self
    }
}

type Rule<T, K> = Rc<dyn Fn(&K) -> FockVector<T, K>>;

/// A linear map given by its action on basis words. An optional depth bound
/// drops every word longer than the bound from the output.
#[derive(Clone)]
pub struct FockOperator<T, K = FockBasisIndex> {
    rule: Rule<T, K>,
    depth: Option<usize>,
}

impl<T: Ring, K: BasisWord + 'static> FockOperator<T, K> {
    pub fn from_rule(rule: impl Fn(&K) -> FockVector<T, K> + 'static) -> Self {
        FockOperator {
            rule: Rc::new(rule),
            depth: None,
        }
    }

    pub fn identity() -> Self {
        Self::from_rule(|k| FockVector::basis(k.clone()))
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }

    pub fn depth(&self) -> Option<usize> {
        self.depth
    }

    pub fn apply_basis(&self, k: &K) -> FockVector<T, K> {
        let mut out = (self.rule)(k);
        if let Some(d) = self.depth {
            out.truncate(d);
        }
        out
    }

    pub fn apply(&self, v: &FockVector<T, K>) -> FockVector<T, K> {
        let mut out = FockVector::zero();
        for (k, c) in v.iter() {
            out.add_scaled(&self.apply_basis(k), c);
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let depth = match (a.depth, b.depth) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        FockOperator {
            rule: Rc::new(move |k| a.apply(&b.apply_basis(k))),
            depth,
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Self::from_rule(move |k| a.apply_basis(k) + b.apply_basis(k))
    }

    pub fn scaled(&self, c: T) -> Self {
        let a = self.clone();
        Self::from_rule(move |k| a.apply_basis(k).scale(&c))
    }

    /// `⟨T Ω, Ω⟩`.
    pub fn vacuum_expectation(&self) -> T {
        self.apply_basis(&K::vacuum()).vacuum_coefficient()
    }
}

impl<T: Ring> FockOperator<T> {
    /// `a_i`: prepends `i` when the result is still a valley, else kills.
    pub fn create(i: u64) -> Self {
        Self::from_rule(move |w: &FockBasisIndex| match w.prepend(i) {
            Some(x) => FockVector::basis(x),
            None => FockVector::zero(),
        })
    }

    /// `a_i*`: removes a head letter equal to `i`, else kills.
    pub fn annihilate(i: u64) -> Self {
        Self::from_rule(move |w: &FockBasisIndex| {
            if w.head() == Some(i) {
                FockVector::basis(w.tail())
            } else {
                FockVector::zero()
            }
        })
    }
}
