//! Families of algebras with states, as consumed by the moment engines.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative scalar ring used for moment values.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + 'static
{
}

/// A family of algebras indexed by `u64`, each carrying a state.
///
/// Elements of different algebras share one Rust type; the index passed to
/// each method says which algebra (and hence which unit and state) applies.
pub trait StateSpace {
    type Scalar: Ring;
    type Elem: Clone;

    /// The state of algebra `alg` evaluated at `a`.
    fn phi(&self, alg: u64, a: &Self::Elem) -> Self::Scalar;

    /// Product `a b` inside algebra `alg`.
    fn mul(&self, alg: u64, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `a - s 1_alg`, where `1_alg` is the inner unit of algebra `alg`.
    fn sub_unit(&self, alg: u64, a: &Self::Elem, s: &Self::Scalar) -> Self::Elem;

    /// `a - φ(a) 1_alg`.
    fn center(&self, alg: u64, a: &Self::Elem) -> Self::Elem {
        let s = self.phi(alg, a);
        self.sub_unit(alg, a, &s)
    }
}

/// Matrix algebras with the vector state at the first basis vector. Each
/// element carries its own dimension; units are identity matrices of that size.
#[derive(Debug, Clone, Copy, Default)]
pub struct MatrixState<T>(std::marker::PhantomData<T>);

impl<T> MatrixState<T> {
    pub fn new() -> Self {
        MatrixState(std::marker::PhantomData)
    }
}

/// Bound collecting everything nalgebra needs for dense products over `T`.
pub trait MatrixScalar:
    Ring
    + nalgebra::Scalar
    + nalgebra::ClosedAddAssign
    + nalgebra::ClosedMulAssign
    + nalgebra::ClosedSubAssign
{
}

impl<T> MatrixScalar for T where
    T: Ring
        + nalgebra::Scalar
        + nalgebra::ClosedAddAssign
        + nalgebra::ClosedMulAssign
        + nalgebra::ClosedSubAssign
{
}

impl<T: MatrixScalar> StateSpace for MatrixState<T> {
    type Scalar = T;
    type Elem = DMatrix<T>;

    fn phi(&self, _alg: u64, a: &DMatrix<T>) -> T {
        a[(0, 0)].clone()
    }

    fn mul(&self, _alg: u64, a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
        a * b
    }

    fn sub_unit(&self, _alg: u64, a: &DMatrix<T>, s: &T) -> DMatrix<T> {
        let mut out = a.clone();
        for k in 0..out.nrows() {
            out[(k, k)] -= s.clone();
        }
        out
    }
}

/// Exact rational matrix state.
pub type RationalMatrixState = MatrixState<BigRational>;

/// Projection onto the orthogonal complement of the state vector.
pub fn p_perp<T: MatrixScalar>(dim: usize) -> DMatrix<T> {
    let mut p = DMatrix::<T>::identity(dim, dim);
    p[(0, 0)] = T::zero();
    p
}
