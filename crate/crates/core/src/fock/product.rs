use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::vector::{prepends, BasisWord, FockOperator, FockVector};
use crate::error::{Error, Result};
use crate::labelings::is_valley;
use crate::moments::space::MatrixScalar;

/// A word `x_1 ⊗ ... ⊗ x_n` in the V-monotone product of the spaces `C^{d_i}`
/// with unit vectors `ξ_i = e_0`. Letter `(alg, b)` is the basis vector `e_b`,
/// `b >= 1`, of algebra `alg`; the algebra sequence is a valley.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ProductWord(Vec<(u64, usize)>);

impl ProductWord {
    pub fn new(letters: Vec<(u64, usize)>) -> Result<Self> {
        if letters.iter().any(|&(_, b)| b == 0) {
            return Err(Error::OutOfRange("basis index 0 is the unit vector".into()));
        }
        let algs: Vec<u64> = letters.iter().map(|l| l.0).collect();
        if !is_valley(&algs) {
            return Err(Error::NotValley);
        }
        Ok(ProductWord(letters))
    }

    pub fn letters(&self) -> &[(u64, usize)] {
        &self.0
    }

    pub fn algebras(&self) -> Vec<u64> {
        self.0.iter().map(|l| l.0).collect()
    }

    /// Whether the word lies in `V_i`: vacuum, head in `i`, or `i ~ word`.
    pub fn in_v(&self, i: u64) -> bool {
        match self.0.first() {
            None => true,
            Some(&(h, _)) if h == i => true,
            Some(_) => prepends(i, &self.algebras()),
        }
    }
}

// `(i, b) ⊗ rest`; callers guarantee the valley condition.
fn cons(i: u64, b: usize, rest: &[(u64, usize)]) -> ProductWord {
    let mut w = Vec::with_capacity(rest.len() + 1);
    w.push((i, b));
    w.extend_from_slice(rest);
    ProductWord(w)
}

impl BasisWord for ProductWord {
    fn vacuum() -> Self {
        ProductWord(Vec::new())
    }
    fn len(&self) -> usize {
        self.0.len()
    }
}

/// The orthogonal projection `U_i` onto `V_i`.
pub fn u_projection<T: MatrixScalar>(i: u64) -> FockOperator<T, ProductWord> {
    FockOperator::from_rule(move |w: &ProductWord| {
        if w.in_v(i) {
            FockVector::basis(w.clone())
        } else {
            FockVector::zero()
        }
    })
}

/// `λ̃_i(T) = U_i λ_i(T) U_i` for a square matrix `T` on `C^d`. Letters of
/// algebra `i` with basis index `>= d` are killed.
pub fn lambda_tilde<T: MatrixScalar>(
    i: u64,
    t: &DMatrix<T>,
) -> Result<FockOperator<T, ProductWord>> {
    if !t.is_square() || t.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not a nonempty square matrix",
            t.nrows(),
            t.ncols()
        )));
    }
    let t = t.clone();
    let d = t.nrows();
    Ok(FockOperator::from_rule(move |w: &ProductWord| {
        let mut out = FockVector::zero();
        let letters = w.letters();
        // column x of T: the scalar part goes to `scalar_word`, the rest creates
        let mut act = |x: usize, scalar_word: ProductWord, rest: &[(u64, usize)]| {
            out.add_term(scalar_word, t[(0, x)].clone());
            for b in 1..d {
                out.add_term(cons(i, b, rest), t[(b, x)].clone());
            }
        };
        match letters.first() {
            None => act(0, ProductWord::vacuum(), letters),
            Some(&(h, x)) if h == i => {
                if x < d {
                    act(x, ProductWord(letters[1..].to_vec()), &letters[1..]);
                }
            }
            Some(_) if w.in_v(i) => act(0, w.clone(), letters),
            Some(_) => {}
        }
        out
    }))
}

/// `φ(a_1 ⋯ a_n)` in the product state, computed as the vacuum expectation of
/// `λ̃_{i_1}(a_1) ⋯ λ̃_{i_n}(a_n)`. Matrices of one algebra must share a size.
pub fn operator_moment<T: MatrixScalar>(seq: &[u64], mats: &[DMatrix<T>]) -> Result<T> {
    if seq.len() != mats.len() {
        return Err(Error::LengthMismatch {
            expected: seq.len(),
            found: mats.len(),
        });
    }
    let mut dims: BTreeMap<u64, usize> = BTreeMap::new();
    for (&alg, m) in seq.iter().zip(mats) {
        let d = *dims.entry(alg).or_insert(m.nrows());
        if d != m.nrows() || !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "algebra {alg}: {}x{} against size {d}",
                m.nrows(),
                m.ncols()
            )));
        }
    }
    let mut v = FockVector::<T, ProductWord>::vacuum();
    for (k, (&alg, m)) in seq.iter().zip(mats).enumerate().rev() {
        v = lambda_tilde(alg, m)?.with_depth(k).apply(&v);
        if v.is_zero() {
            break;
        }
    }
    Ok(v.vacuum_coefficient())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockBasisIndex;
    use crate::moments::{mixed_moment_recursive, MatrixState, StateSpace};
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<Q> {
        DMatrix::from_fn(d, d, |_, _| q(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
    }

    // every product word with letters from algebras 1..=3 (of size dims[alg-1])
    fn words(max_len: usize, dims: &[usize]) -> Vec<ProductWord> {
        let mut out = vec![ProductWord::vacuum()];
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for (a, &d) in dims.iter().enumerate() {
                    for b in 1..d {
                        let mut l = w.letters().to_vec();
                        l.push((a as u64 + 1, b));
                        if let Ok(x) = ProductWord::new(l) {
                            next.push(x);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    #[test]
    fn identity_is_the_projection() {
        let dims = [2, 3, 2];
        for i in 1..=3u64 {
            let id = DMatrix::<Q>::identity(dims[i as usize - 1], dims[i as usize - 1]);
            let lt = lambda_tilde(i, &id).unwrap();
            let u = u_projection::<Q>(i);
            for w in words(4, &dims) {
                assert_eq!(lt.apply_basis(&w), u.apply_basis(&w), "{i} {w:?}");
            }
        }
    }

    #[test]
    fn vacuum_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = random_matrix(&mut rng, 3);
        let v = lambda_tilde(2, &t).unwrap().apply(&FockVector::vacuum());
        assert_eq!(v.vacuum_coefficient(), t[(0, 0)]);
        for b in 1..3 {
            assert_eq!(v.get(&ProductWord::new(vec![(2, b)]).unwrap()), t[(b, 0)]);
        }
        assert_eq!(operator_moment(&[2], &[t.clone()]).unwrap(), t[(0, 0)]);
    }

    #[test]
    fn is_a_representation() {
        // λ̃_i(S) λ̃_i(T) = λ̃_i(ST) on every word
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let dims = [2, 3, 2];
        for i in 1..=3u64 {
            let d = dims[i as usize - 1];
            let (s, t) = (random_matrix(&mut rng, d), random_matrix(&mut rng, d));
            let lhs = lambda_tilde(i, &s)
                .unwrap()
                .compose(&lambda_tilde(i, &t).unwrap());
            let rhs = lambda_tilde(i, &(&s * &t)).unwrap();
            for w in words(3, &dims) {
                assert_eq!(lhs.apply_basis(&w), rhs.apply_basis(&w));
            }
        }
    }

    #[test]
    fn flip_matrix_gives_creation_plus_annihilation() {
        let flip = DMatrix::<Q>::from_row_slice(2, 2, &[Q::zero(), Q::one(), Q::one(), Q::zero()]);
        let dims = [2, 2, 2, 2];
        for i in 1..=4u64 {
            let lt = lambda_tilde(i, &flip).unwrap();
            let omega = FockOperator::<Q>::create(i).plus(&FockOperator::annihilate(i));
            for w in words(4, &dims) {
                let plain = FockBasisIndex::new(w.algebras()).unwrap();
                let expected: Vec<(Vec<u64>, Q)> = omega
                    .apply_basis(&plain)
                    .iter()
                    .map(|(k, c)| (k.letters().to_vec(), c.clone()))
                    .collect();
                let got: Vec<(Vec<u64>, Q)> = lt
                    .apply_basis(&w)
                    .iter()
                    .map(|(k, c)| (k.algebras(), c.clone()))
                    .collect();
                assert_eq!(got, expected, "{i} {w:?}");
            }
        }
    }

    #[test]
    fn agrees_with_recursion() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let st = MatrixState::<Q>::new();
        let dims = [2usize, 3, 2];
        for seq in [
            &[1u64, 2, 1, 2, 1][..],
            &[1, 3, 2, 3, 1],
            &[2, 1, 1, 3, 2],
            &[3, 1, 2, 1, 3, 2],
        ] {
            let mats: Vec<_> = seq
                .iter()
                .map(|&a| random_matrix(&mut rng, dims[a as usize - 1]))
                .collect();
            let rec = mixed_moment_recursive(&st, seq, &mats).unwrap();
            assert_eq!(operator_moment(seq, &mats).unwrap(), rec, "{seq:?}");
        }
    }

    #[test]
    fn centered_non_valley_word_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let st = MatrixState::<Q>::new();
        let seq = [1u64, 3, 2, 1];
        let mats: Vec<_> = seq
            .iter()
            .map(|_| st.center(0, &random_matrix(&mut rng, 3)))
            .collect();
        assert!(operator_moment(&seq, &mats).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_dimensions() {
        let a = DMatrix::<Q>::identity(2, 2);
        let b = DMatrix::<Q>::identity(3, 3);
        assert!(matches!(
            operator_moment(&[1, 1], &[a.clone(), b]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(lambda_tilde(1, &DMatrix::<Q>::zeros(2, 3)).is_err());
        assert!(operator_moment::<Q>(&[1], &[]).is_err());
    }
}
