//! κ* functionals, the mixed-moment recursion, and the combinatorial formula
//! over labeled non-crossing partitions.

use num_traits::{One, Zero};

use super::space::StateSpace;
use super::symbolic::{letter, SymPoly, SymbolicState};
use crate::error::{Error, Result};
use crate::labelings::{cutoff, enumerate_adapted_free, enumerate_adapted_v};
use crate::partitions::LabeledPartition;

/// `κ*_n(a_1, ..., a_n)` with all arguments in algebra `alg`.
pub fn kappa_star<S: StateSpace>(space: &S, alg: u64, args: &[S::Elem]) -> Result<S::Scalar> {
    if args.is_empty() {
        return Err(Error::Empty);
    }
    Ok(kappa_rec(space, alg, args.to_vec()))
}

fn kappa_rec<S: StateSpace>(space: &S, alg: u64, args: Vec<S::Elem>) -> S::Scalar {
    if args.len() == 1 {
        return space.phi(alg, &args[0]);
    }
    let head = space.phi(alg, &args[0]);
    let tail = kappa_rec(space, alg, args[1..].to_vec());
    let mut merged = Vec::with_capacity(args.len() - 1);
    merged.push(space.mul(alg, &args[0], &args[1]));
    merged.extend(args[2..].iter().cloned());
    kappa_rec(space, alg, merged) - head * tail
}

/// `κ*_π = Π_B κ*_{|B|}(a_B)`, each block evaluated in the algebra named by
/// its label.
pub fn kappa_star_partition<S: StateSpace>(
    space: &S,
    lp: &LabeledPartition,
    args: &[S::Elem],
) -> Result<S::Scalar> {
    let n = lp.partition().n();
    if args.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: args.len(),
        });
    }
    let mut prod = S::Scalar::one();
    for (block, &label) in lp.partition().blocks().iter().zip(lp.labels()) {
        let a: Vec<S::Elem> = block.iter().map(|&leg| args[leg - 1].clone()).collect();
        prod = prod * kappa_rec(space, label, a);
    }
    Ok(prod)
}

fn check_len<E>(seq: &[u64], args: &[E]) -> Result<()> {
    if seq.len() != args.len() {
        return Err(Error::LengthMismatch {
            expected: seq.len(),
            found: args.len(),
        });
    }
    Ok(())
}

/// `φ(a_1 ⋯ a_n)` for V-monotone independent algebras, by the recursion
/// `Σ_{k ≤ r} φ(a_k) φ(a_1⁰ ⋯ a_{k-1}⁰ a_{k+1} ⋯ a_n)` with `r` the cutoff.
/// Neighbors from the same algebra are multiplied together first.
pub fn mixed_moment_recursive<S: StateSpace>(
    space: &S,
    seq: &[u64],
    args: &[S::Elem],
) -> Result<S::Scalar> {
    check_len(seq, args)?;
    let letters: Vec<(u64, S::Elem)> = seq.iter().copied().zip(args.iter().cloned()).collect();
    Ok(recurse(space, letters))
}

fn merge_neighbors<S: StateSpace>(space: &S, letters: Vec<(u64, S::Elem)>) -> Vec<(u64, S::Elem)> {
    let mut out: Vec<(u64, S::Elem)> = Vec::with_capacity(letters.len());
    for (alg, e) in letters {
        match out.last_mut() {
            Some((last, prev)) if *last == alg => *prev = space.mul(alg, prev, &e),
            _ => out.push((alg, e)),
        }
    }
    out
}

fn recurse<S: StateSpace>(space: &S, letters: Vec<(u64, S::Elem)>) -> S::Scalar {
    let letters = merge_neighbors(space, letters);
    match letters.len() {
        0 => return S::Scalar::one(),
        1 => return space.phi(letters[0].0, &letters[0].1),
        _ => {}
    }
    let algs: Vec<u64> = letters.iter().map(|(a, _)| *a).collect();
    let r = cutoff(&algs).expect("neighbors merged");
    let mut total = S::Scalar::zero();
    let mut centered: Vec<(u64, S::Elem)> = Vec::with_capacity(r);
    for k in 0..r {
        let (alg, e) = &letters[k];
        let weight = space.phi(*alg, e);
        if !weight.is_zero() {
            let rest: Vec<(u64, S::Elem)> = centered
                .iter()
                .cloned()
                .chain(letters[k + 1..].iter().cloned())
                .collect();
            total = total + weight.clone() * recurse(space, rest);
        }
        centered.push((*alg, space.sub_unit(*alg, e, &weight)));
    }
    total
}

/// `φ(a_1 ⋯ a_n)` as the sum of `κ*_π` over `V(i_1, ..., i_n)`.
pub fn mixed_moment_combinatorial<S: StateSpace>(
    space: &S,
    seq: &[u64],
    args: &[S::Elem],
) -> Result<S::Scalar> {
    check_len(seq, args)?;
    sum_kappa(space, &enumerate_adapted_v(seq), args)
}

/// The analogous sum over free labelings, which yields free-product moments.
pub fn free_moment_combinatorial<S: StateSpace>(
    space: &S,
    seq: &[u64],
    args: &[S::Elem],
) -> Result<S::Scalar> {
    check_len(seq, args)?;
    sum_kappa(space, &enumerate_adapted_free(seq), args)
}

fn sum_kappa<S: StateSpace>(
    space: &S,
    class: &[LabeledPartition],
    args: &[S::Elem],
) -> Result<S::Scalar> {
    class.iter().try_fold(S::Scalar::zero(), |acc, lp| {
        Ok(acc + kappa_star_partition(space, lp, args)?)
    })
}

fn formal_letters(n: usize) -> Vec<crate::moments::symbolic::SymElem> {
    (1..=n).map(letter).collect()
}

/// The integer polynomial `w` in the variables `x_B = φ(a_B)` with
/// `φ(a_1 ⋯ a_n) = w(x)`, obtained by running the recursion formally.
pub fn universal_polynomial(seq: &[u64]) -> Result<SymPoly> {
    if let Some(p) = seq.windows(2).position(|w| w[0] == w[1]) {
        return Err(Error::EqualNeighbors(p + 1));
    }
    mixed_moment_recursive(&SymbolicState, seq, &formal_letters(seq.len()))
}

/// The combinatorial formula evaluated formally, for comparison with
/// [`universal_polynomial`].
pub fn universal_polynomial_combinatorial(seq: &[u64]) -> Result<SymPoly> {
    mixed_moment_combinatorial(&SymbolicState, seq, &formal_letters(seq.len()))
}

/// Free-product polynomial for `seq`, from the free-labeling sum.
pub fn free_polynomial(seq: &[u64]) -> Result<SymPoly> {
    free_moment_combinatorial(&SymbolicState, seq, &formal_letters(seq.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::space::{p_perp, MatrixState};
    use nalgebra::DMatrix;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(vars: &[&[usize]]) -> SymPoly {
        SymPoly::monomial(1, vars)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<BigRational> {
        DMatrix::from_fn(d, d, |_, _| q(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
    }

    #[test]
    fn kappa_low_orders() {
        let s = SymbolicState;
        let (a, b) = (letter(1), letter(2));
        assert_eq!(kappa_star(&s, 1, &[a.clone()]).unwrap(), SymPoly::var(&[1]));
        assert_eq!(
            kappa_star(&s, 1, &[a, b]).unwrap(),
            SymPoly::var(&[1, 2]) - x(&[&[1], &[2]])
        );
        assert!(kappa_star(&s, 1, &[]).is_err());
    }

    #[test]
    fn kappa_is_projected_moment() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let st = MatrixState::<BigRational>::new();
        for n in 1..=5 {
            let a: Vec<_> = (0..n).map(|_| random_matrix(&mut rng, 4)).collect();
            let p = p_perp::<BigRational>(4);
            let mut prod = a[0].clone();
            for m in &a[1..] {
                prod = prod * &p * m;
            }
            assert_eq!(kappa_star(&st, 1, &a).unwrap(), prod[(0, 0)]);
        }
    }

    #[test]
    fn kappa_adjacency_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let st = MatrixState::<BigRational>::new();
        for n in 1..=5 {
            let a: Vec<_> = (0..=n).map(|_| random_matrix(&mut rng, 3)).collect();
            for k in 1..=n {
                let mut merged = a[..k - 1].to_vec();
                merged.push(&a[k - 1] * &a[k]);
                merged.extend(a[k + 1..].iter().cloned());
                let lhs = kappa_star(&st, 1, &a).unwrap();
                let rhs = kappa_star(&st, 1, &merged).unwrap()
                    - kappa_star(&st, 1, &a[..k]).unwrap() * kappa_star(&st, 1, &a[k..]).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn example_polynomials() {
        let w = universal_polynomial(&[1, 2, 1, 2, 1]).unwrap();
        let expected = x(&[&[1, 3, 5], &[2], &[4]]) + x(&[&[1], &[3], &[5], &[2, 4]])
            - x(&[&[1], &[3], &[5], &[2], &[4]]);
        assert_eq!(w, expected);
        assert!(!w.variables().contains(&vec![3, 5]));

        let w = universal_polynomial(&[2, 1, 2, 1, 2]).unwrap();
        let expected = x(&[&[2, 4], &[1, 5], &[3]]) + x(&[&[2], &[4], &[1, 3, 5]])
            - x(&[&[2], &[4], &[1, 5], &[3]]);
        assert_eq!(w, expected);

        assert_eq!(universal_polynomial(&[1, 2]).unwrap(), x(&[&[1], &[2]]));
        assert!(universal_polynomial(&[1, 1]).is_err());
    }

    #[test]
    fn recursion_matches_combinatorial_formally() {
        for seq in [
            &[1u64, 2, 1, 2, 1][..],
            &[2, 1, 2, 1, 2],
            &[3, 1, 2, 1, 3, 2],
            &[2, 7, 5, 7, 5, 2],
            &[1, 3, 2, 3, 1, 2, 1],
        ] {
            assert_eq!(
                universal_polynomial(seq).unwrap(),
                universal_polynomial_combinatorial(seq).unwrap(),
                "{seq:?}"
            );
        }
    }

    #[test]
    fn equal_neighbors_are_merged() {
        // φ(a1 a2 b) with a1, a2 in one algebra is φ(a1 a2) φ(b)
        let s = SymbolicState;
        let args = formal_letters(3);
        let m = mixed_moment_recursive(&s, &[1, 1, 2], &args).unwrap();
        assert_eq!(m, x(&[&[1, 2], &[3]]));
        let c = mixed_moment_combinatorial(&s, &[1, 1, 2], &args).unwrap();
        assert_eq!(c, m);
        let c = mixed_moment_combinatorial(&s, &[1, 2, 2, 1], &formal_letters(4)).unwrap();
        let r = mixed_moment_recursive(&s, &[1, 2, 2, 1], &formal_letters(4)).unwrap();
        assert_eq!(c, r);
    }

    #[test]
    fn trivial_cases() {
        let s = SymbolicState;
        assert_eq!(
            mixed_moment_recursive(&s, &[], &[]).unwrap(),
            SymPoly::one()
        );
        assert_eq!(
            mixed_moment_combinatorial(&s, &[4], &[letter(1)]).unwrap(),
            SymPoly::var(&[1])
        );
        assert!(mixed_moment_recursive(&s, &[1, 2], &[letter(1)]).is_err());
    }

    #[test]
    fn centered_distinct_indices_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let st = MatrixState::<BigRational>::new();
        let args: Vec<_> = (0..4)
            .map(|_| st.center(0, &random_matrix(&mut rng, 3)))
            .collect();
        let seq = [4, 2, 1, 3];
        assert!(mixed_moment_recursive(&st, &seq, &args).unwrap().is_zero());
        assert!(mixed_moment_combinatorial(&st, &seq, &args)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn kappa_partition_nested_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let st = MatrixState::<BigRational>::new();
        let a: Vec<_> = (0..4).map(|_| random_matrix(&mut rng, 2)).collect();
        let lp = LabeledPartition::from_blocks(4, vec![(vec![1, 4], 1), (vec![2, 3], 2)]).unwrap();
        let phi = |m: &DMatrix<BigRational>| m[(0, 0)].clone();
        let k2 =
            |u: &DMatrix<BigRational>, v: &DMatrix<BigRational>| phi(&(u * v)) - phi(u) * phi(v);
        assert_eq!(
            kappa_star_partition(&st, &lp, &a).unwrap(),
            k2(&a[0], &a[3]) * k2(&a[1], &a[2])
        );
        assert!(kappa_star_partition(&st, &lp, &a[..3]).is_err());
    }
}
