//! Iterated V-monotone products of states, such as `(φ₁ ∨ φ₂) ∨ φ₃`.
//!
//! A [`Grouping`] is a tree whose leaves name base algebras. At each inner node
//! the children are treated as single algebras indexed `1, 2, ...` in the order
//! listed, and the node's state is the V-monotone product of the children's
//! states. An element of a child algebra is kept as a formal combination of
//! words in base letters, so that the child state can be evaluated recursively.

use num_traits::{One, Zero};

use super::mixed::mixed_moment_recursive;
use super::space::StateSpace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grouping {
    Leaf(u64),
    Product(Vec<Grouping>),
}

impl Grouping {
    /// The flat product of the given base algebras.
    pub fn flat(algs: &[u64]) -> Self {
        Grouping::Product(algs.iter().map(|&a| Grouping::Leaf(a)).collect())
    }

    pub fn leaves(&self) -> Vec<u64> {
        match self {
            Grouping::Leaf(a) => vec![*a],
            Grouping::Product(cs) => cs.iter().flat_map(Grouping::leaves).collect(),
        }
    }

    fn contains(&self, alg: u64) -> bool {
        match self {
            Grouping::Leaf(a) => *a == alg,
            Grouping::Product(cs) => cs.iter().any(|c| c.contains(alg)),
        }
    }
}

/// `(∨_grouping φ)(a_1 ⋯ a_n)` where `a_k` lies in base algebra `seq[k]`.
pub fn product_state_moment<S: StateSpace>(
    space: &S,
    grouping: &Grouping,
    seq: &[u64],
    args: &[S::Elem],
) -> Result<S::Scalar> {
    if seq.len() != args.len() {
        return Err(Error::LengthMismatch {
            expected: seq.len(),
            found: args.len(),
        });
    }
    let leaves = grouping.leaves();
    let mut sorted = leaves.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != leaves.len() {
        return Err(Error::OutOfRange(
            "a base algebra appears twice in the grouping".into(),
        ));
    }
    if let Some(a) = seq.iter().find(|a| !leaves.contains(a)) {
        return Err(Error::OutOfRange(format!(
            "algebra {a} is not in the grouping"
        )));
    }
    let word: Vec<(u64, S::Elem)> = seq.iter().copied().zip(args.iter().cloned()).collect();
    Ok(eval(space, grouping, &word))
}

fn eval<S: StateSpace>(space: &S, node: &Grouping, word: &[(u64, S::Elem)]) -> S::Scalar {
    match node {
        Grouping::Leaf(alg) => {
            let Some((first, rest)) = word.split_first() else {
                return S::Scalar::one();
            };
            let prod = rest
                .iter()
                .fold(first.1.clone(), |p, (_, e)| space.mul(*alg, &p, e));
            space.phi(*alg, &prod)
        }
        Grouping::Product(children) => {
            let node_space = NodeSpace {
                base: space,
                children,
            };
            let seq: Vec<u64> = word
                .iter()
                .map(|(a, _)| {
                    children
                        .iter()
                        .position(|c| c.contains(*a))
                        .expect("validated") as u64
                        + 1
                })
                .collect();
            let elems: Vec<Combination<S>> = word
                .iter()
                .map(|l| vec![(S::Scalar::one(), vec![l.clone()])])
                .collect();
            mixed_moment_recursive(&node_space, &seq, &elems).expect("lengths agree")
        }
    }
}

type Combination<S> = Vec<(
    <S as StateSpace>::Scalar,
    Vec<(u64, <S as StateSpace>::Elem)>,
)>;

struct NodeSpace<'a, S: StateSpace> {
    base: &'a S,
    children: &'a [Grouping],
}

impl<S: StateSpace> StateSpace for NodeSpace<'_, S> {
    type Scalar = S::Scalar;
    type Elem = Combination<S>;

    fn phi(&self, alg: u64, a: &Self::Elem) -> S::Scalar {
        let child = &self.children[alg as usize - 1];
        a.iter().fold(S::Scalar::zero(), |acc, (c, w)| {
            if c.is_zero() {
                acc
            } else {
                acc + c.clone() * eval(self.base, child, w)
            }
        })
    }

    fn mul(&self, _alg: u64, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for (c1, w1) in a {
            for (c2, w2) in b {
                out.push((
                    c1.clone() * c2.clone(),
                    w1.iter().chain(w2).cloned().collect(),
                ));
            }
        }
        out
    }

    fn sub_unit(&self, _alg: u64, a: &Self::Elem, s: &S::Scalar) -> Self::Elem {
        let mut out = a.clone();
        out.push((-s.clone(), Vec::new()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::symbolic::{letter, SymPoly, SymbolicState};

    fn x(vars: &[&[usize]]) -> SymPoly {
        SymPoly::monomial(1, vars)
    }

    #[test]
    fn flat_product_is_the_recursion() {
        let s = SymbolicState;
        for seq in [
            &[1u64, 2, 1, 2, 1][..],
            &[3, 1, 2, 3, 1],
            &[1, 3, 2, 3, 1, 2],
        ] {
            let args: Vec<_> = (1..=seq.len()).map(letter).collect();
            let flat = product_state_moment(&s, &Grouping::flat(&[1, 2, 3]), seq, &args).unwrap();
            assert_eq!(
                flat,
                mixed_moment_recursive(&s, seq, &args).unwrap(),
                "{seq:?}"
            );
        }
    }

    #[test]
    fn groupings_differ_formally() {
        // word a1 c1 b c2 a2 with a in 1, b in 2, c in 3
        let s = SymbolicState;
        let seq = [1, 3, 2, 3, 1];
        let args: Vec<_> = (1..=5).map(letter).collect();
        let left = Grouping::Product(vec![Grouping::flat(&[1, 2]), Grouping::Leaf(3)]);
        let right = Grouping::Product(vec![Grouping::Leaf(1), Grouping::flat(&[2, 3])]);
        let l = product_state_moment(&s, &left, &seq, &args).unwrap();
        let r = product_state_moment(&s, &right, &seq, &args).unwrap();
        assert_eq!(
            l,
            x(&[&[1, 5], &[3], &[2], &[4]]) + x(&[&[1], &[5], &[3], &[2, 4]])
                - x(&[&[1], &[5], &[3], &[2], &[4]])
        );
        assert_eq!(r, x(&[&[1, 5], &[3], &[2, 4]]));
    }

    #[test]
    fn rejects_unknown_algebras() {
        let s = SymbolicState;
        assert!(product_state_moment(&s, &Grouping::flat(&[1, 2]), &[3], &[letter(1)]).is_err());
        assert!(product_state_moment(&s, &Grouping::flat(&[1, 1]), &[1], &[letter(1)]).is_err());
    }
}
