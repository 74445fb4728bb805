//! Cross-checks of the whole library against fixed reference values and
//! against each other. Every check returns a [`CheckResult`]; [`run_all`]
//! collects them into a [`RunReport`].

use std::time::Instant;

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::fock::{fit_decay_exponent, omega_n_moment, operator_moment};
use crate::labelings::{
    count_ov2, enumerate_adapted_v, enumerate_onc, enumerate_ov, enumerate_ov2_k, is_v_monotone,
};
use crate::mgf::{integral_residual, round_trip_error, series_coefficients, MgfConfig};
use crate::moments::space::p_perp;
use crate::moments::symbolic::{letter, SymbolicState};
use crate::moments::{
    clt_moment, free_polynomial, kappa_star, mixed_moment_combinatorial, mixed_moment_recursive,
    nk_recurrence, product_state_moment, universal_polynomial, Grouping, MatrixState, NkTable,
    SymPoly,
};
use crate::partitions::{LabeledPartition, Partition};
use crate::polyengine::{p_q_of_partition, PolyTable, RatPoly};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Printed numerators of the even moments `m_{2k} = c_k / k!`, `k = 1..=10`.
pub const PRINTED_NUMERATORS: [u64; 10] = [
    1, 4, 28, 278, 3564, 55928, 1037708, 22217720, 539070560, 1731430024,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub seconds: f64,
    pub details: Vec<String>,
}

impl CheckResult {
    /// One human-readable status line.
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "[{tag}] {}: expected {}; actual {} ({}, {:.3} s)",
            self.name, self.expected, self.actual, self.tolerance, self.seconds
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub level: Level,
    pub seed: u64,
    pub passed: bool,
    pub seconds: f64,
    pub checks: Vec<CheckResult>,
}

// Builder used by every check: collects mismatches and times the run.
struct Check {
    name: &'static str,
    tolerance: String,
    limit_seconds: f64,
    start: Instant,
    expected: String,
    actual: String,
    failures: Vec<String>,
    details: Vec<String>,
}

impl Check {
    fn new(name: &'static str, tolerance: impl Into<String>, limit_seconds: f64) -> Self {
        Check {
            name,
            tolerance: tolerance.into(),
            limit_seconds,
            start: Instant::now(),
            expected: String::new(),
            actual: String::new(),
            failures: Vec::new(),
            details: Vec::new(),
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.details.push(msg.into());
    }

    fn summary(mut self, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        self.expected = expected.into();
        self.actual = actual.into();
        self
    }

    fn finish(mut self) -> CheckResult {
        let seconds = self.start.elapsed().as_secs_f64();
        if seconds > self.limit_seconds {
            self.fail(format!(
                "runtime {seconds:.2} s over the {} s limit",
                self.limit_seconds
            ));
        }
        let passed = self.failures.is_empty();
        if !passed {
            // the first mismatch is the most useful expected/actual pair
            self.actual = format!("{}; first mismatch: {}", self.actual, self.failures[0]);
        }
        let mut details = self.failures;
        details.extend(self.details);
        CheckResult {
            name: self.name.into(),
            passed,
            expected: self.expected,
            actual: self.actual,
            tolerance: format!("{}, runtime < {} s", self.tolerance, self.limit_seconds),
            seconds,
            details,
        }
    }
}

fn err_result(name: &'static str, e: crate::Error) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: false,
        expected: "no error".into(),
        actual: format!("error: {e}"),
        tolerance: "n/a".into(),
        seconds: 0.0,
        details: vec![e.to_string()],
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

/// Random matrix with entries `p/q`, `|p| <= 5`, `1 <= q <= 4`.
pub fn random_rational_matrix(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<BigRational> {
    DMatrix::from_fn(d, d, |_, _| q(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
}

fn words(alphabet: u64, len: usize) -> Vec<Vec<u64>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                (1..=alphabet).map(move |a| {
                    let mut x = w.clone();
                    x.push(a);
                    x
                })
            })
            .collect()
    })
}

/// Even moments of the lowest orders against the printed table. Orders up to
/// 18 must agree; order 20 is reported as a match or mismatch only.
pub fn check_moment_table() -> CheckResult {
    let mut c = Check::new("moment table", "exact rational equality", 1.0);
    let table = NkTable::new(10);
    for (i, &printed) in PRINTED_NUMERATORS.iter().enumerate() {
        let k = i + 1;
        let value = match table.get(k, k + 1) {
            Ok(v) => v.clone(),
            Err(e) => return err_result("moment table", e),
        };
        let got = BigRational::new(value.clone().into(), factorial(k).into());
        let want = BigRational::new(BigUint::from(printed).into(), factorial(k).into());
        if k < 10 {
            c.expect(got == want, || format!("order {}: {want} vs {got}", 2 * k));
        } else {
            let status = if got == want { "match" } else { "mismatch" };
            c.note(format!(
                "order 20 flag: {status}; recurrence {value}/10!, printed {printed}/10!"
            ));
        }
    }
    let shown: Vec<String> = PRINTED_NUMERATORS[..9].iter().map(u64::to_string).collect();
    let actual: Vec<String> = (1..=9)
        .map(|k| {
            table
                .get(k, k + 1)
                .map(|v| v.to_string())
                .unwrap_or_default()
        })
        .collect();
    c.summary(
        format!("numerators {} (orders 2-18)", shown.join(", ")),
        format!("numerators {}", actual.join(", ")),
    )
    .finish()
}

/// Brute-force counts of ordered V-monotone pair partitions against the
/// recurrence.
pub fn check_brute_force(level: Level) -> CheckResult {
    let (n_count, n_k) = match level {
        Level::Full => (7, 6),
        Level::Fast => (6, 5),
    };
    let mut c = Check::new("brute force vs recurrence", "exact count equality", 300.0);
    let mut actual = Vec::new();
    for n in 1..=n_count {
        let brute = match count_ov2(2 * n) {
            Ok(b) => b,
            Err(e) => return err_result("brute force vs recurrence", e),
        };
        let rec = nk_recurrence(n, n + 1).expect("in range");
        actual.push(brute.to_string());
        c.expect(BigUint::from(brute) == rec, || {
            format!("|OV2({})| = {brute}, N = {rec}", 2 * n)
        });
    }
    for n in 1..=n_k {
        for k in 1..=n + 1 {
            let brute = match enumerate_ov2_k(2 * n, k) {
                Ok(v) => v.len(),
                Err(e) => return err_result("brute force vs recurrence", e),
            };
            let rec = nk_recurrence(n, k).expect("in range");
            c.expect(BigUint::from(brute) == rec, || {
                format!("n = {n}, k = {k}: enumerated {brute}, N = {rec}")
            });
        }
    }
    c.summary(
        format!("|OV2(2n)| = N(n, n+1) for n <= {n_count}, N(n, k) for n <= {n_k}"),
        format!("|OV2(2n)| = {}", actual.join(", ")),
    )
    .finish()
}

/// `P_n(1)` against the moments and `Q_n` against its closed form.
pub fn check_polynomials() -> CheckResult {
    let mut c = Check::new("polynomial pipeline", "exact rational equality", 10.0);
    let table = PolyTable::new(15);
    for n in 1..=10 {
        let v = table.p[n].eval(&BigRational::one());
        let m = clt_moment(2 * n);
        c.expect(v == m, || format!("P_{n}(1) = {v}, m_{} = {m}", 2 * n));
    }
    for n in 0..=15 {
        let binom: BigUint = (0..n as u64)
            .map(|j| BigUint::from(2 * n as u64 - j))
            .product::<BigUint>()
            / factorial(n);
        let coef = BigRational::new(binom.into(), BigInt::from(2).pow(n as u32));
        let closed = RatPoly::one_minus_x_pow(n).scale(&coef);
        c.expect(table.q[n] == closed, || format!("Q_{n} differs"));
    }
    c.summary(
        "P_n(1) = m_2n (n <= 10), Q_n = 2^-n C(2n,n)(1-x)^n (n <= 15)",
        format!("P_10(1) = {}", table.p[10].eval(&BigRational::one())),
    )
    .finish()
}

fn poly(num: &[i64], den: i64) -> RatPoly {
    RatPoly::from_ints(num).scale(&q(1, den))
}

/// Eight pair partitions with reference `(P, Q)`, coefficients lowest degree
/// first.
pub fn reference_poly_fixtures() -> Vec<(Vec<Vec<usize>>, RatPoly, RatPoly)> {
    let one = || poly(&[1], 1);
    vec![
        (vec![vec![1, 2]], one(), poly(&[1, -1], 1)),
        (vec![vec![1, 2], vec![3, 4]], one(), poly(&[1, -2, 1], 1)),
        (
            vec![vec![1, 4], vec![2, 3]],
            poly(&[1, 0, 1], 2),
            poly(&[1, -2, 1], 2),
        ),
        (
            vec![vec![1, 2], vec![3, 4], vec![5, 6]],
            one(),
            poly(&[1, -3, 3, -1], 1),
        ),
        (
            vec![vec![1, 2], vec![3, 6], vec![4, 5]],
            one(),
            poly(&[1, -3, 3, -1], 1),
        ),
        (
            vec![vec![1, 4], vec![2, 3], vec![5, 6]],
            one(),
            poly(&[1, -3, 3, -1], 1),
        ),
        (
            vec![vec![1, 6], vec![2, 3], vec![4, 5]],
            poly(&[1, 0, 3, -1], 3),
            poly(&[1, -3, 3, -1], 3),
        ),
        (
            vec![vec![1, 6], vec![2, 5], vec![3, 4]],
            poly(&[1, 0, 3], 6),
            poly(&[1, -3, 3, -1], 6),
        ),
    ]
}

fn nested_pair() -> (LabeledPartition, LabeledPartition) {
    let lp = |labels: [u64; 5]| {
        let blocks: [&[usize]; 5] = [&[1, 7, 10], &[2, 6], &[3, 5], &[4], &[8, 9]];
        LabeledPartition::from_blocks(
            10,
            blocks
                .iter()
                .zip(labels)
                .map(|(b, l)| (b.to_vec(), l))
                .collect(),
        )
        .expect("fixture")
    };
    (lp([3, 2, 3, 4, 5]), lp([1, 3, 2, 4, 5]))
}

/// Reference polynomials, the V-class of `(2,7,5,7,5,2)`, the two
/// nested labelings of one partition and `ONC(5) \ OV(5)`.
pub fn check_reference_fixtures() -> CheckResult {
    let mut c = Check::new("reference fixtures", "exact equality", 10.0);
    let mut ok = 0;
    for (blocks, p, qq) in reference_poly_fixtures() {
        let n = 2 * blocks.len();
        let pi = Partition::new(n, blocks.clone()).expect("fixture");
        match p_q_of_partition(&pi) {
            Ok((gp, gq)) => {
                if gp == p && gq == qq {
                    ok += 1;
                } else {
                    c.fail(format!(
                        "{pi}: printed P = {p}, Q = {qq}; computed P = {gp}, Q = {gq}"
                    ));
                }
            }
            Err(e) => return err_result("reference fixtures", e),
        }
    }
    let v = enumerate_adapted_v(&[2, 7, 5, 7, 5, 2]).len();
    c.expect(v == 5, || format!("|V(2,7,5,7,5,2)| = {v}"));
    let (left, right) = nested_pair();
    let (l, r) = (
        is_v_monotone(&left).unwrap_or(false),
        is_v_monotone(&right).unwrap_or(true),
    );
    c.expect(l && !r, || format!("nested labelings: left {l}, right {r}"));
    let ov = enumerate_ov(5);
    let missing = enumerate_onc(5)
        .into_iter()
        .filter(|x| !ov.contains(x))
        .count();
    c.expect(missing == 2, || format!("|ONC(5) \\ OV(5)| = {missing}"));
    c.summary(
        "8/8 P,Q entries; |V| = 5; left V-monotone, right not; 2 missing",
        format!("{ok}/8 P,Q entries; |V| = {v}; left {l}, right {r}; {missing} missing"),
    )
    .finish()
}

fn x(vars: &[&[usize]]) -> SymPoly {
    SymPoly::monomial(1, vars)
}

/// The two printed three-term polynomials of order five.
pub fn printed_order_five() -> [(Vec<u64>, SymPoly); 2] {
    [
        (
            vec![1, 2, 1, 2, 1],
            x(&[&[1, 3, 5], &[2], &[4]]) + x(&[&[1], &[3], &[5], &[2, 4]])
                - x(&[&[1], &[3], &[5], &[2], &[4]]),
        ),
        (
            vec![2, 1, 2, 1, 2],
            x(&[&[2, 4], &[1, 5], &[3]]) + x(&[&[2], &[4], &[1, 3, 5]])
                - x(&[&[2], &[4], &[1, 5], &[3]]),
        ),
    ]
}

/// Universal polynomials of order five and agreement with free products for
/// two algebras up to order five.
pub fn check_order_five() -> CheckResult {
    let mut c = Check::new("order-five polynomials", "exact polynomial equality", 10.0);
    for (seq, printed) in printed_order_five() {
        match universal_polynomial(&seq) {
            Ok(w) => c.expect(w == printed, || {
                format!("{seq:?}: printed {printed}, computed {w}")
            }),
            Err(e) => return err_result("order-five polynomials", e),
        }
    }
    let mut total = 0;
    let mut disagree = Vec::new();
    for len in 1..=5 {
        for seq in words(2, len) {
            if seq.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            total += 1;
            let (v, f) = (universal_polynomial(&seq), free_polynomial(&seq));
            match (v, f) {
                (Ok(v), Ok(f)) if v == f => {}
                (Ok(v), Ok(f)) => {
                    disagree.push(format!("{seq:?}"));
                    c.fail(format!("{seq:?}: V-monotone {v}, free {f}"));
                }
                (Err(e), _) | (_, Err(e)) => return err_result("order-five polynomials", e),
            }
        }
    }
    c.summary(
        format!("printed polynomials reproduced; all {total} alternating words agree with free"),
        format!("{} words differ from free {:?}", disagree.len(), disagree),
    )
    .finish()
}

/// Recursion, combinatorial formula and operator model on every word of
/// length at most 6 over three algebras.
pub fn check_oracle_triangle(level: Level, seed: u64) -> CheckResult {
    let max_len = match level {
        Level::Full => 6,
        Level::Fast => 5,
    };
    let mut c = Check::new("oracle triangle", "exact rational equality", 120.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let st = MatrixState::<BigRational>::new();
    let mut count = 0;
    for len in 1..=max_len {
        for seq in words(3, len) {
            let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(2..=3)).collect();
            let mats: Vec<_> = seq
                .iter()
                .map(|&a| random_rational_matrix(&mut rng, dims[a as usize - 1]))
                .collect();
            let rec = mixed_moment_recursive(&st, &seq, &mats);
            let comb = mixed_moment_combinatorial(&st, &seq, &mats);
            let op = operator_moment(&seq, &mats);
            match (rec, comb, op) {
                (Ok(r), Ok(m), Ok(o)) => {
                    count += 1;
                    c.expect(r == m && m == o, || {
                        format!("{seq:?}: recursive {r}, combinatorial {m}, operator {o}")
                    });
                }
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                    return err_result("oracle triangle", e)
                }
            }
        }
    }
    c.summary(
        format!("three equal values on every word of length <= {max_len}"),
        format!("{count} words compared"),
    )
    .finish()
}

/// `κ*_n(a_1, ..., a_n) = φ(a_1 P⊥ a_2 ⋯ P⊥ a_n)` for random matrices.
pub fn check_kappa_projection(seed: u64) -> CheckResult {
    let mut c = Check::new("kappa projection identity", "exact rational equality", 10.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b61);
    let st = MatrixState::<BigRational>::new();
    let mut count = 0;
    for n in 1..=5 {
        for _ in 0..10 {
            let d = rng.gen_range(2..=4);
            let a: Vec<_> = (0..n)
                .map(|_| random_rational_matrix(&mut rng, d))
                .collect();
            let p = p_perp::<BigRational>(d);
            let prod = a[1..].iter().fold(a[0].clone(), |acc, m| acc * &p * m);
            match kappa_star(&st, 1, &a) {
                Ok(k) => c.expect(k == prod[(0, 0)], || {
                    format!("n = {n}, d = {d}: κ* = {k}, projected = {}", prod[(0, 0)])
                }),
                Err(e) => return err_result("kappa projection identity", e),
            }
            count += 1;
        }
    }
    c.summary(
        "κ* equals the projected moment for n <= 5",
        format!("{count} random tuples compared"),
    )
    .finish()
}

/// Finite-`N` moments of `ω(N)` against the limit law.
pub fn check_clt_convergence() -> CheckResult {
    let mut c = Check::new("central limit convergence", "decay exponent >= 0.45", 60.0);
    let ns = [25u64, 100, 400];
    let mut exponents = Vec::new();
    for n in 1..=3usize {
        let limit = clt_moment(2 * n);
        let mut pts = Vec::new();
        for &big_n in &ns {
            let v = match omega_n_moment(big_n, 2 * n) {
                Ok(v) => v,
                Err(e) => return err_result("central limit convergence", e),
            };
            if n == 1 {
                c.expect(v == limit, || format!("φ(ω({big_n})²) = {v}"));
            }
            let err = (v - &limit).to_f64().unwrap_or(f64::NAN).abs();
            pts.push((big_n, err));
            c.note(format!("order {}, N = {big_n}: error {err:.3e}", 2 * n));
        }
        if n == 1 {
            exponents.push("exact".to_string());
            continue;
        }
        match fit_decay_exponent(&pts) {
            Some(a) => {
                exponents.push(format!("{a:.3}"));
                c.expect(a >= 0.45, || format!("order {}: exponent {a:.3}", 2 * n));
            }
            None => {
                exponents.push("none".into());
                c.fail(format!("order {}: no exponent from {pts:?}", 2 * n));
            }
        }
    }
    c.summary(
        "φ(ω(N)²) = 1 exactly; exponents >= 0.45 for orders 4, 6",
        format!("orders 2, 4, 6: {}", exponents.join(", ")),
    )
    .finish()
}

/// `(φ₁ ∨ φ₂) ∨ φ₃` against `φ₁ ∨ (φ₂ ∨ φ₃)` on `a₁ c₁ b c₂ a₂`.
pub fn check_non_associativity(seed: u64) -> CheckResult {
    let mut c = Check::new("non-associativity", "exact equality", 10.0);
    let seq = [1u64, 3, 2, 3, 1];
    let left_g = Grouping::Product(vec![Grouping::flat(&[1, 2]), Grouping::Leaf(3)]);
    let right_g = Grouping::Product(vec![Grouping::Leaf(1), Grouping::flat(&[2, 3])]);
    let printed_left = x(&[&[1, 5], &[3], &[2], &[4]]) + x(&[&[1], &[5], &[3], &[2, 4]])
        - x(&[&[1], &[5], &[3], &[2], &[4]]);
    let printed_right = x(&[&[1, 5], &[3], &[2, 4]]);

    let sym: Vec<_> = (1..=5).map(letter).collect();
    let (sl, sr) = match (
        product_state_moment(&SymbolicState, &left_g, &seq, &sym),
        product_state_moment(&SymbolicState, &right_g, &seq, &sym),
    ) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => return err_result("non-associativity", e),
    };
    c.expect(sl == printed_left, || format!("left grouping {sl}"));
    c.expect(sr == printed_right, || format!("right grouping {sr}"));

    let st = MatrixState::<BigRational>::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e61);
    let dims = [2usize, 3, 2];
    let mut found = None;
    for _ in 0..100 {
        let mats: Vec<_> = seq
            .iter()
            .map(|&a| random_rational_matrix(&mut rng, dims[a as usize - 1]))
            .collect();
        let l = product_state_moment(&st, &left_g, &seq, &mats).expect("valid word");
        let r = product_state_moment(&st, &right_g, &seq, &mats).expect("valid word");
        if l != r {
            found = Some((mats, l, r));
            break;
        }
    }
    let Some((mats, l, r)) = found else {
        c.fail("no numeric instance with different values in 100 draws");
        return c.summary("two different values", "none found").finish();
    };
    let value = |v: &[usize]| -> BigRational {
        let prod = v[1..]
            .iter()
            .fold(mats[v[0] - 1].clone(), |acc, &p| acc * &mats[p - 1]);
        prod[(0, 0)].clone()
    };
    let (el, er): (BigRational, BigRational) =
        (printed_left.eval(value), printed_right.eval(value));
    c.expect(el == l, || format!("left {l}, formula {el}"));
    c.expect(er == r, || format!("right {r}, formula {er}"));
    c.summary(
        "printed formulas reproduced and two different values",
        format!("(φ₁∨φ₂)∨φ₃ = {l}, φ₁∨(φ₂∨φ₃) = {r}"),
    )
    .finish()
}

/// Series coefficients, the integral equation and the inverse of `exp ∘ T`.
pub fn check_mgf() -> CheckResult {
    let mut c = Check::new(
        "generating function",
        "relative 1e-5 (orders <= 8), 1e-3 (orders 10-12); residual < 1e-8; round trip < 1e-10",
        30.0,
    );
    let cfg = MgfConfig::default();
    let coeffs = match series_coefficients(0.15, &cfg) {
        Ok(v) => v,
        Err(e) => return err_result("generating function", e),
    };
    let mut worst_rel = 0.0_f64;
    for order in (2..=12).step_by(2) {
        let exact = clt_moment(order).to_f64().unwrap_or(f64::NAN);
        let rel = ((coeffs[order] - exact) / exact).abs();
        worst_rel = worst_rel.max(rel);
        let tol = if order <= 8 { 1e-5 } else { 1e-3 };
        c.note(format!("order {order}: relative error {rel:.2e}"));
        c.expect(rel <= tol, || {
            format!(
                "order {order}: {} vs {exact}, relative {rel:.2e}",
                coeffs[order]
            )
        });
    }
    let mut worst_res = 0.0_f64;
    for i in 1..=10 {
        let z = 0.25 * i as f64 / 11.0;
        for j in 0..10 {
            let xx = j as f64 / 9.0;
            match integral_residual(z, xx, &cfg) {
                Ok(r) => worst_res = worst_res.max(r.abs()),
                Err(e) => return err_result("generating function", e),
            }
        }
    }
    c.expect(worst_res < 1e-8, || {
        format!("integral residual {worst_res:.2e}")
    });
    let rt = match round_trip_error(200, &cfg) {
        Ok(v) => v,
        Err(e) => return err_result("generating function", e),
    };
    c.expect(rt < 1e-10, || format!("round trip {rt:.2e}"));
    c.summary(
        "series, residual and round trip within tolerance",
        format!(
            "worst series relative error {worst_rel:.2e}, residual {worst_res:.2e}, round trip {rt:.2e}"
        ),
    )
    .finish()
}

/// Every check, in a fixed order.
pub fn run_all(command: &str, level: Level, seed: u64) -> RunReport {
    let start = Instant::now();
    let checks = vec![
        check_moment_table(),
        check_brute_force(level),
        check_polynomials(),
        check_reference_fixtures(),
        check_order_five(),
        check_oracle_triangle(level, seed),
        check_kappa_projection(seed),
        check_clt_convergence(),
        check_non_associativity(seed),
        check_mgf(),
    ];
    RunReport {
        command: command.into(),
        level,
        seed,
        passed: checks.iter().all(|c| c.passed),
        seconds: start.elapsed().as_secs_f64(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_checks_report_values() {
        let r = check_moment_table();
        assert!(r.passed, "{}", r.line());
        assert!(r
            .details
            .iter()
            .any(|d| d.contains("order 20 flag: mismatch")));
        let k = check_kappa_projection(DEFAULT_SEED);
        assert!(k.passed, "{}", k.line());
    }

    #[test]
    fn failures_carry_both_values() {
        let mut c = Check::new("t", "exact", 100.0);
        c.fail("x");
        let r = c.summary("1", "2").finish();
        assert!(!r.passed);
        assert_eq!(r.expected, "1");
        assert!(r.actual.starts_with("2; first mismatch: x"));
    }

    #[test]
    fn fixtures_are_well_formed() {
        for (blocks, _, _) in reference_poly_fixtures() {
            let pi = Partition::new(2 * blocks.len(), blocks).unwrap();
            assert!(pi.is_pair_partition() && pi.is_non_crossing());
        }
    }
}
