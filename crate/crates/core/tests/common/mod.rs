//! Reference computations that share no code with the library beyond the
//! data types used to feed them.

#![allow(dead_code)]

use std::io::Write;
use std::time::{Duration, Instant};

use degenlab::{ExactMatrix, Field, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Mod { value, .. } => *value as u64,
        Scalar::Rat(_) => panic!("expected a residue"),
    }
}

fn rational(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rat(r) => r.clone(),
        Scalar::Mod { .. } => panic!("expected a rational"),
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Row reduction on plain residues, returning (rank, determinant if square).
fn reduce_mod(rows: Vec<Vec<u64>>, p: u64) -> (usize, u64) {
    let mut a = rows;
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut det = 1u64;
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| a[r][c] != 0) else {
            det = 0;
            continue;
        };
        if piv != rank {
            a.swap(piv, rank);
            det = (p - det) % p;
        }
        det = det * a[rank][c] % p;
        let inv = pow_mod(a[rank][c], p - 2, p);
        for r in rank + 1..nrows {
            if a[r][c] == 0 {
                continue;
            }
            let f = a[r][c] * inv % p;
            for j in c..ncols {
                a[r][j] = (a[r][j] + p - f * a[rank][j] % p) % p;
            }
        }
        rank += 1;
    }
    if rank < nrows {
        det = 0;
    }
    (rank, det)
}

/// Rank over F_p by an independent elimination.
pub fn rank_mod(m: &ExactMatrix) -> usize {
    let Field::Prime(p) = m.field() else {
        panic!("rank_mod needs F_p")
    };
    let rows = (0..m.rows())
        .map(|i| m.row(i).iter().map(residue).collect())
        .collect();
    reduce_mod(rows, p as u64).0
}

/// Determinant by an independent elimination, over either field.
pub fn determinant(m: &ExactMatrix) -> Scalar {
    assert_eq!(m.rows(), m.cols());
    match m.field() {
        Field::Prime(p) => {
            let rows = (0..m.rows())
                .map(|i| m.row(i).iter().map(residue).collect())
                .collect();
            let (_, d) = reduce_mod(rows, p as u64);
            m.field().from_i64(d as i64)
        }
        Field::Rational => {
            // Bareiss fraction-free elimination after clearing denominators row by row.
            let n = m.rows();
            let mut scale = BigRational::one();
            let mut a: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    let row: Vec<BigRational> = m.row(i).iter().map(rational).collect();
                    let l = row.iter().fold(BigInt::one(), |acc, r| {
                        num_integer::lcm(acc, r.denom().clone())
                    });
                    scale *= BigRational::from_integer(l.clone());
                    row.iter()
                        .map(|r| (r * BigRational::from_integer(l.clone())).to_integer())
                        .collect()
                })
                .collect();
            let mut sign = BigInt::one();
            let mut prev = BigInt::one();
            for k in 0..n {
                if a[k][k].is_zero() {
                    let Some(s) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                        return m.field().zero();
                    };
                    a.swap(k, s);
                    sign = -sign;
                }
                for i in k + 1..n {
                    for j in k + 1..n {
                        a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    }
                }
                prev = a[k][k].clone();
            }
            let det = if n == 0 {
                BigInt::one()
            } else {
                a[n - 1][n - 1].clone()
            };
            Scalar::Rat(BigRational::from_integer(det * sign) / scale)
        }
    }
}

/// `χ(P^N, O(k)) = C(k + N, N)` as a polynomial in `k`.
fn chi_line(nn: i64, k: i64) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 1..=nn {
        num *= (k + i) as i128;
        den *= i as i128;
    }
    num / den
}

fn binom(a: i64, b: i64) -> i128 {
    if b < 0 || b > a {
        return 0;
    }
    (0..b).fold(1i128, |acc, i| acc * (a - i) as i128 / (i + 1) as i128)
}

/// `χ(Ω^p(k))` from `0 -> Ω^p(k) -> Λ^p V ⊗ O(k-p) -> Ω^{p-1}(k) -> 0`.
pub fn euler_characteristic(nn: i64, p: i64, k: i64) -> i128 {
    if p == 0 {
        return chi_line(nn, k);
    }
    binom(nn + 1, p) * chi_line(nn, k - p) - euler_characteristic(nn, p - 1, k)
}

/// Subspace equality by ranks: `rank A = rank B = rank [A | B]`.
pub fn same_span(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    let ra = a.rank();
    ra == b.rank() && ra == a.hconcat(b).unwrap().rank()
}

/// Runs a criterion, prints one line outside the test harness' capture, and
/// fails the test if the check failed or exceeded its time budget.
pub fn criterion(
    id: u32,
    name: &str,
    budget: Duration,
    check: impl FnOnce() -> Result<String, String>,
) {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over budget {budget:?}")),
        Err(e) => (false, e),
    };
    let line = format!(
        "[{}] criterion {id}: {name} ({:.2}s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
    assert!(ok, "{line}");
}

/// Asserting helper for criteria written as `Result<_, String>`.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}
