//! Rank over `Z/p` for large random primes.
//!
//! The rank of a rational matrix reduced mod `p` never exceeds its rational
//! rank and equals it for all but finitely many `p`, so the maximum over a few
//! random 62-bit primes is the rational rank with overwhelming probability.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::RatMatrix;
use crate::error::{Error, Result};
use crate::Rational;

/// Below this many rows the elimination stays on one thread.
const PARALLEL_ROWS: usize = 64;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct random primes in `[2^61, 2^62)`.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        if is_prime(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// Checks a user-supplied prime list.
pub fn validate_primes(primes: &[u64]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::InvalidPrimes("no primes given".into()));
    }
    for &p in primes {
        if p >= 1 << 62 {
            return Err(Error::InvalidPrimes(format!("{p} does not fit in 62 bits")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidPrimes(format!("{p} is not prime")));
        }
    }
    Ok(())
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn reduce_rational(x: &Rational, p: u64) -> Result<u64> {
    if x.is_zero() {
        return Ok(0);
    }
    let d = reduce_int(x.denom(), p);
    if d == 0 {
        return Err(Error::BadPrime { prime: p });
    }
    Ok(mul_mod(reduce_int(x.numer(), p), inv_mod(d, p), p))
}

/// A dense matrix over `Z/p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn from_rational(m: &RatMatrix, p: u64) -> Result<Self> {
        let data = m
            .entries()
            .map(|x| reduce_rational(x, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModMatrix {
            rows: m.rows(),
            cols: m.cols(),
            p,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    /// `A ⊗ I + I ⊗ B`, same pairing as [`super::kronecker_sum`].
    pub fn kronecker_sum(a: &ModMatrix, b: &ModMatrix) -> Result<Self> {
        if a.p != b.p {
            return Err(Error::InvalidParameter("Kronecker sum of different moduli".into()));
        }
        if a.rows != a.cols || b.rows != b.cols {
            return Err(Error::InvalidParameter("Kronecker sum needs square matrices".into()));
        }
        let (d1, d2, p) = (a.rows, b.rows, a.p);
        let n = d1 * d2;
        let mut data = vec![0u64; n * n];
        for i1 in 0..d1 {
            for j in 0..d2 {
                let row = (i1 * d2 + j) * n;
                for k1 in 0..d1 {
                    data[row + k1 * d2 + j] = a.get(i1, k1);
                }
                for k2 in 0..d2 {
                    let idx = row + i1 * d2 + k2;
                    data[idx] = (data[idx] + b.get(j, k2)) % p;
                }
            }
        }
        Ok(ModMatrix {
            rows: n,
            cols: n,
            p,
            data,
        })
    }

    /// Rank by Gaussian elimination; consumes the matrix.
    pub fn rank(mut self) -> usize {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != rank {
                for j in c..cols {
                    self.data.swap(piv * cols + j, rank * cols + j);
                }
            }
            let (head, tail) = self.data.split_at_mut((rank + 1) * cols);
            let pivot_row = &mut head[rank * cols..];
            let inv = inv_mod(pivot_row[c], p);
            for x in pivot_row[c..].iter_mut() {
                if *x != 0 {
                    *x = mul_mod(*x, inv, p);
                }
            }
            let pivot_row = &*pivot_row;
            let support: Vec<usize> = (c + 1..cols).filter(|&j| pivot_row[j] != 0).collect();
            let eliminate = |row: &mut [u64]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                row[c] = 0;
                let shoup = Shoup::new(p - factor, p);
                for &j in &support {
                    let t = shoup.mul(pivot_row[j]);
                    let s = row[j] + t;
                    row[j] = if s >= p { s - p } else { s };
                }
            };
            if rows - rank > PARALLEL_ROWS {
                tail.par_chunks_mut(cols).for_each(eliminate);
            } else {
                tail.chunks_mut(cols).for_each(eliminate);
            }
            rank += 1;
        }
        rank
    }
}

/// Multiplication by a fixed residue with a precomputed quotient.
struct Shoup {
    w: u64,
    w_pre: u64,
    p: u64,
}

impl Shoup {
    fn new(w: u64, p: u64) -> Self {
        let w_pre = (((w as u128) << 64) / p as u128) as u64;
        Shoup { w, w_pre, p }
    }

    fn mul(&self, a: u64) -> u64 {
        let q = ((a as u128 * self.w_pre as u128) >> 64) as u64;
        let r = a.wrapping_mul(self.w).wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

/// Rank of `m` mod each prime; returns the maximum and the individual ranks.
pub fn modular_rank(m: &RatMatrix, primes: &[u64]) -> Result<(usize, Vec<usize>)> {
    validate_primes(primes)?;
    let ranks = primes
        .iter()
        .map(|&p| Ok(ModMatrix::from_rational(m, p)?.rank()))
        .collect::<Result<Vec<_>>>()?;
    Ok((ranks.iter().copied().max().unwrap_or(0), ranks))
}

/// Rank of the Kronecker sum `m1 ⊗ I + I ⊗ m2` mod each prime, without
/// forming the rational product matrix.
pub fn modular_rank_kronecker_sum(
    m1: &RatMatrix,
    m2: &RatMatrix,
    primes: &[u64],
) -> Result<(usize, Vec<usize>)> {
    validate_primes(primes)?;
    let ranks = primes
        .iter()
        .map(|&p| {
            let a = ModMatrix::from_rational(m1, p)?;
            let b = ModMatrix::from_rational(m2, p)?;
            Ok(ModMatrix::kronecker_sum(&a, &b)?.rank())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ranks.iter().copied().max().unwrap_or(0), ranks))
}
