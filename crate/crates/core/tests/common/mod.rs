//! Brute-force oracles written directly from the definitions, sharing no
//! code with the library beyond reading structure constants.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hochcyc_core::{Algebra, FiniteGroup, Scalar};
use num_traits::{One, Zero};

type Vector = BTreeMap<usize, Scalar>;

/// Rank of a family of vectors over ℚ by incremental elimination.
pub fn rank(vectors: impl IntoIterator<Item = Vector>) -> usize {
    let mut pivots: BTreeMap<usize, Vector> = BTreeMap::new();
    for mut v in vectors {
        v.retain(|_, c| !c.is_zero());
        loop {
            let Some((&lead, c)) = v.iter().next() else { break };
            let Some(p) = pivots.get(&lead) else {
                let c = c.clone();
                for x in v.values_mut() {
                    *x = &*x / &c;
                }
                pivots.insert(lead, v);
                break;
            };
            let c = c.clone();
            for (k, x) in p {
                let e = v.entry(*k).or_insert_with(Scalar::zero);
                *e = &*e - &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
    }
    pivots.len()
}

fn tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

fn index(d: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &i| acc * d + i)
}

fn add_term(v: &mut Vector, d: usize, prefix: &[usize], product: &[(usize, Scalar)], suffix: &[usize], sign: &Scalar) {
    for (k, c) in product {
        let mut t = prefix.to_vec();
        t.push(*k);
        t.extend_from_slice(suffix);
        let e = v.entry(index(d, &t)).or_insert_with(Scalar::zero);
        *e = &*e + sign * c;
    }
}

/// `b(a_0 ⊗ … ⊗ a_n) = Σ_{i<n} (−1)^i … a_i a_{i+1} … + (−1)^n a_n a_0 ⊗ a_1 ⊗ …`,
/// one image vector per basis tensor of `C_n`.
pub fn boundary_images(a: &Algebra, n: usize) -> Vec<Vector> {
    let d = a.dim();
    if n == 0 {
        return vec![Vector::new(); d];
    }
    tuples(d, n + 1)
        .into_iter()
        .map(|t| {
            let mut v = Vector::new();
            for i in 0..n {
                let sign = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                add_term(&mut v, d, &t[..i], a.mul_basis(t[i], t[i + 1]), &t[i + 2..], &sign);
            }
            let sign = if n % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            add_term(&mut v, d, &[], a.mul_basis(t[n], t[0]), &t[1..n], &sign);
            v.retain(|_, c| !c.is_zero());
            v
        })
        .collect()
}

/// `(1 − t_n)` images with `t_n = (−1)^n` times the cyclic rotation.
pub fn one_minus_t_images(a: &Algebra, n: usize) -> Vec<Vector> {
    let d = a.dim();
    let sign = if n % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    tuples(d, n + 1)
        .into_iter()
        .map(|t| {
            let mut rotated = vec![t[n]];
            rotated.extend_from_slice(&t[..n]);
            let mut v = Vector::new();
            v.insert(index(d, &t), Scalar::one());
            let e = v.entry(index(d, &rotated)).or_insert_with(Scalar::zero);
            *e = &*e - &sign;
            v.retain(|_, c| !c.is_zero());
            v
        })
        .collect()
}

pub fn chain_dim(a: &Algebra, n: usize) -> usize {
    a.dim().pow(n as u32 + 1)
}

/// `dim HH_n = dim C_n − rank b_n − rank b_{n+1}`.
pub fn hh(a: &Algebra, n: usize) -> usize {
    chain_dim(a, n) - rank(boundary_images(a, n)) - rank(boundary_images(a, n + 1))
}

/// Rank of `b̄_n` on `C_n / im(1 − t)`: `rank[b_n, 1 − t] − rank(1 − t)` in `C_{n−1}`.
fn quotient_boundary_rank(a: &Algebra, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let rel = one_minus_t_images(a, n - 1);
    let r = rank(rel.clone());
    rank(boundary_images(a, n).into_iter().chain(rel)) - r
}

/// `dim HC_n` from Connes' quotient complex.
pub fn hc(a: &Algebra, n: usize) -> usize {
    let quotient = chain_dim(a, n) - rank(one_minus_t_images(a, n));
    quotient - quotient_boundary_rank(a, n) - quotient_boundary_rank(a, n + 1)
}

/// `dim A / [A, A]`.
pub fn commutator_quotient_dim(a: &Algebra) -> usize {
    let d = a.dim();
    let comms = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| {
        let mut v = Vector::new();
        for (k, c) in a.mul_basis(i, j) {
            *v.entry(*k).or_insert_with(Scalar::zero) += c;
        }
        for (k, c) in a.mul_basis(j, i) {
            *v.entry(*k).or_insert_with(Scalar::zero) -= c;
        }
        v
    });
    d - rank(comms)
}

/// Number of conjugacy classes, straight from the table.
pub fn class_count(g: &FiniteGroup) -> usize {
    let n = g.order();
    let table = g.table();
    let e = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x)).unwrap();
    let inv = |x: usize| (0..n).find(|&y| table[x][y] == e).unwrap();
    let mut seen = vec![false; n];
    let mut classes = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        classes += 1;
        for h in 0..n {
            seen[table[table[h][x]][inv(h)]] = true;
        }
    }
    classes
}
