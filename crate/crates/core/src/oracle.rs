//! Independent brute-force reference implementations used only by tests.
//! Each is written against the plainest possible definition, so agreement
//! with the production code is meaningful evidence of correctness.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::perm::{all_permutations, enumerate_w_lambda, Permutation};
use crate::shape::Composition;

/// Subword characterization of the strong Bruhat order: u <= v iff some
/// subword of one fixed reduced expression of v multiplies out to u.
pub fn bruhat_leq_subword(u: &Permutation, v: &Permutation) -> bool {
    let word = v.reduced_word();
    let r = v.r();
    let n = word.len();
    if u.length() > n {
        return false;
    }
    for mask in 0u32..(1 << n) {
        let mut acc = Permutation::identity(r);
        for (k, &i) in word.iter().enumerate() {
            if mask & (1 << k) != 0 {
                acc = acc.compose(&Permutation::simple(i, r));
            }
        }
        if acc == *u {
            return true;
        }
    }
    false
}

/// The unique shortest element of the coset W_lambda w.
pub fn coset_min(w: &Permutation, lambda: &Composition) -> Permutation {
    enumerate_w_lambda(lambda)
        .iter()
        .map(|w1| w1.compose(w))
        .min_by_key(|x| (x.length(), x.one_line()))
        .unwrap()
}

/// The unique shortest element of the double coset W_lambda w W_mu.
pub fn double_coset_min(
    w: &Permutation,
    lambda: &Composition,
    mu: &Composition,
) -> Permutation {
    let wl = enumerate_w_lambda(lambda);
    let wm = enumerate_w_lambda(mu);
    wl.iter()
        .flat_map(|a| wm.iter().map(move |b| a.compose(w).compose(b)))
        .min_by_key(|x| (x.length(), x.one_line()))
        .unwrap()
}

/// Number of standard tableaux of a partition shape, by the hook length
/// formula: r! divided by the product of all hook lengths.
pub fn hook_length_count(lambda: &Composition) -> u64 {
    assert!(lambda.is_partition());
    let parts: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let dual: Vec<usize> = lambda.dual().parts().iter().map(|&p| p as usize).collect();
    let mut numerator: u128 = 1;
    for k in 1..=lambda.r() as u128 {
        numerator *= k;
    }
    let mut denom: u128 = 1;
    for (i, &len) in parts.iter().enumerate() {
        for j in 0..len {
            let arm = len - j - 1;
            let leg = dual[j] - i - 1;
            denom *= (arm + leg + 1) as u128;
        }
    }
    (numerator / denom) as u64
}

/// An element of the integral group algebra of the symmetric group: the
/// specialization target of the generic algebra at q = 1.
pub type GroupAlgebraElem = HashMap<Permutation, BigInt>;

pub fn group_algebra_basis(w: Permutation) -> GroupAlgebraElem {
    let mut m = HashMap::new();
    m.insert(w, BigInt::from(1));
    m
}

pub fn group_algebra_mul(a: &GroupAlgebraElem, b: &GroupAlgebraElem) -> GroupAlgebraElem {
    let mut out: GroupAlgebraElem = HashMap::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let entry = out.entry(u.compose(v)).or_default();
            *entry += cu * cv;
        }
    }
    out.retain(|_, c| *c != BigInt::from(0));
    out
}

/// Sum of T_w over a whole parabolic subgroup, at q = 1.
pub fn group_algebra_x(lambda: &Composition) -> GroupAlgebraElem {
    let mut m = HashMap::new();
    for w in enumerate_w_lambda(lambda) {
        m.insert(w, BigInt::from(1));
    }
    m
}

/// Signed sum over a parabolic subgroup, at q = 1: coefficient (-1)^{l(w)}.
pub fn group_algebra_y(lambda: &Composition) -> GroupAlgebraElem {
    let mut m = HashMap::new();
    for w in enumerate_w_lambda(lambda) {
        let sign = if w.length() % 2 == 0 { 1 } else { -1 };
        m.insert(w, BigInt::from(sign));
    }
    m
}

/// Rank of an integer matrix by exact fraction-free elimination; used to
/// cross-check the generic rank engine after specializing at q = 1.
pub fn integer_matrix_rank(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
    let mut m = vec![vec![BigInt::from(0); cols]; rows];
    for &(i, j, v) in entries {
        m[i][j] += BigInt::from(v);
    }
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&i| m[i][col] != BigInt::from(0));
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        for i in 0..rows {
            if i != row && m[i][col] != BigInt::from(0) {
                let a = m[row][col].clone();
                let b = m[i][col].clone();
                for j in 0..cols {
                    let val = &m[i][j] * &a - &m[row][j] * &b;
                    m[i][j] = val;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Composition;

    #[test]
    fn hook_counts_frozen() {
        let cases: &[(&[u32], u64)] = &[
            (&[1], 1),
            (&[2], 1),
            (&[1, 1], 1),
            (&[2, 1], 2),
            (&[2, 2], 2),
            (&[3, 1], 3),
            (&[3, 2], 5),
            (&[2, 2, 1], 5),
            (&[3, 1, 1], 6),
            (&[1, 1, 1, 1], 1),
            (&[5], 1),
            (&[3, 3], 5),
            (&[4, 2], 9),
            (&[2, 2, 2], 5),
            (&[3, 2, 1], 16),
        ];
        for (parts, expected) in cases {
            let lam = Composition::new(parts.to_vec());
            assert_eq!(hook_length_count(&lam), *expected, "lambda = {}", lam);
        }
    }

    #[test]
    fn hook_counts_sum_of_squares() {
        // Sum over partitions of r of |T^st|^2 = r!.
        for r in 1..=6usize {
            let total: u64 = crate::shape::partitions_of(r)
                .iter()
                .map(|lam| {
                    let c = hook_length_count(lam);
                    c * c
                })
                .sum();
            let factorial: u64 = (1..=r as u64).product();
            assert_eq!(total, factorial);
        }
    }

    #[test]
    fn group_algebra_is_associative() {
        let s1 = group_algebra_basis(Permutation::simple(1, 3));
        let s2 = group_algebra_basis(Permutation::simple(2, 3));
        let x = group_algebra_x(&Composition::new(vec![2, 1]));
        let ab_c = group_algebra_mul(&group_algebra_mul(&s1, &s2), &x);
        let a_bc = group_algebra_mul(&s1, &group_algebra_mul(&s2, &x));
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn integer_rank_small_cases() {
        // 2x2 identity.
        assert_eq!(integer_matrix_rank(2, 2, &[(0, 0, 1), (1, 1, 1)]), 2);
        // Rank-1 matrix of ones.
        assert_eq!(
            integer_matrix_rank(2, 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]),
            1
        );
        assert_eq!(integer_matrix_rank(3, 2, &[]), 0);
    }
}
