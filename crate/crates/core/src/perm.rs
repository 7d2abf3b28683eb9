//! Permutations of {1..r} acting on the right: points are composed through a
//! product left to right, (i)(uv) = ((i)u)v. One-line notation [a1,...,ar]
//! records the images (1)w = a1, ..., (r)w = ar.

use std::fmt;

use crate::error::Error;
use crate::shape::Composition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    /// images[i] is the 0-based image of the 0-based point i.
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Permutation {
            images: (0..r as u8).collect(),
        }
    }

    /// The simple transposition (i, i+1), 1 <= i < r.
    pub fn simple(i: usize, r: usize) -> Self {
        assert!(i >= 1 && i < r, "simple index out of range");
        let mut images: Vec<u8> = (0..r as u8).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn from_one_line(line: &[usize]) -> Result<Self, Error> {
        let r = line.len();
        let mut seen = vec![false; r];
        for &v in line {
            if v < 1 || v > r || seen[v - 1] {
                return Err(Error::InvalidInput(format!(
                    "{:?} is not a permutation of 1..{}",
                    line, r
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: line.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    pub fn r(&self) -> usize {
        self.images.len()
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    /// 1-based image of a 1-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// self followed by other.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.r(), other.r());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&v| other.images[v as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u8 == v)
    }

    /// Coxeter length: the number of inversions of the one-line notation.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Indices of the simple transpositions of one reduced expression,
    /// leftmost-descent first; the product of the listed simples equals self.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(w.length());
        'outer: loop {
            for i in 0..w.images.len().saturating_sub(1) {
                if w.images[i] > w.images[i + 1] {
                    // Left-multiplying by s_{i+1} swaps positions i, i+1.
                    w.images.swap(i, i + 1);
                    word.push(i + 1);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// True when multiplying on the right by s_i lengthens the element, i.e.
    /// the position of the value i precedes the position of i + 1.
    pub fn right_mul_lengthens(&self, i: usize) -> bool {
        let mut pos_i = 0;
        let mut pos_i1 = 0;
        for (p, &v) in self.images.iter().enumerate() {
            if v as usize + 1 == i {
                pos_i = p;
            } else if v as usize + 1 == i + 1 {
                pos_i1 = p;
            }
        }
        pos_i < pos_i1
    }

    /// Multiply on the right by the simple transposition s_i.
    pub fn mul_simple(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        for v in images.iter_mut() {
            if *v as usize + 1 == i {
                *v += 1;
            } else if *v as usize == i {
                *v -= 1;
            }
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", strs.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// All permutations of {1..r}, ordered lexicographically by one-line
/// notation.
pub fn all_permutations(r: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut line: Vec<u8> = Vec::with_capacity(r);
    let mut used = vec![false; r];
    fn rec(r: usize, line: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if line.len() == r {
            out.push(Permutation {
                images: line.clone(),
            });
            return;
        }
        for v in 0..r as u8 {
            if !used[v as usize] {
                used[v as usize] = true;
                line.push(v);
                rec(r, line, used, out);
                line.pop();
                used[v as usize] = false;
            }
        }
    }
    rec(r, &mut line, &mut used, &mut out);
    out
}

/// Strong Bruhat order via the sorted-prefix criterion: u <= v iff for every
/// k the sorted first k entries of u are entrywise at most those of v.
pub fn strong_bruhat_leq(u: &Permutation, v: &Permutation) -> bool {
    debug_assert_eq!(u.r(), v.r());
    if u.length() > v.length() {
        return false;
    }
    let r = u.r();
    let mut pu: Vec<u8> = Vec::with_capacity(r);
    let mut pv: Vec<u8> = Vec::with_capacity(r);
    for k in 0..r {
        let a = u.images[k];
        let idx = pu.partition_point(|&x| x < a);
        pu.insert(idx, a);
        let b = v.images[k];
        let idx = pv.partition_point(|&x| x < b);
        pv.insert(idx, b);
        if pu.iter().zip(pv.iter()).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

/// Weak order: u is a prefix of v, i.e. l(u) + l(u^-1 v) = l(v).
pub fn weak_prefix_leq(u: &Permutation, v: &Permutation) -> bool {
    debug_assert_eq!(u.r(), v.r());
    u.length() + u.inverse().compose(v).length() == v.length()
}

/// The parabolic subgroup W_lambda, ordered lexicographically by one-line
/// notation.
pub fn enumerate_w_lambda(lambda: &Composition) -> Vec<Permutation> {
    let r = lambda.r();
    let mut partial: Vec<Vec<u8>> = vec![Vec::new()];
    for (start, end) in lambda.blocks() {
        let block: Vec<u8> = (start..end).map(|v| (v - 1) as u8).collect();
        let mut next = Vec::new();
        for head in &partial {
            for perm_of_block in permutations_of(&block) {
                let mut line = head.clone();
                line.extend_from_slice(&perm_of_block);
                next.push(line);
            }
        }
        partial = next;
    }
    let mut out: Vec<Permutation> = partial
        .into_iter()
        .map(|images| {
            debug_assert_eq!(images.len(), r);
            Permutation { images }
        })
        .collect();
    out.sort_unstable();
    out
}

fn permutations_of(values: &[u8]) -> Vec<Vec<u8>> {
    if values.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let mut rest = values.to_vec();
        rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

/// True when the one-line notation is increasing within every block of
/// lambda, i.e. d is the shortest element of its coset W_lambda d.
pub fn is_distinguished(d: &Permutation, lambda: &Composition) -> bool {
    lambda.blocks().iter().all(|&(start, end)| {
        (start..end.saturating_sub(1)).all(|p| d.images[p - 1] < d.images[p])
    })
}

/// Decompose w = w1 * d with w1 in W_lambda and d the distinguished (unique
/// shortest) representative of W_lambda w; lengths are additive.
pub fn coset_decompose(w: &Permutation, lambda: &Composition) -> (Permutation, Permutation) {
    let mut images = w.images.clone();
    for (start, end) in lambda.blocks() {
        images[start - 1..end - 1].sort_unstable();
    }
    let d = Permutation { images };
    let w1 = w.compose(&d.inverse());
    debug_assert!(is_distinguished(&d, lambda));
    debug_assert!(lambda
        .blocks()
        .iter()
        .all(|&(s, e)| (s..e).all(|p| { let im = w1.apply(p); im >= s && im < e })));
    debug_assert_eq!(w1.length() + d.length(), w.length());
    (w1, d)
}

/// The distinguished coset representatives D_lambda, ordered by length and
/// then lexicographically by one-line notation.
pub fn enumerate_d_lambda(lambda: &Composition) -> Vec<Permutation> {
    let r = lambda.r();
    let mut out: Vec<Permutation> = Vec::new();
    let sizes: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let mut line: Vec<u8> = Vec::with_capacity(r);
    let mut avail: Vec<u8> = (0..r as u8).collect();
    fn rec(
        sizes: &[usize],
        line: &mut Vec<u8>,
        avail: &mut Vec<u8>,
        out: &mut Vec<Permutation>,
    ) {
        match sizes.split_first() {
            None => out.push(Permutation {
                images: line.clone(),
            }),
            Some((&k, rest)) => {
                for subset in subsets_of_size(avail, k) {
                    let before = line.len();
                    line.extend_from_slice(&subset);
                    let mut removed = avail.clone();
                    removed.retain(|v| !subset.contains(v));
                    let mut removed_ref = removed;
                    rec(rest, line, &mut removed_ref, out);
                    line.truncate(before);
                }
            }
        }
    }
    rec(&sizes, &mut line, &mut avail, &mut out);
    out.sort_unstable_by_key(|d| (d.length(), d.images.clone()));
    out
}

fn subsets_of_size(values: &[u8], k: usize) -> Vec<Vec<u8>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if values.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..=(values.len() - k) {
        for mut tail in subsets_of_size(&values[i + 1..], k - 1) {
            tail.insert(0, values[i]);
            out.push(tail);
        }
    }
    out
}

/// Distinguished double coset representatives D_{lambda,mu} =
/// D_lambda intersect D_mu^{-1}, ordered by length then one-line notation.
pub fn enumerate_d_lambda_mu(lambda: &Composition, mu: &Composition) -> Vec<Permutation> {
    enumerate_d_lambda(lambda)
        .into_iter()
        .filter(|d| is_distinguished(&d.inverse(), mu))
        .collect()
}

/// The permutation w_lambda with (t^lambda w_lambda)' = t^{lambda'}, defined
/// for partitions.
pub fn w_lambda(lambda: &Composition) -> Result<Permutation, Error> {
    if !lambda.is_partition() {
        return Err(Error::NotPartition(lambda.to_string()));
    }
    let dual = lambda.dual();
    // Entry of the transpose of the canonical dual tableau at box (i, j) of
    // lambda is i plus the number of boxes in the first j - 1 columns.
    let mut col_prefix: Vec<usize> = vec![0];
    for &p in dual.parts() {
        col_prefix.push(col_prefix.last().unwrap() + p as usize);
    }
    let mut line: Vec<usize> = Vec::with_capacity(lambda.r());
    for (i, &len) in lambda.parts().iter().enumerate() {
        for j in 0..len as usize {
            line.push(col_prefix[j] + i + 1);
        }
    }
    Permutation::from_one_line(&line)
}
