//! Sparse matrices over exact scalars: fraction-free rank over the Laurent
//! ring, rank at field specializations, Smith normal form over the integers,
//! and the text/JSON export formats.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::scalar::{CoeffRing, LaurentScalar, Specialization, SpecializedScalar};

/// Row-major sparse matrix; entries are kept nonzero by construction
/// discipline (accumulating setters prune).
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMat<T> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Clone> SparseMat<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.entries.get(&(i, j))
    }

    /// Store a value the caller guarantees nonzero.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(i < self.rows && j < self.cols);
        self.entries.insert((i, j), v);
    }

    /// Accumulate with zero pruning.
    pub fn add_entry<R: CoeffRing<Elem = T>>(&mut self, ring: &R, i: usize, j: usize, v: T)
    where
        T: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    {
        debug_assert!(i < self.rows && j < self.cols);
        if ring.is_zero(&v) {
            return;
        }
        match self.entries.entry((i, j)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = ring.add(e.get(), &v);
                if ring.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
        }
    }

    /// Entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// Entries of one row in column order.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &T)> {
        self.entries
            .range((i, 0)..=(i, usize::MAX))
            .map(|(&(_, j), v)| (j, v))
    }

    pub fn transpose(&self) -> SparseMat<T> {
        let mut out = SparseMat::new(self.cols, self.rows);
        for (i, j, v) in self.iter() {
            out.entries.insert((j, i), v.clone());
        }
        out
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> SparseMat<U> {
        let mut out = SparseMat::new(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            out.entries.insert((i, j), f(v));
        }
        out
    }

    /// Matrix product self * other.
    pub fn mul<R: CoeffRing<Elem = T>>(&self, ring: &R, other: &SparseMat<T>) -> SparseMat<T>
    where
        T: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync,
    {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = SparseMat::new(self.rows, other.cols);
        for (i, j, v) in self.iter() {
            for (k, w) in other.row(j) {
                out.add_entry(ring, i, k, ring.mul(v, w));
            }
        }
        out
    }
}

/// Specialize every entry; entries that evaluate to zero are dropped.
pub fn specialize(
    m: &SparseMat<LaurentScalar>,
    spec: &Specialization,
) -> SparseMat<SpecializedScalar> {
    let mut out = SparseMat::new(m.rows(), m.cols());
    for (i, j, v) in m.iter() {
        let s = spec.apply(v);
        if !s.is_zero() {
            out.set(i, j, s);
        }
    }
    out
}

/// Divide a row by the gcd of its integer contents and the common power of
/// q, keeping entries primitive; both divisions are exact by construction.
fn normalize_row(row: &mut HashMap<usize, LaurentScalar>) {
    let mut gcd = BigInt::zero();
    let mut shift = i64::MAX;
    for v in row.values() {
        gcd = num_integer::Integer::gcd(&gcd, &v.content());
        shift = shift.min(v.trailing_exp().expect("rows hold nonzero entries"));
    }
    if row.is_empty() || (gcd == BigInt::from(1) && shift == 0) {
        return;
    }
    let divisor = LaurentScalar::monomial(shift, gcd);
    for v in row.values_mut() {
        *v = v
            .div_exact(&divisor)
            .expect("content and trailing power divide exactly");
    }
}

/// Rank over the fraction field Q(q) by fraction-free elimination: rows are
/// kept as primitive integer Laurent vectors, the combination step
/// cross-multiplies (new = p * row - a * pivot_row) and then divides out the
/// integer content and common q-power, so every division is exact. Pivots
/// are chosen with the fewest Laurent terms (monomial pivots keep the
/// cross-multiplication growth-free), ties by position.
pub fn rank_generic(m: &SparseMat<LaurentScalar>) -> usize {
    let mut rows_data: Vec<HashMap<usize, LaurentScalar>> = vec![HashMap::new(); m.rows()];
    for (i, j, v) in m.iter() {
        rows_data[i].insert(j, v.clone());
    }
    for row in rows_data.iter_mut() {
        normalize_row(row);
    }
    let mut rank = 0;
    let mut active: Vec<usize> = (0..m.rows()).collect();
    loop {
        // Choose the pivot: fewest terms, then smallest (row, col).
        let mut best: Option<(usize, usize, usize, usize)> = None; // (terms, row, col, active_pos)
        for (pos, &i) in active.iter().enumerate() {
            for (&j, v) in &rows_data[i] {
                let key = (v.term_count(), i, j, pos);
                if best.map_or(true, |b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
                    best = Some(key);
                }
            }
        }
        let Some((_, pr, pc, pos)) = best else {
            break;
        };
        let pivot_row = rows_data[pr].clone();
        let pivot_val = pivot_row[&pc].clone();
        active.swap_remove(pos);
        rank += 1;
        for &i in &active {
            let Some(a) = rows_data[i].get(&pc).cloned() else {
                continue;
            };
            let mut new_row: HashMap<usize, LaurentScalar> =
                HashMap::with_capacity(rows_data[i].len() + pivot_row.len());
            for (&j, v) in &rows_data[i] {
                if j == pc {
                    continue;
                }
                let mut num = v.mul(&pivot_val);
                if let Some(pv) = pivot_row.get(&j) {
                    num = num.sub(&a.mul(pv));
                }
                if !num.is_zero() {
                    new_row.insert(j, num);
                }
            }
            for (&j, pv) in &pivot_row {
                if j == pc || rows_data[i].contains_key(&j) {
                    continue;
                }
                new_row.insert(j, a.mul(pv).neg());
            }
            normalize_row(&mut new_row);
            rows_data[i] = new_row;
        }
    }
    rank
}

/// Rank over the field given by the specialization, by ordinary Gaussian
/// elimination on sparse rows.
pub fn rank_specialized(m: &SparseMat<LaurentScalar>, spec: &Specialization) -> usize {
    let sm = specialize(m, spec);
    let mut rows_data: Vec<HashMap<usize, SpecializedScalar>> = vec![HashMap::new(); sm.rows()];
    for (i, j, v) in sm.iter() {
        rows_data[i].insert(j, v.clone());
    }
    let mut rank = 0;
    let mut active: Vec<usize> = (0..sm.rows()).collect();
    loop {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (pos, &i) in active.iter().enumerate() {
            for &j in rows_data[i].keys() {
                let nnz = rows_data[i].len();
                if best.map_or(true, |b| (nnz, i, j) < (b.0, b.1, b.2)) {
                    best = Some((nnz, i, j, pos));
                }
            }
        }
        let Some((_, pr, pc, pos)) = best else {
            break;
        };
        let pivot_row = rows_data[pr].clone();
        let pivot_inv = pivot_row[&pc]
            .inv()
            .expect("pivot entries are nonzero by selection");
        active.swap_remove(pos);
        rank += 1;
        for &i in &active {
            let Some(a) = rows_data[i].get(&pc).cloned() else {
                continue;
            };
            let factor = a.mul(&pivot_inv);
            let mut row = std::mem::take(&mut rows_data[i]);
            for (&j, pv) in &pivot_row {
                let delta = factor.mul(pv).neg();
                match row.entry(j) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&delta);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        if !delta.is_zero() {
                            e.insert(delta);
                        }
                    }
                }
            }
            debug_assert!(!row.contains_key(&pc));
            rows_data[i] = row;
        }
    }
    rank
}

/// Evaluate entries at q0 in {1, -1} into integers.
pub fn integer_matrix_at(
    m: &SparseMat<LaurentScalar>,
    q0: i64,
) -> Result<Vec<Vec<BigInt>>, Error> {
    if q0 != 1 && q0 != -1 {
        return Err(Error::InvalidSpecialization(format!(
            "integral evaluation requires q0 = 1 or -1, got {}",
            q0
        )));
    }
    let mut out = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
    for (i, j, v) in m.iter() {
        let mut acc = BigInt::zero();
        for &(e, ref c) in v.terms() {
            if q0 == 1 || e.rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        out[i][j] = acc;
    }
    Ok(out)
}

/// Elementary divisors (the nonzero diagonal of the Smith normal form, as
/// positive integers, each dividing the next).
pub fn smith_normal_form(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // Find the nonzero entry of smallest absolute value in the trailing
        // submatrix.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            break;
        };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        // Clear column and row t; restart pivot selection when a nonzero
        // remainder appears (it is strictly smaller than the pivot).
        let mut clean = true;
        for i in (t + 1)..rows {
            if !m[i][t].is_zero() {
                let factor = div_rounded(&m[i][t], &m[t][t]);
                for j in t..cols {
                    let v = &m[t][j] * &factor;
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..cols {
            if !m[t][j].is_zero() {
                let factor = div_rounded(&m[t][j], &m[t][t]);
                for row in m.iter_mut().take(rows).skip(t) {
                    let v = &row[t] * &factor;
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Enforce the divisibility chain: pull any non-divisible entry into
        // row t and restart this pivot.
        let pivot = m[t][t].clone();
        let mut fixed = true;
        'outer: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !(&m[i][j] % &pivot).is_zero() {
                    for jj in t..cols {
                        let v = m[i][jj].clone();
                        m[t][jj] += v;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        divisors.push(pivot.abs());
        t += 1;
    }
    divisors
}

/// Quotient rounded to nearest, so the remainder has absolute value at most
/// half the divisor.
fn div_rounded(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (mut q, r) = num_integer::Integer::div_mod_floor(a, b);
    if &r * &two > b.abs() {
        q += 1;
    }
    q
}

/// Text export: header `degree n rows R cols C`, one line per entry
/// `row col {exp:coef,...}` with exponents ascending.
pub fn write_matrix_text(
    out: &mut impl Write,
    degree: i64,
    m: &SparseMat<LaurentScalar>,
) -> std::io::Result<()> {
    writeln!(out, "degree {} rows {} cols {}", degree, m.rows(), m.cols())?;
    for (i, j, v) in m.iter() {
        let terms: Vec<String> = v
            .terms()
            .iter()
            .map(|(e, c)| format!("{}:{}", e, c))
            .collect();
        writeln!(out, "{} {} {{{}}}", i, j, terms.join(","))?;
    }
    Ok(())
}

/// JSON export mirroring the text format.
pub fn matrix_json(degree: i64, m: &SparseMat<LaurentScalar>) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = m
        .iter()
        .map(|(i, j, v)| {
            let terms: serde_json::Map<String, serde_json::Value> = v
                .terms()
                .iter()
                .map(|(e, c)| (e.to_string(), serde_json::Value::String(c.to_string())))
                .collect();
            serde_json::json!({"row": i, "col": j, "terms": terms})
        })
        .collect();
    serde_json::json!({
        "degree": degree,
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{default_battery, FractionScalar, LaurentRing};

    fn lmat(rows: usize, cols: usize, entries: &[(usize, usize, LaurentScalar)]) -> SparseMat<LaurentScalar> {
        let mut m = SparseMat::new(rows, cols);
        for (i, j, v) in entries {
            if !v.is_zero() {
                m.set(*i, *j, v.clone());
            }
        }
        m
    }

    fn q(k: i64) -> LaurentScalar {
        LaurentScalar::q_power(k)
    }

    fn n(v: i64) -> LaurentScalar {
        LaurentScalar::from_int(BigInt::from(v))
    }

    /// Reference rank: naive Gaussian elimination over the fraction field.
    fn fraction_rank(m: &SparseMat<LaurentScalar>) -> usize {
        let mut dense: Vec<Vec<FractionScalar>> =
            vec![vec![FractionScalar::zero(); m.cols()]; m.rows()];
        for (i, j, v) in m.iter() {
            dense[i][j] = FractionScalar::from_laurent(v.clone());
        }
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..m.rows()).find(|&i| !dense[i][col].is_zero()) else {
                continue;
            };
            dense.swap(rank, p);
            let inv = dense[rank][col].inv().expect("pivot is nonzero");
            for i in 0..m.rows() {
                if i != rank && !dense[i][col].is_zero() {
                    let f = dense[i][col].mul(&inv);
                    for j in col..m.cols() {
                        let sub = f.mul(&dense[rank][j]);
                        dense[i][j] = dense[i][j].sub(&sub);
                    }
                }
            }
            rank += 1;
            if rank == m.rows() {
                break;
            }
        }
        rank
    }

    #[test]
    fn product_and_transpose() {
        let ring = LaurentRing;
        let a = lmat(2, 2, &[(0, 0, n(1)), (0, 1, q(1)), (1, 1, n(1))]);
        let b = lmat(2, 1, &[(0, 0, q(-1)), (1, 0, n(-1))]);
        let p = a.mul(&ring, &b);
        assert_eq!(p.get(0, 0), Some(&q(-1).sub(&q(1))));
        assert_eq!(p.get(1, 0), Some(&n(-1)));
        assert_eq!(a.transpose().get(1, 0), Some(&q(1)));
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(rank_generic(&SparseMat::<LaurentScalar>::new(3, 2)), 0);
        // The boundary column (1, q)^T has rank 1.
        let m = lmat(2, 1, &[(0, 0, n(1)), (1, 0, q(1))]);
        assert_eq!(rank_generic(&m), 1);
        // Identity.
        let m = lmat(3, 3, &[(0, 0, n(1)), (1, 1, q(2)), (2, 2, n(5))]);
        assert_eq!(rank_generic(&m), 3);
        // Rank deficient: second row is q times the first.
        let m = lmat(
            2,
            2,
            &[
                (0, 0, n(1)),
                (0, 1, q(-1)),
                (1, 0, q(1)),
                (1, 1, n(1)),
            ],
        );
        assert_eq!(rank_generic(&m), 1);
    }

    #[test]
    fn generic_rank_agrees_with_fraction_field_elimination() {
        // Seeded pseudo-random small matrices with Laurent entries.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let mut m = SparseMat::new(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    if rng.gen_bool(0.55) {
                        let c = rng.gen_range(-3i64..=3);
                        let e = rng.gen_range(-2i64..=2);
                        let v = LaurentScalar::monomial(e, BigInt::from(c));
                        if !v.is_zero() {
                            let add = m
                                .get(i, j)
                                .cloned()
                                .map_or(v.clone(), |old| old.add(&v));
                            if add.is_zero() {
                                continue;
                            }
                            m.set(i, j, add);
                        }
                    }
                }
            }
            assert_eq!(rank_generic(&m), fraction_rank(&m));
            assert_eq!(rank_generic(&m.transpose()), rank_generic(&m));
        }
    }

    #[test]
    fn specialized_rank_bounds() {
        let m = lmat(
            2,
            2,
            &[
                (0, 0, n(1)),
                (0, 1, n(1)),
                (1, 0, q(1)),
                (1, 1, n(1)),
            ],
        );
        // Generically invertible (determinant 1 - q), singular at q0 = 1.
        assert_eq!(rank_generic(&m), 2);
        for spec in default_battery() {
            let r = rank_specialized(&m, &spec);
            assert!(r <= 2);
            let singular = spec.descriptor().ends_with(",1") || spec.descriptor() == "rat:1";
            assert_eq!(r, if singular { 1 } else { 2 }, "{}", spec.descriptor());
        }
    }

    #[test]
    fn integer_evaluation() {
        // q^2 - 2q + 1 evaluates to 0 at q0=1 and 4 at q0=-1.
        let v = q(2).sub(&q(1).scale(&BigInt::from(2))).add(&n(1));
        let m = lmat(1, 1, &[(0, 0, v)]);
        let at1 = integer_matrix_at(&m, 1).unwrap();
        assert_eq!(at1[0][0], BigInt::zero());
        let atm1 = integer_matrix_at(&m, -1).unwrap();
        assert_eq!(atm1[0][0], BigInt::from(4));
        assert!(integer_matrix_at(&m, 2).is_err());
    }

    #[test]
    fn smith_normal_form_examples() {
        let id = vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(smith_normal_form(id), vec![BigInt::from(1), BigInt::from(1)]);
        let diag2 = vec![vec![BigInt::from(2)]];
        assert_eq!(smith_normal_form(diag2), vec![BigInt::from(2)]);
        // A classic: [[2,4,4],[-6,6,12],[10,4,16]] has divisors 2, 2, 156.
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(4), BigInt::from(16)],
        ];
        let d = smith_normal_form(m);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
        // Divisor chain property on a seeded sample.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| BigInt::from(rng.gen_range(-6i64..=6)))
                        .collect()
                })
                .collect();
            let d = smith_normal_form(m.clone());
            for w in d.windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", d);
            }
            // Rank agreement with the independent integer elimination.
            let entries: Vec<(usize, usize, i64)> = m
                .iter()
                .enumerate()
                .flat_map(|(i, row)| {
                    row.iter().enumerate().filter_map(move |(j, v)| {
                        let v = i64::try_from(v.clone()).unwrap();
                        (v != 0).then_some((i, j, v))
                    })
                })
                .collect();
            assert_eq!(
                d.len(),
                crate::oracle::integer_matrix_rank(rows, cols, &entries)
            );
        }
    }

    #[test]
    fn export_formats() {
        let m = lmat(2, 2, &[(0, 1, q(1).sub(&n(2))), (1, 0, q(-1))]);
        let mut buf = Vec::new();
        write_matrix_text(&mut buf, 1, &m).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "degree 1 rows 2 cols 2\n0 1 {0:-2,1:1}\n1 0 {-1:1}\n"
        );
        let j = matrix_json(1, &m);
        assert_eq!(j["rows"], 2);
        assert_eq!(j["entries"][0]["terms"]["1"], "1");
        assert_eq!(j["entries"][1]["terms"]["-1"], "1");
    }
}
