//! The permutation module M^lambda = x_lambda H as a free module with basis
//! x_lambda T_d over the canonical ordered list D_lambda, the right action,
//! the Specht basis z_lambda T_d inside it, and dual functionals.

use std::collections::HashMap;
use std::fmt;

use crate::cache;
use crate::error::Error;
use crate::hecke::{x_elem, z_elem, HeckeElement};
use crate::matrix::SparseMat;
use crate::perm::{
    coset_decompose, is_distinguished, w_lambda, weak_prefix_leq, Permutation,
};
use crate::scalar::CoeffRing;
use crate::shape::Composition;
use crate::tableau::{d_to_tableau, Tableau};

/// Element of M^lambda in coordinates over the canonical D_lambda list.
#[derive(Clone, PartialEq, Eq)]
pub struct MVector<R: CoeffRing> {
    shape: Composition,
    coords: HashMap<usize, R::Elem>,
}

impl<R: CoeffRing> MVector<R> {
    pub fn zero(shape: &Composition) -> Self {
        MVector {
            shape: shape.clone(),
            coords: HashMap::new(),
        }
    }

    pub fn unit(ring: &R, shape: &Composition, index: usize) -> Self {
        let mut v = MVector::zero(shape);
        v.add_coord(ring, index, ring.one());
        v
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        cache::d_lambda_list(&self.shape).len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, ring: &R, index: usize) -> R::Elem {
        self.coords
            .get(&index)
            .cloned()
            .unwrap_or_else(|| ring.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.coords.iter().map(|(&i, c)| (i, c))
    }

    /// Coordinates sorted by index, for deterministic output.
    pub fn coords_sorted(&self) -> Vec<(usize, R::Elem)> {
        let mut v: Vec<(usize, R::Elem)> =
            self.coords.iter().map(|(&i, c)| (i, c.clone())).collect();
        v.sort_by_key(|&(i, _)| i);
        v
    }

    pub fn add_coord(&mut self, ring: &R, index: usize, c: R::Elem) {
        debug_assert!(index < self.dim());
        if ring.is_zero(&c) {
            return;
        }
        match self.coords.entry(index) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = ring.add(e.get(), &c);
                if ring.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, ring: &R, other: &MVector<R>) -> MVector<R> {
        debug_assert_eq!(self.shape, other.shape);
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_coord(ring, i, c.clone());
        }
        out
    }

    pub fn scale(&self, ring: &R, c: &R::Elem) -> MVector<R> {
        let mut out = MVector::zero(&self.shape);
        for (i, a) in self.iter() {
            out.add_coord(ring, i, ring.mul(a, c));
        }
        out
    }

    /// Expand back into the T_w basis: x_lambda T_d = sum of T_{wd} over
    /// w in W_lambda, with unit coefficients (lengths are additive).
    pub fn lift(&self, ring: &R) -> HeckeElement<R> {
        let subgroup = cache::w_lambda_elements(&self.shape);
        let reps = cache::d_lambda_list(&self.shape);
        let mut out = HeckeElement::zero(self.shape.r());
        for (i, c) in self.iter() {
            let d = &reps[i];
            for w in subgroup.iter() {
                out.add_term(ring, w.compose(d), c.clone());
            }
        }
        out
    }

    /// Right action of T_s on coordinates: for a basis element x_lambda T_d,
    ///   ds in D_lambda, longer:  moves to ds;
    ///   ds in D_lambda, shorter: q (ds) + (q-1) d;
    ///   ds not in D_lambda:      q d.
    pub fn act_simple(&self, ring: &R, s: usize) -> MVector<R> {
        let reps = cache::d_lambda_list(&self.shape);
        let index = cache::d_lambda_index(&self.shape);
        let q = ring.q_power(1);
        let q_minus_one = ring.q_minus_one();
        let mut out = MVector::zero(&self.shape);
        for (i, c) in self.iter() {
            let d = &reps[i];
            let ds = d.mul_simple(s);
            if is_distinguished(&ds, &self.shape) {
                let j = index[&ds];
                if ds.length() > d.length() {
                    out.add_coord(ring, j, c.clone());
                } else {
                    out.add_coord(ring, j, ring.mul(&q, c));
                    out.add_coord(ring, i, ring.mul(&q_minus_one, c));
                }
            } else {
                out.add_coord(ring, i, ring.mul(&q, c));
            }
        }
        out
    }

    /// Right action of T_w along a reduced word.
    pub fn act_tw(&self, ring: &R, w: &Permutation) -> MVector<R> {
        let mut acc = self.clone();
        for i in w.reduced_word() {
            acc = acc.act_simple(ring, i);
        }
        acc
    }
}

impl<R: CoeffRing> fmt::Debug for MVector<R>
where
    R::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords_sorted()
            .iter()
            .map(|(i, c)| format!("({}) e{}", c, i))
            .collect();
        write!(f, "[{}]", parts.join(" + "))
    }
}

/// Write an algebra element in the x_lambda T_d coordinates of M^lambda.
/// Since x_lambda T_d = sum of T_{w1 d} with unit coefficients, membership
/// requires the raw T_w coefficient to be constant within each coset
/// W_lambda d; that constant is the basis coordinate a_d.
pub fn reduce_to_basis<R: CoeffRing>(
    ring: &R,
    h: &HeckeElement<R>,
    lambda: &Composition,
) -> Result<MVector<R>, Error> {
    let index = cache::d_lambda_index(lambda);
    let order = cache::w_lambda_elements(lambda).len();
    let mut out = MVector::zero(lambda);
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (w, c) in h.support() {
        let (_, d) = coset_decompose(w, lambda);
        let i = index[&d];
        let a = c.clone();
        match seen.entry(i) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(1);
                out.add_coord(ring, i, a);
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += 1;
                if out.coord(ring, i) != a {
                    return Err(Error::NotInModule {
                        shape: lambda.to_string(),
                        detail: format!(
                            "coefficient at T_{} disagrees within the coset of {}",
                            w, d
                        ),
                    });
                }
            }
        }
    }
    // A coset with a nonzero coordinate must be fully populated.
    for (i, count) in &seen {
        if *count != order && !ring.is_zero(&out.coord(ring, *i)) {
            return Err(Error::NotInModule {
                shape: lambda.to_string(),
                detail: format!(
                    "coset {} carries {} of {} required terms",
                    cache::d_lambda_list(lambda)[*i],
                    count,
                    order
                ),
            });
        }
    }
    Ok(out)
}

/// A linear functional on M^lambda in dual coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct Functional<R: CoeffRing> {
    shape: Composition,
    values: HashMap<usize, R::Elem>,
}

impl<R: CoeffRing> Functional<R> {
    pub fn zero(shape: &Composition) -> Self {
        Functional {
            shape: shape.clone(),
            values: HashMap::new(),
        }
    }

    /// The basis functional eps_d dual to x_lambda T_d.
    pub fn eps(ring: &R, shape: &Composition, index: usize) -> Self {
        let mut f = Functional::zero(shape);
        f.add_value(ring, index, ring.one());
        f
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn add_value(&mut self, ring: &R, index: usize, c: R::Elem) {
        if ring.is_zero(&c) {
            return;
        }
        match self.values.entry(index) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = ring.add(e.get(), &c);
                if ring.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn value(&self, ring: &R, index: usize) -> R::Elem {
        self.values
            .get(&index)
            .cloned()
            .unwrap_or_else(|| ring.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.values.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn evaluate(&self, ring: &R, v: &MVector<R>) -> R::Elem {
        debug_assert_eq!(self.shape, v.shape);
        let mut acc = ring.zero();
        for (i, c) in self.iter() {
            acc = ring.add(&acc, &ring.mul(c, &v.coord(ring, i)));
        }
        acc
    }
}

/// The Specht basis of S^lambda inside M^lambda: vectors z_lambda T_d for
/// the prefixes d of w_{lambda'}, each paired with the standard tableau
/// t^lambda w_lambda d. Entries are sorted by the reading word of the
/// tableau. Empty for non-partition shapes.
pub struct SpechtBasis<R: CoeffRing> {
    pub shape: Composition,
    pub ds: Vec<Permutation>,
    pub tableaux: Vec<Tableau>,
    pub vectors: Vec<MVector<R>>,
}

pub fn specht_basis<R: CoeffRing>(ring: &R, lambda: &Composition) -> SpechtBasis<R> {
    if !lambda.is_partition() {
        return SpechtBasis {
            shape: lambda.clone(),
            ds: Vec::new(),
            tableaux: Vec::new(),
            vectors: Vec::new(),
        };
    }
    let r = lambda.r();
    let w_dual = w_lambda(&lambda.dual()).expect("dual of a partition is a partition");
    let wl = w_lambda(lambda).expect("partition");
    let z = z_elem(ring, lambda).expect("partition");
    let mut entries: Vec<(Tableau, Permutation, MVector<R>)> = Vec::new();
    for d in crate::perm::all_permutations(r) {
        if !weak_prefix_leq(&d, &w_dual) {
            continue;
        }
        let t = d_to_tableau(lambda, &wl.compose(&d));
        debug_assert!(t.is_standard(), "t^lambda w_lambda d must be standard");
        let vec = reduce_to_basis(ring, &z.mul_by_tw(ring, &d), lambda)
            .expect("z_lambda T_d lies in M^lambda");
        entries.push((t, d, vec));
    }
    entries.sort_by(|a, b| a.0.rows().cmp(b.0.rows()));
    let mut ds = Vec::with_capacity(entries.len());
    let mut tableaux = Vec::with_capacity(entries.len());
    let mut vectors = Vec::with_capacity(entries.len());
    for (t, d, v) in entries {
        tableaux.push(t);
        ds.push(d);
        vectors.push(v);
    }
    SpechtBasis {
        shape: lambda.clone(),
        ds,
        tableaux,
        vectors,
    }
}

/// Verify the triangular shape of the Specht vectors: coordinate q^{l(d)}
/// at w_lambda d, all other support strictly longer.
pub fn leading_term_check<R: CoeffRing>(ring: &R, lambda: &Composition) -> Result<(), Error> {
    let basis = specht_basis(ring, lambda);
    if basis.vectors.is_empty() {
        return Ok(());
    }
    let wl = w_lambda(lambda)?;
    let reps = cache::d_lambda_list(lambda);
    let index = cache::d_lambda_index(lambda);
    for (d, v) in basis.ds.iter().zip(&basis.vectors) {
        let lead = wl.compose(d);
        let lead_idx = *index.get(&lead).ok_or_else(|| {
            Error::Internal(format!("w_lambda d = {} not distinguished", lead))
        })?;
        if v.coord(ring, lead_idx) != ring.q_power(d.length() as i64) {
            return Err(Error::Internal(format!(
                "leading coefficient at {} for lambda = {}, d = {} is not q^l(d)",
                lead, lambda, d
            )));
        }
        for (i, c) in v.iter() {
            if i != lead_idx && !ring.is_zero(c) && reps[i].length() <= lead.length() {
                return Err(Error::Internal(format!(
                    "vector for d = {} supported at {} which is not longer than {}",
                    d, reps[i], lead
                )));
            }
        }
    }
    Ok(())
}

/// Rows: standard tableaux in reading-word order; columns: the canonical
/// D_lambda list; entry (t, e) is the coefficient of x_lambda T_e in
/// z_lambda T_d where t = t^lambda w_lambda d.
pub fn psi_matrix<R: CoeffRing>(ring: &R, lambda: &Composition) -> SparseMat<R::Elem> {
    let basis = specht_basis(ring, lambda);
    let cols = cache::d_lambda_list(lambda).len();
    let mut m = SparseMat::new(basis.vectors.len(), cols);
    for (row, v) in basis.vectors.iter().enumerate() {
        for (col, c) in v.iter() {
            m.set(row, col, c.clone());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::y_elem;
    use crate::oracle;
    use crate::scalar::{LaurentRing, LaurentScalar};
    use crate::shape::{compositions_of, partitions_of};
    use num_bigint::BigInt;

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec())
    }

    fn one() -> LaurentScalar {
        LaurentScalar::one()
    }

    #[test]
    fn reduce_x_and_parabolic_products() {
        let ring = LaurentRing;
        let lam = c(&[2]);
        let x = x_elem(&ring, &lam);
        let v = reduce_to_basis(&ring, &x, &lam).unwrap();
        assert_eq!(v.coord(&ring, 0), one());
        assert_eq!(v.coords_sorted().len(), 1);
        // x_(2) T_s = q at the identity coordinate.
        let xs = x.mul_by_ts(&ring, 1);
        let v = reduce_to_basis(&ring, &xs, &lam).unwrap();
        assert_eq!(v.coord(&ring, 0), LaurentScalar::q_power(1));
        assert_eq!(v.coords_sorted().len(), 1);
    }

    #[test]
    fn reduce_rejects_foreign_elements() {
        let ring = LaurentRing;
        let lam = c(&[2]);
        // T_1 alone is not in M^(2): its coset is half-populated.
        let h = HeckeElement::one(&ring, 2);
        assert!(reduce_to_basis(&ring, &h, &lam).is_err());
        // Wrong ratio within the coset.
        let mut h = HeckeElement::one(&ring, 2);
        h.add_term(
            &ring,
            Permutation::simple(1, 2),
            LaurentScalar::from_int(BigInt::from(2)),
        );
        assert!(reduce_to_basis(&ring, &h, &lam).is_err());
        // y_(2) is not in M^(2) either (coefficients 1 and -q^-1).
        assert!(reduce_to_basis(&ring, &y_elem(&ring, &c(&[2])), &lam).is_err());
    }

    #[test]
    fn lift_round_trips() {
        let ring = LaurentRing;
        for lam in compositions_of(4, 4) {
            let dim = cache::d_lambda_list(&lam).len();
            for i in 0..dim {
                let v = MVector::unit(&ring, &lam, i);
                let back = reduce_to_basis(&ring, &v.lift(&ring), &lam).unwrap();
                assert_eq!(back, v);
            }
        }
    }

    #[test]
    fn act_simple_three_cases() {
        let ring = LaurentRing;
        // lambda = (1,1): identity coordinate moves to s.
        let lam = c(&[1, 1]);
        let v = MVector::unit(&ring, &lam, 0).act_simple(&ring, 1);
        assert_eq!(v.coord(&ring, 1), one());
        assert_eq!(v.coords_sorted().len(), 1);
        // and back: s-coordinate splits.
        let v = MVector::unit(&ring, &lam, 1).act_simple(&ring, 1);
        assert_eq!(v.coord(&ring, 0), LaurentScalar::q_power(1));
        assert_eq!(
            v.coord(&ring, 1),
            LaurentScalar::q_power(1).sub(&one())
        );
        // lambda = (2): q at the identity.
        let lam = c(&[2]);
        let v = MVector::unit(&ring, &lam, 0).act_simple(&ring, 1);
        assert_eq!(v.coord(&ring, 0), LaurentScalar::q_power(1));
    }

    #[test]
    fn act_simple_agrees_with_hecke_arithmetic() {
        let ring = LaurentRing;
        for lam in compositions_of(4, 4) {
            let dim = cache::d_lambda_list(&lam).len();
            for i in 0..dim {
                let v = MVector::unit(&ring, &lam, i);
                for s in 1..4 {
                    let fast = v.act_simple(&ring, s);
                    let slow =
                        reduce_to_basis(&ring, &v.lift(&ring).mul_by_ts(&ring, s), &lam)
                            .unwrap();
                    assert_eq!(fast, slow, "lambda = {}, i = {}, s = {}", lam, i, s);
                }
            }
        }
    }

    #[test]
    fn specht_basis_column_shape() {
        let ring = LaurentRing;
        let basis = specht_basis(&ring, &c(&[1, 1]));
        assert_eq!(basis.vectors.len(), 1);
        let v = &basis.vectors[0];
        assert_eq!(v.coord(&ring, 0), one());
        assert_eq!(v.coord(&ring, 1), LaurentScalar::q_power(-1).neg());
        assert!(basis.tableaux[0].is_standard());
        // Non-partitions carry the zero module.
        assert!(specht_basis(&ring, &c(&[1, 2])).vectors.is_empty());
    }

    #[test]
    fn specht_rank_matches_standard_count() {
        let ring = LaurentRing;
        for r in 1..=5usize {
            for lam in partitions_of(r) {
                let basis = specht_basis(&ring, &lam);
                assert_eq!(
                    basis.vectors.len() as u64,
                    oracle::hook_length_count(&lam),
                    "lambda = {}",
                    lam
                );
                // Indexing tableaux are exactly T^st(lambda), in order.
                let expected = crate::tableau::enumerate_t_st(&lam);
                assert_eq!(basis.tableaux, expected);
            }
        }
    }

    #[test]
    fn leading_terms() {
        let ring = LaurentRing;
        for r in 1..=5usize {
            for lam in partitions_of(r) {
                leading_term_check(&ring, &lam).unwrap();
            }
        }
    }

    #[test]
    fn psi_matrix_rows() {
        let ring = LaurentRing;
        let m = psi_matrix(&ring, &c(&[1, 1]));
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(m.get(0, 0), Some(&one()));
        assert_eq!(m.get(0, 1), Some(&LaurentScalar::q_power(-1).neg()));
        let m = psi_matrix(&ring, &c(&[3]));
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.get(0, 0), Some(&one()));
    }

    #[test]
    fn functional_evaluation() {
        let ring = LaurentRing;
        let lam = c(&[2, 1]);
        let dim = cache::d_lambda_list(&lam).len();
        for i in 0..dim {
            let f = Functional::eps(&ring, &lam, i);
            for j in 0..dim {
                let v = MVector::unit(&ring, &lam, j);
                let expected = if i == j { one() } else { LaurentScalar::zero() };
                assert_eq!(f.evaluate(&ring, &v), expected);
            }
        }
    }
}
