//! Chain-complex assembly: canonical basis symbols, the alternating-sum
//! boundary maps, the degree-zero restriction map, and the subset machinery
//! that eliminates a non-standard tail through a degree-one element with a
//! unit leading coefficient.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::cache::{self, Memo};
use crate::error::Error;
use crate::hom::{self, HomMatrix};
use crate::matrix::SparseMat;
use crate::module::{self, Functional};
use crate::perm::{is_distinguished, Permutation};
use crate::scalar::{LaurentRing, LaurentScalar};
use crate::shape::{a_of, chains_of_length, Composition};
use crate::tableau::{
    d_to_gen_tableau, gen_tableau_to_d, tableau_to_d, GeneralizedTableau, Tableau,
};
use crate::Result;

/// A canonical basis symbol: a strict dominance chain starting at the base
/// shape, one ascending tableau per step (shape the upper entry, content the
/// lower), and a row-standard tail of the final shape.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainBasisSymbol {
    pub chain: Vec<Composition>,
    pub tableaux: Vec<GeneralizedTableau>,
    pub tail: Tableau,
}

impl ChainBasisSymbol {
    pub fn degree(&self) -> usize {
        self.chain.len() - 1
    }

    /// Structural well-formedness: chain strictly ascending, each tableau
    /// matching its step, tail row-standard of the final shape.
    pub fn validate(&self) -> Result<()> {
        if self.chain.is_empty() || self.tableaux.len() + 1 != self.chain.len() {
            return Err(Error::InvalidInput(
                "symbol needs one tableau per chain step".into(),
            ));
        }
        for w in self.chain.windows(2) {
            if !(w[0].dominance_leq(&w[1]) && w[0] != w[1]) {
                return Err(Error::InvalidInput(format!(
                    "chain step {} to {} is not strictly ascending",
                    w[0], w[1]
                )));
            }
        }
        for (i, t) in self.tableaux.iter().enumerate() {
            if t.shape() != &self.chain[i + 1] || t.content() != &self.chain[i] {
                return Err(Error::InvalidInput(format!(
                    "tableau {} does not match chain step {} to {}",
                    t,
                    self.chain[i],
                    self.chain[i + 1]
                )));
            }
            if !t.is_ascending() {
                return Err(Error::InvalidInput(format!("tableau {} is not ascending", t)));
            }
        }
        if self.tail.shape() != self.chain.last().unwrap() || !self.tail.is_row_standard() {
            return Err(Error::InvalidInput(
                "tail is not a row-standard tableau of the final shape".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for ChainBasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self.chain.iter().map(|c| c.to_string()).collect();
        let tabs: Vec<String> = self.tableaux.iter().map(|t| t.to_string()).collect();
        write!(
            f,
            "({}; {}; tail {})",
            chain.join(" < "),
            tabs.join(", "),
            self.tail
        )
    }
}

impl fmt::Debug for ChainBasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// All degree-n basis symbols over the given base shape, in the canonical
/// order: chains lexicographically, then the tableau tuple with the first
/// step most significant, then tails in reading-word order.
pub fn enumerate_symbols(lambda: &Composition, n: usize) -> Vec<ChainBasisSymbol> {
    let mut out = Vec::new();
    for chain in chains_of_length(lambda, n) {
        let steps: Vec<Arc<Vec<GeneralizedTableau>>> = (0..n)
            .map(|i| cache::t_wedge(&chain[i + 1], &chain[i]))
            .collect();
        if steps.iter().any(|s| s.is_empty()) {
            continue;
        }
        let tails = cache::t_rs_list(&chain[n]);
        let mut idx = vec![0usize; n];
        loop {
            let tableaux: Vec<GeneralizedTableau> =
                (0..n).map(|i| steps[i][idx[i]].clone()).collect();
            for tail in tails.iter() {
                out.push(ChainBasisSymbol {
                    chain: chain.clone(),
                    tableaux: tableaux.clone(),
                    tail: tail.clone(),
                });
            }
            let mut pos = n;
            while pos > 0 {
                let p = pos - 1;
                idx[p] += 1;
                if idx[p] < steps[p].len() {
                    break;
                }
                idx[p] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    out
}

type SymbolKey = (Composition, usize);
static SYMBOLS: Lazy<Memo<SymbolKey, Vec<ChainBasisSymbol>>> = Lazy::new(Memo::default);
static SYMBOL_INDEX: Lazy<Memo<SymbolKey, HashMap<ChainBasisSymbol, usize>>> =
    Lazy::new(Memo::default);

/// Cached canonical symbol list for one degree.
pub fn symbols_cached(lambda: &Composition, n: usize) -> Arc<Vec<ChainBasisSymbol>> {
    SYMBOLS.get_or(&(lambda.clone(), n), || enumerate_symbols(lambda, n))
}

fn symbol_index(lambda: &Composition, n: usize) -> Arc<HashMap<ChainBasisSymbol, usize>> {
    SYMBOL_INDEX.get_or(&(lambda.clone(), n), || {
        symbols_cached(lambda, n)
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect()
    })
}

/// A boundary map as a sparse matrix over the canonical bases: columns are
/// degree-`degree` symbols, rows are degree-(`degree`-1) symbols, except
/// that the degree-0 map has the dual Specht basis as rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub degree: usize,
    pub mat: SparseMat<LaurentScalar>,
}

fn lookup_phi(
    target: &Composition,
    source: &Composition,
    d: &Permutation,
) -> Result<HomMatrix<LaurentRing>> {
    let basis = hom::hom_basis_cached(target, source);
    basis
        .iter()
        .find(|(f, _)| f == d)
        .map(|(_, m)| m.clone())
        .ok_or_else(|| {
            Error::Internal(format!(
                "representative {} does not index a map from {} to {}",
                d, source, target
            ))
        })
}

type FaceKey = (Composition, Composition, Composition, Permutation, Permutation);
static FACE_EXPANSION: Lazy<Memo<FaceKey, Vec<(GeneralizedTableau, LaurentScalar)>>> =
    Lazy::new(Memo::default);

/// Expansion of the composite of two basis maps (inner from lower to mid,
/// outer from mid to upper) over the basis for the pair (upper, lower);
/// every coefficient must land on an ascending index.
fn face_expansion(
    lower: &Composition,
    mid: &Composition,
    upper: &Composition,
    d_in: &Permutation,
    d_out: &Permutation,
) -> Result<Arc<Vec<(GeneralizedTableau, LaurentScalar)>>> {
    let key = (
        lower.clone(),
        mid.clone(),
        upper.clone(),
        d_in.clone(),
        d_out.clone(),
    );
    FACE_EXPANSION.try_get_or(&key, || {
        let ring = LaurentRing;
        let inner = lookup_phi(mid, lower, d_in)?;
        let outer = lookup_phi(upper, mid, d_out)?;
        let psi = hom::compose(&ring, &outer, &inner)?;
        let basis = hom::hom_basis_cached(upper, lower);
        let coeffs = hom::expand_in_phi_with(&ring, &psi, &basis)?;
        let mut terms = Vec::new();
        for (f, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            let t = d_to_gen_tableau(upper, lower, &f);
            if !t.is_ascending() {
                return Err(Error::Internal(format!(
                    "composite of {} and {} from {} through {} to {} meets the non-ascending index {}",
                    d_in, d_out, lower, mid, upper, f
                )));
            }
            terms.push((t, c));
        }
        Ok(terms)
    })
}

/// One unsigned face of a degree-n symbol, i in 1..=n: for i < n the i-th
/// and (i+1)-th maps compose and re-expand, dropping the i-th chain entry;
/// for i = n the tail functional precomposes with the last map and the
/// result spreads over the tails one level down.
pub fn face(symbol: &ChainBasisSymbol, i: usize) -> Result<Vec<(ChainBasisSymbol, LaurentScalar)>> {
    let n = symbol.degree();
    if i < 1 || i > n {
        return Err(Error::InvalidInput(format!(
            "face index {} out of range 1..={}",
            i, n
        )));
    }
    if i < n {
        let lower = &symbol.chain[i - 1];
        let mid = &symbol.chain[i];
        let upper = &symbol.chain[i + 1];
        let d_in = gen_tableau_to_d(&symbol.tableaux[i - 1])?;
        let d_out = gen_tableau_to_d(&symbol.tableaux[i])?;
        let terms = face_expansion(lower, mid, upper, &d_in, &d_out)?;
        let mut chain = symbol.chain.clone();
        chain.remove(i);
        let mut out = Vec::with_capacity(terms.len());
        for (t, c) in terms.iter() {
            let mut tableaux = symbol.tableaux.clone();
            tableaux[i - 1] = t.clone();
            tableaux.remove(i);
            out.push((
                ChainBasisSymbol {
                    chain: chain.clone(),
                    tableaux,
                    tail: symbol.tail.clone(),
                },
                c.clone(),
            ));
        }
        Ok(out)
    } else {
        let low = &symbol.chain[n - 1];
        let top = &symbol.chain[n];
        let d_top = gen_tableau_to_d(&symbol.tableaux[n - 1])?;
        let phi = lookup_phi(top, low, &d_top)?;
        let row = *cache::d_lambda_index(top)
            .get(&tableau_to_d(&symbol.tail)?)
            .ok_or_else(|| Error::Internal("tail representative is not distinguished".into()))?;
        let reps = cache::d_lambda_list(low);
        let tails = cache::t_rs_list(low);
        let tail_index = cache::t_rs_index(low);
        let chain: Vec<Composition> = symbol.chain[..n].to_vec();
        let tableaux: Vec<GeneralizedTableau> = symbol.tableaux[..n - 1].to_vec();
        let mut out = Vec::new();
        for (j, c) in phi.mat().row(row) {
            let idx = *tail_index
                .get(&reps[j])
                .expect("every distinguished representative indexes a tail");
            out.push((
                ChainBasisSymbol {
                    chain: chain.clone(),
                    tableaux: tableaux.clone(),
                    tail: tails[idx].clone(),
                },
                c.clone(),
            ));
        }
        Ok(out)
    }
}

/// The degree-n boundary map, n >= 1, as the alternating sum of faces;
/// columns without symbols give an empty matrix.
pub fn boundary(lambda: &Composition, n: usize) -> Result<BoundaryMatrix> {
    if n < 1 {
        return Err(Error::InvalidInput(
            "boundary degree must be at least 1; the degree-0 map has its own constructor".into(),
        ));
    }
    let cols = symbols_cached(lambda, n);
    let row_symbols = symbols_cached(lambda, n - 1);
    let row_index = symbol_index(lambda, n - 1);
    let columns: Vec<BTreeMap<usize, LaurentScalar>> = cols
        .par_iter()
        .map(|s| {
            let mut acc: BTreeMap<usize, LaurentScalar> = BTreeMap::new();
            for i in 1..=n {
                let negative = i % 2 == 0;
                for (sym, c) in face(s, i)? {
                    let row = *row_index.get(&sym).ok_or_else(|| {
                        Error::Internal(format!("face of {} is not a canonical symbol", s))
                    })?;
                    let signed = if negative { c.neg() } else { c };
                    let entry = acc.entry(row).or_insert_with(LaurentScalar::zero);
                    *entry = entry.add(&signed);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut mat = SparseMat::new(row_symbols.len(), cols.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            mat.set(*i, j, c.clone());
        }
    }
    Ok(BoundaryMatrix { degree: n, mat })
}

/// The degree-0 map: each tail functional restricts to the submodule, read
/// off against the dual Specht basis. Zero rows when the shape is not a
/// partition.
pub fn boundary_zero(lambda: &Composition) -> BoundaryMatrix {
    let ring = LaurentRing;
    let psi = module::psi_matrix(&ring, lambda);
    let reps = cache::d_lambda_list(lambda);
    let tail_index = cache::t_rs_index(lambda);
    let mut mat = SparseMat::new(psi.rows(), reps.len());
    for (i, j, c) in psi.iter() {
        let col = *tail_index
            .get(&reps[j])
            .expect("every distinguished representative indexes a tail");
        mat.set(i, col, c.clone());
    }
    BoundaryMatrix { degree: 0, mat }
}

/// The assembled complex for one base shape: dimensions per degree, every
/// boundary map, and the positions of the standard-tail symbols.
pub struct ChainComplexData {
    pub lambda: Composition,
    /// dims[n] is the number of degree-n symbols, n = 0..=a(lambda).
    pub dims: Vec<usize>,
    /// Dimension in degree -1: the number of standard tableaux.
    pub dim_specht: usize,
    /// boundaries[n] is the degree-n map; index 0 is the restriction map.
    pub boundaries: Vec<BoundaryMatrix>,
    /// Per degree, the positions of symbols whose tail is standard.
    pub standard_tail_indices: Vec<Vec<usize>>,
}

static COMPLEX: Lazy<Memo<Composition, ChainComplexData>> = Lazy::new(Memo::default);

/// Build (and cache) the whole complex for one base shape.
pub fn build_complex(lambda: &Composition) -> Result<Arc<ChainComplexData>> {
    COMPLEX.try_get_or(lambda, || {
        let top = a_of(lambda);
        let mut dims = Vec::with_capacity(top + 1);
        let mut standard_tail_indices = Vec::with_capacity(top + 1);
        let mut boundaries = Vec::with_capacity(top + 1);
        boundaries.push(boundary_zero(lambda));
        for n in 0..=top {
            let symbols = symbols_cached(lambda, n);
            dims.push(symbols.len());
            standard_tail_indices.push(
                symbols
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.tail.is_standard())
                    .map(|(i, _)| i)
                    .collect(),
            );
            if n >= 1 {
                boundaries.push(boundary(lambda, n)?);
            }
        }
        let dim_specht = boundaries[0].mat.rows();
        Ok(ChainComplexData {
            lambda: lambda.clone(),
            dims,
            dim_specht,
            boundaries,
            standard_tail_indices,
        })
    })
}

/// A witness that two consecutive rows of a row-standard tableau break the
/// column condition: the first i column pairs increase, and then either the
/// next pair decreases or the upper row has run out of entries.
#[derive(Clone, Debug)]
pub struct ViolationData {
    pub tableau: Tableau,
    /// 1-based index of the upper row of the violating pair.
    pub k: usize,
    pub row_a: Vec<usize>,
    pub row_b: Vec<usize>,
    pub i: usize,
    /// The entries of both rows, sorted.
    pub z: Vec<usize>,
}

impl ViolationData {
    pub fn m(&self) -> usize {
        self.row_a.len()
    }

    pub fn n(&self) -> usize {
        self.row_b.len()
    }
}

/// Locate the first violating row pair of a row-standard, non-standard
/// tableau; deterministic by smallest upper-row index.
pub fn find_violation(t: &Tableau) -> Result<ViolationData> {
    if !t.is_row_standard() {
        return Err(Error::NotRowStandard);
    }
    if t.is_standard() {
        return Err(Error::NoViolation);
    }
    let rows = t.rows();
    for k in 1..rows.len() {
        let a = &rows[k - 1];
        let b = &rows[k];
        let m = a.len();
        let n = b.len();
        let bound = m.min(n);
        let mut p = 0;
        while p < bound && a[p] < b[p] {
            p += 1;
        }
        if p == n && n <= m {
            continue;
        }
        let i = if p == m { m } else { p };
        debug_assert!(i <= m.min(n.saturating_sub(1)));
        debug_assert!(i == m || a[i] > b[i]);
        let mut z: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
        z.sort_unstable();
        return Ok(ViolationData {
            tableau: t.clone(),
            k,
            row_a: a.clone(),
            row_b: b.clone(),
            i,
            z,
        });
    }
    Err(Error::Internal(format!(
        "no violating row pair in the non-standard tableau {}",
        t
    )))
}

/// Shape and tableau data for a subset X of the violating rows' entry set:
/// the coarser shape with X as its own row, the refined shape, the
/// rearranged tableau with its representative, and the position intervals.
#[derive(Clone, Debug)]
pub struct SubsetShapeData {
    pub x: Vec<usize>,
    pub mu: Composition,
    pub nu: Composition,
    pub t_x: Tableau,
    pub d_x: Permutation,
    pub interval_a: Vec<usize>,
    pub interval_b: Vec<usize>,
    pub interval_c: Vec<usize>,
    pub interval_d: Vec<usize>,
}

pub fn subset_data(v: &ViolationData, x: &[usize]) -> Result<SubsetShapeData> {
    let lambda = v.tableau.shape();
    let m = v.m();
    let n = v.n();
    let k = v.k;
    let mut xs: Vec<usize> = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() != x.len() {
        return Err(Error::InvalidInput("subset has repeated entries".into()));
    }
    if xs.len() > n {
        return Err(Error::InvalidInput(format!(
            "subset size {} exceeds the lower row length {}",
            xs.len(),
            n
        )));
    }
    if !xs.iter().all(|e| v.z.binary_search(e).is_ok()) {
        return Err(Error::InvalidInput(
            "subset is not contained in the rows' entry set".into(),
        ));
    }
    let size = xs.len() as u32;

    let mut mu_parts: Vec<u32> = lambda.parts().to_vec();
    mu_parts[k - 1] = lambda.part(k) + n as u32 - size;
    mu_parts[k] = size;
    let mu = Composition::new(mu_parts);

    let mut nu_parts: Vec<u32> = lambda.parts().to_vec();
    nu_parts.splice(k..k + 1, [n as u32 - size, size]);
    let nu = Composition::new(nu_parts);

    if !nu.dominance_leq(lambda) || !lambda.dominance_leq(&mu) {
        return Err(Error::Internal(format!(
            "subset shapes out of order: {} / {} / {}",
            nu, lambda, mu
        )));
    }

    let complement: Vec<usize> = v
        .z
        .iter()
        .copied()
        .filter(|e| xs.binary_search(e).is_err())
        .collect();
    let mut rows: Vec<Vec<usize>> = v.tableau.rows().to_vec();
    rows[k - 1] = complement;
    rows[k] = xs.clone();
    rows.truncate(mu.len());
    let t_x = Tableau::new(mu.clone(), rows)?;
    let d_x = tableau_to_d(&t_x)?;

    let r = lambda.r();
    let pre: usize = lambda.parts()[..k - 1].iter().map(|&p| p as usize).sum();
    let sz = xs.len();
    let interval_a: Vec<usize> = (pre + 1..=pre + m).collect();
    let interval_b: Vec<usize> = (pre + m + 1..=pre + m + (n - sz)).collect();
    let interval_c: Vec<usize> = (pre + m + n - sz + 1..=pre + m + n).collect();
    let interval_d: Vec<usize> = (1..=r)
        .filter(|p| *p <= pre || *p > pre + m + n)
        .collect();

    Ok(SubsetShapeData {
        x: xs,
        mu,
        nu,
        t_x,
        d_x,
        interval_a,
        interval_b,
        interval_c,
        interval_d,
    })
}

fn in_parabolic(w: &Permutation, shape: &Composition) -> bool {
    (1..=shape.r()).all(|p| shape.block_of(w.apply(p)) == shape.block_of(p))
}

/// The witness set for one subset and one representative, computed by
/// enumeration; it never has more than one element.
pub fn w_xd_set(
    lambda: &Composition,
    sub: &SubsetShapeData,
    d: &Permutation,
) -> Result<Option<Permutation>> {
    let dx_inv = sub.d_x.inverse();
    let mut found: Option<Permutation> = None;
    for e in cache::w_lambda_elements(lambda).iter() {
        if !is_distinguished(e, &sub.nu) {
            continue;
        }
        let w = e.compose(d).compose(&dx_inv);
        if !in_parabolic(&w, &sub.mu) {
            continue;
        }
        if let Some(prev) = &found {
            return Err(Error::Internal(format!(
                "witness set has two elements {} and {} at d = {}",
                prev, w, d
            )));
        }
        found = Some(w);
    }
    Ok(found)
}

/// The degree-1 eliminator of a non-standard tail: a signed, q-weighted sum
/// of single-step symbols. Its boundary leads with a power of q at the tail
/// itself and otherwise meets only lexicographically smaller tails.
pub fn c1_element(t: &Tableau) -> Result<Vec<(ChainBasisSymbol, LaurentScalar)>> {
    let v = find_violation(t)?;
    let lambda = t.shape().clone();
    let m = v.m();
    let i = v.i;
    let suffix: Vec<usize> = v.row_b[i + 1..].to_vec();
    let prefix: Vec<usize> = v.row_a[..i].to_vec();
    let identity = Permutation::identity(lambda.r());
    let mut out: Vec<(ChainBasisSymbol, LaurentScalar)> = Vec::with_capacity(1 << i);
    for mask in 0u32..(1u32 << i) {
        let mut xt: Vec<usize> = suffix.clone();
        let mut f_exp: i64 = 0;
        let mut odd = false;
        for (j, aj) in prefix.iter().enumerate() {
            if mask & (1 << j) != 0 {
                xt.push(*aj);
                f_exp += (m - j) as i64;
                odd = !odd;
            }
        }
        let sub = subset_data(&v, &xt)?;
        if sub.mu == lambda || !lambda.dominance_leq(&sub.mu) {
            return Err(Error::Internal(format!(
                "eliminator shape {} does not strictly dominate {}",
                sub.mu, lambda
            )));
        }
        let t1 = d_to_gen_tableau(&sub.mu, &lambda, &identity);
        if !t1.is_ascending() {
            return Err(Error::Internal(format!(
                "identity tableau of shape {} and content {} is not ascending",
                sub.mu, lambda
            )));
        }
        let coeff = LaurentScalar::monomial(f_exp, BigInt::from(if odd { -1 } else { 1 }));
        out.push((
            ChainBasisSymbol {
                chain: vec![lambda.clone(), sub.mu.clone()],
                tableaux: vec![t1],
                tail: sub.t_x,
            },
            coeff,
        ));
    }
    Ok(out)
}

/// Apply the degree-1 boundary to a sparse degree-1 element; the result is
/// a map from tail positions (reading-word order over the base shape) to
/// coefficients.
pub fn apply_boundary_one(
    terms: &[(ChainBasisSymbol, LaurentScalar)],
) -> Result<BTreeMap<usize, LaurentScalar>> {
    let mut acc: BTreeMap<usize, LaurentScalar> = BTreeMap::new();
    for (sym, c) in terms {
        if sym.degree() != 1 {
            return Err(Error::InvalidInput(
                "element is not homogeneous of degree 1".into(),
            ));
        }
        let tail_index = cache::t_rs_index(&sym.chain[0]);
        for (s0, c0) in face(sym, 1)? {
            let idx = *tail_index
                .get(&tableau_to_d(&s0.tail)?)
                .expect("tail is row-standard");
            let entry = acc.entry(idx).or_insert_with(LaurentScalar::zero);
            *entry = entry.add(&c.mul(&c0));
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(acc)
}

/// Check the leading-term statement for one non-standard tail: the boundary
/// of its eliminator is q^l at the tail itself plus terms at strictly
/// smaller tails, and l matches both the witness length and the counting
/// formula. Returns (l, true); a failed check is an internal-consistency
/// error carrying the counterexample.
pub fn verify_lemma_5_4(t: &Tableau) -> Result<(i64, bool)> {
    let v = find_violation(t)?;
    let lambda = t.shape();
    let c1 = c1_element(t)?;
    let image = apply_boundary_one(&c1)?;
    let t_pos = *cache::t_rs_index(lambda)
        .get(&tableau_to_d(t)?)
        .expect("t is row-standard");
    let lead = image.get(&t_pos).ok_or_else(|| {
        Error::Internal(format!(
            "eliminator boundary for {} has no coefficient at the tail itself",
            t
        ))
    })?;
    let l = lead.as_unit_monomial().ok_or_else(|| {
        Error::Internal(format!(
            "leading coefficient for {} is {} rather than a power of q",
            t, lead
        ))
    })?;
    let tails = cache::t_rs_list(lambda);
    for (idx, c) in &image {
        if *idx > t_pos {
            return Err(Error::Internal(format!(
                "eliminator boundary for {} meets the larger tail {} with coefficient {}",
                t, tails[*idx], c
            )));
        }
    }
    let suffix: Vec<usize> = v.row_b[v.i + 1..].to_vec();
    let sub = subset_data(&v, &suffix)?;
    let d_t = tableau_to_d(t)?;
    let w = w_xd_set(lambda, &sub, &d_t)?.ok_or_else(|| {
        Error::Internal(format!("empty-subset witness missing for {}", t))
    })?;
    let l_w = w.length() as i64;
    let l_count: i64 = v.row_b[..v.i + 1]
        .iter()
        .map(|y| v.row_a.iter().filter(|&&z| *y < z).count() as i64)
        .sum();
    if l != l_w || l != l_count {
        return Err(Error::Internal(format!(
            "leading exponent mismatch for {}: boundary {}, witness length {}, counting formula {}",
            t, l, l_w, l_count
        )));
    }
    Ok((l, true))
}

/// Check the one-subset expansion: the tail functional of the rearranged
/// tableau, precomposed with the unit map, equals the q-weighted sum over
/// the representatives with a nonempty witness set.
pub fn verify_lemma_5_2(v: &ViolationData, x: &[usize]) -> Result<()> {
    let ring = LaurentRing;
    let lambda = v.tableau.shape();
    let sub = subset_data(v, x)?;
    let identity = Permutation::identity(lambda.r());
    let phi1 = hom::phi(&ring, &sub.mu, lambda, &identity)?;
    let eps_index = *cache::d_lambda_index(&sub.mu)
        .get(&sub.d_x)
        .expect("d_X is distinguished");
    let eps_x = Functional::eps(&ring, &sub.mu, eps_index);
    let lhs = hom::eps_compose(&ring, &eps_x, &phi1)?;
    let mut rhs = Functional::zero(lambda);
    for (j, d) in cache::d_lambda_list(lambda).iter().enumerate() {
        if let Some(w) = w_xd_set(lambda, &sub, d)? {
            rhs.add_value(&ring, j, LaurentScalar::q_power(w.length() as i64));
        }
    }
    if lhs != rhs {
        return Err(Error::Internal(format!(
            "one-subset expansion mismatch for {} with subset {:?}",
            v.tableau, sub.x
        )));
    }
    Ok(())
}

fn subsets_of_size(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = pool.len();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let chosen: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).map(|j| pool[j]).collect();
        out.push(chosen);
    }
    out
}

/// Check the subset-to-representative correspondence: the representatives
/// with a nonempty witness set are exactly those of the full-size supersets
/// of X, the witness lengths match the counting formula, and the expansion
/// identity holds.
pub fn verify_lemma_5_3(v: &ViolationData, x: &[usize]) -> Result<()> {
    let lambda = v.tableau.shape();
    let sub = subset_data(v, x)?;
    let n = v.n();
    let rest: Vec<usize> = v
        .z
        .iter()
        .copied()
        .filter(|e| sub.x.binary_search(e).is_err())
        .collect();
    let need = n - sub.x.len();
    let mut expected: HashMap<Permutation, i64> = HashMap::new();
    for extra in subsets_of_size(&rest, need) {
        let mut y: Vec<usize> = sub.x.iter().copied().chain(extra).collect();
        y.sort_unstable();
        let sub_y = subset_data(v, &y)?;
        if sub_y.mu != *lambda {
            return Err(Error::Internal(format!(
                "full-size subset {:?} does not reproduce the base shape for {}",
                y, v.tableau
            )));
        }
        let w = w_xd_set(lambda, &sub, &sub_y.d_x)?.ok_or_else(|| {
            Error::Internal(format!(
                "witness missing at the representative of {:?} for {}",
                y, v.tableau
            ))
        })?;
        let l_count: i64 = y
            .iter()
            .filter(|e| sub.x.binary_search(e).is_err())
            .map(|yy| {
                v.z.iter()
                    .filter(|z| y.binary_search(z).is_err() && **z > *yy)
                    .count() as i64
            })
            .sum();
        if w.length() as i64 != l_count {
            return Err(Error::Internal(format!(
                "witness length {} disagrees with the counting formula {} at {:?} for {}",
                w.length(),
                l_count,
                y,
                v.tableau
            )));
        }
        if expected.insert(sub_y.d_x.clone(), l_count).is_some() {
            return Err(Error::Internal(format!(
                "two full-size subsets share a representative for {}",
                v.tableau
            )));
        }
    }
    for d in cache::d_lambda_list(lambda).iter() {
        let got = w_xd_set(lambda, &sub, d)?;
        match (got, expected.get(d)) {
            (Some(w), Some(l)) if w.length() as i64 == *l => {}
            (None, None) => {}
            (got, want) => {
                return Err(Error::Internal(format!(
                    "witness mismatch at d = {} for {}: found {:?}, expected length {:?}",
                    d, v.tableau, got, want
                )));
            }
        }
    }
    verify_lemma_5_2(v, x)
}

type SymbolVector = HashMap<ChainBasisSymbol, LaurentScalar>;

fn add_term(acc: &mut SymbolVector, sym: ChainBasisSymbol, c: LaurentScalar) {
    let entry = acc.entry(sym).or_insert_with(LaurentScalar::zero);
    *entry = entry.add(&c);
    if entry.is_zero() {
        // keep maps comparable by never storing explicit zeros
        let zero_keys: Vec<ChainBasisSymbol> = acc
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in zero_keys {
            acc.remove(&k);
        }
    }
}

fn boundary_of_symbol(symbol: &ChainBasisSymbol) -> Result<SymbolVector> {
    let n = symbol.degree();
    let mut acc = SymbolVector::new();
    for i in 1..=n {
        let negative = i % 2 == 0;
        for (s, c) in face(symbol, i)? {
            add_term(&mut acc, s, if negative { c.neg() } else { c });
        }
    }
    Ok(acc)
}

/// Check the two-term recursion of the boundary on one symbol: composing
/// the first two maps and recursing on the truncation reproduces the full
/// alternating face sum.
pub fn verify_recursion(symbol: &ChainBasisSymbol) -> Result<()> {
    let n = symbol.degree();
    if n < 2 {
        return Ok(());
    }
    let lhs = boundary_of_symbol(symbol)?;
    let mut rhs = SymbolVector::new();
    for (s, c) in face(symbol, 1)? {
        add_term(&mut rhs, s, c);
    }
    let trunc = ChainBasisSymbol {
        chain: symbol.chain[1..].to_vec(),
        tableaux: symbol.tableaux[1..].to_vec(),
        tail: symbol.tail.clone(),
    };
    for i in 1..n {
        // minus (-1)^{i-1} from the recursion -> sign flips
        let negative = i % 2 == 1;
        for (s, c) in face(&trunc, i)? {
            let mut chain = Vec::with_capacity(s.chain.len() + 1);
            chain.push(symbol.chain[0].clone());
            chain.extend(s.chain.iter().cloned());
            let mut tableaux = Vec::with_capacity(s.tableaux.len() + 1);
            tableaux.push(symbol.tableaux[0].clone());
            tableaux.extend(s.tableaux.iter().cloned());
            let glued = ChainBasisSymbol {
                chain,
                tableaux,
                tail: s.tail.clone(),
            };
            add_term(&mut rhs, glued, if negative { c.neg() } else { c });
        }
    }
    if lhs != rhs {
        return Err(Error::Internal(format!(
            "boundary recursion fails on {}",
            symbol
        )));
    }
    Ok(())
}

/// Check the simplicial exchange rule on one symbol: applying face j and
/// then face i equals applying face i and then face j-1, for i < j.
pub fn verify_simplicial(symbol: &ChainBasisSymbol) -> Result<()> {
    let n = symbol.degree();
    for j in 2..=n {
        for i in 1..j {
            let mut lhs = SymbolVector::new();
            for (s, c) in face(symbol, j)? {
                for (s2, c2) in face(&s, i)? {
                    add_term(&mut lhs, s2, c.mul(&c2));
                }
            }
            let mut rhs = SymbolVector::new();
            for (s, c) in face(symbol, i)? {
                for (s2, c2) in face(&s, j - 1)? {
                    add_term(&mut rhs, s2, c.mul(&c2));
                }
            }
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "face exchange ({}, {}) fails on {}",
                    i, j, symbol
                )));
            }
        }
    }
    Ok(())
}
