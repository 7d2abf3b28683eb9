//! Process-wide memo tables for pure enumerations that are shared across
//! complexes: dominance successors, coset lists, tableau lists. Cached values
//! are immutable and observably pure; a racing recompute returns the same
//! value.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use crate::perm::Permutation;
use crate::shape::{dominating_compositions, Composition};
use crate::tableau::{GeneralizedTableau, Tableau};

pub struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub fn get_or(&self, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return v.clone();
        }
        let value = Arc::new(compute());
        let mut w = self.map.write().unwrap();
        w.entry(key.clone()).or_insert(value).clone()
    }

    /// Fallible variant: errors propagate to the caller and nothing is
    /// cached for the key.
    pub fn try_get_or<E>(
        &self,
        key: &K,
        compute: impl FnOnce() -> Result<V, E>,
    ) -> Result<Arc<V>, E> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return Ok(v.clone());
        }
        let value = Arc::new(compute()?);
        let mut w = self.map.write().unwrap();
        Ok(w.entry(key.clone()).or_insert(value).clone())
    }
}

static SUCCESSORS: Lazy<Memo<Composition, Vec<Composition>>> = Lazy::new(Memo::default);

/// Compositions strictly dominating the given one, in lexicographic order.
pub fn successors(c: &Composition) -> Arc<Vec<Composition>> {
    SUCCESSORS.get_or(c, || {
        dominating_compositions(c)
            .into_iter()
            .filter(|mu| mu != c)
            .collect()
    })
}

static W_LAMBDA: Lazy<Memo<Composition, Vec<Permutation>>> = Lazy::new(Memo::default);

/// The parabolic subgroup W_lambda, cached.
pub fn w_lambda_elements(lambda: &Composition) -> Arc<Vec<Permutation>> {
    W_LAMBDA.get_or(lambda, || crate::perm::enumerate_w_lambda(lambda))
}

static D_LAMBDA: Lazy<Memo<Composition, Vec<Permutation>>> = Lazy::new(Memo::default);

/// The canonical ordered list of distinguished representatives D_lambda
/// (length, then one-line notation), cached. This order indexes M^lambda.
pub fn d_lambda_list(lambda: &Composition) -> Arc<Vec<Permutation>> {
    D_LAMBDA.get_or(lambda, || crate::perm::enumerate_d_lambda(lambda))
}

static D_LAMBDA_INDEX: Lazy<Memo<Composition, HashMap<Permutation, usize>>> =
    Lazy::new(Memo::default);

/// Position of each representative in the canonical D_lambda list.
pub fn d_lambda_index(lambda: &Composition) -> Arc<HashMap<Permutation, usize>> {
    D_LAMBDA_INDEX.get_or(lambda, || {
        d_lambda_list(lambda)
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect()
    })
}

static T_WEDGE: Lazy<Memo<(Composition, Composition), Vec<GeneralizedTableau>>> =
    Lazy::new(Memo::default);

/// The ascending row-semistandard tableaux of a shape/content pair, cached.
pub fn t_wedge(shape: &Composition, content: &Composition) -> Arc<Vec<GeneralizedTableau>> {
    T_WEDGE.get_or(&(shape.clone(), content.clone()), || {
        crate::tableau::enumerate_t_wedge(shape, content)
    })
}

static T_RS: Lazy<Memo<Composition, Vec<Tableau>>> = Lazy::new(Memo::default);

/// Row-standard tableaux in reading-word order, cached; this is the tail
/// order of chain basis symbols.
pub fn t_rs_list(shape: &Composition) -> Arc<Vec<Tableau>> {
    T_RS.get_or(shape, || crate::tableau::enumerate_t_rs(shape))
}

static T_RS_INDEX: Lazy<Memo<Composition, HashMap<Permutation, usize>>> =
    Lazy::new(Memo::default);

/// Position in the reading-word-ordered row-standard list, keyed by the
/// representative d with t = t^lambda d.
pub fn t_rs_index(shape: &Composition) -> Arc<HashMap<Permutation, usize>> {
    T_RS_INDEX.get_or(shape, || {
        t_rs_list(shape)
            .iter()
            .enumerate()
            .map(|(i, t)| {
                (
                    crate::tableau::tableau_to_d(t).expect("list is row-standard"),
                    i,
                )
            })
            .collect()
    })
}
