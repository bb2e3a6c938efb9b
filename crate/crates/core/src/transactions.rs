//! Vertical transaction store.
//!
//! Each item keeps the set of transactions it occurs in (its cover). The
//! support count of an itemset is the size of the intersection of its items'
//! covers, so counting never rescans rows.

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::itemset::{ItemCatalog, ItemId, Itemset};
use crate::scalar::Scalar;

/// Support as an exact `count / n` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportRatio {
    pub count: u64,
    pub n: u64,
}

impl SupportRatio {
    pub fn value<T: Scalar>(self) -> T {
        T::from_ratio(self.count as i128, self.n as i128)
    }

    pub fn to_f64(self) -> f64 {
        self.value::<f64>()
    }
}

/// Immutable binary transaction × item matrix, stored per item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionSet {
    catalog: ItemCatalog,
    n_transactions: usize,
    covers: Vec<Cover>,
}

impl TransactionSet {
    /// Builds from row-major transactions. Every id must exist in `catalog`.
    pub fn from_rows(catalog: ItemCatalog, rows: &[Vec<ItemId>]) -> Result<Self> {
        let n = rows.len();
        let mut covers = vec![Cover::empty(n); catalog.len()];
        for (t, row) in rows.iter().enumerate() {
            for &id in row {
                covers.get_mut(id.index()).ok_or(Error::InvalidItem(id.0))?.insert(t);
            }
        }
        Ok(TransactionSet {
            catalog,
            n_transactions: n,
            covers,
        })
    }

    /// Builds from rows of item names; the catalog is assigned in first-seen order.
    pub fn from_named_rows<R, S>(rows: &[R]) -> Self
    where
        R: AsRef<[S]>,
        S: AsRef<str>,
    {
        let mut catalog = ItemCatalog::new();
        let mut id_rows = Vec::with_capacity(rows.len());
        for row in rows {
            let mut ids = Vec::new();
            for name in row.as_ref() {
                let name = name.as_ref();
                let id = match catalog.id(name) {
                    Ok(id) => id,
                    Err(_) => catalog.insert(name).expect("non-empty item name"),
                };
                ids.push(id);
            }
            id_rows.push(ids);
        }
        Self::from_rows(catalog, &id_rows).expect("ids come from the catalog")
    }

    pub(crate) fn from_parts(catalog: ItemCatalog, n_transactions: usize, covers: Vec<Cover>) -> Self {
        debug_assert_eq!(catalog.len(), covers.len());
        debug_assert!(covers.iter().all(|c| c.universe() == n_transactions));
        TransactionSet {
            catalog,
            n_transactions,
            covers,
        }
    }

    pub fn catalog(&self) -> &ItemCatalog {
        &self.catalog
    }

    pub fn n_transactions(&self) -> usize {
        self.n_transactions
    }

    pub fn n_items(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n_transactions == 0
    }

    pub fn item_ids(&self) -> impl ExactSizeIterator<Item = ItemId> {
        (0..self.covers.len() as u32).map(ItemId)
    }

    pub fn cover(&self, id: ItemId) -> Result<&Cover> {
        self.covers.get(id.index()).ok_or(Error::InvalidItem(id.0))
    }

    /// Transactions containing every item of `set`; the empty set covers all.
    pub fn cover_of(&self, set: &Itemset) -> Result<Cover> {
        let mut ids = set.iter();
        let Some(first) = ids.next() else {
            return Ok(Cover::full(self.n_transactions));
        };
        let mut cover = self.cover(first)?.clone();
        for id in ids {
            cover.intersect_with(self.cover(id)?);
        }
        Ok(cover)
    }

    pub fn count_of(&self, set: &Itemset) -> Result<u64> {
        match set.len() {
            0 => Ok(self.n_transactions as u64),
            1 => Ok(self.cover(set.as_slice()[0])?.count()),
            2 => {
                let s = set.as_slice();
                Ok(self.cover(s[0])?.intersection_count(self.cover(s[1])?))
            }
            _ => Ok(self.cover_of(set)?.count()),
        }
    }

    pub fn support_ratio(&self, set: &Itemset) -> Result<SupportRatio> {
        if self.n_transactions == 0 {
            return Err(Error::UndefinedSupport);
        }
        Ok(SupportRatio {
            count: self.count_of(set)?,
            n: self.n_transactions as u64,
        })
    }

    /// Fraction of transactions containing `set`.
    pub fn support_of(&self, set: &Itemset) -> Result<f64> {
        self.support_ratio(set).map(SupportRatio::to_f64)
    }

    /// Items of transaction `t`, in canonical order.
    pub fn row(&self, t: usize) -> Itemset {
        Itemset::from_sorted_unchecked(
            self.item_ids()
                .filter(|id| self.covers[id.index()].contains(t))
                .collect(),
        )
    }

    /// Row-major view of all transactions.
    pub fn rows(&self) -> Vec<Itemset> {
        let mut rows = vec![Vec::new(); self.n_transactions];
        for id in self.item_ids() {
            for t in self.covers[id.index()].iter() {
                rows[t].push(id);
            }
        }
        rows.into_iter().map(Itemset::from_sorted_unchecked).collect()
    }

    /// Keeps the listed transactions (ascending, in range), renumbered densely.
    pub fn retain_transactions(&self, keep: &[usize]) -> Result<TransactionSet> {
        if keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract(
                "transaction indices must be strictly increasing".into(),
            ));
        }
        if let Some(&bad) = keep.iter().find(|&&t| t >= self.n_transactions) {
            return Err(Error::Contract(format!(
                "transaction index {bad} out of range {}",
                self.n_transactions
            )));
        }
        Ok(TransactionSet {
            catalog: self.catalog.clone(),
            n_transactions: keep.len(),
            covers: self.covers.iter().map(|c| c.select(keep)).collect(),
        })
    }
}
