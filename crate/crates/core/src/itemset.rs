use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense item identifier, contiguous from 0 within one [`ItemCatalog`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ItemId(pub u32);

impl ItemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub id: ItemId,
    pub name: String,
}

/// Bidirectional name/id mapping. Ids follow insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ItemCatalog {
    names: Vec<String>,
    ids: HashMap<String, ItemId>,
}

impl ItemCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut catalog = Self::new();
        for name in names {
            catalog.insert(name)?;
        }
        Ok(catalog)
    }

    /// Appends a new item. Empty or already present names are rejected.
    pub fn insert(&mut self, name: impl Into<String>) -> Result<ItemId> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::Schema("item names must be non-empty".into()));
        }
        if self.ids.contains_key(&name) {
            return Err(Error::DuplicateItemName(name));
        }
        let id = ItemId(self.names.len() as u32);
        self.ids.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Result<ItemId> {
        self.ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownItemName(name.to_string()))
    }

    pub fn name(&self, id: ItemId) -> Result<&str> {
        self.names
            .get(id.index())
            .map(String::as_str)
            .ok_or(Error::InvalidItem(id.0))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.ids.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = Item> + '_ {
        self.names.iter().enumerate().map(|(i, name)| Item {
            id: ItemId(i as u32),
            name: name.clone(),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Resolves a list of names into a canonical itemset.
    pub fn itemset<S: AsRef<str>>(&self, names: &[S]) -> Result<Itemset> {
        let ids = names.iter().map(|n| self.id(n.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(Itemset::new(ids))
    }

    /// Names of the itemset's items in canonical (id) order.
    pub fn render(&self, set: &Itemset) -> Result<Vec<&str>> {
        set.iter().map(|id| self.name(id)).collect()
    }
}

/// Canonical itemset: strictly increasing item ids.
///
/// Ordering is lexicographic over the id sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    /// Sorts and deduplicates; input order does not matter.
    pub fn new(mut items: Vec<ItemId>) -> Self {
        items.sort_unstable();
        items.dedup();
        Itemset(items)
    }

    pub fn empty() -> Self {
        Itemset(Vec::new())
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        Self::new(ids.into_iter().map(ItemId).collect())
    }

    pub(crate) fn from_sorted_unchecked(items: Vec<ItemId>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Itemset(items)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[ItemId] {
        &self.0
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = ItemId> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, id: ItemId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn is_subset(&self, other: &Itemset) -> bool {
        self.0.iter().all(|id| other.contains(*id))
    }

    pub fn is_disjoint(&self, other: &Itemset) -> bool {
        self.0.iter().all(|id| !other.contains(*id))
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        let mut items = self.0.clone();
        items.extend_from_slice(&other.0);
        Itemset::new(items)
    }

    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset(self.0.iter().copied().filter(|id| !other.contains(*id)).collect())
    }

    /// The itemset with the element at `pos` removed.
    pub fn without_index(&self, pos: usize) -> Itemset {
        let mut items = self.0.clone();
        items.remove(pos);
        Itemset(items)
    }

    /// Splits into the items selected by `mask` (bit i = position i) and the rest.
    pub(crate) fn split_by_mask(&self, mask: u64) -> (Itemset, Itemset) {
        let mut selected = Vec::new();
        let mut rest = Vec::new();
        for (i, id) in self.0.iter().enumerate() {
            if mask >> i & 1 == 1 {
                selected.push(*id);
            } else {
                rest.push(*id);
            }
        }
        (Itemset(selected), Itemset(rest))
    }
}

impl FromIterator<ItemId> for Itemset {
    fn from_iter<I: IntoIterator<Item = ItemId>>(iter: I) -> Self {
        Itemset::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Itemset {
    type Item = &'a ItemId;
    type IntoIter = std::slice::Iter<'a, ItemId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

/// Builds the canonical form of an arbitrary id sequence.
pub fn canonical_itemset(items: &[ItemId]) -> Itemset {
    Itemset::new(items.to_vec())
}
