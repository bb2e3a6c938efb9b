use std::fmt;

/// Fixed-width bitset of transaction indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    words: Vec<u64>,
    len: usize,
}

impl Cover {
    pub fn empty(len: usize) -> Self {
        Cover {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut cover = Cover {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        cover.clear_tail();
        cover
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut cover = Cover::empty(len);
        for i in indices {
            cover.insert(i);
        }
        cover
    }

    /// Universe size (number of transactions).
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.len && self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn intersect_with(&mut self, other: &Cover) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn intersection(&self, other: &Cover) -> Cover {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// Popcount of `self & other` without allocating.
    pub fn intersection_count(&self, other: &Cover) -> u64 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| u64::from((a & b).count_ones()))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// Keeps only the listed positions, renumbered densely in order.
    pub(crate) fn select(&self, keep: &[usize]) -> Cover {
        Cover::from_indices(
            keep.len(),
            keep.iter()
                .enumerate()
                .filter(|(_, &old)| self.contains(old))
                .map(|(new, _)| new),
        )
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
