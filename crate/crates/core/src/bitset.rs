//! Fixed-width vertex sets. Spans are popcounts of ORs, which is the inner
//! loop of every search in this crate, so the representation is a flat
//! `[u64; 8]` with `Copy` semantics (vertices 0..512).

pub const MAX_VERTICES: usize = 512;
const WORDS: usize = MAX_VERTICES / 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { words: [0; WORDS] };

    pub fn from_slice(verts: &[usize]) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for &v in verts {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    #[inline]
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut w = self.words;
        for i in 0..WORDS {
            w[i] |= other.words[i];
        }
        VertexSet { words: w }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union_len(&self, other: &VertexSet) -> usize {
        let mut c = 0;
        for i in 0..WORDS {
            c += (self.words[i] | other.words[i]).count_ones() as usize;
        }
        c
    }

    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        let mut c = 0;
        for i in 0..WORDS {
            c += (self.words[i] & other.words[i]).count_ones() as usize;
        }
        c
    }

    #[inline]
    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..WORDS).flat_map(move |i| {
            let mut w = self.words[i];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
