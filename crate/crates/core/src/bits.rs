//! Fixed-length packed bit storage, LSB-first within each `u64`.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PackedBits {
    words: Vec<u64>,
    len: usize,
}

pub(crate) const fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl PackedBits {
    pub fn zeros(len: usize) -> Self {
        PackedBits {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// Wraps `words`; bits past `len` must be zero.
    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut bits = PackedBits { words, len };
        bits.clear_tail();
        bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}
