//! Fixed-width bitsets over line indices.
//!
//! Every line catalog in scope has at most 240 entries (r = 8), so four
//! 64-bit words cover any vertex set of the Gosset polytopes and stay `Copy`.

const WORDS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LineSet {
    words: [u64; WORDS],
}

impl LineSet {
    pub const CAPACITY: usize = WORDS * 64;

    pub fn empty() -> Self {
        Self::default()
    }

    /// Set with bits `0..n`.
    pub fn all(n: usize) -> Self {
        assert!(n <= Self::CAPACITY);
        let mut s = Self::empty();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < Self::CAPACITY);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < Self::CAPACITY && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words == [0; WORDS]
    }

    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Bits strictly greater than `i`.
    pub fn above(&self, i: usize) -> Self {
        let mut out = *self;
        let w = i / 64;
        for k in 0..w {
            out.words[k] = 0;
        }
        if i % 64 == 63 {
            out.words[w] = 0;
        } else {
            out.words[w] &= !((1u64 << ((i % 64) + 1)) - 1);
        }
        out
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.words,
            word: 0,
        }
    }

    /// n-th set bit (0-based), if any.
    pub fn nth(&self, mut n: usize) -> Option<usize> {
        for i in self.iter() {
            if n == 0 {
                return Some(i);
            }
            n -= 1;
        }
        None
    }
}

impl std::ops::BitAnd for LineSet {
    type Output = LineSet;
    fn bitand(self, rhs: Self) -> Self {
        let mut out = self;
        for k in 0..WORDS {
            out.words[k] &= rhs.words[k];
        }
        out
    }
}

impl std::ops::BitAndAssign for LineSet {
    fn bitand_assign(&mut self, rhs: Self) {
        for k in 0..WORDS {
            self.words[k] &= rhs.words[k];
        }
    }
}

impl std::ops::BitOr for LineSet {
    type Output = LineSet;
    fn bitor(self, rhs: Self) -> Self {
        let mut out = self;
        for k in 0..WORDS {
            out.words[k] |= rhs.words[k];
        }
        out
    }
}

impl std::ops::Sub for LineSet {
    type Output = LineSet;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for k in 0..WORDS {
            out.words[k] &= !rhs.words[k];
        }
        out
    }
}

impl FromIterator<usize> for LineSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Self::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl std::fmt::Debug for LineSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w == 0 {
                self.word += 1;
                continue;
            }
            let bit = w.trailing_zeros() as usize;
            self.words[self.word] = w & (w - 1);
            return Some(self.word * 64 + bit);
        }
        None
    }
}
