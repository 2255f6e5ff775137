//! Square bit matrix with one word-packed row per element.

const WORD_BITS: usize = 64;

/// Dense `n x n` boolean matrix. Row `i` stores the successor set of
/// element `i` packed into `u64` words, which keeps transitive closure
/// and set algebra on whole rows cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(WORD_BITS);
        BitMatrix {
            n,
            words_per_row,
            words: vec![0; n * words_per_row],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.n && col < self.n);
        let w = self.words[row * self.words_per_row + col / WORD_BITS];
        w >> (col % WORD_BITS) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize) {
        debug_assert!(row < self.n && col < self.n);
        self.words[row * self.words_per_row + col / WORD_BITS] |= 1 << (col % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, row: usize, col: usize) {
        debug_assert!(row < self.n && col < self.n);
        self.words[row * self.words_per_row + col / WORD_BITS] &= !(1 << (col % WORD_BITS));
    }

    /// OR row `src` into row `dst`.
    pub fn union_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let (d, s) = (dst * self.words_per_row, src * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.words[s + k];
            self.words[d + k] |= v;
        }
    }

    /// Indices set in row `row`, ascending.
    pub fn row_ones(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let base = row * self.words_per_row;
        let n = self.n;
        (0..self.words_per_row).flat_map(move |k| {
            let mut w = self.words[base + k];
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD_BITS + b)
            })
        })
        .take_while(move |&c| c < n)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place Warshall sweep: afterwards `get(i, j)` holds iff a path
    /// of length >= 1 runs from `i` to `j` in the original matrix.
    pub fn close_transitively(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    self.union_rows(i, k);
                }
            }
        }
    }

    pub fn transposed(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.row_ones(i) {
                t.set(j, i);
            }
        }
        t
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| self.row_ones(i).map(move |j| (i, j)))
            .collect();
        write!(f, "BitMatrix(n={}, {:?})", self.n, pairs)
    }
}
