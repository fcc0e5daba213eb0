//! Dense GF(2) linear systems with bit-packed rows.
//!
//! Elimination keeps, for every working row, the set of original rows that
//! were summed into it. An inconsistent row `0 = 1` therefore comes with the
//! list of equations whose sum is the contradiction.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> BitRow {
        BitRow {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, bit: usize) -> BitRow {
        let mut row = BitRow::zeros(len);
        row.set(bit, true);
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, bit: usize) -> bool {
        debug_assert!(bit < self.len);
        (self.words[bit / WORD] >> (bit % WORD)) & 1 == 1
    }

    pub fn set(&mut self, bit: usize, value: bool) {
        debug_assert!(bit < self.len);
        let mask = 1u64 << (bit % WORD);
        if value {
            self.words[bit / WORD] |= mask;
        } else {
            self.words[bit / WORD] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            })
        })
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `rows[i] . x = rhs[i]` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub unknowns: usize,
    pub rows: Vec<BitRow>,
    pub rhs: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Particular solution with every free variable set to zero.
    Consistent { x: BitRow, rank: usize },
    /// Indices of equations summing to `0 = 1`.
    Inconsistent { combination: Vec<usize> },
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> LinearSystem {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn push(&mut self, row: BitRow, rhs: bool) {
        assert_eq!(row.len(), self.unknowns);
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Gauss-Jordan elimination, pivoting on the lowest available unknown.
    pub fn solve(&self) -> Solution {
        let count = self.rows.len();
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        let mut trace: Vec<BitRow> = (0..count).map(|i| BitRow::unit(count, i)).collect();
        let mut pivots: Vec<usize> = Vec::new();

        for col in 0..self.unknowns {
            let rank = pivots.len();
            let Some(p) = (rank..count).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            rhs.swap(rank, p);
            trace.swap(rank, p);
            let (pivot_row, pivot_rhs, pivot_trace) =
                (rows[rank].clone(), rhs[rank], trace[rank].clone());
            for r in 0..count {
                if r != rank && rows[r].get(col) {
                    rows[r].xor_assign(&pivot_row);
                    rhs[r] ^= pivot_rhs;
                    trace[r].xor_assign(&pivot_trace);
                }
            }
            pivots.push(col);
        }

        let rank = pivots.len();
        if let Some(r) = (rank..count).find(|&r| rhs[r]) {
            debug_assert!(rows[r].is_zero());
            return Solution::Inconsistent {
                combination: trace[r].ones().collect(),
            };
        }
        let mut x = BitRow::zeros(self.unknowns);
        for (i, &col) in pivots.iter().enumerate() {
            x.set(col, rhs[i]);
        }
        Solution::Consistent { x, rank }
    }

    pub fn satisfied_by(&self, x: &BitRow) -> bool {
        self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
            let dot = row.ones().filter(|&i| x.get(i)).count() % 2 == 1;
            dot == b
        })
    }
}
