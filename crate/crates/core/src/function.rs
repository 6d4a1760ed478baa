//! Boolean classifiers given extensionally as truth tables, and the points
//! they classify.
//!
//! A function over features 1..=m is stored as a bit-packed table of 2^m
//! entries. Point coordinates map to table positions most-significant-first:
//! the point (v1, ..., vm) sits at index v1·2^(m-1) + ... + vm·2^0, so the
//! table string reads in lexicographic point order starting from all zeros.

use crate::{Error, Result, HARD_MAX_ARITY};

/// One input point of an m-ary function.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    index: u32,
    m: u8,
}

impl Point {
    /// Builds a point from coordinates in feature order (v1 first).
    pub fn new(coords: &[bool]) -> Result<Self> {
        let m = coords.len();
        if m == 0 || m > HARD_MAX_ARITY {
            return Err(Error::ArityTooLarge(m, HARD_MAX_ARITY));
        }
        let mut index = 0u32;
        for &c in coords {
            index = index << 1 | c as u32;
        }
        Ok(Point { index, m: m as u8 })
    }

    /// Builds the point at a given table index.
    pub fn from_index(m: usize, index: u32) -> Result<Self> {
        if m == 0 || m > HARD_MAX_ARITY {
            return Err(Error::ArityTooLarge(m, HARD_MAX_ARITY));
        }
        debug_assert!(index < 1 << m);
        Ok(Point { index, m: m as u8 })
    }

    /// Parses a comma-separated coordinate list such as `1,0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut coords = Vec::new();
        for (pos, part) in text.split(',').enumerate() {
            match part.trim() {
                "0" => coords.push(false),
                "1" => coords.push(true),
                other => {
                    let c = other.chars().next().unwrap_or(',');
                    return Err(Error::BadBit(pos, c));
                }
            }
        }
        Point::new(&coords)
    }

    pub fn arity(self) -> usize {
        self.m as usize
    }

    pub fn index(self) -> u32 {
        self.index
    }

    /// The value of coordinate `i` (1-based).
    pub fn coordinate(self, i: usize) -> bool {
        debug_assert!((1..=self.m as usize).contains(&i));
        self.index >> (self.m as usize - i) & 1 == 1
    }

    /// Renders back to the `1,0,1` form accepted by [`Point::parse`].
    pub fn render(self) -> String {
        (1..=self.m as usize)
            .map(|i| if self.coordinate(i) { "1" } else { "0" })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A total Boolean function over features 1..=m, stored as a packed table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BooleanFunction {
    m: usize,
    table: Vec<u64>,
}

fn words_for(m: usize) -> usize {
    if m >= 6 {
        1 << (m - 6)
    } else {
        1
    }
}

impl BooleanFunction {
    /// Parses a truth-table bitstring such as `01010011` (length 2^m, the
    /// entry for the all-zeros point first).
    pub fn parse_tt(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyBitstring);
        }
        let n = text.len();
        if !n.is_power_of_two() || n < 2 {
            return Err(Error::BadTableLength(n));
        }
        let m = n.trailing_zeros() as usize;
        if m > HARD_MAX_ARITY {
            return Err(Error::ArityTooLarge(m, HARD_MAX_ARITY));
        }
        let mut table = vec![0u64; words_for(m)];
        for (idx, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => table[idx / 64] |= 1u64 << (idx % 64),
                c => return Err(Error::BadBit(idx, c)),
            }
        }
        Ok(BooleanFunction { m, table })
    }

    /// Builds a function from pre-packed table words (bit `idx` of the
    /// table lives in word `idx / 64`). Bits above 2^m in the last word are
    /// cleared.
    pub(crate) fn from_words(m: usize, mut table: Vec<u64>) -> Self {
        debug_assert!((1..=HARD_MAX_ARITY).contains(&m));
        debug_assert_eq!(table.len(), words_for(m));
        let n = 1usize << m;
        if n < 64 {
            table[0] &= (1u64 << n) - 1;
        }
        BooleanFunction { m, table }
    }

    /// Builds a function of arity m <= 6 directly from its table bits, where
    /// bit `idx` of `bits` is the value at table index `idx`.
    pub fn from_bits(m: usize, bits: u64) -> Result<Self> {
        if m == 0 || m > 6 {
            return Err(Error::ArityTooLarge(m, 6));
        }
        let n = 1usize << m;
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(BooleanFunction {
            m,
            table: vec![bits & mask],
        })
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    /// The table entry at a raw index.
    pub fn bit(&self, idx: u32) -> bool {
        let idx = idx as usize;
        debug_assert!(idx < 1 << self.m);
        self.table[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn eval(&self, p: Point) -> Result<bool> {
        if p.arity() != self.m {
            return Err(Error::ArityMismatch {
                point: p.arity(),
                function: self.m,
            });
        }
        Ok(self.bit(p.index()))
    }

    /// Renders the table back to its bitstring form.
    pub fn render(&self) -> String {
        (0..1u32 << self.m)
            .map(|idx| if self.bit(idx) { '1' } else { '0' })
            .collect()
    }

    /// Number of points mapped to 1.
    pub fn ones(&self) -> u64 {
        let n = 1usize << self.m;
        if n >= 64 {
            self.table.iter().map(|w| w.count_ones() as u64).sum()
        } else {
            (self.table[0] & ((1u64 << n) - 1)).count_ones() as u64
        }
    }

    pub fn is_constant(&self) -> bool {
        let ones = self.ones();
        ones == 0 || ones == 1 << self.m
    }

    /// Whether the function value ever changes when feature `i` is flipped.
    pub fn depends_on(&self, i: usize) -> bool {
        debug_assert!((1..=self.m).contains(&i));
        let flip = 1u32 << (self.m - i);
        (0..1u32 << self.m).any(|idx| self.bit(idx) != self.bit(idx ^ flip))
    }

    /// The function g with features renamed by `perm`: feature `i` of `self`
    /// becomes feature `perm[i-1]` of g, so g(y) = self(x) when
    /// x_i = y_{perm[i-1]}.
    pub fn permute_features(&self, perm: &[usize]) -> Result<Self> {
        let m = self.m;
        if perm.len() != m || {
            let mut seen = vec![false; m + 1];
            perm.iter().any(|&p| {
                p < 1 || p > m || std::mem::replace(&mut seen[p], true)
            })
        } {
            return Err(Error::FeatureOutOfRange(
                perm.iter().copied().find(|&p| p < 1 || p > m).unwrap_or(0),
                m,
            ));
        }
        let mut table = vec![0u64; words_for(m)];
        for y in 0..1u32 << m {
            let mut x = 0u32;
            for i in 1..=m {
                let bit = y >> (m - perm[i - 1]) & 1;
                x |= bit << (m - i);
            }
            if self.bit(x) {
                table[y as usize / 64] |= 1u64 << (y as usize % 64);
            }
        }
        Ok(BooleanFunction { m, table })
    }
}
