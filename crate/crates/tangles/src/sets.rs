//! Small bit-set utilities: subsets of a ground set (at most 64 elements),
//! bit sets over separation ids, and a square bit matrix for order relations.

use std::cmp::Ordering;
use std::fmt;

/// A subset of a ground set of at most 64 elements, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 64);
        if n == 64 {
            Subset(!0)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: u32) -> Subset {
        Subset(1u64 << e)
    }

    pub fn from_elems<I: IntoIterator<Item = u32>>(elems: I) -> Subset {
        let mut mask = 0u64;
        for e in elems {
            mask |= 1u64 << e;
        }
        Subset(mask)
    }

    pub fn contains(self, e: u32) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn with(self, e: u32) -> Subset {
        Subset(self.0 | 1u64 << e)
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn inter(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0).inter(Subset::full(n))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros();
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    /// Compare as sorted element lists: `{0,2} < {1}` and `{0} < {0,1}`.
    /// This is the order used to pick reference orientations.
    pub fn lex_cmp(self, o: Subset) -> Ordering {
        let mut x = self.0;
        let mut y = o.0;
        loop {
            match (x == 0, y == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                (false, false) => {
                    let ea = x.trailing_zeros();
                    let eb = y.trailing_zeros();
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    x &= x - 1;
                    y &= y - 1;
                }
            }
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// An oriented separation rendered as a pair of sides.
///
/// Bipartitions and subset lattices store the complement in `b`; graph
/// separations may have overlapping sides.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SidePair {
    pub a: Subset,
    pub b: Subset,
}

impl SidePair {
    pub fn new(a: Subset, b: Subset) -> SidePair {
        SidePair { a, b }
    }

    pub fn flip(self) -> SidePair {
        SidePair { a: self.b, b: self.a }
    }

    pub fn lex_cmp(&self, o: &SidePair) -> Ordering {
        self.a.lex_cmp(o.a).then(self.b.lex_cmp(o.b))
    }
}

impl fmt::Debug for SidePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.a, self.b)
    }
}

/// A set of separation ids, stored as a bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct IdSet {
    words: Vec<u64>,
}

impl IdSet {
    pub fn new(n: usize) -> IdSet {
        IdSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, it: I) -> IdSet {
        let mut s = IdSet::new(n);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Highest index this set can hold plus one, rounded up to a word.
    pub fn capacity(&self) -> usize {
        self.words.len() * 64
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, o: &IdSet) {
        for (w, v) in self.words.iter_mut().zip(&o.words) {
            *w |= v;
        }
    }

    pub fn intersect_with(&mut self, o: &IdSet) {
        for (w, v) in self.words.iter_mut().zip(&o.words) {
            *w &= v;
        }
    }

    pub fn subtract(&mut self, o: &IdSet) {
        for (w, v) in self.words.iter_mut().zip(&o.words) {
            *w &= !v;
        }
    }

    pub fn intersects(&self, o: &IdSet) -> bool {
        self.words.iter().zip(&o.words).any(|(w, v)| w & v != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// A square bit matrix; row `i` holds the relation's image of `i`.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> BitMatrix {
        let stride = n.div_ceil(64).max(1);
        BitMatrix { n, stride, bits: vec![0; stride * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / 64] |= 1u64 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// True when row `i` is contained in row `j`.
    pub fn row_subset(&self, i: usize, j: usize) -> bool {
        self.row(i).iter().zip(self.row(j)).all(|(a, b)| a & !b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_lex_order_is_sorted_list_order() {
        let s01 = Subset::from_elems([0, 1]);
        let s02 = Subset::from_elems([0, 2]);
        let s0 = Subset::singleton(0);
        let s1 = Subset::singleton(1);
        assert_eq!(s01.lex_cmp(s02), Ordering::Less);
        assert_eq!(s02.lex_cmp(s1), Ordering::Less);
        assert_eq!(s0.lex_cmp(s01), Ordering::Less);
        assert_eq!(s0.lex_cmp(s0), Ordering::Equal);
        assert_eq!(Subset::EMPTY.lex_cmp(s0), Ordering::Less);
    }

    #[test]
    fn idset_roundtrip() {
        let mut s = IdSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(64));
        assert!(!s.contains(63));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.count(), 3);
        s.remove(64);
        assert_eq!(s.count(), 2);
    }
}
