//! Packed vectors and incremental Gaussian elimination over `F_3`.
//!
//! Each vector is two bit planes: bit `i` of `p` is set when entry `i` is
//! `1`, bit `i` of `n` when it is `2`. Addition of whole words is a handful
//! of bitwise operations.

/// A vector over `F_3` packed into two bit planes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F3Vec {
    len: usize,
    p: Vec<u64>,
    n: Vec<u64>,
}

#[inline]
fn add_words(ap: u64, an: u64, bp: u64, bn: u64) -> (u64, u64) {
    let az = !(ap | an);
    let bz = !(bp | bn);
    (
        (ap & bz) | (bp & az) | (an & bn),
        (an & bz) | (bn & az) | (ap & bp),
    )
}

impl F3Vec {
    pub fn zeros(len: usize) -> Self {
        let words = len.div_ceil(64);
        F3Vec {
            len,
            p: vec![0; words],
            n: vec![0; words],
        }
    }

    pub fn from_values(values: &[u8]) -> Self {
        let mut v = F3Vec::zeros(values.len());
        for (i, &x) in values.iter().enumerate() {
            v.set(i, x);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        let (w, b) = (i / 64, i % 64);
        if (self.p[w] >> b) & 1 == 1 {
            1
        } else if (self.n[w] >> b) & 1 == 1 {
            2
        } else {
            0
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: u8) {
        let (w, b) = (i / 64, i % 64);
        let mask = 1u64 << b;
        self.p[w] &= !mask;
        self.n[w] &= !mask;
        match v % 3 {
            1 => self.p[w] |= mask,
            2 => self.n[w] |= mask,
            _ => {}
        }
    }

    /// Adds `v` (taken mod 3) to entry `i`.
    #[inline]
    pub fn add_at(&mut self, i: usize, v: u8) {
        let cur = self.get(i);
        self.set(i, (cur + v % 3) % 3);
    }

    pub fn values(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().all(|&w| w == 0) && self.n.iter().all(|&w| w == 0)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        for (w, (&p, &n)) in self.p.iter().zip(&self.n).enumerate() {
            let any = p | n;
            if any != 0 {
                return Some(w * 64 + any.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn add_assign(&mut self, o: &F3Vec) {
        debug_assert_eq!(self.len, o.len);
        for w in 0..self.p.len() {
            let (p, n) = add_words(self.p[w], self.n[w], o.p[w], o.n[w]);
            self.p[w] = p;
            self.n[w] = n;
        }
    }

    pub fn sub_assign(&mut self, o: &F3Vec) {
        debug_assert_eq!(self.len, o.len);
        for w in 0..self.p.len() {
            let (p, n) = add_words(self.p[w], self.n[w], o.n[w], o.p[w]);
            self.p[w] = p;
            self.n[w] = n;
        }
    }

    /// `self += c * o`
    pub fn add_scaled(&mut self, o: &F3Vec, c: u8) {
        match c % 3 {
            1 => self.add_assign(o),
            2 => self.sub_assign(o),
            _ => {}
        }
    }

    pub fn negate(&mut self) {
        std::mem::swap(&mut self.p, &mut self.n);
    }

    pub fn scale(&mut self, c: u8) {
        match c % 3 {
            0 => {
                self.p.iter_mut().for_each(|w| *w = 0);
                self.n.iter_mut().for_each(|w| *w = 0);
            }
            2 => self.negate(),
            _ => {}
        }
    }

    pub fn dot(&self, o: &F3Vec) -> u8 {
        let mut ones = 0u32;
        let mut twos = 0u32;
        for w in 0..self.p.len() {
            // products equal to 1: (1,1) or (2,2); equal to 2: (1,2) or (2,1)
            ones += ((self.p[w] & o.p[w]) | (self.n[w] & o.n[w])).count_ones();
            twos += ((self.p[w] & o.n[w]) | (self.n[w] & o.p[w])).count_ones();
        }
        ((ones + 2 * twos) % 3) as u8
    }
}

/// Rows in semi-echelon form: each row has a pivot entry equal to `1` and
/// is zero in the pivot columns of all earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<F3Vec>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
            is_pivot: vec![false; len],
        }
    }

    pub fn width(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[F3Vec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut F3Vec) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v.get(c);
            if x != 0 {
                v.add_scaled(row, 3 - x);
            }
        }
    }

    /// Adds `v` to the row space; returns `true` if it raised the rank.
    pub fn insert(&mut self, mut v: F3Vec) -> bool {
        self.reduce(&mut v);
        match v.first_nonzero() {
            None => false,
            Some(c) => {
                if v.get(c) == 2 {
                    v.negate();
                }
                self.rows.push(v);
                self.pivots.push(c);
                self.is_pivot[c] = true;
                true
            }
        }
    }

    pub fn contains(&self, v: &F3Vec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Back-substitutes so every pivot column is zero outside its own row.
    pub fn into_reduced(mut self) -> Self {
        for i in (0..self.rows.len()).rev() {
            for j in (i + 1)..self.rows.len() {
                let c = self.pivots[j];
                let x = self.rows[i].get(c);
                if x != 0 {
                    let rj = self.rows[j].clone();
                    self.rows[i].add_scaled(&rj, 3 - x);
                }
            }
        }
        self
    }

    /// Basis of `{x : r · x = 0 for every stored row r}`.
    pub fn nullspace(&self) -> Vec<F3Vec> {
        let reduced = self.clone().into_reduced();
        let free: Vec<usize> = (0..self.len).filter(|&c| !reduced.is_pivot[c]).collect();
        free.iter()
            .map(|&f| {
                let mut x = F3Vec::zeros(self.len);
                x.set(f, 1);
                for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
                    let v = row.get(f);
                    if v != 0 {
                        x.set(p, 3 - v);
                    }
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_addition_table() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                let mut x = F3Vec::from_values(&[a]);
                x.add_assign(&F3Vec::from_values(&[b]));
                assert_eq!(x.get(0), (a + b) % 3);
                let mut y = F3Vec::from_values(&[a]);
                y.sub_assign(&F3Vec::from_values(&[b]));
                assert_eq!(y.get(0), (a + 3 - b) % 3);
            }
        }
    }

    #[test]
    fn rank_and_nullspace() {
        let mut e = Echelon::new(4);
        assert!(e.insert(F3Vec::from_values(&[1, 1, 0, 0])));
        assert!(e.insert(F3Vec::from_values(&[0, 1, 1, 0])));
        assert!(!e.insert(F3Vec::from_values(&[1, 2, 1, 0])));
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in e.rows() {
                assert_eq!(r.dot(x), 0);
            }
        }
    }

    #[test]
    fn long_vectors_cross_word_boundaries() {
        let vals: Vec<u8> = (0..200).map(|i| (i * 7 % 3) as u8).collect();
        let v = F3Vec::from_values(&vals);
        assert_eq!(v.values(), vals);
        assert_eq!(v.first_nonzero(), Some(1));
        let mut w = v.clone();
        w.add_assign(&v);
        w.add_assign(&v);
        assert!(w.is_zero());
    }
}
