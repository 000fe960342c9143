//! Finite groups stored as full multiplication tables.
//!
//! Elements are the indices `0..n` with `0` the identity. Every derived
//! object (subgroups, homomorphisms, characters) refers back to a [`Group`]
//! handle, which is cheap to clone.

mod classes;
mod hom;
mod invariants;
mod io;
mod named;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub use classes::ConjugacyClasses;
pub use hom::{
    automorphism_group_order, count_homomorphisms, find_isomorphism, is_isomorphic,
    search_isomorphism, semidirect_product, Action, Fingerprint, GroupHom, IsomorphismWitness,
    AUT_ORDER_LIMIT,
};
pub use invariants::{abelian_invariants, structure_invariants, StructureInvariants};
pub use io::{read_group, write_group};
pub use named::{
    b_group, build_named_group, c9_semidirect_c3, cyclic, elementary_c3xc3, frobenius21,
    heisenberg3, j_group, named_group_corpus, p1, p1_with_action, p2, p3, quaternion, sl2_f3, Mat2,
    NAMED_GROUPS,
};
pub use subgroup::{
    center, derived_subgroup, quotient, subgroups_of_orders, sylow_subgroup, Subgroup,
};

/// Largest order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 1000;

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

struct Inner {
    name: Option<String>,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    element_orders: Vec<u32>,
    classes: OnceLock<ConjugacyClasses>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.inner.name)
            .field("order", &self.inner.order)
            .finish()
    }
}

impl Group {
    /// Builds a group from a row-major table, verifying the group axioms.
    ///
    /// Associativity is checked with Light's test against a generating set,
    /// which is equivalent to the exhaustive check.
    pub fn from_table(table: Vec<u32>, name: Option<String>) -> Result<Group> {
        let n = (table.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != table.len() {
            return Err(Error::InvalidGroup(format!(
                "table length {} is not a positive square",
                table.len()
            )));
        }
        if n > MAX_ORDER {
            return Err(Error::Budget(format!("order {n} exceeds {MAX_ORDER}")));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= n) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::InvalidGroup(
                    "element 0 is not a two-sided identity".into(),
                ));
            }
        }
        let mut seen = vec![0u32; n];
        for a in 0..n {
            let stamp = a as u32 + 1;
            for b in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] == stamp {
                    return Err(Error::InvalidGroup(format!("row {a} repeats an entry")));
                }
                seen[v] = stamp;
            }
        }
        let mut seen = vec![0u32; n];
        for b in 0..n {
            let stamp = b as u32 + 1;
            for a in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] == stamp {
                    return Err(Error::InvalidGroup(format!("column {b} repeats an entry")));
                }
                seen[v] = stamp;
            }
        }
        let g = Group::from_table_trusted(table, name);
        g.check_associative_light()?;
        Ok(g)
    }

    /// Builds a group from a table known to satisfy the axioms by
    /// construction. Inverses and element orders are derived here.
    pub(crate) fn from_table_trusted(table: Vec<u32>, name: Option<String>) -> Group {
        let n = (table.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(n * n, table.len());
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row.iter().position(|&v| v == 0).expect("latin row");
            inverses[a] = b as u32;
        }
        let mut element_orders = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            element_orders[a] = k;
        }
        Group {
            inner: Arc::new(Inner {
                name,
                order: n,
                table,
                inverses,
                element_orders,
                classes: OnceLock::new(),
            }),
        }
    }

    /// Generates a group by closing `generators` under `mul`.
    ///
    /// Returns the group together with the concrete element for each index;
    /// index 0 is `identity`.
    pub fn from_closure<T, F>(
        identity: T,
        generators: &[T],
        mul: F,
        name: Option<String>,
    ) -> Result<(Group, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let prod = mul(&elements[i], g);
                if !index.contains_key(&prod) {
                    if elements.len() >= MAX_ORDER {
                        return Err(Error::Budget(format!("closure exceeds order {MAX_ORDER}")));
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod = mul(&elements[a], &elements[b]);
                let idx = *index.get(&prod).ok_or_else(|| {
                    Error::InvalidGroup("closure is not closed under multiplication".into())
                })?;
                table[a * n + b] = idx as u32;
            }
        }
        Ok((Group::from_table_trusted(table, name), elements))
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn name(&self) -> Option<&str> {
        self.inner.name.as_deref()
    }

    /// Display label: the name if present, otherwise the order.
    pub fn label(&self) -> String {
        match &self.inner.name {
            Some(n) => n.clone(),
            None => format!("<group of order {}>", self.order()),
        }
    }

    /// Same table under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Group {
        Group::from_table_trusted(self.inner.table.clone(), Some(name.into()))
    }

    pub fn table(&self) -> &[u32] {
        &self.inner.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.table[a * self.inner.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverses[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.inner.element_orders[a] as usize
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.inner.element_orders
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.element_order(a) as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// `g x g^-1`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a^-1 b^-1 a b`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn exponent(&self) -> usize {
        self.inner
            .element_orders
            .iter()
            .fold(1usize, |acc, &o| num_integer::lcm(acc, o as usize))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, computed on first use.
    pub fn classes(&self) -> &ConjugacyClasses {
        self.inner
            .classes
            .get_or_init(|| ConjugacyClasses::compute(self))
    }

    /// True when both handles refer to the same table.
    pub fn same_table(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.table == other.inner.table
    }

    /// A small generating set, chosen greedily by largest element order and
    /// pruned of redundant members. Deterministic.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.order();
        if n == 1 {
            return Vec::new();
        }
        let mut gens: Vec<usize> = Vec::new();
        let mut span = vec![false; n];
        span[0] = true;
        let mut size = 1;
        while size < n {
            let next = (0..n)
                .filter(|&x| !span[x])
                .max_by_key(|&x| (self.element_order(x), std::cmp::Reverse(x)))
                .expect("span is proper");
            gens.push(next);
            let (s, cnt) = self.closure_mask(&gens);
            span = s;
            size = cnt;
        }
        let mut i = 0;
        while i < gens.len() && gens.len() > 1 {
            let mut trial = gens.clone();
            trial.remove(i);
            if self.closure_mask(&trial).1 == n {
                gens = trial;
            } else {
                i += 1;
            }
        }
        gens
    }

    /// Membership mask and size of the subgroup generated by `gens`.
    pub(crate) fn closure_mask(&self, gens: &[usize]) -> (Vec<bool>, usize) {
        let n = self.order();
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut queue = vec![0usize];
        let mut count = 1;
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    count += 1;
                    queue.push(y);
                }
            }
        }
        (mask, count)
    }

    /// Light's associativity test: `(x s) y == x (s y)` for every `s` in a
    /// set whose left-normed products reach every element.
    fn check_associative_light(&self) -> Result<()> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut count = 1;
        while count < n {
            let next = (0..n).find(|&x| !reached[x]).expect("unreached");
            gens.push(next);
            let mut queue: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = queue.pop() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        count += 1;
                        queue.push(y);
                    }
                }
            }
        }
        for &s in &gens {
            for x in 0..n {
                let xs = self.mul(x, s);
                for y in 0..n {
                    if self.mul(xs, y) != self.mul(x, self.mul(s, y)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({x}, {s}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive `n^3` associativity check.
    pub fn is_associative_exhaustive(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    /// Verifies identity, inverses and associativity exhaustively.
    pub fn verify(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidGroup("identity fails".into()));
            }
            let inv = self.inv(a);
            if self.mul(a, inv) != 0 || self.mul(inv, a) != 0 {
                return Err(Error::InvalidGroup(format!("no inverse for {a}")));
            }
            if (0..n).filter(|&b| self.mul(a, b) == 0).count() != 1 {
                return Err(Error::InvalidGroup(format!("inverse of {a} not unique")));
            }
        }
        if !self.is_associative_exhaustive() {
            return Err(Error::InvalidGroup("not associative".into()));
        }
        Ok(())
    }

    /// Direct product with element `(a, b)` stored at `a + |A| * b`.
    pub fn direct_product(a: &Group, b: &Group) -> Group {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (xa, xb) = (x % na, x / na);
            for y in 0..n {
                let (ya, yb) = (y % na, y / na);
                table[x * n + y] = (a.mul(xa, ya) + na * b.mul(xb, yb)) as u32;
            }
        }
        let name = match (a.name(), b.name()) {
            (Some(x), Some(y)) => Some(format!("{x}x{y}")),
            _ => None,
        };
        Group::from_table_trusted(table, name)
    }

    /// Relabels elements by `perm` (old index -> new index); `perm[0]` must
    /// be `0`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Group> {
        let n = self.order();
        if perm.len() != n || perm[0] != 0 {
            return Err(Error::Precondition(
                "relabeling must fix the identity".into(),
            ));
        }
        let mut check = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut check[p], true) {
                return Err(Error::Precondition("relabeling is not a bijection".into()));
            }
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        Ok(Group::from_table_trusted(table, self.inner.name.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_table_basics() {
        let c6 = cyclic(6).unwrap();
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.exponent(), 6);
        assert!(c6.is_abelian());
        assert_eq!(c6.inv(1), 5);
        assert_eq!(c6.pow(1, -1), 5);
        assert_eq!(c6.generators().len(), 1);
    }

    #[test]
    fn from_table_rejects_non_groups() {
        // Latin square with identity that is not associative (order 5 loop).
        let t: Vec<u32> = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(Group::from_table(t, None).is_err());
        assert!(Group::from_table(vec![0, 1, 1, 1], None).is_err());
        assert!(Group::from_table(vec![0, 1, 0], None).is_err());
    }

    #[test]
    fn from_table_accepts_klein_four() {
        let t: Vec<u32> = vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0];
        let g = Group::from_table(t, Some("V4".into())).unwrap();
        assert_eq!(g.exponent(), 2);
        g.verify().unwrap();
    }

    #[test]
    fn direct_product_order() {
        let g = Group::direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap());
        assert_eq!(g.order(), 6);
        assert!(g.is_associative_exhaustive());
        assert_eq!(g.exponent(), 6);
    }
}
