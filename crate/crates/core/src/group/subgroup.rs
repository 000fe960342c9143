use std::collections::HashSet;

use super::{Group, GroupHom};
use crate::error::{Error, Result};

/// A subgroup of a parent group, stored as a sorted member list plus a
/// membership mask.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Group,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_table(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Validates that `members` is a subgroup of `parent`.
    pub fn from_members(parent: &Group, members: &[usize]) -> Result<Subgroup> {
        let n = parent.order();
        let mut mask = vec![false; n];
        for &m in members {
            if m >= n {
                return Err(Error::NotSubgroup(format!("element {m} out of range")));
            }
            mask[m] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let list: Vec<usize> = (0..n).filter(|&x| mask[x]).collect();
        for &a in &list {
            if !mask[parent.inv(a)] {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &list {
                if !mask[parent.mul(a, b)] {
                    return Err(Error::NotSubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        Ok(Subgroup::from_mask(parent, mask))
    }

    pub(crate) fn from_mask(parent: &Group, mask: Vec<bool>) -> Subgroup {
        let members: Vec<usize> = (0..mask.len()).filter(|&x| mask[x]).collect();
        assert_eq!(
            parent.order() % members.len(),
            0,
            "Lagrange violated: subgroup order does not divide group order"
        );
        Subgroup {
            parent: parent.clone(),
            members,
            mask,
        }
    }

    pub fn generated_by(parent: &Group, gens: &[usize]) -> Subgroup {
        let (mask, _) = parent.closure_mask(gens);
        Subgroup::from_mask(parent, mask)
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Subgroup::generated_by(parent, &[])
    }

    pub fn whole(parent: &Group) -> Subgroup {
        Subgroup::from_mask(parent, vec![true; parent.order()])
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self) -> bool {
        let gens = self.parent.generators();
        let own = self.generators();
        gens.iter().all(|&g| {
            own.iter()
                .all(|&h| self.contains(self.parent.conjugate(g, h)))
        })
    }

    /// Generating set of this subgroup (as parent indices).
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.parent.order()];
        span[0] = true;
        let mut size = 1;
        let mut cands = self.members.clone();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.parent.element_order(x)), x));
        for x in cands {
            if size == self.order() {
                break;
            }
            if !span[x] {
                gens.push(x);
                let (s, c) = self.parent.closure_mask(&gens);
                span = s;
                size = c;
            }
        }
        gens
    }

    /// `s H s^-1`
    pub fn conjugate_by(&self, s: usize) -> Subgroup {
        let mut mask = vec![false; self.parent.order()];
        for &h in &self.members {
            mask[self.parent.conjugate(s, h)] = true;
        }
        Subgroup::from_mask(&self.parent, mask)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| a && b)
            .collect();
        Subgroup::from_mask(&self.parent, mask)
    }

    /// Normalizer of this subgroup in the parent.
    pub fn normalizer(&self) -> Subgroup {
        let own = self.generators();
        let mask: Vec<bool> = (0..self.parent.order())
            .map(|g| {
                own.iter()
                    .all(|&h| self.contains(self.parent.conjugate(g, h)))
            })
            .collect();
        Subgroup::from_mask(&self.parent, mask)
    }

    /// Left coset representatives (smallest element of each coset `gH`).
    pub fn left_transversal(&self) -> Vec<usize> {
        let n = self.parent.order();
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in &self.members {
                seen[self.parent.mul(g, h)] = true;
            }
        }
        reps
    }

    /// The subgroup as a standalone group, with the inclusion map into the
    /// parent. Element `i` of the new group is `members()[i]`.
    pub fn to_group(&self, name: Option<String>) -> (Group, GroupHom) {
        let k = self.order();
        let n = self.parent.order();
        let mut local = vec![usize::MAX; n];
        for (i, &m) in self.members.iter().enumerate() {
            local[m] = i;
        }
        let mut table = vec![0u32; k * k];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * k + j] = local[self.parent.mul(a, b)] as u32;
            }
        }
        let sub = Group::from_table_trusted(table, name);
        let inclusion = GroupHom::new_trusted(&sub, &self.parent, self.members.clone());
        (sub, inclusion)
    }
}

pub fn center(g: &Group) -> Subgroup {
    let gens = g.generators();
    let mask = (0..g.order())
        .map(|z| gens.iter().all(|&s| g.mul(s, z) == g.mul(z, s)))
        .collect();
    Subgroup::from_mask(g, mask)
}

/// Subgroup generated by all commutators (normal by construction).
pub fn derived_subgroup(g: &Group) -> Subgroup {
    let n = g.order();
    let mut set = HashSet::new();
    for a in 0..n {
        for b in 0..n {
            set.insert(g.commutator(a, b));
        }
    }
    let gens: Vec<usize> = set.into_iter().collect();
    let mut gens = gens;
    gens.sort_unstable();
    Subgroup::generated_by(g, &gens)
}

/// Quotient `G/N` with the projection homomorphism. Cosets are labelled in
/// order of their smallest element, so the coset `N` is `0`.
pub fn quotient(g: &Group, normal: &Subgroup) -> Result<(Group, GroupHom)> {
    if !normal.is_normal() {
        return Err(Error::NotSubgroup(
            "quotient by a non-normal subgroup".into(),
        ));
    }
    let reps = normal.left_transversal();
    let mut label = vec![usize::MAX; g.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &h in normal.members() {
            label[g.mul(r, h)] = i;
        }
    }
    let k = reps.len();
    let mut table = vec![0u32; k * k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * k + j] = label[g.mul(a, b)] as u32;
        }
    }
    let q = Group::from_table_trusted(table, None);
    let proj = GroupHom::new_trusted(g, &q, label);
    Ok((q, proj))
}

/// A Sylow `q`-subgroup, built by repeatedly adjoining a `q`-element of the
/// normalizer. Returns the trivial subgroup when `q` does not divide `|G|`.
pub fn sylow_subgroup(g: &Group, q: usize) -> Subgroup {
    let n = g.order();
    let mut target = 1;
    let mut m = n;
    if q >= 2 {
        while m.is_multiple_of(q) {
            m /= q;
            target *= q;
        }
    }
    let is_q_power = |mut k: usize| {
        while k.is_multiple_of(q) {
            k /= q;
        }
        k == 1
    };
    let mut p = Subgroup::trivial(g);
    while p.order() < target {
        let norm = p.normalizer();
        let x = norm
            .members()
            .iter()
            .copied()
            .find(|&x| !p.contains(x) && is_q_power(g.element_order(x)))
            .expect("a proper q-subgroup has a q-element in its normalizer outside it");
        let mut gens = p.generators();
        gens.push(x);
        p = Subgroup::generated_by(g, &gens);
    }
    p
}

/// All subgroups whose order lies in `orders`, found by joining cyclic
/// subgroups. Only intermediate subgroups whose order divides some target
/// are explored, so the search stays inside the relevant part of the
/// lattice. Output is sorted by order, then by member list.
pub fn subgroups_of_orders(g: &Group, orders: &[usize]) -> Vec<Subgroup> {
    let n = g.order();
    let useful = |k: usize| orders.iter().any(|&t| t % k == 0);
    // cyclic subgroups, keyed by mask; each carries a generator
    let mut cyclic: Vec<(usize, Vec<bool>)> = Vec::new();
    let mut seen_cyc: HashSet<Vec<bool>> = HashSet::new();
    for x in 0..n {
        if !useful(g.element_order(x)) {
            continue;
        }
        let (mask, _) = g.closure_mask(&[x]);
        if seen_cyc.insert(mask.clone()) {
            cyclic.push((x, mask));
        }
    }
    let mut all: Vec<(Vec<usize>, Vec<bool>)> = Vec::new();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    for (x, mask) in &cyclic {
        if seen.insert(mask.clone()) {
            all.push((vec![*x], mask.clone()));
        }
    }
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for idx in frontier {
            let (gens, mask) = all[idx].clone();
            for (x, _) in &cyclic {
                if mask[*x] {
                    continue;
                }
                let mut gs = gens.clone();
                gs.push(*x);
                let (m2, size) = g.closure_mask(&gs);
                if !useful(size) || seen.contains(&m2) {
                    continue;
                }
                seen.insert(m2.clone());
                all.push((gs, m2));
                next.push(all.len() - 1);
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = all
        .into_iter()
        .map(|(_, m)| Subgroup::from_mask(g, m))
        .filter(|s| orders.contains(&s.order()))
        .collect();
    if orders.contains(&1) && !out.iter().any(|s| s.order() == 1) {
        out.push(Subgroup::trivial(g));
    }
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members.cmp(&b.members))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_named_group, cyclic, is_isomorphic};

    #[test]
    fn center_and_derived_of_abelian() {
        let g = Group::direct_product(&cyclic(3).unwrap(), &cyclic(4).unwrap());
        assert_eq!(center(&g).order(), 12);
        assert_eq!(derived_subgroup(&g).order(), 1);
    }

    #[test]
    fn sylow_of_c6_at_5_is_trivial() {
        let g = cyclic(6).unwrap();
        assert!(sylow_subgroup(&g, 5).is_trivial());
        assert_eq!(sylow_subgroup(&g, 2).order(), 2);
        assert_eq!(sylow_subgroup(&g, 3).order(), 3);
    }

    #[test]
    fn from_members_rejects_non_subgroups() {
        let g = cyclic(6).unwrap();
        assert!(Subgroup::from_members(&g, &[0, 1]).is_err());
        assert!(Subgroup::from_members(&g, &[1, 3]).is_err());
        assert!(Subgroup::from_members(&g, &[0, 2, 4]).is_ok());
    }

    #[test]
    fn quotient_of_q8_by_center_is_klein() {
        let q8 = build_named_group("Q8", &[]).unwrap();
        let z = center(&q8);
        assert_eq!(z.order(), 2);
        let (v, proj) = quotient(&q8, &z).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.exponent(), 2);
        proj.verify().unwrap();
    }

    #[test]
    fn subgroup_counts_of_small_groups() {
        // S3 ~ C3 x| C2 has 6 subgroups: 1, three of order 2, one of order 3, itself
        let s3 = build_named_group("C3sC2", &[]).unwrap();
        let subs = subgroups_of_orders(&s3, &[1, 2, 3, 6]);
        assert_eq!(subs.len(), 6);
        // C3 x C3 has 4 subgroups of order 3
        let e = build_named_group("C3xC3", &[]).unwrap();
        assert_eq!(subgroups_of_orders(&e, &[3]).len(), 4);
        // Q8 has exactly one subgroup of order 2 and three of order 4
        let q8 = build_named_group("Q8", &[]).unwrap();
        assert_eq!(subgroups_of_orders(&q8, &[2]).len(), 1);
        assert_eq!(subgroups_of_orders(&q8, &[4]).len(), 3);
    }

    #[test]
    fn to_group_inclusion_is_hom() {
        let g = build_named_group("P1", &[]).unwrap();
        let d = derived_subgroup(&g);
        let (h, inc) = d.to_group(None);
        inc.verify().unwrap();
        assert!(is_isomorphic(&h, &build_named_group("C3xC3", &[]).unwrap()));
    }
}
