use std::collections::HashMap;

use super::{abelian_invariants, center, derived_subgroup, Group, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism between two groups, stored as the image of every element.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Group,
    target: Group,
    images: Vec<usize>,
}

impl GroupHom {
    /// Builds and verifies a homomorphism.
    pub fn new(source: &Group, target: &Group, images: Vec<usize>) -> Result<GroupHom> {
        let h = GroupHom::new_trusted(source, target, images);
        h.verify()?;
        Ok(h)
    }

    pub(crate) fn new_trusted(source: &Group, target: &Group, images: Vec<usize>) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    /// Extends generator images to a homomorphism, failing if the
    /// assignment is inconsistent.
    pub fn from_generators(
        source: &Group,
        target: &Group,
        gens: &[usize],
        images: &[usize],
    ) -> Result<GroupHom> {
        let map = extend_map(source, target, gens, images, false)
            .ok_or_else(|| Error::NotHomomorphism("generator images are inconsistent".into()))?;
        if map.contains(&usize::MAX) {
            return Err(Error::NotHomomorphism(
                "listed elements do not generate the source".into(),
            ));
        }
        Ok(GroupHom::new_trusted(source, target, map))
    }

    pub fn identity(g: &Group) -> GroupHom {
        GroupHom::new_trusted(g, g, (0..g.order()).collect())
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Exhaustive check of `f(xy) = f(x) f(y)`.
    pub fn verify(&self) -> Result<()> {
        let (n, m) = (self.source.order(), self.target.order());
        if self.images.len() != n {
            return Err(Error::NotHomomorphism("image list has wrong length".into()));
        }
        if self.images.iter().any(|&y| y >= m) {
            return Err(Error::NotHomomorphism("image out of range".into()));
        }
        if self.images[0] != 0 {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = self.images[self.source.mul(x, y)];
                let rhs = self.target.mul(self.images[x], self.images[y]);
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!("fails at ({x}, {y})")));
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> Subgroup {
        let mask = self.images.iter().map(|&y| y == 0).collect();
        Subgroup::from_mask(&self.source, mask)
    }

    pub fn image(&self) -> Subgroup {
        let mut mask = vec![false; self.target.order()];
        for &y in &self.images {
            mask[y] = true;
        }
        Subgroup::from_mask(&self.target, mask)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.source.order() == self.target.order()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !self.target.same_table(&other.source) {
            return Err(Error::Precondition("composition of mismatched maps".into()));
        }
        let images = self.images.iter().map(|&y| other.images[y]).collect();
        Ok(GroupHom::new_trusted(&self.source, &other.target, images))
    }
}

/// An action of `H` on `N` by automorphisms: `auts[h]` is the element map of
/// the automorphism attached to `h`, with `auts[h1 h2] = auts[h1] ∘ auts[h2]`.
#[derive(Clone, Debug)]
pub struct Action {
    n: Group,
    h: Group,
    auts: Vec<Vec<usize>>,
}

impl Action {
    /// Builds an action from the automorphisms attached to generators of
    /// `H`, verifying each is an automorphism and that they extend to a
    /// homomorphism `H -> Aut(N)`.
    pub fn from_generators(
        n: &Group,
        h: &Group,
        gens: &[usize],
        gen_auts: &[Vec<usize>],
    ) -> Result<Action> {
        if gens.len() != gen_auts.len() {
            return Err(Error::Precondition("one automorphism per generator".into()));
        }
        for a in gen_auts {
            check_automorphism(n, a)?;
        }
        let id: Vec<usize> = (0..n.order()).collect();
        let mut auts: Vec<Option<Vec<usize>>> = vec![None; h.order()];
        auts[0] = Some(id);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            let ax = auts[x].clone().expect("visited");
            for (&s, a_s) in gens.iter().zip(gen_auts) {
                let y = h.mul(x, s);
                let comp: Vec<usize> = a_s.iter().map(|&v| ax[v]).collect();
                match &auts[y] {
                    Some(prev) if *prev != comp => {
                        return Err(Error::NotHomomorphism(
                            "action does not respect the relations of H".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        auts[y] = Some(comp);
                        queue.push(y);
                    }
                }
            }
        }
        let auts: Option<Vec<Vec<usize>>> = auts.into_iter().collect();
        let auts =
            auts.ok_or_else(|| Error::Precondition("generators do not generate H".into()))?;
        Ok(Action {
            n: n.clone(),
            h: h.clone(),
            auts,
        })
    }

    pub fn trivial(n: &Group, h: &Group) -> Action {
        let id: Vec<usize> = (0..n.order()).collect();
        Action {
            n: n.clone(),
            h: h.clone(),
            auts: vec![id; h.order()],
        }
    }

    pub fn apply(&self, h: usize, x: usize) -> usize {
        self.auts[h][x]
    }

    /// Element map of the automorphism attached to `h`.
    pub fn automorphism(&self, h: usize) -> &[usize] {
        &self.auts[h]
    }

    /// Order of the image of `H` in `Aut(N)`.
    pub fn image_order(&self) -> usize {
        let mut v = self.auts.clone();
        v.sort();
        v.dedup();
        v.len()
    }
}

/// Checks that `map` is a bijective endomorphism of `g`.
pub(crate) fn check_automorphism(g: &Group, map: &[usize]) -> Result<()> {
    let n = g.order();
    if map.len() != n {
        return Err(Error::NotAutomorphism("wrong length".into()));
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return Err(Error::NotAutomorphism("not a bijection".into()));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if map[g.mul(x, y)] != g.mul(map[x], map[y]) {
                return Err(Error::NotAutomorphism(format!(
                    "not multiplicative at ({x}, {y})"
                )));
            }
        }
    }
    Ok(())
}

/// `N ⋊ H` with `(n1, h1)(n2, h2) = (n1 · h1(n2), h1 h2)`. The pair `(n, h)`
/// is stored at index `n + |N| h`, so `N` occupies the first `|N|` indices.
pub fn semidirect_product(n: &Group, h: &Group, action: &Action) -> Result<Group> {
    if !action.n.same_table(n) || !action.h.same_table(h) {
        return Err(Error::Precondition(
            "action belongs to different groups".into(),
        ));
    }
    let (nn, nh) = (n.order(), h.order());
    let order = nn * nh;
    if order > super::MAX_ORDER {
        return Err(Error::Budget(format!(
            "semidirect product of order {order}"
        )));
    }
    let mut table = vec![0u32; order * order];
    for x in 0..order {
        let (n1, h1) = (x % nn, x / nn);
        let aut = &action.auts[h1];
        for y in 0..order {
            let (n2, h2) = (y % nn, y / nn);
            table[x * order + y] = (n.mul(n1, aut[n2]) + nn * h.mul(h1, h2)) as u32;
        }
    }
    let name = match (n.name(), h.name()) {
        (Some(a), Some(b)) => Some(format!("({a})x|({b})")),
        _ => None,
    };
    Ok(Group::from_table_trusted(table, name))
}

/// Extends generator images to the subgroup they generate. Returns the
/// partial map (`usize::MAX` off the subgroup) or `None` on inconsistency.
fn extend_map(
    src: &Group,
    tgt: &Group,
    gens: &[usize],
    imgs: &[usize],
    injective: bool,
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.order()];
    let mut used = if injective {
        vec![false; tgt.order()]
    } else {
        Vec::new()
    };
    map[0] = 0;
    if injective {
        used[0] = true;
    }
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x];
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = src.mul(x, s);
            let fy = tgt.mul(fx, t);
            if map[y] == usize::MAX {
                if injective {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                }
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// Depth-first search over generator images. `visit` receives each full
/// consistent map and returns `false` to stop the search.
fn backtrack(
    src: &Group,
    tgt: &Group,
    gens: &[usize],
    cands: &[Vec<usize>],
    injective: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    fn go(
        src: &Group,
        tgt: &Group,
        gens: &[usize],
        cands: &[Vec<usize>],
        injective: bool,
        imgs: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let depth = imgs.len();
        if depth == gens.len() {
            let map = extend_map(src, tgt, gens, imgs, injective).expect("checked");
            return visit(&map);
        }
        for &t in &cands[depth] {
            imgs.push(t);
            let ok = extend_map(src, tgt, &gens[..=depth], imgs, injective).is_some();
            if ok && !go(src, tgt, gens, cands, injective, imgs, visit) {
                imgs.pop();
                return false;
            }
            imgs.pop();
        }
        true
    }
    let mut imgs = Vec::with_capacity(gens.len());
    go(src, tgt, gens, cands, injective, &mut imgs, visit);
}

/// Number of homomorphisms `src -> tgt`.
pub fn count_homomorphisms(src: &Group, tgt: &Group) -> u64 {
    let gens = src.generators();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = src.element_order(s);
            (0..tgt.order())
                .filter(|&t| o.is_multiple_of(tgt.element_order(t)))
                .collect()
        })
        .collect();
    let mut count = 0u64;
    backtrack(src, tgt, &gens, &cands, false, &mut |_| {
        count += 1;
        true
    });
    count
}

/// Largest group order accepted by [`automorphism_group_order`].
pub const AUT_ORDER_LIMIT: usize = 200;

/// `|Aut(G)|`, by counting bijective generator-image assignments.
pub fn automorphism_group_order(g: &Group) -> Result<u64> {
    if g.order() > AUT_ORDER_LIMIT {
        return Err(Error::Budget(format!(
            "automorphism search limited to order {AUT_ORDER_LIMIT}, got {}",
            g.order()
        )));
    }
    let gens = g.generators();
    let cc = g.classes();
    let key = |x: usize| (g.element_order(x), cc.size(cc.class_of(x)));
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..g.order()).filter(|&t| key(t) == key(s)).collect())
        .collect();
    let mut count = 0u64;
    backtrack(g, g, &gens, &cands, true, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: usize,
    pub class_count: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelian_invariants: Vec<usize>,
    /// Sorted multiset of (element order, class size) over all elements.
    pub order_class_profile: Vec<(usize, usize)>,
    /// Sorted irreducible character degrees, when requested.
    pub degrees: Option<Vec<usize>>,
}

impl Fingerprint {
    pub fn compute(g: &Group, with_degrees: bool) -> Result<Fingerprint> {
        let cc = g.classes();
        let mut profile: Vec<(usize, usize)> = (0..g.order())
            .map(|x| (g.element_order(x), cc.size(cc.class_of(x))))
            .collect();
        profile.sort_unstable();
        let degrees = if with_degrees {
            let table = crate::character::character_table(g)?;
            let mut d = table.degrees();
            d.sort_unstable();
            Some(d)
        } else {
            None
        };
        Ok(Fingerprint {
            order: g.order(),
            exponent: g.exponent(),
            class_count: cc.len(),
            center_order: center(g).order(),
            derived_order: derived_subgroup(g).order(),
            abelian_invariants: abelian_invariants(g),
            order_class_profile: profile,
            degrees,
        })
    }

    /// Name of the first invariant on which the two fingerprints differ.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<&'static str> {
        if self.order != other.order {
            return Some("order");
        }
        if self.exponent != other.exponent {
            return Some("exponent");
        }
        if self.class_count != other.class_count {
            return Some("class count");
        }
        if self.center_order != other.center_order {
            return Some("center order");
        }
        if self.derived_order != other.derived_order {
            return Some("derived subgroup order");
        }
        if self.abelian_invariants != other.abelian_invariants {
            return Some("abelianization");
        }
        if self.order_class_profile != other.order_class_profile {
            return Some("element order / class size profile");
        }
        match (&self.degrees, &other.degrees) {
            (Some(a), Some(b)) if a != b => Some("character degrees"),
            _ => None,
        }
    }
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsomorphismWitness {
    /// An explicit isomorphism.
    Map(GroupHom),
    /// The named invariant differs.
    Invariant(&'static str),
    /// Invariants agree but exhaustive search found no isomorphism.
    Exhausted,
}

impl IsomorphismWitness {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsomorphismWitness::Map(_))
    }

    /// Short description of what decided the outcome.
    pub fn reason(&self) -> String {
        match self {
            IsomorphismWitness::Map(_) => "explicit isomorphism".into(),
            IsomorphismWitness::Invariant(s) => format!("differ in {s}"),
            IsomorphismWitness::Exhausted => "backtracking search exhausted".into(),
        }
    }
}

/// Searches for an isomorphism after comparing cheap invariants.
pub fn find_isomorphism(g: &Group, h: &Group) -> IsomorphismWitness {
    if g.order() != h.order() {
        return IsomorphismWitness::Invariant("order");
    }
    let fg = Fingerprint::compute(g, false).expect("no degrees requested");
    let fh = Fingerprint::compute(h, false).expect("no degrees requested");
    if let Some(d) = fg.first_difference(&fh) {
        return IsomorphismWitness::Invariant(d);
    }
    search_isomorphism(g, h)
        .map(IsomorphismWitness::Map)
        .unwrap_or(IsomorphismWitness::Exhausted)
}

/// Backtracking search without invariant screening.
pub fn search_isomorphism(g: &Group, h: &Group) -> Option<GroupHom> {
    if g.order() != h.order() {
        return None;
    }
    let gens = g.generators();
    if gens.is_empty() {
        return Some(GroupHom::new_trusted(g, h, vec![0]));
    }
    let (cg, ch) = (g.classes(), h.classes());
    let kg = |x: usize| (g.element_order(x), cg.size(cg.class_of(x)));
    let kh = |x: usize| (h.element_order(x), ch.size(ch.class_of(x)));
    let mut by_key: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for t in 0..h.order() {
        by_key.entry(kh(t)).or_default().push(t);
    }
    let mut cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| by_key.get(&kg(s)).cloned().unwrap_or_default())
        .collect();
    // composing with an inner automorphism of h moves the first image
    // anywhere in its class, so class representatives suffice there
    cands[0].retain(|&t| ch.representative(ch.class_of(t)) == t);
    let mut found = None;
    backtrack(g, h, &gens, &cands, true, &mut |map| {
        found = Some(map.to_vec());
        false
    });
    found.map(|m| GroupHom::new_trusted(g, h, m))
}

pub fn is_isomorphic(g: &Group, h: &Group) -> bool {
    find_isomorphism(g, h).is_isomorphic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_named_group, cyclic};

    #[test]
    fn small_automorphism_counts() {
        assert_eq!(automorphism_group_order(&cyclic(2).unwrap()).unwrap(), 1);
        assert_eq!(automorphism_group_order(&cyclic(9).unwrap()).unwrap(), 6);
        let q8 = build_named_group("Q8", &[]).unwrap();
        assert_eq!(automorphism_group_order(&q8).unwrap(), 24);
    }

    #[test]
    fn aut_budget_is_enforced() {
        let p3 = build_named_group("P3", &[]).unwrap();
        assert!(automorphism_group_order(&p3).unwrap_err().is_budget());
    }

    #[test]
    fn homomorphism_counts() {
        // Hom(C6, C3) = 3, Hom(Q8, C3) = 1, Hom(C3xC3, C3) = 9
        let c3 = cyclic(3).unwrap();
        assert_eq!(count_homomorphisms(&cyclic(6).unwrap(), &c3), 3);
        assert_eq!(
            count_homomorphisms(&build_named_group("Q8", &[]).unwrap(), &c3),
            1
        );
        assert_eq!(
            count_homomorphisms(&build_named_group("C3xC3", &[]).unwrap(), &c3),
            9
        );
    }

    #[test]
    fn isomorphism_witness_is_a_bijective_hom() {
        let g = build_named_group("P1", &[]).unwrap();
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm[1..].reverse();
        let h = g.relabeled(&perm).unwrap();
        match find_isomorphism(&g, &h) {
            IsomorphismWitness::Map(f) => {
                f.verify().unwrap();
                assert!(f.is_bijective());
            }
            other => panic!("expected isomorphism, got {}", other.reason()),
        }
    }

    #[test]
    fn action_rejects_non_automorphism() {
        let c3 = cyclic(3).unwrap();
        let c2 = cyclic(2).unwrap();
        assert!(Action::from_generators(&c3, &c2, &[1], &[vec![0, 1, 1]]).is_err());
        // inversion has order 2, but C3 acting on C3 by inversion does not
        // respect the relation s^3 = 1
        assert!(Action::from_generators(&c3, &c3, &[1], &[vec![0, 2, 1]]).is_err());
    }
}
