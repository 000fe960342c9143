//! Exact characters of finite groups.
//!
//! A [`Character`] is a class function with values in a cyclotomic field,
//! indexed by the conjugacy classes of its group. Representations are never
//! built as matrices; everything is done with characters.

mod dixon;
mod primitive;
mod table;

use num_rational::Rational64;
use num_traits::One;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{Group, GroupHom, Subgroup};

pub use primitive::{
    fixed_subspace_dim, is_primitive, mackey_double_coset_norm, mackey_irreducible, MackeyReport,
    PrimitivityReport,
};
pub use table::{character_table, count_irreducibles_of_degree, CharacterTable, TableRepr};

/// A class function on a group with exact cyclotomic values.
#[derive(Clone, Debug)]
pub struct Character {
    group: Group,
    values: Vec<Cyclotomic>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_table(&other.group) && self.values == other.values
    }
}

impl Character {
    /// Wraps class values; `values[i]` belongs to class `i` of `group`.
    pub fn new(group: &Group, values: Vec<Cyclotomic>) -> Result<Character> {
        if values.len() != group.classes().len() {
            return Err(Error::Character(format!(
                "{} values for {} classes",
                values.len(),
                group.classes().len()
            )));
        }
        Ok(Character {
            group: group.clone(),
            values,
        })
    }

    pub fn trivial(group: &Group) -> Character {
        Character {
            group: group.clone(),
            values: vec![Cyclotomic::one(); group.classes().len()],
        }
    }

    /// Character of the regular representation.
    pub fn regular(group: &Group) -> Character {
        let mut values = vec![Cyclotomic::zero(); group.classes().len()];
        values[0] = Cyclotomic::from_int(group.order() as i64);
        Character {
            group: group.clone(),
            values,
        }
    }

    /// Character with all values zero.
    pub fn zero(group: &Group) -> Character {
        Character {
            group: group.clone(),
            values: vec![Cyclotomic::zero(); group.classes().len()],
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value on conjugacy class `i`.
    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value on element `x`.
    pub fn at(&self, x: usize) -> &Cyclotomic {
        &self.values[self.group.classes().class_of(x)]
    }

    /// `χ(1)` as an integer.
    pub fn degree(&self) -> i64 {
        self.values[0]
            .to_integer()
            .expect("value at the identity of a character is an integer")
    }

    pub fn is_linear(&self) -> bool {
        self.values[0].to_integer() == Some(1)
    }

    fn same_group(&self, other: &Character) -> Result<()> {
        if self.group.same_table(&other.group) {
            Ok(())
        } else {
            Err(Error::Character(
                "characters live on different groups".into(),
            ))
        }
    }

    /// `⟨χ, ψ⟩ = (1/|G|) Σ χ(g) conj(ψ(g))`, which is rational for characters.
    pub fn inner_product(&self, other: &Character) -> Result<Rational64> {
        self.same_group(other)?;
        let cc = self.group.classes();
        let mut acc = Cyclotomic::zero();
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            let term = a.mul(&b.conj());
            acc = acc.add(&term.scale(Rational64::from_integer(cc.size(i) as i64)));
        }
        let total = acc
            .to_rational()
            .ok_or_else(|| Error::Character("inner product is not rational".into()))?;
        Ok(total / Rational64::from_integer(self.group.order() as i64))
    }

    pub fn norm(&self) -> Result<Rational64> {
        self.inner_product(self)
    }

    pub fn is_irreducible(&self) -> bool {
        self.degree() > 0 && matches!(self.norm(), Ok(n) if n.is_one())
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Character {
            group: self.group.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(Character {
            group: self.group.clone(),
            values,
        })
    }

    pub fn scale(&self, k: i64) -> Character {
        let q = Rational64::from_integer(k);
        Character {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }

    /// Pointwise product (character of the tensor product).
    pub fn tensor(&self, other: &Character) -> Result<Character> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(Character {
            group: self.group.clone(),
            values,
        })
    }

    /// Complex conjugate character (the dual representation).
    pub fn conjugate(&self) -> Character {
        Character {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// The character `x -> χ(s^-1 x s)` of `H`, for `s` in the ambient
    /// group normalizing the image of `inclusion`.
    pub fn conjugate_by(&self, inclusion: &GroupHom, s: usize) -> Result<Character> {
        self.check_inclusion(inclusion)?;
        let g = inclusion.target();
        let h = inclusion.source();
        let mut local = vec![usize::MAX; g.order()];
        for x in 0..h.order() {
            local[inclusion.apply(x)] = x;
        }
        let cc = h.classes();
        let mut values = Vec::with_capacity(cc.len());
        for i in 0..cc.len() {
            let x = inclusion.apply(cc.representative(i));
            let y = g.mul(g.mul(g.inv(s), x), s);
            let ly = local[y];
            if ly == usize::MAX {
                return Err(Error::Precondition(
                    "s does not normalize the subgroup".into(),
                ));
            }
            values.push(self.at(ly).clone());
        }
        Character::new(h, values)
    }

    /// Elements on which `χ(g) = χ(1)`.
    pub fn kernel(&self) -> Subgroup {
        let cc = self.group.classes();
        let mask = (0..self.group.order())
            .map(|x| self.values[cc.class_of(x)] == self.values[0])
            .collect();
        Subgroup::from_mask(&self.group, mask)
    }

    /// Pullback `χ ∘ f` along `f: H -> G`. For an inclusion this is the
    /// restriction; for a projection it is inflation.
    pub fn restrict(&self, f: &GroupHom) -> Result<Character> {
        if !f.target().same_table(&self.group) {
            return Err(Error::Character(
                "map does not land in the character's group".into(),
            ));
        }
        let h = f.source();
        let values = h
            .classes()
            .representatives()
            .into_iter()
            .map(|x| self.at(f.apply(x)).clone())
            .collect();
        Character::new(h, values)
    }

    fn check_inclusion(&self, inclusion: &GroupHom) -> Result<()> {
        if !inclusion.source().same_table(&self.group) {
            return Err(Error::Character(
                "inclusion does not start at the character's group".into(),
            ));
        }
        if !inclusion.is_injective() {
            return Err(Error::NotSubgroup("map is not injective".into()));
        }
        Ok(())
    }

    /// Induction along an injective map `H -> G`:
    /// `Ind(g) = |G| / (|H| |C(g)|) Σ_{h in H, h ~ g} λ(h)`.
    pub fn induce(&self, inclusion: &GroupHom) -> Result<Character> {
        self.check_inclusion(inclusion)?;
        let g = inclusion.target();
        let cc = g.classes();
        let mut sums = vec![Cyclotomic::zero(); cc.len()];
        for x in 0..self.group.order() {
            let c = cc.class_of(inclusion.apply(x));
            sums[c] = sums[c].add(self.at(x));
        }
        let gh = (g.order() / self.group.order()) as i64;
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.scale(Rational64::new(gh, cc.size(i) as i64)))
            .collect();
        Character::new(g, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_named_group, cyclic, Subgroup};

    #[test]
    fn trivial_and_regular() {
        let g = build_named_group("Q8", &[]).unwrap();
        let t = Character::trivial(&g);
        assert_eq!(t.norm().unwrap(), Rational64::one());
        let r = Character::regular(&g);
        assert_eq!(r.inner_product(&t).unwrap(), Rational64::one());
        assert_eq!(r.norm().unwrap(), Rational64::from_integer(8));
    }

    #[test]
    fn induce_trivial_from_whole_group() {
        let g = cyclic(5).unwrap();
        let whole = Subgroup::whole(&g);
        let (h, inc) = whole.to_group(None);
        let ind = Character::trivial(&h).induce(&inc).unwrap();
        assert_eq!(ind, Character::trivial(&g));
    }

    #[test]
    fn induce_from_trivial_subgroup_is_regular() {
        let g = build_named_group("C7sC3", &[]).unwrap();
        let (h, inc) = Subgroup::trivial(&g).to_group(None);
        let ind = Character::trivial(&h).induce(&inc).unwrap();
        assert_eq!(ind, Character::regular(&g));
    }

    #[test]
    fn induce_rejects_non_injective() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        let f = GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).unwrap();
        assert!(Character::trivial(&c4).induce(&f).is_err());
    }
}
