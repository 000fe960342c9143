use std::collections::HashSet;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::{character_table, Character};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{subgroups_of_orders, GroupHom, Subgroup};

/// `dim V^H = (1/|H|) Σ_{h in H} χ(h)`, which must be a non-negative integer.
pub fn fixed_subspace_dim(chi: &Character, h: &Subgroup) -> Result<u64> {
    if !h.parent().same_table(chi.group()) {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    let mut s = Cyclotomic::zero();
    for &x in h.members() {
        s = s.add(chi.at(x));
    }
    let avg = s
        .to_rational()
        .map(|q| q / Rational64::from_integer(h.order() as i64))
        .ok_or_else(|| Error::Character("average over subgroup is not rational".into()))?;
    if !avg.is_integer() || *avg.numer() < 0 {
        return Err(Error::Character(format!(
            "fixed-space dimension {avg} is not a non-negative integer"
        )));
    }
    Ok(*avg.numer() as u64)
}

/// Both sides of the Mackey criterion for a linear character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyReport {
    pub irreducible: bool,
    /// `⟨Ind λ, Ind λ⟩` computed from the induced character.
    pub direct_norm: Rational64,
    /// The same norm as `Σ_s ⟨λ^s, λ⟩` over `H \ G / H`.
    pub double_coset_norm: Rational64,
    pub double_cosets: usize,
}

/// Mackey irreducibility test for a linear character `λ` of `H`, given by
/// the inclusion `H -> G`. The direct and double-coset computations must
/// agree.
pub fn mackey_irreducible(lambda: &Character, inclusion: &GroupHom) -> Result<MackeyReport> {
    if !lambda.is_linear() {
        return Err(Error::Precondition(
            "Mackey test expects a linear character".into(),
        ));
    }
    let direct_norm = lambda.induce(inclusion)?.norm()?;
    let (double_coset_norm, double_cosets) = mackey_double_coset_norm(lambda, inclusion)?;
    if direct_norm != double_coset_norm {
        return Err(Error::Inconsistent(format!(
            "induced norm {direct_norm} disagrees with double-coset sum {double_coset_norm}"
        )));
    }
    Ok(MackeyReport {
        irreducible: direct_norm.is_one(),
        direct_norm,
        double_coset_norm,
        double_cosets,
    })
}

/// `Σ_{s in H\G/H} ⟨λ^s, λ⟩_{H ∩ sHs^-1}` with `λ^s(x) = λ(s^-1 x s)`, and
/// the number of double cosets.
pub fn mackey_double_coset_norm(
    lambda: &Character,
    inclusion: &GroupHom,
) -> Result<(Rational64, usize)> {
    if !inclusion.source().same_table(lambda.group()) || !inclusion.is_injective() {
        return Err(Error::NotSubgroup(
            "expected an inclusion of the character's group".into(),
        ));
    }
    let g = inclusion.target();
    let h = inclusion.source();
    let mut local = vec![usize::MAX; g.order()];
    for x in 0..h.order() {
        local[inclusion.apply(x)] = x;
    }
    let members: Vec<usize> = (0..h.order()).map(|x| inclusion.apply(x)).collect();
    let mut seen = vec![false; g.order()];
    let mut total = Rational64::zero();
    let mut count = 0;
    for s in 0..g.order() {
        if seen[s] {
            continue;
        }
        count += 1;
        for &a in &members {
            let as_ = g.mul(a, s);
            for &b in &members {
                seen[g.mul(as_, b)] = true;
            }
        }
        let s_inv = g.inv(s);
        let mut acc = Cyclotomic::zero();
        let mut size = 0i64;
        for &x in &members {
            let y = g.mul(g.mul(s_inv, x), s);
            if local[y] == usize::MAX {
                continue;
            }
            size += 1;
            acc = acc.add(&lambda.at(local[y]).mul(&lambda.at(local[x]).conj()));
        }
        let term = acc
            .to_rational()
            .ok_or_else(|| Error::Character("double-coset term is not rational".into()))?;
        total += term / Rational64::from_integer(size);
    }
    Ok((total, count))
}

/// Result of a primitivity search.
#[derive(Clone, Debug)]
pub struct PrimitivityReport {
    pub primitive: bool,
    /// A proper subgroup and a character of it inducing to `χ`.
    pub witness: Option<(Subgroup, Character)>,
    /// Conjugacy classes of subgroups examined.
    pub subgroups_checked: usize,
    pub note: Option<String>,
}

/// Decides whether an irreducible `χ` of degree `d` is induced from some
/// proper subgroup of index `k` dividing `d`.
///
/// `χ = Ind ψ` for `ψ` on `H` of index `k` exactly when `Res_H χ` has an
/// irreducible constituent of degree `d/k`: reciprocity makes `χ` a
/// constituent of `Ind ψ`, and the degrees then force equality. Any witness
/// found is confirmed by inducing it back.
pub fn is_primitive(chi: &Character) -> Result<PrimitivityReport> {
    if !chi.is_irreducible() {
        return Err(Error::Precondition(
            "primitivity is tested on irreducibles".into(),
        ));
    }
    let d = chi.degree() as usize;
    if d == 1 {
        return Ok(PrimitivityReport {
            primitive: true,
            witness: None,
            subgroups_checked: 0,
            note: Some("linear characters are primitive".into()),
        });
    }
    let g = chi.group();
    let n = g.order();
    let indices: Vec<usize> = (2..=d)
        .filter(|k| d.is_multiple_of(*k) && n.is_multiple_of(*k))
        .collect();
    let orders: Vec<usize> = indices.iter().map(|k| n / k).collect();
    let subgroups = subgroups_of_orders(g, &orders);
    let mut covered: HashSet<Vec<usize>> = HashSet::new();
    let mut checked = 0;
    for h in subgroups {
        if covered.contains(h.members()) {
            continue;
        }
        for s in 0..n {
            covered.insert(h.conjugate_by(s).members().to_vec());
        }
        checked += 1;
        let k = h.index();
        let (hg, inc) = h.to_group(None);
        let res = chi.restrict(&inc)?;
        let table = character_table(&hg)?;
        for psi in table.of_degree((d / k) as i64) {
            if res.inner_product(psi)? > Rational64::zero() {
                let ind = psi.induce(&inc)?;
                if ind != *chi {
                    return Err(Error::Inconsistent(
                        "constituent of the restriction does not induce back".into(),
                    ));
                }
                return Ok(PrimitivityReport {
                    primitive: false,
                    witness: Some((h.clone(), psi.clone())),
                    subgroups_checked: checked,
                    note: None,
                });
            }
        }
    }
    Ok(PrimitivityReport {
        primitive: true,
        witness: None,
        subgroups_checked: checked,
        note: None,
    })
}
