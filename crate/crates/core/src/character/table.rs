use std::cmp::Ordering;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{dixon, Character};
use crate::cyclotomic::{Cyclotomic, CyclotomicRepr};
use crate::error::{Error, Result};
use crate::group::{Group, MAX_ORDER};

/// The irreducible characters of a group.
///
/// Rows are sorted by degree, with the trivial character first and ties
/// broken by comparing values class by class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Group,
    exponent: u32,
    irreducibles: Vec<Character>,
}

/// Serializable form of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRepr {
    pub group: Option<String>,
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub representatives: Vec<usize>,
    pub element_orders: Vec<usize>,
    pub degrees: Vec<i64>,
    pub characters: Vec<Vec<CyclotomicRepr>>,
}

fn row_cmp(a: &Character, b: &Character) -> Ordering {
    let trivial = |c: &Character| c.values().iter().all(|v| *v == Cyclotomic::one());
    a.degree()
        .cmp(&b.degree())
        .then_with(|| trivial(b).cmp(&trivial(a)))
        .then_with(|| {
            a.values()
                .iter()
                .zip(b.values())
                .map(|(x, y)| x.canonical_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// Computes the full character table and checks it exactly.
pub fn character_table(g: &Group) -> Result<CharacterTable> {
    if g.order() > MAX_ORDER {
        return Err(Error::Budget(format!(
            "order {} exceeds {MAX_ORDER}",
            g.order()
        )));
    }
    let (exponent, rows) = dixon::irreducible_characters(g)?;
    let mut irreducibles = rows
        .into_iter()
        .map(|values| Character::new(g, values))
        .collect::<Result<Vec<_>>>()?;
    irreducibles.sort_by(row_cmp);
    let table = CharacterTable {
        group: g.clone(),
        exponent,
        irreducibles,
    };
    table.verify()?;
    Ok(table)
}

/// Number of irreducible characters of degree `d`.
pub fn count_irreducibles_of_degree(g: &Group, d: i64) -> Result<usize> {
    Ok(character_table(g)?.count_of_degree(d))
}

impl CharacterTable {
    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Exponent of the group; all values lie in `Q(ζ_exponent)`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.irreducibles
            .iter()
            .map(|c| c.degree() as usize)
            .collect()
    }

    pub fn count_of_degree(&self, d: i64) -> usize {
        self.irreducibles.iter().filter(|c| c.degree() == d).count()
    }

    pub fn of_degree(&self, d: i64) -> Vec<&Character> {
        self.irreducibles
            .iter()
            .filter(|c| c.degree() == d)
            .collect()
    }

    /// Multiplicities `⟨χ, ψ_i⟩` of each irreducible in `χ`.
    pub fn decompose(&self, chi: &Character) -> Result<Vec<Rational64>> {
        self.irreducibles
            .iter()
            .map(|psi| chi.inner_product(psi))
            .collect()
    }

    /// Exact checks: row and column orthogonality, `Σ χ(1)^2 = |G|`, one
    /// irreducible per class, inverse classes carry conjugate values.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        let cc = g.classes();
        let r = cc.len();
        if self.irreducibles.len() != r {
            return Err(Error::Inconsistent(format!(
                "{} irreducibles for {r} classes",
                self.irreducibles.len()
            )));
        }
        let sum_sq: i64 = self.irreducibles.iter().map(|c| c.degree().pow(2)).sum();
        if sum_sq != g.order() as i64 {
            return Err(Error::Inconsistent(format!(
                "sum of squared degrees {sum_sq} != {}",
                g.order()
            )));
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for l in 0..r {
                if *a.value(cc.inverse(l)) != a.value(l).conj() {
                    return Err(Error::Inconsistent(
                        "inverse class values not conjugate".into(),
                    ));
                }
            }
            for (j, b) in self.irreducibles.iter().enumerate().skip(i) {
                let ip = a.inner_product(b)?;
                let want = if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                };
                if ip != want {
                    return Err(Error::Inconsistent(format!(
                        "row orthogonality fails for ({i}, {j}): {ip}"
                    )));
                }
            }
        }
        // Σ_χ χ(g_k) conj χ(g_l) = δ_kl |C_G(g_k)|
        for k in 0..r {
            for l in k..r {
                let mut s = Cyclotomic::zero();
                for c in &self.irreducibles {
                    s = s.add(&c.value(k).mul(&c.value(l).conj()));
                }
                let want = if k == l {
                    (g.order() / cc.size(k)) as i64
                } else {
                    0
                };
                if s != Cyclotomic::from_int(want) {
                    return Err(Error::Inconsistent(format!(
                        "column orthogonality fails for ({k}, {l})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_repr(&self) -> TableRepr {
        let cc = self.group.classes();
        TableRepr {
            group: self.group.name().map(str::to_string),
            order: self.group.order(),
            class_sizes: cc.sizes(),
            representatives: cc.representatives(),
            element_orders: cc
                .representatives()
                .into_iter()
                .map(|x| self.group.element_order(x))
                .collect(),
            degrees: self.irreducibles.iter().map(Character::degree).collect(),
            characters: self
                .irreducibles
                .iter()
                .map(|c| {
                    c.values()
                        .iter()
                        .map(|v| v.lift(self.exponent).to_repr())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_repr())?)
    }

    /// Plain-text rendering, one row per character.
    pub fn to_text(&self) -> String {
        let cc = self.group.classes();
        let mut out = String::new();
        out.push_str(&format!(
            "classes: {}\nsizes: {:?}\norders: {:?}\n",
            cc.len(),
            cc.sizes(),
            cc.representatives()
                .into_iter()
                .map(|x| self.group.element_order(x))
                .collect::<Vec<_>>()
        ));
        for (i, c) in self.irreducibles.iter().enumerate() {
            let vals: Vec<String> = c.values().iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("X.{}: [{}]\n", i + 1, vals.join(", ")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_named_group, cyclic};

    #[test]
    fn cyclic_three() {
        let t = character_table(&cyclic(3).unwrap()).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        assert_eq!(t.irreducibles()[0], Character::trivial(t.group()));
    }

    #[test]
    fn small_nonabelian_degrees() {
        let cases = [
            ("Q8", vec![1, 1, 1, 1, 2]),
            ("C3sC2", vec![1, 1, 2]),
            ("C7sC3", vec![1, 1, 1, 3, 3]),
            ("SL2F3", vec![1, 1, 1, 2, 2, 2, 3]),
        ];
        for (name, degrees) in cases {
            let g = build_named_group(name, &[]).unwrap();
            assert_eq!(character_table(&g).unwrap().degrees(), degrees, "{name}");
        }
    }

    #[test]
    fn json_round_trip_is_stable() {
        let t = character_table(&build_named_group("Q8", &[]).unwrap()).unwrap();
        let json = t.to_json().unwrap();
        let back: TableRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t.to_repr());
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    }
}
