//! Artin conductor exponents from ramification filtrations.
//!
//! The exponent of a character `χ` against a chain `G_0 ⊇ G_1 ⊇ …` with
//! orders `g_i` is `Σ_i (g_i / g_0) · (χ(1) - dim V^{G_i})`.

use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::character::{character_table, fixed_subspace_dim, Character};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{center, Group, Subgroup};

/// Largest `p^n` accepted by [`cyclotomic_orders`].
pub const MAX_WILD_ORDER: u64 = 10_000_000;

/// A descending chain of subgroups of a local Galois group.
#[derive(Clone, Debug)]
pub struct RamificationFiltration {
    group: Group,
    chain: Vec<Subgroup>,
}

impl RamificationFiltration {
    /// Checks that the chain is descending, ends in the trivial group and
    /// that every member is normal in `G_0`.
    pub fn new(group: &Group, chain: Vec<Subgroup>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::Precondition("empty filtration".into()));
        }
        for (i, s) in chain.iter().enumerate() {
            if !s.parent().same_table(group) {
                return Err(Error::NotSubgroup(format!("G_{i} lies in another group")));
            }
            if i > 0 && !s.is_subgroup_of(&chain[i - 1]) {
                return Err(Error::Precondition(format!(
                    "G_{i} is not contained in G_{}",
                    i - 1
                )));
            }
        }
        if !chain.last().expect("non-empty").is_trivial() {
            return Err(Error::Precondition(
                "filtration must end in the trivial group".into(),
            ));
        }
        let g0 = &chain[0];
        for (i, s) in chain.iter().enumerate().skip(1) {
            if g0.members().iter().any(|&x| s.conjugate_by(x) != *s) {
                return Err(Error::Precondition(format!("G_{i} is not normal in G_0")));
            }
        }
        Ok(RamificationFiltration {
            group: group.clone(),
            chain,
        })
    }

    /// The tame chain `[T, 1]`, or `[1]` when `T` is trivial.
    pub fn tame(group: &Group, tame: &Subgroup) -> Result<Self> {
        let mut chain = vec![tame.clone()];
        if !tame.is_trivial() {
            chain.push(Subgroup::trivial(group));
        }
        Self::new(group, chain)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn chain(&self) -> &[Subgroup] {
        &self.chain
    }

    pub fn orders(&self) -> Vec<u64> {
        self.chain.iter().map(|s| s.order() as u64).collect()
    }

    /// True when `G_1` is the normal Sylow `p`-subgroup of `G_0` and
    /// `G_0 / G_1` has order prime to `p`.
    pub fn is_tame_by_wild(&self, p: u64) -> bool {
        let g0 = self.chain[0].order() as u64;
        let g1 = self.chain.get(1).map_or(1, |s| s.order() as u64);
        let mut wild = 1;
        let mut rest = g0;
        while rest.is_multiple_of(p) {
            rest /= p;
            wild *= p;
        }
        g1 == wild
    }
}

/// An Artin exponent together with whether it is an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArtinExponent {
    pub value: Rational64,
    pub integral: bool,
}

impl ArtinExponent {
    fn new(value: Rational64) -> Self {
        ArtinExponent {
            value,
            integral: value.is_integer(),
        }
    }
}

impl fmt::Display for ArtinExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// How `dim V^{G_i}` is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentMethod {
    /// Average of `χ` over each `G_i`.
    Generic,
    /// For irreducible `χ`, a central element of `G_i` acting by a
    /// nontrivial scalar forces `V^{G_i} = 0`; other terms fall back to the
    /// generic average.
    CentralShortcut,
}

/// Conductor exponent of `χ` against `filt`, using the central shortcut
/// for irreducible characters.
pub fn artin_exponent(chi: &Character, filt: &RamificationFiltration) -> Result<ArtinExponent> {
    artin_exponent_with(chi, filt, ExponentMethod::CentralShortcut)
}

pub fn artin_exponent_with(
    chi: &Character,
    filt: &RamificationFiltration,
    method: ExponentMethod,
) -> Result<ArtinExponent> {
    if !chi.group().same_table(&filt.group) {
        return Err(Error::Character(
            "character and filtration on different groups".into(),
        ));
    }
    let degree = chi.degree();
    let shortcut = method == ExponentMethod::CentralShortcut && chi.is_irreducible();
    let scalar_centre: Vec<usize> = if shortcut {
        let one = Cyclotomic::from_int(degree);
        center(&filt.group)
            .members()
            .iter()
            .copied()
            .filter(|&z| *chi.at(z) != one)
            .collect()
    } else {
        Vec::new()
    };
    let g0 = filt.chain[0].order() as i64;
    let mut total = Rational64::zero();
    for s in &filt.chain {
        if s.is_trivial() {
            continue;
        }
        let codim = if scalar_centre.iter().any(|&z| s.contains(z)) {
            degree
        } else {
            degree - fixed_subspace_dim(chi, s)? as i64
        };
        total += Rational64::new(s.order() as i64 * codim, g0);
    }
    Ok(ArtinExponent::new(total))
}

/// Orders `g_0, g_1, …` of a ramification filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationOrders {
    pub p: u64,
    /// Wild depth: `g_1 = p^n`.
    pub n: u32,
    pub tame: u64,
    /// `g_i` for `i = 0..=p^n`; every later order is 1.
    pub orders: Vec<u64>,
}

impl FiltrationOrders {
    pub fn order(&self, i: usize) -> u64 {
        self.orders.get(i).copied().unwrap_or(1)
    }

    /// Parses a whitespace-separated order list `g0 g1 g2 …`. The prime and
    /// depth are read off the list; `p` is needed when there is no wild
    /// part.
    pub fn parse(text: &str, p: u64) -> Result<Self> {
        let mut orders = Vec::new();
        for tok in text.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::parse(1, format!("bad order `{tok}`")))?;
            orders.push(v);
        }
        Self::from_orders(p, orders)
    }

    /// Validates an arbitrary weakly decreasing order list.
    pub fn from_orders(p: u64, orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::params(
                "filtration",
                "orders must be positive and non-empty",
            ));
        }
        if orders.windows(2).any(|w| w[1] > w[0] || w[0] % w[1] != 0) {
            return Err(Error::params(
                "filtration",
                "orders must weakly decrease by divisors",
            ));
        }
        let g1 = orders.get(1).copied().unwrap_or(1);
        let mut n = 0;
        let mut w = g1;
        while w > 1 && w % p == 0 {
            w /= p;
            n += 1;
        }
        Ok(FiltrationOrders {
            p,
            n,
            tame: orders[0] / g1,
            orders,
        })
    }
}

/// Orders of the filtration with tame part `tame` and wild part matching
/// `Gal(Q(ζ_{p^{n+1}})/Q)`: `g_0 = tame·p^n`, `g_i = p^k` for
/// `p^{n-k} ≤ i ≤ p^{n-k+1} - 1`, and `g_i = 1` for `i ≥ p^n`.
pub fn cyclotomic_orders(p: u64, n: u32, tame: u64) -> Result<FiltrationOrders> {
    if !is_prime(p) {
        return Err(Error::params(
            "cyclotomic_orders",
            format!("{p} is not prime"),
        ));
    }
    if tame == 0 || tame.is_multiple_of(p) {
        return Err(Error::params(
            "cyclotomic_orders",
            format!("tame order {tame} must be positive and prime to {p}"),
        ));
    }
    let pn = p
        .checked_pow(n)
        .filter(|&v| v <= MAX_WILD_ORDER)
        .ok_or_else(|| Error::Budget(format!("{p}^{n} exceeds {MAX_WILD_ORDER}")))?;
    let mut orders = Vec::with_capacity(pn as usize + 1);
    orders.push(tame * pn);
    for k in (1..=n).rev() {
        let lo = p.pow(n - k);
        let hi = p.pow(n - k + 1) - 1;
        let gk = p.pow(k);
        orders.extend(std::iter::repeat_n(gk, (hi - lo + 1) as usize));
    }
    orders.push(1);
    Ok(FiltrationOrders { p, n, tame, orders })
}

/// Exponent of a degree-`d` character when every nontrivial `G_i` contains
/// a central element acting by a nontrivial scalar, so `dim V/V^{G_i} = d`
/// whenever `g_i ≠ 1`.
pub fn artin_exponent_from_orders(degree: u64, orders: &FiltrationOrders) -> ArtinExponent {
    let codims: Vec<u64> = orders
        .orders
        .iter()
        .map(|&g| if g == 1 { 0 } else { degree })
        .collect();
    artin_exponent_from_codims(&orders.orders, &codims)
}

/// `Σ_i (g_i/g_0) · codim_i` for explicit codimensions.
pub fn artin_exponent_from_codims(orders: &[u64], codims: &[u64]) -> ArtinExponent {
    let g0 = orders[0] as i64;
    let total = orders
        .iter()
        .zip(codims)
        .fold(Rational64::zero(), |acc, (&g, &c)| {
            acc + Rational64::new(g as i64 * c as i64, g0)
        });
    ArtinExponent::new(total)
}

/// The three closed forms for faithful degree-3 characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedFormCase {
    /// Projective image `P1`, case i: tame order `4c`.
    P1i,
    /// Projective image `P1`, case ii: tame order `12c`.
    P1ii,
    /// Projective image `P3`: tame order `3cx`.
    P3,
}

impl ClosedFormCase {
    pub const ALL: [ClosedFormCase; 3] = [
        ClosedFormCase::P1i,
        ClosedFormCase::P1ii,
        ClosedFormCase::P3,
    ];

    /// Factor `t` with tame order `t·c` (times `x` for `P3`).
    pub fn tame_factor(self) -> u64 {
        match self {
            ClosedFormCase::P1i => 4,
            ClosedFormCase::P1ii => 12,
            ClosedFormCase::P3 => 3,
        }
    }

    /// `c` must divide `(p - 1) / bound_divisor`.
    pub fn bound_divisor(self) -> u64 {
        match self {
            ClosedFormCase::P1i | ClosedFormCase::P1ii => 4,
            ClosedFormCase::P3 => 3,
        }
    }

    /// Admissible `c`, in increasing order; empty when the bound is not
    /// an integer.
    pub fn valid_c(self, p: u64) -> Vec<u64> {
        let b = self.bound_divisor();
        if p < 5 || !(p - 1).is_multiple_of(b) {
            return Vec::new();
        }
        crate::arith::divisors((p - 1) / b)
    }

    /// Admissible `x`.
    pub fn valid_x(self) -> &'static [u64] {
        match self {
            ClosedFormCase::P3 => &[1, 2],
            _ => &[1],
        }
    }
}

impl std::str::FromStr for ClosedFormCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1_i" | "p1i" => Ok(ClosedFormCase::P1i),
            "p1_ii" | "p1ii" => Ok(ClosedFormCase::P1ii),
            "p3" => Ok(ClosedFormCase::P3),
            _ => Err(Error::params("case", format!("unknown case `{s}`"))),
        }
    }
}

fn check_closed_form(case: ClosedFormCase, p: u64, c: u64, x: u64) -> Result<()> {
    if !is_prime(p) || p < 5 {
        return Err(Error::params(
            "closed_form_exponent",
            format!("p = {p} must be a prime ≥ 5"),
        ));
    }
    if c == 0 || !case.valid_c(p).contains(&c) {
        return Err(Error::params(
            "closed_form_exponent",
            format!("c = {c} does not divide (p-1)/{}", case.bound_divisor()),
        ));
    }
    if !case.valid_x().contains(&x) {
        return Err(Error::params(
            "closed_form_exponent",
            format!("x = {x} not allowed"),
        ));
    }
    Ok(())
}

/// `3 + 3n(p-1)/(t·c·x)` with `t` the case's tame factor (`x = 1` outside
/// `P3`).
pub fn closed_form_exponent(
    case: ClosedFormCase,
    p: u64,
    n: u32,
    c: u64,
    x: u64,
) -> Result<Rational64> {
    check_closed_form(case, p, c, x)?;
    let denom = case.tame_factor() * c * x;
    Ok(Rational64::from_integer(3) + Rational64::new(3 * n as i64 * (p as i64 - 1), denom as i64))
}

/// Orders for the case: `g_0 = t·c·x·p^n`.
pub fn closed_form_filtration(
    case: ClosedFormCase,
    p: u64,
    n: u32,
    c: u64,
    x: u64,
) -> Result<FiltrationOrders> {
    check_closed_form(case, p, c, x)?;
    cyclotomic_orders(p, n, case.tame_factor() * c * x)
}

/// Exponents of all irreducibles of degree `degree` against `[tame, 1]`,
/// sorted.
pub fn conductor_spectrum(g: &Group, tame: &Subgroup, degree: i64) -> Result<Vec<ArtinExponent>> {
    let filt = RamificationFiltration::tame(g, tame)?;
    let table = character_table(g)?;
    let mut out = table
        .of_degree(degree)
        .into_iter()
        .map(|chi| artin_exponent(chi, &filt))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|e| e.value);
    Ok(out)
}

/// Subgroup generated by the first element of order `k`.
pub fn cyclic_subgroup_of_order(g: &Group, k: usize) -> Result<Subgroup> {
    if k == 1 {
        return Ok(Subgroup::trivial(g));
    }
    (0..g.order())
        .find(|&x| g.element_order(x) == k)
        .map(|x| Subgroup::generated_by(g, &[x]))
        .ok_or_else(|| Error::NotSubgroup(format!("no element of order {k}")))
}
