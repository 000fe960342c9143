//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A number is stored as rational coefficients on the power basis
//! `1, ζ_n, …, ζ_n^(φ(n)-1)`, reduced modulo the `n`-th cyclotomic
//! polynomial. Operands from different fields are lifted to the field of the
//! least common multiple before combining.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Precomputed data for `Q(ζ_n)`.
struct Field {
    phi: usize,
    /// `powers[k]` is `ζ_n^k` written on the power basis.
    powers: Vec<Vec<i64>>,
}

fn field(n: u32) -> Arc<Field> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("cache poisoned").get(&n) {
        return f.clone();
    }
    let f = Arc::new(build_field(n));
    cache.lock().expect("cache poisoned").insert(n, f.clone());
    f
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Φ_d with d a proper divisor of n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division is exact");
    q
}

fn build_field(n: u32) -> Field {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow coefficient with Φ_n
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        if top != 0 {
            for i in 0..phi {
                next[i] -= top * phi_poly[i];
            }
        }
        cur = next;
    }
    if phi == 0 {
        unreachable!("Φ_n has positive degree");
    }
    Field { phi, powers }
}

/// An element of `Q(ζ_n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<Rational64>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic::from_rational(Rational64::zero())
    }

    pub fn one() -> Self {
        Cyclotomic::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Cyclotomic::from_rational(Rational64::from_integer(k))
    }

    pub fn from_rational(q: Rational64) -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![q],
        }
    }

    /// `ζ_n^k`
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            n,
            coeffs: f.powers[e]
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        }
    }

    /// `Σ c_k ζ_n^k` from integer multiplicities indexed by the exponent.
    pub fn from_exponent_counts(n: u32, counts: &[i64]) -> Self {
        let f = field(n);
        let mut acc = vec![0i64; f.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &p) in acc.iter_mut().zip(&f.powers[k % n as usize]) {
                    *a += c * p;
                }
            }
        }
        Cyclotomic {
            n,
            coeffs: acc.into_iter().map(Rational64::from_integer).collect(),
        }
    }

    /// The field `Q(ζ_n)` this value is written in.
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> &[Rational64] {
        &self.coeffs
    }

    /// The same number written in `Q(ζ_m)`, where `n` divides `m`.
    pub fn lift(&self, m: u32) -> Self {
        assert_eq!(m % self.n, 0, "lift target must be a multiple");
        if m == self.n {
            return self.clone();
        }
        let f = field(m);
        let step = (m / self.n) as usize;
        let mut acc = vec![Rational64::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&f.powers[(i * step) % m as usize]) {
                if p != 0 {
                    *a += *c * p;
                }
            }
        }
        Cyclotomic { n: m, coeffs: acc }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.n.lcm(&other.n);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { n: a.n, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: Rational64) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let n = a.n as usize;
        let f = field(a.n);
        let mut by_exp = vec![Rational64::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    by_exp[(i + j) % n] += x * y;
                }
            }
        }
        let mut coeffs = vec![Rational64::zero(); f.phi];
        for (k, c) in by_exp.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &p) in coeffs.iter_mut().zip(&f.powers[k]) {
                if p != 0 {
                    *a += *c * p;
                }
            }
        }
        Cyclotomic { n: a.n, coeffs }
    }

    /// Image under `ζ -> ζ^k`, with `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(k.gcd(&n), 1, "Galois exponent must be a unit");
        let f = field(self.n);
        let mut coeffs = vec![Rational64::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * k).rem_euclid(n) as usize;
            for (a, &p) in coeffs.iter_mut().zip(&f.powers[e]) {
                if p != 0 {
                    *a += *c * p;
                }
            }
        }
        Cyclotomic { n: self.n, coeffs }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the number is rational.
    pub fn to_rational(&self) -> Option<Rational64> {
        let f = field(self.n);
        // a rational number c is written as c times the basis form of 1
        let one = &f.powers[0];
        debug_assert_eq!(one[0], 1);
        let c = self.coeffs[0];
        let ok = self
            .coeffs
            .iter()
            .zip(one)
            .all(|(x, &o)| *x == c * Rational64::from_integer(o));
        ok.then_some(c)
    }

    pub fn to_integer(&self) -> Option<i64> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Numerical value as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Total order used for deterministic sorting: compare coefficient
    /// vectors in the common field.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.common(other);
        a.coeffs.cmp(&b.coeffs)
    }

    /// Serializable form: conductor and coefficient strings.
    pub fn to_repr(&self) -> CyclotomicRepr {
        CyclotomicRepr {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_repr(r: &CyclotomicRepr) -> Result<Self> {
        if r.n == 0 {
            return Err(Error::Precondition("conductor must be positive".into()));
        }
        let f = field(r.n);
        if r.coeffs.len() != f.phi {
            return Err(Error::Precondition(format!(
                "Q(ζ_{}) needs {} coefficients, got {}",
                r.n,
                f.phi,
                r.coeffs.len()
            )));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<Rational64>()
                    .map_err(|_| Error::Precondition(format!("bad rational `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic { n: r.n, coeffs })
    }
}

/// Plain-data form of a [`Cyclotomic`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicRepr {
    pub n: u32,
    pub coeffs: Vec<String>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::from_int(k)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, i),
            };
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "{z}")?,
                _ => write!(f, "{abs}*{z}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=24u32 {
            let s = (0..n as i64).fold(Cyclotomic::zero(), |acc, k| {
                acc.add(&Cyclotomic::zeta(n, k))
            });
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn zeta_power_and_conjugation() {
        let z = Cyclotomic::zeta(12, 1);
        let mut p = Cyclotomic::one();
        for _ in 0..12 {
            p = p.mul(&z);
        }
        assert_eq!(p, Cyclotomic::one());
        assert_eq!(z.mul(&z.conj()), Cyclotomic::one());
        // ζ_3 + ζ_3^2 = -1
        let w = Cyclotomic::zeta(3, 1);
        assert_eq!(w.add(&w.conj()), Cyclotomic::from_int(-1));
        assert!(w.add(&w.conj()).is_real());
        assert!(!w.is_real());
    }

    #[test]
    fn lifting_across_fields() {
        // ζ_3 = ζ_12^4 and ζ_4 = ζ_12^3
        assert_eq!(Cyclotomic::zeta(3, 1), Cyclotomic::zeta(12, 4));
        assert_eq!(
            Cyclotomic::zeta(4, 1).mul(&Cyclotomic::zeta(3, 1)),
            Cyclotomic::zeta(12, 7)
        );
        assert_eq!(Cyclotomic::from_int(5).lift(9).to_integer(), Some(5));
    }

    #[test]
    fn numeric_value_matches() {
        let (re, im) = Cyclotomic::zeta(3, 1).to_complex();
        assert!((re + 0.5).abs() < 1e-12);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn repr_round_trip() {
        let x = Cyclotomic::zeta(9, 2)
            .scale(Rational64::new(-3, 2))
            .add(&Cyclotomic::from_int(1));
        let r = x.to_repr();
        assert_eq!(Cyclotomic::from_repr(&r).unwrap(), x);
        assert_eq!(format!("{}", Cyclotomic::from_int(-2)), "-2");
    }
}
