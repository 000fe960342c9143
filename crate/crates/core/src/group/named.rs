use super::{semidirect_product, Action, Group, Subgroup};
use crate::error::{Error, Result};

/// Names accepted by [`build_named_group`] (parameterised ones listed with
/// their default parameters in the test corpus).
pub const NAMED_GROUPS: &[&str] = &[
    "Cn", "C3xC3", "Q8", "SL2F3", "Heis3", "P1", "P2", "P3", "J", "B", "C9sC3", "C7sC3", "C3sC2",
];

/// A 2x2 matrix over F3, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2(pub [u8; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1, 0, 0, 1]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        let r = |x: i64| x.rem_euclid(3) as u8;
        Mat2([r(a), r(b), r(c), r(d)])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat2([
            (a * e + b * g) % 3,
            (a * f + b * h) % 3,
            (c * e + d * g) % 3,
            (c * f + d * h) % 3,
        ])
    }

    pub fn det(&self) -> u8 {
        let [a, b, c, d] = self.0;
        (a * d + 2 * b * c) % 3
    }

    /// Matrix times the column vector `(x, y)`.
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        let [a, b, c, d] = self.0;
        let (x, y) = (x as u8, y as u8);
        (
            ((a * x + b * y) % 3) as usize,
            ((c * x + d * y) % 3) as usize,
        )
    }

    pub fn order(&self) -> usize {
        let mut m = *self;
        let mut k = 1;
        while m != Mat2::IDENTITY {
            m = m.mul(self);
            k += 1;
        }
        k
    }
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::params("Cn", "n must be positive"));
    }
    if n > super::MAX_ORDER {
        return Err(Error::params(
            "Cn",
            format!("n = {n} exceeds {}", super::MAX_ORDER),
        ));
    }
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    Ok(Group::from_table_trusted(table, Some(format!("C{n}"))))
}

/// `C3 x C3` with `(a, b)` at index `a + 3b`.
pub fn elementary_c3xc3() -> Group {
    let c3 = cyclic(3).expect("valid");
    Group::direct_product(&c3, &c3).renamed("C3xC3")
}

pub fn quaternion() -> Group {
    // unit quaternions as integer 4-tuples (1, i, j, k coefficients)
    type Q = [i8; 4];
    let mul = |p: &Q, q: &Q| -> Q {
        let [a1, b1, c1, d1] = *p;
        let [a2, b2, c2, d2] = *q;
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    };
    let (g, _) = Group::from_closure([1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], mul, None)
        .expect("Q8 is finite");
    g.renamed("Q8")
}

/// `SL2(F3)` as matrices, generated by an upper unitriangular matrix and the
/// rotation `[[0, -1], [1, 0]]`.
pub fn sl2_f3_matrices() -> (Group, Vec<Mat2>) {
    let gens = [Mat2::new(1, 1, 0, 1), Mat2::new(0, -1, 1, 0)];
    let (g, mats) = Group::from_closure(Mat2::IDENTITY, &gens, |a, b| a.mul(b), None)
        .expect("SL2(F3) is finite");
    debug_assert!(mats.iter().all(|m| m.det() == 1));
    (g.renamed("SL2F3"), mats)
}

pub fn sl2_f3() -> Group {
    sl2_f3_matrices().0
}

/// Index of `(x, y)` in [`elementary_c3xc3`].
fn v_index(x: usize, y: usize) -> usize {
    x + 3 * y
}

/// Element map on `C3 x C3` induced by a matrix.
fn matrix_map(m: &Mat2) -> Vec<usize> {
    (0..9)
        .map(|i| {
            let (x, y) = m.apply(i % 3, i / 3);
            v_index(x, y)
        })
        .collect()
}

/// The Heisenberg group of order 27 and exponent 3: triples `(v, z)` with
/// `(v, z)(w, z') = (v + w, z + z' + 2 det(v, w))`, stored at
/// `v1 + 3 v2 + 9 z`.
pub fn heisenberg3() -> Group {
    let n = 27;
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let (v1, v2, z) = (a % 3, (a / 3) % 3, a / 9);
        for b in 0..n {
            let (w1, w2, z2) = (b % 3, (b / 3) % 3, b / 9);
            let form = (v1 * w2 + 2 * v2 * w1) % 3;
            let zz = (z + z2 + 2 * form) % 3;
            table[a * n + b] = ((v1 + w1) % 3 + 3 * ((v2 + w2) % 3) + 9 * zz) as u32;
        }
    }
    Group::from_table_trusted(table, Some("Heis3".into()))
}

/// `(C3 x C3) ⋊ C4` where the generator of `C4` acts by `m`, which must
/// have order 4.
pub fn p1_with_action(m: Mat2) -> Result<Group> {
    if m.det() == 0 {
        return Err(Error::NotAutomorphism("singular matrix".into()));
    }
    if m.order() != 4 {
        return Err(Error::NotAutomorphism(format!(
            "action has order {}, expected 4",
            m.order()
        )));
    }
    let n = elementary_c3xc3();
    let c4 = cyclic(4)?;
    let action = Action::from_generators(&n, &c4, &[1], &[matrix_map(&m)])?;
    Ok(semidirect_product(&n, &c4, &action)?.renamed("P1"))
}

/// `(C3 x C3) ⋊ C4` with the rotation `(x, y) -> (-y, x)`.
pub fn p1() -> Group {
    p1_with_action(Mat2::new(0, -1, 1, 0)).expect("rotation has order 4")
}

/// `(C3 x C3) ⋊ SL2(F3)` with the natural action.
pub fn p3() -> Group {
    let n = elementary_c3xc3();
    let (sl, mats) = sl2_f3_matrices();
    let gens = sl.generators();
    let auts: Vec<Vec<usize>> = gens.iter().map(|&s| matrix_map(&mats[s])).collect();
    let action = Action::from_generators(&n, &sl, &gens, &auts).expect("natural action");
    semidirect_product(&n, &sl, &action)
        .expect("order 216")
        .renamed("P3")
}

/// The subgroup of `P3` generated by `C3 x C3` and a Sylow 2-subgroup,
/// i.e. `(C3 x C3) ⋊ Q8`.
pub fn p2() -> Group {
    let g = p3();
    let s2 = super::sylow_subgroup(&g, 2);
    let mut gens: Vec<usize> = (1..9).collect();
    gens.extend(s2.generators());
    let sub = Subgroup::generated_by(&g, &gens);
    debug_assert_eq!(sub.order(), 72);
    sub.to_group(Some("P2".into())).0
}

/// `Heis3 ⋊ C4` where the generator rotates `v` and fixes `z`.
pub fn j_group() -> Group {
    let h = heisenberg3();
    let c4 = cyclic(4).expect("valid");
    let r = Mat2::new(0, -1, 1, 0);
    let map: Vec<usize> = (0..27)
        .map(|i| {
            let (x, y) = r.apply(i % 3, (i / 3) % 3);
            x + 3 * y + 9 * (i / 9)
        })
        .collect();
    let action = Action::from_generators(&h, &c4, &[1], &[map]).expect("rotation preserves det");
    semidirect_product(&h, &c4, &action)
        .expect("order 108")
        .renamed("J")
}

/// `(C_{3^{a+1}} x C3) ⋊ C3` with the generator acting by
/// `(x, y) -> (x + 3^a y, y)`.
pub fn b_group(a: u32) -> Result<Group> {
    let m = 3usize.pow(a + 1);
    if 9 * m > super::MAX_ORDER {
        return Err(Error::params(
            "B",
            format!("a = {a} gives order {} > 1000", 9 * m),
        ));
    }
    let big = cyclic(m)?;
    let c3 = cyclic(3)?;
    let n = Group::direct_product(&big, &c3);
    let shift = 3usize.pow(a);
    let map: Vec<usize> = (0..3 * m)
        .map(|i| {
            let (x, y) = (i % m, i / m);
            (x + shift * y) % m + m * y
        })
        .collect();
    let action = Action::from_generators(&n, &c3, &[1], &[map])?;
    if action.image_order() != 3 {
        return Err(Error::NotAutomorphism("action is not of order 3".into()));
    }
    Ok(semidirect_product(&n, &c3, &action)?.renamed(format!("B{a}")))
}

/// `C_n ⋊ C_k` where the generator of `C_k` acts by `x -> r x`.
fn metacyclic(n: usize, k: usize, r: usize, name: &str) -> Result<Group> {
    let cn = cyclic(n)?;
    let ck = cyclic(k)?;
    let map: Vec<usize> = (0..n).map(|x| x * r % n).collect();
    let action = Action::from_generators(&cn, &ck, &[1], &[map])?;
    Ok(semidirect_product(&cn, &ck, &action)?.renamed(name))
}

pub fn c9_semidirect_c3() -> Group {
    metacyclic(9, 3, 4, "C9sC3").expect("4 has order 3 mod 9")
}

pub fn frobenius21() -> Group {
    metacyclic(7, 3, 2, "C7sC3").expect("2 has order 3 mod 7")
}

fn no_params(name: &str, p: &[i64]) -> Result<()> {
    if p.is_empty() {
        Ok(())
    } else {
        Err(Error::params(name, "takes no parameters"))
    }
}

/// Builds one of the named groups.
///
/// `Cn` takes `[n]` and `B` takes `[a]`; the shorthands `C12` and `B1` are
/// also accepted.
pub fn build_named_group(name: &str, p: &[i64]) -> Result<Group> {
    let one_param = |what: &str| -> Result<i64> {
        match p {
            [x] => Ok(*x),
            _ => Err(Error::params(what, "expects exactly one parameter")),
        }
    };
    match name {
        "Cn" => {
            let n = one_param("Cn")?;
            if n < 1 {
                return Err(Error::params("Cn", "n must be positive"));
            }
            cyclic(n as usize)
        }
        "C3xC3" => no_params(name, p).map(|_| elementary_c3xc3()),
        "Q8" => no_params(name, p).map(|_| quaternion()),
        "SL2F3" => no_params(name, p).map(|_| sl2_f3()),
        "Heis3" => no_params(name, p).map(|_| heisenberg3()),
        "P1" => no_params(name, p).map(|_| p1()),
        "P2" => no_params(name, p).map(|_| p2()),
        "P3" => no_params(name, p).map(|_| p3()),
        "J" => no_params(name, p).map(|_| j_group()),
        "C9sC3" => no_params(name, p).map(|_| c9_semidirect_c3()),
        "C7sC3" => no_params(name, p).map(|_| frobenius21()),
        "C3sC2" => no_params(name, p).and_then(|_| metacyclic(3, 2, 2, "C3sC2")),
        "B" => {
            let a = one_param("B")?;
            if a < 0 {
                return Err(Error::params("B", "a must be non-negative"));
            }
            b_group(a as u32)
        }
        _ => {
            let shorthand = |prefix: &str| {
                name.strip_prefix(prefix)
                    .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|s| s.parse::<i64>().ok())
            };
            if let Some(n) = shorthand("C") {
                no_params(name, p)?;
                return build_named_group("Cn", &[n]);
            }
            if let Some(a) = shorthand("B") {
                no_params(name, p)?;
                return build_named_group("B", &[a]);
            }
            Err(Error::UnknownGroup(name.to_string()))
        }
    }
}

/// Every named group with concrete parameters: `C1`, `C4`, `C12`, `B0` to
/// `B2` and the unparameterised names.
pub fn named_group_corpus() -> Vec<Group> {
    let mut out = Vec::new();
    for (name, params) in [
        ("Cn", vec![1]),
        ("Cn", vec![4]),
        ("Cn", vec![12]),
        ("B", vec![0]),
        ("B", vec![1]),
        ("B", vec![2]),
    ] {
        out.push(build_named_group(name, &params).expect("valid parameters"));
    }
    for name in NAMED_GROUPS.iter().filter(|n| !matches!(**n, "Cn" | "B")) {
        out.push(build_named_group(name, &[]).expect("named group"));
    }
    out
}
