//! Dixon–Schneider character table computation.
//!
//! The central characters `ω_χ(C_l) = |C_l| χ(g_l) / χ(1)` are the common
//! eigenvectors of the class-multiplication matrices. These are found over a
//! prime field `F_q` with `q ≡ 1 (mod exp G)`, so every eigenvalue lies in
//! `F_q`; the character values are then lifted to exact cyclotomic numbers
//! through eigenvalue multiplicities on each cyclic subgroup.

#![allow(clippy::needless_range_loop)]

use crate::arith::is_prime;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::Group;

#[inline]
fn mulm(a: u64, b: u64, q: u64) -> u64 {
    a * b % q
}

fn powm(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, q);
        }
        a = mulm(a, a, q);
        e >>= 1;
    }
    r
}

fn invm(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q), "inverse of zero");
    powm(a, q - 2, q)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `q ≡ 1 (mod e)` with `q > 2 sqrt(n)`.
pub(crate) fn choose_prime(e: u64, n: u64) -> u64 {
    let floor = 2.0 * (n as f64).sqrt();
    let mut q = e + 1;
    while !(is_prime(q) && (q as f64) > floor) {
        q += e;
    }
    q
}

fn primitive_root(q: u64) -> u64 {
    let ps = prime_divisors(q - 1);
    (2..q)
        .find(|&g| ps.iter().all(|&p| powm(g, (q - 1) / p, q) != 1))
        .unwrap_or(1)
}

/// Reduced row echelon form; returns the non-zero rows and their pivots.
fn rref(mut rows: Vec<Vec<u64>>, q: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = invm(rows[r][c], q);
        for x in rows[r].iter_mut() {
            *x = mulm(*x, inv, q);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + q - mulm(f, y, q)) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : M x = 0}` for a square matrix `M`.
fn nullspace(m: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let (rows, pivots) = rref(m.to_vec(), q);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = (q - row[free]) % q;
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial (constant term first) through reduction to
/// Hessenberg form.
fn char_poly(mat: &[Vec<u64>], q: u64) -> Vec<u64> {
    let n = mat.len();
    let mut h: Vec<Vec<u64>> = mat.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = invm(h[m][m - 1], q);
        for i in (m + 1)..n {
            let u = mulm(h[i][m - 1], inv, q);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = mulm(u, h[m][j], q);
                h[i][j] = (h[i][j] + q - t) % q;
            }
            for row in h.iter_mut() {
                let t = mulm(u, row[i], q);
                row[m] = (row[m] + t) % q;
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - Σ_i h_{k-i,k} Π_{j=k-i+1..k} h_{j,j-1} p_{k-i-1}
    let hh = |a: usize, b: usize| h[a - 1][b - 1];
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut p = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            p[d + 1] = (p[d + 1] + c) % q;
            p[d] = (p[d] + q - mulm(c, hh(k, k), q)) % q;
        }
        let mut t = 1u64;
        for i in 1..k {
            t = mulm(t, hh(k - i + 1, k - i), q);
            let coef = mulm(t, hh(k - i, k), q);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[k - i - 1].iter().enumerate() {
                p[d] = (p[d] + q - mulm(coef, c, q)) % q;
            }
        }
        polys.push(p);
    }
    polys.pop().expect("n + 1 polynomials")
}

fn roots(p: &[u64], q: u64) -> Vec<u64> {
    (0..q)
        .filter(|&x| {
            p.iter()
                .rev()
                .fold(0u64, |acc, &c| (mulm(acc, x, q) + c) % q)
                == 0
        })
        .collect()
}

/// Class-multiplication matrix for class `j`: entry `(k, l)` counts
/// `x` in `C_j` with `x^-1 z_l` in `C_k`, for a fixed `z_l` in `C_l`.
fn class_matrix(g: &Group, j: usize) -> Vec<Vec<u64>> {
    let cc = g.classes();
    let r = cc.len();
    let mut m = vec![vec![0u64; r]; r];
    for l in 0..r {
        let z = cc.representative(l);
        for &x in cc.class(j) {
            let k = cc.class_of(g.mul(g.inv(x), z));
            m[k][l] += 1;
        }
    }
    m
}

/// RREF basis of a subspace together with its pivot columns.
type Eigenspace = (Vec<Vec<u64>>, Vec<usize>);

/// Splits the invariant subspace spanned by `basis` (RREF with `pivots`)
/// into eigenspaces of `a`.
fn split(a: &[Vec<u64>], basis: &[Vec<u64>], pivots: &[usize], q: u64) -> Result<Vec<Eigenspace>> {
    let m = basis.len();
    let r = a.len();
    // restricted[i][k] = (A w_k)[pivot_i]
    let mut restricted = vec![vec![0u64; m]; m];
    for (k, w) in basis.iter().enumerate() {
        for (i, &p) in pivots.iter().enumerate() {
            let mut s = 0u64;
            for l in 0..r {
                if a[p][l] != 0 && w[l] != 0 {
                    s = (s + mulm(a[p][l] % q, w[l], q)) % q;
                }
            }
            restricted[i][k] = s;
        }
    }
    let poly = char_poly(&restricted, q);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots(&poly, q) {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut row = row.clone();
                row[i] = (row[i] + q - lambda) % q;
                row
            })
            .collect();
        let coords = nullspace(&shifted, q);
        total += coords.len();
        let vecs: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; r];
                for (ck, w) in c.iter().zip(basis) {
                    if *ck != 0 {
                        for (x, &y) in v.iter_mut().zip(w) {
                            *x = (*x + mulm(*ck, y, q)) % q;
                        }
                    }
                }
                v
            })
            .collect();
        out.push(rref(vecs, q));
    }
    if total != m {
        return Err(Error::Inconsistent(format!(
            "class matrix is not diagonalizable on a {m}-dimensional block (found {total})"
        )));
    }
    Ok(out)
}

/// Exponent of the group, the characters as rows of values in `Q(ζ_E)`.
pub(crate) fn irreducible_characters(g: &Group) -> Result<(u32, Vec<Vec<Cyclotomic>>)> {
    let n = g.order() as u64;
    let cc = g.classes();
    let r = cc.len();
    let e = g.exponent() as u64;
    let q = choose_prime(e, n);

    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![rref(identity, q)];
    // larger classes tend to separate more characters at once
    let mut order: Vec<usize> = (1..r).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(cc.size(j)), j));
    for j in order {
        if spaces.iter().all(|(b, _)| b.len() == 1) {
            break;
        }
        let a = class_matrix(g, j);
        let mut next = Vec::new();
        for (basis, pivots) in spaces {
            if basis.len() == 1 {
                next.push((basis, pivots));
            } else {
                next.extend(split(&a, &basis, &pivots, q)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|(b, _)| b.len() != 1) {
        return Err(Error::Inconsistent(
            "class matrices failed to separate the characters".into(),
        ));
    }

    let sizes: Vec<u64> = cc.sizes().into_iter().map(|s| s as u64).collect();
    let inv_class: Vec<usize> = (0..r).map(|l| cc.inverse(l)).collect();
    let z = powm(primitive_root(q), (q - 1) / e, q);
    let max_degree = (n as f64).sqrt().floor() as u64;

    // power maps: class of g_l^t for t in 0..o(g_l)
    let power_classes: Vec<Vec<usize>> = (0..r)
        .map(|l| {
            let x = cc.representative(l);
            let o = g.element_order(x);
            let mut out = Vec::with_capacity(o);
            let mut y = 0;
            for _ in 0..o {
                out.push(cc.class_of(y));
                y = g.mul(y, x);
            }
            out
        })
        .collect();

    let mut rows = Vec::with_capacity(r);
    for (basis, _) in spaces {
        let mut v = basis.into_iter().next().expect("one vector");
        if v[0] == 0 {
            return Err(Error::Inconsistent(
                "central character vanishes at 1".into(),
            ));
        }
        let s0 = invm(v[0], q);
        for x in v.iter_mut() {
            *x = mulm(*x, s0, q);
        }
        let mut s = 0u64;
        for l in 0..r {
            let t = mulm(mulm(v[l], v[inv_class[l]], q), invm(sizes[l] % q, q), q);
            s = (s + t) % q;
        }
        let d2 = mulm(n % q, invm(s, q), q);
        let d = (1..=max_degree)
            .find(|&d| d * d % q == d2)
            .ok_or_else(|| Error::Inconsistent("no integer degree fits".into()))?;
        let values: Vec<u64> = (0..r)
            .map(|l| mulm(mulm(d, v[l], q), invm(sizes[l] % q, q), q))
            .collect();

        let mut row = Vec::with_capacity(r);
        for l in 0..r {
            let pcs = &power_classes[l];
            let o = pcs.len() as u64;
            let step = e / o;
            let zo = powm(z, step, q);
            let zo_inv = invm(zo, q);
            let inv_o = invm(o % q, q);
            let mut counts = vec![0i64; e as usize];
            for i in 0..o {
                let w = powm(zo_inv, i, q);
                let mut acc = 0u64;
                let mut wt = 1u64;
                for &c in pcs {
                    acc = (acc + mulm(values[c], wt, q)) % q;
                    wt = mulm(wt, w, q);
                }
                let m = mulm(acc, inv_o, q);
                if m > d {
                    return Err(Error::Inconsistent(format!(
                        "eigenvalue multiplicity {m} exceeds degree {d}"
                    )));
                }
                counts[(i * step) as usize] += m as i64;
            }
            row.push(Cyclotomic::from_exponent_counts(e as u32, &counts));
        }
        rows.push(row);
    }
    Ok((e as u32, rows))
}
