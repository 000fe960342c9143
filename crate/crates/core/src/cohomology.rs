//! Second cohomology `H^2(G, F_3)` with trivial action, central extensions
//! of degree three, and the 3-rank of the Schur multiplier.
//!
//! A normalized 2-cocycle is determined by its columns at a generating set
//! `s_1..s_k`: the identity `f(x, w s) = f(x, w) + f(xw, s) - f(w, s)`
//! recovers `f(x, y)` along any path from `1` to `y` in the Cayley graph.
//! The unknowns are therefore `U(x, j) = f(x, s_j)` for `x != 1`, and every
//! Cayley-graph edge outside a fixed spanning tree contributes `|G| - 1`
//! linear constraints. The solution space is exactly `Z^2`. This keeps the
//! system at `(|G| - 1) k` unknowns instead of `(|G| - 1)^2`; memory use is
//! about `(|G| + (|G| - 1) k)` packed rows of that width, well under a
//! megabyte for `|G| = 216`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::character::character_table;
use crate::error::{Error, Result};
use crate::gf3::{Echelon, F3Vec};
use crate::group::{
    abelian_invariants, count_homomorphisms, cyclic, derived_subgroup, find_isomorphism,
    is_isomorphic, search_isomorphism, subgroups_of_orders, sylow_subgroup, Fingerprint, Group,
    IsomorphismWitness, Subgroup,
};

/// Largest group order accepted by [`h2_basis`].
pub const H2_ORDER_LIMIT: usize = 648;
/// Largest order for which cocycle identities are checked at every triple;
/// above it a seeded random sample is used.
pub const EXHAUSTIVE_CHECK_LIMIT: usize = 216;
/// Number of random triples checked above [`EXHAUSTIVE_CHECK_LIMIT`].
pub const SAMPLED_TRIPLES: usize = 1_000_000;
/// Default memory cap for the linear algebra, in bytes.
pub const DEFAULT_BUDGET_BYTES: usize = 2 << 30;

/// SHA-256 of the multiplication table (entries as little-endian `u32`).
pub fn table_hash(g: &Group) -> String {
    let mut h = Sha256::new();
    for &v in g.table() {
        h.update(v.to_le_bytes());
    }
    hex::encode(h.finalize())
}

/// A normalized 2-cocycle `G x G -> F_3`.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    group: Group,
    values: Vec<u8>,
}

impl PartialEq for Cocycle2 {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_table(&other.group) && self.values == other.values
    }
}

impl Cocycle2 {
    pub fn zero(g: &Group) -> Cocycle2 {
        Cocycle2 {
            group: g.clone(),
            values: vec![0; g.order() * g.order()],
        }
    }

    /// Validates normalization and the cocycle identity.
    pub fn new(g: &Group, values: Vec<u8>) -> Result<Cocycle2> {
        let n = g.order();
        if values.len() != n * n {
            return Err(Error::Precondition(format!(
                "expected {} values, got {}",
                n * n,
                values.len()
            )));
        }
        if values.iter().any(|&v| v > 2) {
            return Err(Error::Precondition("values must lie in 0..3".into()));
        }
        if (0..n).any(|x| values[x] != 0 || values[x * n] != 0) {
            return Err(Error::Precondition("cocycle is not normalized".into()));
        }
        let f = Cocycle2 {
            group: g.clone(),
            values,
        };
        f.check_identity()?;
        Ok(f)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> u8 {
        self.values[x * self.group.order() + y]
    }

    #[inline]
    fn defect(&self, x: usize, y: usize, z: usize) -> bool {
        let g = &self.group;
        let lhs = self.value(x, y) + self.value(g.mul(x, y), z);
        let rhs = self.value(y, z) + self.value(x, g.mul(y, z));
        lhs % 3 != rhs % 3
    }

    /// Checks `f(x,y) + f(xy,z) = f(y,z) + f(x,yz)` at every triple.
    pub fn check_identity_exhaustive(&self) -> Result<()> {
        let n = self.group.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.defect(x, y, z) {
                        return Err(Error::CocycleIdentity { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks the identity at `samples` random triples from a fixed seed.
    pub fn check_identity_sampled(&self, samples: usize, seed: u64) -> Result<()> {
        let n = self.group.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (x, y, z) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            if self.defect(x, y, z) {
                return Err(Error::CocycleIdentity { x, y, z });
            }
        }
        Ok(())
    }

    /// Exhaustive up to order 216, sampled above.
    pub fn check_identity(&self) -> Result<()> {
        if self.group.order() <= EXHAUSTIVE_CHECK_LIMIT {
            self.check_identity_exhaustive()
        } else {
            self.check_identity_sampled(SAMPLED_TRIPLES, 0x5eed)
        }
    }

    pub fn add(&self, other: &Cocycle2) -> Result<Cocycle2> {
        if !self.group.same_table(&other.group) {
            return Err(Error::Precondition("cocycles on different groups".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a + b) % 3)
            .collect();
        Ok(Cocycle2 {
            group: self.group.clone(),
            values,
        })
    }

    pub fn scale(&self, c: u8) -> Cocycle2 {
        Cocycle2 {
            group: self.group.clone(),
            values: self.values.iter().map(|&v| v * (c % 3) % 3).collect(),
        }
    }

    /// `δh(x, y) = h(x) + h(y) - h(xy)` for a normalized cochain `h`
    /// (`h[0]` must be `0`).
    pub fn coboundary(g: &Group, h: &[u8]) -> Result<Cocycle2> {
        let n = g.order();
        if h.len() != n || !h[0].is_multiple_of(3) {
            return Err(Error::Precondition("cochain must be normalized".into()));
        }
        let mut values = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                values[x * n + y] = ((h[x] + h[y]) % 3 + 3 - h[g.mul(x, y)] % 3) % 3;
            }
        }
        Ok(Cocycle2 {
            group: g.clone(),
            values,
        })
    }

    /// Text form: a header naming the group and hashing its table, then the
    /// flat row-major value list.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cocycle2");
        let _ = writeln!(out, "group: {}", self.group.name().unwrap_or("-"));
        let _ = writeln!(out, "order: {}", self.group.order());
        let _ = writeln!(out, "sha256: {}", table_hash(&self.group));
        let vals: Vec<String> = self.values.iter().map(u8::to_string).collect();
        let _ = writeln!(out, "values: {}", vals.join(" "));
        out
    }

    /// Parses [`Cocycle2::serialize`] output, checking that the header
    /// matches `g`.
    pub fn parse(g: &Group, text: &str) -> Result<Cocycle2> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let mut next = |key: &str| -> Result<(usize, String)> {
            let (i, l) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("missing `{key}` line")))?;
            Ok((i + 1, l.trim().to_string()))
        };
        let (i, magic) = next("cocycle2")?;
        if magic != "cocycle2" {
            return Err(Error::parse(i, "expected `cocycle2`"));
        }
        let field = |(i, l): (usize, String), key: &str| -> Result<(usize, String)> {
            l.strip_prefix(key)
                .map(|r| (i, r.trim().to_string()))
                .ok_or_else(|| Error::parse(i, format!("expected `{key}`")))
        };
        let _name = field(next("group")?, "group:")?;
        let (i, order) = field(next("order")?, "order:")?;
        if order.parse::<usize>().ok() != Some(g.order()) {
            return Err(Error::parse(i, "order does not match the group"));
        }
        let (i, hash) = field(next("sha256")?, "sha256:")?;
        if hash != table_hash(g) {
            return Err(Error::parse(i, "table hash does not match the group"));
        }
        let (i, vals) = field(next("values")?, "values:")?;
        let values = vals
            .split_whitespace()
            .map(|t| {
                t.parse::<u8>()
                    .map_err(|_| Error::parse(i, format!("bad value `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Cocycle2::new(g, values)
    }
}

/// Fixed spanning tree of the Cayley graph used to parametrize cocycles.
struct Cayley {
    gens: Vec<usize>,
    /// BFS order (identity first) with each vertex's tree edge `(w, j)`.
    order: Vec<(usize, usize, usize)>,
    /// Edges `w -> w s_j = y` outside the tree.
    extra: Vec<(usize, usize, usize)>,
}

impl Cayley {
    fn new(g: &Group) -> Cayley {
        let gens = g.generators();
        let n = g.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = vec![(0, 0, 0)];
        let mut extra = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let w = order[head].0;
            head += 1;
            for (j, &s) in gens.iter().enumerate() {
                let y = g.mul(w, s);
                if seen[y] {
                    extra.push((w, j, y));
                } else {
                    seen[y] = true;
                    order.push((y, w, j));
                }
            }
        }
        Cayley { gens, order, extra }
    }

    fn unknowns(&self, n: usize) -> usize {
        (n - 1) * self.gens.len()
    }

    #[inline]
    fn idx(&self, x: usize, j: usize) -> Option<usize> {
        (x != 0).then(|| (x - 1) * self.gens.len() + j)
    }

    /// Cocycle table from the column values `u`.
    fn materialize(&self, g: &Group, u: &F3Vec) -> Vec<u8> {
        let n = g.order();
        let mut values = vec![0u8; n * n];
        let col = |a: usize, j: usize| self.idx(a, j).map_or(0, |i| u.get(i));
        for x in 1..n {
            let row = &mut values[x * n..(x + 1) * n];
            for &(y, w, j) in &self.order[1..] {
                let v = row[w] + col(g.mul(x, w), j) + 3 - col(w, j);
                row[y] = v % 3;
            }
        }
        values
    }
}

/// A basis of `H^2(G, F_3)` together with the dimensions around it.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    group: Group,
    pub z2_dim: usize,
    pub b2_dim: usize,
    pub h2_dim: usize,
    /// `dim Hom(G, C_3)`, counted directly.
    pub hom_dim: usize,
    pub representatives: Vec<Cocycle2>,
    gens: Vec<usize>,
    rep_columns: Vec<F3Vec>,
    b2: Echelon,
}

impl CohomologyBasis {
    pub fn group(&self) -> &Group {
        &self.group
    }

    fn columns(&self, f: &Cocycle2) -> F3Vec {
        let n = self.group.order();
        let k = self.gens.len();
        let mut u = F3Vec::zeros((n - 1) * k);
        for x in 1..n {
            for (j, &s) in self.gens.iter().enumerate() {
                u.set((x - 1) * k + j, f.value(x, s));
            }
        }
        u
    }

    /// Coordinates of the class of `f` in the representative basis.
    pub fn coordinates(&self, f: &Cocycle2) -> Result<Vec<u8>> {
        if !f.group.same_table(&self.group) {
            return Err(Error::Precondition("cocycle on a different group".into()));
        }
        let u = self.columns(f);
        for coords in coordinate_vectors(self.h2_dim) {
            let mut v = u.clone();
            for (c, r) in coords.iter().zip(&self.rep_columns) {
                v.add_scaled(r, 3 - c);
            }
            if self.b2.contains(&v) {
                return Ok(coords);
            }
        }
        Err(Error::Inconsistent(
            "cocycle class not found in the basis span".into(),
        ))
    }

    pub fn is_coboundary(&self, f: &Cocycle2) -> Result<bool> {
        Ok(self.coordinates(f)?.iter().all(|&c| c == 0))
    }

    /// `Σ c_i rep_i`
    pub fn combination(&self, coords: &[u8]) -> Result<Cocycle2> {
        if coords.len() != self.h2_dim {
            return Err(Error::Precondition("wrong number of coordinates".into()));
        }
        let mut f = Cocycle2::zero(&self.group);
        for (&c, r) in coords.iter().zip(&self.representatives) {
            if c % 3 != 0 {
                f = f.add(&r.scale(c))?;
            }
        }
        Ok(f)
    }
}

/// All vectors in `F_3^d`, in lexicographic order.
pub fn coordinate_vectors(d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..3u8).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn log3(mut n: u64) -> Result<usize> {
    let mut e = 0;
    while n > 1 {
        if !n.is_multiple_of(3) {
            return Err(Error::Inconsistent(format!("{n} is not a power of 3")));
        }
        n /= 3;
        e += 1;
    }
    Ok(e)
}

/// `dim Hom(G, C_3)` from a direct count of homomorphisms.
pub fn hom_dim_c3(g: &Group) -> Result<usize> {
    log3(count_homomorphisms(g, &cyclic(3)?))
}

/// Estimated peak memory of [`h2_basis`] in bytes.
pub fn h2_memory_estimate(g: &Group) -> usize {
    let n = g.order();
    let k = g.generators().len().max(1);
    let width = (n.saturating_sub(1) * k).max(1);
    let row_bytes = 16 * width.div_ceil(64) + 64;
    // forms for one first argument, plus constraint, Z^2 and B^2 rows
    (n + 3 * width) * row_bytes
}

pub fn h2_basis(g: &Group) -> Result<CohomologyBasis> {
    h2_basis_with_budget(g, DEFAULT_BUDGET_BYTES)
}

const MIB: f64 = (1u64 << 20) as f64;

/// Computes `Z^2`, `B^2` and a set of representatives for `H^2(G, F_3)`.
pub fn h2_basis_with_budget(g: &Group, budget_bytes: usize) -> Result<CohomologyBasis> {
    let n = g.order();
    if n > H2_ORDER_LIMIT {
        return Err(Error::Budget(format!(
            "cohomology limited to order {H2_ORDER_LIMIT}, got {n}"
        )));
    }
    let need = h2_memory_estimate(g);
    if need > budget_bytes {
        return Err(Error::Budget(format!(
            "needs about {:.1} MB, budget is {:.1} MB",
            need as f64 / MIB,
            budget_bytes as f64 / MIB
        )));
    }
    let hom_dim = hom_dim_c3(g)?;
    if n == 1 {
        return Ok(CohomologyBasis {
            group: g.clone(),
            z2_dim: 0,
            b2_dim: 0,
            h2_dim: 0,
            hom_dim,
            representatives: Vec::new(),
            gens: Vec::new(),
            rep_columns: Vec::new(),
            b2: Echelon::new(0),
        });
    }
    let cay = Cayley::new(g);
    let width = cay.unknowns(n);

    // constraints from the non-tree edges, one per first argument x != 1
    let mut constraints = Echelon::new(width);
    let mut forms: Vec<F3Vec> = vec![F3Vec::zeros(width); n];
    for x in 1..n {
        forms[0] = F3Vec::zeros(width);
        for &(y, w, j) in &cay.order[1..] {
            let mut f = forms[w].clone();
            if let Some(i) = cay.idx(g.mul(x, w), j) {
                f.add_at(i, 1);
            }
            if let Some(i) = cay.idx(w, j) {
                f.add_at(i, 2);
            }
            forms[y] = f;
        }
        for &(w, j, y) in &cay.extra {
            let mut c = forms[y].clone();
            c.sub_assign(&forms[w]);
            if let Some(i) = cay.idx(g.mul(x, w), j) {
                c.add_at(i, 2);
            }
            if let Some(i) = cay.idx(w, j) {
                c.add_at(i, 1);
            }
            if !c.is_zero() {
                constraints.insert(c);
                if constraints.rank() == width {
                    break;
                }
            }
        }
    }
    let z2 = constraints.nullspace();

    // coboundaries of the point masses e_a, a != 1
    let mut b2 = Echelon::new(width);
    for a in 1..n {
        let mut v = F3Vec::zeros(width);
        for x in 1..n {
            for (j, &s) in cay.gens.iter().enumerate() {
                let c = u8::from(x == a) + u8::from(s == a) + 2 * u8::from(g.mul(x, s) == a);
                if c % 3 != 0 {
                    v.add_at(cay.idx(x, j).expect("x != 1"), c);
                }
            }
        }
        if constraints.rows().iter().any(|r| r.dot(&v) != 0) {
            return Err(Error::Inconsistent(
                "a coboundary violates the constraints".into(),
            ));
        }
        b2.insert(v);
    }
    let b2_dim = b2.rank();
    if b2_dim + hom_dim != n - 1 {
        return Err(Error::Inconsistent(format!(
            "dim B^2 = {b2_dim} but |G| - 1 - dim Hom(G, C3) = {}",
            n - 1 - hom_dim
        )));
    }

    let mut span = b2.clone();
    let mut rep_columns = Vec::new();
    for z in &z2 {
        if span.insert(z.clone()) {
            rep_columns.push(z.clone());
        }
    }
    let h2_dim = rep_columns.len();
    if h2_dim + b2_dim != z2.len() {
        return Err(Error::Inconsistent("B^2 is not contained in Z^2".into()));
    }
    let representatives = rep_columns
        .iter()
        .map(|u| Cocycle2::new(g, cay.materialize(g, u)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyBasis {
        group: g.clone(),
        z2_dim: z2.len(),
        b2_dim,
        h2_dim,
        hom_dim,
        representatives,
        gens: cay.gens,
        rep_columns,
        b2,
    })
}

/// Largest order accepted by [`h2_dims_dense`].
pub const DENSE_ORDER_LIMIT: usize = 40;

/// `(dim Z^2, dim B^2, dim H^2)` from the full system on all `(|G|-1)^2`
/// normalized cochain values and every triple. Used as an independent
/// check on small groups.
pub fn h2_dims_dense(g: &Group) -> Result<(usize, usize, usize)> {
    let n = g.order();
    if n > DENSE_ORDER_LIMIT {
        return Err(Error::Budget(format!(
            "dense system limited to order {DENSE_ORDER_LIMIT}"
        )));
    }
    if n == 1 {
        return Ok((0, 0, 0));
    }
    let m = n - 1;
    let width = m * m;
    let idx = |x: usize, y: usize| (x != 0 && y != 0).then(|| (x - 1) * m + (y - 1));
    let mut cons = Echelon::new(width);
    for x in 1..n {
        for y in 1..n {
            let xy = g.mul(x, y);
            for z in 1..n {
                let mut v = F3Vec::zeros(width);
                let yz = g.mul(y, z);
                for (i, c) in [
                    (idx(x, y), 1),
                    (idx(xy, z), 1),
                    (idx(y, z), 2),
                    (idx(x, yz), 2),
                ] {
                    if let Some(i) = i {
                        v.add_at(i, c);
                    }
                }
                if !v.is_zero() {
                    cons.insert(v);
                }
            }
        }
    }
    let z2 = width - cons.rank();
    let mut b2 = Echelon::new(width);
    for a in 1..n {
        let mut v = F3Vec::zeros(width);
        for x in 1..n {
            for y in 1..n {
                let c = u8::from(x == a) + u8::from(y == a) + 2 * u8::from(g.mul(x, y) == a);
                if c % 3 != 0 {
                    v.add_at(idx(x, y).expect("nonzero"), c);
                }
            }
        }
        b2.insert(v);
    }
    Ok((z2, b2.rank(), z2 - b2.rank()))
}

/// The group on pairs `(g, s)` with `(g,s)(h,t) = (gh, s + t + f(g,h))`.
/// The pair is stored at `3g + s`, so the central `C_3` is `{0, 1, 2}`.
pub fn extension_from_cocycle(f: &Cocycle2) -> Result<Group> {
    f.check_identity()?;
    let g = &f.group;
    let n = g.order();
    let m = 3 * n;
    if m > crate::group::MAX_ORDER {
        return Err(Error::Budget(format!("extension of order {m}")));
    }
    let mut table = vec![0u32; m * m];
    for a in 0..m {
        let (x, s) = (a / 3, a % 3);
        for b in 0..m {
            let (y, t) = (b / 3, b % 3);
            let u = (s + t + f.value(x, y) as usize) % 3;
            table[a * m + b] = (3 * g.mul(x, y) + u) as u32;
        }
    }
    let name = g.name().map(|s| format!("3.{s}"));
    Ok(Group::from_table_trusted(table, name))
}

/// The central subgroup `{(1, s)}` of an extension built by
/// [`extension_from_cocycle`].
pub fn extension_kernel(gamma: &Group) -> Subgroup {
    Subgroup::generated_by(gamma, &[1])
}

/// True if the kernel `{0,1,2}` of the extension has a complement.
pub fn has_complement(gamma: &Group) -> bool {
    let kernel = extension_kernel(gamma);
    subgroups_of_orders(gamma, &[gamma.order() / 3])
        .iter()
        .any(|h| h.intersection(&kernel).is_trivial())
}

/// One isomorphism class of central extensions.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub group: Group,
    /// Isomorphic to `G x C_3`.
    pub split: bool,
    /// The central `C_3` lies in the derived subgroup.
    pub stem: bool,
    /// H^2 coordinates of every class giving this group.
    pub classes: Vec<Vec<u8>>,
    pub degree3_count: usize,
    /// Degree-3 irreducibles that are nontrivial on the central `C_3`.
    pub faithful_degree3_count: usize,
    pub fingerprint: Fingerprint,
}

/// All central extensions of `G` by `C_3`, up to group isomorphism.
#[derive(Clone, Debug)]
pub struct ExtensionEnumeration {
    pub basis: CohomologyBasis,
    pub extensions: Vec<CentralExtension>,
    /// For each pair of distinct isomorphism classes, what separated them.
    pub separations: Vec<(usize, usize, String)>,
}

impl ExtensionEnumeration {
    pub fn non_split(&self) -> impl Iterator<Item = &CentralExtension> {
        self.extensions.iter().filter(|e| !e.split)
    }

    pub fn non_split_count(&self) -> usize {
        self.non_split().count()
    }
}

/// Builds one extension per cohomology class, in lexicographic order of
/// coordinates, and merges isomorphic ones. Fingerprints (including
/// character degrees) are compared first; when they agree, backtracking
/// isomorphism search decides.
pub fn enumerate_central_extensions(g: &Group) -> Result<ExtensionEnumeration> {
    enumerate_central_extensions_with_budget(g, DEFAULT_BUDGET_BYTES)
}

pub fn enumerate_central_extensions_with_budget(
    g: &Group,
    budget_bytes: usize,
) -> Result<ExtensionEnumeration> {
    let basis = h2_basis_with_budget(g, budget_bytes)?;
    let direct = Group::direct_product(g, &cyclic(3)?);
    let mut extensions: Vec<CentralExtension> = Vec::new();
    for coords in coordinate_vectors(basis.h2_dim) {
        let f = basis.combination(&coords)?;
        let gamma = extension_from_cocycle(&f)?;
        let fp = Fingerprint::compute(&gamma, true)?;
        let mut found = None;
        for (i, e) in extensions.iter().enumerate() {
            if e.fingerprint.first_difference(&fp).is_none()
                && search_isomorphism(&e.group, &gamma).is_some()
            {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => extensions[i].classes.push(coords),
            None => {
                let table = character_table(&gamma)?;
                let kernel = extension_kernel(&gamma);
                let degree3: Vec<_> = table.of_degree(3);
                let faithful = degree3.iter().filter(|c| c.at(1) != c.value(0)).count();
                let derived = derived_subgroup(&gamma);
                extensions.push(CentralExtension {
                    split: is_isomorphic(&gamma, &direct),
                    stem: kernel.is_subgroup_of(&derived),
                    classes: vec![coords],
                    degree3_count: degree3.len(),
                    faithful_degree3_count: faithful,
                    fingerprint: fp,
                    group: gamma,
                });
            }
        }
    }
    let mut separations = Vec::new();
    for i in 0..extensions.len() {
        for j in (i + 1)..extensions.len() {
            let why = match extensions[i]
                .fingerprint
                .first_difference(&extensions[j].fingerprint)
            {
                Some(s) => s.to_string(),
                None => match find_isomorphism(&extensions[i].group, &extensions[j].group) {
                    IsomorphismWitness::Map(_) => {
                        return Err(Error::Inconsistent(
                            "two merged classes turned out isomorphic".into(),
                        ))
                    }
                    w => w.reason(),
                },
            };
            separations.push((i, j, why));
        }
    }
    Ok(ExtensionEnumeration {
        basis,
        extensions,
        separations,
    })
}

/// `dim Hom(M(G), C_3) = dim H^2(G, F_3) - dim Ext(G^ab, C_3)`, where the
/// Ext term counts elementary divisors of `G^ab` divisible by 3.
pub fn schur_multiplier_3rank(g: &Group) -> Result<usize> {
    let basis = h2_basis(g)?;
    let ext = abelian_invariants(g)
        .iter()
        .filter(|&&d| d % 3 == 0)
        .count();
    basis.h2_dim.checked_sub(ext).ok_or_else(|| {
        Error::Inconsistent(format!(
            "h2 dimension {} is smaller than the Ext rank {ext}",
            basis.h2_dim
        ))
    })
}

/// The Schur multiplier 3-rank of each Sylow subgroup.
#[derive(Clone, Debug)]
pub struct SylowContribution {
    pub q: usize,
    pub sylow: Subgroup,
    pub sylow_h2_3rank: usize,
}

/// For every prime `q` dividing `|G|`, the 3-rank of the multiplier of a
/// Sylow `q`-subgroup. The 3-part of `M(G)` embeds in the multiplier of a
/// Sylow 3-subgroup, so these bound `schur_multiplier_3rank(G)`.
pub fn sylow_multiplier_argument(g: &Group) -> Result<Vec<SylowContribution>> {
    let mut primes = Vec::new();
    let mut m = g.order();
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    primes
        .into_iter()
        .map(|q| {
            let sylow = sylow_subgroup(g, q);
            let (sg, _) = sylow.to_group(None);
            Ok(SylowContribution {
                q,
                sylow_h2_3rank: schur_multiplier_3rank(&sg)?,
                sylow,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_named_group;

    #[test]
    fn cyclic_three_has_one_class() {
        let g = cyclic(3).unwrap();
        let b = h2_basis(&g).unwrap();
        assert_eq!((b.z2_dim, b.b2_dim, b.h2_dim), (2, 1, 1));
        assert_eq!(h2_dims_dense(&g).unwrap(), (2, 1, 1));
        let gamma = extension_from_cocycle(&b.representatives[0]).unwrap();
        assert!(gamma.is_associative_exhaustive());
        assert!(is_isomorphic(&gamma, &cyclic(9).unwrap()));
    }

    #[test]
    fn coordinate_vectors_are_lexicographic() {
        let v = coordinate_vectors(2);
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], vec![0, 0]);
        assert_eq!(v[1], vec![0, 1]);
        assert_eq!(v[3], vec![1, 0]);
        assert_eq!(coordinate_vectors(0), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn serialization_round_trip_and_tamper() {
        let g = build_named_group("C3xC3", &[]).unwrap();
        let b = h2_basis(&g).unwrap();
        let f = &b.representatives[0];
        let text = f.serialize();
        assert_eq!(&Cocycle2::parse(&g, &text).unwrap(), f);
        let other = cyclic(9).unwrap();
        assert!(Cocycle2::parse(&other, &text).is_err());
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let g = cyclic(3).unwrap();
        let mut v = vec![0u8; 9];
        v[4] = 1; // f(1,1) = 1 only; fails at (1, 1, 2)
        assert!(matches!(
            Cocycle2::new(&g, v),
            Err(Error::CocycleIdentity { .. })
        ));
        let mut w = vec![0u8; 9];
        w[0] = 1;
        assert!(Cocycle2::new(&g, w).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let g = build_named_group("P1", &[]).unwrap();
        assert!(h2_basis_with_budget(&g, 10).unwrap_err().is_budget());
    }
}
