use super::{center, derived_subgroup, Group, Subgroup};

/// Center, derived subgroup, abelianization and exponent of a group.
#[derive(Clone, Debug)]
pub struct StructureInvariants {
    pub center: Subgroup,
    pub derived: Subgroup,
    /// Elementary divisors of `G/G'` (prime powers, ascending).
    pub abelianization: Vec<usize>,
    pub exponent: usize,
}

pub fn structure_invariants(g: &Group) -> StructureInvariants {
    let derived = derived_subgroup(g);
    StructureInvariants {
        center: center(g),
        abelianization: invariants_mod(g, &derived),
        derived,
        exponent: g.exponent(),
    }
}

/// Elementary divisors of `G/G'`.
pub fn abelian_invariants(g: &Group) -> Vec<usize> {
    invariants_mod(g, &derived_subgroup(g))
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// For `A = G/D` abelian: the number of `a` with `a^(q^k) = 1` is
/// `q^(sum_i min(e_i, k))`, which determines the exponents `e_i` of the
/// `q`-part. Counting is done on representatives in `G`.
fn invariants_mod(g: &Group, d: &Subgroup) -> Vec<usize> {
    let quotient_order = d.index();
    let mut out = Vec::new();
    for q in prime_factors(quotient_order) {
        let mut qpart = 1;
        let mut rest = quotient_order;
        while rest.is_multiple_of(q) {
            rest /= q;
            qpart *= q;
        }
        let mut s_prev = 0u32;
        let mut counts_ge = Vec::new();
        let mut k = 1;
        loop {
            let qk = (q as i64).pow(k);
            let hits = (0..g.order()).filter(|&x| d.contains(g.pow(x, qk))).count();
            let in_quotient = hits / d.order();
            let s_k = ilog(in_quotient, q);
            counts_ge.push((s_k - s_prev) as usize);
            if q.pow(s_k) == qpart {
                break;
            }
            s_prev = s_k;
            k += 1;
        }
        // counts_ge[k-1] = #{i : e_i >= k}
        for (idx, &c) in counts_ge.iter().enumerate() {
            let next = counts_ge.get(idx + 1).copied().unwrap_or(0);
            for _ in 0..(c - next) {
                out.push(q.pow(idx as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

fn ilog(mut n: usize, q: usize) -> u32 {
    let mut e = 0;
    while n > 1 {
        debug_assert_eq!(n % q, 0);
        n /= q;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_named_group, cyclic};

    #[test]
    fn abelian_invariants_of_products() {
        let g = Group::direct_product(&cyclic(12).unwrap(), &cyclic(18).unwrap());
        // C12 x C18 = C4 x C3 x C2 x C9
        assert_eq!(abelian_invariants(&g), vec![2, 3, 4, 9]);
        let q8 = build_named_group("Q8", &[]).unwrap();
        assert_eq!(abelian_invariants(&q8), vec![2, 2]);
    }

    #[test]
    fn p1_invariants() {
        let g = build_named_group("P1", &[]).unwrap();
        let inv = structure_invariants(&g);
        assert_eq!(inv.derived.order(), 9);
        assert_eq!(inv.center.order(), 1);
        assert_eq!(inv.abelianization, vec![4]);
        assert_eq!(inv.exponent, 12);
    }

    #[test]
    fn abelian_group_is_its_own_center() {
        let g = cyclic(10).unwrap();
        let inv = structure_invariants(&g);
        assert_eq!(inv.center.order(), 10);
        assert!(inv.derived.is_trivial());
        assert_eq!(inv.abelianization, vec![2, 5]);
    }
}
