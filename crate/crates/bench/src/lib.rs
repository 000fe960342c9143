//! Fixtures shared by the benchmarks.

use artin3_core::group::build_named_group;
use artin3_core::Group;

pub fn named(name: &str) -> Group {
    build_named_group(name, &[]).expect("fixture names are valid")
}

/// A copy of `g` with elements renumbered by `i -> k·i mod |G|`. The
/// multiplier must be a unit mod the order so the map is a bijection.
pub fn scrambled(g: &Group, k: usize) -> Group {
    let n = g.order();
    let perm: Vec<usize> = (0..n).map(|i| i * k % n).collect();
    g.relabeled(&perm)
        .expect("unit multiplier gives a permutation fixing 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use artin3_core::group::is_isomorphic;

    #[test]
    fn scrambled_copy_is_isomorphic() {
        let j = named("J");
        assert!(is_isomorphic(&j, &scrambled(&j, 5)));
    }
}
