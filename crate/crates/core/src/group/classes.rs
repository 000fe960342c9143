use super::Group;

/// Partition of a group into conjugacy classes.
///
/// Classes are ordered by their smallest element, so class 0 is always the
/// identity. The representative of each class is its smallest element.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClasses {
    pub(crate) fn compute(g: &Group) -> ConjugacyClasses {
        let n = g.order();
        let gens = g.generators();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![x];
            class_of[x] = id;
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for &s in &gens {
                    let z = g.conjugate(s, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        members.push(z);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
        ConjugacyClasses {
            classes,
            class_of,
            inverse_class,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class containing the inverses of class `i`.
    pub fn inverse(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Class of `x^k` for any `x` in class `i`.
    pub fn power(&self, g: &Group, i: usize, k: i64) -> usize {
        self.class_of[g.pow(self.representative(i), k)]
    }
}
