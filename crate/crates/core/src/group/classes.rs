use super::{FiniteGroup, GroupElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// Least member by canonical encoding.
    pub representative: usize,
    pub size: usize,
    /// Sorted member indices.
    pub members: Vec<u32>,
}

/// The conjugacy classes of a group, ordered by size and then by
/// representative, with the class of every element.
#[derive(Clone, Debug)]
pub struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    identity_class: usize,
}

impl ClassData {
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }
}

/// Partitions the group into conjugacy classes by closing each element under
/// conjugation by the generators.
pub fn conjugacy_classes(g: &FiniteGroup) -> ClassData {
    let n = g.order();
    let gens: Vec<(usize, usize)> = g.generators().iter().map(|&s| (s, g.inv(s))).collect();
    let mut raw_class = vec![u32::MAX; n];
    let mut raw: Vec<Vec<u32>> = Vec::new();
    let mut stack = Vec::new();
    for x in 0..n {
        if raw_class[x] != u32::MAX {
            continue;
        }
        let id = raw.len() as u32;
        raw_class[x] = id;
        let mut members = vec![x as u32];
        stack.push(x);
        while let Some(y) = stack.pop() {
            for &(s, sinv) in &gens {
                let z = g.mul(g.mul(sinv, y), s);
                if raw_class[z] == u32::MAX {
                    raw_class[z] = id;
                    members.push(z as u32);
                    stack.push(z);
                }
            }
        }
        members.sort_unstable();
        raw.push(members);
    }

    // raw classes are already in order of least member
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&i| (raw[i].len(), raw[i][0]));
    let mut rank = vec![0u32; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new as u32;
    }
    let class_of: Vec<u32> = raw_class.iter().map(|&c| rank[c as usize]).collect();
    let mut slots: Vec<Option<Vec<u32>>> = raw.into_iter().map(Some).collect();
    let classes: Vec<ConjClass> = order
        .iter()
        .map(|&old| {
            let members = slots[old].take().expect("each class moved once");
            ConjClass {
                representative: members[0] as usize,
                size: members.len(),
                members,
            }
        })
        .collect();
    let identity_class = class_of[g.identity()] as usize;
    ClassData {
        classes,
        class_of,
        identity_class,
    }
}

/// `|C_G(g)|`, as `|G|` divided by the size of the class of `g`.
pub fn centralizer_order(g: &FiniteGroup, classes: &ClassData, x: &GroupElement) -> Result<usize> {
    let i = g.index_of(x).ok_or(Error::NotInGroup)?;
    Ok(g.order() / classes.classes()[classes.class_of(i)].size)
}
