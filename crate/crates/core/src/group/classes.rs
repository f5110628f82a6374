use std::sync::Arc;

use super::{ElementIndex, Perm, PermGroup};
use crate::error::Result;

/// Conjugacy classes of an enumerable group.
///
/// Classes are numbered by their least element (in the sorted element
/// order), so class 0 is the identity class and the numbering does not
/// depend on the generating set.
#[derive(Clone)]
pub struct ConjClassData {
    group: PermGroup,
    elements: Arc<ElementIndex>,
    pub reps: Vec<Perm>,
    pub sizes: Vec<u64>,
    pub inverse_class: Vec<usize>,
    pub rep_orders: Vec<u64>,
    class_of_element: Vec<u32>,
    /// `power_maps[i][k]` is the class of `reps[i]^k` for `k < rep_orders[i]`.
    power_maps: Vec<Vec<usize>>,
}

pub fn conjugacy_classes(g: &PermGroup) -> Result<ConjClassData> {
    let idx = g.element_index()?;
    let n = idx.len();
    let gens: Vec<(Perm, Perm)> = g
        .generators()
        .iter()
        .map(|s| (s.clone(), s.inverse()))
        .collect();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        class_of[start] = c;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let x = idx.get(queue[head]).clone();
            head += 1;
            for (s, sinv) in &gens {
                let y = sinv.mul(&x).mul(s);
                let j = idx.index_of(&y).expect("conjugate lies in group");
                if class_of[j] == u32::MAX {
                    class_of[j] = c;
                    queue.push(j);
                }
            }
        }
        reps.push(idx.get(start).clone());
        sizes.push(queue.len() as u64);
    }
    let k = reps.len();
    let rep_orders: Vec<u64> = reps.iter().map(|r| r.order()).collect();
    let class_of_perm = |x: &Perm| class_of[idx.index_of(x).expect("member")] as usize;
    let inverse_class = reps.iter().map(|r| class_of_perm(&r.inverse())).collect();
    let power_maps = (0..k)
        .map(|i| {
            let r = &reps[i];
            let mut out = Vec::with_capacity(rep_orders[i] as usize);
            let mut x = Perm::identity(g.degree());
            for _ in 0..rep_orders[i] {
                out.push(class_of_perm(&x));
                x = x.mul(r);
            }
            out
        })
        .collect();
    Ok(ConjClassData {
        group: g.clone(),
        elements: Arc::clone(&idx),
        reps,
        sizes,
        inverse_class,
        rep_orders,
        class_of_element: class_of,
        power_maps,
    })
}

impl ConjClassData {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn element_index(&self) -> &Arc<ElementIndex> {
        &self.elements
    }

    /// Class index of a group element, `None` if it is not a member.
    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.elements
            .index_of(g)
            .map(|i| self.class_of_element[i] as usize)
    }

    pub fn class_of_index(&self, element: usize) -> usize {
        self.class_of_element[element] as usize
    }

    /// Class of `reps[class]^k` for any integer `k`.
    pub fn power_map(&self, class: usize, k: i64) -> usize {
        let o = self.rep_orders[class] as i64;
        self.power_maps[class][k.rem_euclid(o) as usize]
    }

    /// `|C_G(g)|` for `g` in the given class.
    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.group.order() / self.sizes[class]
    }

    /// Element indices of the members of each class.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, &c) in self.class_of_element.iter().enumerate() {
            out[c as usize].push(i);
        }
        out
    }
}
