//! Fully enumerated permutation groups.
//!
//! Permutations act on the right: `(x * y)[i] = y[x[i]]`, so a point moves
//! through `x` first. Elements are numbered in breadth-first order from the
//! identity (index 0), which keeps every derived ordering reproducible.

use std::cell::RefCell;
use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rustc_hash::FxHashMap;
use thiserror::Error;

pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("group order exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("generators act on different numbers of points")]
    DegreeMismatch,
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("element index {0} out of range")]
    BadIndex(u32),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| PermError::NotAPermutation(format!("image {x} out of range")))?;
            if *slot {
                return Err(PermError::NotAPermutation(format!("image {x} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0, 1, 2], [3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if x as usize >= degree || next as usize >= degree {
                    return Err(PermError::NotAPermutation(format!(
                        "point {} outside degree {degree}",
                        x.max(next)
                    )));
                }
                if moved[x as usize] {
                    return Err(PermError::NotAPermutation(format!("point {x} in two cycles")));
                }
                moved[x as usize] = true;
                images[x as usize] = next;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

thread_local! {
    static SCRATCH: RefCell<Vec<u32>> = const { RefCell::new(Vec::new()) };
}

/// A finite permutation group with all elements listed.
pub struct Group {
    degree: usize,
    elements: Vec<u32>,
    index: FxHashMap<Box<[u32]>, u32>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order())
            .field("degree", &self.degree)
            .finish()
    }
}

/// Enumerates the closure of `generators` breadth-first from the identity.
pub fn enumerate_group(generators: &[Permutation], cap: usize) -> Result<Group, PermError> {
    let degree = generators.first().map_or(0, |g| g.degree());
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch);
    }
    enumerate_with_degree(degree, generators, cap)
}

/// Like [`enumerate_group`] but allows an empty generator list.
pub fn enumerate_with_degree(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Group, PermError> {
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch);
    }
    let mut elements: Vec<u32> = (0..degree as u32).collect();
    let mut index = FxHashMap::default();
    index.insert(elements.clone().into_boxed_slice(), 0u32);
    let mut queue = VecDeque::from([0usize]);
    let mut buf = vec![0u32; degree];
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let xs = &elements[x * degree..(x + 1) * degree];
            for (b, &i) in buf.iter_mut().zip(xs) {
                *b = g.images[i as usize];
            }
            if index.contains_key(buf.as_slice()) {
                continue;
            }
            let n = index.len();
            if n >= cap {
                return Err(PermError::CapExceeded(cap));
            }
            index.insert(buf.clone().into_boxed_slice(), n as u32);
            elements.extend_from_slice(&buf);
            queue.push_back(n);
        }
    }
    let order = index.len();
    let mut group = Group {
        degree,
        elements,
        index,
        inverse: Vec::new(),
        generators: Vec::new(),
    };
    group.inverse = (0..order as u32)
        .map(|x| group.index_of(&group.perm(x).inverse()).expect("closed under inverse"))
        .collect();
    group.generators = generators
        .iter()
        .map(|g| group.index_of(g).expect("generator is an element"))
        .collect();
    Ok(group)
}

impl Group {
    pub fn order(&self) -> usize {
        self.inverse.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn images(&self, x: u32) -> &[u32] {
        let x = x as usize;
        &self.elements[x * self.degree..(x + 1) * self.degree]
    }

    pub fn perm(&self, x: u32) -> Permutation {
        Permutation {
            images: self.images(x).to_vec(),
        }
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p.images.as_slice()).copied()
    }

    pub fn index_of_images(&self, images: &[u32]) -> Option<u32> {
        self.index.get(images).copied()
    }

    pub fn inverse(&self, x: u32) -> u32 {
        self.inverse[x as usize]
    }

    /// `x * y`: apply `x`, then `y`.
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 {
            return y;
        }
        if y == 0 {
            return x;
        }
        SCRATCH.with(|s| {
            let mut buf = s.borrow_mut();
            buf.clear();
            let ys = self.images(y);
            buf.extend(self.images(x).iter().map(|&i| ys[i as usize]));
            self.index[buf.as_slice()]
        })
    }

    /// `y^-1 x y`.
    pub fn conjugate(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inverse(y), x), y)
    }

    pub fn pow(&self, x: u32, mut k: u64) -> u32 {
        let mut base = x;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u32 {
        // cycle-type lcm avoids group lookups
        let xs = self.images(x);
        let mut seen = vec![false; self.degree];
        let mut order = 1u32;
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = xs[p] as usize;
                len += 1;
            }
            order = order.lcm(&len);
        }
        order
    }

    pub fn product(&self, word: &[u32]) -> u32 {
        word.iter().fold(0, |acc, &w| self.mul(acc, w))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&z| {
                self.generators
                    .iter()
                    .all(|&g| self.mul(z, g) == self.mul(g, z))
            })
            .collect()
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order() as u32)
            .map(|x| self.element_order(x) as u64)
            .fold(1, |a, b| a.lcm(&b))
    }
}

/// A subgroup given by its sorted member list.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<Group>,
    members: Vec<u32>,
    generators: Vec<u32>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.members.len())
            .field("generators", &self.generators)
            .finish()
    }
}

pub fn subgroup_generated(group: &Arc<Group>, gens: &[u32]) -> Subgroup {
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut members = vec![0u32];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in gens {
            let y = group.mul(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    Subgroup {
        group: Arc::clone(group),
        members,
        generators: gens.to_vec(),
    }
}

impl Subgroup {
    pub fn whole(group: &Arc<Group>) -> Subgroup {
        Subgroup {
            group: Arc::clone(group),
            members: (0..group.order() as u32).collect(),
            generators: group.generators().to_vec(),
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn intersection(&self, other: &Subgroup) -> Vec<u32> {
        self.members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect()
    }
}

/// Right cosets `Hx` of a subgroup, numbered by their smallest element.
#[derive(Debug, Clone)]
pub struct RightCosets {
    /// element -> coset number
    pub coset_of: Vec<u32>,
    /// coset number -> smallest member
    pub reps: Vec<u32>,
}

pub fn right_cosets(group: &Group, h: &Subgroup) -> RightCosets {
    let mut coset_of = vec![u32::MAX; group.order()];
    let mut reps = Vec::new();
    for x in 0..group.order() as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &hh in h.members() {
            coset_of[group.mul(hh, x) as usize] = c;
        }
    }
    RightCosets { coset_of, reps }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: u32,
    pub members: Vec<u32>,
}

impl DoubleCoset {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition of the group into double cosets `HxK`, ordered by smallest
/// member; each representative is that smallest member.
pub fn double_cosets(group: &Group, h: &Subgroup, k: &Subgroup) -> Vec<DoubleCoset> {
    let mut block = vec![u32::MAX; group.order()];
    let mut out = Vec::new();
    for x in 0..group.order() as u32 {
        if block[x as usize] != u32::MAX {
            continue;
        }
        let b = out.len() as u32;
        block[x as usize] = b;
        let mut members = vec![x];
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            let left = h.generators().iter().map(|&g| group.mul(g, y));
            let right = k.generators().iter().map(|&g| group.mul(y, g));
            let next: Vec<u32> = left.chain(right).collect();
            for z in next {
                if block[z as usize] == u32::MAX {
                    block[z as usize] = b;
                    members.push(z);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(DoubleCoset {
            representative: x,
            members,
        });
    }
    out
}

/// Conjugacy classes with power maps.
#[derive(Debug)]
pub struct ClassData {
    group: Arc<Group>,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    orders: Vec<u32>,
    /// `powers[c][t]` is the class of `rep(c)^t`, for `t < orders[c]`.
    powers: Vec<Vec<u32>>,
    rational_class: Vec<u32>,
}

pub fn conjugacy_classes(group: &Arc<Group>) -> ClassData {
    let n = group.order();
    let mut label = vec![u32::MAX; n];
    let mut raw: Vec<Vec<u32>> = Vec::new();
    for x in 0..n as u32 {
        if label[x as usize] != u32::MAX {
            continue;
        }
        let c = raw.len() as u32;
        label[x as usize] = c;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &g in group.generators() {
                let z = group.conjugate(y, g);
                if label[z as usize] == u32::MAX {
                    label[z as usize] = c;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        raw.push(orbit);
    }
    // Smallest members are increasing in discovery order already.
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&c| (raw[c].len(), raw[c][0]));
    let mut remap = vec![0u32; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new as u32;
    }
    let classes: Vec<Vec<u32>> = order.iter().map(|&c| std::mem::take(&mut raw[c])).collect();
    let class_of: Vec<u32> = label.iter().map(|&c| remap[c as usize]).collect();

    let orders: Vec<u32> = classes.iter().map(|c| group.element_order(c[0])).collect();
    let powers: Vec<Vec<u32>> = classes
        .iter()
        .zip(&orders)
        .map(|(c, &o)| {
            let mut out = Vec::with_capacity(o as usize);
            let mut y = 0u32;
            for _ in 0..o {
                out.push(class_of[y as usize]);
                y = group.mul(y, c[0]);
            }
            out
        })
        .collect();

    let mut rational_class = vec![u32::MAX; classes.len()];
    let mut next = 0;
    for c in 0..classes.len() {
        if rational_class[c] != u32::MAX {
            continue;
        }
        let o = orders[c];
        for t in 1..=o {
            if t.gcd(&o) == 1 {
                rational_class[powers[c][(t % o) as usize] as usize] = next;
            }
        }
        next += 1;
    }

    ClassData {
        group: Arc::clone(group),
        classes,
        class_of,
        orders,
        powers,
        rational_class,
    }
}

impl ClassData {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn members(&self, c: usize) -> &[u32] {
        &self.classes[c]
    }

    pub fn representative(&self, c: usize) -> u32 {
        self.classes[c][0]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn element_order(&self, c: usize) -> u32 {
        self.orders[c]
    }

    /// Class of `g^k` for `g` in class `c`.
    pub fn power(&self, c: usize, k: i64) -> usize {
        let o = self.orders[c] as i64;
        self.powers[c][k.rem_euclid(o) as usize] as usize
    }

    pub fn power_map(&self, k: i64) -> Vec<usize> {
        (0..self.len()).map(|c| self.power(c, k)).collect()
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.power(c, -1)
    }

    /// Classes grouped into Galois orbits (rational classes), in order of
    /// first appearance.
    pub fn rational_classes(&self) -> Vec<Vec<usize>> {
        let n = self.rational_class.iter().map(|&r| r as usize + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); n];
        for (c, &r) in self.rational_class.iter().enumerate() {
            out[r as usize].push(c);
        }
        out
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |a, &o| a.lcm(&(o as u64)))
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.group.order() / self.size(c)
    }
}
