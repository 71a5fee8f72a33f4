//! Dense permutations of `0..n` and the small amount of group machinery the
//! rest of the crate needs: products, inverses, bounded closure and
//! irredundancy reduction of generating sets.

use std::collections::{HashSet, VecDeque};

/// Default cap on enumerated group elements.
pub const DEFAULT_CLOSURE_BOUND: usize = 100_000;

/// A bijection on `0..degree`, stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Returns `None` unless `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Option<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `x`; points outside the domain are fixed.
    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images.get(x as usize).copied().unwrap_or(x)
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self` first, then `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        let degree = self.degree().max(other.degree());
        Perm {
            images: (0..degree as u32)
                .map(|x| other.apply(self.apply(x)))
                .collect(),
        }
    }

    /// Same permutation on a larger domain; extra points are fixed.
    pub fn extended(&self, degree: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(images.len() as u32..degree.max(images.len()) as u32);
        Perm { images }
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<u32> {
        (0..self.images.len() as u32)
            .filter(|&i| self.images[i as usize] != i)
            .collect()
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// sorted by that point.
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

/// Result of a bounded closure computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Group(HashSet<Perm>),
    Overflow,
}

impl Closure {
    pub fn order(&self) -> Option<usize> {
        match self {
            Closure::Group(g) => Some(g.len()),
            Closure::Overflow => None,
        }
    }

    pub fn elements(&self) -> Option<&HashSet<Perm>> {
        match self {
            Closure::Group(g) => Some(g),
            Closure::Overflow => None,
        }
    }
}

/// Breadth-first product closure of `gens` on `0..degree`, giving up once
/// more than `bound` elements have been produced.
pub fn closure(gens: &[Perm], degree: usize, bound: usize) -> Closure {
    let degree = gens.iter().map(Perm::degree).fold(degree, usize::max);
    let gens: Vec<Perm> = gens.iter().map(|g| g.extended(degree)).collect();
    let id = Perm::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(elem) = queue.pop_front() {
        for g in &gens {
            let next = elem.then(g);
            if !seen.contains(&next) {
                if seen.len() >= bound {
                    return Closure::Overflow;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Closure::Group(seen)
}

/// Drops generators that lie in the group generated by the remaining ones,
/// until none can be dropped. Skipped entirely (input returned unchanged)
/// when the whole group has more than `bound` elements.
pub fn reduce_redundant(gens: Vec<Perm>, degree: usize, bound: usize) -> Vec<Perm> {
    let degree = gens.iter().map(Perm::degree).fold(degree, usize::max);
    let mut gens: Vec<Perm> = gens
        .into_iter()
        .filter(|g| !g.is_identity())
        .map(|g| g.extended(degree))
        .collect();
    if closure(&gens, degree, bound) == Closure::Overflow {
        return gens;
    }
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        let others: Vec<Perm> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        if let Closure::Group(sub) = closure(&others, degree, bound) {
            if sub.contains(&gens[i]) {
                gens.remove(i);
            }
        }
    }
    gens
}
