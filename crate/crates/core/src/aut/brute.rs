use super::{AutError, VertexPermutation};
use crate::graph::{ColouredDigraph, VertexId};

pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Every colour-preserving automorphism of `g`, by exhaustive enumeration of
/// colour-respecting bijections. Sorted; the identity comes first.
pub fn brute_force_automorphisms(g: &ColouredDigraph) -> Result<Vec<VertexPermutation>, AutError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(AutError::TooLarge(n));
    }
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(g, &mut images, &mut used, &mut found);
    found.sort();
    Ok(found)
}

fn extend(
    g: &ColouredDigraph,
    images: &mut Vec<VertexId>,
    used: &mut [bool],
    found: &mut Vec<VertexPermutation>,
) {
    let n = g.vertex_count();
    let v = images.len();
    if v == n {
        let gamma = VertexPermutation::from_images(images.clone()).expect("bijection");
        if gamma.is_automorphism_of(g) {
            found.push(gamma);
        }
        return;
    }
    for w in 0..n {
        if used[w] || g.colour(v as VertexId) != g.colour(w as VertexId) {
            continue;
        }
        used[w] = true;
        images.push(w as VertexId);
        extend(g, images, used, found);
        images.pop();
        used[w] = false;
    }
}
