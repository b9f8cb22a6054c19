//! Pendant path detection and the per-length counts `p_k`, `q_k`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::Graph;

/// A path from a leaf through degree-2 vertices to an anchor of degree >= 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PendantPath {
    pub leaf: usize,
    pub anchor: usize,
    /// Interior vertices ordered from the leaf toward the anchor.
    pub interior: Vec<usize>,
}

impl PendantPath {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.interior.len() + 1
    }

    /// Leaf, interior and anchor in walk order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        core::iter::once(self.leaf)
            .chain(self.interior.iter().copied())
            .chain(core::iter::once(self.anchor))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PendantProfile {
    pub paths: Vec<PendantPath>,
    /// `k -> p_k`; lengths without pendant paths are absent.
    pub p: BTreeMap<usize, usize>,
    /// `k -> q_k`, the number of distinct anchors of length-`k` paths.
    pub q: BTreeMap<usize, usize>,
}

impl PendantProfile {
    pub fn p(&self, k: usize) -> usize {
        self.p.get(&k).copied().unwrap_or(0)
    }

    pub fn q(&self, k: usize) -> usize {
        self.q.get(&k).copied().unwrap_or(0)
    }

    /// Lengths with at least one pendant path, ascending.
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.p.keys().copied()
    }

    /// Anchors of the length-`k` pendant paths, ascending.
    pub fn anchors(&self, k: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .paths
            .iter()
            .filter(|p| p.length() == k)
            .map(|p| p.anchor)
            .collect();
        set.into_iter().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Walks from every degree-1 vertex through degree-2 vertices and records the
/// walk when it stops at a vertex of degree >= 3.
pub fn find_pendant_paths(g: &Graph) -> PendantProfile {
    let mut paths = Vec::new();
    for leaf in (0..g.order()).filter(|&v| g.degree(v) == 1) {
        let mut prev = leaf;
        let mut cur = g.neighbors(leaf)[0];
        let mut interior = Vec::new();
        while g.degree(cur) == 2 {
            interior.push(cur);
            let nb = g.neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        if g.degree(cur) >= 3 {
            paths.push(PendantPath {
                leaf,
                anchor: cur,
                interior,
            });
        }
    }

    let mut p = BTreeMap::new();
    let mut anchors: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for path in &paths {
        *p.entry(path.length()).or_insert(0) += 1;
        anchors.entry(path.length()).or_default().insert(path.anchor);
    }
    let q = anchors.into_iter().map(|(k, s)| (k, s.len())).collect();
    PendantProfile { paths, p, q }
}

/// `max(p_k − q_k, 0)`, the guaranteed multiplicity of each length-`k` target.
pub fn pendant_bound(profile: &PendantProfile, k: usize) -> usize {
    profile.p(k).saturating_sub(profile.q(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorRecipe};
    use std::vec;

    fn recipe(kind: &str, params: &[usize]) -> Graph {
        generate(&GeneratorRecipe::from_parts(kind, params, 0).unwrap()).unwrap()
    }

    #[test]
    fn pure_path_has_no_pendant_paths() {
        assert!(find_pendant_paths(&recipe("path", &[5])).is_empty());
    }

    #[test]
    fn spider_profile() {
        let prof = find_pendant_paths(&recipe("spider", &[2, 2, 2]));
        assert_eq!((prof.p(2), prof.q(2)), (3, 1));
        assert_eq!(prof.paths.len(), 3);
        assert_eq!(pendant_bound(&prof, 2), 2);
        assert_eq!(pendant_bound(&prof, 1), 0);
        assert_eq!(prof.paths[0].vertices().collect::<Vec<_>>(), vec![2, 1, 0]);
    }

    #[test]
    fn star_profile() {
        let prof = find_pendant_paths(&recipe("star", &[3]));
        assert_eq!((prof.p(1), prof.q(1)), (3, 1));
        assert_eq!(pendant_bound(&prof, 1), 2);
    }

    /// Independent walker: enumerates every simple path by DFS and keeps
    /// those matching the degree pattern.
    fn brute_force(g: &Graph) -> BTreeMap<usize, (usize, usize)> {
        fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<(usize, usize)>) {
            let last = *path.last().unwrap();
            if path.len() > 1 && g.degree(last) >= 3 {
                if path[1..path.len() - 1].iter().all(|&v| g.degree(v) == 2) {
                    out.push((path.len() - 1, last));
                }
                return;
            }
            if path.len() > 1 && g.degree(last) != 2 {
                return;
            }
            for &w in g.neighbors(last) {
                if !path.contains(&w) {
                    path.push(w);
                    extend(g, path, out);
                    path.pop();
                }
            }
        }
        let mut found = Vec::new();
        for v in (0..g.order()).filter(|&v| g.degree(v) == 1) {
            extend(g, &mut vec![v], &mut found);
        }
        let mut table: BTreeMap<usize, (usize, BTreeSet<usize>)> = BTreeMap::new();
        for (k, a) in found {
            let e = table.entry(k).or_default();
            e.0 += 1;
            e.1.insert(a);
        }
        table.into_iter().map(|(k, (p, a))| (k, (p, a.len()))).collect()
    }

    #[test]
    fn broom_profile_matches_brute_force() {
        let g = recipe("broom", &[2, 3]);
        let prof = find_pendant_paths(&g);
        assert_eq!((prof.p(1), prof.q(1)), (3, 1));
        assert_eq!((prof.p(2), prof.q(2)), (1, 1));
        let brute = brute_force(&g);
        assert_eq!(brute.get(&1), Some(&(3, 1)));
        assert_eq!(brute.get(&2), Some(&(1, 1)));
    }

    #[test]
    fn degenerate_components_contribute_nothing() {
        let g = Graph::from_edge_list(7, &[(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(find_pendant_paths(&g).is_empty());
    }

    #[test]
    fn anchor_counted_per_length() {
        // Anchor 0 carries paths of lengths 1, 1 and 3.
        let g = recipe("spider", &[1, 1, 3]);
        let prof = find_pendant_paths(&g);
        assert_eq!((prof.p(1), prof.q(1)), (2, 1));
        assert_eq!((prof.p(3), prof.q(3)), (1, 1));
        assert_eq!(prof.anchors(3), vec![0]);
    }

    mod props {
        use super::*;
        use crate::generate::random_tree;
        use proptest::prelude::*;
        use rand::SeedableRng;

        proptest! {
            #[test]
            fn profile_invariants(n in 2usize..40, seed in any::<u64>()) {
                let g = random_tree(n, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                let prof = find_pendant_paths(&g);
                prop_assert_eq!(prof.p.values().sum::<usize>(), prof.paths.len());
                for k in prof.lengths() {
                    prop_assert!(prof.p(k) >= prof.q(k) && prof.q(k) >= 1);
                }
                let mut leaves = BTreeSet::new();
                let mut on_path = BTreeSet::new();
                for path in &prof.paths {
                    prop_assert_eq!(g.degree(path.leaf), 1);
                    prop_assert!(g.degree(path.anchor) >= 3);
                    prop_assert!(leaves.insert(path.leaf));
                    let vs: Vec<_> = path.vertices().collect();
                    for w in vs.windows(2) {
                        prop_assert!(g.has_edge(w[0], w[1]));
                    }
                    on_path.extend(vs[..vs.len() - 1].iter().copied());
                }
                for path in &prof.paths {
                    prop_assert!(!on_path.contains(&path.anchor));
                }
                let brute = brute_force(&g);
                let fast: BTreeMap<_, _> = prof.lengths().map(|k| (k, (prof.p(k), prof.q(k)))).collect();
                prop_assert_eq!(brute, fast);
            }
        }
    }
}
