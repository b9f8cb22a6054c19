//! Deterministic graph generators used to build test corpora.
//!
//! Besides the named families there are two tree enumerators: every labeled
//! tree on `n` vertices (by Prüfer sequence) and one representative of every
//! isomorphism class of trees (by rooted level sequences).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Graph, Result};

/// Seedable generator behind every randomized construction in the crate.
pub type CorpusRng = ChaCha8Rng;

pub fn corpus_rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratorRecipe {
    /// Path with `length` edges.
    Path { length: usize },
    /// `K_{1,leaves}` with the center at vertex 0.
    Star { leaves: usize },
    /// Legs of the given lengths glued at vertex 0.
    Spider { legs: Vec<usize> },
    /// Path of length `handle` from vertex 0, plus `bristles` leaves on vertex 0.
    Broom { handle: usize, bristles: usize },
    /// Spine `0..leaves.len()`, spine vertex `i` carrying `leaves[i]` leaves.
    Caterpillar { leaves: Vec<usize> },
    /// Tree decoded from a uniformly random Prüfer sequence.
    RandomTree { vertices: usize, seed: u64 },
}

impl GeneratorRecipe {
    /// Builds a recipe from a kind name and its integer parameters.
    pub fn from_parts(kind: &str, params: &[usize], seed: u64) -> Result<Self> {
        let one = |what| match params {
            [x] => Ok(*x),
            _ => Err(Error::RecipeInvalid(what)),
        };
        Ok(match kind {
            "path" => GeneratorRecipe::Path { length: one("path takes one length")? },
            "star" => GeneratorRecipe::Star { leaves: one("star takes one leaf count")? },
            "spider" => GeneratorRecipe::Spider { legs: params.to_vec() },
            "broom" => match params {
                [h, t] => GeneratorRecipe::Broom { handle: *h, bristles: *t },
                _ => return Err(Error::RecipeInvalid("broom takes a handle length and a leaf count")),
            },
            "caterpillar" => GeneratorRecipe::Caterpillar { leaves: params.to_vec() },
            "random-tree" => GeneratorRecipe::RandomTree {
                vertices: one("random-tree takes one vertex count")?,
                seed,
            },
            _ => return Err(Error::RecipeInvalid("unknown generator kind")),
        })
    }

    /// Same recipe with a different seed (only meaningful for random trees).
    pub fn with_seed(&self, seed: u64) -> Self {
        match self {
            GeneratorRecipe::RandomTree { vertices, .. } => GeneratorRecipe::RandomTree {
                vertices: *vertices,
                seed,
            },
            other => other.clone(),
        }
    }
}

pub fn generate(recipe: &GeneratorRecipe) -> Result<Graph> {
    match recipe {
        GeneratorRecipe::Path { length } => {
            positive(*length, "path length must be positive")?;
            let pairs: Vec<_> = (0..*length).map(|v| (v, v + 1)).collect();
            Graph::from_edge_list(length + 1, &pairs)
        }
        GeneratorRecipe::Star { leaves } => {
            positive(*leaves, "star needs at least one leaf")?;
            let pairs: Vec<_> = (1..=*leaves).map(|v| (0, v)).collect();
            Graph::from_edge_list(leaves + 1, &pairs)
        }
        GeneratorRecipe::Spider { legs } => {
            if legs.len() < 3 {
                return Err(Error::RecipeInvalid("spider needs at least 3 legs"));
            }
            let mut pairs = Vec::new();
            let mut next = 1;
            for &len in legs {
                positive(len, "spider legs must have positive length")?;
                let mut prev = 0;
                for _ in 0..len {
                    pairs.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Graph::from_edge_list(next, &pairs)
        }
        GeneratorRecipe::Broom { handle, bristles } => {
            positive(*handle, "broom handle must be positive")?;
            positive(*bristles, "broom needs at least one extra leaf")?;
            let mut pairs: Vec<_> = (0..*handle).map(|v| (v, v + 1)).collect();
            pairs.extend((1..=*bristles).map(|b| (0, handle + b)));
            Graph::from_edge_list(handle + bristles + 1, &pairs)
        }
        GeneratorRecipe::Caterpillar { leaves } => {
            positive(leaves.len(), "caterpillar needs a non-empty spine")?;
            let spine = leaves.len();
            let mut pairs: Vec<_> = (1..spine).map(|v| (v - 1, v)).collect();
            let mut next = spine;
            for (s, &count) in leaves.iter().enumerate() {
                positive(count, "caterpillar leaf counts must be positive")?;
                for _ in 0..count {
                    pairs.push((s, next));
                    next += 1;
                }
            }
            Graph::from_edge_list(next, &pairs)
        }
        GeneratorRecipe::RandomTree { vertices, seed } => {
            positive(*vertices, "random tree needs at least one vertex")?;
            Ok(random_tree(*vertices, &mut corpus_rng(*seed)))
        }
    }
}

fn positive(x: usize, what: &'static str) -> Result<()> {
    if x == 0 {
        Err(Error::RecipeInvalid(what))
    } else {
        Ok(())
    }
}

/// Uniformly random labeled tree on `n >= 1` vertices.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code).expect("random Prüfer sequence is valid")
}

/// Decodes a Prüfer sequence of length `n - 2` into a labeled tree on `n`
/// vertices.
pub fn prufer_decode(n: usize, code: &[usize]) -> Result<Graph> {
    if n < 2 {
        return if code.is_empty() {
            Ok(Graph::empty(n))
        } else {
            Err(Error::RecipeInvalid("Prüfer sequence too long"))
        };
    }
    if code.len() != n - 2 {
        return Err(Error::RecipeInvalid("Prüfer sequence must have length n - 2"));
    }
    let mut degree = vec![1usize; n];
    for &v in code {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, order: n });
        }
        degree[v] += 1;
    }
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap_or(0);
    let mut leaf = ptr;
    let mut pairs = Vec::with_capacity(n - 1);
    for &v in code {
        pairs.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    pairs.push((leaf, n - 1));
    Graph::from_edge_list(n, &pairs)
}

/// Iterator over all `n^(n-2)` labeled trees on `n` vertices, in
/// lexicographic order of their Prüfer sequences.
#[derive(Debug, Clone)]
pub struct LabeledTrees {
    n: usize,
    code: Vec<usize>,
    done: bool,
}

impl LabeledTrees {
    pub fn new(n: usize) -> Self {
        LabeledTrees {
            n,
            code: vec![0; n.saturating_sub(2)],
            done: n == 0,
        }
    }
}

impl Iterator for LabeledTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let tree = prufer_decode(self.n, &self.code).expect("odometer yields valid sequences");
        self.done = true;
        for digit in self.code.iter_mut().rev() {
            *digit += 1;
            if *digit < self.n {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(tree)
    }
}

/// One representative of every isomorphism class of trees on `n` vertices,
/// sorted by canonical form.
pub fn free_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut classes = BTreeMap::new();
    // Canonical level sequences of rooted trees, root at level 0.
    let mut levels: Vec<usize> = (0..n).collect();
    loop {
        let tree = tree_from_levels(&levels);
        let key = tree_canonical_form(&tree).expect("level sequence encodes a tree");
        classes.entry(key).or_insert(tree);
        let Some(p) = levels.iter().rposition(|&l| l > 1) else {
            break;
        };
        let q = levels[..p]
            .iter()
            .rposition(|&l| l == levels[p] - 1)
            .expect("a parent level exists");
        for i in p..n {
            levels[i] = levels[i - (p - q)];
        }
    }
    classes.into_values().collect()
}

fn tree_from_levels(levels: &[usize]) -> Graph {
    let mut last_at_level: Vec<usize> = Vec::new();
    let mut pairs = Vec::with_capacity(levels.len().saturating_sub(1));
    for (v, &l) in levels.iter().enumerate() {
        if l > 0 {
            pairs.push((last_at_level[l - 1], v));
        }
        last_at_level.truncate(l);
        last_at_level.push(v);
    }
    Graph::from_edge_list(levels.len(), &pairs).expect("level sequence edges are simple")
}

/// Isomorphism invariant of a tree: the parenthesis encoding rooted at its
/// center (the smaller encoding when there are two centers). `None` if the
/// graph is not a tree.
pub fn tree_canonical_form(g: &Graph) -> Option<Vec<u8>> {
    let n = g.order();
    if n == 0 || g.size() + 1 != n || g.connected_components().len() != 1 {
        return None;
    }
    // Peel leaves layer by layer until one or two vertices remain.
    let mut degree = g.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| {
            let mut out = Vec::with_capacity(2 * n);
            encode_rooted(g, c, usize::MAX, &mut out);
            out
        })
        .min()
}

fn encode_rooted(g: &Graph, v: usize, parent: usize, out: &mut Vec<u8>) {
    let mut children: Vec<Vec<u8>> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| {
            let mut sub = Vec::new();
            encode_rooted(g, w, v, &mut sub);
            sub
        })
        .collect();
    children.sort_unstable();
    out.push(b'(');
    for c in children {
        out.extend_from_slice(&c);
    }
    out.push(b')');
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recipe(kind: &str, params: &[usize]) -> Graph {
        generate(&GeneratorRecipe::from_parts(kind, params, 0).unwrap()).unwrap()
    }

    #[test]
    fn named_families() {
        assert_eq!(recipe("path", &[3]).degrees(), [1, 2, 2, 1]);
        assert_eq!(recipe("star", &[3]).degrees(), [3, 1, 1, 1]);
        let spider = recipe("spider", &[2, 2, 2]);
        assert_eq!(spider.order(), 7);
        assert_eq!(spider.degree(0), 3);
        let broom = recipe("broom", &[2, 3]);
        assert_eq!(broom.degrees(), [4, 2, 1, 1, 1, 1]);
        let cat = recipe("caterpillar", &[1, 2, 1]);
        assert_eq!(cat.order(), 7);
        assert_eq!(&cat.degrees()[..3], &[2, 4, 2]);
    }

    #[test]
    fn invalid_recipes() {
        for (kind, params) in [
            ("spider", &[2usize, 2][..]),
            ("path", &[0][..]),
            ("star", &[][..]),
            ("broom", &[1][..]),
            ("caterpillar", &[][..]),
            ("hypercube", &[3][..]),
        ] {
            let result = GeneratorRecipe::from_parts(kind, params, 0).and_then(|r| generate(&r));
            assert!(matches!(result, Err(Error::RecipeInvalid(_))), "{kind}");
        }
    }

    #[test]
    fn random_tree_small_and_deterministic() {
        let k2 = generate(&GeneratorRecipe::RandomTree { vertices: 2, seed: 99 }).unwrap();
        assert_eq!(k2.edges(), &[(0, 1)]);
        let r = GeneratorRecipe::RandomTree { vertices: 40, seed: 7 };
        let a = generate(&r).unwrap();
        assert_eq!(a, generate(&r).unwrap());
        assert_eq!(a.size(), 39);
        assert_eq!(a.connected_components().len(), 1);
        assert_ne!(a, generate(&r.with_seed(8)).unwrap());
    }

    #[test]
    fn prufer_known_decoding() {
        // Sequence (3, 3, 3) on 5 vertices: star centered at 3 with 0, 1, 2, 4.
        let g = prufer_decode(5, &[3, 3, 3]).unwrap();
        assert_eq!(g.edges(), &[(0, 3), (1, 3), (2, 3), (3, 4)]);
        assert!(prufer_decode(5, &[3, 3]).is_err());
        assert!(prufer_decode(4, &[4, 0]).is_err());
    }

    #[test]
    fn labeled_tree_counts_match_cayley() {
        for n in 1..=6usize {
            let expected = if n == 1 { 1 } else { n.pow(n as u32 - 2) };
            let trees: Vec<_> = LabeledTrees::new(n).collect();
            assert_eq!(trees.len(), expected);
            let mut distinct = trees.clone();
            distinct.sort_by(|a, b| a.edges().cmp(b.edges()));
            distinct.dedup();
            assert_eq!(distinct.len(), expected, "n = {n}");
        }
    }

    #[test]
    fn free_tree_counts() {
        // OEIS A000055 for n = 1..=10.
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (n, &count) in (1..=10).zip(expected.iter()) {
            assert_eq!(free_trees(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn canonical_form_is_relabel_invariant() {
        let g = recipe("spider", &[1, 2, 3]);
        let perm: Vec<usize> = (0..g.order()).rev().collect();
        assert_eq!(
            tree_canonical_form(&g),
            tree_canonical_form(&g.relabel(&perm).unwrap())
        );
        assert_ne!(tree_canonical_form(&g), tree_canonical_form(&recipe("path", &[6])));
        assert_eq!(tree_canonical_form(&Graph::empty(2)), None);
    }
}
