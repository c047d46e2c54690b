//! Simple undirected graphs with bitset adjacency rows, vertex orders and
//! threshold-graph recognition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A set of vertices `0..n` stored as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds a set from the low `n` bits of `mask` (`n ≤ 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::empty(n);
        if n > 0 {
            s.bits[0] = if n == 64 { mask } else { mask & ((1u64 << n) - 1) };
        }
        s
    }

    /// Low 64 bits as a mask; only meaningful when `n ≤ 64`.
    pub fn to_mask(&self) -> u64 {
        self.bits.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && (self.bits[v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.bits[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.bits[v / 64] &= !(1 << (v % 64));
    }

    pub fn toggle(&mut self, v: usize) {
        self.bits[v / 64] ^= 1 << (v % 64);
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> Self {
        let mut c = Self::full(self.n);
        for (c, b) in c.bits.iter_mut().zip(&self.bits) {
            *c &= !b;
        }
        c
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            }
        })
    })
}

/// A linear order on the vertices: `perm[p]` is the vertex at position `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexOrder {
    perm: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        VertexOrder {
            perm: (0..n).collect(),
        }
    }

    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrder(format!(
                    "{perm:?} is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(VertexOrder { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn vertex_at(&self, position: usize) -> usize {
        self.perm[position]
    }

    /// Inverse permutation: `positions()[v]` is the position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.perm.len()];
        for (p, &v) in self.perm.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        VertexOrder {
            perm: self.perm.iter().rev().copied().collect(),
        }
    }

    /// Swaps the vertices at positions `p` and `p + 1`.
    pub fn swap_adjacent(&mut self, p: usize) {
        self.perm.swap(p, p + 1);
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.perm
    }
}

impl TryFrom<Vec<usize>> for VertexOrder {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexOrder::new(v)
    }
}

impl From<VertexOrder> for Vec<usize> {
    fn from(o: VertexOrder) -> Vec<usize> {
        o.perm
    }
}

/// A vertex order with role bits; `roles[p]` is the role of the vertex at
/// position `p` (`true` = dominating). The first role is ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreationSequence {
    pub order: VertexOrder,
    pub roles: Vec<bool>,
}

impl CreationSequence {
    pub fn new(order: VertexOrder, roles: Vec<bool>) -> Result<Self> {
        if order.len() != roles.len() {
            return Err(Error::InvalidArgument(format!(
                "creation sequence has {} vertices but {} roles",
                order.len(),
                roles.len()
            )));
        }
        Ok(CreationSequence { order, roles })
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    /// Order with nested neighbourhoods: isolated vertices from last added
    /// to first, then dominating vertices in the order they were added.
    pub fn nested_order(&self) -> VertexOrder {
        let perm = self.order.as_slice();
        let dominating = |j: usize| j > 0 && self.roles[j];
        let mut out: Vec<usize> = (0..perm.len())
            .rev()
            .filter(|&j| !dominating(j))
            .map(|j| perm[j])
            .collect();
        out.extend((0..perm.len()).filter(|&j| dominating(j)).map(|j| perm[j]));
        VertexOrder { perm: out }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    /// Builds a graph from an edge list, collapsing duplicates.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph on at most 64 vertices from neighbourhood masks.
    /// Bits on the diagonal or beyond `n` are ignored; the result is symmetrized.
    pub fn from_row_masks(rows: &[u64]) -> Self {
        let n = rows.len();
        assert!(n <= 64);
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in iter_bits(std::slice::from_ref(&rows[u])) {
                if v < n && v != u {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (wu, wv) = (u * self.words, v * self.words);
        if present {
            self.rows[wu + v / 64] |= 1 << (v % 64);
            self.rows[wv + u / 64] |= 1 << (u % 64);
        } else {
            self.rows[wu + v / 64] &= !(1 << (v % 64));
            self.rows[wv + u / 64] &= !(1 << (u % 64));
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Neighbourhood bitset of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbourhood of `v` as a single mask; requires `n ≤ 64`.
    #[inline]
    pub fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v * self.words]
    }

    pub fn row_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "row masks need n ≤ 64");
        (0..self.n).map(|v| self.row_mask(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet {
            n: self.n,
            bits: self.row(v).to_vec(),
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// `e(v, A) = |N(v) ∩ A|`.
    pub fn degree_count(&self, v: usize, set: &VertexSet) -> usize {
        debug_assert_eq!(set.universe(), self.n);
        self.row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut c = Graph::complete(self.n);
        for (c, r) in c.rows.iter_mut().zip(&self.rows) {
            *c &= !r;
        }
        c
    }

    /// Number of edges in the symmetric difference of the edge sets.
    pub fn edit_distance(&self, other: &Graph) -> usize {
        assert_eq!(self.n, other.n);
        self.rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Relabels vertices so that the vertex at position `p` of `order`
    /// becomes vertex `p`.
    pub fn relabeled(&self, order: &VertexOrder) -> Graph {
        let pos = order.positions();
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(pos[u], pos[v], true);
        }
        g
    }
}

/// Order by nondecreasing degree, ties broken by vertex index.
pub fn degree_order(g: &Graph) -> VertexOrder {
    let deg = g.degrees();
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.sort_by_key(|&v| (deg[v], v));
    VertexOrder { perm }
}

/// Recognizes threshold graphs by repeatedly removing an isolated or a
/// dominating vertex. Returns a creation sequence that regenerates `g`.
pub fn is_threshold(g: &Graph) -> Option<CreationSequence> {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut deg = g.degrees();
    let mut removed = Vec::with_capacity(n);
    for remaining in (1..=n).rev() {
        let pick = alive
            .iter()
            .find(|&v| deg[v] == 0)
            .map(|v| (v, false))
            .or_else(|| alive.iter().find(|&v| deg[v] + 1 == remaining).map(|v| (v, true)))?;
        let (v, dominating) = pick;
        alive.remove(v);
        for u in g.neighbors(v) {
            if alive.contains(u) {
                deg[u] -= 1;
            }
        }
        removed.push((v, dominating));
    }
    removed.reverse();
    let (perm, mut roles): (Vec<usize>, Vec<bool>) = removed.into_iter().unzip();
    if let Some(first) = roles.first_mut() {
        *first = false;
    }
    Some(CreationSequence {
        order: VertexOrder { perm },
        roles,
    })
}

/// The threshold graph generated by a creation sequence.
pub fn threshold_from_creation(cs: &CreationSequence) -> Graph {
    let n = cs.len();
    let mut g = Graph::empty(n);
    let perm = cs.order.as_slice();
    for j in 1..n {
        if cs.roles[j] {
            for &u in &perm[..j] {
                g.set_edge(u, perm[j], true);
            }
        }
    }
    g
}

/// True iff `N(v) ∖ {v,w} ⊆ N(w) ∖ {v,w}` for all `v ≺ w`.
pub fn is_nested_order(g: &Graph, order: &VertexOrder) -> bool {
    let perm = order.as_slice();
    let n = g.n();
    for i in 0..n {
        let v = perm[i];
        for &w in &perm[i + 1..] {
            let (rv, rw) = (g.row(v), g.row(w));
            for k in 0..rv.len() {
                let mut extra = rv[k] & !rw[k];
                if w / 64 == k {
                    extra &= !(1 << (w % 64));
                }
                if extra != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Partition of `0..n` into classes where every transposition inside a class
/// is an automorphism of the matrix `entry`. Returns, for each index, the
/// previous member of its class (if any).
pub(crate) fn twin_predecessors(
    n: usize,
    entry: impl Fn(usize, usize) -> u64,
    same_weight: impl Fn(usize, usize) -> bool,
) -> Vec<Option<usize>> {
    let is_swap_automorphism = |a: usize, b: usize| {
        if !same_weight(a, b) {
            return false;
        }
        let sigma = |x: usize| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        };
        (0..n).all(|x| (0..n).all(|y| entry(sigma(x), sigma(y)) == entry(x, y)))
    };
    let mut prev = vec![None; n];
    let mut class_last: Vec<usize> = Vec::new();
    for v in 0..n {
        if let Some(slot) = class_last
            .iter_mut()
            .find(|last| is_swap_automorphism(**last, v))
        {
            prev[v] = Some(*slot);
            *slot = v;
        } else {
            class_last.push(v);
        }
    }
    prev
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> Graph {
        Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn construction_examples() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(Graph::from_edges(2, &[]).unwrap().edge_count(), 0);
        let g = k22();
        assert_eq!(g.edge_count(), 4);
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3));
        let dup = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(Error::LoopEdge(1))));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        assert_eq!(Graph::empty(2).complement(), Graph::complete(2));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(k22().complement(), two_k2);
    }

    #[test]
    fn degree_count_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.degree_count(0, &VertexSet::from_vertices(3, [1, 2]).unwrap()), 2);
        assert_eq!(k22().degree_count(0, &VertexSet::from_vertices(4, [1]).unwrap()), 0);
        assert_eq!(k3.degree_count(1, &VertexSet::empty(3)), 0);
    }

    #[test]
    fn degree_order_examples() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(degree_order(&star).as_slice(), &[1, 2, 3, 0]);
        assert_eq!(degree_order(&k22()).as_slice(), &[0, 1, 2, 3]);
        assert_eq!(degree_order(&path(3)).as_slice(), &[0, 2, 1]);
    }

    #[test]
    fn threshold_recognition_examples() {
        let cs = is_threshold(&Graph::complete(3)).expect("K3 is threshold");
        assert!(cs.roles[1..].iter().all(|&r| r));
        assert!(is_threshold(&path(4)).is_none());
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(is_threshold(&c4).is_none());
        assert!(is_threshold(&Graph::empty(0)).is_some());
    }

    #[test]
    fn creation_examples() {
        let all_dom = CreationSequence::new(VertexOrder::identity(3), vec![true; 3]).unwrap();
        assert_eq!(threshold_from_creation(&all_dom), Graph::complete(3));
        let none = CreationSequence::new(VertexOrder::identity(4), vec![false; 4]).unwrap();
        assert_eq!(threshold_from_creation(&none), Graph::empty(4));
        let cs = CreationSequence::new(VertexOrder::identity(4), vec![false, true, false, true])
            .unwrap();
        let expect = Graph::from_edges(4, &[(0, 1), (3, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(threshold_from_creation(&cs), expect);
    }

    #[test]
    fn order_validation() {
        assert!(VertexOrder::new(vec![0, 2, 1]).is_ok());
        assert!(VertexOrder::new(vec![0, 0, 1]).is_err());
        assert!(VertexOrder::new(vec![0, 3]).is_err());
        let o = VertexOrder::new(vec![2, 0, 1]).unwrap();
        assert_eq!(o.positions(), vec![1, 2, 0]);
        assert_eq!(o.reversed().as_slice(), &[1, 0, 2]);
    }

    #[test]
    fn nestedness() {
        let cs = is_threshold(&Graph::complete(4)).unwrap();
        assert!(is_nested_order(&Graph::complete(4), &cs.nested_order()));
        assert!(!is_nested_order(&path(4), &VertexOrder::identity(4)));
        // the construction order itself need not be nested
        let cs = CreationSequence::new(VertexOrder::identity(3), vec![false, true, false]).unwrap();
        let g = threshold_from_creation(&cs);
        assert!(!is_nested_order(&g, &cs.order));
        assert!(is_nested_order(&g, &cs.nested_order()));
        assert_eq!(cs.nested_order().as_slice(), &[2, 0, 1]);
    }

    #[test]
    fn twin_classes_of_kmm() {
        let prev = twin_predecessors(4, |a, b| k22().has_edge(a, b) as u64, |_, _| true);
        assert_eq!(prev, vec![None, Some(0), None, Some(2)]);
        // true twins in K3
        let prev = twin_predecessors(3, |a, b| (a != b) as u64, |_, _| true);
        assert_eq!(prev, vec![None, Some(0), Some(1)]);
    }

    #[test]
    fn vertex_set_ops() {
        let mut s = VertexSet::from_vertices(70, [0, 5, 69]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(69));
        s.toggle(5);
        assert_eq!(s.to_vec(), vec![0, 69]);
        assert_eq!(s.complement().len(), 68);
        assert_eq!(VertexSet::from_mask(4, 0b1010).to_vec(), vec![1, 3]);
    }
}
