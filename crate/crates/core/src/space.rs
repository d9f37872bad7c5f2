//! Finite orthogonality spaces: a set with a symmetric, irreflexive relation,
//! stored as one adjacency mask per element.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::Mask;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of a constructed space. Clones share the identity of their original.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceId(u64);

impl SpaceId {
    fn fresh() -> Self {
        SpaceId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Clone, Debug)]
pub struct OrthoSpace {
    id: SpaceId,
    labels: Vec<String>,
    adj: Vec<Mask>,
    name: Option<String>,
}

/// Two spaces are equal when they carry the same labels in the same order and
/// the same relation; identity is ignored.
impl PartialEq for OrthoSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for OrthoSpace {}

/// A subset of a particular space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    mask: Mask,
    space: SpaceId,
}

impl Subset {
    pub fn mask(&self) -> &Mask {
        &self.mask
    }

    pub fn space_id(&self) -> SpaceId {
        self.space
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.contains(i)
    }

    pub fn len(&self) -> usize {
        self.mask.count()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.mask.to_vec()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.mask.is_subset(&other.mask)
    }
}

/// An orthoclosed subset viewed as a space in its own right.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub space: OrthoSpace,
    /// `embedding[i]` is the index in the ambient space of element `i`.
    pub embedding: Vec<usize>,
}

/// Result of the lexicographic clique order: compare sorted member lists.
pub(crate) fn sort_lex(masks: &mut [Mask]) {
    masks.sort_by_cached_key(|m| m.to_vec());
}

impl OrthoSpace {
    /// Builds a space from element labels and a list of orthogonal label pairs.
    /// The edge list is symmetrized; repeated edges are harmless.
    pub fn new<S: AsRef<str>>(labels: &[S], edges: &[(S, S)]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_ref().to_owned(), i).is_some() {
                return Err(Error::DuplicateLabel(l.as_ref().to_owned()));
            }
        }
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.to_owned()))
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (i, j) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            pairs.push((i, j));
        }
        let labels = labels.iter().map(|l| l.as_ref().to_owned()).collect();
        Self::from_index_edges(labels, &pairs)
    }

    /// Builds a space from owned labels and index pairs.
    pub fn from_index_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let mut adj = vec![Mask::empty(n); n];
        for &(i, j) in edges {
            for k in [i, j] {
                if k >= n {
                    return Err(Error::IndexOutOfRange { index: k, len: n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(labels[i].clone()));
            }
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(OrthoSpace {
            id: SpaceId::fresh(),
            labels,
            adj,
            name: None,
        })
    }

    /// Builds a space on `0..n` (labels are the decimal indices) from index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_index_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Builds a space from adjacency masks, validating symmetry and irreflexivity.
    pub fn from_adjacency(labels: Vec<String>, adj: Vec<Mask>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if adj.len() != n {
            return Err(Error::BadTable {
                got: adj.len(),
                expected: n,
            });
        }
        let full = Mask::full(n);
        for i in 0..n {
            if adj[i].contains(i) {
                return Err(Error::SelfLoop(labels[i].clone()));
            }
            if !adj[i].is_subset(&full) {
                return Err(Error::IndexOutOfRange {
                    index: adj[i].iter().last().unwrap_or(n),
                    len: n,
                });
            }
            for j in adj[i].iter() {
                if !adj[j].contains(i) {
                    return Err(Error::InternalInconsistency(format!(
                        "relation is not symmetric at ({}, {})",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut seen = HashMap::with_capacity(n);
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(OrthoSpace {
            id: SpaceId::fresh(),
            labels,
            adj,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; spaces have at least one element.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, i: usize) -> &Mask {
        &self.adj[i]
    }

    pub fn adjacency(&self) -> &[Mask] {
        &self.adj
    }

    #[inline]
    pub fn is_orth(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    /// Orthogonal pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.adj[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Mask::count).sum::<usize>() / 2
    }

    // -- subsets ----------------------------------------------------------

    pub fn wrap(&self, mask: Mask) -> Subset {
        Subset {
            mask,
            space: self.id,
        }
    }

    pub fn empty_set(&self) -> Subset {
        self.wrap(Mask::empty(self.len()))
    }

    pub fn full_set(&self) -> Subset {
        self.wrap(Mask::full(self.len()))
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Subset> {
        let n = self.len();
        if let Some(&index) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
        Ok(self.wrap(Mask::from_indices(n, indices.iter().copied())))
    }

    pub fn subset_of_labels(&self, labels: &[&str]) -> Result<Subset> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::UnknownLabel((*l).to_owned())))
            .collect::<Result<Vec<_>>>()?;
        self.subset(&idx)
    }

    pub fn labels_of(&self, s: &Subset) -> Vec<&str> {
        s.mask.iter().map(|i| self.label(i)).collect()
    }

    fn check_owned(&self, s: &Subset) -> Result<()> {
        if s.space == self.id {
            Ok(())
        } else {
            Err(Error::ForeignSubset)
        }
    }

    // -- complement and closure -------------------------------------------

    /// `{ x : x is orthogonal to every element of a }`.
    pub fn complement_mask(&self, a: &Mask) -> Mask {
        let mut r = Mask::full(self.len());
        for i in a.iter() {
            r.and_assign(&self.adj[i]);
        }
        r
    }

    pub fn closure_mask(&self, a: &Mask) -> Mask {
        self.complement_mask(&self.complement_mask(a))
    }

    pub fn ortho_complement(&self, a: &Subset) -> Subset {
        debug_assert_eq!(a.space, self.id);
        self.wrap(self.complement_mask(&a.mask))
    }

    pub fn ortho_closure(&self, a: &Subset) -> Subset {
        debug_assert_eq!(a.space, self.id);
        self.wrap(self.closure_mask(&a.mask))
    }

    pub fn is_orthoclosed(&self, a: &Mask) -> bool {
        &self.closure_mask(a) == a
    }

    pub fn is_orthogonal_mask(&self, a: &Mask) -> bool {
        a.iter().all(|i| a.and_not(&Mask::singleton(self.len(), i)).is_subset(&self.adj[i]))
    }

    pub fn is_orthogonal_set(&self, a: &Subset) -> bool {
        self.is_orthogonal_mask(&a.mask)
    }

    // -- cliques ----------------------------------------------------------

    /// Maximal orthogonal subsets contained in `within`, ordered
    /// lexicographically by their sorted member indices.
    pub fn maximal_cliques_in(&self, within: &Mask) -> Vec<Mask> {
        let mut out = Vec::new();
        if within.is_empty() {
            return out;
        }
        let n = self.len();
        self.bron_kerbosch(Mask::empty(n), within.clone(), Mask::empty(n), within, &mut out);
        sort_lex(&mut out);
        out
    }

    fn bron_kerbosch(&self, r: Mask, mut p: Mask, mut x: Mask, within: &Mask, out: &mut Vec<Mask>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        // Pivot on the vertex of P ∪ X with most neighbours in P.
        let px = p.or(&x);
        let pivot = px
            .iter()
            .max_by_key(|&u| p.and(&self.adj[u]).count())
            .expect("P is nonempty");
        let candidates = p.and_not(&self.adj[pivot]);
        for v in candidates.iter() {
            let nv = self.adj[v].and(within);
            let mut r2 = r.clone();
            r2.insert(v);
            self.bron_kerbosch(r2, p.and(&nv), x.and(&nv), within, out);
            p.remove(v);
            x.insert(v);
        }
    }

    pub fn maximal_orthogonal_masks(&self) -> Vec<Mask> {
        self.maximal_cliques_in(&Mask::full(self.len()))
    }

    pub fn maximal_orthogonal_sets(&self) -> Vec<Subset> {
        self.maximal_orthogonal_masks()
            .into_iter()
            .map(|m| self.wrap(m))
            .collect()
    }

    /// Every nonempty orthogonal subset, ordered lexicographically by sorted members.
    pub fn orthogonal_masks(&self) -> Vec<Mask> {
        let n = self.len();
        let mut out = Vec::new();
        let mut stack: Vec<(Mask, Mask)> = Vec::new();
        for i in (0..n).rev() {
            let above = Mask::from_indices(n, i + 1..n);
            stack.push((Mask::singleton(n, i), self.adj[i].and(&above)));
        }
        // Depth-first in index order yields the lexicographic order directly.
        while let Some((c, ext)) = stack.pop() {
            let ext_list: Vec<usize> = ext.iter().collect();
            for &j in ext_list.iter().rev() {
                let mut c2 = c.clone();
                c2.insert(j);
                let above = Mask::from_indices(n, j + 1..n);
                stack.push((c2, ext.and(&self.adj[j]).and(&above)));
            }
            out.push(c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.maximal_orthogonal_masks()
            .iter()
            .map(Mask::count)
            .max()
            .unwrap_or(0)
    }

    /// Greedily extends an orthogonal set by the smallest compatible index.
    pub fn extend_to_maximal(&self, d: &Subset) -> Result<Subset> {
        self.check_owned(d)?;
        if !self.is_orthogonal_set(d) {
            return Err(Error::NotOrthogonalSet);
        }
        let mut cur = d.mask.clone();
        let mut cand = self.complement_mask(&cur).and_not(&cur);
        while let Some(i) = cand.first() {
            cur.insert(i);
            cand.and_assign(&self.adj[i]);
        }
        Ok(self.wrap(cur))
    }

    // -- structural predicates --------------------------------------------

    /// First pair `(e, f)`, `e < f`, with equal complements.
    pub fn irredundancy_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|e| (e + 1..n).map(move |f| (e, f)))
            .find(|&(e, f)| self.adj[e] == self.adj[f])
    }

    pub fn is_irredundant(&self) -> bool {
        self.irredundancy_witness().is_none()
    }

    /// First ordered pair `(e, f)`, `e != f`, with `{e}⊥ ⊆ {f}⊥`.
    pub fn strong_irredundancy_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|e| (0..n).map(move |f| (e, f)))
            .find(|&(e, f)| e != f && self.adj[e].is_subset(&self.adj[f]))
    }

    pub fn is_strongly_irredundant(&self) -> bool {
        self.strong_irredundancy_witness().is_none()
    }

    /// The connected component of element 0 in the non-orthogonality graph,
    /// if it is not everything; this splits the space into two mutually
    /// orthogonal parts.
    pub fn reducibility_witness(&self) -> Option<Mask> {
        let n = self.len();
        let full = Mask::full(n);
        let mut seen = Mask::singleton(n, 0);
        let mut frontier = vec![0];
        while let Some(v) = frontier.pop() {
            let mut non = full.and_not(&self.adj[v]);
            non.remove(v);
            for w in non.and_not(&seen).iter() {
                seen.insert(w);
                frontier.push(w);
            }
        }
        (seen != full).then_some(seen)
    }

    pub fn is_irreducible(&self) -> bool {
        self.reducibility_witness().is_none()
    }

    /// The space induced on `a` with the inherited relation; no closedness check.
    pub fn induced(&self, a: &Mask) -> Result<Subspace> {
        let embedding = a.to_vec();
        if embedding.is_empty() {
            return Err(Error::EmptySubset);
        }
        let m = embedding.len();
        let pos: HashMap<usize, usize> = embedding.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let labels = embedding.iter().map(|&i| self.labels[i].clone()).collect();
        let adj = embedding
            .iter()
            .map(|&i| Mask::from_indices(m, self.adj[i].and(a).iter().map(|j| pos[&j])))
            .collect();
        let space = OrthoSpace::from_adjacency(labels, adj)?;
        Ok(Subspace { space, embedding })
    }

    /// The subspace carried by an orthoclosed, nonempty subset.
    pub fn subspace(&self, a: &Subset) -> Result<Subspace> {
        self.check_owned(a)?;
        if a.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !self.is_orthoclosed(&a.mask) {
            return Err(Error::NotOrthoclosed);
        }
        self.induced(&a.mask)
    }

    /// Applies a permutation: element `i` of `self` becomes element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<OrthoSpace> {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
        OrthoSpace::from_index_edges(labels, &edges)
    }
}
