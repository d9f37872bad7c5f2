//! Canonical forms for small spaces.
//!
//! Elements are first split into classes by colour refinement (degree, then
//! the multiset of neighbour colours, until stable). Canonical positions are
//! handed out class by class, and among all orders compatible with the
//! classes the one with the least column code wins. Column `k` of the code is
//! the set of earlier positions orthogonal to position `k`. A branch is cut
//! as soon as its code prefix exceeds the best one found.

use crate::error::{Error, Result};
use crate::space::OrthoSpace;

pub const MAX_CANON_N: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub n: usize,
    /// `position[i]` is the canonical position of element `i`.
    pub position: Vec<usize>,
    columns: Vec<u64>,
}

impl CanonicalForm {
    /// `n:` followed by the upper triangle of the canonical adjacency matrix,
    /// column by column, in hexadecimal.
    pub fn certificate(&self) -> String {
        let mut bits = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for k in 1..self.n {
            for j in 0..k {
                bits.push((self.columns[k] >> j) & 1 == 1);
            }
        }
        let mut hex = String::with_capacity(bits.len() / 4 + 1);
        for chunk in bits.chunks(4) {
            let mut v = 0u32;
            for (t, &b) in chunk.iter().enumerate() {
                if b {
                    v |= 8 >> t;
                }
            }
            hex.push(char::from_digit(v, 16).unwrap());
        }
        if hex.is_empty() {
            hex.push('-');
        }
        format!("{}:{}", self.n, hex)
    }

    /// Canonical edge list on positions.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in 1..self.n {
            for j in 0..k {
                if (self.columns[k] >> j) & 1 == 1 {
                    out.push((j, k));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn words(x: &OrthoSpace) -> Result<Vec<u64>> {
    if x.len() > MAX_CANON_N {
        return Err(Error::BadParameter(format!(
            "canonical forms are limited to {MAX_CANON_N} elements"
        )));
    }
    Ok((0..x.len()).map(|i| x.neighbors(i).low_word()).collect())
}

fn rank_by<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

/// Stable colour classes, numbered in an isomorphism-invariant way.
pub fn refine(adj: &[u64]) -> Vec<usize> {
    let degrees: Vec<u32> = adj.iter().map(|w| w.count_ones()).collect();
    let mut color = rank_by(&degrees);
    let mut classes = color.iter().max().map_or(0, |&c| c + 1);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..adj.len())
            .map(|v| {
                let mut nb: Vec<usize> = (0..adj.len())
                    .filter(|&u| (adj[v] >> u) & 1 == 1)
                    .map(|u| color[u])
                    .collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let next = rank_by(&sigs);
        let k = next.iter().max().map_or(0, |&c| c + 1);
        color = next;
        if k == classes {
            return color;
        }
        classes = k;
    }
}

struct Search<'a> {
    adj: &'a [u64],
    cell: Vec<usize>,
    color: Vec<usize>,
    vert_at: Vec<usize>,
    cols: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn walk(&mut self, k: usize, used: u64) {
        let n = self.adj.len();
        if k == n {
            let better = match &self.best {
                Some((b, _)) => self.cols < *b,
                None => true,
            };
            if better {
                self.best = Some((self.cols.clone(), self.vert_at.clone()));
            }
            return;
        }
        for v in 0..n {
            if (used >> v) & 1 == 1 || self.color[v] != self.cell[k] {
                continue;
            }
            let mut col = 0u64;
            for j in 0..k {
                if (self.adj[v] >> self.vert_at[j]) & 1 == 1 {
                    col |= 1 << j;
                }
            }
            // the best code may have changed during an earlier sibling
            if let Some((b, _)) = &self.best {
                if self.cols[..k] == b[..k] && col > b[k] {
                    continue;
                }
            }
            self.vert_at[k] = v;
            self.cols[k] = col;
            self.walk(k + 1, used | (1 << v));
        }
    }
}

pub fn canonical_form(x: &OrthoSpace) -> Result<CanonicalForm> {
    let adj = words(x)?;
    let n = adj.len();
    let color = refine(&adj);
    let mut cell = color.clone();
    cell.sort_unstable();
    let mut s = Search {
        adj: &adj,
        cell,
        color,
        vert_at: vec![0; n],
        cols: vec![0; n],
        best: None,
    };
    s.walk(0, 0);
    let (columns, vert_at) = s.best.expect("at least one ordering");
    let mut position = vec![0; n];
    for (k, &v) in vert_at.iter().enumerate() {
        position[v] = k;
    }
    Ok(CanonicalForm {
        n,
        position,
        columns,
    })
}

pub fn certificate(x: &OrthoSpace) -> Result<String> {
    canonical_form(x).map(|c| c.certificate())
}

/// Labels used for canonical representatives: `a`–`z`, then `x26`, `x27`, ...
pub fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// The canonically relabelled copy of `x`, with labels `a, b, c, ...`.
pub fn canonical_space(x: &OrthoSpace) -> Result<OrthoSpace> {
    let c = canonical_form(x)?;
    OrthoSpace::from_index_edges((0..c.n).map(default_label).collect(), &c.edges())
}

/// Direct isomorphism test by backtracking over degree-compatible bijections.
pub fn are_isomorphic(a: &OrthoSpace, b: &OrthoSpace) -> Result<bool> {
    if a.len() != b.len() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let (wa, wb) = (words(a)?, words(b)?);
    let (da, db): (Vec<u32>, Vec<u32>) = (
        wa.iter().map(|w| w.count_ones()).collect(),
        wb.iter().map(|w| w.count_ones()).collect(),
    );
    let (mut sa, mut sb) = (da.clone(), db.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(false);
    }
    fn go(k: usize, wa: &[u64], wb: &[u64], da: &[u32], db: &[u32], map: &mut Vec<usize>, used: u64) -> bool {
        if k == wa.len() {
            return true;
        }
        for v in 0..wb.len() {
            if (used >> v) & 1 == 1 || da[k] != db[v] {
                continue;
            }
            let ok = (0..k).all(|j| ((wa[k] >> j) & 1) == ((wb[v] >> map[j]) & 1));
            if ok {
                map.push(v);
                if go(k + 1, wa, wb, da, db, map, used | (1 << v)) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    Ok(go(0, &wa, &wb, &da, &db, &mut Vec::new(), 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> OrthoSpace {
        OrthoSpace::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn relabelling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = OrthoSpace::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        let c = certificate(&x).unwrap();
        for _ in 0..50 {
            let mut p: Vec<usize> = (0..6).collect();
            p.shuffle(&mut rng);
            let y = x.permuted(&p).unwrap();
            assert_eq!(certificate(&y).unwrap(), c);
            assert!(are_isomorphic(&x, &y).unwrap());
        }
    }

    #[test]
    fn separates_small_graphs() {
        let p4 = path(4);
        let star = OrthoSpace::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(certificate(&p4).unwrap(), certificate(&star).unwrap());
        assert!(!are_isomorphic(&p4, &star).unwrap());
        assert_eq!(certificate(&OrthoSpace::from_edges(1, &[]).unwrap()).unwrap(), "1:-");
        let k3 = OrthoSpace::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(certificate(&k3).unwrap(), "3:e");
    }

    #[test]
    fn canonical_space_is_fixed() {
        let x = path(5);
        let c = canonical_space(&x).unwrap();
        assert_eq!(canonical_space(&c).unwrap(), c);
        assert_eq!(c.labels()[0], "a");
    }
}
