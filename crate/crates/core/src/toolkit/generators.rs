//! Standard families of spaces.

use crate::error::{Error, Result};
use crate::space::OrthoSpace;

/// `(n, ≠)`: `n` pairwise orthogonal elements labelled `1..=n`.
pub fn nset(n: usize) -> Result<OrthoSpace> {
    if n == 0 {
        return Err(Error::BadParameter("nset needs n >= 1".into()));
    }
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Ok(OrthoSpace::from_index_edges(labels, &edges)?.with_name(format!("nset_{n}")))
}

/// `D_n`: elements `0_i, 1_i` for `i = 1..=n`, with `0_i ⊥ 1_i` and no further pair.
pub fn dspace(n: usize) -> Result<OrthoSpace> {
    if n < 2 {
        return Err(Error::BadParameter("dspace needs n >= 2".into()));
    }
    let labels = (1..=n).flat_map(|i| [format!("0_{i}"), format!("1_{i}")]).collect();
    let edges: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    Ok(OrthoSpace::from_index_edges(labels, &edges)?.with_name(format!("dspace_{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let t = nset(3).unwrap();
        assert_eq!(t.edge_count(), 3);
        let d = dspace(2).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(d.labels(), ["0_1", "1_1", "0_2", "1_2"]);
        assert!(matches!(dspace(1), Err(Error::BadParameter(_))));
        assert!(matches!(nset(0), Err(Error::BadParameter(_))));
        assert_eq!(nset(1).unwrap().edge_count(), 0);
    }
}
