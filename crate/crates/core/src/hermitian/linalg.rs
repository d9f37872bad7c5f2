//! Exact row reduction over a field.

use crate::scalars::StarField;

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<F: StarField>(mut rows: Vec<Vec<F>>) -> (Vec<Vec<F>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let v = rows[i][j].clone() - f.clone() * rows[r][j].clone();
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<F: StarField>(rows: &[Vec<F>]) -> usize {
    rref(rows.to_vec()).1.len()
}

/// Basis of the solutions of `rows · x = 0` in `F^ncols`.
pub fn null_space<F: StarField>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let (red, pivots) = rref(rows.to_vec());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); ncols];
            v[fc] = F::one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = -row[fc].clone();
            }
            v
        })
        .collect()
}

pub fn determinant<F: StarField>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = det * a[c][c].clone();
        let inv = a[c][c].inv();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for j in c..n {
                let v = a[i][j].clone() - f.clone() * a[c][j].clone();
                a[i][j] = v;
            }
        }
    }
    det
}

pub fn same_span<F: StarField>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rb && rank(&both) == ra
}
