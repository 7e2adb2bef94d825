use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::symgroup::Partition;

/// Standard Young tableaux of shape `β`. Each tableau is stored as the
/// `(row, col)` cell of every entry `1..=n`, zero-based.
pub(crate) fn standard_tableaux(beta: &Partition) -> Vec<Vec<(u8, u8)>> {
    let n = beta.size();
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let parts = beta.parts();
    for smaller in beta.branch_down() {
        // the removed box holds the entry n
        let row = (0..parts.len())
            .find(|&i| smaller.parts().get(i).copied().unwrap_or(0) != parts[i])
            .expect("one row shrinks");
        let col = parts[row] - 1;
        for mut t in standard_tableaux(&smaller) {
            t.push((row as u8, col as u8));
            out.push(t);
        }
    }
    out
}

/// Generator matrices of Young's orthogonal form for `s_1, …, s_{n−1}`.
///
/// With `d` the axial distance from `i` to `i+1` (content of `i+1` minus
/// content of `i`), `s_i` acts on the pair `{T, s_i T}` by
/// `[[1/d, √(1−1/d²)], [√(1−1/d²), −1/d]]`, and by `±1` when `i, i+1` share a
/// row or a column.
pub(crate) fn orthogonal_form(beta: &Partition) -> Vec<DMatrix<f64>> {
    let n = beta.size();
    let tableaux = standard_tableaux(beta);
    let dim = tableaux.len();
    let index: HashMap<&[(u8, u8)], usize> =
        tableaux.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();

    (1..n)
        .map(|i| {
            let mut m = DMatrix::zeros(dim, dim);
            for (t, tab) in tableaux.iter().enumerate() {
                let (r1, c1) = tab[i - 1];
                let (r2, c2) = tab[i];
                if r1 == r2 {
                    m[(t, t)] = 1.0;
                } else if c1 == c2 {
                    m[(t, t)] = -1.0;
                } else {
                    let d = (c2 as f64 - r2 as f64) - (c1 as f64 - r1 as f64);
                    m[(t, t)] = 1.0 / d;
                    let mut swapped = tab.clone();
                    swapped.swap(i - 1, i);
                    let s = index[swapped.as_slice()];
                    m[(s, t)] = (1.0 - 1.0 / (d * d)).sqrt();
                }
            }
            m
        })
        .collect()
}
