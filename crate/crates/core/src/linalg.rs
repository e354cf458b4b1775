//! Exact rank over ℚ.

use num_traits::Zero;

use crate::coeff::Coefficient;

/// Rank of a dense row-major matrix by fraction-exact Gaussian elimination.
pub fn rank(rows: &[Vec<Coefficient>]) -> usize {
    let mut m: Vec<Vec<Coefficient>> = rows.to_vec();
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| m[i].get(c).is_some_and(|v| !v.is_zero())) else {
            continue;
        };
        m.swap(r, pivot);
        let lead = m[r][c].clone();
        for i in (r + 1)..m.len() {
            let Some(x) = m[i].get(c).filter(|v| !v.is_zero()).cloned() else {
                continue;
            };
            let factor = x / &lead;
            for j in c..cols {
                let sub = m[r].get(j).map(|v| v * &factor).unwrap_or_default();
                if let Some(v) = m[i].get_mut(j) {
                    *v -= sub;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
