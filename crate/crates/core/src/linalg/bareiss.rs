use super::LinalgError;

/// The ring operations fraction-free elimination needs.
pub trait ExactRing: Clone {
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    fn neg_el(&self) -> Self;
    fn mul_el(&self, other: &Self) -> Self;
    fn sub_el(&self, other: &Self) -> Self;
    /// `self / divisor`, failing when the quotient does not exist in the ring.
    fn exact_div(&self, divisor: &Self) -> Result<Self, LinalgError>;
}

/// Determinant of a square matrix given as rows, by Bareiss elimination.
///
/// The pivot for column `k` is the first nonzero entry at or below row `k`,
/// so the sequence of operations (and any intermediate value) is a pure
/// function of the input. The empty matrix has determinant one.
pub fn bareiss_det<T: ExactRing>(mut rows: Vec<Vec<T>>) -> Result<T, LinalgError> {
    let n = rows.len();
    if n == 0 {
        return Ok(T::one_el());
    }
    let mut negate = false;
    let mut prev = T::one_el();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !rows[i][k].is_zero_el()) else {
            return Ok(T::zero_el());
        };
        if p != k {
            rows.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = rows.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in (k + 1)..n {
                let t = row[j].mul_el(&pivot_row[k]).sub_el(&lead.mul_el(&pivot_row[j]));
                row[j] = t.exact_div(&prev)?;
            }
            row[k] = T::zero_el();
        }
        prev = rows[k][k].clone();
    }
    let det = rows[n - 1][n - 1].clone();
    Ok(if negate { det.neg_el() } else { det })
}
