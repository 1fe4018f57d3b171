use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bareiss::{bareiss_det, ExactRing};
use super::LinalgError;

impl ExactRing for BigInt {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg_el(&self) -> Self {
        -self
    }
    fn mul_el(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_el(&self, other: &Self) -> Self {
        self - other
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self, LinalgError> {
        if Zero::is_zero(divisor) {
            return Err(LinalgError::ExactDivisionFailure(format!("{self} / 0")));
        }
        let (q, r) = self.div_rem(divisor);
        if !Zero::is_zero(&r) {
            return Err(LinalgError::ExactDivisionFailure(format!("{self} / {divisor}")));
        }
        Ok(q)
    }
}

/// Square matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(LinalgError::NotSquare { rows: n, row, len: r.len() });
        }
        Ok(Self { rows })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        Self { rows: vec![vec![BigInt::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.rows[i][j] = value;
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    /// Copy with row `k` and column `k` removed.
    pub fn without(&self, k: usize) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, r)| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn det(&self) -> BigInt {
        det_bareiss(self)
    }
}

/// Exact determinant by fraction-free elimination.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    // Every division in Bareiss elimination over Z is exact, so a failure
    // here can only be a bug in the elimination itself.
    bareiss_det(m.rows.clone()).expect("Bareiss division over Z is exact")
}

/// Invariant factors `d1 | d2 | ... | dn` of a square integer matrix.
///
/// All factors are nonnegative; zeros (if any) come last. The cokernel of the
/// matrix is `Z/d1 + ... + Z/dn`.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.size();
    let mut a = m.rows.clone();
    let mut diag = Vec::with_capacity(n);

    for t in 0..n {
        // smallest nonzero entry of the trailing block
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            diag.extend(std::iter::repeat_n(BigInt::zero(), n - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in (t + 1)..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in (t + 1)..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is smaller than the pivot; move it into place
                let (pi, pj) = min_abs_in_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad = ((t + 1)..n).find(|&i| {
                ((t + 1)..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero())
            });
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let n = a.len();
    let mut best = (t, t);
    let cells = (t..n).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
    for (i, j) in cells {
        if !a[i][j].is_zero() && a[i][j].abs() < a[best.0][best.1].abs() {
            best = (i, j);
        }
    }
    best
}

impl fmt::Display for IntMatrix {
    /// Text format: the size on the first line, then one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size())?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows = parse_matrix_text(s, |tok| {
            tok.parse::<BigInt>()
                .map_err(|_| LinalgError::Parse(format!("bad integer entry {tok:?}")))
        })?;
        Self::new(rows)
    }
}

/// Shared reader for the `n` + `n` rows text layout.
pub(crate) fn parse_matrix_text<T>(
    s: &str,
    mut entry: impl FnMut(&str) -> Result<T, LinalgError>,
) -> Result<Vec<Vec<T>>, LinalgError> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| LinalgError::Parse("empty matrix text".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| LinalgError::Parse(format!("bad size line {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for line in lines {
        let row = line.split_whitespace().map(&mut entry).collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(LinalgError::NotSquare { rows: n, row: rows.len(), len: row.len() });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(LinalgError::Parse(format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * m[0][j] * cofactor_det(&minor);
        }
        total
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_bareiss(&IntMatrix::from_i64(&[[3]]).unwrap()), BigInt::from(3));
        assert_eq!(det_bareiss(&IntMatrix::identity(5)), BigInt::from(1));
        assert_eq!(det_bareiss(&IntMatrix::zeros(0)), BigInt::from(1));
        let m = IntMatrix::from_i64(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(det_bareiss(&m), BigInt::from(-1));
        let m = IntMatrix::from_i64(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(det_bareiss(&m), BigInt::from(0));
    }

    #[test]
    fn smith_examples() {
        let m = IntMatrix::from_i64(&[[6, -3], [-3, 6]]).unwrap();
        assert_eq!(smith_normal_form(&m), big(&[3, 9]));
        assert_eq!(smith_normal_form(&IntMatrix::identity(4)), big(&[1, 1, 1, 1]));
        assert_eq!(smith_normal_form(&IntMatrix::zeros(2)), big(&[0, 0]));
        let m = IntMatrix::from_i64(&[[2, 0], [0, 3]]).unwrap();
        assert_eq!(smith_normal_form(&m), big(&[1, 6]));
        let m = IntMatrix::from_i64(&[[2, 4], [4, 8]]).unwrap();
        assert_eq!(smith_normal_form(&m), big(&[2, 0]));
    }

    #[test]
    fn text_format() {
        let m: IntMatrix = "2\n6 -3\n-3 6\n".parse().unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[[6, -3], [-3, 6]]).unwrap());
        assert_eq!(m.to_string(), "2\n6 -3\n-3 6\n");
        assert!("2\n1 2\n3\n".parse::<IntMatrix>().is_err());
        assert!("2\n1 x\n3 4\n".parse::<IntMatrix>().is_err());
    }

    fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, n), n)
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(m in square(5)) {
            let im = IntMatrix::from_i64(&m).unwrap();
            prop_assert_eq!(det_bareiss(&im), BigInt::from(cofactor_det(&m)));
        }

        #[test]
        fn smith_factors_multiply_to_det(m in square(6)) {
            let im = IntMatrix::from_i64(&m).unwrap();
            let det = det_bareiss(&im);
            let snf = smith_normal_form(&im);
            prop_assert_eq!(snf.len(), m.len());
            for w in snf.windows(2) {
                prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
            }
            if !det.is_zero() {
                let prod = snf.iter().fold(BigInt::one(), |acc, d| acc * d);
                prop_assert_eq!(prod, det.abs());
            } else {
                prop_assert!(snf.iter().any(|d| d.is_zero()));
            }
        }
    }
}
