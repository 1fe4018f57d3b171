use std::fmt;
use std::str::FromStr;

use super::bareiss::bareiss_det;
use super::matrix::{parse_matrix_text, IntMatrix};
use super::poly::PolyZ;
use super::LinalgError;

/// Square matrix over `Z[b, c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<PolyZ>>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<PolyZ>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(LinalgError::NotSquare { rows: n, row, len: r.len() });
        }
        Ok(Self { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &PolyZ {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: PolyZ) {
        self.rows[i][j] = value;
    }

    pub fn rows(&self) -> &[Vec<PolyZ>] {
        &self.rows
    }

    /// Copy with row `k` and column `k` removed.
    pub fn without(&self, k: usize) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, r)| {
                r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect()
            })
            .collect();
        Self { rows }
    }

    /// Integer matrix obtained by substituting values for `b` and `c`.
    pub fn specialize(&self, b: i64, c: i64) -> IntMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.eval_i64(b, c)).collect())
            .collect();
        IntMatrix::new(rows).expect("square by construction")
    }
}

/// Symbolic determinant by Bareiss elimination over `Z[b, c]`.
pub fn poly_det(m: &PolyMatrix) -> Result<PolyZ, LinalgError> {
    bareiss_det(m.rows.clone())
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size())?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for PolyMatrix {
    type Err = LinalgError;

    /// Same layout as [`IntMatrix`]; entries are polynomial strings without spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_matrix_text(s, str::parse::<PolyZ>)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn diagonal() {
        let m = PolyMatrix::new(vec![
            vec![PolyZ::b(), PolyZ::zero()],
            vec![PolyZ::zero(), PolyZ::c()],
        ])
        .unwrap();
        assert_eq!(poly_det(&m).unwrap().to_string(), "b*c");
    }

    #[test]
    fn parse_and_specialize() {
        let m: PolyMatrix = "2\nb+1 -c\n-c b+1\n".parse().unwrap();
        let det = poly_det(&m).unwrap();
        assert_eq!(det, "(b+1)^2-c^2".parse().unwrap());
        assert_eq!(m.specialize(2, 1).det(), BigInt::from(8));
        assert_eq!(poly_det(&PolyMatrix::new(vec![]).unwrap()).unwrap(), PolyZ::one());
    }
}
