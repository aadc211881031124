//! Fraction-free (Bareiss) elimination for small overdetermined systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// Columns are linearly dependent.
    Singular,
    /// No exact solution: the residual is nonzero.
    Inconsistent,
}

/// Solves `A x = b` exactly for `A` with `rows ≥ cols` and full column rank.
///
/// Each row is scaled to integers, eliminated with Bareiss' fraction-free
/// update, and every surplus equation is checked for consistency.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>, SolveError> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, |r| r.len());
    if cols == 0 {
        return if b.iter().all(Zero::is_zero) {
            Ok(Vec::new())
        } else {
            Err(SolveError::Inconsistent)
        };
    }
    // Integer augmented matrix.
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let l = row
                .iter()
                .chain(std::iter::once(rhs))
                .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            row.iter()
                .chain(std::iter::once(rhs))
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..cols {
        let piv = (k..rows).find(|&i| !m[i][k].is_zero()).ok_or(SolveError::Singular)?;
        m.swap(k, piv);
        for i in k + 1..rows {
            for j in k + 1..=cols {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if (cols..rows).any(|i| !m[i][cols].is_zero()) {
        return Err(SolveError::Inconsistent);
    }
    let mut x = vec![BigRational::zero(); cols];
    for k in (0..cols).rev() {
        let mut acc = BigRational::from_integer(m[k][cols].clone());
        for j in k + 1..cols {
            acc -= BigRational::from_integer(m[k][j].clone()) * &x[j];
        }
        x[k] = acc / BigRational::from_integer(m[k][k].clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_system() {
        let a = vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(3, 1)]];
        let b = vec![r(3, 1), r(5, 1)];
        assert_eq!(solve_exact(&a, &b).unwrap(), vec![r(4, 5), r(7, 5)]);
    }

    #[test]
    fn overdetermined_consistent_and_not() {
        let a = vec![
            vec![r(1, 2), r(0, 1)],
            vec![r(0, 1), r(1, 3)],
            vec![r(1, 1), r(1, 1)],
        ];
        let x = solve_exact(&a, &[r(1, 1), r(1, 1), r(5, 1)]).unwrap();
        assert_eq!(x, vec![r(2, 1), r(3, 1)]);
        assert_eq!(
            solve_exact(&a, &[r(1, 1), r(1, 1), r(6, 1)]),
            Err(SolveError::Inconsistent)
        );
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert_eq!(solve_exact(&a, &[r(1, 1), r(2, 1)]), Err(SolveError::Singular));
    }

    #[test]
    fn needs_row_swap() {
        let a = vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)], vec![r(1, 1), r(1, 1)]];
        let x = solve_exact(&a, &[r(-2, 1), r(7, 3), r(1, 3)]).unwrap();
        assert_eq!(x, vec![r(7, 3), r(-2, 1)]);
    }
}
