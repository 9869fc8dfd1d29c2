use super::poly::ExactPoly;
use crate::error::{Error, Result};

/// Wronskian determinant of a non-empty sequence of polynomials: the
/// determinant of the l×l matrix whose (i, j) entry is the (i−1)-th
/// derivative of `ps[j]`. Entirely exact.
///
/// Small determinants (l ≤ 4) expand by cofactors; larger ones use
/// fraction-free Bareiss elimination, which keeps every intermediate entry a
/// polynomial (the divisions it performs are exact by construction) and so
/// avoids the coefficient blow-up of naive elimination.
///
/// ```
/// use xhermite::exactpoly::{wronskian, ExactPoly};
///
/// let h2 = ExactPoly::from_integers(&[-2, 0, 4]);      // H₂ = 4x² − 2
/// let h3 = ExactPoly::from_integers(&[0, -12, 0, 8]);  // H₃ = 8x³ − 12x
/// let w = wronskian(&[h2, h3]).unwrap();               // H₂H₃′ − H₂′H₃
/// assert_eq!(w, ExactPoly::from_integers(&[24, 0, 0, 0, 32]));
/// ```
pub fn wronskian(ps: &[ExactPoly]) -> Result<ExactPoly> {
    if ps.is_empty() {
        return Err(Error::EmptyWronskian);
    }
    let l = ps.len();
    let mut rows: Vec<Vec<ExactPoly>> = Vec::with_capacity(l);
    rows.push(ps.to_vec());
    for i in 1..l {
        let prev = &rows[i - 1];
        rows.push(prev.iter().map(ExactPoly::derivative).collect());
    }
    if l <= 4 {
        Ok(det_cofactor(&rows))
    } else {
        Ok(det_bareiss(rows))
    }
}

/// Cofactor expansion along the first row.
fn det_cofactor(m: &[Vec<ExactPoly>]) -> ExactPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = ExactPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<ExactPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &det_cofactor(&minor);
        det = if j % 2 == 0 { &det + &term } else { &det - &term };
    }
    det
}

/// One-step fraction-free (Bareiss) elimination with row pivoting.
fn det_bareiss(mut m: Vec<Vec<ExactPoly>>) -> ExactPoly {
    let n = m.len();
    let mut sign = 1i64;
    let mut prev = ExactPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return ExactPoly::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = ExactPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::replace(&mut m[n - 1][n - 1], ExactPoly::zero());
    if sign < 0 {
        -&det
    } else {
        det
    }
}
