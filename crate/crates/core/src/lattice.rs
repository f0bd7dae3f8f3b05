//! Integer kernels of small integer matrices via unimodular column reduction.

use crate::error::MixError;

fn checked(v: Option<i128>) -> Result<i128, MixError> {
    v.ok_or(MixError::Overflow)
}

/// Z-basis of `{x ∈ Z^cols : A x = 0}` for the integer matrix `rows`.
///
/// Column operations are applied to `A` and mirrored on an identity matrix;
/// the mirrored columns paired with annihilated columns span the kernel.
pub fn integer_kernel(rows: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>, MixError> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    // a is m x cols, u is cols x cols; columns move together.
    let swap_cols = |m: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut piv = 0;
    for i in 0..a.len() {
        if piv == cols {
            break;
        }
        loop {
            let best = (piv..cols).filter(|&j| a[i][j] != 0).min_by_key(|&j| a[i][j].abs());
            let Some(b) = best else { break };
            swap_cols(&mut a, piv, b);
            swap_cols(&mut u, piv, b);
            let mut done = true;
            for j in piv + 1..cols {
                if a[i][j] == 0 {
                    continue;
                }
                let q = a[i][j].div_euclid(a[i][piv]);
                for row in a.iter_mut() {
                    row[j] = checked(row[j].checked_sub(checked(q.checked_mul(row[piv]))?))?;
                }
                for row in u.iter_mut() {
                    row[j] = checked(row[j].checked_sub(checked(q.checked_mul(row[piv]))?))?;
                }
                if a[i][j] != 0 {
                    done = false;
                }
            }
            if done {
                piv += 1;
                break;
            }
        }
    }
    let mut basis = Vec::new();
    for j in piv..cols {
        let mut v = Vec::with_capacity(cols);
        for row in &u {
            v.push(i64::try_from(row[j]).map_err(|_| MixError::Overflow)?);
        }
        basis.push(normalize_sign(v));
    }
    basis.sort();
    Ok(basis)
}

/// Divides by the content and makes the first nonzero entry positive.
pub fn normalize_sign(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(rows: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let rows = vec![vec![0, 1, -1], vec![-1, 1, -1]];
        let k = integer_kernel(&rows, 3).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![0, 1, 1]);
        let rows = vec![vec![2, 4, 6]];
        let k = integer_kernel(&rows, 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(apply(&rows, v), vec![0]);
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y = 0 has kernel generated by (2, -1) over Z, not (4, -2).
        let k = integer_kernel(&[vec![1, 2]], 2).unwrap();
        assert_eq!(k, vec![vec![2, -1]]);
        assert!(integer_kernel(&[vec![1, 0], vec![0, 1]], 2).unwrap().is_empty());
    }
}
