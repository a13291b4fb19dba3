//! Small dense integer/rational matrix routines used by the lattice code.
//!
//! Everything here is exact. Matrices are tiny (at most 9x9), so plain
//! `Vec<Vec<_>>` storage is enough.

use num_rational::Ratio;

pub type Rational = Ratio<i128>;
pub type IntMatrix = Vec<Vec<i64>>;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Adjugate matrix, so that `adj * m = det(m) * I`.
pub fn adjugate(m: &IntMatrix) -> Vec<Vec<i128>> {
    let n = m.len();
    let mut adj = vec![vec![0i128; n]; n];
    if n == 1 {
        adj[0][0] = 1;
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let minor: IntMatrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * determinant(&minor);
        }
    }
    adj
}

/// Upper-triangular quadratic form decomposition used by Fincke-Pohst.
///
/// For a positive definite `g`, returns `q` with
/// `x^T g x = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2`.
/// Returns `None` if some pivot is not strictly positive.
pub fn completed_squares(g: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    let n = g.len();
    let mut q: Vec<Vec<Rational>> = g
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x as i128)).collect())
        .collect();
    let zero = Rational::from_integer(0);
    for i in 0..n {
        if q[i][i] <= zero {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let delta = q[k][i] * q[i][l];
                q[k][l] -= delta;
            }
        }
    }
    // lower triangle holds scratch values; clear it so callers see a clean form
    for (i, row) in q.iter_mut().enumerate() {
        for cell in row.iter_mut().take(i) {
            *cell = zero;
        }
    }
    Some(q)
}

/// Z-basis of the integer kernel `{x in Z^n : a x = 0}`.
///
/// Column operations on `a` are mirrored on an identity matrix; the columns
/// that end up to the right of the echelon pivots span the kernel. Since the
/// transformation is unimodular the result is saturated in `Z^n`.
pub fn integer_kernel(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = a.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    // columns of u, stored as rows for convenience
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let rows = m.len();
    let mut pivot = 0usize;
    for r in 0..rows {
        if pivot >= n {
            break;
        }
        loop {
            // smallest nonzero |entry| among the unreduced columns of row r
            let best = (pivot..n).filter(|&c| m[r][c] != 0).min_by_key(|&c| m[r][c].abs());
            let Some(best) = best else { break };
            swap_cols(&mut m, &mut u, pivot, best);
            let p = m[r][pivot];
            let mut done = true;
            for c in pivot + 1..n {
                if m[r][c] != 0 {
                    let f = m[r][c].div_euclid(p);
                    add_col(&mut m, &mut u, c, pivot, -f);
                    if m[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    u[pivot..]
        .iter()
        .map(|col| col.iter().map(|&x| x as i64).collect())
        .collect()
}

fn swap_cols(m: &mut [Vec<i128>], u: &mut [Vec<i128>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

// column c += f * column src
fn add_col(m: &mut [Vec<i128>], u: &mut [Vec<i128>], c: usize, src: usize, f: i128) {
    for row in m.iter_mut() {
        row[c] += f * row[src];
    }
    let s = u[src].clone();
    for (x, y) in u[c].iter_mut().zip(s) {
        *x += f * y;
    }
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&vec![vec![2, 1], vec![1, 2]]), 3);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&vec![vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(determinant(&vec![]), 1);
    }

    #[test]
    fn adjugate_inverts() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let adj = adjugate(&m);
        let det = determinant(&m);
        assert_eq!(det, 4);
        for i in 0..3 {
            for j in 0..3 {
                let s: i128 = (0..3).map(|k| adj[i][k] * m[k][j] as i128).sum();
                assert_eq!(s, if i == j { det } else { 0 });
            }
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y + 6z = 0 has kernel of rank 2 and determinant-1 lattice in the plane
        let k = integer_kernel(&[vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 4 * v[1] + 6 * v[2], 0);
        }
        // saturation: some 2x2 minor is +-1
        let minors = [
            k[0][0] * k[1][1] - k[0][1] * k[1][0],
            k[0][0] * k[1][2] - k[0][2] * k[1][0],
            k[0][1] * k[1][2] - k[0][2] * k[1][1],
        ];
        let g = minors.iter().fold(0i64, |g, &m| gcd(g, m.abs()));
        assert_eq!(g, 1);
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..2000i128 {
            let s = isqrt(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n);
        }
    }

    #[test]
    fn completed_squares_reproduces_form() {
        let g = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let q = completed_squares(&g).unwrap();
        let x = [3i128, -2, 5];
        let direct: i128 = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| g[i][j] as i128 * x[i] * x[j])
            .sum();
        let mut total = Rational::from_integer(0);
        for i in 0..3 {
            let mut t = Rational::from_integer(x[i]);
            for j in i + 1..3 {
                t += q[i][j] * Rational::from_integer(x[j]);
            }
            total += q[i][i] * t * t;
        }
        assert_eq!(total, Rational::from_integer(direct));
        assert!(completed_squares(&vec![vec![1, 2], vec![2, 1]]).is_none());
    }
}
