//! Exact linear algebra over ℚ: reduced row echelon form, kernels, solves.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::report::ValidationReport;
use crate::scalar::{Rational, Vector};
use crate::tensor::MultiMap;

/// Reduced row echelon form of a dense `rows × ncols` matrix.
/// Returns the reduced rows and the pivot column of each nonzero row.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Scales a vector to primitive integer coordinates whose first nonzero
/// entry is positive.
fn primitive(v: Vector) -> Vector {
    let mut l = BigInt::one();
    for x in &v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map(|x| x.signum()).unwrap_or_else(BigInt::one);
    ints.into_iter()
        .map(|x| Rational::from_integer(&x / &g * &sign))
        .collect()
}

/// Basis of `{x : A x = 0}` for `A` given by rows. One vector per free
/// column, in increasing column order, scaled to primitive integers.
pub fn nullspace_rows(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            primitive(v)
        })
        .collect()
}

/// Kernel of a linear map, as coordinate vectors in its input space.
pub fn nullspace(f: &MultiMap) -> Vec<Vector> {
    assert_eq!(f.arity(), 1, "nullspace expects a linear map");
    nullspace_rows(&f.to_rows(), f.inputs()[0].dim)
}

/// Some solution of `A x = b`, or `None` when inconsistent.
pub fn solve(rows: &[Vector], ncols: usize, b: &[Rational]) -> Option<Vector> {
    assert_eq!(rows.len(), b.len());
    let aug: Vec<Vector> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Coordinates of `v` in the (linearly independent) `basis`.
pub fn coordinates(basis: &[Vector], v: &[Rational]) -> Option<Vector> {
    let n = v.len();
    let rows: Vec<Vector> = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    let x = solve(&rows, basis.len(), v)?;
    Some(x)
}

/// Inverse of a square matrix given by rows.
pub fn inverse(rows: &[Vector]) -> Option<Vec<Vector>> {
    let n = rows.len();
    let aug: Vec<Vector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves a homogeneous system given implicitly by a linear `residual` in
/// `n` unknowns. The residual is evaluated on unit vectors to recover its
/// matrix; returns a basis of the solution space.
pub fn solve_linear_family(n: usize, mut residual: impl FnMut(&[Rational]) -> Vector) -> Vec<Vector> {
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            residual(&e)
        })
        .collect();
    let m = cols.first().map_or(0, Vec::len);
    let rows: Vec<Vector> = (0..m).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    nullspace_rows(&rows, n)
}

/// Solves `f(x) = 0` for an affine `f` in `n` unknowns. Returns a particular
/// solution and a kernel basis, or `None` when inconsistent.
pub fn solve_affine_family(n: usize, mut f: impl FnMut(&[Rational]) -> Vector) -> Option<(Vector, Vec<Vector>)> {
    let c = f(&vec![Rational::zero(); n]);
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            crate::scalar::sub(&f(&e), &c)
        })
        .collect();
    let rows: Vec<Vector> = (0..c.len()).map(|r| cols.iter().map(|col| col[r].clone()).collect()).collect();
    let b = crate::scalar::neg(&c);
    let x = solve(&rows, n, &b)?;
    Some((x, nullspace_rows(&rows, n)))
}

/// Kernel of a linear map whose values are validation reports, such as a
/// validator run on a structure depending linearly on `n` parameters. Each
/// `(condition, indices, component)` of a violation is one equation.
pub fn report_kernel(n: usize, mut f: impl FnMut(&[Rational]) -> ValidationReport) -> Vec<Vector> {
    let mut keys: BTreeMap<(String, Vec<usize>, usize), usize> = BTreeMap::new();
    let cols: Vec<Vec<((String, Vec<usize>, usize), Rational)>> = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            let mut col = Vec::new();
            for v in f(&e).violations {
                for (c, x) in v.difference.iter().enumerate() {
                    if !x.is_zero() {
                        col.push(((v.condition.clone(), v.indices.clone(), c), x.clone()));
                    }
                }
            }
            for (k, _) in &col {
                let next = keys.len();
                keys.entry(k.clone()).or_insert(next);
            }
            col
        })
        .collect();
    let mut rows = vec![vec![Rational::zero(); n]; keys.len()];
    for (i, col) in cols.into_iter().enumerate() {
        for (k, x) in col {
            rows[keys[&k]][i] += x;
        }
    }
    nullspace_rows(&rows, n)
}

/// Dense matrix in row-major `rows[i][j]` form.
pub type Matrix = Vec<Vector>;

pub fn mat_zero(r: usize, c: usize) -> Matrix {
    vec![vec![Rational::zero(); c]; r]
}

pub fn mat_identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// `a · b` where `a` is `r × k` and `b` is `k × c`; `k` is `b.len()`.
pub fn mat_mul(a: &[Vector], b: &[Vector], c: usize) -> Matrix {
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); c];
            for (x, brow) in row.iter().zip(b) {
                if !x.is_zero() {
                    for (o, y) in out.iter_mut().zip(brow) {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn mat_sub(a: &[Vector], b: &[Vector]) -> Matrix {
    a.iter().zip(b).map(|(x, y)| crate::scalar::sub(x, y)).collect()
}

pub fn mat_add(a: &[Vector], b: &[Vector]) -> Matrix {
    a.iter().zip(b).map(|(x, y)| crate::scalar::add(x, y)).collect()
}

pub fn flatten(a: &[Vector]) -> Vector {
    a.iter().flatten().cloned().collect()
}

pub fn unflatten(v: &[Rational], r: usize, c: usize) -> Matrix {
    assert_eq!(v.len(), r * c);
    (0..r).map(|i| v[i * c..(i + 1) * c].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::tensor::Space;

    #[test]
    fn identity_has_trivial_kernel() {
        let id = MultiMap::identity(&Space::new("V", 3));
        assert!(nullspace(&id).is_empty());
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let s = Space::new("V", 3);
        let z = MultiMap::zeros(vec![s.clone()], s.clone());
        let ns = nullspace(&z);
        assert_eq!(ns, (0..3).map(|i| s.basis(i)).collect::<Vec<_>>());
    }

    #[test]
    fn hand_reduced_kernel() {
        let s = Space::new("V", 2);
        let f = MultiMap::from_rows(&s, &s, &[vec![int(1), int(1)], vec![int(0), int(0)]]);
        // x + y = 0 with y free  ⇒  (−1, 1), normalised to a positive leading entry
        assert_eq!(nullspace(&f), vec![vec![int(1), int(-1)]]);
    }

    #[test]
    fn solve_and_inverse() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let x = solve(&a, 2, &[int(3), int(2)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(inverse(&[vec![int(1), int(1)], vec![int(2), int(2)]]).is_none());
        assert!(solve(&[vec![int(0)]], 1, &[int(1)]).is_none());
    }

    #[test]
    fn family_solve_recovers_kernel() {
        // x0 + x1 = 0, x2 free
        let ns = solve_linear_family(3, |x| vec![&x[0] + &x[1]]);
        assert_eq!(ns, vec![vec![int(1), int(-1), int(0)], vec![int(0), int(0), int(1)]]);
    }

    #[test]
    fn mat_mul_rectangular() {
        let a = vec![vec![int(1), int(2), int(3)]];
        let b = vec![vec![int(1)], vec![int(0)], vec![int(-1)]];
        assert_eq!(mat_mul(&a, &b, 1), vec![vec![int(-2)]]);
    }
}
