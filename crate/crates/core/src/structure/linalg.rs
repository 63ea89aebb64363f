//! Dense exact linear algebra over a [`Coeff`] field. Matrices act on
//! column vectors; `m[i][j]` is row `i`, column `j`.

use crate::scalar::Coeff;
use crate::Rational;

pub type Mat<K> = Vec<Vec<K>>;

pub fn zeros<K: Coeff>(r: usize, c: usize) -> Mat<K> {
    vec![vec![K::zero(); c]; r]
}

pub fn identity<K: Coeff>(n: usize) -> Mat<K> {
    (0..n).map(|i| (0..n).map(|j| if i == j { K::one() } else { K::zero() }).collect()).collect()
}

pub fn lift<K: Coeff>(m: &Mat<Rational>) -> Mat<K> {
    m.iter().map(|r| r.iter().map(|c| K::from_ratio(c.numer(), c.denom())).collect()).collect()
}

pub fn lift_vec<K: Coeff>(v: &[Rational]) -> Vec<K> {
    v.iter().map(|c| K::from_ratio(c.numer(), c.denom())).collect()
}

pub fn cols<K>(m: &Mat<K>) -> usize {
    m.first().map_or(0, |r: &Vec<K>| r.len())
}

pub fn matmul<K: Coeff>(a: &Mat<K>, b: &Mat<K>) -> Mat<K> {
    let (n, k, m) = (a.len(), b.len(), cols(b));
    let mut out = zeros::<K>(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j].clone() + a[i][l].clone() * b[l][j].clone();
            }
        }
    }
    out
}

pub fn matvec<K: Coeff>(a: &Mat<K>, v: &[K]) -> Vec<K> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(K::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
        .collect()
}

pub fn dot<K: Coeff>(a: &[K], b: &[K]) -> K {
    a.iter().zip(b).fold(K::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `u^T m v`.
pub fn bilinear<K: Coeff>(m: &Mat<K>, u: &[K], v: &[K]) -> K {
    dot(u, &matvec(m, v))
}

pub fn transpose<K: Clone>(a: &Mat<K>) -> Mat<K> {
    (0..cols(a)).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn add<K: Coeff>(a: &Mat<K>, b: &Mat<K>) -> Mat<K> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() + y.clone()).collect()).collect()
}

pub fn sub<K: Coeff>(a: &Mat<K>, b: &Mat<K>) -> Mat<K> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() - y.clone()).collect()).collect()
}

pub fn scale<K: Coeff>(a: &Mat<K>, c: &K) -> Mat<K> {
    a.iter().map(|r| r.iter().map(|x| x.clone() * c.clone()).collect()).collect()
}

pub fn is_zero<K: Coeff>(a: &Mat<K>) -> bool {
    a.iter().flatten().all(|x| x.is_zero())
}

pub fn vec_is_zero<K: Coeff>(v: &[K]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form and pivot columns.
pub fn rref<K: Coeff>(a: &Mat<K>) -> (Mat<K>, Vec<usize>) {
    let mut m = a.clone();
    let (rows, ncols) = (m.len(), cols(&m));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = K::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<K: Coeff>(a: &Mat<K>) -> usize {
    rref(a).1.len()
}

/// Basis of `{x : a x = 0}`.
pub fn nullspace<K: Coeff>(a: &Mat<K>, ncols: usize) -> Vec<Vec<K>> {
    if a.is_empty() {
        return identity(ncols);
    }
    let (m, pivots) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![K::zero(); ncols];
            v[f] = K::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b`, if one exists.
pub fn solve<K: Coeff>(a: &Mat<K>, b: &[K], ncols: usize) -> Option<Vec<K>> {
    if a.is_empty() {
        return Some(vec![K::zero(); ncols]);
    }
    let aug: Mat<K> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let (m, pivots) = rref(&aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![K::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][ncols].clone();
    }
    Some(x)
}

pub fn inverse<K: Coeff>(a: &Mat<K>) -> Option<Mat<K>> {
    let n = a.len();
    let aug: Mat<K> = a.iter().zip(identity::<K>(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<K: Coeff>(a: &Mat<K>) -> K {
    let mut m = a.clone();
    let n = m.len();
    let mut d = K::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return K::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d = d * m[c][c].clone();
        for i in c + 1..n {
            let f = m[i][c].clone() / m[c][c].clone();
            for j in c..n {
                let s = f.clone() * m[c][j].clone();
                m[i][j] = m[i][j].clone() - s;
            }
        }
    }
    d
}

/// A maximal independent subset of `vs`, in order.
pub fn independent<K: Coeff>(vs: &[Vec<K>]) -> Vec<Vec<K>> {
    let mut out: Vec<Vec<K>> = Vec::new();
    for v in vs {
        let mut trial = out.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            out = trial;
        }
    }
    out
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<K: Coeff>(basis: &[Vec<K>], v: &[K]) -> bool {
    let mut m = basis.to_vec();
    let r = rank(&m);
    m.push(v.to_vec());
    rank(&m) == r
}

/// Coordinates of `v` in the basis `basis` (vectors as rows), if `v` lies in its span.
pub fn coords_in<K: Coeff>(basis: &[Vec<K>], v: &[K]) -> Option<Vec<K>> {
    let a = transpose(&basis.to_vec());
    if basis.is_empty() {
        return if vec_is_zero(v) { Some(vec![]) } else { None };
    }
    solve(&a, v, basis.len())
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersect<K: Coeff>(a: &[Vec<K>], b: &[Vec<K>]) -> Vec<Vec<K>> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let n = a[0].len();
    // x·a - y·b = 0
    let mut m = zeros::<K>(n, a.len() + b.len());
    for (j, v) in a.iter().enumerate() {
        for i in 0..n {
            m[i][j] = v[i].clone();
        }
    }
    for (j, v) in b.iter().enumerate() {
        for i in 0..n {
            m[i][a.len() + j] = -v[i].clone();
        }
    }
    let sols = nullspace(&m, a.len() + b.len());
    let vs: Vec<Vec<K>> = sols
        .iter()
        .map(|s| (0..n).map(|i| (0..a.len()).fold(K::zero(), |acc, j| acc + s[j].clone() * a[j][i].clone())).collect())
        .collect();
    independent(&vs)
}

/// Eigenspace `ker(a - λ)`.
pub fn eigenspace<K: Coeff>(a: &Mat<K>, lambda: &K) -> Vec<Vec<K>> {
    let n = a.len();
    let shifted = sub(a, &scale(&identity(n), lambda));
    nullspace(&shifted, n)
}

/// `a^k`.
pub fn matpow<K: Coeff>(a: &Mat<K>, k: u32) -> Mat<K> {
    (0..k).fold(identity(a.len()), |acc, _| matmul(&acc, a))
}

pub fn commutator<K: Coeff>(a: &Mat<K>, b: &Mat<K>) -> Mat<K> {
    sub(&matmul(a, b), &matmul(b, a))
}

pub fn is_nilpotent<K: Coeff>(a: &Mat<K>) -> bool {
    is_zero(&matpow(a, a.len() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn m(rows: &[&[i64]]) -> Mat<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn solve_and_invert() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), identity(2));
        assert_eq!(det(&a), rat(1, 1));
        assert_eq!(solve(&a, &[rat(3, 1), rat(2, 1)], 2).unwrap(), vec![rat(1, 1), rat(1, 1)]);
        let sing = m(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&sing).is_none());
        assert_eq!(rank(&sing), 1);
        assert_eq!(nullspace(&sing, 2), vec![vec![rat(-2, 1), rat(1, 1)]]);
        assert!(solve(&sing, &[rat(1, 1), rat(0, 1)], 2).is_none());
    }

    #[test]
    fn subspaces() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(intersect(&a, &b), m(&[&[0, 1, 0]]));
        assert!(in_span(&a, &[rat(2, 1), rat(3, 1), rat(0, 1)]));
        assert_eq!(coords_in(&a, &[rat(2, 1), rat(3, 1), rat(0, 1)]).unwrap(), vec![rat(2, 1), rat(3, 1)]);
        assert!(is_nilpotent(&m(&[&[0, 1], &[0, 0]])));
    }
}
