//! Brute-force reference computations. Each defining identity is evaluated on
//! every unit unknown to assemble its coefficient matrix, which is then
//! reduced by a plain Gauss-Jordan elimination written here. Nothing below
//! calls the library's linear algebra, derivation or d-derivation code; the
//! library is used only to read structure constants.

use num_rational::BigRational;
use num_traits::{One, Zero};

use fullgraph::LieAlgebra;

type Q = BigRational;

/// Structure constants `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone)]
pub struct Constants {
    pub n: usize,
    pub c: Vec<Vec<Vec<Q>>>,
}

impl Constants {
    pub fn of(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let c = (0..n)
            .map(|i| (0..n).map(|j| g.basis_bracket(i, j).to_vec()).collect())
            .collect();
        Constants { n, c }
    }

    fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.n];
        for (xi, row) in x.iter().zip(&self.c) {
            if xi.is_zero() {
                continue;
            }
            for (yj, cij) in y.iter().zip(row) {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (o, c) in out.iter_mut().zip(cij) {
                    *o += &xy * c;
                }
            }
        }
        out
    }
}

/// Square matrix stored row-major, `m[r][c]`.
type Mat = Vec<Vec<Q>>;

fn apply(m: &Mat, x: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(x).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

fn compose(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(Q::zero(), |acc, k| acc + &a[r][k] * &b[k][c]))
                .collect()
        })
        .collect()
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    let ab = compose(a, b);
    let ba = compose(b, a);
    ab.into_iter()
        .zip(ba)
        .map(|(r1, r2)| r1.into_iter().zip(r2).map(|(x, y)| x - y).collect())
        .collect()
}

fn unflatten(n: usize, v: &[Q]) -> Mat {
    v.chunks(n).map(|row| row.to_vec()).collect()
}

fn flatten(m: &Mat) -> Vec<Q> {
    m.iter().flatten().cloned().collect()
}

fn unit(len: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); len];
    v[i] = Q::one();
    v
}

/// Gauss-Jordan elimination in place; returns pivot columns.
fn eliminate(rows: &mut Vec<Vec<Q>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn rank(mut rows: Vec<Vec<Q>>, cols: usize) -> usize {
    eliminate(&mut rows, cols).len()
}

/// Solution space of the homogeneous system whose *columns* are `columns`
/// (one column per unknown).
fn kernel_of_columns(columns: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let unknowns = columns.len();
    let equations = columns.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Q>> = (0..equations)
        .map(|e| columns.iter().map(|col| col[e].clone()).collect())
        .filter(|row: &Vec<Q>| row.iter().any(|x| !x.is_zero()))
        .collect();
    let pivots = eliminate(&mut rows, unknowns);
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); unknowns];
            v[f] = Q::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Coordinates of `target` in the independent vectors `basis`.
fn coordinates(basis: &[Vec<Q>], target: &[Q]) -> Vec<Q> {
    let k = basis.len();
    let mut rows: Vec<Vec<Q>> = (0..target.len())
        .map(|e| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[e].clone()).collect();
            row.push(target[e].clone());
            row
        })
        .collect();
    let pivots = eliminate(&mut rows, k + 1);
    assert!(!pivots.contains(&k), "target is outside the span");
    let mut out = vec![Q::zero(); k];
    for (row, &p) in rows.iter().zip(&pivots) {
        out[p] = row[k].clone();
    }
    out
}

fn leibniz_residual(g: &Constants, d: &Mat) -> Vec<Q> {
    let n = g.n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let ei = unit(n, i);
            let ej = unit(n, j);
            let lhs = apply(d, &g.c[i][j]);
            let a = g.bracket(&apply(d, &ei), &ej);
            let b = g.bracket(&ei, &apply(d, &ej));
            out.extend(
                lhs.into_iter()
                    .zip(a.into_iter().zip(b))
                    .map(|(l, (a, b))| l - a - b),
            );
        }
    }
    out
}

/// Basis of `Der(G)` as matrices.
pub fn derivations(g: &Constants) -> Vec<Mat> {
    let n = g.n;
    let columns: Vec<Vec<Q>> = (0..n * n)
        .map(|u| leibniz_residual(g, &unflatten(n, &unit(n * n, u))))
        .collect();
    kernel_of_columns(&columns)
        .into_iter()
        .map(|v| unflatten(n, &v))
        .collect()
}

/// Dimensions recomputed from scratch for one algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub der: usize,
    pub d_space: usize,
    pub inner_d: usize,
    pub d_center: usize,
    pub der_full_graph: usize,
}

pub fn dims(g: &Constants) -> Dims {
    let n = g.n;
    let der = derivations(g);
    let m = der.len();
    let der_flat: Vec<Vec<Q>> = der.iter().map(flatten).collect();
    // [D_a, D_b] in the basis of Der(G)
    let structure: Vec<Vec<Vec<Q>>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| coordinates(&der_flat, &flatten(&commutator(&der[a], &der[b]))))
                .collect()
        })
        .collect();

    // cocycle identity for L: n x m, column c = L(D_c); unknown index s*m + c
    let cocycle_residual = |l: &Mat| -> Vec<Q> {
        let column = |c: usize| -> Vec<Q> { l.iter().map(|row| row[c].clone()).collect() };
        let l_of = |coords: &[Q]| -> Vec<Q> {
            l.iter()
                .map(|row| {
                    row.iter()
                        .zip(coords)
                        .fold(Q::zero(), |acc, (x, y)| acc + x * y)
                })
                .collect()
        };
        let mut out = Vec::new();
        for a in 0..m {
            for b in (a + 1)..m {
                let lhs = l_of(&structure[a][b]);
                let x = apply(&der[a], &column(b));
                let y = apply(&der[b], &column(a));
                out.extend(
                    lhs.into_iter()
                        .zip(x.into_iter().zip(y))
                        .map(|(l, (x, y))| l - x + y),
                );
            }
        }
        out
    };
    let to_l = |v: &[Q]| -> Mat { v.chunks(m).map(|row| row.to_vec()).collect() };
    let columns: Vec<Vec<Q>> = (0..n * m)
        .map(|u| cocycle_residual(&to_l(&unit(n * m, u))))
        .collect();
    let d_space = kernel_of_columns(&columns).len();

    // x ↦ L_x with L_x(D) = -D x, as an (n*m) x n matrix
    let inner_rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let x = unit(n, i);
            let mut l = vec![vec![Q::zero(); m]; n];
            for (c, d) in der.iter().enumerate() {
                for (s, v) in apply(d, &x).into_iter().enumerate() {
                    l[s][c] = -v;
                }
            }
            l.into_iter().flatten().collect()
        })
        .collect();
    let inner_d = rank(inner_rows, n * m);

    let stacked: Vec<Vec<Q>> = der.iter().flat_map(|d| d.iter().cloned()).collect();
    let d_center = n - rank(stacked, n);

    // C(G) on (D_0..D_{m-1}, e_0..e_{n-1})
    let dim = m + n;
    let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let out = &mut c[a][b];
            match (a < m, b < m) {
                (true, true) => out[..m].clone_from_slice(&structure[a][b]),
                (true, false) => {
                    for k in 0..n {
                        out[m + k] = der[a][k][b - m].clone();
                    }
                }
                (false, true) => {
                    for k in 0..n {
                        out[m + k] = -der[b][k][a - m].clone();
                    }
                }
                (false, false) => out[m..].clone_from_slice(&g.c[a - m][b - m]),
            }
        }
    }
    let full_graph = Constants { n: dim, c };
    let der_full_graph = derivations(&full_graph).len();

    Dims {
        der: m,
        d_space,
        inner_d,
        d_center,
        der_full_graph,
    }
}
