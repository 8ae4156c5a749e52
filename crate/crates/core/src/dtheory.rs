//! d-derivations: linear maps `L: Der(G) -> G` with
//! `L([D1, D2]) = D1(L(D2)) - D2(L(D1))`, i.e. 1-cocycles of `Der(G)` with
//! coefficients in `G`.
//!
//! A d-derivation is stored as an `n x m` matrix whose column `j` is `L(D_j)`
//! for the canonical basis `D_0..D_{m-1}` of `Der(G)`.

use num_traits::Zero;
use thiserror::Error;

use crate::lie::{default_names, Derivation, DerivationAlgebra, LieAlgebra, LieError};
use crate::linalg::{axpy, is_zero_vec, zero_vec, Matrix, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DTheoryError {
    #[error("d-derivation has shape {rows}x{cols}, expected {n}x{m}")]
    Shape {
        rows: usize,
        cols: usize,
        n: usize,
        m: usize,
    },
    #[error("matrix is not a derivation of the parent algebra")]
    NotADerivation,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DDerivation {
    pub matrix: Matrix,
}

impl DDerivation {
    /// `L(D_j)`.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.matrix.column(j)
    }

    /// `L(Σ c_j D_j) = Σ c_j L(D_j)`.
    pub fn apply(&self, der_coords: &[Scalar]) -> Vec<Scalar> {
        self.matrix
            .mul_vec(der_coords)
            .expect("coordinates over the Der(G) basis")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Context for computing with d-derivations of one algebra.
#[derive(Debug, Clone)]
pub struct DContext {
    der: DerivationAlgebra,
}

impl DContext {
    pub fn new(g: &LieAlgebra) -> Self {
        DContext {
            der: g.derivation_algebra(),
        }
    }

    pub fn from_derivations(der: DerivationAlgebra) -> Self {
        DContext { der }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.der.parent()
    }

    pub fn derivations(&self) -> &DerivationAlgebra {
        &self.der
    }

    fn n(&self) -> usize {
        self.der.parent().dim()
    }

    fn m(&self) -> usize {
        self.der.dim()
    }

    fn check(&self, l: &DDerivation) -> Result<(), DTheoryError> {
        let (n, m) = (self.n(), self.m());
        if l.matrix.rows() != n || l.matrix.cols() != m {
            return Err(DTheoryError::Shape {
                rows: l.matrix.rows(),
                cols: l.matrix.cols(),
                n,
                m,
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> DDerivation {
        DDerivation {
            matrix: Matrix::zeros(self.n(), self.m()),
        }
    }

    /// Does `l` satisfy the cocycle identity on the basis pair `(D_i, D_j)`?
    fn cocycle_residual(&self, l: &DDerivation, i: usize, j: usize) -> Vec<Scalar> {
        let basis = self.der.basis();
        let lhs = l.apply(self.der.structure(i, j));
        let a = basis[i].apply(&l.column(j));
        let b = basis[j].apply(&l.column(i));
        lhs.iter()
            .zip(a.iter().zip(&b))
            .map(|(x, (y, z))| x - y + z)
            .collect()
    }

    /// Checks the cocycle identity on all basis pairs.
    pub fn is_d_derivation(&self, l: &DDerivation) -> bool {
        if self.check(l).is_err() {
            return false;
        }
        let m = self.m();
        (0..m).all(|i| ((i + 1)..m).all(|j| is_zero_vec(&self.cocycle_residual(l, i, j))))
    }

    /// Checks the cocycle identity on an arbitrary pair of derivations given by
    /// their coordinates.
    pub fn satisfies_cocycle_on(&self, l: &DDerivation, d1: &[Scalar], d2: &[Scalar]) -> bool {
        let m1 = self.der.element(d1);
        let m2 = self.der.element(d2);
        let comm = m1.commutator(&m2).expect("square");
        let Some(comm_coords) = self.der.coordinates(&comm) else {
            return false;
        };
        let lhs = l.apply(&comm_coords);
        let a = m1.mul_vec(&l.apply(d2)).expect("length n");
        let b = m2.mul_vec(&l.apply(d1)).expect("length n");
        lhs.iter()
            .zip(a.iter().zip(&b))
            .all(|(x, (y, z))| (x - y + z).is_zero())
    }

    /// Coefficient matrix of the cocycle identity in the `n * m` entries of an
    /// unknown `L` (row-major, entry `(s, c)` at `s * m + c`).
    fn cocycle_system(&self) -> Matrix {
        let (n, m) = (self.n(), self.m());
        let basis = self.der.basis();
        let pairs = m * m.saturating_sub(1) / 2;
        let mut sys = Matrix::zeros(pairs * n, n * m);
        let mut block = 0;
        for i in 0..m {
            for j in (i + 1)..m {
                let a_ij = self.der.structure(i, j);
                for t in 0..n {
                    let row = block * n + t;
                    // L([D_i, D_j])_t = Σ_k a_ij^k L[t][k]
                    for (k, a) in a_ij.iter().enumerate() {
                        if !a.is_zero() {
                            sys[(row, t * m + k)] += a;
                        }
                    }
                    // - (D_i L(D_j))_t + (D_j L(D_i))_t
                    for s in 0..n {
                        let di = &basis[i].matrix[(t, s)];
                        if !di.is_zero() {
                            sys[(row, s * m + j)] -= di;
                        }
                        let dj = &basis[j].matrix[(t, s)];
                        if !dj.is_zero() {
                            sys[(row, s * m + i)] += dj;
                        }
                    }
                }
                block += 1;
            }
        }
        sys
    }

    /// The inner d-derivation `L_x(D) = -D(x)`.
    pub fn inner_d_derivation(&self, x: &[Scalar]) -> Result<DDerivation, DTheoryError> {
        if x.len() != self.n() {
            return Err(LieError::LengthMismatch {
                expected: self.n(),
                actual: x.len(),
            }
            .into());
        }
        let columns: Vec<Vec<Scalar>> = self
            .der
            .basis()
            .iter()
            .map(|d| d.apply(x).into_iter().map(|v| -v).collect())
            .collect();
        Ok(DDerivation {
            matrix: Matrix::from_columns(self.n(), &columns).map_err(LieError::from)?,
        })
    }

    /// `{x : D x = 0 for every derivation D}`.
    pub fn d_center(&self) -> Subspace {
        let n = self.n();
        let mut stacked = Matrix::zeros(0, n);
        for d in self.der.basis() {
            stacked = stacked.vstack(&d.matrix).expect("n columns");
        }
        stacked.nullspace()
    }

    /// `[L1, L2](D) = L1(ad(L2(D))) - L2(ad(L1(D)))`.
    pub fn d_bracket(
        &self,
        l1: &DDerivation,
        l2: &DDerivation,
    ) -> Result<DDerivation, DTheoryError> {
        self.check(l1)?;
        self.check(l2)?;
        let n = self.n();
        let columns: Vec<Vec<Scalar>> = (0..self.m())
            .map(|j| {
                let a = l1.apply(&self.ad_coords(&l2.column(j))?);
                let b = l2.apply(&self.ad_coords(&l1.column(j))?);
                Ok(a.iter().zip(&b).map(|(x, y)| x - y).collect())
            })
            .collect::<Result<_, DTheoryError>>()?;
        Ok(DDerivation {
            matrix: Matrix::from_columns(n, &columns).map_err(LieError::from)?,
        })
    }

    fn ad_coords(&self, x: &[Scalar]) -> Result<Vec<Scalar>, DTheoryError> {
        let ad = self.algebra().ad(x)?;
        self.der
            .coordinates(&ad)
            .ok_or_else(|| DTheoryError::Inconsistent("ad(x) is not in the derivation span".into()))
    }

    /// Action of a derivation on d-derivations: `D(L) = D∘L - L∘ad(D)`,
    /// where `ad(D)` is the adjoint of `D` inside `Der(G)`.
    pub fn der_action(&self, d: &Derivation, l: &DDerivation) -> Result<DDerivation, DTheoryError> {
        self.check(l)?;
        if self.der.coordinates(&d.matrix).is_none() {
            return Err(DTheoryError::NotADerivation);
        }
        let n = self.n();
        let columns: Vec<Vec<Scalar>> = self
            .der
            .basis()
            .iter()
            .enumerate()
            .map(|(j, dj)| {
                let comm = d.matrix.commutator(&dj.matrix).expect("square");
                let coords = self.der.coordinates(&comm).ok_or_else(|| {
                    DTheoryError::Inconsistent("commutator of derivations left Der(G)".into())
                })?;
                let first = d.apply(&l.column(j));
                let second = l.apply(&coords);
                Ok(first.iter().zip(&second).map(|(x, y)| x - y).collect())
            })
            .collect::<Result<_, DTheoryError>>()?;
        Ok(DDerivation {
            matrix: Matrix::from_columns(n, &columns).map_err(LieError::from)?,
        })
    }

    /// Solves the cocycle system and assembles the Lie structure on the solution space.
    pub fn d_derivations(&self) -> Result<DDerivationSpace, DTheoryError> {
        let (n, m) = (self.n(), self.m());
        let span = if m < 2 {
            Subspace::full(n * m)
        } else {
            self.cocycle_system().nullspace()
        };
        let basis: Vec<DDerivation> = span
            .basis_vectors()
            .into_iter()
            .map(|v| DDerivation {
                matrix: Matrix::from_flat(n, m, v).expect("n*m entries"),
            })
            .collect();
        let inner_rows = (0..n)
            .map(|i| {
                let mut e = zero_vec(n);
                e[i] = Scalar::from_integer(1.into());
                self.inner_d_derivation(&e).map(|l| l.matrix.flatten())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let inner = Subspace::span(n * m, &inner_rows).map_err(LieError::from)?;
        let p = basis.len();
        let algebra = if p == 0 {
            None
        } else {
            let mut table = vec![zero_vec(p); p * p];
            for i in 0..p {
                for j in (i + 1)..p {
                    let b = self.d_bracket(&basis[i], &basis[j])?;
                    let coords =
                        span.coordinates(b.matrix.entries())
                            .ok_or(LieError::NotClosed {
                                i,
                                j,
                                witness: b.matrix,
                            })?;
                    table[j * p + i] = coords.iter().map(|x| -x).collect();
                    table[i * p + j] = coords;
                }
            }
            Some(LieAlgebra::from_table(p, default_names("L", p), table)?)
        };
        Ok(DDerivationSpace {
            basis,
            span,
            inner,
            algebra,
        })
    }

    /// d-completeness: trivial d-center and every d-derivation inner.
    pub fn is_d_complete(&self) -> Result<DCompleteness, DTheoryError> {
        let space = self.d_derivations()?;
        Ok(self.d_completeness_with(&space))
    }

    pub fn d_completeness_with(&self, space: &DDerivationSpace) -> DCompleteness {
        let d_center_dim = self.d_center().dim();
        DCompleteness {
            d_complete: d_center_dim == 0 && space.inner == space.span,
            d_center_dim,
            d_space_dim: space.dim(),
            inner_d_dim: space.inner.dim(),
        }
    }

    /// The semidirect product `H = Der(G) ⋉ 𝒟` on the basis
    /// `(D_0..D_{m-1}, L_0..L_{p-1})`, with bracket
    /// `[(D1,L1),(D2,L2)] = ([D1,D2], [L1,L2] + D1(L2) - D2(L1))`.
    pub fn build_h(&self, space: &DDerivationSpace) -> Result<SemidirectProduct, DTheoryError> {
        let (m, p) = (self.m(), space.dim());
        let dim = m + p;
        let mut names = default_names("D", m);
        names.extend(default_names("L", p));
        // D_i(L_j) in 𝒟 coordinates, computed once.
        let mut action = vec![Vec::new(); m * p];
        for (i, d) in self.der.basis().iter().enumerate() {
            for (j, l) in space.basis.iter().enumerate() {
                let image = self.der_action(d, l)?;
                action[i * p + j] = space.coordinates(&image).ok_or_else(|| {
                    DTheoryError::Inconsistent(format!("D{i}(L{j}) is not a d-derivation"))
                })?;
            }
        }
        let algebra = LieAlgebra::from_fn(dim, names, |a, b| {
            let mut out = zero_vec(dim);
            match (a < m, b < m) {
                (true, true) => {
                    out[..m].clone_from_slice(self.der.structure(a, b));
                }
                (true, false) => {
                    out[m..].clone_from_slice(&action[a * p + (b - m)]);
                }
                (false, true) => {
                    for (o, v) in out[m..].iter_mut().zip(&action[b * p + (a - m)]) {
                        *o = -v;
                    }
                }
                (false, false) => {
                    let l = space.algebra.as_ref().expect("p > 0 here");
                    out[m..].clone_from_slice(l.basis_bracket(a - m, b - m));
                }
            }
            Ok(out)
        })?;
        Ok(SemidirectProduct {
            algebra,
            der_dim: m,
            d_dim: p,
        })
    }
}

/// The space `𝒟` of d-derivations with its canonical basis and bracket.
#[derive(Debug, Clone)]
pub struct DDerivationSpace {
    basis: Vec<DDerivation>,
    span: Subspace,
    inner: Subspace,
    algebra: Option<LieAlgebra>,
}

impl DDerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DDerivation] {
        &self.basis
    }

    /// Span of the flattened basis in `Q^(n*m)`.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Span of the flattened inner d-derivations.
    pub fn inner(&self) -> &Subspace {
        &self.inner
    }

    /// `(𝒟, [,])` as a Lie algebra; `None` when `𝒟 = 0`.
    pub fn as_lie_algebra(&self) -> Option<&LieAlgebra> {
        self.algebra.as_ref()
    }

    pub fn coordinates(&self, l: &DDerivation) -> Option<Vec<Scalar>> {
        self.span.coordinates(l.matrix.entries())
    }

    pub fn element(&self, coords: &[Scalar]) -> Option<DDerivation> {
        let first = self.basis.first()?;
        let (n, m) = (first.matrix.rows(), first.matrix.cols());
        let mut acc = zero_vec(n * m);
        for (c, l) in coords.iter().zip(&self.basis) {
            axpy(&mut acc, c, l.matrix.entries());
        }
        Some(DDerivation {
            matrix: Matrix::from_flat(n, m, acc).expect("n*m entries"),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct DCompleteness {
    pub d_complete: bool,
    pub d_center_dim: usize,
    pub d_space_dim: usize,
    pub inner_d_dim: usize,
}

/// `H = Der(G) ⋉ 𝒟`; coordinates `0..der_dim` are the `Der(G)` block.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub algebra: LieAlgebra,
    pub der_dim: usize,
    pub d_dim: usize,
}

impl SemidirectProduct {
    pub fn embed_der(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(self.der_dim + self.d_dim);
        v[..self.der_dim].clone_from_slice(coords);
        v
    }

    pub fn embed_d(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(self.der_dim + self.d_dim);
        v[self.der_dim..].clone_from_slice(coords);
        v
    }
}

/// `(𝒟, [,])` for `g` as a standalone Lie algebra.
pub fn d_algebra(g: &LieAlgebra) -> Result<Option<LieAlgebra>, DTheoryError> {
    Ok(DContext::new(g).d_derivations()?.algebra)
}
