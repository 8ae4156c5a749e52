//! Lie algebras given by structure constants, and their derivation algebras.

use std::collections::HashSet;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{
    axpy, combine, format_scalar, is_zero_vec, unit_vec, zero_vec, LinalgError, Matrix, Scalar,
    Subspace,
};

fn format_vec(v: &[Scalar]) -> String {
    v.iter().map(format_scalar).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("a Lie algebra must have dimension at least 1")]
    ZeroDimension,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket of basis elements ({i}, {j}) given inconsistently with antisymmetry")]
    AntisymmetryConflict { i: usize, j: usize },
    #[error("bracket of basis elements ({i}, {j}) given more than once")]
    DuplicatePair { i: usize, j: usize },
    #[error("Jacobi identity fails on basis triple ({}, {}, {}): residual ({})", triple.0, triple.1, triple.2, format_vec(residual))]
    JacobiViolation {
        triple: (usize, usize, usize),
        residual: Vec<Scalar>,
    },
    #[error("expected a vector of length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("expected {expected} basis names, got {actual}")]
    NameCount { expected: usize, actual: usize },
    #[error("commutator of basis elements ({i}, {j}) leaves the span")]
    NotClosed { i: usize, j: usize, witness: Matrix },
    #[error("basis of {given} vectors only spans dimension {rank}")]
    DependentBasis { given: usize, rank: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finite-dimensional Lie algebra over the rationals, stored as the full
/// table `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Values of this type are always antisymmetric and satisfy Jacobi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    // (i * dim + j) -> [e_i, e_j]
    table: Vec<Vec<Scalar>>,
}

pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl LieAlgebra {
    /// Builds an algebra from a sparse list of brackets `[e_i, e_j] = result`.
    /// Pairs not listed bracket to zero; the mirrored entry is filled in.
    pub fn new(dim: usize, brackets: &[(usize, usize, Vec<Scalar>)]) -> Result<Self, LieError> {
        Self::with_names(dim, default_names("e", dim), brackets)
    }

    pub fn with_names(
        dim: usize,
        basis_names: Vec<String>,
        brackets: &[(usize, usize, Vec<Scalar>)],
    ) -> Result<Self, LieError> {
        if dim == 0 {
            return Err(LieError::ZeroDimension);
        }
        let mut table: Vec<Option<Vec<Scalar>>> = vec![None; dim * dim];
        let mut given = HashSet::new();
        for (i, j, result) in brackets {
            let (i, j) = (*i, *j);
            for index in [i, j] {
                if index >= dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            if result.len() != dim {
                return Err(LieError::LengthMismatch {
                    expected: dim,
                    actual: result.len(),
                });
            }
            if i == j {
                if !is_zero_vec(result) {
                    return Err(LieError::AntisymmetryConflict { i, j });
                }
                continue;
            }
            if !given.insert((i, j)) {
                return Err(LieError::DuplicatePair { i, j });
            }
            let negated: Vec<Scalar> = result.iter().map(|x| -x).collect();
            if given.contains(&(j, i)) {
                if table[i * dim + j].as_ref() != Some(result) {
                    return Err(LieError::AntisymmetryConflict { i, j });
                }
                continue;
            }
            table[i * dim + j] = Some(result.clone());
            table[j * dim + i] = Some(negated);
        }
        let table = table
            .into_iter()
            .map(|entry| entry.unwrap_or_else(|| zero_vec(dim)))
            .collect();
        Self::from_table(dim, basis_names, table)
    }

    /// Validating constructor over a full `dim * dim` table.
    pub fn from_table(
        dim: usize,
        basis_names: Vec<String>,
        table: Vec<Vec<Scalar>>,
    ) -> Result<Self, LieError> {
        if dim == 0 {
            return Err(LieError::ZeroDimension);
        }
        if basis_names.len() != dim {
            return Err(LieError::NameCount {
                expected: dim,
                actual: basis_names.len(),
            });
        }
        assert_eq!(table.len(), dim * dim, "bracket table has the wrong size");
        for entry in &table {
            if entry.len() != dim {
                return Err(LieError::LengthMismatch {
                    expected: dim,
                    actual: entry.len(),
                });
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let negated: Vec<Scalar> = table[j * dim + i].iter().map(|x| -x).collect();
                if table[i * dim + j] != negated {
                    return Err(LieError::AntisymmetryConflict { i, j });
                }
            }
        }
        let algebra = LieAlgebra {
            dim,
            basis_names,
            table,
        };
        algebra.check_jacobi()?;
        Ok(algebra)
    }

    /// Builds an algebra from a bracket closure on basis indices, e.g. when the
    /// table comes from commutators of some concrete realization.
    pub fn from_fn<F>(
        dim: usize,
        basis_names: Vec<String>,
        mut bracket: F,
    ) -> Result<Self, LieError>
    where
        F: FnMut(usize, usize) -> Result<Vec<Scalar>, LieError>,
    {
        let mut table = vec![zero_vec(dim); dim * dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let v = bracket(i, j)?;
                table[j * dim + i] = v.iter().map(|x| -x).collect();
                table[i * dim + j] = v;
            }
        }
        Self::from_table(dim, basis_names, table)
    }

    /// Jacobi on all triples i < j < l; the identity is trilinear and
    /// alternating, so this covers everything.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                for l in (j + 1)..n {
                    let residual = self.jacobiator(i, j, l);
                    if !is_zero_vec(&residual) {
                        return Err(LieError::JacobiViolation {
                            triple: (i, j, l),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn jacobiator(&self, i: usize, j: usize, l: usize) -> Vec<Scalar> {
        let mut sum = zero_vec(self.dim);
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            // [e_a, [e_b, e_c]]
            let inner = self.basis_bracket(b, c);
            for (k, coeff) in inner.iter().enumerate() {
                axpy(&mut sum, coeff, self.basis_bracket(a, k));
            }
        }
        sum
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn renamed(mut self, names: Vec<String>) -> Result<Self, LieError> {
        if names.len() != self.dim {
            return Err(LieError::NameCount {
                expected: self.dim,
                actual: names.len(),
            });
        }
        self.basis_names = names;
        Ok(self)
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<Scalar>)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self.basis_bracket(i, j);
                if !is_zero_vec(v) {
                    out.push((i, j, v.to_vec()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(LieError::LengthMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    axpy(&mut out, &(xi * yj), self.basis_bracket(i, j));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y ↦ [x, y]`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix, LieError> {
        self.check_len(x)?;
        let columns: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| {
                let mut col = zero_vec(self.dim);
                for (i, xi) in x.iter().enumerate() {
                    axpy(&mut col, xi, self.basis_bracket(i, j));
                }
                col
            })
            .collect();
        Ok(Matrix::from_columns(self.dim, &columns)?)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vec(self.dim, i))
            .expect("unit vector has the right length")
    }

    /// `{x : [x, y] = 0 for all y}`: the kernel of the stacked maps `x ↦ [x, e_j]`.
    pub fn center(&self) -> Subspace {
        self.stacked_right_multiplications().nullspace()
    }

    // Row block j is the matrix of x ↦ [x, e_j].
    fn stacked_right_multiplications(&self) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n * n, n);
        for j in 0..n {
            for i in 0..n {
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    m[(j * n + k, i)] = c.clone();
                }
            }
        }
        m
    }

    pub fn stacked_ad_rank(&self) -> usize {
        self.stacked_right_multiplications().rank()
    }

    /// `[G, G]`, the span of all basis brackets.
    pub fn derived_subalgebra(&self) -> Subspace {
        Subspace::span(self.dim, &self.table).expect("table entries have length dim")
    }

    /// Does `m` satisfy `m[x, y] = [m x, y] + [x, m y]` on all basis pairs?
    pub fn is_derivation(&self, m: &Matrix) -> bool {
        if m.rows() != self.dim || m.cols() != self.dim {
            return false;
        }
        let n = self.dim;
        let images: Vec<Vec<Scalar>> = (0..n).map(|j| m.column(j)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = m.mul_vec(self.basis_bracket(i, j)).expect("square");
                let mut rhs = self.bracket(&images[i], &unit_vec(n, j)).expect("length n");
                let right = self.bracket(&unit_vec(n, i), &images[j]).expect("length n");
                for (a, b) in rhs.iter_mut().zip(right) {
                    *a += b;
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Coefficient matrix of the Leibniz system in the `n²` entries of an
    /// unknown matrix `D` (row-major, entry `(r, c)` at `r * n + c`).
    fn leibniz_system(&self) -> Matrix {
        let n = self.dim;
        let pairs = n * (n - 1) / 2;
        let mut sys = Matrix::zeros(pairs * n, n * n);
        let mut block = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let c_ij = self.basis_bracket(i, j);
                for t in 0..n {
                    let row = block * n + t;
                    // D([e_i, e_j])_t = Σ_k c_ij^k D[t][k]
                    for (k, c) in c_ij.iter().enumerate() {
                        if !c.is_zero() {
                            sys[(row, t * n + k)] += c;
                        }
                    }
                    // -[D e_i, e_j]_t = -Σ_r D[r][i] c_rj^t
                    // -[e_i, D e_j]_t = -Σ_r D[r][j] c_ir^t
                    for r in 0..n {
                        let a = &self.basis_bracket(r, j)[t];
                        if !a.is_zero() {
                            sys[(row, r * n + i)] -= a;
                        }
                        let b = &self.basis_bracket(i, r)[t];
                        if !b.is_zero() {
                            sys[(row, r * n + j)] -= b;
                        }
                    }
                }
                block += 1;
            }
        }
        sys
    }

    /// `Der(G)` with its canonical basis: the RREF basis of the Leibniz
    /// solution space on flattened matrices.
    pub fn derivation_algebra(&self) -> DerivationAlgebra {
        let n = self.dim;
        let flat_span = if n < 2 {
            Subspace::full(n * n)
        } else {
            self.leibniz_system().nullspace()
        };
        let basis: Vec<Derivation> = flat_span
            .basis_vectors()
            .into_iter()
            .map(|v| Derivation {
                matrix: Matrix::from_flat(n, n, v).expect("n² entries"),
            })
            .collect();
        let m = basis.len();
        let algebra = if m == 0 {
            None
        } else {
            let lie = LieAlgebra::from_fn(m, default_names("D", m), |i, j| {
                let comm = basis[i].matrix.commutator(&basis[j].matrix)?;
                flat_span
                    .coordinates(comm.entries())
                    .ok_or(LieError::NotClosed {
                        i,
                        j,
                        witness: comm,
                    })
            })
            .expect("derivations are closed under commutator");
            Some(lie)
        };
        DerivationAlgebra {
            parent: self.clone(),
            basis,
            algebra,
            flat_span,
        }
    }

    /// Span of the flattened `ad(e_i)` in `Q^(n²)`.
    pub fn inner_derivations(&self) -> Subspace {
        let n = self.dim;
        let rows: Vec<Vec<Scalar>> = (0..n).map(|i| self.ad_basis(i).flatten()).collect();
        Subspace::span(n * n, &rows).expect("n² entries")
    }

    /// Completeness: trivial center and every derivation inner.
    pub fn is_complete(&self) -> Completeness {
        self.completeness_with(&self.derivation_algebra())
    }

    pub fn completeness_with(&self, der: &DerivationAlgebra) -> Completeness {
        let center_dim = self.center().dim();
        let inner = self.inner_derivations();
        let complete = center_dim == 0 && inner == der.flat_span;
        Completeness {
            complete,
            center_dim,
            der_dim: der.dim(),
            inner_dim: inner.dim(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Completeness {
    pub complete: bool,
    pub center_dim: usize,
    pub der_dim: usize,
    pub inner_dim: usize,
}

/// A matrix satisfying the Leibniz rule on its parent algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub matrix: Matrix,
}

impl Derivation {
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix
            .mul_vec(x)
            .expect("vector length matches the parent algebra")
    }
}

/// `Der(G)` together with its canonical basis and the induced Lie structure.
#[derive(Debug, Clone)]
pub struct DerivationAlgebra {
    parent: LieAlgebra,
    basis: Vec<Derivation>,
    // None only when Der(G) = 0.
    algebra: Option<LieAlgebra>,
    flat_span: Subspace,
}

impl DerivationAlgebra {
    pub fn parent(&self) -> &LieAlgebra {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    pub fn as_lie_algebra(&self) -> Option<&LieAlgebra> {
        self.algebra.as_ref()
    }

    pub fn flat_span(&self) -> &Subspace {
        &self.flat_span
    }

    /// Coordinates of `[D_i, D_j]` in the basis.
    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        self.algebra
            .as_ref()
            .expect("nonempty basis")
            .basis_bracket(i, j)
    }

    /// Coordinates of a matrix in the canonical basis, if it is a derivation.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let n = self.parent.dim();
        if m.rows() != n || m.cols() != n {
            return None;
        }
        self.flat_span.coordinates(m.entries())
    }

    /// `Σ coords[i] D_i` as a matrix.
    pub fn element(&self, coords: &[Scalar]) -> Matrix {
        let n = self.parent.dim();
        let flats: Vec<Vec<Scalar>> = self.basis.iter().map(|d| d.matrix.flatten()).collect();
        Matrix::from_flat(n, n, combine(n * n, coords, &flats)).expect("n² entries")
    }

    /// Coordinates of `ad(x)`. Always succeeds since inner derivations are derivations.
    pub fn ad_coordinates(&self, x: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        let ad = self.parent.ad(x)?;
        Ok(self
            .coordinates(&ad)
            .expect("inner derivation outside Der(G): corrupted derivation basis"))
    }
}

/// Structure constants for the span of `vectors` under the matrix commutator.
pub fn induced_lie_structure(vectors: &[Matrix]) -> Result<LieAlgebra, LieError> {
    let Some(first) = vectors.first() else {
        return Err(LieError::ZeroDimension);
    };
    let flat_len = first.rows() * first.cols();
    let flats: Vec<Vec<Scalar>> = vectors.iter().map(Matrix::flatten).collect();
    let span = Subspace::span(flat_len, &flats)?;
    if span.dim() != vectors.len() {
        return Err(LieError::DependentBasis {
            given: vectors.len(),
            rank: span.dim(),
        });
    }
    let columns = Matrix::from_columns(flat_len, &flats)?;
    let k = vectors.len();
    LieAlgebra::from_fn(k, default_names("v", k), |i, j| {
        let comm = vectors[i].commutator(&vectors[j])?;
        columns.solve(comm.entries()).ok_or(LieError::NotClosed {
            i,
            j,
            witness: comm,
        })
    })
}
