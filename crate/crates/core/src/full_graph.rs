//! The full graph `C(G) = Der(G) ⋉ G`, the action of `H = Der(G) ⋉ 𝒟` on it,
//! and the verifiers comparing `H` with `Der(C(G))`.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::dtheory::{DCompleteness, DContext, DDerivationSpace, DTheoryError, SemidirectProduct};
use crate::lie::{default_names, Completeness, DerivationAlgebra, LieAlgebra};
use crate::linalg::{axpy, zero_vec, Matrix, Scalar, Subspace};

/// `C(G)` on the basis `(D_0..D_{m-1}, e_0..e_{n-1})` with bracket
/// `[(D1,x1),(D2,x2)] = ([D1,D2], D1 x2 - D2 x1 + [x1,x2])`.
#[derive(Debug, Clone)]
pub struct FullGraph {
    pub algebra: LieAlgebra,
    pub der_dim: usize,
    pub g_dim: usize,
}

impl FullGraph {
    pub fn embed_der(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(self.der_dim + self.g_dim);
        v[..self.der_dim].clone_from_slice(coords);
        v
    }

    pub fn embed_g(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut v = zero_vec(self.der_dim + self.g_dim);
        v[self.der_dim..].clone_from_slice(x);
        v
    }
}

pub fn build_full_graph(der: &DerivationAlgebra) -> Result<FullGraph, DTheoryError> {
    let g = der.parent();
    let (m, n) = (der.dim(), g.dim());
    let dim = m + n;
    let mut names = default_names("D", m);
    names.extend(g.basis_names().iter().cloned());
    let algebra = LieAlgebra::from_fn(dim, names, |a, b| {
        let mut out = zero_vec(dim);
        match (a < m, b < m) {
            (true, true) => out[..m].clone_from_slice(der.structure(a, b)),
            (true, false) => out[m..].clone_from_slice(&der.basis()[a].matrix.column(b - m)),
            (false, true) => {
                for (o, v) in out[m..].iter_mut().zip(der.basis()[b].matrix.column(a - m)) {
                    *o = -v;
                }
            }
            (false, false) => out[m..].clone_from_slice(g.basis_bracket(a - m, b - m)),
        }
        Ok(out)
    })?;
    Ok(FullGraph {
        algebra,
        der_dim: m,
        g_dim: n,
    })
}

/// Which formula `h_derivation` evaluates. `FlippedAdTerm` negates the
/// `L(ad(g))` term and exists only so tests can confirm the verifier notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ActionVariant {
    #[default]
    Standard,
    FlippedAdTerm,
}

/// Everything needed to evaluate the `H`-action on `C(G)` for one algebra.
#[derive(Debug, Clone)]
pub struct Setting {
    pub ctx: DContext,
    pub space: DDerivationSpace,
    pub h: SemidirectProduct,
    pub cg: FullGraph,
    pub variant: ActionVariant,
}

impl Setting {
    pub fn new(g: &LieAlgebra) -> Result<Self, DTheoryError> {
        Self::with_variant(g, ActionVariant::Standard)
    }

    pub fn with_variant(g: &LieAlgebra, variant: ActionVariant) -> Result<Self, DTheoryError> {
        let ctx = DContext::new(g);
        let space = ctx.d_derivations()?;
        let h = ctx.build_h(&space)?;
        let cg = build_full_graph(ctx.derivations())?;
        Ok(Setting {
            ctx,
            space,
            h,
            cg,
            variant,
        })
    }

    /// Matrix on `C(G)` of
    /// `(D1, g) ↦ ([D, D1], D(g) + L(ad(g)) + L(D1))`
    /// for the element of `H` with coordinates `h_coords`.
    pub fn h_derivation(&self, h_coords: &[Scalar]) -> Matrix {
        let der = self.ctx.derivations();
        let g = self.ctx.algebra();
        let (m, n) = (der.dim(), g.dim());
        let dim = m + n;
        let d_coords = &h_coords[..m];
        let d = der.element(d_coords);
        let l = self
            .space
            .element(&h_coords[m..])
            .unwrap_or_else(|| self.ctx.zero());
        let ad_sign = match self.variant {
            ActionVariant::Standard => Scalar::from_integer(1.into()),
            ActionVariant::FlippedAdTerm => Scalar::from_integer((-1).into()),
        };
        let mut columns = Vec::with_capacity(dim);
        for k in 0..m {
            // input (D_k, 0): ([D, D_k], L(D_k))
            let mut col = zero_vec(dim);
            for (i, c) in d_coords.iter().enumerate() {
                axpy(&mut col[..m], c, der.structure(i, k));
            }
            col[m..].clone_from_slice(&l.column(k));
            columns.push(col);
        }
        for k in 0..n {
            // input (0, e_k): (0, D(e_k) + L(ad(e_k)))
            let mut col = zero_vec(dim);
            let mut image = d.column(k);
            if m > 0 {
                let ad = der
                    .ad_coordinates(&crate::linalg::unit_vec(n, k))
                    .expect("basis vector has length n");
                axpy(&mut image, &ad_sign, &l.apply(&ad));
            }
            col[m..].clone_from_slice(&image);
            columns.push(col);
        }
        Matrix::from_columns(dim, &columns).expect("square")
    }

    pub fn h_generator(&self, i: usize) -> Matrix {
        self.h_derivation(&crate::linalg::unit_vec(self.h.algebra.dim(), i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub each_generator_is_derivation: bool,
    pub bracket_homomorphism: bool,
    pub injective: bool,
    #[serde(rename = "dim_H")]
    pub dim_h: usize,
    #[serde(rename = "dim_DerCG")]
    pub dim_der_cg: usize,
    #[serde(rename = "image_equals_DerCG")]
    pub image_equals_der_cg: bool,
}

impl Theorem1Report {
    pub fn pass(&self) -> bool {
        self.each_generator_is_derivation
            && self.bracket_homomorphism
            && self.injective
            && self.image_equals_der_cg
            && self.dim_h == self.dim_der_cg
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    #[serde(rename = "center_CG_dim")]
    pub center_cg_dim: usize,
    pub d_center_dim: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.matches && self.center_cg_dim == self.d_center_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub d_complete: bool,
    pub full_graph_complete: bool,
    pub equivalent: bool,
    pub d_evidence: DCompleteness,
    pub full_graph_evidence: Completeness,
}

impl Theorem2Report {
    pub fn pass(&self) -> bool {
        self.equivalent
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub algebra_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem1: Option<Theorem1Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma: Option<LemmaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem2: Option<Theorem2Report>,
    pub pass: bool,
    // Wall-clock time would break byte-stable JSON output.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    pub theorem1: bool,
    pub lemma: bool,
    pub theorem2: bool,
}

impl Checks {
    pub const ALL: Checks = Checks {
        theorem1: true,
        lemma: true,
        theorem2: true,
    };
}

/// Checks that the matrices of the `H`-action are derivations of `C(G)`,
/// respect brackets, are independent, and span all of `Der(C(G))`.
pub fn theorem1_with(setting: &Setting, der_cg: &DerivationAlgebra) -> Theorem1Report {
    let h = &setting.h.algebra;
    let cg = &setting.cg.algebra;
    let k = h.dim();
    let images: Vec<Matrix> = (0..k).map(|i| setting.h_generator(i)).collect();

    let each_generator_is_derivation = images.iter().all(|d| cg.is_derivation(d));

    let mut bracket_homomorphism = true;
    'outer: for i in 0..k {
        for j in (i + 1)..k {
            let lhs = images[i].commutator(&images[j]).expect("square");
            let rhs = setting.h_derivation(h.basis_bracket(i, j));
            if lhs != rhs {
                bracket_homomorphism = false;
                break 'outer;
            }
        }
    }

    let flat: Vec<Vec<Scalar>> = images.iter().map(Matrix::flatten).collect();
    let cg_dim = cg.dim();
    let image_span = Subspace::span(cg_dim * cg_dim, &flat).expect("square images");
    let injective = image_span.dim() == k;

    Theorem1Report {
        each_generator_is_derivation,
        bracket_homomorphism,
        injective,
        dim_h: k,
        dim_der_cg: der_cg.dim(),
        image_equals_der_cg: &image_span == der_cg.flat_span(),
    }
}

/// `Z(C(G))` against `(0, C_d(G))`.
pub fn lemma_with(setting: &Setting) -> LemmaReport {
    let center = setting.cg.algebra.center();
    let d_center = setting.ctx.d_center();
    let embedded: Vec<Vec<Scalar>> = d_center
        .basis_vectors()
        .iter()
        .map(|x| setting.cg.embed_g(x))
        .collect();
    let embedded = Subspace::span(setting.cg.algebra.dim(), &embedded).expect("ambient m+n");
    LemmaReport {
        center_cg_dim: center.dim(),
        d_center_dim: d_center.dim(),
        matches: center == embedded,
    }
}

pub fn theorem2_with(setting: &Setting, der_cg: &DerivationAlgebra) -> Theorem2Report {
    let d_evidence = setting.ctx.d_completeness_with(&setting.space);
    let full_graph_evidence = setting.cg.algebra.completeness_with(der_cg);
    Theorem2Report {
        d_complete: d_evidence.d_complete,
        full_graph_complete: full_graph_evidence.complete,
        equivalent: d_evidence.d_complete == full_graph_evidence.complete,
        d_evidence,
        full_graph_evidence,
    }
}

/// Runs the selected verifiers, sharing `Der(G)`, `𝒟`, `H`, `C(G)` and
/// `Der(C(G))` between them.
pub fn verify(
    name: &str,
    g: &LieAlgebra,
    checks: Checks,
    variant: ActionVariant,
) -> Result<VerificationReport, DTheoryError> {
    let start = Instant::now();
    let setting = Setting::with_variant(g, variant)?;
    let der_cg =
        (checks.theorem1 || checks.theorem2).then(|| setting.cg.algebra.derivation_algebra());
    let theorem1 = checks
        .theorem1
        .then(|| theorem1_with(&setting, der_cg.as_ref().expect("computed above")));
    let lemma = checks.lemma.then(|| lemma_with(&setting));
    let theorem2 = checks
        .theorem2
        .then(|| theorem2_with(&setting, der_cg.as_ref().expect("computed above")));
    let pass = theorem1.as_ref().is_none_or(Theorem1Report::pass)
        && lemma.as_ref().is_none_or(LemmaReport::pass)
        && theorem2.as_ref().is_none_or(Theorem2Report::pass);
    Ok(VerificationReport {
        algebra_name: name.to_string(),
        theorem1,
        lemma,
        theorem2,
        pass,
        elapsed: start.elapsed(),
    })
}

pub fn verify_theorem1(g: &LieAlgebra) -> Result<Theorem1Report, DTheoryError> {
    let setting = Setting::new(g)?;
    let der_cg = setting.cg.algebra.derivation_algebra();
    Ok(theorem1_with(&setting, &der_cg))
}

pub fn verify_center_lemma(g: &LieAlgebra) -> Result<LemmaReport, DTheoryError> {
    Ok(lemma_with(&Setting::new(g)?))
}

pub fn verify_theorem2(g: &LieAlgebra) -> Result<Theorem2Report, DTheoryError> {
    let setting = Setting::new(g)?;
    let der_cg = setting.cg.algebra.derivation_algebra();
    Ok(theorem2_with(&setting, &der_cg))
}
