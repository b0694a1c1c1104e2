//! Classical and 2-graded classical Yang–Baxter equations: r-matrices from
//! O-operators, the canonical solution of a strict pre-Lie 2-algebra, and
//! the `A ⊕ A*` construction.
//!
//! Dual spaces carry the dual basis. A tensor `Σ r_ij b_i ⊗ b_j` is stored
//! as the matrix `r[i][j]`, and `σ` is the transpose.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie2::{from_prelie2, semidirect_strict, Lie2Algebra, Lie2Rep};
use crate::linalg::{self, Matrix};
use crate::prelie::lie::{check_shape, semidirect, LieAlgebra, LieRep};
use crate::prelie::PreLieAlgebra;
use crate::prelie2::PreLie2Algebra;
use crate::report::ValidationReport;
use crate::scalar::{int, Rational};
use crate::tensor::{MultiMap, Space};

/// An element of `W ⊗ W` with a degree label per basis vector of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor2 {
    pub space: Space,
    pub degrees: Vec<u8>,
    pub coeffs: Matrix,
}

impl Tensor2 {
    pub fn zeros(space: Space, degrees: Vec<u8>) -> Self {
        let n = space.dim;
        Tensor2 {
            space,
            degrees,
            coeffs: linalg::mat_zero(n, n),
        }
    }

    /// A tensor with every basis vector in degree 0.
    pub fn ungraded(space: Space, coeffs: Matrix) -> Result<Self> {
        let degrees = vec![0; space.dim];
        Tensor2::new(space, degrees, coeffs)
    }

    /// A tensor on `W₀ ⊕ W₁` with the first `n0` basis vectors in degree 0.
    pub fn graded(space: Space, n0: usize, coeffs: Matrix) -> Result<Self> {
        let degrees = (0..space.dim).map(|i| u8::from(i >= n0)).collect();
        Tensor2::new(space, degrees, coeffs)
    }

    pub fn new(space: Space, degrees: Vec<u8>, coeffs: Matrix) -> Result<Self> {
        let n = space.dim;
        let bad = |found: usize, slot: usize| Error::DimensionMismatch {
            context: "tensor".into(),
            slot,
            expected: n,
            found,
        };
        if degrees.len() != n {
            return Err(bad(degrees.len(), 0));
        }
        if coeffs.len() != n {
            return Err(bad(coeffs.len(), 0));
        }
        if let Some(row) = coeffs.iter().find(|r| r.len() != n) {
            return Err(bad(row.len(), 1));
        }
        Ok(Tensor2 { space, degrees, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    /// The exchange `σ(a ⊗ b) = b ⊗ a`.
    pub fn sigma(&self) -> Self {
        let n = self.dim();
        let coeffs = (0..n).map(|i| (0..n).map(|j| self.coeffs[j][i].clone()).collect()).collect();
        Tensor2 { coeffs, ..self.clone() }
    }

    pub fn sub(&self, other: &Tensor2) -> Self {
        Tensor2 {
            coeffs: linalg::mat_sub(&self.coeffs, &other.coeffs),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|x| *x == Rational::default())
    }

    /// `x − σ(x)`.
    pub fn skew_part(&self) -> Self {
        self.sub(&self.sigma())
    }

    pub fn skew_report(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                rep.check("(a) skew", &[i, j], vec![&self.coeffs[i][j] + &self.coeffs[j][i]]);
            }
        }
        rep
    }

    /// Whether every nonzero component pairs basis vectors of different degree.
    pub fn is_mixed_degree(&self) -> bool {
        self.support_witness().is_none()
    }

    fn support_witness(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.degrees[i] == self.degrees[j] && self.coeffs[i][j] != Rational::default())
    }
}

/// `[r₁₂, r₁₃] + [r₁₃, r₂₃] + [r₁₂, r₂₃]` as a dense `n × n × n` array,
/// indexed `[a][b][c]`. Sharded over the first index.
pub fn cybe_tensor(r: &Matrix, bracket: &MultiMap) -> Vec<Matrix> {
    let n = r.len();
    let zero = Rational::default();
    let mut consts = Vec::new();
    for i in 0..n {
        for k in 0..n {
            for (p, c) in bracket.image(&[i, k]).iter().enumerate() {
                if *c != zero {
                    consts.push((i, k, p, c.clone()));
                }
            }
        }
    }
    (0..n)
        .into_par_iter()
        .map(|a| {
            let mut out = linalg::mat_zero(n, n);
            // [r₁₂, r₁₃]: Σ r_ij r_kl [e_i, e_k] ⊗ e_j ⊗ e_l
            for (i, k, _, c) in consts.iter().filter(|t| t.2 == a) {
                for j in 0..n {
                    if r[*i][j] == zero {
                        continue;
                    }
                    let cij = c * &r[*i][j];
                    for l in 0..n {
                        if r[*k][l] != zero {
                            out[j][l] += &cij * &r[*k][l];
                        }
                    }
                }
            }
            // [r₁₃, r₂₃]: Σ r_aj r_kl e_a ⊗ e_k ⊗ [e_j, e_l]
            for (j, l, p, c) in &consts {
                if r[a][*j] == zero {
                    continue;
                }
                let caj = c * &r[a][*j];
                for k in 0..n {
                    if r[k][*l] != zero {
                        out[k][*p] += &caj * &r[k][*l];
                    }
                }
            }
            // [r₁₂, r₂₃]: Σ r_aj r_kl e_a ⊗ [e_j, e_k] ⊗ e_l
            for (j, k, p, c) in &consts {
                if r[a][*j] == zero {
                    continue;
                }
                let caj = c * &r[a][*j];
                for l in 0..n {
                    if r[*k][l] != zero {
                        out[*p][l] += &caj * &r[*k][l];
                    }
                }
            }
            out
        })
        .collect()
}

fn cybe_report(r: &Matrix, g: &LieAlgebra, tag: &str) -> ValidationReport {
    let t = cybe_tensor(r, &g.bracket);
    let mut rep = ValidationReport::new();
    for (a, plane) in t.into_iter().enumerate() {
        for (b, row) in plane.into_iter().enumerate() {
            for (c, x) in row.into_iter().enumerate() {
                rep.check(tag, &[a, b, c], vec![x]);
            }
        }
    }
    rep
}

/// The classical Yang–Baxter equation for `r` in `g`, component by component.
pub fn cybe_check(r: &Tensor2, g: &LieAlgebra) -> Result<ValidationReport> {
    if r.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            context: "r-matrix".into(),
            slot: 0,
            expected: g.dim(),
            found: r.dim(),
        });
    }
    Ok(cybe_report(&r.coeffs, g, "CYBE"))
}

/// `T̄ − σ(T̄)` in `g ⋉_{ρ*} V*`, where `T̄ = Σ_k T(v_k) ⊗ v_k*`. Returns the
/// semidirect Lie algebra together with `r`.
pub fn o_operator_to_r(g: &LieAlgebra, rep: &LieRep, t: &MultiMap) -> Result<(LieAlgebra, Tensor2)> {
    check_shape("T", t, &[&rep.space], &g.space)?;
    let double = semidirect(g, &rep.dual(g));
    let n = g.dim();
    let mut tbar = Tensor2::zeros(double.space.clone(), vec![0; double.dim()]);
    for k in 0..rep.space.dim {
        for (a, c) in t.image(&[k]).iter().enumerate() {
            tbar.coeffs[a][n + k] = c.clone();
        }
    }
    Ok((double, tbar.skew_part()))
}

/// `Σᵢ (eᵢ ⊗ eᵢ* − eᵢ* ⊗ eᵢ)` in `g(A) ⋉_{L*} A*`.
pub fn canonical_r(a: &PreLieAlgebra) -> Tensor2 {
    let n = a.dim();
    let space = a.space.direct_sum(&a.space.dual());
    let mut r = Tensor2::zeros(space, (0..2 * n).map(|i| u8::from(i >= n)).collect());
    for i in 0..n {
        r.coeffs[i][n + i] = int(1);
        r.coeffs[n + i][i] = int(-1);
    }
    r
}

/// The three parts of the 2-graded CYBE.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedCybeReport {
    /// (a) `R` is skew
    pub skew: ValidationReport,
    /// (b) CYBE of `R` in `g₀ ⋉ g₁`
    pub cybe: ValidationReport,
    /// (c) `(𝔡 ⊗ 1 − 1 ⊗ 𝔡) r = 0`
    pub closedness: ValidationReport,
}

impl GradedCybeReport {
    pub fn skew_ok(&self) -> bool {
        self.skew.ok()
    }

    pub fn cybe_ok(&self) -> bool {
        self.cybe.ok()
    }

    pub fn closedness_ok(&self) -> bool {
        self.closedness.ok()
    }

    pub fn ok(&self) -> bool {
        self.skew_ok() && self.cybe_ok() && self.closedness_ok()
    }

    /// All violations in one report.
    pub fn combined(&self) -> ValidationReport {
        let mut r = self.skew.clone();
        r.extend(self.cybe.clone());
        r.extend(self.closedness.clone());
        r
    }
}

impl fmt::Display for GradedCybeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "skew_ok = {}", self.skew_ok())?;
        writeln!(f, "cybe_ok = {}", self.cybe_ok())?;
        writeln!(f, "closedness_ok = {}", self.closedness_ok())?;
        if !self.ok() {
            write!(f, "{}", self.combined())?;
        }
        Ok(())
    }
}

/// Conditions (a)–(c) for `r ∈ g₀⊗g₁ ⊕ g₁⊗g₀` and `𝔯 ∈ g₁⊗g₁` in a strict
/// Lie 2-algebra, with `R = r − (𝔡⊗1 + 1⊗𝔡)𝔯`.
pub fn graded_cybe_check(r: &Tensor2, frkr: &Matrix, g: &Lie2Algebra) -> Result<GradedCybeReport> {
    let flat = g.semidirect_lie_algebra()?;
    let (n0, n1) = (g.g0.dim, g.g1.dim);
    let n = n0 + n1;
    if r.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "r".into(),
            slot: 0,
            expected: n,
            found: r.dim(),
        });
    }
    if frkr.len() != n1 || frkr.iter().any(|row| row.len() != n1) {
        return Err(Error::DimensionMismatch {
            context: "frkr".into(),
            slot: 0,
            expected: n1,
            found: frkr.len(),
        });
    }
    if let Some(i) = (0..n).find(|&i| r.degrees[i] != u8::from(i >= n0)) {
        return Err(Error::Support(format!("basis vector {i} has the wrong degree label")));
    }
    if let Some((i, j)) = r.support_witness() {
        return Err(Error::Support(format!("r has a component at ({i}, {j}) within one degree")));
    }
    let d = g.d.to_rows();
    let mut big_r = r.coeffs.clone();
    for i in 0..n0 {
        for b in 0..n1 {
            for a in 0..n1 {
                big_r[i][n0 + b] -= &d[i][a] * &frkr[a][b];
                big_r[n0 + b][i] -= &frkr[b][a] * &d[i][a];
            }
        }
    }
    let big_r = Tensor2 {
        coeffs: big_r,
        ..r.clone()
    };
    let flat_d = g.flat_differential();
    let left = linalg::mat_mul(&flat_d, &r.coeffs, n);
    let dt: Matrix = (0..n).map(|i| (0..n).map(|j| flat_d[j][i].clone()).collect()).collect();
    let right = linalg::mat_mul(&r.coeffs, &dt, n);
    let mut closedness = ValidationReport::new();
    for (i, (x, y)) in left.iter().zip(&right).enumerate() {
        for (j, (p, q)) in x.iter().zip(y).enumerate() {
            closedness.check("(c) closedness", &[i, j], vec![p - q]);
        }
    }
    Ok(GradedCybeReport {
        skew: big_r.skew_report(),
        cybe: cybe_report(&big_r.coeffs, &flat, "(b) CYBE"),
        closedness,
    })
}

/// A strict Lie 2-algebra with a candidate 2-graded CYBE solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSolution {
    pub algebra: Lie2Algebra,
    pub r: Tensor2,
    pub frkr: Matrix,
}

impl GradedSolution {
    pub fn check(&self) -> Result<GradedCybeReport> {
        graded_cybe_check(&self.r, &self.frkr, &self.algebra)
    }
}

/// `T̄₀ + T̄₁ − σ(T̄₀ + T̄₁)` in `𝒢 ⋉ 𝒱*`, with `𝔯 = 0`. The semidirect product
/// has `Ḡ₀ = g₀ ⊕ V₁*` and `Ḡ₁ = g₁ ⊕ V₀*`; the flattened basis is ordered
/// `g₀, V₁*, g₁, V₀*`. Built for any `(T₀, T₁)`; whether it solves the
/// equations is for [`graded_cybe_check`] to decide.
pub fn solution_from_o_operator(t0: &MultiMap, t1: &MultiMap, g: &Lie2Algebra, rep: &Lie2Rep) -> Result<GradedSolution> {
    check_shape("T0", t0, &[&rep.complex.v0], &g.g0)?;
    check_shape("T1", t1, &[&rep.complex.v1], &g.g1)?;
    let algebra = semidirect_strict(g, &rep.dual(g)?)?;
    let (n0, n1) = (g.g0.dim, g.g1.dim);
    let (m0, m1) = (rep.complex.v0.dim, rep.complex.v1.dim);
    let big0 = n0 + m1;
    let space = algebra.g0.direct_sum(&algebra.g1);
    let mut tbar = Tensor2::graded(space, big0, linalg::mat_zero(big0 + n1 + m0, big0 + n1 + m0))?;
    for k in 0..m0 {
        for (a, c) in t0.image(&[k]).iter().enumerate() {
            tbar.coeffs[a][big0 + n1 + k] = c.clone();
        }
    }
    for k in 0..m1 {
        for (b, c) in t1.image(&[k]).iter().enumerate() {
            tbar.coeffs[big0 + b][n0 + k] = c.clone();
        }
    }
    let frkr = linalg::mat_zero(algebra.g1.dim, algebra.g1.dim);
    Ok(GradedSolution {
        algebra,
        r: tbar.skew_part(),
        frkr,
    })
}

/// `Σᵢ (eᵢ⊗eᵢ* − eᵢ*⊗eᵢ) + Σⱼ (𝔢ⱼ⊗𝔢ⱼ* − 𝔢ⱼ*⊗𝔢ⱼ)` in `𝒢(𝒜) ⋉_{(L₀*, L₁*)} 𝒜*`.
pub fn canonical_solution(a: &PreLie2Algebra) -> Result<GradedSolution> {
    if !a.is_strict() {
        return Err(Error::NotStrict("l3 is nonzero".into()));
    }
    let (g, rep) = from_prelie2(a)?;
    solution_from_o_operator(&MultiMap::identity(&a.a0), &MultiMap::identity(&a.a1), &g, &rep)
}

/// The two candidate structures on `A ⊕ A*` for a given `d : A* → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    /// `x·ξ = ad*ₓξ`, `ξ·x = −R*ₓξ`, `l₃ = 0`
    pub prelie2: PreLie2Algebra,
    /// `𝔩₂(x,ξ) = L*ₓξ`, `𝔩₃ = 0`
    pub lie2: Lie2Algebra,
    pub prelie2_valid: bool,
    pub lie2_valid: bool,
    /// `⟨dξ, η⟩ = −⟨dη, ξ⟩`
    pub d_skew: bool,
    /// `prelie2_valid ⇒ lie2_valid`, and the converse when `d` is skew.
    pub equivalence: bool,
}

fn bridge_candidates(a: &PreLieAlgebra, d: &MultiMap) -> (PreLie2Algebra, Lie2Algebra) {
    let dual = a.dual_rep();
    let (a0, a1) = (a.space.clone(), dual.space.clone());
    let mut p = PreLie2Algebra::zero(a0.clone(), a1.clone());
    p.d = d.clone();
    p.mul00 = a.mul.clone();
    p.mul01 = dual.rho.clone();
    p.mul10 = dual.mu.permute_inputs(&[1, 0]);
    let mut l = Lie2Algebra::zero(a0, a1);
    l.d = d.clone();
    l.l2_00 = a.commutator_algebra().bracket;
    // L* = ad* + R*
    l.l2_01 = dual.rho.sub(&dual.mu);
    (p, l)
}

pub fn a_astar_bridge(a: &PreLieAlgebra, d: &MultiMap) -> Result<Bridge> {
    check_shape("d", d, &[&a.space.dual()], &a.space)?;
    let (prelie2, lie2) = bridge_candidates(a, d);
    let prelie2_valid = prelie2.validate().ok();
    let lie2_valid = lie2.validate().ok();
    let m = d.to_rows();
    let n = a.dim();
    let d_skew = (0..n).all(|i| (0..n).all(|j| m[i][j] == -m[j][i].clone()));
    let equivalence = (!prelie2_valid || lie2_valid) && (!d_skew || !lie2_valid || prelie2_valid);
    Ok(Bridge {
        prelie2,
        lie2,
        prelie2_valid,
        lie2_valid,
        d_skew,
        equivalence,
    })
}

/// Basis of the skew maps `d : A* → A` for which the pre-Lie 2-algebra
/// candidate is valid, by an exact linear solve.
pub fn bridge_solutions(a: &PreLieAlgebra) -> Vec<MultiMap> {
    let n = a.dim();
    let (src, dst) = (a.space.dual(), a.space.clone());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
    let to_map = |x: &[Rational]| {
        let mut rows = linalg::mat_zero(n, n);
        for (c, &(p, q)) in x.iter().zip(&pairs) {
            rows[p][q] = c.clone();
            rows[q][p] = -c.clone();
        }
        MultiMap::from_rows(&src, &dst, &rows)
    };
    linalg::report_kernel(pairs.len(), |x| bridge_candidates(a, &to_map(x)).0.validate())
        .iter()
        .map(|x| to_map(x))
        .collect()
}

/// The r-matrix `Σᵢ (eᵢ⊗eᵢ* − eᵢ*⊗eᵢ)` checked in the Lie 2-algebra candidate
/// `(g(A), A*, d, 𝔩₂)`.
pub fn bridge_canonical_check(a: &PreLieAlgebra, d: &MultiMap) -> Result<GradedCybeReport> {
    let b = a_astar_bridge(a, d)?;
    let frkr = linalg::mat_zero(a.dim(), a.dim());
    graded_cybe_check(&canonical_r(a), &frkr, &b.lie2)
}
