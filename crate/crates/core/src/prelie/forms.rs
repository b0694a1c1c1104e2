//! Skew-symmetric invariant bilinear forms and the 3-cocycles they define.

use crate::error::{Error, Result};
use crate::linalg;
use crate::prelie2::{build_skeletal, PreLie2Algebra};
use crate::report::ValidationReport;
use crate::scalar::{self, Rational, Vector};
use crate::tensor::{multi_indices, MultiMap, Space};

use super::lie::check_shape;
use super::{cohomology, Cochain, PreLieAlgebra, PreLieRep};

/// `ω : A ⊗ A → k`, with `k` the 1-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantForm {
    pub omega: MultiMap,
}

/// The coefficient line.
pub fn line() -> Space {
    Space::new("k", 1)
}

impl InvariantForm {
    pub fn new(a: &PreLieAlgebra, omega: MultiMap) -> Result<Self> {
        check_shape("omega", &omega, &[&a.space, &a.space], &line())?;
        Ok(InvariantForm { omega })
    }

    /// Form from its Gram matrix `g[i][j] = ω(e_i, e_j)`.
    pub fn from_gram(a: &PreLieAlgebra, g: &[Vector]) -> Self {
        let omega = MultiMap::from_basis_images(vec![a.space.clone(), a.space.clone()], line(), |i| {
            vec![g[i[0]][i[1]].clone()]
        });
        InvariantForm { omega }
    }

    pub fn gram(&self) -> Vec<Vector> {
        let n = self.omega.inputs()[0].dim;
        (0..n).map(|i| (0..n).map(|j| self.omega.get(&[i, j], 0).clone()).collect()).collect()
    }

    pub fn at(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.omega.eval2(x, y)[0].clone()
    }

    /// Skewness and `ω(u·v − v·u, w) + ω(v, u·w) = 0`.
    pub fn validate(&self, a: &PreLieAlgebra) -> ValidationReport {
        let mut rep = ValidationReport::new();
        if let Ok(Some((idx, d))) = self.omega.skew_witness(0, 1) {
            rep.check("form skew", &idx, d);
        }
        let n = a.dim();
        for idx in multi_indices(&[n, n, n]) {
            let (u, v, w) = (a.space.basis(idx[0]), a.space.basis(idx[1]), a.space.basis(idx[2]));
            let r = self.at(&a.commutator(&u, &v), &w) + self.at(&v, &a.m(&u, &w));
            rep.check("invariance", &idx, vec![r]);
        }
        rep
    }

    /// The consequence `ω(u·v, w) = ω(u, w·v)`.
    pub fn consequence_report(&self, a: &PreLieAlgebra) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let n = a.dim();
        for idx in multi_indices(&[n, n, n]) {
            let (u, v, w) = (a.space.basis(idx[0]), a.space.basis(idx[1]), a.space.basis(idx[2]));
            let r = self.at(&a.m(&u, &v), &w) - self.at(&u, &a.m(&w, &v));
            rep.check("invariance consequence", &idx, vec![r]);
        }
        rep
    }
}

/// Basis of the space of skew invariant forms, found by an exact linear
/// solve over the `n(n−1)/2` skew coordinates.
pub fn invariant_forms(a: &PreLieAlgebra) -> Vec<InvariantForm> {
    let n = a.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
    let to_form = |x: &[Rational]| {
        let mut g = linalg::mat_zero(n, n);
        for (c, &(p, q)) in x.iter().zip(&pairs) {
            g[p][q] = c.clone();
            g[q][p] = -c.clone();
        }
        InvariantForm::from_gram(a, &g)
    };
    linalg::solve_linear_family(pairs.len(), |x| {
        let f = to_form(x);
        f.validate(a)
            .violations
            .into_iter()
            .fold(vec![Rational::default(); n * n * n], |mut acc, v| {
                let flat = (v.indices[0] * n + v.indices[1]) * n + v.indices[2];
                acc[flat] = v.difference[0].clone();
                acc
            })
    })
    .iter()
    .map(|x| to_form(x))
    .collect()
}

/// `φ(u,v,w) = ω(u·v − v·u, w)`, checked to be a 3-cocycle with trivial
/// coefficients.
pub fn cocycle_from_form(a: &PreLieAlgebra, omega: &InvariantForm) -> Result<Cochain> {
    check_shape("omega", &omega.omega, &[&a.space, &a.space], &line())?;
    let r = omega.validate(a);
    if !r.ok() {
        return Err(Error::invalid("invariant form", r));
    }
    let phi = MultiMap::from_basis_images(vec![a.space.clone(); 3], line(), |i| {
        let (u, v, w) = (a.space.basis(i[0]), a.space.basis(i[1]), a.space.basis(i[2]));
        vec![omega.at(&a.commutator(&u, &v), &w)]
    });
    let phi = Cochain::new(phi);
    let r = cohomology::cocycle_report(&phi, a, &PreLieRep::zero(a, line()))?;
    if !r.ok() {
        return Err(Error::invalid("3-cocycle from form", r));
    }
    Ok(phi)
}

/// Cyclic sum `l₃(u,v,w) + l₃(v,w,u) + l₃(w,u,v)` on all basis triples.
pub fn cyclic_sum_report(l3: &MultiMap) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for idx in multi_indices(&l3.input_dims()) {
        let (u, v, w) = (idx[0], idx[1], idx[2]);
        let s = scalar::signed_sum(
            l3.output().dim,
            &[(1, l3.image(&[u, v, w])), (1, l3.image(&[v, w, u])), (1, l3.image(&[w, u, v]))],
        );
        rep.check("cyclic sum", &idx, s);
    }
    rep
}

/// The skeletal pre-Lie 2-algebra `(A, k, 0, ·, 0, 0, φ)`.
pub fn skeletal_from_form(a: &PreLieAlgebra, omega: &InvariantForm) -> Result<PreLie2Algebra> {
    let phi = cocycle_from_form(a, omega)?;
    let s = build_skeletal(a, &PreLieRep::zero(a, line()), &phi)?;
    let r = cyclic_sum_report(&s.l3);
    if !r.ok() {
        return Err(Error::invalid("cyclic sum of l3", r));
    }
    Ok(s)
}
