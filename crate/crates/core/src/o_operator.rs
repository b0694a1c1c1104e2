//! O-operators on Lie 2-algebras and the pre-Lie 2-algebras they induce.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie2::{from_prelie2, Lie2Algebra, Lie2Hom, Lie2Rep};
use crate::prelie::lie::{check_shape, validate_o_operator};
use crate::prelie2::PreLie2Algebra;
use crate::report::ValidationReport;
use crate::scalar::{self, int, Rational, Vector};
use crate::tensor::{multi_indices, MultiMap};

/// `(T₀, T₁, T₂)` together with the Lie 2-algebra `𝒢` and the representation
/// it refers to. `T₀ : V₀ → g₀`, `T₁ : V₁ → g₁`, `T₂ : V₀ ⊗ V₀ → g₁` skew.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OOperator {
    pub g: Lie2Algebra,
    pub rep: Lie2Rep,
    pub t0: MultiMap,
    pub t1: MultiMap,
    pub t2: MultiMap,
}

impl OOperator {
    pub fn new(g: Lie2Algebra, rep: Lie2Rep, t0: MultiMap, t1: MultiMap, t2: MultiMap) -> Result<Self> {
        let o = OOperator { g, rep, t0, t1, t2 };
        o.check_shapes()?;
        Ok(o)
    }

    pub fn zero(g: Lie2Algebra, rep: Lie2Rep) -> Self {
        let (v0, v1) = (rep.complex.v0.clone(), rep.complex.v1.clone());
        OOperator {
            t0: MultiMap::zeros(vec![v0.clone()], g.g0.clone()),
            t1: MultiMap::zeros(vec![v1], g.g1.clone()),
            t2: MultiMap::zeros(vec![v0.clone(), v0], g.g1.clone()),
            g,
            rep,
        }
    }

    /// `(id, id, 0)` on `𝒢(𝒜)` with the representation `(L₀, L₁, L₂)`.
    pub fn identity(a: &PreLie2Algebra) -> Result<Self> {
        let (g, rep) = from_prelie2(a)?;
        let t0 = MultiMap::identity(&a.a0);
        let t1 = MultiMap::identity(&a.a1);
        let t2 = MultiMap::zeros(vec![a.a0.clone(), a.a0.clone()], a.a1.clone());
        Ok(OOperator { g, rep, t0, t1, t2 })
    }

    pub fn check_shapes(&self) -> Result<()> {
        self.rep.check_shapes(&self.g)?;
        let (v0, v1) = (&self.rep.complex.v0, &self.rep.complex.v1);
        check_shape("T0", &self.t0, &[v0], &self.g.g0)?;
        check_shape("T1", &self.t1, &[v1], &self.g.g1)?;
        check_shape("T2", &self.t2, &[v0, v0], &self.g.g1)
    }

    fn rho0(&self, x: &[Rational], u: &[Rational]) -> Vector {
        self.rep.rho0_v0.eval2(x, u)
    }

    fn rho0m(&self, x: &[Rational], m: &[Rational]) -> Vector {
        self.rep.rho0_v1.eval2(x, m)
    }

    fn rho1(&self, a: &[Rational], u: &[Rational]) -> Vector {
        self.rep.rho1.eval2(a, u)
    }

    fn rho2(&self, x: &[Rational], y: &[Rational], u: &[Rational]) -> Vector {
        self.rep.rho2.eval3(x, y, u)
    }

    fn tt0(&self, u: &[Rational]) -> Vector {
        self.t0.eval1(u)
    }

    fn tt1(&self, m: &[Rational]) -> Vector {
        self.t1.eval1(m)
    }

    fn tt2(&self, u: &[Rational], v: &[Rational]) -> Vector {
        self.t2.eval2(u, v)
    }

    /// Chain-map condition, `T₂` skewness and conditions (i)–(iii). Condition
    /// (iii) is also evaluated in its rewritten form through the induced
    /// product and `l₃`, reported under its own tag when the two disagree.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.check_shapes()?;
        let g = &self.g;
        let v = &self.rep.complex;
        let (n0, n1) = (v.v0.dim, v.v1.dim);
        let e0 = |i: usize| v.v0.basis(i);
        let e1 = |i: usize| v.v1.basis(i);
        let mut rep = ValidationReport::new();
        if let Ok(Some((idx, d))) = self.t2.skew_witness(0, 1) {
            rep.check("T2 skew", &idx, d);
        }
        for m in 0..n1 {
            let k = e1(m);
            let d = scalar::sub(&self.tt0(&v.d.eval1(&k)), &g.d.eval1(&self.tt1(&k)));
            rep.check("chain map", &[m], d);
        }
        for i in 0..n0 {
            for j in 0..n0 {
                let (u, w) = (e0(i), e0(j));
                let (tu, tw) = (self.tt0(&u), self.tt0(&w));
                let inner = scalar::sub(&self.rho0(&tu, &w), &self.rho0(&tw, &u));
                let lhs = scalar::sub(&self.tt0(&inner), &g.l2_00.eval2(&tu, &tw));
                rep.check("(i)", &[i, j], scalar::sub(&lhs, &g.d.eval1(&self.tt2(&u, &w))));
            }
        }
        for m in 0..n1 {
            for j in 0..n0 {
                let (k, w) = (e1(m), e0(j));
                let (tk, tw) = (self.tt1(&k), self.tt0(&w));
                let inner = scalar::sub(&self.rho1(&tk, &w), &self.rho0m(&tw, &k));
                // 𝔩₂(T₁m, T₀v) = −𝔩₂(T₀v, T₁m)
                let lhs = scalar::add(&self.tt1(&inner), &g.l2_01.eval2(&tw, &tk));
                rep.check("(ii)", &[m, j], scalar::sub(&lhs, &self.tt2(&v.d.eval1(&k), &w)));
            }
        }
        let induced = self.induced_unchecked();
        for idx in multi_indices(&[n0, n0, n0]) {
            let vs = [e0(idx[0]), e0(idx[1]), e0(idx[2])];
            let direct = self.condition_iii(&vs);
            rep.check("(iii)", &idx, direct.clone());
            let rewritten = self.condition_iii_rewritten(&vs, &induced);
            rep.check("(iii) rewritten", &idx, scalar::sub(&direct, &rewritten));
        }
        Ok(rep.sorted())
    }

    fn condition_iii(&self, v: &[Vector; 3]) -> Vector {
        let g = &self.g;
        let t: Vec<Vector> = v.iter().map(|x| self.tt0(x)).collect();
        let mut acc = g.l3.eval3(&t[0], &t[1], &t[2]);
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let t23 = self.tt2(&v[b], &v[c]);
            scalar::add_assign(&mut acc, &g.l2_01.eval2(&t[a], &t23));
            let inner = scalar::sub(&self.rho0(&t[a], &v[b]), &self.rho0(&t[b], &v[a]));
            scalar::add_assign(&mut acc, &self.tt2(&v[c], &inner));
            let act = scalar::add(&self.rho1(&t23, &v[a]), &self.rho2(&t[b], &t[c], &v[a]));
            scalar::add_assign(&mut acc, &self.tt1(&act));
        }
        acc
    }

    fn condition_iii_rewritten(&self, v: &[Vector; 3], a: &PreLie2Algebra) -> Vector {
        let g = &self.g;
        let t: Vec<Vector> = v.iter().map(|x| self.tt0(x)).collect();
        let mut acc = g.l3.eval3(&t[0], &t[1], &t[2]);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            scalar::add_assign(&mut acc, &g.l2_01.eval2(&t[i], &self.tt2(&v[j], &v[k])));
            let comm = scalar::sub(&a.mul00.eval2(&v[i], &v[j]), &a.mul00.eval2(&v[j], &v[i]));
            scalar::add_assign(&mut acc, &self.tt2(&v[k], &comm));
            scalar::sub_assign(&mut acc, &self.tt1(&a.l3.eval3(&v[i], &v[j], &v[k])));
        }
        acc
    }

    fn induced_unchecked(&self) -> PreLie2Algebra {
        let v = &self.rep.complex;
        let (v0, v1) = (v.v0.clone(), v.v1.clone());
        let mut out = PreLie2Algebra::zero(v0.clone(), v1.clone());
        out.d = v.d.clone();
        out.mul00 = MultiMap::from_basis_images(vec![v0.clone(), v0.clone()], v0.clone(), |i| {
            self.rho0(self.t0.image(&[i[0]]), &v0.basis(i[1]))
        });
        out.mul01 = MultiMap::from_basis_images(vec![v0.clone(), v1.clone()], v1.clone(), |i| {
            self.rho0m(self.t0.image(&[i[0]]), &v1.basis(i[1]))
        });
        out.mul10 = MultiMap::from_basis_images(vec![v1.clone(), v0.clone()], v1.clone(), |i| {
            self.rho1(self.t1.image(&[i[0]]), &v0.basis(i[1]))
        });
        out.l3 = MultiMap::from_basis_images(vec![v0.clone(), v0.clone(), v0.clone()], v1.clone(), |i| {
            let c = v0.basis(i[2]);
            let x = self.rho1(self.t2.image(&[i[0], i[1]]), &c);
            let y = self.rho2(self.t0.image(&[i[0]]), self.t0.image(&[i[1]]), &c);
            scalar::neg(&scalar::add(&x, &y))
        });
        out
    }

    /// The pre-Lie 2-algebra on `𝒱` with `u·v = ρ₀(T₀u)v`, `u·m = ρ₀(T₀u)m`,
    /// `m·u = ρ₁(T₁m)u` and `l₃(v₁,v₂,v₃) = −ρ₁(T₂(v₁,v₂))v₃ − ρ₂(T₀v₁,T₀v₂)v₃`.
    pub fn induced_prelie2(&self) -> Result<PreLie2Algebra> {
        let r = self.validate()?;
        if !r.ok() {
            return Err(Error::invalid("O-operator", r));
        }
        Ok(self.induced_unchecked())
    }

    /// `(T₀, T₁, T₂)` as a Lie 2-algebra homomorphism `𝒢(𝒱) → 𝒢`.
    pub fn induced_hom(&self) -> Result<Lie2Hom> {
        let r = self.validate()?;
        if !r.ok() {
            return Err(Error::invalid("O-operator", r));
        }
        Ok(Lie2Hom {
            f0: self.t0.clone(),
            f1: self.t1.clone(),
            f2: self.t2.clone(),
        })
    }
}

/// `T₀ ⊕ T₁ : V₀ ⊕ V₁ → g₀ ⊕ g₁` as a single linear map.
pub fn block_sum(t0: &MultiMap, t1: &MultiMap) -> MultiMap {
    let (vin0, vin1) = (&t0.inputs()[0], &t1.inputs()[0]);
    let vin = vin0.direct_sum(vin1);
    let out = t0.output().direct_sum(t1.output());
    MultiMap::from_basis_images(vec![vin.clone()], out, |i| {
        let j = i[0];
        if j < vin0.dim {
            scalar::concat(t0.image(&[j]), &t1.output().zero_vec())
        } else {
            scalar::concat(&t0.output().zero_vec(), t1.image(&[j - vin0.dim]))
        }
    })
}

/// The flattened form of a strict O-operator: `T₀ ⊕ T₁` is an O-operator on
/// `(g₀ ⊕ g₁, [·,·]ₛ)` for `ρ₀ ⊕ ρ₁`, and `T₀∘d = 𝔡∘T₁`.
pub fn flatten_report(t0: &MultiMap, t1: &MultiMap, g: &Lie2Algebra, rep: &Lie2Rep) -> Result<ValidationReport> {
    if !g.is_strict() {
        return Err(Error::NotStrict("l3 is nonzero".into()));
    }
    if !rep.is_strict() {
        return Err(Error::NotStrict("rho2 is nonzero".into()));
    }
    rep.check_shapes(g)?;
    check_shape("T0", t0, &[&rep.complex.v0], &g.g0)?;
    check_shape("T1", t1, &[&rep.complex.v1], &g.g1)?;
    let flat = g.flattened();
    let frep = rep.flattened(g);
    let mut out = validate_o_operator(&flat, &frep, &block_sum(t0, t1)).prefixed("flattened");
    for m in 0..rep.complex.v1.dim {
        let k = rep.complex.v1.basis(m);
        let d = scalar::sub(&t0.eval1(&rep.complex.d.eval1(&k)), &g.d.eval1(&t1.eval1(&k)));
        out.check("chain map", &[m], d);
    }
    Ok(out)
}

pub fn flatten_check(t0: &MultiMap, t1: &MultiMap, g: &Lie2Algebra, rep: &Lie2Rep) -> Result<bool> {
    Ok(flatten_report(t0, t1, g, rep)?.ok())
}

/// All O-operators whose free coefficients lie in `range`, found by
/// exhaustive search. The free coefficients are the entries of `T₀`, `T₁`
/// and the strictly upper entries of `T₂`. The grid is sharded across the
/// rayon pool; results are in grid order.
pub fn search(g: &Lie2Algebra, rep: &Lie2Rep, range: &[i64]) -> Result<Vec<OOperator>> {
    let base = OOperator::zero(g.clone(), rep.clone());
    base.check_shapes()?;
    let (v0, v1) = (rep.complex.v0.dim, rep.complex.v1.dim);
    let (g0, g1) = (g.g0.dim, g.g1.dim);
    let n_t0 = v0 * g0;
    let n_t1 = v1 * g1;
    let pairs: Vec<(usize, usize)> = (0..v0).flat_map(|p| (p + 1..v0).map(move |q| (p, q))).collect();
    let free = n_t0 + n_t1 + pairs.len() * g1;
    let k = range.len() as u64;
    let total = k.checked_pow(free as u32).ok_or_else(|| Error::Schema("search grid too large".into()))?;
    let build = |mut code: u64| {
        let mut coeffs: Vec<Rational> = Vec::with_capacity(free);
        for _ in 0..free {
            coeffs.push(int(range[(code % k) as usize]));
            code /= k;
        }
        let mut o = base.clone();
        o.t0.coeffs_mut().clone_from_slice(&coeffs[..n_t0]);
        o.t1.coeffs_mut().clone_from_slice(&coeffs[n_t0..n_t0 + n_t1]);
        for (pi, &(p, q)) in pairs.iter().enumerate() {
            for c in 0..g1 {
                let x = coeffs[n_t0 + n_t1 + pi * g1 + c].clone();
                o.t2.image_mut(&[q, p])[c] = -x.clone();
                o.t2.image_mut(&[p, q])[c] = x;
            }
        }
        o
    };
    Ok((0..total)
        .into_par_iter()
        .filter_map(|code| {
            let o = build(code);
            o.validate().ok().filter(|r| r.ok()).map(|_| o)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lie2::validate_hom;

    fn fix_b_identity() -> OOperator {
        OOperator::identity(&fixtures::fix_b()).unwrap()
    }

    #[test]
    fn zero_is_valid_and_induces_zero_products() {
        let o = fix_b_identity();
        let z = OOperator::zero(o.g.clone(), o.rep.clone());
        assert!(z.validate().unwrap().ok());
        let a = z.induced_prelie2().unwrap();
        assert!(a.mul00.is_zero() && a.mul01.is_zero() && a.mul10.is_zero() && a.l3.is_zero());
        assert!(a.validate().ok());
        let (src, _) = from_prelie2(&a).unwrap();
        assert!(validate_hom(&z.induced_hom().unwrap(), &src, &z.g).unwrap().ok());
    }

    #[test]
    fn identity_reproduces_every_fixture() {
        for (name, a) in fixtures::all_prelie2() {
            let o = OOperator::identity(&a).unwrap();
            let r = o.validate().unwrap();
            assert!(r.ok(), "{name}: {r}");
            assert_eq!(o.induced_prelie2().unwrap(), a, "{name}");
            let h = o.induced_hom().unwrap();
            assert_eq!(h, Lie2Hom::identity(&o.g));
        }
    }

    #[test]
    fn doubled_t0_breaks_only_the_chain_map() {
        // both sides of (i) scale quadratically, so only T₀∘d = 𝔡∘T₁ fails
        let mut o = fix_b_identity();
        o.t0 = o.t0.scaled(&int(2));
        let r = o.validate().unwrap();
        assert_eq!(r.conditions(), vec!["chain map"], "{r}");
    }

    #[test]
    fn nonzero_t2_breaks_condition_i() {
        // d T₂(e₁,e₂) = e₂ while the left side of (i) vanishes for T₀ = id
        let mut o = fix_b_identity();
        o.t2.image_mut(&[0, 1])[0] = int(1);
        o.t2.image_mut(&[1, 0])[0] = int(-1);
        let r = o.validate().unwrap();
        assert!(r.mentions("(i)"), "{r}");
        assert!(!r.mentions("(iii) rewritten"));
    }

    #[test]
    fn strict_context_gives_strict_output() {
        let o = fix_b_identity();
        assert!(o.rep.is_strict() && o.t2.is_zero());
        assert!(o.induced_prelie2().unwrap().is_strict());
    }

    #[test]
    fn nonzero_non_identity_operator() {
        let o = fix_b_identity();
        let mut t = o.clone();
        t.t0 = MultiMap::linear(&o.rep.complex.v0, &o.g.g0, &[vec![int(1), int(1)], vec![int(0), int(1)]]);
        let r = t.validate().unwrap();
        assert!(r.ok(), "{r}");
        let a = t.induced_prelie2().unwrap();
        assert!(a.validate().ok());
        let (src, _) = from_prelie2(&a).unwrap();
        assert!(validate_hom(&t.induced_hom().unwrap(), &src, &t.g).unwrap().ok());
    }

    #[test]
    fn search_finds_identity_and_zero() {
        let o = fix_b_identity();
        let found = search(&o.g, &o.rep, &[-1, 0, 1]).unwrap();
        assert!(found.iter().any(|x| x.t0.is_zero() && x.t1.is_zero() && x.t2.is_zero()));
        assert!(found.iter().any(|x| *x == o));
        for x in &found {
            assert!(x.induced_prelie2().unwrap().validate().ok());
        }
    }

    #[test]
    fn flatten_agrees_with_validate() {
        let o = fix_b_identity();
        let found = search(&o.g, &o.rep, &[-1, 0, 1]).unwrap();
        let strict_found: Vec<_> = found.iter().filter(|x| x.t2.is_zero()).collect();
        assert!(!strict_found.is_empty());
        for x in strict_found {
            assert!(flatten_check(&x.t0, &x.t1, &x.g, &x.rep).unwrap());
        }
        let mut bad = o.clone();
        bad.t1 = bad.t1.scaled(&int(2));
        assert!(!bad.validate().unwrap().ok());
        let r = flatten_report(&bad.t0, &bad.t1, &bad.g, &bad.rep).unwrap();
        assert!(r.mentions("chain map"));
    }

    #[test]
    fn flattened_rep_is_a_rep() {
        let o = fix_b_identity();
        let flat = o.g.flattened();
        assert!(o.rep.flattened(&o.g).validate(&flat).ok());
    }

    #[test]
    fn flatten_rejects_non_strict_context() {
        let o = OOperator::identity(&fixtures::fix_omega()).unwrap();
        assert!(matches!(flatten_check(&o.t0, &o.t1, &o.g, &o.rep), Err(Error::NotStrict(_))));
    }
}
