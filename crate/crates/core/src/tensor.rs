//! Based vector spaces and dense multilinear maps between them.
//!
//! A [`MultiMap`] of arity `k` from `V₁ ⊗ … ⊗ V_k` to `W` stores the image of
//! every basis tuple `(e_{i₁}, …, e_{i_k})` as a contiguous coordinate vector
//! in `W`. The flat layout is row-major in `(i₁, …, i_k, j)`, so the output
//! index `j` varies fastest. Arity 1 is a linear map (the coefficient at
//! `(i, j)` is the `j`-th coordinate of the image of `e_i`), arity 0 is a
//! constant vector.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Rational, Vector};

/// A finite-dimensional space with a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Space {
    pub dim: usize,
    pub label: String,
}

impl Space {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Space {
            dim,
            label: label.into(),
        }
    }

    /// Dual space, realised on the dual basis.
    pub fn dual(&self) -> Self {
        Space::new(format!("{}*", self.label), self.dim)
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn direct_sum(&self, other: &Space) -> Self {
        Space::new(format!("{}+{}", self.label, other.label), self.dim + other.dim)
    }

    pub fn zero_vec(&self) -> Vector {
        scalar::zero_vec(self.dim)
    }

    pub fn basis(&self, i: usize) -> Vector {
        scalar::basis_vec(self.dim, i)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.label, self.dim)
    }
}

/// Dense multilinear map with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMap {
    inputs: Vec<Space>,
    output: Space,
    coeffs: Vec<Rational>,
}

/// Iterates over every multi-index of the given shape in row-major order.
pub fn multi_indices(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; dims.len()];
        for slot in (0..dims.len()).rev() {
            idx[slot] = flat % dims[slot];
            flat /= dims[slot];
        }
        idx
    })
}

impl MultiMap {
    pub fn zeros(inputs: Vec<Space>, output: Space) -> Self {
        let n = inputs.iter().map(|s| s.dim).product::<usize>() * output.dim;
        MultiMap {
            inputs,
            output,
            coeffs: vec![Rational::zero(); n],
        }
    }

    pub fn from_coeffs(inputs: Vec<Space>, output: Space, coeffs: Vec<Rational>) -> Result<Self> {
        let n = inputs.iter().map(|s| s.dim).product::<usize>() * output.dim;
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                context: "MultiMap::from_coeffs".into(),
                slot: inputs.len(),
                expected: n,
                found: coeffs.len(),
            });
        }
        Ok(MultiMap {
            inputs,
            output,
            coeffs,
        })
    }

    /// Builds a map from the image of every basis tuple.
    pub fn from_basis_images(
        inputs: Vec<Space>,
        output: Space,
        mut image: impl FnMut(&[usize]) -> Vector,
    ) -> Self {
        let mut m = MultiMap::zeros(inputs, output);
        let dims: Vec<usize> = m.inputs.iter().map(|s| s.dim).collect();
        for idx in multi_indices(&dims) {
            let v = image(&idx);
            assert_eq!(v.len(), m.output.dim, "basis image has wrong length");
            m.image_mut(&idx).clone_from_slice(&v);
        }
        m
    }

    pub fn identity(space: &Space) -> Self {
        MultiMap::from_basis_images(vec![space.clone()], space.clone(), |i| space.basis(i[0]))
    }

    /// Linear map from a column-major list of images: `images[i]` is the image of `e_i`.
    pub fn linear(input: &Space, output: &Space, images: &[Vector]) -> Self {
        MultiMap::from_basis_images(vec![input.clone()], output.clone(), |i| {
            images[i[0]].clone()
        })
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[Space] {
        &self.inputs
    }

    pub fn output(&self) -> &Space {
        &self.output
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Rational] {
        &mut self.coeffs
    }

    pub fn input_dims(&self) -> Vec<usize> {
        self.inputs.iter().map(|s| s.dim).collect()
    }

    /// Full shape `(dim in₁, …, dim in_k, dim out)`.
    pub fn shape(&self) -> Vec<usize> {
        let mut s = self.input_dims();
        s.push(self.output.dim);
        s
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.inputs.len());
        let mut flat = 0;
        for (i, s) in idx.iter().zip(&self.inputs) {
            debug_assert!(*i < s.dim);
            flat = flat * s.dim + i;
        }
        flat * self.output.dim
    }

    /// Image of a basis tuple.
    pub fn image(&self, idx: &[usize]) -> &[Rational] {
        let o = self.offset(idx);
        &self.coeffs[o..o + self.output.dim]
    }

    pub fn image_mut(&mut self, idx: &[usize]) -> &mut [Rational] {
        let o = self.offset(idx);
        let d = self.output.dim;
        &mut self.coeffs[o..o + d]
    }

    pub fn get(&self, idx: &[usize], j: usize) -> &Rational {
        &self.image(idx)[j]
    }

    /// Replaces every space label, keeping dimensions.
    pub fn relabeled(mut self, inputs: Vec<Space>, output: Space) -> Self {
        assert_eq!(inputs.len(), self.inputs.len());
        for (a, b) in inputs.iter().zip(&self.inputs) {
            assert_eq!(a.dim, b.dim);
        }
        assert_eq!(output.dim, self.output.dim);
        self.inputs = inputs;
        self.output = output;
        self
    }

    /// Checked multilinear evaluation.
    pub fn apply(&self, args: &[&[Rational]]) -> Result<Vector> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                context: "apply".into(),
                expected: self.arity(),
                found: args.len(),
            });
        }
        for (slot, (a, s)) in args.iter().zip(&self.inputs).enumerate() {
            if a.len() != s.dim {
                return Err(Error::DimensionMismatch {
                    context: format!("apply into {}", s),
                    slot,
                    expected: s.dim,
                    found: a.len(),
                });
            }
        }
        Ok(self.eval(args))
    }

    /// Unchecked multilinear evaluation; skips zero coordinates so basis
    /// and sparse arguments are cheap.
    pub fn eval(&self, args: &[&[Rational]]) -> Vector {
        let support: Vec<Vec<(usize, &Rational)>> = args
            .iter()
            .map(|a| a.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let mut out = self.output.zero_vec();
        if support.iter().any(Vec::is_empty) && !support.is_empty() {
            return out;
        }
        let mut pos = vec![0usize; support.len()];
        let mut idx = vec![0usize; support.len()];
        loop {
            let mut coef = Rational::one();
            for (slot, p) in pos.iter().enumerate() {
                let (i, c) = support[slot][*p];
                idx[slot] = i;
                coef *= c;
            }
            scalar::axpy(&mut out, &coef, self.image(&idx));
            // odometer
            let mut slot = support.len();
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                pos[slot] += 1;
                if pos[slot] < support[slot].len() {
                    break;
                }
                pos[slot] = 0;
            }
        }
    }

    /// Evaluation of a linear map.
    pub fn eval1(&self, x: &[Rational]) -> Vector {
        self.eval(&[x])
    }

    pub fn eval2(&self, x: &[Rational], y: &[Rational]) -> Vector {
        self.eval(&[x, y])
    }

    pub fn eval3(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        self.eval(&[x, y, z])
    }

    /// Composition `f ∘ g` of linear maps.
    pub fn compose_linear(f: &MultiMap, g: &MultiMap) -> Result<MultiMap> {
        if f.arity() != 1 || g.arity() != 1 {
            return Err(Error::ArityMismatch {
                context: "compose_linear".into(),
                expected: 1,
                found: if f.arity() != 1 { f.arity() } else { g.arity() },
            });
        }
        if g.output.dim != f.inputs[0].dim {
            return Err(Error::DimensionMismatch {
                context: "compose_linear".into(),
                slot: 0,
                expected: f.inputs[0].dim,
                found: g.output.dim,
            });
        }
        Ok(MultiMap::from_basis_images(
            g.inputs.clone(),
            f.output.clone(),
            |i| f.eval1(g.image(i)),
        ))
    }

    /// Post-composes every output with a linear map: `x ↦ f(m(x))`.
    pub fn then(&self, f: &MultiMap) -> MultiMap {
        assert_eq!(f.arity(), 1);
        assert_eq!(f.inputs[0].dim, self.output.dim);
        MultiMap::from_basis_images(self.inputs.clone(), f.output.clone(), |i| {
            f.eval1(self.image(i))
        })
    }

    /// True iff swapping slots `a` and `b` negates every coefficient.
    pub fn is_skew_in(&self, a: usize, b: usize) -> Result<bool> {
        Ok(self.skew_witness(a, b)?.is_none())
    }

    /// First basis tuple at which skewness in slots `a`, `b` fails, with `m(…) + m(swapped)`.
    pub fn skew_witness(&self, a: usize, b: usize) -> Result<Option<(Vec<usize>, Vector)>> {
        let k = self.arity();
        for s in [a, b] {
            if s >= k {
                return Err(Error::SlotOutOfRange { slot: s, arity: k });
            }
        }
        if self.inputs[a].dim != self.inputs[b].dim {
            return Err(Error::DimensionMismatch {
                context: "skew_witness".into(),
                slot: b,
                expected: self.inputs[a].dim,
                found: self.inputs[b].dim,
            });
        }
        for idx in multi_indices(&self.input_dims()) {
            let mut sw = idx.clone();
            sw.swap(a, b);
            let s = scalar::add(self.image(&idx), self.image(&sw));
            if !scalar::is_zero_vec(&s) {
                return Ok(Some((idx, s)));
            }
        }
        Ok(None)
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.coeffs)
    }

    /// Transpose of a linear map `V → W`, as a map `W* → V*` on dual bases.
    pub fn transpose(&self) -> MultiMap {
        assert_eq!(self.arity(), 1);
        let v = &self.inputs[0];
        MultiMap::from_basis_images(vec![self.output.dual()], v.dual(), |j| {
            (0..v.dim).map(|i| self.get(&[i], j[0]).clone()).collect()
        })
    }

    pub fn scaled(&self, c: &Rational) -> MultiMap {
        MultiMap {
            inputs: self.inputs.clone(),
            output: self.output.clone(),
            coeffs: scalar::scale(c, &self.coeffs),
        }
    }

    pub fn add(&self, other: &MultiMap) -> MultiMap {
        assert_eq!(self.shape(), other.shape());
        MultiMap {
            inputs: self.inputs.clone(),
            output: self.output.clone(),
            coeffs: scalar::add(&self.coeffs, &other.coeffs),
        }
    }

    pub fn sub(&self, other: &MultiMap) -> MultiMap {
        assert_eq!(self.shape(), other.shape());
        MultiMap {
            inputs: self.inputs.clone(),
            output: self.output.clone(),
            coeffs: scalar::sub(&self.coeffs, &other.coeffs),
        }
    }

    /// Reorders input slots: slot `s` of the result is slot `perm[s]` of `self`.
    pub fn permute_inputs(&self, perm: &[usize]) -> MultiMap {
        assert_eq!(perm.len(), self.arity());
        let inputs: Vec<Space> = perm.iter().map(|&p| self.inputs[p].clone()).collect();
        MultiMap::from_basis_images(inputs, self.output.clone(), |idx| {
            let mut orig = vec![0; idx.len()];
            for (s, &p) in perm.iter().enumerate() {
                orig[p] = idx[s];
            }
            self.image(&orig).to_vec()
        })
    }

    /// Square matrix of a linear endomorphism in row-major `rows[out][in]` form.
    pub fn to_rows(&self) -> Vec<Vector> {
        assert_eq!(self.arity(), 1);
        let n = self.inputs[0].dim;
        (0..self.output.dim)
            .map(|j| (0..n).map(|i| self.get(&[i], j).clone()).collect())
            .collect()
    }

    /// Inverse of [`to_rows`](Self::to_rows).
    pub fn from_rows(input: &Space, output: &Space, rows: &[Vector]) -> MultiMap {
        MultiMap::from_basis_images(vec![input.clone()], output.clone(), |i| {
            rows.iter().map(|r| r[i[0]].clone()).collect()
        })
    }

    /// Whether the map has the expected input and output spaces (by dimension).
    pub fn has_shape(&self, inputs: &[&Space], output: &Space) -> bool {
        self.inputs.len() == inputs.len()
            && self.inputs.iter().zip(inputs).all(|(a, b)| a.dim == b.dim)
            && self.output.dim == output.dim
    }
}

/// Nested-index view of a linear map's image of basis vector `i`.
pub fn column(m: &MultiMap, i: usize) -> &[Rational] {
    m.image(&[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn sp(n: usize) -> Space {
        Space::new("V", n)
    }

    #[test]
    fn zero_map_gives_zero() {
        let m = MultiMap::zeros(vec![sp(2), sp(3)], sp(2));
        let out = m.apply(&[&[int(4), int(-1)], &[int(1), int(2), int(3)]]).unwrap();
        assert!(scalar::is_zero_vec(&out));
    }

    #[test]
    fn identity_apply() {
        let id = MultiMap::identity(&sp(2));
        assert_eq!(id.apply(&[&[int(3), int(-5)]]).unwrap(), vec![int(3), int(-5)]);
    }

    #[test]
    fn apply_reports_offending_slot() {
        let m = MultiMap::zeros(vec![sp(2), sp(3)], sp(1));
        match m.apply(&[&[int(1), int(1)], &[int(1)]]) {
            Err(Error::DimensionMismatch { slot, expected, found, .. }) => {
                assert_eq!((slot, expected, found), (1, 3, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            m.apply(&[&[int(1), int(1)]]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn compose_identity_and_zero() {
        let s = sp(2);
        let g = MultiMap::from_rows(&s, &s, &[vec![int(1), frac(1, 2)], vec![int(-3), int(7)]]);
        let id = MultiMap::identity(&s);
        assert_eq!(MultiMap::compose_linear(&id, &g).unwrap(), g);
        let z = MultiMap::zeros(vec![s.clone()], s.clone());
        assert!(MultiMap::compose_linear(&z, &g).unwrap().is_zero());
    }

    #[test]
    fn compose_matches_schoolbook() {
        let s = sp(2);
        let a = vec![vec![frac(1, 3), int(2)], vec![int(-1), frac(5, 7)]];
        let b = vec![vec![int(4), frac(-1, 2)], vec![frac(2, 9), int(3)]];
        let f = MultiMap::from_rows(&s, &s, &a);
        let g = MultiMap::from_rows(&s, &s, &b);
        let fg = MultiMap::compose_linear(&f, &g).unwrap().to_rows();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = int(0);
                for k in 0..2 {
                    acc += &a[i][k] * &b[k][j];
                }
                assert_eq!(fg[i][j], acc);
            }
        }
    }

    #[test]
    fn compose_dimension_mismatch() {
        let f = MultiMap::zeros(vec![sp(2)], sp(2));
        let g = MultiMap::zeros(vec![sp(2)], sp(3));
        assert!(MultiMap::compose_linear(&f, &g).is_err());
    }

    #[test]
    fn skewness() {
        let s = sp(2);
        let skew = MultiMap::from_basis_images(vec![s.clone(), s.clone()], sp(1), |i| {
            vec![int(i[0] as i64 - i[1] as i64)]
        });
        assert!(skew.is_skew_in(0, 1).unwrap());
        let sym = MultiMap::from_basis_images(vec![s.clone(), s.clone()], sp(1), |_| vec![int(1)]);
        assert!(!sym.is_skew_in(0, 1).unwrap());
        assert!(matches!(
            sym.is_skew_in(0, 2),
            Err(Error::SlotOutOfRange { .. })
        ));
    }

    #[test]
    fn permute_inputs_swaps() {
        let s = sp(2);
        let m = MultiMap::from_basis_images(vec![s.clone(), s.clone()], sp(1), |i| {
            vec![int((10 * i[0] + i[1]) as i64)]
        });
        let p = m.permute_inputs(&[1, 0]);
        assert_eq!(p.get(&[0, 1], 0), &int(10));
    }
}
