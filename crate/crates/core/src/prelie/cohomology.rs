//! Cochains of a pre-Lie algebra with values in a representation, and the
//! coboundary operator.
//!
//! An arity-`n` cochain is a map `Λⁿ⁻¹A ⊗ A → V`. Skewness in the first
//! `n − 1` slots is checked, not enforced by the storage.

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::scalar::{self, Rational, Vector};
use crate::tensor::{multi_indices, MultiMap};

use super::lie::check_shape;
use super::{PreLieAlgebra, PreLieRep};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub n: usize,
    pub map: MultiMap,
}

impl Cochain {
    pub fn new(map: MultiMap) -> Self {
        Cochain { n: map.arity(), map }
    }

    /// Adjacent transpositions generate the symmetric group, so checking
    /// them is enough.
    pub fn validate_skew(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for a in 0..self.n.saturating_sub(2) {
            match self.map.skew_witness(a, a + 1) {
                Ok(Some((idx, diff))) => rep.check("cochain skew", &idx, diff),
                Ok(None) => {}
                Err(_) => rep.fail("cochain skew", &[a, a + 1]),
            }
        }
        rep
    }

    /// Projects an arbitrary map onto the cochains by alternating over the
    /// first `n − 1` slots (without the `1/(n−1)!` factor).
    pub fn alternate(map: &MultiMap) -> Cochain {
        let n = map.arity();
        let k = n.saturating_sub(1);
        let perms = permutations(k);
        let out = MultiMap::from_basis_images(map.inputs().to_vec(), map.output().clone(), |idx| {
            let mut acc = scalar::zero_vec(map.output().dim);
            for (p, sign) in &perms {
                let mut src = idx.to_vec();
                for (s, &t) in p.iter().enumerate() {
                    src[s] = idx[t];
                }
                if *sign > 0 {
                    scalar::add_assign(&mut acc, map.image(&src));
                } else {
                    scalar::sub_assign(&mut acc, map.image(&src));
                }
            }
            acc
        });
        Cochain::new(out)
    }
}

/// All permutations of `0..k` with their signs.
fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        // insert k−1 at every position; moving it left past j elements costs (−1)^j
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let moved = (p.len() - pos) as i32;
            out.push((q, if moved % 2 == 0 { s } else { -s }));
        }
    }
    out
}

fn sign(i: usize) -> i32 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `dω` for an arity-`n` cochain `ω`, an arity-`(n+1)` cochain.
pub fn coboundary(w: &Cochain, a: &PreLieAlgebra, rep: &PreLieRep) -> Result<Cochain> {
    if w.n != w.map.arity() {
        return Err(Error::ArityMismatch {
            context: "cochain".into(),
            expected: w.n,
            found: w.map.arity(),
        });
    }
    let slots: Vec<&crate::tensor::Space> = vec![&a.space; w.n];
    check_shape("cochain", &w.map, &slots, &rep.space)?;
    let n = w.n;
    let vdim = rep.space.dim;
    let omega = |args: &[Vector]| -> Vector {
        let refs: Vec<&[Rational]> = args.iter().map(Vec::as_slice).collect();
        w.map.eval(&refs)
    };
    let out = MultiMap::from_basis_images(vec![a.space.clone(); n + 1], rep.space.clone(), |idx| {
        let x: Vec<Vector> = idx.iter().map(|&i| a.space.basis(i)).collect();
        let without = |skip: &[usize], upto: usize| -> Vec<Vector> {
            (0..upto).filter(|k| !skip.contains(k)).map(|k| x[k].clone()).collect()
        };
        let mut terms: Vec<(i32, Vector)> = Vec::new();
        for i in 0..n {
            let s = sign(i);
            terms.push((s, rep.rho_at(&x[i], &omega(&without(&[i], n + 1)))));

            let mut args = without(&[i], n);
            args.push(x[i].clone());
            terms.push((s, rep.mu_at(&x[n], &omega(&args))));

            let mut args = without(&[i], n);
            args.push(a.m(&x[i], &x[n]));
            terms.push((-s, omega(&args)));
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut args = vec![a.commutator(&x[i], &x[j])];
                args.extend(without(&[i, j], n + 1));
                terms.push((sign(i + j), omega(&args)));
            }
        }
        let refs: Vec<(i32, &[Rational])> = terms.iter().map(|(s, t)| (*s, t.as_slice())).collect();
        scalar::signed_sum(vdim, &refs)
    });
    Ok(Cochain::new(out))
}

/// Whether `dω = 0`, as a report tagged `cocycle`.
pub fn cocycle_report(w: &Cochain, a: &PreLieAlgebra, rep: &PreLieRep) -> Result<ValidationReport> {
    let dw = coboundary(w, a, rep)?;
    let mut r = ValidationReport::new();
    for idx in multi_indices(&dw.map.input_dims()) {
        r.check("cocycle", &idx, dw.map.image(&idx).to_vec());
    }
    Ok(r)
}
