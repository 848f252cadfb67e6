//! Automorphisms and antiautomorphisms of `H4` and their action on operators.
//!
//! Every automorphism has the form
//! `g ↦ εg + ax + b·gx`, `x ↦ px + q·gx` with `ε = ±1`, `p² ≠ q²`.
//! Antiautomorphisms are these composed with `ψ: g ↦ g, x ↦ x, gx ↦ -gx`.

use serde::{Deserialize, Serialize};

use crate::algebra::{h4, Element, StructureAlgebra, ONE};
use crate::error::{Error, Result};
use crate::field::{enumerate_field, Field, Scalar};
use crate::linops::LinearOperator;
use crate::rb::WeightedOperator;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutoParams {
    pub eps: i8,
    pub a: Scalar,
    pub b: Scalar,
    pub p: Scalar,
    pub q: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutoMap {
    pub op: LinearOperator,
    pub anti: bool,
    pub params: Option<AutoParams>,
}

impl AutoMap {
    pub fn identity(field: Field) -> AutoMap {
        let z = field.zero();
        AutoMap::from_params(1, z.clone(), z.clone(), field.one(), z, false).unwrap()
    }

    /// `ψ`: fixes `g` and `x`, reverses products.
    pub fn psi(field: Field) -> AutoMap {
        let z = field.zero();
        AutoMap::from_params(1, z.clone(), z.clone(), field.one(), z, true).unwrap()
    }

    pub fn from_params(eps: i8, a: Scalar, b: Scalar, p: Scalar, q: Scalar, anti: bool) -> Result<AutoMap> {
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidParams(format!("eps = {eps}, expected ±1")));
        }
        let field = a.field();
        for s in [&b, &p, &q] {
            if s.field() != field {
                return Err(Error::FieldMismatch { left: field, right: s.field() });
            }
        }
        if (&(&p * &p) - &(&q * &q)).is_zero() {
            return Err(Error::InvalidParams(format!("p² = q² for p = {p}, q = {q}")));
        }
        let e = field.from_i64(eps as i64);
        let z = field.zero();
        let sign = if anti { -&field.one() } else { field.one() };
        let cols = [
            vec![field.one(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), e.clone(), a.clone(), b.clone()],
            vec![z.clone(), z.clone(), p.clone(), q.clone()],
            vec![z.clone(), z, &sign * &(&e * &q), &sign * &(&e * &p)],
        ];
        let cols: Vec<Element> = cols.into_iter().map(|c| Element::new(c).unwrap()).collect();
        let op = LinearOperator::from_columns(&cols)?;
        Ok(AutoMap { op, anti, params: Some(AutoParams { eps, a, b, p, q }) })
    }

    /// Wraps an arbitrary matrix; no parameters are recorded.
    pub fn from_matrix(op: LinearOperator, anti: bool) -> AutoMap {
        AutoMap { op, anti, params: None }
    }

    pub fn field(&self) -> Field {
        self.op.field()
    }

    pub fn apply(&self, u: &Element) -> Result<Element> {
        self.op.apply(u)
    }

    /// `self ∘ other`. The result is anti iff exactly one factor is.
    pub fn compose(&self, other: &AutoMap) -> Result<AutoMap> {
        Ok(AutoMap { op: self.op.compose(&other.op)?, anti: self.anti != other.anti, params: None })
    }

    pub fn inverse(&self) -> Result<AutoMap> {
        Ok(AutoMap { op: self.op.invert()?, anti: self.anti, params: None })
    }

    pub fn to_json(&self) -> AutoMapJson {
        AutoMapJson {
            anti: self.anti,
            params: self.params.as_ref().map(|p| ParamsJson {
                eps: p.eps.to_string(),
                a: p.a.to_string(),
                b: p.b.to_string(),
                p: p.p.to_string(),
                q: p.q.to_string(),
            }),
            matrix: (0..self.op.dim())
                .map(|i| (0..self.op.dim()).map(|j| self.op.entry(i, j).to_string()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub eps: String,
    pub a: String,
    pub b: String,
    pub p: String,
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutoMapJson {
    pub anti: bool,
    pub params: Option<ParamsJson>,
    pub matrix: Vec<Vec<String>>,
}

/// Checks invertibility, `φ(1) = 1` and multiplicativity (reversed when anti)
/// on every basis pair.
pub fn validate_in(alg: &StructureAlgebra, phi: &AutoMap) -> bool {
    if phi.field() != alg.field() || phi.op.dim() != alg.dim() || phi.op.rank() != alg.dim() {
        return false;
    }
    let images = phi.op.columns();
    if images[alg.unit_index()] != alg.unit() {
        return false;
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let prod = alg.multiply(&alg.basis(i), &alg.basis(j)).unwrap();
            let lhs = phi.op.apply(&prod).unwrap();
            let rhs = if phi.anti {
                alg.multiply(&images[j], &images[i]).unwrap()
            } else {
                alg.multiply(&images[i], &images[j]).unwrap()
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn validate(phi: &AutoMap) -> bool {
    match h4(phi.field()) {
        Ok(alg) => validate_in(&alg, phi),
        Err(_) => false,
    }
}

/// All automorphisms over `F_p` (followed by the antiautomorphisms when
/// requested), ordered by `(anti, ε, a, b, p, q)` with `ε = 1` first.
pub fn enumerate_maps(p: u64, include_anti: bool) -> Result<Vec<AutoMap>> {
    Field::prime(p)?;
    let elems = enumerate_field(p)?;
    let mut out = Vec::new();
    let classes: &[bool] = if include_anti { &[false, true] } else { &[false] };
    for &anti in classes {
        for eps in [1i8, -1] {
            for a in &elems {
                for b in &elems {
                    for pp in &elems {
                        for q in &elems {
                            if (&(pp * pp) - &(q * q)).is_zero() {
                                continue;
                            }
                            out.push(AutoMap::from_params(eps, a.clone(), b.clone(), pp.clone(), q.clone(), anti)?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `φ⁻¹ ∘ R ∘ φ`.
pub fn conjugate(w: &WeightedOperator, phi: &AutoMap) -> Result<WeightedOperator> {
    let inv = phi.op.invert()?;
    let op = inv.compose(&w.op)?.compose(&phi.op)?;
    WeightedOperator::new(op, w.weight.clone())
}

/// Every invertible linear map fixing `1` that passes `validate`, found by
/// brute force over all images of `g`, `x` and `gx`. A bijective
/// (anti)multiplicative map must fix the unit, so this covers every
/// (anti)automorphism. Exponential in `p`; meant for cross-checking the
/// parametrization at small `p`.
pub fn brute_force_maps(p: u64, anti: bool) -> Result<Vec<AutoMap>> {
    let field = Field::prime(p)?;
    let alg = h4(field)?;
    let elems = enumerate_field(p)?;
    let mut vectors = Vec::new();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    vectors.push(Element::new(vec![a.clone(), b.clone(), c.clone(), d.clone()])?);
                }
            }
        }
    }
    let one = alg.basis(ONE);
    let mut out = Vec::new();
    for vg in &vectors {
        for vx in &vectors {
            let prod = if anti { alg.multiply(vx, vg)? } else { alg.multiply(vg, vx)? };
            for vgx in &vectors {
                // cheap necessary condition before the full check
                if *vgx != prod {
                    continue;
                }
                let op = LinearOperator::from_columns(&[one.clone(), vg.clone(), vx.clone(), vgx.clone()])?;
                let phi = AutoMap::from_matrix(op, anti);
                if validate_in(&alg, &phi) {
                    out.push(phi);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    const Q: Field = Field::Rational;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    #[test]
    fn identity_and_sign_flip() {
        let id = AutoMap::identity(Q);
        assert_eq!(id.op, LinearOperator::identity(Q, 4));
        assert!(validate(&id));
        let flip = AutoMap::from_params(-1, q(0, 1), q(0, 1), q(1, 1), q(0, 1), false).unwrap();
        assert!(validate(&flip));
        assert_eq!(flip.apply(&Element::from_ints(Q, &[0, 1, 0, 0])).unwrap(), Element::from_ints(Q, &[0, -1, 0, 0]));
        assert_eq!(flip.apply(&Element::from_ints(Q, &[0, 0, 1, 0])).unwrap(), Element::from_ints(Q, &[0, 0, 1, 0]));
    }

    #[test]
    fn degenerate_params_rejected() {
        let r = AutoMap::from_params(1, q(0, 1), q(0, 1), q(1, 1), q(1, 1), false);
        assert!(matches!(r, Err(Error::InvalidParams(_))));
        let r = AutoMap::from_params(2, q(0, 1), q(0, 1), q(1, 1), q(0, 1), false);
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn psi_is_an_antiautomorphism() {
        let psi = AutoMap::psi(Q);
        assert!(validate(&psi));
        assert_eq!(psi.apply(&Element::from_ints(Q, &[0, 0, 0, 1])).unwrap(), Element::from_ints(Q, &[0, 0, 0, -1]));
        let naive = AutoMap::from_matrix(LinearOperator::identity(Q, 4), true);
        assert!(!validate(&naive));
        assert!(!validate(&AutoMap::from_matrix(psi.op.clone(), false)));
    }

    #[test]
    fn counts_over_small_fields() {
        assert_eq!(enumerate_maps(3, false).unwrap().len(), 72);
        assert_eq!(enumerate_maps(3, true).unwrap().len(), 144);
        assert_eq!(enumerate_maps(5, true).unwrap().len(), 1600);
        assert!(matches!(enumerate_maps(9, false), Err(Error::InvalidModulus(9))));
        let maps = enumerate_maps(3, true).unwrap();
        assert!(maps.iter().all(validate));
        let distinct: BTreeSet<_> = maps.iter().map(|m| (m.anti, m.op.clone())).collect();
        assert_eq!(distinct.len(), 144);
    }

    #[test]
    fn parametrization_is_surjective_over_f3() {
        for anti in [false, true] {
            let brute: BTreeSet<LinearOperator> =
                brute_force_maps(3, anti).unwrap().into_iter().map(|m| m.op).collect();
            let param: BTreeSet<LinearOperator> =
                enumerate_maps(3, true).unwrap().into_iter().filter(|m| m.anti == anti).map(|m| m.op).collect();
            assert_eq!(brute, param);
        }
    }

    #[test]
    fn group_closure_over_f3() {
        let maps = enumerate_maps(3, true).unwrap();
        let all: BTreeSet<(bool, LinearOperator)> = maps.iter().map(|m| (m.anti, m.op.clone())).collect();
        for f in &maps {
            let inv = f.inverse().unwrap();
            assert!(all.contains(&(inv.anti, inv.op)));
            for g in &maps {
                let c = f.compose(g).unwrap();
                assert!(all.contains(&(c.anti, c.op)));
            }
        }
    }

    #[test]
    fn conjugate_by_identity() {
        let w = WeightedOperator::minus_lambda_id(&q(3, 1), 4);
        assert_eq!(conjugate(&w, &AutoMap::identity(Q)).unwrap(), w);
    }

    #[test]
    fn conjugation_commutes_with_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = Field::Prime(3);
        let maps = enumerate_maps(3, true).unwrap();
        for _ in 0..300 {
            let e: Vec<Scalar> = (0..16).map(|_| Scalar::residue(rng.gen_range(0..3), 3)).collect();
            let w =
                WeightedOperator::new(LinearOperator::from_entries(f, 4, e).unwrap(), Scalar::residue(1, 3)).unwrap();
            let phi = &maps[rng.gen_range(0..maps.len())];
            assert_eq!(conjugate(&w.dual(), phi).unwrap(), conjugate(&w, phi).unwrap().dual());
        }
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_value(AutoMap::psi(Field::Prime(5)).to_json()).unwrap();
        assert_eq!(j["anti"], true);
        assert_eq!(j["params"]["eps"], "1");
        assert_eq!(j["matrix"][3][3], "4");
    }
}
