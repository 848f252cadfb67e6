//! The Rota-Baxter identity of weight `λ`:
//! `R(a)R(b) = R(R(a)b + aR(b) + λab)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, StructureAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linops::LinearOperator;

/// A linear operator together with the weight it is checked against.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedOperator {
    pub op: LinearOperator,
    pub weight: Scalar,
}

impl WeightedOperator {
    pub fn new(op: LinearOperator, weight: Scalar) -> Result<WeightedOperator> {
        if op.field() != weight.field() {
            return Err(Error::FieldMismatch { left: op.field(), right: weight.field() });
        }
        Ok(WeightedOperator { op, weight })
    }

    pub fn field(&self) -> Field {
        self.op.field()
    }

    /// Weight zero is accepted here; the classifier refuses it.
    pub fn is_weight_zero(&self) -> bool {
        self.weight.is_zero()
    }

    /// `-λ id`.
    pub fn minus_lambda_id(weight: &Scalar, dim: usize) -> WeightedOperator {
        let op = LinearOperator::identity(weight.field(), dim).scale(&-weight).unwrap();
        WeightedOperator { op, weight: weight.clone() }
    }

    pub fn zero(weight: &Scalar, dim: usize) -> WeightedOperator {
        WeightedOperator { op: LinearOperator::zero(weight.field(), dim), weight: weight.clone() }
    }

    /// The dual operator `-λ id - R`, same weight.
    pub fn dual(&self) -> WeightedOperator {
        let minus = WeightedOperator::minus_lambda_id(&self.weight, self.op.dim());
        WeightedOperator { op: minus.op.sub(&self.op).unwrap(), weight: self.weight.clone() }
    }

    /// Zero or `-λ id`.
    pub fn is_trivial(&self) -> bool {
        self.op.is_zero() || self.op == WeightedOperator::minus_lambda_id(&self.weight, self.op.dim()).op
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson {
            weight: self.weight.to_string(),
            images: self.op.columns().into_iter().map(|c| c.coords().iter().map(|s| s.to_string()).collect()).collect(),
        }
    }

    pub fn from_json(field: Field, json: &OperatorJson) -> Result<WeightedOperator> {
        let weight = field.parse(&json.weight)?;
        let cols = json
            .images
            .iter()
            .map(|c| Element::new(c.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>()?))
            .collect::<Result<Vec<_>>>()?;
        WeightedOperator::new(LinearOperator::from_columns(&cols)?, weight)
    }
}

/// `{"weight": "1", "images": [[..4], [..4], [..4], [..4]]}` where `images[j]`
/// are the coordinates of `R(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorJson {
    pub weight: String,
    pub images: Vec<Vec<String>>,
}

fn check_compatible(alg: &StructureAlgebra, w: &WeightedOperator) -> Result<()> {
    if w.field() != alg.field() {
        return Err(Error::FieldMismatch { left: alg.field(), right: w.field() });
    }
    if w.op.dim() != alg.dim() {
        return Err(Error::DimMismatch { expected: alg.dim(), found: w.op.dim() });
    }
    Ok(())
}

/// `R(a)R(b) - R(R(a)b + aR(b) + λab)`; zero iff the identity holds at `(a, b)`.
pub fn rb_defect(alg: &StructureAlgebra, w: &WeightedOperator, a: &Element, b: &Element) -> Result<Element> {
    check_compatible(alg, w)?;
    let r = &w.op;
    let ra = r.apply(a)?;
    let rb = r.apply(b)?;
    let lhs = alg.multiply(&ra, &rb)?;
    let arg = alg.multiply(&ra, b)?.add(&alg.multiply(a, &rb)?)?.add(&alg.multiply(a, b)?.scale(&w.weight)?)?;
    lhs.sub(&r.apply(&arg)?)
}

/// Ordered basis pairs in checking order: the pairs among the first two basis
/// elements come first since they reject most non-solutions, then the rest
/// row-major.
pub fn pair_order(dim: usize) -> Vec<(usize, usize)> {
    let head: Vec<(usize, usize)> =
        [(0, 0), (1, 1), (0, 1), (1, 0)].into_iter().filter(|&(i, j)| i < dim && j < dim).collect();
    let mut out = head.clone();
    for i in 0..dim {
        for j in 0..dim {
            if !head.contains(&(i, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// True iff the defect vanishes on every ordered pair of basis elements, which
/// suffices because both sides of the identity are bilinear.
pub fn is_rb(alg: &StructureAlgebra, w: &WeightedOperator) -> Result<bool> {
    check_compatible(alg, w)?;
    let basis: Vec<Element> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
    for (i, j) in pair_order(alg.dim()) {
        if !rb_defect(alg, w, &basis[i], &basis[j])?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every basis pair with a nonzero defect, without early exit.
pub fn failing_pairs(alg: &StructureAlgebra, w: &WeightedOperator) -> Result<Vec<(usize, usize)>> {
    check_compatible(alg, w)?;
    let mut out = Vec::new();
    for (i, j) in pair_order(alg.dim()) {
        if !rb_defect(alg, w, &alg.basis(i), &alg.basis(j))?.is_zero() {
            out.push((i, j));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{h4, G, ONE};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn cols(field: Field, c: &[[i64; 4]; 4]) -> LinearOperator {
        let c: Vec<&[i64]> = c.iter().map(|x| x.as_slice()).collect();
        LinearOperator::from_int_columns(field, &c)
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    fn ops_from_rationals(images: [[Scalar; 4]; 4], weight: Scalar) -> WeightedOperator {
        let cols: Vec<Element> = images.into_iter().map(|c| Element::new(c.to_vec()).unwrap()).collect();
        WeightedOperator::new(LinearOperator::from_columns(&cols).unwrap(), weight).unwrap()
    }

    /// Ma's family (h) at weight 1.
    fn ma_h(p1: i64, p2: i64) -> WeightedOperator {
        let h = q(1, 2);
        let z = q(0, 1);
        ops_from_rationals(
            [
                [h.clone(), -&h, q(p1, 1), q(p2, 1)],
                [h.clone(), -&h, q(-p2, 1), q(p1, 1)],
                [z.clone(), z.clone(), -&h, -&h],
                [z.clone(), z, -&h, -&h],
            ],
            q(1, 1),
        )
    }

    #[test]
    fn trivial_operators_have_zero_defect() {
        let a = h4(Q).unwrap();
        for lam in [q(1, 1), q(2, 1), q(-1, 2)] {
            let zero = WeightedOperator::zero(&lam, 4);
            let minus = WeightedOperator::minus_lambda_id(&lam, 4);
            for i in 0..4 {
                for j in 0..4 {
                    assert!(rb_defect(&a, &zero, &a.basis(i), &a.basis(j)).unwrap().is_zero());
                    assert!(rb_defect(&a, &minus, &a.basis(i), &a.basis(j)).unwrap().is_zero());
                }
            }
            assert!(zero.is_trivial() && minus.is_trivial());
        }
    }

    #[test]
    fn ma_h_defect_with_nonzero_p1() {
        let a = h4(Q).unwrap();
        let w = ma_h(1, 0);
        assert!(rb_defect(&a, &w, &a.basis(G), &a.basis(G)).unwrap().is_zero());
        assert_eq!(rb_defect(&a, &w, &a.basis(ONE), &a.basis(ONE)).unwrap(), Element::from_ints(Q, &[0, 0, 0, 2]));
        assert_eq!(failing_pairs(&a, &w).unwrap(), vec![(ONE, ONE), (G, ONE)]);
        assert!(is_rb(&a, &ma_h(0, 1)).unwrap());
        assert!(!is_rb(&a, &ma_h(1, 1)).unwrap());
        assert!(failing_pairs(&a, &ma_h(1, 1)).unwrap().contains(&(ONE, ONE)));
    }

    #[test]
    fn self_dual_representative_at_weight_two() {
        // R(1) = R(g) = -1 - g, R(x) = R(gx) = -x - gx  (λ = 2, λ/2 = 1)
        let a = h4(Q).unwrap();
        let op = cols(Q, &[[-1, -1, 0, 0], [-1, -1, 0, 0], [0, 0, -1, -1], [0, 0, -1, -1]]);
        let w = WeightedOperator::new(op, q(2, 1)).unwrap();
        assert!(is_rb(&a, &w).unwrap());
        assert!(!w.is_trivial());
    }

    #[test]
    fn dual_examples() {
        let lam = q(1, 1);
        let zero = WeightedOperator::zero(&lam, 4);
        assert_eq!(zero.dual(), WeightedOperator::minus_lambda_id(&lam, 4));
        // Ma (a) and (b) at λ = 1
        let ma_a =
            WeightedOperator::new(cols(Q, &[[0; 4], [0; 4], [0, 0, -1, 0], [0, 0, 0, -1]]), lam.clone()).unwrap();
        let ma_b = WeightedOperator::new(cols(Q, &[[-1, 0, 0, 0], [0, -1, 0, 0], [0; 4], [0; 4]]), lam).unwrap();
        assert_eq!(ma_a.dual(), ma_b);
        assert_eq!(ma_a.dual().dual(), ma_a);
        assert!(!ma_b.is_trivial());
    }

    #[test]
    fn weight_zero_is_accepted() {
        let a = h4(Q).unwrap();
        let w = WeightedOperator::zero(&q(0, 1), 4);
        assert!(w.is_weight_zero());
        assert!(is_rb(&a, &w).unwrap());
    }

    #[test]
    fn pair_order_starts_with_discriminating_pairs() {
        let order = pair_order(4);
        assert_eq!(&order[..4], &[(0, 0), (1, 1), (0, 1), (1, 0)]);
        assert_eq!(order.len(), 16);
    }

    #[test]
    fn mismatched_algebra_rejected() {
        let a = h4(Field::Prime(3)).unwrap();
        let w = WeightedOperator::zero(&q(1, 1), 4);
        assert!(matches!(is_rb(&a, &w), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let w = ma_h(0, 3);
        let j = w.to_json();
        assert_eq!(j.images[0], vec!["1/2", "-1/2", "0", "3"]);
        assert_eq!(WeightedOperator::from_json(Q, &j).unwrap(), w);
    }

    fn random_element(rng: &mut ChaCha8Rng, field: Field) -> Element {
        Element::from_ints(field, &[0; 4].map(|_| rng.gen_range(-5..=5)))
    }

    #[test]
    fn defect_is_bilinear() {
        let a = h4(Q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let ints: Vec<i64> = (0..16).map(|_| rng.gen_range(-3..=3)).collect();
            let op = LinearOperator::from_entries(Q, 4, ints.iter().map(|&n| q(n, 1)).collect()).unwrap();
            let w = WeightedOperator::new(op, q(rng.gen_range(1..4), 1)).unwrap();
            let (x, x2, y) = (random_element(&mut rng, Q), random_element(&mut rng, Q), random_element(&mut rng, Q));
            let lhs = rb_defect(&a, &w, &x.add(&x2).unwrap(), &y).unwrap();
            let rhs = rb_defect(&a, &w, &x, &y).unwrap().add(&rb_defect(&a, &w, &x2, &y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = rb_defect(&a, &w, &y, &x.add(&x2).unwrap()).unwrap();
            let rhs = rb_defect(&a, &w, &y, &x).unwrap().add(&rb_defect(&a, &w, &y, &x2).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
