//! Linear operators on an algebra's underlying vector space, with exact
//! Gaussian elimination for rank, kernel, image and inverses.

use std::fmt;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A square matrix over one field. Column `j` holds the coordinates of the
/// image of basis vector `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOperator {
    field: Field,
    dim: usize,
    // row-major: entries[i * dim + j] = coordinate i of R(e_j)
    entries: Vec<Scalar>,
}

impl LinearOperator {
    pub fn from_entries(field: Field, dim: usize, entries: Vec<Scalar>) -> Result<LinearOperator> {
        if entries.len() != dim * dim {
            return Err(Error::DimMismatch { expected: dim * dim, found: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch { left: field, right: bad.field() });
        }
        Ok(LinearOperator { field, dim, entries })
    }

    /// Builds the operator from the images of the basis vectors.
    pub fn from_columns(images: &[Element]) -> Result<LinearOperator> {
        let dim = images.len();
        let Some(first) = images.first() else {
            return Err(Error::DimMismatch { expected: 1, found: 0 });
        };
        let field = first.field();
        let mut entries = vec![field.zero(); dim * dim];
        for (j, col) in images.iter().enumerate() {
            if col.dim() != dim {
                return Err(Error::DimMismatch { expected: dim, found: col.dim() });
            }
            if col.field() != field {
                return Err(Error::FieldMismatch { left: field, right: col.field() });
            }
            for (i, c) in col.coords().iter().enumerate() {
                entries[i * dim + j] = c.clone();
            }
        }
        Ok(LinearOperator { field, dim, entries })
    }

    /// Images given as integer coordinate lists, one per basis vector.
    pub fn from_int_columns(field: Field, images: &[&[i64]]) -> LinearOperator {
        let cols: Vec<Element> = images.iter().map(|c| Element::from_ints(field, c)).collect();
        LinearOperator::from_columns(&cols).expect("square integer matrix")
    }

    pub fn zero(field: Field, dim: usize) -> LinearOperator {
        LinearOperator { field, dim, entries: vec![field.zero(); dim * dim] }
    }

    pub fn identity(field: Field, dim: usize) -> LinearOperator {
        let mut m = LinearOperator::zero(field, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Element {
        Element::new((0..self.dim).map(|i| self.entry(i, j).clone()).collect()).unwrap()
    }

    pub fn columns(&self) -> Vec<Element> {
        (0..self.dim).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.dim).fold(self.field.zero(), |acc, i| &acc + self.entry(i, i))
    }

    fn check_field(&self, f: Field) -> Result<()> {
        if f != self.field {
            return Err(Error::FieldMismatch { left: self.field, right: f });
        }
        Ok(())
    }

    fn check_same(&self, other: &LinearOperator) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: other.dim });
        }
        self.check_field(other.field)
    }

    pub fn apply(&self, u: &Element) -> Result<Element> {
        if u.dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: u.dim() });
        }
        self.check_field(u.field())?;
        let coords = (0..self.dim)
            .map(|i| {
                u.coords().iter().enumerate().fold(self.field.zero(), |acc, (j, c)| {
                    if c.is_zero() {
                        acc
                    } else {
                        &acc + &(self.entry(i, j) * c)
                    }
                })
            })
            .collect();
        Element::new(coords)
    }

    /// The matrix product `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.check_same(other)?;
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = self.field.zero();
                for k in 0..d {
                    let a = self.entry(i, k);
                    if !a.is_zero() {
                        acc = &acc + &(a * other.entry(k, j));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(LinearOperator { field: self.field, dim: d, entries })
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(LinearOperator { field: self.field, dim: self.dim, entries })
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearOperator {
        LinearOperator { field: self.field, dim: self.dim, entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Result<LinearOperator> {
        self.check_field(c.field())?;
        let entries = self.entries.iter().map(|a| a * c).collect();
        Ok(LinearOperator { field: self.field, dim: self.dim, entries })
    }

    fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        rref(&mut rows).len()
    }

    /// Exact inverse via Gauss-Jordan on `[R | I]`.
    pub fn invert(&self) -> Result<LinearOperator> {
        let d = self.dim;
        let mut aug: Vec<Vec<Scalar>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..d).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut aug);
        if pivots.len() < d || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return Err(Error::Singular);
        }
        let entries = aug.into_iter().flat_map(|row| row.into_iter().skip(d)).collect();
        Ok(LinearOperator { field: self.field, dim: d, entries })
    }

    /// `{u : R(u) = 0}` in canonical echelon form.
    pub fn kernel(&self) -> Subspace {
        let basis = null_space(self.field, self.dim, self.rows());
        Subspace::from_rows(self.field, self.dim, basis)
    }

    /// The column space in canonical echelon form.
    pub fn image(&self) -> Subspace {
        let cols = (0..self.dim).map(|j| self.column(j).into_coords()).collect();
        Subspace::from_rows(self.field, self.dim, cols)
    }
}

impl fmt::Display for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for j in 0..self.dim {
            if j > 0 {
                write!(f, "; ")?;
            }
            let col: Vec<String> = (0..self.dim).map(|i| self.entry(i, j).to_string()).collect();
            write!(f, "{}", col.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Pivots are the first nonzero entry in column order. Returns pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * y);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Solutions of `rows * v = 0` for `v` of length `ncols`.
fn null_space(field: Field, ncols: usize, mut rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let pivots = rref(&mut rows);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[r][f];
            }
            v
        })
        .collect()
}

/// A subspace stored by its reduced row-echelon basis, so that equal
/// subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn from_rows(field: Field, ambient: usize, mut rows: Vec<Vec<Scalar>>) -> Subspace {
        rref(&mut rows);
        Subspace { field, ambient, rows }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Element]) -> Result<Subspace> {
        for v in vectors {
            if v.dim() != ambient {
                return Err(Error::DimMismatch { expected: ambient, found: v.dim() });
            }
            if v.field() != field {
                return Err(Error::FieldMismatch { left: field, right: v.field() });
            }
        }
        let rows = vectors.iter().map(|v| v.coords().to_vec()).collect();
        Ok(Subspace::from_rows(field, ambient, rows))
    }

    /// Span of integer coordinate vectors.
    pub fn span_ints(field: Field, ambient: usize, vectors: &[&[i64]]) -> Subspace {
        let rows = vectors.iter().map(|v| v.iter().map(|&c| field.from_i64(c)).collect()).collect();
        Subspace::from_rows(field, ambient, rows)
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        LinearOperator::identity(field, ambient).image()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Element> {
        self.rows.iter().map(|r| Element::new(r.clone()).unwrap()).collect()
    }

    pub fn contains(&self, v: &Element) -> bool {
        if v.dim() != self.ambient || v.field() != self.field {
            return false;
        }
        let mut rows = self.rows.clone();
        rows.push(v.coords().to_vec());
        rref(&mut rows).len() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(self.field, self.ambient, rows)
    }

    /// `{v : <r, v> = 0 for every basis row r}`.
    pub fn annihilator(&self) -> Subspace {
        let rows = null_space(self.field, self.ambient, self.rows.clone());
        Subspace::from_rows(self.field, self.ambient, rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Image of this subspace under a linear map.
    pub fn map(&self, op: &LinearOperator) -> Result<Subspace> {
        let images = self.basis().iter().map(|v| op.apply(v)).collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field, self.ambient, &images)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{h4, G, GX, ONE, X};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn minus_lambda_id(field: Field, lambda: i64) -> LinearOperator {
        LinearOperator::identity(field, 4).scale(&field.from_i64(-lambda)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let a = h4(Q).unwrap();
        let id = LinearOperator::identity(Q, 4);
        assert_eq!(id.apply(&a.basis(G)).unwrap(), a.basis(G));
        assert_eq!(minus_lambda_id(Q, 1).apply(&a.basis(X)).unwrap(), a.basis(X).neg());
        // R(1) = 0, R(g) = -1 - g, R(x) = 0, R(gx) = -x - gx
        let r = LinearOperator::from_int_columns(Q, &[&[0, 0, 0, 0], &[-1, -1, 0, 0], &[0; 4], &[0, 0, -1, -1]]);
        assert_eq!(r.apply(&a.basis(G)).unwrap(), a.element(&[-1, -1, 0, 0]));
    }

    #[test]
    fn dim_mismatch() {
        let id = LinearOperator::identity(Q, 4);
        let v = Element::from_ints(Q, &[1, 2]);
        assert!(matches!(id.apply(&v), Err(Error::DimMismatch { .. })));
        assert!(matches!(id.compose(&LinearOperator::identity(Q, 3)), Err(Error::DimMismatch { .. })));
        let w = Element::from_ints(Field::Prime(3), &[1, 2, 0, 0]);
        assert!(matches!(id.apply(&w), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(LinearOperator::zero(Q, 4).kernel().dim(), 4);
        assert_eq!(minus_lambda_id(Q, 2).kernel().dim(), 0);
        let r = LinearOperator::from_int_columns(Q, &[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0; 4], &[0; 4]]);
        assert_eq!(r.kernel(), Subspace::span_ints(Q, 4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(LinearOperator::zero(Q, 4).image().dim(), 0);
        assert_eq!(minus_lambda_id(Q, 1).image(), Subspace::full(Q, 4));
        // R(1) = 0, R(g) = 1 - g, R(x) = -x, R(gx) = -gx
        let r = LinearOperator::from_int_columns(Q, &[&[0; 4], &[1, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
        let expected = Subspace::span_ints(Q, 4, &[&[1, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(r.image(), expected);
        assert_eq!(r.kernel(), Subspace::span_ints(Q, 4, &[&[1, 0, 0, 0]]));
    }

    #[test]
    fn compose_examples() {
        let r = LinearOperator::from_int_columns(Q, &[&[1, 2, 3, 4], &[0, 1, 0, 1], &[5, 0, 0, 0], &[0, 0, 0, 7]]);
        let id = LinearOperator::identity(Q, 4);
        let zero = LinearOperator::zero(Q, 4);
        assert_eq!(id.compose(&r).unwrap(), r);
        assert_eq!(r.compose(&zero).unwrap(), zero);
        let phi = LinearOperator::from_int_columns(Q, &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]);
        assert_eq!(phi.compose(&phi.invert().unwrap()).unwrap(), id);
    }

    #[test]
    fn invert_examples() {
        let id = LinearOperator::identity(Q, 4);
        assert_eq!(id.invert().unwrap(), id);
        assert_eq!(LinearOperator::zero(Q, 4).invert(), Err(Error::Singular));
        // phi(g) = g - (2c/l) x - (2d/l) gx, phi(x) = x, with c = 3, d = -1, l = 2
        // phi(gx) = phi(g) phi(x) = gx
        let phi = LinearOperator::from_int_columns(Q, &[&[1, 0, 0, 0], &[0, 1, -3, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let expected =
            LinearOperator::from_int_columns(Q, &[&[1, 0, 0, 0], &[0, 1, 3, -1], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(phi.invert().unwrap(), expected);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span_ints(Q, 4, &[&[1, 0, 0, 0], &[0, 0, 1, -1]]);
        let n = Subspace::span_ints(Q, 4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(a.intersection(&n), Subspace::span_ints(Q, 4, &[&[0, 0, 1, -1]]));
        assert_eq!(a.sum(&n).dim(), 3);
        assert!(a.contains(&Element::from_ints(Q, &[2, 0, 3, -3])));
        assert!(!a.contains(&Element::from_ints(Q, &[0, 1, 0, 0])));
    }

    fn random_op(rng: &mut ChaCha8Rng, field: Field) -> LinearOperator {
        let entries = (0..16)
            .map(|_| match field {
                Field::Rational => Scalar::rational(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
                Field::Prime(p) => Scalar::residue(rng.gen_range(0..p as i64), p),
            })
            .collect();
        LinearOperator::from_entries(field, 4, entries).unwrap()
    }

    #[test]
    fn rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (field, n) in [(Field::Prime(3), 10_000), (Q, 1000)] {
            for _ in 0..n {
                let r = random_op(&mut rng, field);
                let k = r.kernel();
                assert_eq!(r.rank() + k.dim(), 4);
                for v in k.basis() {
                    assert!(r.apply(&v).unwrap().is_zero());
                }
                // canonical bases are fixed points of re-echelonization
                assert_eq!(Subspace::from_rows(field, 4, k.rows().to_vec()), k);
                let im = r.image();
                assert_eq!(Subspace::from_rows(field, 4, im.rows().to_vec()), im);
                assert_eq!(im.dim(), r.rank());
            }
        }
    }

    #[test]
    fn random_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let id = LinearOperator::identity(Q, 4);
        for _ in 0..200 {
            let r = random_op(&mut rng, Q);
            match r.invert() {
                Ok(inv) => assert_eq!(r.compose(&inv).unwrap(), id),
                Err(Error::Singular) => assert!(r.rank() < 4),
                Err(e) => panic!("{e}"),
            }
        }
    }

    proptest! {
        #[test]
        fn composition_is_application(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = Field::Prime(5);
            let s = random_op(&mut rng, field);
            let r = random_op(&mut rng, field);
            let u = Element::from_ints(field, &[rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5)]);
            let lhs = s.compose(&r).unwrap().apply(&u).unwrap();
            let rhs = s.apply(&r.apply(&u).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn basis_index_sanity() {
        assert_eq!((ONE, G, X, GX), (0, 1, 2, 3));
    }
}
