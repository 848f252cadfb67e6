//! Finite-dimensional unital associative algebras given by structure constants.
//!
//! `e_i * e_j = sum_k c[i][j][k] e_k`. The Sweedler algebra is built by [`h4`]
//! with basis order `(1, g, x, gx)`; every matrix in this crate uses that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub const ONE: usize = 0;
pub const G: usize = 1;
pub const X: usize = 2;
pub const GX: usize = 3;

pub const H4_BASIS: [&str; 4] = ["1", "g", "x", "gx"];

/// A vector of coordinates in the algebra's fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Result<Element> {
        let Some(first) = coords.first() else {
            return Err(Error::DimMismatch { expected: 1, found: 0 });
        };
        let field = first.field();
        if let Some(bad) = coords.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch { left: field, right: bad.field() });
        }
        Ok(Element { coords })
    }

    pub fn from_ints(field: Field, coords: &[i64]) -> Element {
        Element { coords: coords.iter().map(|&c| field.from_i64(c)).collect() }
    }

    pub fn zero(field: Field, dim: usize) -> Element {
        Element { coords: vec![field.zero(); dim] }
    }

    pub fn basis(field: Field, dim: usize, i: usize) -> Element {
        let mut e = Element::zero(field, dim);
        e.coords[i] = field.one();
        e
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn compatible(&self, other: &Element) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch { expected: self.dim(), found: other.dim() });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch { left: self.field(), right: other.field() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.compatible(other)?;
        Ok(Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.compatible(other)?;
        Ok(Element { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Element> {
        if c.field() != self.field() {
            return Err(Error::FieldMismatch { left: self.field(), right: c.field() });
        }
        Ok(Element { coords: self.coords.iter().map(|a| a * c).collect() })
    }

    pub fn neg(&self) -> Element {
        Element { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

/// Structure-constant presentation of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: Field,
    basis_names: Vec<String>,
    // c[(i * dim + j) * dim + k]
    constants: Vec<Scalar>,
    unit_index: usize,
}

/// A failure of associativity or of the unit law on basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl StructureAlgebra {
    pub fn new(
        field: Field,
        basis_names: Vec<String>,
        constants: Vec<Vec<Vec<Scalar>>>,
        unit_index: usize,
    ) -> Result<StructureAlgebra> {
        let dim = basis_names.len();
        if unit_index >= dim {
            return Err(Error::DimMismatch { expected: dim, found: unit_index });
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for plane in &constants {
            if plane.len() != dim {
                return Err(Error::DimMismatch { expected: dim, found: plane.len() });
            }
            for row in plane {
                if row.len() != dim {
                    return Err(Error::DimMismatch { expected: dim, found: row.len() });
                }
                for c in row {
                    if c.field() != field {
                        return Err(Error::FieldMismatch { left: field, right: c.field() });
                    }
                    flat.push(c.clone());
                }
            }
        }
        if constants.len() != dim {
            return Err(Error::DimMismatch { expected: dim, found: constants.len() });
        }
        Ok(StructureAlgebra { field, basis_names, constants: flat, unit_index })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let d = self.dim();
        &self.constants[(i * d + j) * d + k]
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim(), i)
    }

    pub fn unit(&self) -> Element {
        self.basis(self.unit_index)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim())
    }

    pub fn element(&self, coords: &[i64]) -> Element {
        Element::from_ints(self.field, coords)
    }

    fn check(&self, u: &Element) -> Result<()> {
        if u.dim() != self.dim() {
            return Err(Error::DimMismatch { expected: self.dim(), found: u.dim() });
        }
        if u.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field, right: u.field() });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check(u)?;
        self.check(v)?;
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for (i, a) in u.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *slot = &*slot + &(&ab * c);
                    }
                }
            }
        }
        Ok(Element { coords: out })
    }

    /// Every associativity or unit-law failure on basis elements. Empty iff
    /// the table defines a unital associative algebra.
    pub fn verify_presentation(&self) -> Vec<Violation> {
        let d = self.dim();
        let mut out = Vec::new();
        let e: Vec<Element> = (0..d).map(|i| self.basis(i)).collect();
        for i in 0..d {
            for j in 0..d {
                let ij = self.multiply(&e[i], &e[j]).unwrap();
                for k in 0..d {
                    let left = self.multiply(&ij, &e[k]).unwrap();
                    let jk = self.multiply(&e[j], &e[k]).unwrap();
                    let right = self.multiply(&e[i], &jk).unwrap();
                    if left != right {
                        out.push(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        let u = self.unit();
        for (i, ei) in e.iter().enumerate() {
            if &self.multiply(&u, ei).unwrap() != ei {
                out.push(Violation::LeftUnit { i });
            }
            if &self.multiply(ei, &u).unwrap() != ei {
                out.push(Violation::RightUnit { i });
            }
        }
        out
    }

    pub fn to_json(&self) -> AlgebraJson {
        let d = self.dim();
        let constants = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| self.constant(i, j, k).to_string()).collect()).collect())
            .collect();
        AlgebraJson { dim: d, basis_names: self.basis_names.clone(), unit_index: self.unit_index, constants }
    }

    pub fn from_json(field: Field, json: &AlgebraJson) -> Result<StructureAlgebra> {
        let constants = json
            .constants
            .iter()
            .map(|plane| plane.iter().map(|row| row.iter().map(|s| field.parse(s)).collect()).collect())
            .collect::<Result<Vec<Vec<Vec<Scalar>>>>>()?;
        if json.dim != json.basis_names.len() {
            return Err(Error::DimMismatch { expected: json.dim, found: json.basis_names.len() });
        }
        StructureAlgebra::new(field, json.basis_names.clone(), constants, json.unit_index)
    }
}

/// Serialized algebra description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub unit_index: usize,
    pub constants: Vec<Vec<Vec<String>>>,
}

/// Products of H4 basis elements as `(index, sign)`; `None` is zero.
pub(crate) fn h4_basis_product(i: usize, j: usize) -> Option<(usize, i8)> {
    match (i, j) {
        (ONE, k) | (k, ONE) => Some((k, 1)),
        (G, G) => Some((ONE, 1)),
        (G, X) => Some((GX, 1)),
        (X, G) => Some((GX, -1)),
        (G, GX) => Some((X, 1)),
        (GX, G) => Some((X, -1)),
        _ => None,
    }
}

/// The Sweedler algebra: `g^2 = 1`, `x^2 = 0`, `gx = -xg`, basis `(1, g, x, gx)`.
pub fn h4(field: Field) -> Result<StructureAlgebra> {
    if let Field::Prime(p) = field {
        Field::prime(p)?;
    }
    let mut constants = vec![vec![vec![field.zero(); 4]; 4]; 4];
    for (i, plane) in constants.iter_mut().enumerate() {
        for (j, row) in plane.iter_mut().enumerate() {
            if let Some((k, s)) = h4_basis_product(i, j) {
                row[k] = field.from_i64(s as i64);
            }
        }
    }
    StructureAlgebra::new(field, H4_BASIS.iter().map(|s| s.to_string()).collect(), constants, ONE)
}
