//! `H4` operators over a small prime field as flat byte arrays.
//!
//! `Mat[4 * i + j]` is coordinate `i` of `R(e_j)`, entries reduced mod `p`.

use crate::autgroup::AutoMap;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linops::LinearOperator;
use crate::rb::WeightedOperator;

pub type Mat = [u8; 16];
pub type Vec4 = [u8; 4];

/// Arithmetic in `F_p` for `p < 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u32,
}

impl Fp {
    pub fn new(p: u64) -> Result<Fp> {
        Field::prime(p)?;
        if p > 251 {
            return Err(Error::InvalidParams(format!("packed arithmetic needs p < 256, got {p}")));
        }
        Ok(Fp { p: p as u32 })
    }

    pub fn field(self) -> Field {
        Field::Prime(self.p as u64)
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    pub fn inv(self, a: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % self.p as u64;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p as u64;
            }
            b = b * b % self.p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// `uv` in `H4`.
    #[inline]
    pub fn mul(self, u: &Vec4, v: &Vec4) -> Vec4 {
        let p = self.p;
        let [u0, u1, u2, u3] = u.map(u32::from);
        let [v0, v1, v2, v3] = v.map(u32::from);
        let neg = |a: u32| (p * p - a % (p * p)) % (p * p);
        [
            ((u0 * v0 + u1 * v1) % p) as u8,
            ((u0 * v1 + u1 * v0) % p) as u8,
            ((u0 * v2 + u2 * v0 + u1 * v3 + neg(u3 * v1)) % p) as u8,
            ((u0 * v3 + u3 * v0 + u1 * v2 + neg(u2 * v1)) % p) as u8,
        ]
    }

    #[inline]
    pub fn apply(self, m: &Mat, v: &Vec4) -> Vec4 {
        let mut out = [0u8; 4];
        for (i, o) in out.iter_mut().enumerate() {
            let s: u32 = (0..4).map(|j| m[4 * i + j] as u32 * v[j] as u32).sum();
            *o = (s % self.p) as u8;
        }
        out
    }

    #[inline]
    pub fn column(m: &Mat, j: usize) -> Vec4 {
        [m[j], m[4 + j], m[8 + j], m[12 + j]]
    }

    pub fn set_column(m: &mut Mat, j: usize, c: &Vec4) {
        for i in 0..4 {
            m[4 * i + j] = c[i];
        }
    }

    pub fn matmul(self, a: &Mat, b: &Mat) -> Mat {
        let mut out = [0u8; 16];
        for i in 0..4 {
            for j in 0..4 {
                let s: u32 = (0..4).map(|k| a[4 * i + k] as u32 * b[4 * k + j] as u32).sum();
                out[4 * i + j] = (s % self.p) as u8;
            }
        }
        out
    }

    /// `-λ id - m`.
    pub fn dual(self, m: &Mat, lam: u32) -> Mat {
        let mut out = [0u8; 16];
        for k in 0..16 {
            let d = if k % 5 == 0 { lam } else { 0 };
            out[k] = self.neg(d + m[k] as u32) as u8;
        }
        out
    }

    /// `R(a)b + aR(b) + λab` for basis vectors `a = e_i`, `b = e_j`.
    #[inline]
    pub fn rb_argument(self, m: &Mat, lam: u32, i: usize, j: usize) -> Vec4 {
        let ei = unit(i);
        let ej = unit(j);
        let ra = Self::column(m, i);
        let rb = Self::column(m, j);
        let x = self.mul(&ra, &ej);
        let y = self.mul(&ei, &rb);
        let z = self.mul(&ei, &ej);
        let mut out = [0u8; 4];
        for k in 0..4 {
            out[k] = ((x[k] as u32 + y[k] as u32 + lam * z[k] as u32) % self.p) as u8;
        }
        out
    }

    #[inline]
    pub fn defect_vanishes(self, m: &Mat, lam: u32, i: usize, j: usize) -> bool {
        let lhs = self.mul(&Self::column(m, i), &Self::column(m, j));
        lhs == self.apply(m, &self.rb_argument(m, lam, i, j))
    }

    /// The RB identity on all basis pairs, most discriminating pairs first.
    #[inline]
    pub fn is_rb(self, m: &Mat, lam: u32) -> bool {
        PAIRS.iter().all(|&(i, j)| self.defect_vanishes(m, lam, i, j))
    }

    /// Like `is_rb` but never stops early; used for re-checks.
    pub fn is_rb_full(self, m: &Mat, lam: u32) -> bool {
        let mut ok = true;
        for &(i, j) in PAIRS.iter() {
            ok &= self.defect_vanishes(m, lam, i, j);
        }
        ok
    }

    pub fn lex_index(self, m: &Mat) -> u128 {
        m.iter().fold(0u128, |acc, &d| acc * self.p as u128 + d as u128)
    }
}

pub const PAIRS: [(usize, usize); 16] = [
    (0, 0),
    (1, 1),
    (0, 1),
    (1, 0),
    (0, 2),
    (0, 3),
    (1, 2),
    (1, 3),
    (2, 0),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 0),
    (3, 1),
    (3, 2),
    (3, 3),
];

#[inline]
pub fn unit(i: usize) -> Vec4 {
    let mut e = [0u8; 4];
    e[i] = 1;
    e
}

fn residue(s: &Scalar, p: u32) -> Result<u8> {
    match s.residue_value() {
        Some(v) if s.field() == Field::Prime(p as u64) => Ok(v as u8),
        _ => Err(Error::FieldMismatch { left: Field::Prime(p as u64), right: s.field() }),
    }
}

pub fn pack(fp: Fp, op: &LinearOperator) -> Result<Mat> {
    if op.dim() != 4 {
        return Err(Error::DimMismatch { expected: 4, found: op.dim() });
    }
    let mut m = [0u8; 16];
    for (k, s) in op.entries().iter().enumerate() {
        m[k] = residue(s, fp.p)?;
    }
    Ok(m)
}

pub fn pack_weight(fp: Fp, w: &Scalar) -> Result<u32> {
    residue(w, fp.p).map(u32::from)
}

pub fn unpack(fp: Fp, m: &Mat) -> LinearOperator {
    let f = fp.field();
    LinearOperator::from_entries(f, 4, m.iter().map(|&v| Scalar::residue(v as i64, fp.p as u64)).collect()).unwrap()
}

pub fn unpack_weighted(fp: Fp, m: &Mat, lam: u32) -> WeightedOperator {
    WeightedOperator { op: unpack(fp, m), weight: Scalar::residue(lam as i64, fp.p as u64) }
}

/// An (anti)automorphism with its inverse, ready for `φ⁻¹ R φ`.
#[derive(Clone, Debug)]
pub struct PackedMap {
    pub fwd: Mat,
    pub inv: Mat,
    pub index: usize,
}

pub fn pack_maps(fp: Fp, maps: &[AutoMap]) -> Result<Vec<PackedMap>> {
    maps.iter()
        .enumerate()
        .map(|(index, m)| Ok(PackedMap { fwd: pack(fp, &m.op)?, inv: pack(fp, &m.op.invert()?)?, index }))
        .collect()
}

impl PackedMap {
    #[inline]
    pub fn conjugate(&self, fp: Fp, m: &Mat) -> Mat {
        fp.matmul(&fp.matmul(&self.inv, m), &self.fwd)
    }
}
