//! Two- and three-dimensional subalgebras of `H4` (multiplicatively closed
//! subspaces, not necessarily unital) and their classes up to
//! (anti)automorphism.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{h4, Element, StructureAlgebra};
use crate::autgroup::{enumerate_maps, AutoMap};
use crate::error::{Error, Result};
use crate::field::{enumerate_field, Field, Scalar};
use crate::linops::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubalgebraClass {
    OneMinusGXMinusGx,
    OneG,
    OneXMinusGx,
    OneX,
    XGx,
    OneMinusGXGx,
    OneGXMinusGx,
    OneXGx,
}

impl SubalgebraClass {
    pub const ALL: [SubalgebraClass; 8] = [
        SubalgebraClass::OneMinusGXMinusGx,
        SubalgebraClass::OneG,
        SubalgebraClass::OneXMinusGx,
        SubalgebraClass::OneX,
        SubalgebraClass::XGx,
        SubalgebraClass::OneMinusGXGx,
        SubalgebraClass::OneGXMinusGx,
        SubalgebraClass::OneXGx,
    ];

    pub fn of_dim(d: usize) -> Vec<SubalgebraClass> {
        Self::ALL.iter().copied().filter(|c| c.dim() == d).collect()
    }

    pub fn label(self) -> &'static str {
        match self {
            SubalgebraClass::OneMinusGXMinusGx => "<1-g, x-gx>",
            SubalgebraClass::OneG => "<1, g>",
            SubalgebraClass::OneXMinusGx => "<1, x-gx>",
            SubalgebraClass::OneX => "<1, x>",
            SubalgebraClass::XGx => "<x, gx>",
            SubalgebraClass::OneMinusGXGx => "<1-g, x, gx>",
            SubalgebraClass::OneGXMinusGx => "<1, g, x-gx>",
            SubalgebraClass::OneXGx => "<1, x, gx>",
        }
    }

    pub fn dim(self) -> usize {
        self.generators().len()
    }

    /// Spanning vectors of the representative named by the label.
    pub fn generators(self) -> &'static [[i64; 4]] {
        match self {
            SubalgebraClass::OneMinusGXMinusGx => &[[1, -1, 0, 0], [0, 0, 1, -1]],
            SubalgebraClass::OneG => &[[1, 0, 0, 0], [0, 1, 0, 0]],
            SubalgebraClass::OneXMinusGx => &[[1, 0, 0, 0], [0, 0, 1, -1]],
            SubalgebraClass::OneX => &[[1, 0, 0, 0], [0, 0, 1, 0]],
            SubalgebraClass::XGx => &[[0, 0, 1, 0], [0, 0, 0, 1]],
            SubalgebraClass::OneMinusGXGx => &[[1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            SubalgebraClass::OneGXMinusGx => &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1]],
            SubalgebraClass::OneXGx => &[[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        }
    }

    pub fn representative(self, field: Field) -> Subspace {
        let gens: Vec<&[i64]> = self.generators().iter().map(|g| g.as_slice()).collect();
        Subspace::span_ints(field, 4, &gens)
    }
}

impl fmt::Display for SubalgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn is_subalgebra_in(alg: &StructureAlgebra, s: &Subspace) -> bool {
    let basis = s.basis();
    basis.iter().all(|u| basis.iter().all(|v| alg.multiply(u, v).map(|w| s.contains(&w)).unwrap_or(false)))
}

pub fn is_subalgebra(s: &Subspace) -> bool {
    match h4(s.field()) {
        Ok(alg) => s.ambient_dim() == 4 && is_subalgebra_in(&alg, s),
        Err(_) => false,
    }
}

/// Every `d`-dimensional subspace of `F_p^n` in reduced echelon form, ordered
/// by pivot pattern and then by free entries.
pub fn enumerate_subspaces(p: u64, n: usize, d: usize) -> Result<Vec<Subspace>> {
    let field = Field::prime(p)?;
    if d > n {
        return Err(Error::InvalidDim(d));
    }
    let elems = enumerate_field(p)?;
    let mut out = Vec::new();
    for pivots in combinations(n, d) {
        // free slots: row r, column c > pivots[r] with c not a pivot
        let slots: Vec<(usize, usize)> =
            (0..d).flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c))).collect();
        let total = (p as usize).pow(slots.len() as u32);
        for mut idx in 0..total {
            let mut rows = vec![vec![field.zero(); n]; d];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = field.one();
            }
            for &(r, c) in slots.iter().rev() {
                rows[r][c] = elems[idx % p as usize].clone();
                idx /= p as usize;
            }
            out.push(Subspace::from_rows(field, n, rows));
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn enumerate_subalgebras(p: u64, d: usize) -> Result<Vec<Subspace>> {
    let field = Field::prime(p)?;
    if d != 2 && d != 3 {
        return Err(Error::InvalidDim(d));
    }
    let alg = h4(field)?;
    Ok(enumerate_subspaces(p, 4, d)?.into_iter().filter(|s| is_subalgebra_in(&alg, s)).collect())
}

fn nilradical(field: Field) -> Subspace {
    Subspace::span_ints(field, 4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])
}

fn unit_ideal(field: Field) -> Subspace {
    Subspace::span_ints(field, 4, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
}

/// Class of `s` read off from: its dimension, whether it contains `1`, how it
/// meets `N = span{x, gx}` and `U = span{1, x, gx}`, and for `<1, ux + v·gx>`
/// whether `u² = v²`.
pub fn classify_subalgebra(s: &Subspace) -> Result<SubalgebraClass> {
    if !is_subalgebra(s) {
        return Err(Error::NotASubalgebra);
    }
    let field = s.field();
    let one = Element::from_ints(field, &[1, 0, 0, 0]);
    let has_one = s.contains(&one);
    let n = nilradical(field);
    let sn = s.intersection(&n);
    let inside_u = unit_ideal(field).intersection(s).dim() == s.dim();
    use SubalgebraClass::*;
    let class = match (s.dim(), has_one) {
        (2, _) if *s == n => XGx,
        (2, true) if !inside_u => OneG,
        (2, true) => {
            let v = &sn.rows()[0];
            if (&(&v[2] * &v[2]) - &(&v[3] * &v[3])).is_zero() {
                OneXMinusGx
            } else {
                OneX
            }
        }
        (2, false) if sn.dim() == 1 => OneMinusGXMinusGx,
        (3, false) if sn.dim() == 2 => OneMinusGXGx,
        (3, true) if sn.dim() == 2 => OneXGx,
        (3, true) if sn.dim() == 1 => OneGXMinusGx,
        (d, _) if d != 2 && d != 3 => return Err(Error::InvalidDim(d)),
        _ => return Err(Error::Unclassified),
    };
    Ok(class)
}

/// The shape from the structural lemmas that `s` fits, found by brute force
/// over the shape parameters in `F_p`. `None` means no shape fits.
pub fn lemma_shape(s: &Subspace) -> Option<String> {
    let p = s.field().modulus()?;
    let field = s.field();
    let elems = enumerate_field(p).ok()?;
    let signs = [field.one(), -&field.one()];
    let z = field.zero();
    let one = field.one();
    let span = |vs: Vec<Vec<Scalar>>| Subspace::from_rows(field, 4, vs);
    match s.dim() {
        3 => {
            for sg in &signs {
                if *s == span(vec![vec![one.clone(), sg.clone(), z.clone(), z.clone()], e(field, 2), e(field, 3)]) {
                    return Some(format!("<1 + {sg}g, x, gx>"));
                }
            }
            for sg in &signs {
                for y3 in &elems {
                    for y4 in &elems {
                        let cand = span(vec![
                            e(field, 0),
                            vec![z.clone(), one.clone(), y3.clone(), y4.clone()],
                            vec![z.clone(), z.clone(), one.clone(), sg.clone()],
                        ]);
                        if *s == cand {
                            return Some(format!("<1, g + {y3}x + {y4}gx, x + {sg}gx>"));
                        }
                    }
                }
            }
            if *s == span(vec![e(field, 0), e(field, 2), e(field, 3)]) {
                return Some("<1, x, gx>".into());
            }
            None
        }
        2 => {
            for sg in &signs {
                for mu in &signs {
                    for y3 in &elems {
                        for y4 in &elems {
                            let cand = span(vec![
                                vec![one.clone(), sg.clone(), y3.clone(), y4.clone()],
                                vec![z.clone(), z.clone(), one.clone(), mu.clone()],
                            ]);
                            if *s == cand {
                                return Some(format!("<1 + {sg}g + {y3}x + {y4}gx, x + {mu}gx>"));
                            }
                        }
                    }
                }
            }
            if *s == span(vec![e(field, 2), e(field, 3)]) {
                return Some("<x, gx>".into());
            }
            if s.contains(&Element::new(e(field, 0)).unwrap()) {
                let rest = s.rows().iter().find(|r| !r[1..].iter().all(Scalar::is_zero))?;
                return Some(format!("<1, {}g + {}x + {}gx>", rest[1], rest[2], rest[3]));
            }
            None
        }
        _ => None,
    }
}

fn e(field: Field, i: usize) -> Vec<Scalar> {
    (0..4).map(|k| if k == i { field.one() } else { field.zero() }).collect()
}

/// An (anti)automorphism carrying the class representative onto `s`.
pub fn find_witness(s: &Subspace, maps: &[AutoMap]) -> Result<Option<AutoMap>> {
    let class = classify_subalgebra(s)?;
    let rep = class.representative(s.field());
    for phi in maps {
        if rep.map(&phi.op)? == *s {
            return Ok(Some(phi.clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraEntry {
    pub basis: Vec<Vec<String>>,
    pub class_label: String,
    pub shape: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub p: u64,
    pub dim: usize,
    pub count: usize,
    pub by_class: BTreeMap<String, usize>,
    pub unshaped: usize,
    pub entries: Vec<SubalgebraEntry>,
}

impl Census {
    /// Every subalgebra fits a lemma shape and the attained labels are exactly
    /// the expected ones for the dimension.
    pub fn passes(&self) -> bool {
        let expected: Vec<String> = SubalgebraClass::of_dim(self.dim).iter().map(|c| c.label().to_string()).collect();
        let mut got: Vec<String> = self.by_class.keys().cloned().collect();
        let mut want = expected;
        got.sort();
        want.sort();
        self.unshaped == 0 && got == want
    }
}

pub fn census(p: u64, d: usize) -> Result<Census> {
    let subs = enumerate_subalgebras(p, d)?;
    let mut by_class = BTreeMap::new();
    let mut entries = Vec::new();
    let mut unshaped = 0;
    for s in &subs {
        let class = classify_subalgebra(s)?;
        *by_class.entry(class.label().to_string()).or_insert(0) += 1;
        let shape = lemma_shape(s);
        if shape.is_none() {
            unshaped += 1;
        }
        entries.push(SubalgebraEntry {
            basis: s.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
            class_label: class.label().to_string(),
            shape,
        });
    }
    Ok(Census { p, dim: d, count: subs.len(), by_class, unshaped, entries })
}

/// Checks that every subalgebra over `F_p` of dimension `d` is the image of its
/// class representative under some map; `maps` should be `enumerate_maps(p, true)`.
pub fn all_witnessed(p: u64, d: usize) -> Result<bool> {
    let maps = enumerate_maps(p, true)?;
    for s in enumerate_subalgebras(p, d)? {
        if find_witness(&s, &maps)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    const Q: Field = Field::Rational;

    #[test]
    fn closure_examples() {
        assert!(is_subalgebra(&Subspace::span_ints(Q, 4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])));
        assert!(is_subalgebra(&Subspace::span_ints(Q, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])));
        assert!(!is_subalgebra(&Subspace::span_ints(Q, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])));
    }

    #[test]
    fn classify_examples_over_q() {
        let c = |v: &[&[i64]]| classify_subalgebra(&Subspace::span_ints(Q, 4, v)).unwrap();
        assert_eq!(c(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]), SubalgebraClass::XGx);
        assert_eq!(c(&[&[1, 0, 0, 0], &[0, 0, 1, 3]]), SubalgebraClass::OneX);
        assert_eq!(c(&[&[1, 0, 0, 0], &[0, 0, 1, -1]]), SubalgebraClass::OneXMinusGx);
        assert_eq!(c(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]), SubalgebraClass::OneX);
        assert_eq!(c(&[&[1, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]), SubalgebraClass::OneMinusGXGx);
        assert_eq!(c(&[&[1, 1, 2, 0], &[0, 0, 1, 1]]), SubalgebraClass::OneMinusGXMinusGx);
        assert_eq!(c(&[&[1, 0, 0, 0], &[0, 1, 5, 7]]), SubalgebraClass::OneG);
        for class in SubalgebraClass::ALL {
            assert_eq!(classify_subalgebra(&class.representative(Q)).unwrap(), class);
        }
        let bad = Subspace::span_ints(Q, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(classify_subalgebra(&bad), Err(Error::NotASubalgebra));
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(3, 4, 3).unwrap().len(), 40);
        assert_eq!(enumerate_subspaces(3, 4, 2).unwrap().len(), 130);
        let distinct: BTreeSet<_> = enumerate_subspaces(3, 4, 2).unwrap().into_iter().collect();
        assert_eq!(distinct.len(), 130);
    }

    #[test]
    fn census_over_f3_and_f5() {
        for p in [3, 5] {
            for d in [2, 3] {
                let c = census(p, d).unwrap();
                assert!(c.passes(), "p={p} d={d}: {:?}", c.by_class);
            }
        }
        assert_eq!(census(3, 2).unwrap().count, 26);
        assert_eq!(census(3, 3).unwrap().count, 9);
        assert_eq!(census(5, 2).unwrap().count, 52);
        assert!(matches!(enumerate_subalgebras(3, 1), Err(Error::InvalidDim(1))));
    }

    #[test]
    fn classes_are_single_orbits_over_f3() {
        assert!(all_witnessed(3, 2).unwrap());
        assert!(all_witnessed(3, 3).unwrap());
    }

    #[test]
    fn classification_is_invariant_under_maps() {
        let maps = enumerate_maps(3, true).unwrap();
        for d in [2, 3] {
            for s in enumerate_subalgebras(3, d).unwrap() {
                let c = classify_subalgebra(&s).unwrap();
                for phi in &maps {
                    assert_eq!(classify_subalgebra(&s.map(&phi.op).unwrap()).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn sigma_squares_to_one_in_nonunital_three_dim() {
        let f = Field::Prime(5);
        for s in enumerate_subalgebras(5, 3).unwrap() {
            if s.contains(&Element::from_ints(f, &[1, 0, 0, 0])) {
                continue;
            }
            for sigma in 0..5 {
                if s.contains(&Element::from_ints(f, &[1, sigma, 0, 0])) {
                    assert!(sigma == 1 || sigma == 4);
                }
            }
        }
    }
}
