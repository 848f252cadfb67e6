//! Registry of the parametrized RB-operator families on `H4`.

pub mod expr;
mod families;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{h4, Element};
use crate::autgroup::AutoMap;
use crate::error::{Error, Result};
use crate::field::{enumerate_field, Field, Scalar};
use crate::linops::{LinearOperator, Subspace};
use crate::rb::{is_rb, WeightedOperator};
use expr::{environment, Expr, VARIABLES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Ma,
    Theorems,
    Final,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scope> {
        match s {
            "ma" => Ok(Scope::Ma),
            "theorems" => Ok(Scope::Theorems),
            "final" => Ok(Scope::Final),
            _ => Err(Error::Parse(format!("unknown scope `{s}`"))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Ma => "ma",
            Scope::Theorems => "theorems",
            Scope::Final => "final",
        })
    }
}

/// `expr ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub expr: Expr,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≠ 0", self.expr)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reducer {
    pub eps: i8,
    pub a: Expr,
    pub b: Expr,
    pub p: Expr,
    pub q: Expr,
    /// Parameters that become zero after conjugation.
    pub zeroes: Vec<String>,
}

/// Which subspace a theorem header pins down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Header {
    Kernel(Vec<[i64; 4]>),
    Image(Vec<[i64; 4]>),
}

impl Header {
    pub fn subspace(&self, field: Field) -> Subspace {
        let gens = match self {
            Header::Kernel(g) | Header::Image(g) => g,
        };
        let rows: Vec<&[i64]> = gens.iter().map(|g| g.as_slice()).collect();
        Subspace::span_ints(field, 4, &rows)
    }

    /// True iff `op` has exactly the named kernel (and, for image headers, a
    /// one-dimensional kernel together with the named image).
    pub fn admits(&self, op: &LinearOperator) -> bool {
        let s = self.subspace(op.field());
        match self {
            Header::Kernel(_) => op.kernel() == s,
            Header::Image(_) => op.kernel().dim() == 1 && op.image() == s,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RbFamily {
    pub id: String,
    pub scope: Scope,
    pub group: String,
    pub item: String,
    pub params: Vec<String>,
    /// `images[j][i]` is coordinate `i` of `R(e_j)`.
    pub images: Vec<Vec<Expr>>,
    pub domain: Vec<Constraint>,
    pub reducer: Option<Reducer>,
    pub notes: Vec<String>,
    pub printed: Option<Vec<Vec<Expr>>>,
}

fn parse_images(src: &[[&str; 4]; 4]) -> Vec<Vec<Expr>> {
    src.iter().map(|col| col.iter().map(|s| Expr::parse(s).expect("family table")).collect()).collect()
}

fn ordered_params(images: &[Vec<Expr>]) -> Vec<String> {
    let mut vars: Vec<String> = images.iter().flatten().flat_map(|e| e.variables()).collect();
    vars.retain(|v| v != "lambda");
    vars.sort_by_key(|v| VARIABLES.iter().position(|w| w == v));
    vars.dedup();
    vars
}

impl RbFamily {
    fn from_spec(s: &families::FamilySpec) -> RbFamily {
        let images = parse_images(&s.images);
        let params = ordered_params(&images);
        let mut domain: Vec<Constraint> = Vec::new();
        for e in images.iter().flatten() {
            for d in e.denominators() {
                if !domain.iter().any(|c| c.expr == d) {
                    domain.push(Constraint { expr: d });
                }
            }
        }
        for d in s.extra_domain {
            domain.push(Constraint { expr: Expr::parse(d).expect("family table") });
        }
        let reducer = s.reducer.as_ref().map(|r| Reducer {
            eps: r.eps,
            a: Expr::parse(r.a).unwrap(),
            b: Expr::parse(r.b).unwrap(),
            p: Expr::parse(r.p).unwrap(),
            q: Expr::parse(r.q).unwrap(),
            zeroes: r.zeroes.iter().map(|z| z.to_string()).collect(),
        });
        RbFamily {
            id: s.id.to_string(),
            scope: s.scope,
            group: s.group.to_string(),
            item: s.item.to_string(),
            params,
            images,
            domain,
            reducer,
            notes: s.notes.iter().map(|n| n.to_string()).collect(),
            printed: s.printed.as_ref().map(parse_images),
        }
    }

    /// The theorem header this family belongs to; `None` outside the
    /// theorem scope.
    pub fn header(&self) -> Option<Header> {
        header_of(&self.group)
    }

    /// Whether this is a registry family verbatim (not a printed variant or a
    /// modified copy).
    pub fn is_registered(&self) -> bool {
        registry().iter().any(|f| f.id == self.id && f.images == self.images)
    }

    /// Only valid for a sub-locus of its parameters (`ma-h`).
    pub fn is_conditional(&self) -> bool {
        self.notes.iter().any(|n| n.starts_with("conditional"))
    }

    /// For conditional families, whether `params` lie on the valid locus.
    pub fn condition_holds(&self, params: &[Scalar]) -> bool {
        if !self.is_conditional() {
            return true;
        }
        self.params.iter().zip(params).all(|(n, v)| n != "p1" || v.is_zero())
    }

    /// The family exactly as printed, where it differs from the stored one.
    pub fn as_printed(&self) -> Option<RbFamily> {
        let printed = self.printed.clone()?;
        Some(RbFamily { id: format!("{}-as-printed", self.id), images: printed, printed: None, ..self.clone() })
    }

    pub fn check_domain(&self, lambda: &Scalar, params: &[Scalar]) -> Result<()> {
        if lambda.is_zero() {
            return Err(Error::WeightMismatch("weight must be nonzero".into()));
        }
        if params.len() != self.params.len() {
            return Err(Error::DomainViolation(format!(
                "{} expects {} parameters ({}), got {}",
                self.id,
                self.params.len(),
                self.params.join(", "),
                params.len()
            )));
        }
        let names: Vec<&str> = self.params.iter().map(|s| s.as_str()).collect();
        let env = environment(lambda, &names, params);
        for c in &self.domain {
            if c.expr.eval(lambda.field(), &env)?.is_zero() {
                return Err(Error::DomainViolation(c.to_string()));
            }
        }
        Ok(())
    }

    /// The operator at weight `lambda` and the given parameter values, in the
    /// field of `lambda`.
    pub fn instantiate(&self, lambda: &Scalar, params: &[Scalar]) -> Result<WeightedOperator> {
        self.check_domain(lambda, params)?;
        let field = lambda.field();
        let names: Vec<&str> = self.params.iter().map(|s| s.as_str()).collect();
        let env = environment(lambda, &names, params);
        let cols = self
            .images
            .iter()
            .map(|col| Element::new(col.iter().map(|e| e.eval(field, &env)).collect::<Result<Vec<_>>>()?))
            .collect::<Result<Vec<_>>>()?;
        let w = WeightedOperator::new(LinearOperator::from_columns(&cols)?, lambda.clone())?;
        if cfg!(debug_assertions) && self.condition_holds(params) && self.is_registered() {
            debug_assert!(is_rb(&h4(field)?, &w)?, "{} fails the RB identity at {:?}", self.id, params);
        }
        Ok(w)
    }

    /// The automorphism that brings this family to its reduced form at the
    /// given parameters.
    pub fn reducing_map(&self, lambda: &Scalar, params: &[Scalar]) -> Result<Option<AutoMap>> {
        let Some(r) = &self.reducer else { return Ok(None) };
        let names: Vec<&str> = self.params.iter().map(|s| s.as_str()).collect();
        let env = environment(lambda, &names, params);
        let f = lambda.field();
        Ok(Some(AutoMap::from_params(
            r.eps,
            r.a.eval(f, &env)?,
            r.b.eval(f, &env)?,
            r.p.eval(f, &env)?,
            r.q.eval(f, &env)?,
            false,
        )?))
    }

    /// Every parameter tuple over `F_p` inside the domain, with its operator,
    /// in lexicographic order of the tuples.
    pub fn sweep(&self, lambda: &Scalar) -> Result<Vec<(Vec<Scalar>, WeightedOperator)>> {
        let p = lambda.field().modulus().ok_or_else(|| Error::InvalidParams("sweeps need a finite field".into()))?;
        let elems = enumerate_field(p)?;
        let k = self.params.len();
        let mut out = Vec::new();
        for mut idx in 0..(p as usize).pow(k as u32) {
            let mut vals = vec![elems[0].clone(); k];
            for slot in (0..k).rev() {
                vals[slot] = elems[idx % p as usize].clone();
                idx /= p as usize;
            }
            match self.instantiate(lambda, &vals) {
                Ok(w) => out.push((vals, w)),
                Err(Error::DomainViolation(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// Random rational parameters inside the domain: numerators in
    /// `[-20, 20]`, denominators in `[1, 6]`.
    pub fn random_params<R: Rng>(&self, rng: &mut R, lambda: &Scalar) -> Result<Vec<Scalar>> {
        for _ in 0..1000 {
            let vals: Vec<Scalar> =
                self.params.iter().map(|_| Scalar::rational(rng.gen_range(-20..=20), rng.gen_range(1..=6))).collect();
            match self.check_domain(lambda, &vals) {
                Ok(()) => return Ok(vals),
                Err(Error::DomainViolation(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::DomainViolation(format!("no admissible parameters found for {}", self.id)))
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            id: self.id.clone(),
            params: self.params.clone(),
            domain: self.domain.iter().map(|c| c.to_string()).collect(),
            images: self.images.iter().map(|c| c.iter().map(|e| e.to_string()).collect()).collect(),
            source: SourceJson { group: self.group.clone(), item: self.item.clone() },
            notes: self.notes.clone(),
            reducer: self.reducer.as_ref().map(|r| ReducerJson {
                eps: r.eps,
                a: r.a.to_string(),
                b: r.b.to_string(),
                p: r.p.to_string(),
                q: r.q.to_string(),
                zeroes: r.zeroes.clone(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceJson {
    pub group: String,
    pub item: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducerJson {
    pub eps: i8,
    pub a: String,
    pub b: String,
    pub p: String,
    pub q: String,
    pub zeroes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub id: String,
    pub params: Vec<String>,
    pub domain: Vec<String>,
    pub images: Vec<Vec<String>>,
    pub source: SourceJson,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reducer: Option<ReducerJson>,
}

/// A conjugation relating two families at equal parameter values.
#[derive(Clone, Debug)]
pub struct Link {
    pub from: String,
    pub to: String,
    pub eps: i8,
    pub a: Expr,
    pub b: Expr,
    pub anti: bool,
}

impl Link {
    pub fn map(&self, from: &RbFamily, lambda: &Scalar, params: &[Scalar]) -> Result<AutoMap> {
        let names: Vec<&str> = from.params.iter().map(|s| s.as_str()).collect();
        let env = environment(lambda, &names, params);
        let f = lambda.field();
        AutoMap::from_params(self.eps, self.a.eval(f, &env)?, self.b.eval(f, &env)?, f.one(), f.zero(), self.anti)
    }
}

pub fn registry() -> &'static [RbFamily] {
    static REG: OnceLock<Vec<RbFamily>> = OnceLock::new();
    REG.get_or_init(|| families::FAMILIES.iter().map(RbFamily::from_spec).collect())
}

pub fn links() -> Vec<Link> {
    families::LINKS
        .iter()
        .map(|l| Link {
            from: l.from.into(),
            to: l.to.into(),
            eps: l.eps,
            a: Expr::parse(l.a).unwrap(),
            b: Expr::parse(l.b).unwrap(),
            anti: l.anti,
        })
        .collect()
}

pub fn family(id: &str) -> Result<&'static RbFamily> {
    registry().iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

pub fn list_families(scope: Scope) -> Vec<&'static RbFamily> {
    registry().iter().filter(|f| f.scope == scope).collect()
}

/// Theorem groups in table order.
pub fn theorem_groups() -> Vec<&'static str> {
    families::HEADERS.iter().map(|h| h.0).collect()
}

pub fn header_of(group: &str) -> Option<Header> {
    families::HEADERS.iter().find(|h| h.0 == group).map(|&(_, kernel, gens)| {
        if kernel {
            Header::Kernel(gens.to_vec())
        } else {
            Header::Image(gens.to_vec())
        }
    })
}

pub fn instantiate(id: &str, lambda: &Scalar, params: &[Scalar]) -> Result<WeightedOperator> {
    family(id)?.instantiate(lambda, params)
}

/// Entry-wise reduction of a rational operator modulo `p`.
pub fn reduce_mod_p(w: &WeightedOperator, p: u64) -> Result<WeightedOperator> {
    let field = Field::prime(p)?;
    let reduce = |s: &Scalar, what: String| -> Result<Scalar> {
        let q = s.as_rational().ok_or_else(|| Error::FieldMismatch { left: Field::Rational, right: s.field() })?;
        field.reduce(q).map_err(|_| Error::BadReduction(format!("{what} = {s} has denominator divisible by {p}")))
    };
    let n = w.op.dim();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(reduce(w.op.entry(i, j), format!("entry ({i}, {j})"))?);
        }
    }
    let weight = reduce(&w.weight, "weight".into())?;
    WeightedOperator::new(LinearOperator::from_entries(field, n, entries)?, weight)
}

pub fn registry_json() -> Vec<FamilyJson> {
    registry().iter().map(RbFamily::to_json).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::conjugate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    fn weights() -> [Scalar; 3] {
        [q(1, 1), q(2, 1), q(-1, 2)]
    }

    #[test]
    fn registry_sizes_and_ids() {
        assert_eq!(list_families(Scope::Ma).len(), 8);
        assert_eq!(list_families(Scope::Final).len(), 14);
        assert_eq!(list_families(Scope::Theorems).len(), 35);
        let ids: BTreeSet<&str> = registry().iter().map(|f| f.id.as_str()).collect();
        assert_eq!(ids.len(), registry().len());
        assert!(matches!(family("final-15"), Err(Error::UnknownFamily(_))));
        for f in list_families(Scope::Theorems) {
            assert!(f.header().is_some(), "{}", f.id);
        }
    }

    #[test]
    fn domains() {
        assert_eq!(
            family("final-1").unwrap().domain.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            vec!["alpha_x ≠ 0"]
        );
        assert_eq!(family("ma-d").unwrap().domain[0].to_string(), "p3 ≠ 0");
        assert_eq!(family("ma-g").unwrap().domain[0].to_string(), "p2 ≠ 0");
        assert!(family("final-4").unwrap().domain.is_empty());
        let one = q(1, 1);
        let z = q(0, 1);
        assert_eq!(
            instantiate("ma-d", &one, &[z.clone(), z.clone(), z.clone()]),
            Err(Error::DomainViolation("p3 ≠ 0".into()))
        );
        assert_eq!(instantiate("ma-f", &one, &[z.clone(), q(-1, 1)]), Err(Error::DomainViolation("λ + p2 ≠ 0".into())));
        assert_eq!(instantiate("final-1", &one, &[z.clone()]), Err(Error::DomainViolation("alpha_x ≠ 0".into())));
        assert!(matches!(instantiate("final-4", &z, &[]), Err(Error::WeightMismatch(_))));
        assert!(matches!(instantiate("final-4", &one, &[one.clone()]), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn final_four_is_the_identity_on_the_group_algebra() {
        let w = instantiate("final-4", &q(1, 1), &[]).unwrap();
        let want =
            LinearOperator::from_int_columns(Field::Rational, &[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0; 4], &[0; 4]]);
        assert_eq!(w.op, want);
        assert!(is_rb(&h4(Field::Rational).unwrap(), &w).unwrap());
    }

    #[test]
    fn every_family_is_rb_on_random_parameters() {
        let alg = h4(Field::Rational).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in registry() {
            for lam in weights() {
                for _ in 0..20 {
                    let params = f.random_params(&mut rng, &lam).unwrap();
                    let w = f.instantiate(&lam, &params).unwrap();
                    assert_eq!(is_rb(&alg, &w).unwrap(), f.condition_holds(&params), "{} at {:?}", f.id, params);
                }
            }
        }
    }

    #[test]
    fn ma_f_as_printed_needs_equal_parameters() {
        let alg = h4(Field::Rational).unwrap();
        let printed = family("ma-f").unwrap().as_printed().unwrap();
        let lam = q(1, 1);
        assert!(is_rb(&alg, &printed.instantiate(&lam, &[q(2, 1), q(2, 1)]).unwrap()).unwrap());
        assert!(!is_rb(&alg, &printed.instantiate(&lam, &[q(2, 1), q(3, 1)]).unwrap()).unwrap());
        assert!(!is_rb(&alg, &printed.instantiate(&lam, &[q(1, 1), q(0, 1)]).unwrap()).unwrap());
    }

    #[test]
    fn theorem_families_have_their_header() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for f in list_families(Scope::Theorems) {
            let h = f.header().unwrap();
            for lam in weights() {
                for _ in 0..10 {
                    let params = f.random_params(&mut rng, &lam).unwrap();
                    let w = f.instantiate(&lam, &params).unwrap();
                    assert!(h.admits(&w.op), "{} at {:?}", f.id, params);
                }
            }
        }
    }

    #[test]
    fn reducers_clear_their_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for f in registry().iter().filter(|f| f.reducer.is_some()) {
            let r = f.reducer.as_ref().unwrap();
            for lam in weights() {
                for _ in 0..10 {
                    let params = f.random_params(&mut rng, &lam).unwrap();
                    let w = f.instantiate(&lam, &params).unwrap();
                    let phi = f.reducing_map(&lam, &params).unwrap().unwrap();
                    let reduced: Vec<Scalar> = f
                        .params
                        .iter()
                        .zip(&params)
                        .map(|(n, v)| if r.zeroes.contains(n) { q(0, 1) } else { v.clone() })
                        .collect();
                    assert_eq!(conjugate(&w, &phi).unwrap(), f.instantiate(&lam, &reduced).unwrap(), "{}", f.id);
                }
            }
        }
    }

    #[test]
    fn links_conjugate_between_variants() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for l in links() {
            let from = family(&l.from).unwrap();
            let to = family(&l.to).unwrap();
            for lam in weights() {
                let params = from.random_params(&mut rng, &lam).unwrap();
                let phi = l.map(from, &lam, &params).unwrap();
                let w = from.instantiate(&lam, &params).unwrap();
                assert_eq!(
                    conjugate(&w, &phi).unwrap(),
                    to.instantiate(&lam, &params).unwrap(),
                    "{} -> {}",
                    l.from,
                    l.to
                );
            }
        }
    }

    #[test]
    fn reduction_mod_p() {
        let w = instantiate("final-6", &q(1, 1), &[]).unwrap();
        let r = reduce_mod_p(&w, 3).unwrap();
        assert_eq!(r.op.entry(0, 0), &Scalar::residue(1, 3));
        let bad = WeightedOperator::new(
            LinearOperator::from_entries(
                Field::Rational,
                4,
                (0..16).map(|k| if k == 5 { q(1, 3) } else { q(0, 1) }).collect(),
            )
            .unwrap(),
            q(1, 1),
        )
        .unwrap();
        assert!(matches!(reduce_mod_p(&bad, 3), Err(Error::BadReduction(_))));
        let w3 = reduce_mod_p(&instantiate("final-3", &q(1, 1), &[]).unwrap(), 5).unwrap();
        assert!(is_rb(&h4(Field::Prime(5)).unwrap(), &w3).unwrap());
    }

    #[test]
    fn sweeps_over_f3() {
        let one = Scalar::residue(1, 3);
        assert_eq!(family("final-1").unwrap().sweep(&one).unwrap().len(), 2);
        assert_eq!(family("final-4").unwrap().sweep(&one).unwrap().len(), 1);
        // p3 ≠ 0 leaves 27 - 9 tuples
        assert_eq!(family("ma-d").unwrap().sweep(&one).unwrap().len(), 18);
    }

    #[test]
    fn registry_serializes() {
        let j = serde_json::to_value(registry_json()).unwrap();
        let f1 = j.as_array().unwrap().iter().find(|f| f["id"] == "final-12").unwrap();
        assert_eq!(f1["domain"][0], "alpha_gx ≠ 0");
        assert_eq!(f1["images"][2][0], "alpha_gx");
        assert_eq!(f1["source"]["item"], "12");
    }
}
