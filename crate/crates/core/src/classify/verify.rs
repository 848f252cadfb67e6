//! Machine checks of the catalog against enumeration: kernel theorems,
//! family validity, the corollary on the first list, and the subalgebra
//! census.

use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::orbits::OrbitContext;
use super::packed::{pack, unpack, unpack_weighted, Fp, Mat};
use crate::algebra::h4;
use crate::autgroup::AutoMapJson;
use crate::catalog::{
    family, header_of, list_families, reduce_mod_p, registry, theorem_groups, Header, RbFamily, Scope,
};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linops::{LinearOperator, Subspace};
use crate::rb::{is_rb, OperatorJson, WeightedOperator};
use crate::subalg::{all_witnessed, census, classify_subalgebra, is_subalgebra, Census};

fn element_label(v: &[i64; 4]) -> String {
    const NAMES: [&str; 4] = ["1", "g", "x", "gx"];
    let mut s = String::new();
    for (c, name) in v.iter().zip(NAMES) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.unsigned_abs();
        let coef = if mag == 1 { String::new() } else { mag.to_string() };
        s.push_str(&format!("{sign}{coef}{name}"));
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

pub fn header_label(h: &Header) -> String {
    let (what, gens) = match h {
        Header::Kernel(g) => ("ker R", g),
        Header::Image(g) => ("im R", g),
    };
    let parts: Vec<String> = gens.iter().map(element_label).collect();
    if parts.is_empty() {
        return format!("{what} = 0");
    }
    format!("{what} = <{}>", parts.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCheck {
    pub group: String,
    pub header: String,
    pub families: Vec<String>,
    /// Enumerated operators satisfying the header.
    pub enumerated: usize,
    /// Distinct operators produced by the families.
    pub instantiated: usize,
    /// Satisfy the header but no family produces them.
    pub missing: Vec<OperatorJson>,
    /// Produced by a family but absent from the header's set.
    pub extra: Vec<OperatorJson>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub field_p: u64,
    pub weight: String,
    pub groups: Vec<GroupCheck>,
    pub pass: bool,
}

struct Stratum {
    kernel: Subspace,
    image: Subspace,
}

fn strata(fp: Fp, ops: &[Mat]) -> Vec<(Mat, Stratum)> {
    ops.iter()
        .map(|m| {
            let op = unpack(fp, m);
            (*m, Stratum { kernel: op.kernel(), image: op.image() })
        })
        .collect()
}

fn satisfies(h: &Header, target: &Subspace, s: &Stratum) -> bool {
    match h {
        Header::Kernel(_) => s.kernel == *target,
        Header::Image(_) => s.kernel.dim() == 1 && s.image == *target,
    }
}

fn check_group(
    fp: Fp,
    lam: u32,
    strata: &[(Mat, Stratum)],
    group: &str,
    header: &Header,
    families: &[RbFamily],
) -> Result<GroupCheck> {
    let target = header.subspace(fp.field());
    let want: BTreeSet<Mat> = strata.iter().filter(|(_, s)| satisfies(header, &target, s)).map(|(m, _)| *m).collect();
    let lambda = Scalar::residue(lam as i64, fp.p as u64);
    let mut got = BTreeSet::new();
    for f in families {
        for (_, w) in f.sweep(&lambda)? {
            got.insert(pack(fp, &w.op)?);
        }
    }
    let json = |m: &Mat| unpack_weighted(fp, m, lam).to_json();
    let missing: Vec<OperatorJson> = want.difference(&got).map(json).collect();
    let extra: Vec<OperatorJson> = got.difference(&want).map(json).collect();
    Ok(GroupCheck {
        group: group.to_string(),
        header: header_label(header),
        families: families.iter().map(|f| f.id.clone()).collect(),
        enumerated: want.len(),
        instantiated: got.len(),
        pass: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
    })
}

/// Compares one theorem header against an arbitrary set of families;
/// exposed so modified families can be checked too.
pub fn verify_group(fp: Fp, lam: u32, ops: &[Mat], group: &str, families: &[RbFamily]) -> Result<GroupCheck> {
    let header = header_of(group).ok_or_else(|| Error::UnknownFamily(group.to_string()))?;
    check_group(fp, lam, &strata(fp, ops), group, &header, families)
}

/// Every theorem group: the enumerated operators with the header's kernel
/// (or image) against the union of the group's family sweeps.
pub fn verify_kernel_theorems(fp: Fp, lam: u32, ops: &[Mat]) -> Result<KernelReport> {
    let st = strata(fp, ops);
    let mut groups = Vec::new();
    for g in theorem_groups() {
        let header = header_of(g).expect("every group has a header");
        let fams: Vec<RbFamily> =
            list_families(Scope::Theorems).into_iter().filter(|f| f.group == g).cloned().collect();
        groups.push(check_group(fp, lam, &st, g, &header, &fams)?);
    }
    Ok(KernelReport { field_p: fp.p as u64, weight: lam.to_string(), pass: groups.iter().all(|g| g.pass), groups })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub id: String,
    pub scope: Scope,
    pub checked: usize,
    pub valid: usize,
    pub status: String,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamiliesReport {
    pub weights: Vec<String>,
    pub samples: usize,
    pub seed: u64,
    pub families: Vec<FamilyCheck>,
    pub pass: bool,
}

pub fn default_weights() -> Vec<Scalar> {
    vec![Scalar::rational(1, 1), Scalar::rational(2, 1), Scalar::rational(-1, 2)]
}

/// Random rational instances of one family at each weight. Conditional
/// families alternate between their valid locus and its complement and must
/// be RB exactly on the locus.
pub fn check_family(f: &RbFamily, weights: &[Scalar], samples: usize, rng: &mut ChaCha8Rng) -> Result<FamilyCheck> {
    let alg = h4(Field::Rational)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut valid = 0;
    let p1 = f.params.iter().position(|n| n == "p1");
    for lambda in weights {
        for n in 0..samples {
            let mut params = f.random_params(rng, lambda)?;
            if let (true, Some(k)) = (f.is_conditional(), p1) {
                if n % 2 == 0 {
                    params[k] = Scalar::rational(0, 1);
                } else if params[k].is_zero() {
                    params[k] = Scalar::rational(1, 1);
                }
            }
            let w = f.instantiate(lambda, &params)?;
            let ok = is_rb(&alg, &w)?;
            checked += 1;
            valid += ok as usize;
            if ok != f.condition_holds(&params) {
                let vals: Vec<String> = params.iter().map(|v| v.to_string()).collect();
                failures.push(format!("λ = {lambda}, params = ({}): is_rb = {ok}", vals.join(", ")));
            }
        }
    }
    let status = match (failures.is_empty(), f.is_conditional()) {
        (false, _) => "fail".to_string(),
        (true, true) => f.notes.iter().find(|n| n.starts_with("conditional")).cloned().unwrap_or_default(),
        (true, false) => "pass".to_string(),
    };
    Ok(FamilyCheck { id: f.id.clone(), scope: f.scope, checked, valid, status, failures })
}

pub fn verify_families(weights: &[Scalar], samples: usize, seed: u64) -> Result<FamiliesReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let families =
        registry().iter().map(|f| check_family(f, weights, samples, &mut rng)).collect::<Result<Vec<_>>>()?;
    Ok(FamiliesReport {
        weights: weights.iter().map(|w| w.to_string()).collect(),
        samples,
        seed,
        pass: families.iter().all(|f| f.status != "fail"),
        families,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Claim {
    Dual(&'static str, &'static str),
    Trivial(&'static str),
    Conjugate { source: &'static str, target: &'static str, to_dual: bool },
}

const CLAIMS: [(&str, Claim); 7] = [
    ("i", Claim::Dual("ma-a", "ma-b")),
    ("ii", Claim::Trivial("ma-c")),
    ("iii", Claim::Conjugate { source: "ma-d", target: "final-1", to_dual: false }),
    ("iv", Claim::Conjugate { source: "ma-e", target: "final-12", to_dual: false }),
    ("v", Claim::Conjugate { source: "ma-f", target: "final-3", to_dual: true }),
    ("vi", Claim::Conjugate { source: "ma-g", target: "final-1", to_dual: true }),
    ("vii", Claim::Conjugate { source: "ma-h", target: "final-7", to_dual: false }),
];

fn describe(claim: Claim) -> String {
    match claim {
        Claim::Dual(a, b) => format!("dual({a}) = {b}"),
        Claim::Trivial(a) => format!("{a} = -λ id"),
        Claim::Conjugate { source, target, to_dual: false } => format!("{source} is conjugate to {target}"),
        Claim::Conjugate { source, target, to_dual: true } => format!("{source} is conjugate to dual({target})"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryWitness {
    /// `"Q"` for reduced rational samples, `"F_p"` for sweep points.
    pub origin: String,
    pub params: Vec<String>,
    pub target_params: Vec<String>,
    /// `φ` with `φ⁻¹ S φ` equal to the target (or its dual).
    pub map: AutoMapJson,
}

/// Orbit invariants that separate a source instance from the claimed target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub trace: String,
    /// Classes of `ker S` and `ker dual(S)`, sorted.
    pub kernel_pair: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub origin: String,
    pub params: Vec<String>,
    pub operator: OperatorJson,
    /// Final-list families whose orbit contains the instance.
    pub lands_in: Vec<String>,
    pub source: Invariants,
    pub target: Invariants,
    /// The same invariants computed exactly over `Q`, for rational samples.
    pub rational_source: Option<Invariants>,
    pub rational_target: Option<Invariants>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryItem {
    pub item: String,
    pub claim: String,
    pub checked: usize,
    pub skipped: usize,
    pub pass: bool,
    pub witnesses: Vec<CorollaryWitness>,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub weight: String,
    pub verification_prime: u64,
    pub samples: usize,
    pub seed: u64,
    pub items: Vec<CorollaryItem>,
    pub pass: bool,
}

fn kernel_class(op: &LinearOperator) -> String {
    let k = op.kernel();
    if (2..=3).contains(&k.dim()) && is_subalgebra(&k) {
        if let Ok(c) = classify_subalgebra(&k) {
            return c.label().to_string();
        }
    }
    format!("dim {}", k.dim())
}

fn invariants_of(w: &WeightedOperator) -> Invariants {
    let mut kernel_pair = vec![kernel_class(&w.op), kernel_class(&w.dual().op)];
    kernel_pair.sort();
    Invariants { trace: w.op.trace().to_string(), kernel_pair }
}

fn invariants(ctx: &OrbitContext, m: &Mat) -> Invariants {
    invariants_of(&unpack_weighted(ctx.fp, m, ctx.lam))
}

/// Canonical form of every final-list instance over `F_p`, with the families
/// reaching it.
fn final_orbit_labels(ctx: &OrbitContext) -> Result<HashMap<Mat, Vec<String>>> {
    let mut labels: HashMap<Mat, Vec<String>> = HashMap::new();
    labels.entry(ctx.canonical(&[0; 16])).or_default().push("trivial".into());
    for f in list_families(Scope::Final) {
        for (_, w) in f.sweep(&ctx.weight())? {
            let ids = labels.entry(ctx.canonical(&pack(ctx.fp, &w.op)?)).or_default();
            if !ids.contains(&f.id) {
                ids.push(f.id.clone());
            }
        }
    }
    Ok(labels)
}

struct ConjugacyCheck<'a> {
    ctx: &'a OrbitContext,
    targets: HashMap<Mat, Vec<String>>,
    target_invariants: Invariants,
    rational_target: Invariants,
    labels: &'a HashMap<Mat, Vec<String>>,
}

impl ConjugacyCheck<'_> {
    fn check(
        &self,
        m: &Mat,
        rational: Option<&WeightedOperator>,
        origin: &str,
        params: Vec<String>,
        item: &mut CorollaryItem,
    ) {
        item.checked += 1;
        for (phi, map) in self.ctx.packed.iter().zip(&self.ctx.maps) {
            if let Some(tp) = self.targets.get(&phi.conjugate(self.ctx.fp, m)) {
                if origin != "Q" || item.witnesses.iter().filter(|w| w.origin == "Q").count() < 5 {
                    item.witnesses.push(CorollaryWitness {
                        origin: origin.into(),
                        params,
                        target_params: tp.clone(),
                        map: map.to_json(),
                    });
                }
                return;
            }
        }
        item.counterexamples.push(Counterexample {
            origin: origin.into(),
            params,
            operator: unpack_weighted(self.ctx.fp, m, self.ctx.lam).to_json(),
            lands_in: self.labels.get(&self.ctx.canonical(m)).cloned().unwrap_or_default(),
            source: invariants(self.ctx, m),
            target: self.target_invariants.clone(),
            rational_source: rational.map(invariants_of),
            rational_target: rational.map(|_| self.rational_target.clone()),
        });
    }
}

/// Checks the seven statements relating the first list (`ma-*`) to the final
/// one. Duality and triviality are exact over `Q`; conjugacy is decided over
/// `F_prime` by explicit search, on `samples` reduced rational instances plus
/// every admissible parameter tuple over `F_prime`.
pub fn verify_corollary(lambda: &Scalar, samples: usize, seed: u64, prime: u64) -> Result<CorollaryReport> {
    if lambda.field() != Field::Rational {
        return Err(Error::FieldMismatch { left: Field::Rational, right: lambda.field() });
    }
    if lambda.is_zero() {
        return Err(Error::WeightMismatch("weight must be nonzero".into()));
    }
    let field = Field::prime(prime)?;
    let lam_p = field
        .reduce(lambda.as_rational().expect("rational"))
        .map_err(|_| Error::BadReduction(format!("weight {lambda} mod {prime}")))?;
    if lam_p.is_zero() {
        return Err(Error::BadReduction(format!("weight {lambda} vanishes mod {prime}")));
    }
    let ctx = OrbitContext::new(prime, lam_p.residue_value().expect("residue") as u32)?;
    let labels = final_orbit_labels(&ctx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::new();
    for (name, claim) in CLAIMS {
        let mut item = CorollaryItem {
            item: name.into(),
            claim: describe(claim),
            checked: 0,
            skipped: 0,
            pass: false,
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
        };
        match claim {
            Claim::Dual(a, b) => {
                item.checked = 1;
                item.pass = family(a)?.instantiate(lambda, &[])?.dual() == family(b)?.instantiate(lambda, &[])?;
            }
            Claim::Trivial(a) => {
                item.checked = 1;
                let w = family(a)?.instantiate(lambda, &[])?;
                item.pass = w.op == LinearOperator::identity(Field::Rational, 4).scale(&-lambda)?;
            }
            Claim::Conjugate { source, target, to_dual } => {
                let src = family(source)?;
                let mut targets = HashMap::new();
                for (params, w) in family(target)?.sweep(&lam_p)? {
                    let mut m = pack(ctx.fp, &w.op)?;
                    if to_dual {
                        m = ctx.fp.dual(&m, ctx.lam);
                    }
                    targets.entry(m).or_insert_with(|| params.iter().map(|v| v.to_string()).collect());
                }
                let first = *targets
                    .keys()
                    .min()
                    .ok_or_else(|| Error::Infeasible(format!("{target} is empty over F_{prime}")))?;
                let tfam = family(target)?;
                let tparams = tfam.random_params(&mut rng, lambda)?;
                let mut tq = tfam.instantiate(lambda, &tparams)?;
                if to_dual {
                    tq = tq.dual();
                }
                let checker = ConjugacyCheck {
                    ctx: &ctx,
                    target_invariants: invariants(&ctx, &first),
                    rational_target: invariants_of(&tq),
                    targets,
                    labels: &labels,
                };
                for _ in 0..samples {
                    let mut params = src.random_params(&mut rng, lambda)?;
                    if src.is_conditional() {
                        for (slot, pname) in src.params.iter().enumerate() {
                            if pname == "p1" {
                                params[slot] = Scalar::rational(0, 1);
                            }
                        }
                    }
                    // Only reductions that are themselves admissible instances
                    // over F_prime say anything about the family there.
                    let Ok(reduced_params) = params
                        .iter()
                        .map(|v| field.reduce(v.as_rational().expect("rational sample")))
                        .collect::<Result<Vec<_>>>()
                    else {
                        item.skipped += 1;
                        continue;
                    };
                    if src.check_domain(&lam_p, &reduced_params).is_err() {
                        item.skipped += 1;
                        continue;
                    }
                    let wq = src.instantiate(lambda, &params)?;
                    let w = match reduce_mod_p(&wq, prime) {
                        Ok(w) => w,
                        Err(Error::BadReduction(_)) => {
                            item.skipped += 1;
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    let shown = params.iter().map(|v| v.to_string()).collect();
                    checker.check(&pack(ctx.fp, &w.op)?, Some(&wq), "Q", shown, &mut item);
                }
                for (params, w) in src.sweep(&lam_p)? {
                    if !src.condition_holds(&params) {
                        continue;
                    }
                    let shown = params.iter().map(|v| v.to_string()).collect();
                    checker.check(&pack(ctx.fp, &w.op)?, None, &format!("F_{prime}"), shown, &mut item);
                }
                item.pass = item.checked > 0 && item.counterexamples.is_empty();
            }
        }
        items.push(item);
    }
    Ok(CorollaryReport {
        weight: lambda.to_string(),
        verification_prime: prime,
        samples,
        seed,
        pass: items.iter().all(|i| i.pass),
        items,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraReport {
    pub censuses: Vec<Census>,
    /// Each subalgebra is the image of its class representative under some
    /// (anti)automorphism.
    pub witnessed: Vec<bool>,
    pub pass: bool,
}

pub fn verify_subalgebras(primes: &[u64]) -> Result<SubalgebraReport> {
    let mut censuses = Vec::new();
    let mut witnessed = Vec::new();
    for &p in primes {
        for d in [2, 3] {
            censuses.push(census(p, d)?);
            witnessed.push(all_witnessed(p, d)?);
        }
    }
    Ok(SubalgebraReport {
        pass: censuses.iter().all(Census::passes) && witnessed.iter().all(|w| *w),
        censuses,
        witnessed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::expr::Expr;
    use crate::classify::enumerate::{enumerate_packed, Strategy};

    #[test]
    fn labels() {
        assert_eq!(element_label(&[1, -1, 0, 0]), "1-g");
        assert_eq!(element_label(&[0, 0, 1, 1]), "x+gx");
        assert_eq!(header_label(&header_of("ker2-xgx").unwrap()), "ker R = <x, gx>");
    }

    #[test]
    fn corrupted_family_is_reported() {
        let fp = Fp::new(3).unwrap();
        let ops = enumerate_packed(fp, 1, Strategy::Backtracking, 4).unwrap();
        let mut fams: Vec<RbFamily> =
            list_families(Scope::Theorems).into_iter().filter(|f| f.group == "ker2-xgx").cloned().collect();
        assert!(verify_group(fp, 1, &ops, "ker2-xgx", &fams).unwrap().pass);
        let entry = &mut fams[0].images[1][1];
        *entry = Expr::Neg(Box::new(entry.clone()));
        let report = verify_group(fp, 1, &ops, "ker2-xgx", &fams).unwrap();
        assert!(!report.pass);
        assert!(!report.extra.is_empty() || !report.missing.is_empty());
    }

    #[test]
    fn ma_h_is_reported_as_conditional() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let check = check_family(family("ma-h").unwrap(), &default_weights(), 20, &mut rng).unwrap();
        assert_eq!(check.status, "conditional: p1 = 0");
        assert!(check.valid > 0 && check.valid < check.checked);
    }

    #[test]
    fn duality_and_triviality_items_are_exact() {
        let report = verify_corollary(&Scalar::rational(1, 1), 5, 0, 3).unwrap();
        assert_eq!(report.items.len(), 7);
        assert!(report.items[0].pass && report.items[1].pass);
        assert!(report.items[2].pass, "{:?}", report.items[2].counterexamples);
        assert!(report.items[6].witnesses.iter().any(|w| w.origin == "F_3"));
    }

    #[test]
    fn corollary_needs_a_rational_nonzero_weight() {
        assert!(verify_corollary(&Scalar::residue(1, 3), 1, 0, 3).is_err());
        assert!(verify_corollary(&Scalar::rational(0, 1), 1, 0, 3).is_err());
        assert!(matches!(verify_corollary(&Scalar::rational(3, 1), 1, 0, 3), Err(Error::BadReduction(_))));
    }
}
