//! Orbits of RB operators under conjugation by (anti)automorphisms and
//! dualization, and their matching against the final list of families.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::packed::{pack, pack_maps, pack_weight, unpack, unpack_weighted, Fp, Mat, PackedMap};
use crate::autgroup::{enumerate_maps, AutoMap, AutoMapJson};
use crate::catalog::{list_families, Scope};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::rb::{OperatorJson, WeightedOperator};

/// The (anti)automorphism group over `F_p` with a fixed weight, packed for
/// fast conjugation.
pub struct OrbitContext {
    pub fp: Fp,
    pub lam: u32,
    pub maps: Vec<AutoMap>,
    pub packed: Vec<PackedMap>,
}

impl OrbitContext {
    pub fn new(p: u64, lam: u32) -> Result<OrbitContext> {
        let fp = Fp::new(p)?;
        let maps = enumerate_maps(p, true)?;
        let packed = pack_maps(fp, &maps)?;
        Ok(OrbitContext { fp, lam: lam % fp.p, maps, packed })
    }

    pub fn weight(&self) -> Scalar {
        Scalar::residue(self.lam as i64, self.fp.p as u64)
    }

    /// Every `φ⁻¹Sφ` with `S ∈ {m, dual m}`.
    pub fn orbit(&self, m: &Mat) -> BTreeSet<Mat> {
        let d = self.fp.dual(m, self.lam);
        let mut out = BTreeSet::new();
        for phi in &self.packed {
            out.insert(phi.conjugate(self.fp, m));
            out.insert(phi.conjugate(self.fp, &d));
        }
        out
    }

    pub fn canonical(&self, m: &Mat) -> Mat {
        let d = self.fp.dual(m, self.lam);
        let mut best = *m;
        for phi in &self.packed {
            best = best.min(phi.conjugate(self.fp, m)).min(phi.conjugate(self.fp, &d));
        }
        best
    }

    /// A map `φ` and dual flag with `φ⁻¹Sφ = to`, where `S` is `from` or its
    /// dual accordingly.
    pub fn witness(&self, from: &Mat, to: &Mat) -> Option<(&AutoMap, bool)> {
        let d = self.fp.dual(from, self.lam);
        for (phi, map) in self.packed.iter().zip(&self.maps) {
            if phi.conjugate(self.fp, from) == *to {
                return Some((map, false));
            }
            if phi.conjugate(self.fp, &d) == *to {
                return Some((map, true));
            }
        }
        None
    }
}

/// Orbit canonical form of an operator over `F_p`.
pub fn canonical_form(w: &WeightedOperator) -> Result<WeightedOperator> {
    let p = w.field().modulus().ok_or_else(|| Error::InvalidParams("canonical forms need a finite field".into()))?;
    let fp = Fp::new(p)?;
    let lam = pack_weight(fp, &w.weight)?;
    let ctx = OrbitContext::new(p, lam)?;
    Ok(unpack_weighted(fp, &ctx.canonical(&pack(fp, &w.op)?), lam))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub canonical: Mat,
    /// Members present in the partitioned input, sorted.
    pub members: Vec<Mat>,
}

/// Groups `ops` by canonical form; orbits come out sorted by it.
pub fn partition_orbits(ctx: &OrbitContext, ops: &[Mat]) -> Vec<Orbit> {
    let present: BTreeSet<Mat> = ops.iter().copied().collect();
    let mut seen: BTreeSet<Mat> = BTreeSet::new();
    let mut orbits = Vec::new();
    for m in &present {
        if seen.contains(m) {
            continue;
        }
        let full = ctx.orbit(m);
        let members: Vec<Mat> = full.iter().filter(|x| present.contains(*x)).copied().collect();
        seen.extend(members.iter().copied());
        orbits.push(Orbit { canonical: *full.first().expect("orbit contains its seed"), members });
    }
    orbits.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    orbits
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub family: String,
    pub params: Vec<String>,
    /// `φ` with `φ⁻¹Sφ` equal to the canonical operator.
    pub map: AutoMapJson,
    /// Whether `S` is the dual of the family instance.
    pub dual: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub canonical: OperatorJson,
    pub size: usize,
    pub kernel_dim: usize,
    pub matched_families: Vec<String>,
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub orbit: usize,
    pub families: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Findings {
    /// Orbits reached by more than one family.
    pub collisions: Vec<Collision>,
    /// Number of distinct orbits each family's sweep reaches.
    pub multiplicity: BTreeMap<String, usize>,
    /// Family instances whose orbit is absent from the enumeration.
    pub stray_instances: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub field_p: u64,
    pub weight: String,
    pub total_rb_count: usize,
    pub trivial_count: usize,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitEntry>,
    pub unmatched: Vec<OperatorJson>,
    pub findings: Findings,
}

impl OrbitReport {
    /// Unmatched is empty and every family instance lands inside the
    /// enumeration.
    pub fn complete(&self) -> bool {
        self.unmatched.is_empty() && self.findings.stray_instances.is_empty()
    }
}

/// Orbit report with matching left empty.
pub fn orbit_report(ctx: &OrbitContext, ops: &[Mat], orbits: &[Orbit]) -> OrbitReport {
    let zero = [0u8; 16];
    let minus = ctx.fp.dual(&zero, ctx.lam);
    let json = |m: &Mat| unpack_weighted(ctx.fp, m, ctx.lam).to_json();
    OrbitReport {
        field_p: ctx.fp.p as u64,
        weight: ctx.weight().to_string(),
        total_rb_count: ops.len(),
        trivial_count: ops.iter().filter(|m| **m == zero || **m == minus).count(),
        orbit_count: orbits.len(),
        orbits: orbits
            .iter()
            .map(|o| OrbitEntry {
                canonical: json(&o.canonical),
                size: o.members.len(),
                kernel_dim: 4 - unpack(ctx.fp, &o.canonical).rank(),
                matched_families: Vec::new(),
                witness: None,
            })
            .collect(),
        unmatched: Vec::new(),
        findings: Findings::default(),
    }
}

/// Sweeps every family of `scope` over all admissible parameters in `F_p`
/// and records which orbits they reach.
pub fn match_catalog(ctx: &OrbitContext, orbits: &[Orbit], report: &mut OrbitReport, scope: Scope) -> Result<()> {
    let index: HashMap<Mat, usize> = orbits.iter().enumerate().map(|(i, o)| (o.canonical, i)).collect();
    let lambda = ctx.weight();
    if let Some(&i) = index.get(&ctx.canonical(&[0; 16])) {
        report.orbits[i].matched_families.push("trivial".into());
    }
    for fam in list_families(scope) {
        let mut reached = BTreeSet::new();
        for (params, w) in fam.sweep(&lambda)? {
            let m = pack(ctx.fp, &w.op)?;
            let c = ctx.canonical(&m);
            let Some(&i) = index.get(&c) else {
                let vals: Vec<String> = params.iter().map(|v| v.to_string()).collect();
                report.findings.stray_instances.push(format!("{}({})", fam.id, vals.join(", ")));
                continue;
            };
            reached.insert(i);
            let entry = &mut report.orbits[i];
            if !entry.matched_families.contains(&fam.id) {
                entry.matched_families.push(fam.id.clone());
            }
            if entry.witness.is_none() {
                let (map, dual) = ctx.witness(&m, &c).expect("canonical form lies in the orbit");
                entry.witness = Some(WitnessJson {
                    family: fam.id.clone(),
                    params: params.iter().map(|v| v.to_string()).collect(),
                    map: map.to_json(),
                    dual,
                });
            }
        }
        report.findings.multiplicity.insert(fam.id.clone(), reached.len());
    }
    report.unmatched =
        report.orbits.iter().filter(|o| o.matched_families.is_empty()).map(|o| o.canonical.clone()).collect();
    report.findings.collisions = report
        .orbits
        .iter()
        .enumerate()
        .filter(|(_, o)| o.matched_families.iter().filter(|f| *f != "trivial").count() > 1)
        .map(|(i, o)| Collision { orbit: i, families: o.matched_families.clone() })
        .collect();
    Ok(())
}

/// Partition plus final-list matching in one call.
pub fn classify(ctx: &OrbitContext, ops: &[Mat]) -> Result<OrbitReport> {
    let orbits = partition_orbits(ctx, ops);
    let mut report = orbit_report(ctx, ops, &orbits);
    match_catalog(ctx, &orbits, &mut report, Scope::Final)?;
    Ok(report)
}
