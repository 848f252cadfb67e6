//! Enumeration of all RB operators on `H4` over `F_p`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::packed::{pack_weight, unpack_weighted, Fp, Mat, Vec4, PAIRS};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::rb::WeightedOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Backtracking,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "backtracking" => Ok(Strategy::Backtracking),
            _ => Err(Error::Parse(format!("unknown strategy `{s}`"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Backtracking => "backtracking",
        })
    }
}

/// All RB operators of weight `lam` over `F_p`, sorted row-major
/// lexicographically.
pub fn enumerate_packed(fp: Fp, lam: u32, strategy: Strategy, shards: usize) -> Result<Vec<Mat>> {
    if lam % fp.p == 0 {
        return Err(Error::WeightMismatch("classification needs a nonzero weight".into()));
    }
    let shards = shards.max(1);
    match strategy {
        Strategy::Exhaustive if fp.p >= 5 => Err(Error::Infeasible(format!(
            "exhaustive scan over F_{} has {}^16 candidates; use backtracking",
            fp.p, fp.p
        ))),
        Strategy::Exhaustive => Ok(exhaustive(fp, lam, shards)),
        Strategy::Backtracking => Ok(backtracking(fp, lam, shards)),
    }
}

pub fn enumerate_rb(p: u64, weight: &Scalar, strategy: Strategy, shards: usize) -> Result<Vec<WeightedOperator>> {
    let fp = Fp::new(p)?;
    let lam = pack_weight(fp, weight)?;
    Ok(enumerate_packed(fp, lam, strategy, shards)?.iter().map(|m| unpack_weighted(fp, m, lam)).collect())
}

fn decode(fp: Fp, mut index: u64) -> Mat {
    let mut m = [0u8; 16];
    for k in (0..16).rev() {
        m[k] = (index % fp.p as u64) as u8;
        index /= fp.p as u64;
    }
    m
}

fn scan(fp: Fp, lam: u32, start: u64, len: u64) -> Vec<Mat> {
    let mut out = Vec::new();
    let mut m = decode(fp, start);
    let top = fp.p as u8 - 1;
    for _ in 0..len {
        if fp.is_rb(&m, lam) {
            out.push(m);
        }
        for k in (0..16).rev() {
            if m[k] == top {
                m[k] = 0;
            } else {
                m[k] += 1;
                break;
            }
        }
    }
    out
}

/// Every one of the `p^16` matrices, split into contiguous index ranges.
fn exhaustive(fp: Fp, lam: u32, shards: usize) -> Vec<Mat> {
    let total = (fp.p as u64).pow(16);
    let step = total.div_ceil(shards as u64);
    let ranges: Vec<(u64, u64)> =
        (0..shards as u64).map(|s| (s * step, step.min(total.saturating_sub(s * step)))).collect();
    if shards == 1 {
        return scan(fp, lam, 0, total);
    }
    let chunks: Vec<Vec<Mat>> = std::thread::scope(|sc| {
        let handles: Vec<_> = ranges.iter().map(|&(a, n)| sc.spawn(move || scan(fp, lam, a, n))).collect();
        handles.into_iter().map(|h| h.join().expect("scan shard panicked")).collect()
    });
    chunks.concat()
}

/// Row-reduces `rows` (unknown coefficients then four right-hand sides) in
/// place over the first `n` columns. Returns the pivot columns.
fn rref(fp: Fp, rows: &mut [[u32; 8]], n: usize) -> Vec<usize> {
    let p = fp.p;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = fp.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                let pivot = rows[r];
                for (v, pv) in rows[k].iter_mut().zip(pivot) {
                    *v = (*v + p * p - f * pv % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Applies the linear consequences of the RB identity on pairs of fixed
/// columns. Columns forced by them become fixed; returns false on a
/// contradiction.
fn propagate(fp: Fp, lam: u32, m: &mut Mat, fixed: &mut [bool; 4]) -> bool {
    loop {
        let unknown: Vec<usize> = (0..4).filter(|&j| !fixed[j]).collect();
        let n = unknown.len();
        let mut rows: Vec<[u32; 8]> = Vec::new();
        for &(a, b) in PAIRS.iter() {
            if !(fixed[a] && fixed[b]) {
                continue;
            }
            let v = fp.rb_argument(m, lam, a, b);
            let lhs = fp.mul(&Fp::column(m, a), &Fp::column(m, b));
            let mut row = [0u32; 8];
            for (slot, &j) in unknown.iter().enumerate() {
                row[slot] = v[j] as u32;
            }
            for k in 0..4 {
                let known: u32 = (0..4).filter(|&j| fixed[j]).map(|j| v[j] as u32 * m[4 * k + j] as u32).sum();
                row[n + k] = (lhs[k] as u32 + fp.p * fp.p * 4 - known % (fp.p * fp.p * 4)) % fp.p;
            }
            rows.push(row);
        }
        if n == 0 {
            return rows.iter().all(|r| r[..4].iter().all(|&v| v == 0));
        }
        let pivots = rref(fp, &mut rows, n);
        for row in rows.iter().skip(pivots.len()) {
            if row[n..n + 4].iter().any(|&v| v != 0) {
                return false;
            }
        }
        let mut progress = false;
        for (r, &c) in pivots.iter().enumerate() {
            if (0..n).all(|c2| c2 == c || rows[r][c2] == 0) {
                let col: Vec4 = [0, 1, 2, 3].map(|k| rows[r][n + k] as u8);
                Fp::set_column(m, unknown[c], &col);
                fixed[unknown[c]] = true;
                progress = true;
            }
        }
        if !progress {
            return true;
        }
    }
}

fn search(fp: Fp, lam: u32, mut m: Mat, mut fixed: [bool; 4], out: &mut Vec<Mat>) {
    if !propagate(fp, lam, &mut m, &mut fixed) {
        return;
    }
    let Some(j) = (0..4).find(|&j| !fixed[j]) else {
        if fp.is_rb(&m, lam) {
            out.push(m);
        }
        return;
    };
    fixed[j] = true;
    for code in 0..fp.p.pow(4) {
        Fp::set_column(&mut m, j, &column_from_code(fp, code));
        search(fp, lam, m, fixed, out);
    }
}

fn column_from_code(fp: Fp, mut code: u32) -> Vec4 {
    let mut c = [0u8; 4];
    for slot in c.iter_mut() {
        *slot = (code % fp.p) as u8;
        code /= fp.p;
    }
    c
}

/// Column-by-column search. Work units are the values of `R(1)`, handed out
/// to `shards` workers.
fn backtracking(fp: Fp, lam: u32, shards: usize) -> Vec<Mat> {
    let units = fp.p.pow(4) as usize;
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Vec<Mat>>> = Mutex::new(vec![Vec::new(); units]);
    let work = || loop {
        let u = next.fetch_add(1, Ordering::Relaxed);
        if u >= units {
            break;
        }
        let mut m = [0u8; 16];
        Fp::set_column(&mut m, 0, &column_from_code(fp, u as u32));
        let mut found = Vec::new();
        search(fp, lam, m, [true, false, false, false], &mut found);
        results.lock().expect("result lock")[u] = found;
    };
    if shards == 1 {
        work();
    } else {
        std::thread::scope(|sc| {
            for _ in 0..shards {
                sc.spawn(work);
            }
        });
    }
    let mut all = results.into_inner().expect("result lock").concat();
    all.sort_unstable();
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backtracking_finds_the_trivial_operators() {
        let fp = Fp::new(3).unwrap();
        let ops = enumerate_packed(fp, 1, Strategy::Backtracking, 2).unwrap();
        assert!(ops.contains(&[0; 16]));
        assert!(ops.contains(&fp.dual(&[0; 16], 1)));
        assert!(ops.windows(2).all(|w| w[0] < w[1]));
        assert!(ops.iter().all(|m| fp.is_rb_full(m, 1)));
    }

    #[test]
    fn shard_count_does_not_change_backtracking_output() {
        let fp = Fp::new(3).unwrap();
        let one = enumerate_packed(fp, 2, Strategy::Backtracking, 1).unwrap();
        let many = enumerate_packed(fp, 2, Strategy::Backtracking, 5).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn guards() {
        let f5 = Fp::new(5).unwrap();
        assert!(matches!(enumerate_packed(f5, 1, Strategy::Exhaustive, 1), Err(Error::Infeasible(_))));
        let f3 = Fp::new(3).unwrap();
        assert!(matches!(enumerate_packed(f3, 0, Strategy::Backtracking, 1), Err(Error::WeightMismatch(_))));
        assert!(matches!(
            enumerate_rb(2, &Scalar::residue(1, 3), Strategy::Backtracking, 1),
            Err(Error::InvalidModulus(2))
        ));
        assert!("greedy".parse::<Strategy>().is_err());
    }

    #[test]
    fn decode_inverts_lex_index() {
        let fp = Fp::new(3).unwrap();
        for i in [0u64, 1, 2, 3, 12345, 3u64.pow(16) - 1] {
            assert_eq!(fp.lex_index(&decode(fp, i)) as u64, i);
        }
    }

    #[test]
    fn scan_of_a_small_range_matches_direct_filter() {
        let fp = Fp::new(3).unwrap();
        let got = scan(fp, 1, 0, 3u64.pow(9));
        let want: Vec<Mat> = (0..3u64.pow(9)).map(|i| decode(fp, i)).filter(|m| fp.is_rb(m, 1)).collect();
        assert_eq!(got, want);
        assert!(got.contains(&[0; 16]));
    }
}
