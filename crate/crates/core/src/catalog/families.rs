//! The family table. Each row lists `R(1), R(g), R(x), R(gx)` as coordinate
//! vectors over `(1, g, x, gx)`.

use super::Scope;

pub(crate) struct FamilySpec {
    pub id: &'static str,
    pub scope: Scope,
    pub group: &'static str,
    pub item: &'static str,
    pub images: [[&'static str; 4]; 4],
    pub extra_domain: &'static [&'static str],
    pub reducer: Option<ReducerSpec>,
    pub notes: &'static [&'static str],
    pub printed: Option<[[&'static str; 4]; 4]>,
}

/// `(ε, a, b, p, q)` of an automorphism whose conjugation sets the listed
/// parameters to zero.
pub(crate) struct ReducerSpec {
    pub eps: i8,
    pub a: &'static str,
    pub b: &'static str,
    pub p: &'static str,
    pub q: &'static str,
    pub zeroes: &'static [&'static str],
}

/// A conjugation carrying one family onto another at equal parameters.
pub(crate) struct LinkSpec {
    pub from: &'static str,
    pub to: &'static str,
    pub eps: i8,
    pub a: &'static str,
    pub b: &'static str,
    pub anti: bool,
}

const Z: [&str; 4] = ["0", "0", "0", "0"];
const MINUS_ONE: [&str; 4] = ["-λ", "0", "0", "0"];
const MINUS_G: [&str; 4] = ["0", "-λ", "0", "0"];
const MINUS_X: [&str; 4] = ["0", "0", "-λ", "0"];
const MINUS_GX: [&str; 4] = ["0", "0", "0", "-λ"];
const HALF_N: [&str; 4] = ["0", "0", "-λ/2", "-λ/2"];

macro_rules! fam {
    ($id:expr, $scope:ident, $group:expr, $item:expr, [$a:expr, $b:expr, $c:expr, $d:expr]
     $(, domain = $dom:expr)? $(, reducer = $red:expr)? $(, notes = $notes:expr)? $(, printed = $pr:expr)?) => {
        FamilySpec {
            id: $id,
            scope: Scope::$scope,
            group: $group,
            item: $item,
            images: [$a, $b, $c, $d],
            extra_domain: { let _d: &[&str] = &[]; $(let _d = $dom;)? _d },
            reducer: { let _r: Option<ReducerSpec> = None; $(let _r = Some($red);)? _r },
            notes: { let _n: &[&str] = &[]; $(let _n = $notes;)? _n },
            printed: { let _p: Option<[[&str; 4]; 4]> = None; $(let _p = Some($pr);)? _p },
        }
    };
}

const fn red(a: &'static str, b: &'static str, zeroes: &'static [&'static str]) -> ReducerSpec {
    ReducerSpec { eps: 1, a, b, p: "1", q: "0", zeroes }
}

const COMPLETED: &[&str] = &["completed: images of kernel vectors filled in as zero"];

pub(crate) const FAMILIES: &[FamilySpec] = &[
    // Ma's list
    fam!("ma-a", Ma, "ma", "a", [Z, Z, MINUS_X, MINUS_GX]),
    fam!("ma-b", Ma, "ma", "b", [MINUS_ONE, MINUS_G, Z, Z]),
    fam!("ma-c", Ma, "ma", "c", [MINUS_ONE, MINUS_G, MINUS_X, MINUS_GX]),
    fam!(
        "ma-d",
        Ma,
        "ma",
        "d",
        [
            Z,
            ["-p1", "p1", "-(λ + p1)*(λ + p1 + p2)/p3", "(λ + p1)*(λ + p2)/p3"],
            ["-p3", "p3", "-(2*λ + p1 + p2)", "λ + p2"],
            ["-p3", "p3", "-(λ + p1 + p2)", "p2"]
        ]
    ),
    fam!(
        "ma-e",
        Ma,
        "ma",
        "e",
        [
            MINUS_ONE,
            ["λ + p1", "p1", "-(λ + p1)*(λ + p1 + p2)/p3", "(λ + p1)*(λ + p2)/p3"],
            ["p3", "p3", "-(2*λ + p1 + p2)", "λ + p2"],
            ["p3", "p3", "-(λ + p1 + p2)", "p2"]
        ]
    ),
    fam!(
        "ma-f",
        Ma,
        "ma",
        "f",
        [
            MINUS_ONE,
            ["λ", "0", "p1", "p1*p2/(λ + p2)"],
            ["0", "0", "-(λ + p2)", "-p2"],
            ["0", "0", "λ + p2", "p2"]
        ],
        notes = &["erratum: the printed R(x) = -(λ + p1)x - p2 gx satisfies the identity only when p1 = p2; stored with -(λ + p2)x"],
        printed = [
            MINUS_ONE,
            ["λ", "0", "p1", "p1*p2/(λ + p2)"],
            ["0", "0", "-(λ + p1)", "-p2"],
            ["0", "0", "λ + p2", "p2"]
        ]
    ),
    fam!(
        "ma-g",
        Ma,
        "ma",
        "g",
        [
            MINUS_ONE,
            ["λ", "0", "λ*(λ + p1)/p2", "λ*(λ + p1)/p2"],
            ["-p2", "-p2", "-(2*λ + p1)", "-(λ + p1)"],
            ["p2", "p2", "λ + p1", "p1"]
        ]
    ),
    fam!(
        "ma-h",
        Ma,
        "ma",
        "h",
        [["λ/2", "-λ/2", "p1", "p2"], ["λ/2", "-λ/2", "-p2", "p1"], HALF_N, HALF_N],
        notes = &["conditional: p1 = 0"]
    ),
    // ker R = <1-g, x, gx>
    fam!("ker3-1g.1", Theorems, "ker3-1g", "1", [MINUS_ONE, MINUS_ONE, Z, Z], notes = &["completed: only R(g) is listed; R(1) = R(g) since 1-g lies in the kernel"]),
    fam!(
        "ker3-1g.2",
        Theorems,
        "ker3-1g",
        "2",
        [["-λ/2", "-λ/2", "gamma_g", "delta_g"], ["-λ/2", "-λ/2", "gamma_g", "delta_g"], Z, Z],
        reducer = red("-2*gamma_g/λ", "-2*delta_g/λ", &["gamma_g", "delta_g"]),
        notes = COMPLETED
    ),
    fam!(
        "ker3-1g.3",
        Theorems,
        "ker3-1g",
        "3",
        [["λ/2", "-λ/2", "gamma_g", "delta_g"], ["λ/2", "-λ/2", "gamma_g", "delta_g"], Z, Z],
        reducer = red("-2*gamma_g/λ", "-2*delta_g/λ", &["gamma_g", "delta_g"]),
        notes = COMPLETED
    ),
    // ker R = <1, x, gx>
    fam!(
        "ker3-1xgx.1a",
        Theorems,
        "ker3-1xgx",
        "1a",
        [Z, ["-λ", "-λ", "gamma_g", "delta_g"], Z, Z],
        reducer = red("-gamma_g/λ", "-delta_g/λ", &["gamma_g", "delta_g"]),
        notes = COMPLETED
    ),
    fam!("ker3-1xgx.1b", Theorems, "ker3-1xgx", "1b", [Z, ["λ", "-λ", "gamma_g", "delta_g"], Z, Z], notes = COMPLETED),
    // ker R = <1, g, x-gx>
    fam!(
        "ker3-1g-xgx.1a",
        Theorems,
        "ker3-1g-xgx",
        "1a",
        [Z, Z, ["alpha_gx", "-alpha_gx", "gamma_gx", "-(λ + gamma_gx)"], ["alpha_gx", "-alpha_gx", "gamma_gx", "-(λ + gamma_gx)"]],
        notes = COMPLETED
    ),
    fam!(
        "ker3-1g-xgx.1b",
        Theorems,
        "ker3-1g-xgx",
        "1b",
        [Z, Z, ["alpha_gx", "alpha_gx", "gamma_gx", "-(λ + gamma_gx)"], ["alpha_gx", "alpha_gx", "gamma_gx", "-(λ + gamma_gx)"]],
        notes = COMPLETED
    ),
    // ker R = <1, g>
    fam!("ker2-1g.1a", Theorems, "ker2-1g", "1a", [Z, Z, ["alpha_x", "alpha_x", "-λ", "0"], ["alpha_x", "alpha_x", "0", "-λ"]], notes = COMPLETED),
    fam!("ker2-1g.1b", Theorems, "ker2-1g", "1b", [Z, Z, ["alpha_x", "-alpha_x", "-λ", "0"], ["-alpha_x", "alpha_x", "0", "-λ"]], notes = COMPLETED),
    fam!("ker2-1g.1c", Theorems, "ker2-1g", "1c", [Z, Z, ["alpha_x", "-alpha_x", "-λ", "0"], ["alpha_x", "-alpha_x", "0", "-λ"]], notes = COMPLETED),
    fam!("ker2-1g.1d", Theorems, "ker2-1g", "1d", [Z, Z, ["alpha_x", "alpha_x", "-λ", "0"], ["-alpha_x", "-alpha_x", "0", "-λ"]], notes = COMPLETED),
    // ker R = <1, x>
    fam!(
        "ker2-1x.1a",
        Theorems,
        "ker2-1x",
        "1a",
        [Z, ["-λ", "-λ", "gamma_g", "0"], Z, ["0", "0", "λ", "-λ"]],
        reducer = red("-gamma_g/λ", "0", &["gamma_g"]),
        notes = COMPLETED
    ),
    fam!("ker2-1x.1b", Theorems, "ker2-1x", "1b", [Z, ["λ", "-λ", "gamma_g", "0"], Z, ["0", "0", "-λ", "-λ"]], notes = COMPLETED),
    fam!("ker2-1x.1c", Theorems, "ker2-1x", "1c", [Z, ["-λ", "-λ", "gamma_g", "0"], Z, ["0", "0", "-λ", "-λ"]], notes = COMPLETED),
    fam!("ker2-1x.1d", Theorems, "ker2-1x", "1d", [Z, ["λ", "-λ", "gamma_g", "0"], Z, ["0", "0", "λ", "-λ"]], notes = COMPLETED),
    // ker R = <1, x-gx>
    fam!(
        "ker2-1xmgx.1a",
        Theorems,
        "ker2-1xmgx",
        "1a",
        [Z, ["-λ", "-λ", "gamma_g", "-gamma_g"], HALF_N, HALF_N],
        reducer = red("-2*gamma_g/λ", "0", &["gamma_g"]),
        notes = COMPLETED
    ),
    fam!("ker2-1xmgx.1b", Theorems, "ker2-1xmgx", "1b", [Z, ["λ", "-λ", "gamma_g", "-gamma_g"], HALF_N, HALF_N], notes = COMPLETED),
    // ker R = <x, gx>
    fam!(
        "ker2-xgx.1",
        Theorems,
        "ker2-xgx",
        "1",
        [MINUS_ONE, ["0", "-λ", "gamma_gx", "delta_gx"], Z, Z],
        reducer = red("-gamma_gx/λ", "-delta_gx/λ", &["gamma_gx", "delta_gx"]),
        notes = COMPLETED
    ),
    fam!(
        "ker2-xgx.2a",
        Theorems,
        "ker2-xgx",
        "2a",
        [["-3*λ/2", "-λ/2", "gamma_gx", "delta_gx"], ["λ/2", "-λ/2", "gamma_gx", "delta_gx"], Z, Z],
        reducer = red("-2*gamma_gx/λ", "-2*delta_gx/λ", &["gamma_gx", "delta_gx"]),
        notes = COMPLETED
    ),
    fam!(
        "ker2-xgx.2b",
        Theorems,
        "ker2-xgx",
        "2b",
        [["-3*λ/2", "λ/2", "-gamma_gx", "-delta_gx"], ["-λ/2", "-λ/2", "gamma_gx", "delta_gx"], Z, Z],
        notes = COMPLETED
    ),
    // ker R = <1-g, x-gx>
    fam!(
        "ker2-1mg-xmgx.1",
        Theorems,
        "ker2-1mg-xmgx",
        "1",
        [["-λ/2", "-λ/2", "gamma_g", "-gamma_g"], ["-λ/2", "-λ/2", "gamma_g", "-gamma_g"], HALF_N, HALF_N],
        reducer = red("-2*gamma_g/λ", "2*gamma_g/λ", &["gamma_g"]),
        notes = COMPLETED
    ),
    fam!(
        "ker2-1mg-xmgx.2",
        Theorems,
        "ker2-1mg-xmgx",
        "2",
        [["λ/2", "-λ/2", "gamma_g", "-gamma_g"], ["λ/2", "-λ/2", "gamma_g", "-gamma_g"], HALF_N, HALF_N],
        reducer = red("-2*gamma_g/λ", "2*gamma_g/λ", &["gamma_g"]),
        notes = COMPLETED
    ),
    fam!(
        "ker2-1mg-xmgx.3",
        Theorems,
        "ker2-1mg-xmgx",
        "3",
        [
            MINUS_ONE,
            MINUS_ONE,
            ["-beta_gx", "beta_gx", "gamma_gx", "-(λ + gamma_gx)"],
            ["-beta_gx", "beta_gx", "gamma_gx", "-(λ + gamma_gx)"]
        ],
        notes = COMPLETED
    ),
    // im R = <1-g, x, gx>
    fam!(
        "ker1-im1mg.1",
        Theorems,
        "ker1-im1mg",
        "1",
        [["-λ/2", "λ/2", "gamma_g", "delta_g"], ["λ/2", "-λ/2", "gamma_g", "delta_g"], MINUS_X, MINUS_GX],
        reducer = red("2*gamma_g/λ", "2*delta_g/λ", &["gamma_g", "delta_g"])
    ),
    fam!(
        "ker1-im1mg.2",
        Theorems,
        "ker1-im1mg",
        "2",
        [["λ/2", "-λ/2", "gamma_g", "delta_g"], ["λ/2", "-λ/2", "-gamma_g", "-delta_g"], MINUS_X, MINUS_GX],
        reducer = red("-2*gamma_g/λ", "-2*delta_g/λ", &["gamma_g", "delta_g"])
    ),
    fam!("ker1-im1mg.3", Theorems, "ker1-im1mg", "3", [Z, ["λ", "-λ", "0", "0"], MINUS_X, MINUS_GX]),
    // im R = <1, x, gx>
    fam!(
        "ker1-im1xgx.1a",
        Theorems,
        "ker1-im1xgx",
        "1a",
        [MINUS_ONE, ["-λ", "0", "gamma_g", "delta_g"], MINUS_X, MINUS_GX],
        reducer = red("gamma_g/λ", "delta_g/λ", &["gamma_g", "delta_g"])
    ),
    fam!("ker1-im1xgx.1b", Theorems, "ker1-im1xgx", "1b", [MINUS_ONE, ["λ", "0", "gamma_g", "delta_g"], MINUS_X, MINUS_GX]),
    // im R = <1, g, x-gx>
    fam!(
        "ker1-im1g.1a",
        Theorems,
        "ker1-im1g",
        "1a",
        [
            MINUS_ONE,
            MINUS_G,
            ["-beta_gx", "beta_gx", "gamma_gx", "-gamma_gx"],
            ["-beta_gx", "beta_gx", "gamma_gx + λ", "-(gamma_gx + λ)"]
        ]
    ),
    fam!(
        "ker1-im1g.1b",
        Theorems,
        "ker1-im1g",
        "1b",
        [
            MINUS_ONE,
            MINUS_G,
            ["beta_gx", "beta_gx", "gamma_gx", "-gamma_gx"],
            ["beta_gx", "beta_gx", "gamma_gx + λ", "-(gamma_gx + λ)"]
        ]
    ),
    fam!(
        "ker1-im1g.2a",
        Theorems,
        "ker1-im1g",
        "2a",
        [["-3*λ/2", "-λ/2", "gamma_g", "-gamma_g"], ["λ/2", "-λ/2", "-gamma_g", "gamma_g"], ["0", "0", "-λ/2", "λ/2"], ["0", "0", "λ/2", "-λ/2"]],
        reducer = red("-2*gamma_g/λ", "2*gamma_g/λ", &["gamma_g"])
    ),
    fam!(
        "ker1-im1g.2b",
        Theorems,
        "ker1-im1g",
        "2b",
        [["-3*λ/2", "λ/2", "gamma_g", "-gamma_g"], ["-λ/2", "-λ/2", "gamma_g", "-gamma_g"], ["0", "0", "-λ/2", "λ/2"], ["0", "0", "λ/2", "-λ/2"]]
    ),
    // ker R = 0
    fam!("ker0.1", Theorems, "ker0", "1", [MINUS_ONE, MINUS_G, MINUS_X, MINUS_GX]),
    fam!(
        "ker0.2a",
        Theorems,
        "ker0",
        "2a",
        [["-3*λ/2", "-λ/2", "gamma_g", "delta_g"], ["λ/2", "-λ/2", "-gamma_g", "-delta_g"], MINUS_X, MINUS_GX],
        reducer = red("-2*gamma_g/λ", "-2*delta_g/λ", &["gamma_g", "delta_g"])
    ),
    fam!(
        "ker0.2b",
        Theorems,
        "ker0",
        "2b",
        [["-3*λ/2", "λ/2", "gamma_g", "delta_g"], ["-λ/2", "-λ/2", "gamma_g", "delta_g"], MINUS_X, MINUS_GX]
    ),
    // the final list
    fam!(
        "final-1",
        Final,
        "final",
        "1",
        [Z, Z, ["alpha_x", "alpha_x", "-λ", "0"], ["alpha_x", "alpha_x", "0", "-λ"]],
        domain = &["alpha_x"]
    ),
    fam!("final-2", Final, "final", "2", [Z, ["-λ", "-λ", "0", "0"], Z, ["0", "0", "-λ", "-λ"]]),
    fam!("final-3", Final, "final", "3", [Z, ["-λ", "-λ", "0", "0"], HALF_N, HALF_N]),
    fam!("final-4", Final, "final", "4", [MINUS_ONE, MINUS_G, Z, Z]),
    fam!("final-5", Final, "final", "5", [["-3*λ/2", "-λ/2", "0", "0"], ["λ/2", "-λ/2", "0", "0"], Z, Z]),
    fam!("final-6", Final, "final", "6", [["-λ/2", "-λ/2", "0", "0"], ["-λ/2", "-λ/2", "0", "0"], HALF_N, HALF_N]),
    fam!("final-7", Final, "final", "7", [["λ/2", "-λ/2", "0", "0"], ["λ/2", "-λ/2", "0", "0"], HALF_N, HALF_N]),
    fam!("final-8", Final, "final", "8", [MINUS_ONE, MINUS_ONE, Z, Z]),
    fam!("final-9", Final, "final", "9", [["-λ/2", "-λ/2", "0", "0"], ["-λ/2", "-λ/2", "0", "0"], Z, Z]),
    fam!("final-10", Final, "final", "10", [["λ/2", "-λ/2", "0", "0"], ["λ/2", "-λ/2", "0", "0"], Z, Z]),
    fam!("final-11", Final, "final", "11", [Z, ["-λ", "-λ", "0", "0"], Z, Z]),
    fam!(
        "final-12",
        Final,
        "final",
        "12",
        [MINUS_ONE, MINUS_ONE, ["alpha_gx", "-alpha_gx", "-λ", "0"], ["alpha_gx", "-alpha_gx", "0", "-λ"]],
        domain = &["alpha_gx"]
    ),
    fam!("final-13", Final, "final", "13", [MINUS_ONE, MINUS_G, HALF_N, HALF_N]),
    fam!("final-14", Final, "final", "14", [MINUS_ONE, MINUS_G, Z, ["0", "0", "λ", "-λ"]]),
];

pub(crate) const LINKS: &[LinkSpec] = &[
    LinkSpec { from: "ker2-1g.1a", to: "ker2-1g.1b", eps: -1, a: "0", b: "0", anti: false },
    LinkSpec { from: "ker2-1g.1c", to: "ker2-1g.1d", eps: -1, a: "0", b: "0", anti: false },
    LinkSpec { from: "ker2-1g.1a", to: "ker2-1g.1c", eps: -1, a: "0", b: "0", anti: true },
    LinkSpec { from: "ker3-1xgx.1a", to: "ker3-1xgx.1b", eps: -1, a: "2*gamma_g/λ", b: "0", anti: false },
];

/// Kernel (or, for the `ker1-*` groups, image) named in each theorem header.
pub(crate) const HEADERS: &[(&str, bool, &[[i64; 4]])] = &[
    ("ker3-1g", true, &[[1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ("ker3-1xgx", true, &[[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ("ker3-1g-xgx", true, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1]]),
    ("ker2-1g", true, &[[1, 0, 0, 0], [0, 1, 0, 0]]),
    ("ker2-1x", true, &[[1, 0, 0, 0], [0, 0, 1, 0]]),
    ("ker2-1xmgx", true, &[[1, 0, 0, 0], [0, 0, 1, -1]]),
    ("ker2-xgx", true, &[[0, 0, 1, 0], [0, 0, 0, 1]]),
    ("ker2-1mg-xmgx", true, &[[1, -1, 0, 0], [0, 0, 1, -1]]),
    ("ker1-im1mg", false, &[[1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ("ker1-im1xgx", false, &[[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ("ker1-im1g", false, &[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1]]),
    ("ker0", true, &[]),
];
