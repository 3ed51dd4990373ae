//! The atypical block realized by representations of the zigzag quiver of
//! type A∞, modeled as a weight-graded algebra: `a` raises the vertex by one,
//! `b` lowers it, and `a² = b² = 0`, `ab = ba`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclotomic::{rat_int, Rat};
use crate::ext_engine::{
    self, ext1, ext_from_resolution, extend, hom_dim, is_indecomposable, is_isomorphic, minimal_resolution,
    radical_filtration, AlgebraPresentation, EngineError, LoewyLayer, ModuleRep, ProjectiveCover,
    ProjectiveCovers, SimpleInventory, Term,
};
use crate::linalg::Matrix;

/// Width of the zero padding at each end of a window.
pub const PAD: i64 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("margin violation: {0}")]
    Margin(String),
    #[error("cannot parse module name {0:?}")]
    Parse(String),
    #[error("module is decomposable")]
    Decomposable,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    pub fn grown(&self, by: i64) -> Self {
        Window { lo: self.lo - by, hi: self.hi + by }
    }

    /// First and last vertex outside the padding.
    pub fn usable(&self) -> (i64, i64) {
        (self.lo + PAD, self.hi - PAD)
    }

    /// Distance from a support `[a, b]` to the window edges.
    pub fn margin(&self, support: (i64, i64)) -> i64 {
        (support.0 - self.lo).min(self.hi - support.1)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = ZigzagError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once("..").ok_or_else(|| ZigzagError::Parse(s.to_string()))?;
        let lo = a.trim().parse().map_err(|_| ZigzagError::Parse(s.to_string()))?;
        let hi = b.trim().parse().map_err(|_| ZigzagError::Parse(s.to_string()))?;
        if lo > hi {
            return Err(ZigzagError::Parse(s.to_string()));
        }
        Ok(Window { lo, hi })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZigzagName {
    L(i64),
    Eplus(i64),
    Eminus(i64),
    P(i64),
    Lam(i64, i64),
    V(i64, i64),
}

impl ZigzagName {
    /// Vertices carrying a nonzero space, `None` for the zero module.
    pub fn support(&self) -> Option<(i64, i64)> {
        match *self {
            ZigzagName::L(n) => Some((n, n)),
            ZigzagName::Eplus(n) => Some((n, n + 1)),
            ZigzagName::Eminus(n) => Some((n - 1, n)),
            ZigzagName::P(n) => Some((n - 1, n + 1)),
            ZigzagName::Lam(n, m) | ZigzagName::V(n, m) => (m >= 0).then_some((n, n + m)),
        }
    }

    /// Rewrites the low members of the string families by their usual names.
    pub fn canonical(self) -> Self {
        match self {
            ZigzagName::Lam(n, 0) | ZigzagName::V(n, 0) => ZigzagName::L(n),
            ZigzagName::Lam(n, 1) => ZigzagName::Eplus(n),
            ZigzagName::V(n, 1) => ZigzagName::Eminus(n + 1),
            other => other,
        }
    }

    /// Composition length.
    pub fn length(&self) -> usize {
        match *self {
            ZigzagName::L(_) => 1,
            ZigzagName::Eplus(_) | ZigzagName::Eminus(_) => 2,
            ZigzagName::P(_) => 4,
            ZigzagName::Lam(_, m) | ZigzagName::V(_, m) => (m + 1).max(0) as usize,
        }
    }
}

impl fmt::Display for ZigzagName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZigzagName::L(n) => write!(f, "L({n})"),
            ZigzagName::Eplus(n) => write!(f, "E+({n})"),
            ZigzagName::Eminus(n) => write!(f, "E-({n})"),
            ZigzagName::P(n) => write!(f, "P({n})"),
            ZigzagName::Lam(n, m) => write!(f, "Lam({n},{m})"),
            ZigzagName::V(n, m) => write!(f, "V({n},{m})"),
        }
    }
}

impl FromStr for ZigzagName {
    type Err = ZigzagError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ZigzagError::Parse(s.to_string());
        let t = s.trim();
        let open = t.find('(').ok_or_else(err)?;
        let inner = t[open + 1..].strip_suffix(')').ok_or_else(err)?;
        let args: Vec<i64> =
            inner.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|_| err())?;
        match (&t[..open], args.as_slice()) {
            ("L", [n]) => Ok(ZigzagName::L(*n)),
            ("E+", [n]) => Ok(ZigzagName::Eplus(*n)),
            ("E-", [n]) => Ok(ZigzagName::Eminus(*n)),
            ("P", [n]) => Ok(ZigzagName::P(*n)),
            ("Lam", [n, m]) if *m >= -1 => Ok(ZigzagName::Lam(*n, *m)),
            ("V", [n, m]) if *m >= -1 => Ok(ZigzagName::V(*n, *m)),
            _ => Err(err()),
        }
    }
}

/// The zigzag presentation: generators `a` (+1), `b` (−1) and the grading `H`.
pub fn zigzag_presentation() -> AlgebraPresentation<Rat> {
    let mut alg = AlgebraPresentation::new("zigzag");
    let a = alg.add_generator("a", rat_int(1), false);
    let b = alg.add_generator("b", rat_int(-1), false);
    alg.add_generator("H", rat_int(0), true);
    alg.add_relation("aa", vec![Term::word(rat_int(1), vec![a, a])]);
    alg.add_relation("bb", vec![Term::word(rat_int(1), vec![b, b])]);
    alg.add_relation("loop", vec![Term::word(rat_int(1), vec![a, b]), Term::word(rat_int(-1), vec![b, a])]);
    alg
}

const GEN_A: usize = 0;
const GEN_B: usize = 1;

/// A finite-dimensional representation on a window of vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ZigzagRep {
    pub window: Window,
    pub module: ModuleRep<Rat>,
}

impl ZigzagRep {
    fn vertex_basis(&self, n: i64) -> Vec<usize> {
        self.module.basis_of_weight(&rat_int(n))
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `d_n` for every vertex of the window.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        (self.window.lo..=self.window.hi).map(|n| (n, self.vertex_basis(n).len())).collect()
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        let ws = self.module.weights();
        let lo = ws.iter().min()?.floor().to_integer().try_into().ok()?;
        let hi = ws.iter().max()?.ceil().to_integer().try_into().ok()?;
        Some((lo, hi))
    }

    /// The up arrow `a_n : V_n → V_{n+1}`.
    pub fn up(&self, n: i64) -> Matrix<Rat> {
        self.module.action(GEN_A).select(&self.vertex_basis(n + 1), &self.vertex_basis(n))
    }

    /// The down arrow `b_n : V_n → V_{n−1}`.
    pub fn down(&self, n: i64) -> Matrix<Rat> {
        self.module.action(GEN_B).select(&self.vertex_basis(n - 1), &self.vertex_basis(n))
    }

    /// The three quiver relations at every vertex, with zero padding at the ends.
    pub fn check_quiver_relations(&self) -> bool {
        let (lo, hi) = (self.window.lo, self.window.hi);
        let padded = self.dims().iter().all(|(&n, &d)| d == 0 || (n >= lo + PAD && n <= hi - PAD));
        padded
            && (lo..=hi).all(|n| {
                self.up(n + 1).mul(&self.up(n)).is_zero()
                    && self.down(n - 1).mul(&self.down(n)).is_zero()
                    && self.down(n + 1).mul(&self.up(n)) == self.up(n - 1).mul(&self.down(n))
            })
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &Matrix<Rat>| -> Vec<Vec<String>> {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
        };
        let mut up = serde_json::Map::new();
        let mut down = serde_json::Map::new();
        for n in self.window.lo..=self.window.hi {
            let (u, d) = (self.up(n), self.down(n));
            if !u.is_zero() {
                up.insert(n.to_string(), json!(mat(&u)));
            }
            if !d.is_zero() {
                down.insert(n.to_string(), json!(mat(&d)));
            }
        }
        let dims: BTreeMap<String, usize> =
            self.dims().into_iter().filter(|(_, d)| *d > 0).map(|(n, d)| (n.to_string(), d)).collect();
        json!({ "window": self.window, "dims": dims, "up": up, "down": down })
    }
}

/// Contragredient flip: transpose every arrow and swap `a ↔ b`.
pub fn flip(rep: &ZigzagRep) -> ZigzagRep {
    let m = &rep.module;
    let mut actions = m.actions().to_vec();
    actions[GEN_A] = m.action(GEN_B).transpose();
    actions[GEN_B] = m.action(GEN_A).transpose();
    ZigzagRep { window: rep.window, module: ModuleRep::from_parts(m.weights().to_vec(), actions) }
}

/// Builds a string module from vertex positions and `(from, to)` arrows.
fn string_module(vertices: &[i64], arrows: &[(usize, usize)]) -> ModuleRep<Rat> {
    let d = vertices.len();
    let weights: Vec<Rat> = vertices.iter().map(|&n| rat_int(n)).collect();
    let mut a = Matrix::zeros(d, d);
    let mut b = Matrix::zeros(d, d);
    for &(from, to) in arrows {
        let target = if vertices[to] == vertices[from] + 1 { &mut a } else { &mut b };
        target.set(to, from, rat_int(1));
    }
    let h = Matrix::diagonal(&weights);
    ModuleRep::from_parts(weights, vec![a, b, h])
}

/// `Λ_n^m` (socles at even offsets) or `V_n^m` (tops at even offsets).
fn zigzag_string(n: i64, m: i64, tops_even: bool) -> ModuleRep<Rat> {
    let vertices: Vec<i64> = (0..=m).map(|k| n + k).collect();
    let mut arrows = Vec::new();
    for k in 0..=m as usize {
        let is_top = (k % 2 == 0) == tops_even;
        if !is_top {
            continue;
        }
        if k > 0 {
            arrows.push((k, k - 1));
        }
        if (k as i64) < m {
            arrows.push((k, k + 1));
        }
    }
    string_module(&vertices, &arrows)
}

/// Simple modules `L_n`, one per vertex.
pub struct ZigzagInventory;

impl SimpleInventory<Rat> for ZigzagInventory {
    fn simples_with_weight(&self, w: &Rat) -> Vec<(String, ModuleRep<Rat>)> {
        if !w.is_integer() {
            return Vec::new();
        }
        let n = w.to_integer().try_into().expect("vertex fits in i64");
        vec![(ZigzagName::L(n).to_string(), string_module(&[n], &[]))]
    }
}

/// Projective covers `P(n)` restricted to a window.
pub struct ZigzagCovers {
    pub window: Window,
}

impl ProjectiveCovers<Rat> for ZigzagCovers {
    fn cover(&self, w: &Rat) -> Result<ProjectiveCover<Rat>, EngineError> {
        if !w.is_integer() {
            return Err(EngineError::Window(format!("non-integral vertex {w}")));
        }
        let n: i64 = w.to_integer().try_into().map_err(|_| EngineError::Window(w.to_string()))?;
        let (lo, hi) = self.window.usable();
        if n - 1 < lo || n + 1 > hi {
            return Err(EngineError::Window(format!("P({n}) leaves the window {}", self.window)));
        }
        Ok(ProjectiveCover { module: projective(n), generator: 0, words: projective_words() })
    }
}

/// `P(n)` on the basis `e, a·e, b·e, ab·e`.
fn projective(n: i64) -> ModuleRep<Rat> {
    string_module(&[n, n + 1, n - 1, n], &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

fn projective_words() -> Vec<Vec<usize>> {
    vec![vec![], vec![GEN_A], vec![GEN_B], vec![GEN_A, GEN_B]]
}

/// One failed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub item: String,
    pub lhs: String,
    pub rhs: String,
    pub expected: usize,
    pub got: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn record(&mut self, item: &str, lhs: impl ToString, rhs: impl ToString, expected: usize, got: usize) {
        self.checks += 1;
        if expected != got {
            self.mismatches.push(Mismatch {
                item: item.to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                expected,
                got,
            });
        }
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.checks += other.checks;
        self.mismatches.extend(other.mismatches);
        self
    }
}

/// Result of [`Zigzag::classify_indecomposable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Name(ZigzagName),
    Unknown,
}

/// Terms of a minimal projective resolution with their summand heads.
#[derive(Clone, Debug)]
pub struct ZigzagResolution {
    pub terms: Vec<ZigzagRep>,
    /// Head vertices of the projective summands of each term.
    pub heads: Vec<Vec<i64>>,
    /// `P_j → P_{j−1}` for `j ≥ 1`.
    pub differentials: Vec<Matrix<Rat>>,
}

/// Calculator for the zigzag block on a fixed window.
pub struct Zigzag {
    pub window: Window,
    alg: AlgebraPresentation<Rat>,
}

fn yes(b: bool) -> usize {
    usize::from(b)
}

impl Zigzag {
    pub fn new(window: Window) -> Self {
        Zigzag { window, alg: zigzag_presentation() }
    }

    pub fn presentation(&self) -> &AlgebraPresentation<Rat> {
        &self.alg
    }

    fn wrap(&self, module: ModuleRep<Rat>) -> ZigzagRep {
        ZigzagRep { window: self.window, module }
    }

    fn require_margin(&self, what: impl fmt::Display, support: Option<(i64, i64)>, margin: i64) -> Result<(), ZigzagError> {
        if let Some(s) = support {
            let got = self.window.margin(s);
            if got < margin {
                return Err(ZigzagError::Margin(format!(
                    "{what} has margin {got} in window {}, needs {margin}",
                    self.window
                )));
            }
        }
        Ok(())
    }

    /// Explicit string-module realization of a named module.
    pub fn build(&self, name: ZigzagName) -> Result<ZigzagRep, ZigzagError> {
        self.require_margin(name, name.support(), PAD)?;
        let module = match name {
            ZigzagName::L(n) => string_module(&[n], &[]),
            ZigzagName::Eplus(n) => string_module(&[n + 1, n], &[(0, 1)]),
            ZigzagName::Eminus(n) => string_module(&[n - 1, n], &[(0, 1)]),
            ZigzagName::P(n) => projective(n),
            ZigzagName::Lam(_, -1) | ZigzagName::V(_, -1) => ModuleRep::zero(&self.alg),
            ZigzagName::Lam(n, m) => zigzag_string(n, m, false),
            ZigzagName::V(n, m) => zigzag_string(n, m, true),
        };
        Ok(self.wrap(module))
    }

    /// `Λ_n^m` and `V_n^m` by iterated one-dimensional extensions by simples.
    pub fn build_recursive(&self, name: ZigzagName) -> Result<ZigzagRep, ZigzagError> {
        let (n, m, lam) = match name {
            ZigzagName::Lam(n, m) => (n, m, true),
            ZigzagName::V(n, m) => (n, m, false),
            other => return self.build(other),
        };
        self.require_margin(name, name.support(), PAD)?;
        if m < 0 {
            return Ok(self.wrap(ModuleRep::zero(&self.alg)));
        }
        let simple = |k: i64| string_module(&[n + k], &[]);
        let mut cur = simple(0);
        for k in 1..=m {
            let l = simple(k);
            // Odd steps add a top for Λ and a socle for V; even steps the reverse.
            let on_top = (k % 2 == 1) == lam;
            let (quot, sub) = if on_top { (&l, &cur) } else { (&cur, &l) };
            let e = ext1(&self.alg, quot, sub);
            if e.dim != 1 {
                return Err(ZigzagError::Engine(EngineError::Hypothesis(format!(
                    "step {k} of {name}: expected a one-dimensional Ext¹, found {}",
                    e.dim
                ))));
            }
            cur = extend(&self.alg, quot, sub, &e.cocycles[0])?;
        }
        Ok(self.wrap(cur))
    }

    fn check_rep(&self, rep: &ZigzagRep, margin: i64) -> Result<(), ZigzagError> {
        self.require_margin("module", rep.support(), margin)
    }

    pub fn hom_rep(&self, x: &ZigzagRep, y: &ZigzagRep) -> Result<usize, ZigzagError> {
        self.check_rep(x, PAD)?;
        self.check_rep(y, PAD)?;
        Ok(hom_dim(&self.alg, &x.module, &y.module))
    }

    pub fn ext1_rep(&self, x: &ZigzagRep, y: &ZigzagRep) -> Result<usize, ZigzagError> {
        self.check_rep(x, PAD)?;
        self.check_rep(y, PAD)?;
        Ok(ext1(&self.alg, &x.module, &y.module).dim)
    }

    /// `dim Ext^s(X, Y)`; `X` needs margin `s + 2` for its resolution.
    pub fn ext_s_rep(&self, x: &ZigzagRep, y: &ZigzagRep, s: usize) -> Result<usize, ZigzagError> {
        self.check_rep(x, s as i64 + PAD)?;
        self.check_rep(y, PAD)?;
        let covers = ZigzagCovers { window: self.window };
        Ok(ext_engine::ext_s(&self.alg, &x.module, &y.module, s, &covers)?)
    }

    pub fn hom(&self, x: ZigzagName, y: ZigzagName) -> Result<usize, ZigzagError> {
        self.hom_rep(&self.build(x)?, &self.build(y)?)
    }

    pub fn ext1(&self, x: ZigzagName, y: ZigzagName) -> Result<usize, ZigzagError> {
        self.ext1_rep(&self.build(x)?, &self.build(y)?)
    }

    pub fn ext_s(&self, x: ZigzagName, y: ZigzagName, s: usize) -> Result<usize, ZigzagError> {
        self.ext_s_rep(&self.build(x)?, &self.build(y)?, s)
    }

    pub fn extend_rep(&self, quot: &ZigzagRep, sub: &ZigzagRep, class: usize) -> Result<ZigzagRep, ZigzagError> {
        let e = ext1(&self.alg, &quot.module, &sub.module);
        let c = e.cocycles.get(class).ok_or_else(|| {
            ZigzagError::Engine(EngineError::Hypothesis(format!("Ext¹ has dimension {}", e.dim)))
        })?;
        Ok(self.wrap(extend(&self.alg, &quot.module, &sub.module, c)?))
    }

    pub fn is_isomorphic(&self, x: &ZigzagRep, y: &ZigzagRep) -> bool {
        is_isomorphic(&self.alg, &x.module, &y.module)
    }

    pub fn is_indecomposable(&self, x: &ZigzagRep) -> bool {
        is_indecomposable(&self.alg, &x.module)
    }

    pub fn loewy(&self, x: &ZigzagRep) -> Result<Vec<LoewyLayer>, ZigzagError> {
        Ok(radical_filtration(&self.alg, &x.module, &ZigzagInventory)?)
    }

    pub fn direct_sum(&self, parts: &[&ZigzagRep]) -> ZigzagRep {
        let mods: Vec<&ModuleRep<Rat>> = parts.iter().map(|p| &p.module).collect();
        self.wrap(ModuleRep::direct_sum_all(&self.alg, &mods))
    }

    /// Vertices `n` at which modules with support `[n + a, n + b]` keep margin `margin`.
    fn centers(&self, a: i64, b: i64, margin: i64) -> Vec<i64> {
        ((self.window.lo + margin - a)..=(self.window.hi - margin - b)).collect()
    }

    /// Checks items 1–9 of the structure theorem for the block.
    pub fn verify_main(&self) -> Result<Report, ZigzagError> {
        let ns = self.centers(-2, 2, PAD);
        if ns.is_empty() {
            return Err(ZigzagError::Margin(format!("window {} is too small", self.window)));
        }
        let reports: Vec<Result<Report, ZigzagError>> = ns.par_iter().map(|&n| self.verify_main_at(n)).collect();
        let mut out = Report::default();
        for r in reports {
            out = out.merge(r?);
        }
        Ok(out)
    }

    fn verify_main_at(&self, n: i64) -> Result<Report, ZigzagError> {
        use ZigzagName::*;
        let mut rep = Report::default();
        let (lo, hi) = self.window.usable();
        let e1 = |x: ZigzagName, y: ZigzagName| self.ext1(x, y);
        for m in lo..=hi {
            rep.record("properties", L(n), L(m), yes((n - m).abs() == 1), e1(L(n), L(m))?);
            rep.record("1", L(m), Eplus(n), yes(m == n - 1), e1(L(m), Eplus(n))?);
            rep.record("2", Eplus(n), L(m), yes(m == n + 2), e1(Eplus(n), L(m))?);
            rep.record("3", L(m), Eminus(n), yes(m == n + 1), e1(L(m), Eminus(n))?);
            rep.record("4", Eminus(n), L(m), yes(m == n - 2), e1(Eminus(n), L(m))?);
            rep.record("9", P(n), L(m), 0, e1(P(n), L(m))?);
            rep.record("9", L(m), P(n), 0, e1(L(m), P(n))?);
        }
        for m in lo + 1..=hi {
            rep.record("5", Eminus(n), Eplus(m - 1), 0, e1(Eminus(n), Eplus(m - 1))?);
            rep.record("5", Eplus(n), Eminus(m), 0, e1(Eplus(n), Eminus(m))?);
            rep.record("6", Eplus(n), Eplus(m - 1), yes(m - 1 == n + 1 || m - 1 == n + 2), e1(Eplus(n), Eplus(m - 1))?);
            rep.record("7", Eminus(n), Eminus(m), yes(m == n - 1 || m == n - 2), e1(Eminus(n), Eminus(m))?);
        }
        // Item 8: both displayed sequences produce the same indecomposable middle term.
        let p = self.build(P(n))?;
        let via_plus = self.extend_rep(&self.build(Eplus(n - 1))?, &self.build(Eplus(n))?, 0)?;
        let via_minus = self.extend_rep(&self.build(Eminus(n + 1))?, &self.build(Eminus(n))?, 0)?;
        rep.record("8", "E+ sequence", P(n), 1, yes(self.is_isomorphic(&via_plus, &p)));
        rep.record("8", "E- sequence", P(n), 1, yes(self.is_isomorphic(&via_minus, &p)));
        rep.record("8", "indecomposable", P(n), 1, yes(self.is_indecomposable(&via_plus)));
        let diamond = vec![vec![L(n).to_string()], vec![L(n - 1).to_string(), L(n + 1).to_string()], vec![L(n).to_string()]];
        rep.record("9", "Loewy diamond", P(n), 1, yes(self.loewy(&p)? == diamond));
        Ok(rep)
    }

    /// Checks `dim Ext^s(L_n, L_m)` for `s ≤ s_max` and `|n − m| ≤ s_max`
    /// wherever the resolution of `L_n` fits the window.
    pub fn verify_ext_s(&self, s_max: usize) -> Result<Report, ZigzagError> {
        let sm = s_max as i64;
        let ns = self.centers(0, 0, sm + PAD);
        if ns.is_empty() {
            return Err(ZigzagError::Margin(format!("window {} cannot host Ext^{s_max}", self.window)));
        }
        let (lo, hi) = self.window.usable();
        let reports: Vec<Result<Report, ZigzagError>> = ns
            .par_iter()
            .map(|&n| {
                let mut rep = Report::default();
                let res = self.resolve(n, s_max)?;
                for m in (n - sm).max(lo)..=(n + sm).min(hi) {
                    let lm = string_module(&[m], &[]);
                    for s in 0..=sm {
                        let expected = yes((n - m).abs() <= s && (n - s - m).rem_euclid(2) == 0);
                        let got = ext_from_resolution(&self.alg, &res, &lm, s as usize);
                        rep.record("11", ZigzagName::L(n), format!("{} (s={s})", ZigzagName::L(m)), expected, got);
                    }
                }
                Ok(rep)
            })
            .collect();
        let mut out = Report::default();
        for r in reports {
            out = out.merge(r?);
        }
        Ok(out)
    }

    fn resolve(&self, n: i64, s: usize) -> Result<ext_engine::Resolution<Rat>, ZigzagError> {
        self.require_margin(ZigzagName::L(n), Some((n, n)), s as i64 + PAD)?;
        let covers = ZigzagCovers { window: self.window };
        Ok(minimal_resolution(&self.alg, &string_module(&[n], &[]), s, &covers)?)
    }

    /// Terms `P_0, …, P_s` of the minimal projective resolution of `L_n`.
    pub fn projective_resolution(&self, n: i64, s: usize) -> Result<ZigzagResolution, ZigzagError> {
        self.require_margin(ZigzagName::L(n), Some((n, n)), s as i64 + 1 + PAD)?;
        let covers = ZigzagCovers { window: self.window };
        let res = minimal_resolution(&self.alg, &string_module(&[n], &[]), s + 1, &covers)?;
        let heads = res
            .summands
            .iter()
            .map(|hs| hs.iter().map(|w| w.to_integer().try_into().expect("vertex fits in i64")).collect())
            .collect();
        let differentials = (1..res.terms.len()).map(|k| res.differential(k)).collect();
        Ok(ZigzagResolution {
            terms: res.terms.into_iter().map(|t| self.wrap(t)).collect(),
            heads,
            differentials,
        })
    }

    /// `R_a^j = P(a) ⊕ P(a+2) ⊕ ⋯ ⊕ P(a+2j)`.
    pub fn r_module(&self, a: i64, j: i64) -> Result<ZigzagRep, ZigzagError> {
        let parts: Vec<ZigzagRep> = (0..=j).map(|k| self.build(ZigzagName::P(a + 2 * k))).collect::<Result<_, _>>()?;
        let refs: Vec<&ZigzagRep> = parts.iter().collect();
        Ok(self.direct_sum(&refs))
    }

    /// Names an indecomposable module by composition factors and isomorphism.
    pub fn classify_indecomposable(&self, rep: &ZigzagRep) -> Result<Classification, ZigzagError> {
        if !self.is_indecomposable(rep) {
            return Err(ZigzagError::Decomposable);
        }
        let (lo, hi) = match rep.support() {
            Some(s) => s,
            None => return Err(ZigzagError::Decomposable),
        };
        let len = rep.dim() as i64;
        let mut candidates = vec![ZigzagName::Lam(lo, len - 1), ZigzagName::V(lo, len - 1)];
        if len == 4 && hi - lo == 2 {
            candidates.push(ZigzagName::P(lo + 1));
        }
        for c in candidates {
            if c.support() != Some((lo, hi)) {
                continue;
            }
            let built = self.build(c)?;
            if built.module.weight_multiset() == rep.module.weight_multiset() && self.is_isomorphic(&built, rep) {
                return Ok(Classification::Name(c.canonical()));
            }
        }
        Ok(Classification::Unknown)
    }

    /// Checks the Ext¹ dimension table for zigzag modules and the middle
    /// terms of the one-dimensional extensions, for string lengths up to `2·m_max + 2`.
    pub fn verify_extension_list(&self, m_max: i64) -> Result<Report, ZigzagError> {
        let (lo, hi) = self.window.usable();
        let n = lo + 2;
        if n + 2 * m_max + 3 > hi {
            return Err(ZigzagError::Margin(format!(
                "window {} is too small for m_max = {m_max}",
                self.window
            )));
        }
        let jobs: Vec<i64> = (0..=m_max).collect();
        let reports: Vec<Result<Report, ZigzagError>> =
            jobs.par_iter().map(|&m| self.verify_extension_list_at(n, m)).collect();
        let mut out = Report::default();
        for r in reports {
            out = out.merge(r?);
        }
        Ok(out)
    }

    fn verify_extension_list_at(&self, n: i64, m: i64) -> Result<Report, ZigzagError> {
        use ZigzagName::*;
        let mut rep = Report::default();
        let (lo, hi) = self.window.usable();
        let delta = |r: i64, range: std::ops::RangeInclusive<i64>, f: &dyn Fn(i64) -> i64| {
            range.filter(|&s| f(s) == r).count()
        };
        if m >= 1 {
            for r in (n - 2).max(lo)..=(n + 2 * m + 3).min(hi) {
                let l = L(r);
                let e = delta(r, 0..=m + 1, &|s| n + 2 * s - 1);
                rep.record("list", l, Lam(n, 2 * m), e, self.ext1(l, Lam(n, 2 * m))?);
                rep.record("list", V(n, 2 * m), l, e, self.ext1(V(n, 2 * m), l)?);
                let e = delta(r, 0..=m, &|s| n + 2 * s - 1);
                rep.record("list", l, Lam(n, 2 * m + 1), e, self.ext1(l, Lam(n, 2 * m + 1))?);
                rep.record("list", V(n, 2 * m + 1), l, e, self.ext1(V(n, 2 * m + 1), l)?);
                let e = yes(m == 1 && r == n + 1) + delta(r, 1..=m - 1, &|s| n + 2 * s);
                rep.record("list", Lam(n, 2 * m), l, e, self.ext1(Lam(n, 2 * m), l)?);
                rep.record("list", l, V(n, 2 * m), e, self.ext1(l, V(n, 2 * m))?);
                let e = delta(r, 1..=m + 1, &|s| n + 2 * s);
                rep.record("list", Lam(n, 2 * m + 1), l, e, self.ext1(Lam(n, 2 * m + 1), l)?);
                rep.record("list", l, V(n, 2 * m + 1), e, self.ext1(l, V(n, 2 * m + 1))?);
            }
        }
        if m == 1 {
            let p = self.build(P(n + 1))?;
            let a = self.extend_rep(&self.build(Lam(n, 2))?, &self.build(L(n + 1))?, 0)?;
            let b = self.extend_rep(&self.build(L(n + 1))?, &self.build(V(n, 2))?, 0)?;
            rep.record("projective", Lam(n, 2), L(n + 1), 1, yes(self.is_isomorphic(&a, &p)));
            rep.record("projective", L(n + 1), V(n, 2), 1, yes(self.is_isomorphic(&b, &p)));
        }
        // (sub, quotient, middle summands) for every line of the extension table.
        let mut lines: Vec<(ZigzagName, ZigzagName, [ZigzagName; 2])> = Vec::new();
        for s in 0..=m + 1 {
            let r = n + 2 * s - 1;
            lines.push((Lam(n, 2 * m), L(r), [Lam(n, 2 * s - 1), V(r, 2 * m - 2 * s + 1)]));
            lines.push((L(r), V(n, 2 * m), [V(n, 2 * s - 1), Lam(r, 2 * m - 2 * s + 1)]));
        }
        for s in 1..=m - 1 {
            let r = n + 2 * s;
            lines.push((L(r), Lam(n, 2 * m), [Lam(n, 2 * s), Lam(r, 2 * m - 2 * s)]));
            lines.push((V(n, 2 * m), L(r), [V(n, 2 * s), V(r, 2 * m - 2 * s)]));
        }
        for s in 0..=m {
            let r = n + 2 * s - 1;
            lines.push((Lam(n, 2 * m + 1), L(r), [Lam(n, 2 * s - 1), V(r, 2 * m - 2 * s + 2)]));
            lines.push((L(r), V(n, 2 * m + 1), [V(n, 2 * s - 1), Lam(r, 2 * m - 2 * s + 2)]));
        }
        for s in 1..=m + 1 {
            let r = n + 2 * s;
            lines.push((L(r), Lam(n, 2 * m + 1), [Lam(n, 2 * s), Lam(r, 2 * m - 2 * s + 1)]));
            lines.push((V(n, 2 * m + 1), L(r), [V(n, 2 * s), V(r, 2 * m - 2 * s + 1)]));
        }
        for (sub, quot, middle) in lines {
            let (sub_rep, quot_rep) = (self.build(sub)?, self.build(quot)?);
            let dim = self.ext1_rep(&quot_rep, &sub_rep)?;
            rep.record("extension dim", quot, sub, 1, dim);
            if dim != 1 {
                continue;
            }
            let e = self.extend_rep(&quot_rep, &sub_rep, 0)?;
            let parts: Vec<ZigzagRep> = middle.iter().map(|&x| self.build(x)).collect::<Result<_, _>>()?;
            let expected = self.direct_sum(&[&parts[0], &parts[1]]);
            let label = format!("{} + {}", middle[0].canonical(), middle[1].canonical());
            rep.record("middle term", format!("{quot} by {sub}"), label, 1, yes(self.is_isomorphic(&e, &expected)));
        }
        Ok(rep)
    }
}
