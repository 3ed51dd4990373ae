//! Label calculus for simple weight modules of `L_k(sl₂)` at admissible level
//! `k = −2 + u/v`. Everything here is combinatorial.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclotomic::{rat, rat_int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("invalid level: {0}")]
    Level(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("λ = {0} is atypical for this (r, s)")]
    Atypical(Rat),
    #[error("typical block rejected: {0}")]
    Typical(String),
    #[error("cannot parse label `{0}`")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Level {
    pub u: i64,
    pub v: i64,
}

impl Level {
    pub fn new(u: i64, v: i64) -> Result<Self, AffineError> {
        if u < 2 || v < 2 {
            return Err(AffineError::Level(format!("u = {u}, v = {v} must both be ≥ 2")));
        }
        if u.gcd(&v) != 1 {
            return Err(AffineError::Level(format!("gcd({u}, {v}) ≠ 1")));
        }
        Ok(Level { u, v })
    }

    pub fn t(&self) -> Rat {
        rat(self.u, self.v)
    }

    /// `k = −2 + u/v`.
    pub fn k(&self) -> Rat {
        self.t() - rat_int(2)
    }

    fn check_r(&self, r: i64) -> Result<(), AffineError> {
        if r < 1 || r > self.u - 1 {
            return Err(AffineError::Index(format!("r = {r} outside 1..={}", self.u - 1)));
        }
        Ok(())
    }

    fn check_s(&self, s: i64, min: i64) -> Result<(), AffineError> {
        if s < min || s > self.v - 1 {
            return Err(AffineError::Index(format!("s = {s} outside {min}..={}", self.v - 1)));
        }
        Ok(())
    }

    /// Representatives of `I_{u,v}`: pairs modulo `(r, s) ~ (u−r, v−s)`.
    pub fn typical_classes(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for r in 1..self.u {
            for s in 1..self.v {
                if (r, s) <= (self.u - r, self.v - s) {
                    out.push((r, s));
                }
            }
        }
        out
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k = -2 + {}/{}", self.u, self.v)
    }
}

/// `λ_{r,s} = r − 1 − (u/v)s`.
pub fn lambda_rs(lv: &Level, r: i64, s: i64) -> Result<Rat, AffineError> {
    lv.check_r(r)?;
    lv.check_s(s, 0)?;
    Ok(rat_int(r - 1) - lv.t() * rat_int(s))
}

/// `Δ_{r,s} = ((vr − us)² − v²) / 4uv`.
pub fn delta_rs(lv: &Level, r: i64, s: i64) -> Result<Rat, AffineError> {
    lv.check_r(r)?;
    lv.check_s(s, 0)?;
    let a = lv.v * r - lv.u * s;
    Ok(rat(a * a - lv.v * lv.v, 4 * lv.u * lv.v))
}

/// Exhaustive check that `Δ_{r,s} = Δ_{r',s'}` holds exactly when
/// `(r', s') ∈ {(r, s), (u−r, v−s)}`.
pub fn delta_collision_check(lv: &Level) -> bool {
    let mut table = Vec::new();
    for r in 1..lv.u {
        for s in 0..lv.v {
            table.push(((r, s), delta_rs(lv, r, s).expect("in range")));
        }
    }
    table.iter().all(|((r, s), d)| {
        table.iter().all(|((r2, s2), d2)| {
            let expected = (*r2, *s2) == (*r, *s) || (*r2, *s2) == (lv.u - r, lv.v - s);
            (d == d2) == expected
        })
    })
}

/// `λ mod 2` in `[0, 2)`.
pub fn reduce_mod2(x: &Rat) -> Rat {
    let two = rat_int(2);
    let q = (x / &two).floor();
    x - q * two
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleLabel {
    Irr { r: i64 },
    Dplus { r: i64, s: i64, ell: i64 },
    Dminus { r: i64, s: i64, ell: i64 },
    Etyp { lambda: Rat, r: i64, s: i64, ell: i64 },
}

impl SimpleLabel {
    pub fn dplus(r: i64, s: i64, ell: i64) -> Self {
        SimpleLabel::Dplus { r, s, ell }
    }

    pub fn dminus(r: i64, s: i64, ell: i64) -> Self {
        SimpleLabel::Dminus { r, s, ell }
    }

    pub fn is_typical(&self) -> bool {
        matches!(self, SimpleLabel::Etyp { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            SimpleLabel::Irr { r } => json!({"variant": "Irr", "r": r, "s": 0, "ell": 0, "lambda": null}),
            SimpleLabel::Dplus { r, s, ell } => {
                json!({"variant": "Dplus", "r": r, "s": s, "ell": ell, "lambda": null})
            }
            SimpleLabel::Dminus { r, s, ell } => {
                json!({"variant": "Dminus", "r": r, "s": s, "ell": ell, "lambda": null})
            }
            SimpleLabel::Etyp { lambda, r, s, ell } => {
                json!({"variant": "Etyp", "r": r, "s": s, "ell": ell, "lambda": lambda.to_string()})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, AffineError> {
        let bad = || AffineError::Parse(v.to_string());
        let int = |k: &str| v.get(k).and_then(Value::as_i64).ok_or_else(bad);
        match v.get("variant").and_then(Value::as_str).ok_or_else(bad)? {
            "Irr" => Ok(SimpleLabel::Irr { r: int("r")? }),
            "Dplus" => Ok(SimpleLabel::dplus(int("r")?, int("s")?, int("ell")?)),
            "Dminus" => Ok(SimpleLabel::dminus(int("r")?, int("s")?, int("ell")?)),
            "Etyp" => {
                let lambda = v
                    .get("lambda")
                    .and_then(Value::as_str)
                    .and_then(|s| Rat::from_str(s).ok())
                    .ok_or_else(bad)?;
                Ok(SimpleLabel::Etyp { lambda, r: int("r")?, s: int("s")?, ell: int("ell")? })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleLabel::Irr { r } => write!(f, "L({r})"),
            SimpleLabel::Dplus { r, s, ell } => write!(f, "D+({r},{s},{ell})"),
            SimpleLabel::Dminus { r, s, ell } => write!(f, "D-({r},{s},{ell})"),
            SimpleLabel::Etyp { lambda, r, s, ell } => write!(f, "E({lambda},{r},{s},{ell})"),
        }
    }
}

/// Accepts `L(r)`, `D+(r,s,ℓ)`, `D-(r,s,ℓ)`, `E(λ,r,s,ℓ)`; the `ℓ` entry may be omitted.
impl FromStr for SimpleLabel {
    type Err = AffineError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || AffineError::Parse(text.to_string());
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let open = t.find('(').ok_or_else(bad)?;
        if !t.ends_with(')') {
            return Err(bad());
        }
        let head = &t[..open];
        let args: Vec<&str> = t[open + 1..t.len() - 1].split(',').collect();
        let ints = |xs: &[&str]| -> Result<Vec<i64>, AffineError> {
            xs.iter().map(|x| x.parse::<i64>().map_err(|_| bad())).collect()
        };
        match (head, args.len()) {
            ("L", 1) => Ok(SimpleLabel::Irr { r: ints(&args)?[0] }),
            ("D+", 2 | 3) | ("D-", 2 | 3) => {
                let a = ints(&args)?;
                let ell = a.get(2).copied().unwrap_or(0);
                if head == "D+" {
                    Ok(SimpleLabel::dplus(a[0], a[1], ell))
                } else {
                    Ok(SimpleLabel::dminus(a[0], a[1], ell))
                }
            }
            ("E", 3 | 4) => {
                let lambda = Rat::from_str(args[0]).map_err(|_| bad())?;
                let a = ints(&args[1..])?;
                Ok(SimpleLabel::Etyp { lambda, r: a[0], s: a[1], ell: a.get(2).copied().unwrap_or(0) })
            }
            _ => Err(bad()),
        }
    }
}

/// Canonical form: atypicals as `σ^ℓ D⁺_{r,s}` with `1 ≤ s ≤ v−1`, typicals with
/// `λ ∈ [0, 2)` and the smaller representative of `{(r,s), (u−r,v−s)}`.
pub fn normalize(lv: &Level, x: &SimpleLabel) -> Result<SimpleLabel, AffineError> {
    let (u, v) = (lv.u, lv.v);
    match x {
        SimpleLabel::Irr { r } => {
            lv.check_r(*r)?;
            Ok(SimpleLabel::dplus(u - r, v - 1, -1))
        }
        SimpleLabel::Dplus { r, s, ell } => {
            lv.check_r(*r)?;
            lv.check_s(*s, 0)?;
            if *s == 0 {
                Ok(SimpleLabel::dplus(u - r, v - 1, ell - 1))
            } else {
                Ok(x.clone())
            }
        }
        SimpleLabel::Dminus { r, s, ell } => {
            lv.check_r(*r)?;
            lv.check_s(*s, 1)?;
            if *s == v - 1 {
                Ok(SimpleLabel::dplus(*r, v - 1, ell - 2))
            } else {
                Ok(SimpleLabel::dplus(u - r, v - 1 - s, ell - 1))
            }
        }
        SimpleLabel::Etyp { lambda, r, s, ell } => {
            lv.check_r(*r)?;
            lv.check_s(*s, 1)?;
            let lam = reduce_mod2(lambda);
            let (r, s) = if (*r, *s) <= (u - r, v - s) { (*r, *s) } else { (u - r, v - s) };
            for (a, b) in [(r, s), (u - r, v - s)] {
                if reduce_mod2(&lambda_rs(lv, a, b)?) == lam {
                    return Err(AffineError::Atypical(lam));
                }
            }
            Ok(SimpleLabel::Etyp { lambda: lam, r, s, ell: *ell })
        }
    }
}

/// `σ^m(x)`, in canonical form.
pub fn sigma(lv: &Level, x: &SimpleLabel, m: i64) -> Result<SimpleLabel, AffineError> {
    Ok(match normalize(lv, x)? {
        SimpleLabel::Dplus { r, s, ell } => SimpleLabel::dplus(r, s, ell + m),
        SimpleLabel::Etyp { lambda, r, s, ell } => SimpleLabel::Etyp { lambda, r, s, ell: ell + m },
        _ => unreachable!("normalize returns D⁺ or E labels"),
    })
}

/// Contragredient dual: `σ^ℓ D^±_{r,s} ↦ σ^{−ℓ} D^∓_{r,s}`, `E_λ ↦ E_{−λ}`.
pub fn conjugate(lv: &Level, x: &SimpleLabel) -> Result<SimpleLabel, AffineError> {
    match normalize(lv, x)? {
        SimpleLabel::Dplus { r, s, ell } => normalize(lv, &SimpleLabel::dminus(r, s, -ell)),
        SimpleLabel::Etyp { lambda, r, s, ell } => {
            normalize(lv, &SimpleLabel::Etyp { lambda: -lambda, r, s, ell: -ell })
        }
        _ => unreachable!("normalize returns D⁺ or E labels"),
    }
}

/// `dim Ext¹(N, M)` between simples: 1 iff `M ≅ σ^ℓ D^ε_{r,s}` and
/// `N ≅ σ^ℓ D^{−ε}_{u−r,v−s}` for some `ℓ, r, s, ε`.
pub fn ext1_simples(lv: &Level, n: &SimpleLabel, m: &SimpleLabel) -> Result<usize, AffineError> {
    let (n, m) = (normalize(lv, n)?, normalize(lv, m)?);
    let a = match m {
        SimpleLabel::Dplus { ell, .. } => ell,
        _ => return Ok(0),
    };
    if n.is_typical() {
        return Ok(0);
    }
    for plus in [true, false] {
        let make = |p: bool, r, s, ell| if p { SimpleLabel::dplus(r, s, ell) } else { SimpleLabel::dminus(r, s, ell) };
        for r in 1..lv.u {
            for s in 1..lv.v {
                for ell in a..=a + 2 {
                    if normalize(lv, &make(plus, r, s, ell))? != m {
                        continue;
                    }
                    if normalize(lv, &make(!plus, lv.u - r, lv.v - s, ell))? == n {
                        return Ok(1);
                    }
                }
            }
        }
    }
    Ok(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockId {
    /// `σ^n(C_r)` with `−1 ≤ n ≤ v−2`, `C_r` the block of `D⁺_{r,v−1}`.
    Atypical { r: i64, n: i64 },
    Typical { r: i64, s: i64, ell: i64, lambda: Rat },
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockId::Atypical { r, n } => write!(f, "sigma^{n}(C_{r})"),
            BlockId::Typical { r, s, ell, lambda } => write!(f, "E^{ell}_({r},{s},{lambda})"),
        }
    }
}

impl BlockId {
    pub fn to_json(&self) -> Value {
        match self {
            BlockId::Atypical { r, n } => json!({"kind": "atypical", "r": r, "n": n}),
            BlockId::Typical { r, s, ell, lambda } => {
                json!({"kind": "typical", "r": r, "s": s, "ell": ell, "lambda": lambda.to_string()})
            }
        }
    }
}

pub fn block_of(lv: &Level, x: &SimpleLabel) -> Result<BlockId, AffineError> {
    match normalize(lv, x)? {
        SimpleLabel::Dplus { r, s, ell } => {
            let shift = ell + lv.v - 1 - s;
            let (k, n) = shift.div_mod_floor(&lv.v);
            let rho = if k.is_even() { r } else { lv.u - r };
            if n <= lv.v - 2 {
                Ok(BlockId::Atypical { r: rho, n })
            } else {
                Ok(BlockId::Atypical { r: lv.u - rho, n: -1 })
            }
        }
        SimpleLabel::Etyp { lambda, r, s, ell } => Ok(BlockId::Typical { r, s, ell, lambda }),
        _ => unreachable!("normalize returns D⁺ or E labels"),
    }
}

/// The chain member `L_j` of `σ^n(C_r)`: `L_j = σ^{n−j} D⁺_{r,v−1−j}` for
/// `0 ≤ j ≤ v−2`, extended by `L_{j+v−1}(r) = σ^{−v} L_j(u−r)`.
pub fn chain_member(lv: &Level, r: i64, n: i64, j: i64) -> SimpleLabel {
    let (q, k) = j.div_mod_floor(&(lv.v - 1));
    let rho = if q.is_even() { r } else { lv.u - r };
    SimpleLabel::dplus(rho, lv.v - 1 - k, n - k - q * lv.v)
}

pub fn block_chain(
    lv: &Level,
    b: &BlockId,
    n_lo: i64,
    n_hi: i64,
) -> Result<Vec<(i64, SimpleLabel)>, AffineError> {
    match b {
        BlockId::Atypical { r, n } => {
            lv.check_r(*r)?;
            if *n < -1 || *n > lv.v - 2 {
                return Err(AffineError::Index(format!("block shift n = {n} outside -1..={}", lv.v - 2)));
            }
            Ok((n_lo..=n_hi).map(|j| (j, chain_member(lv, *r, *n, j))).collect())
        }
        BlockId::Typical { .. } => Err(AffineError::Typical(b.to_string())),
    }
}

pub fn atypical_blocks(lv: &Level) -> Vec<BlockId> {
    (1..lv.u).flat_map(|r| (-1..=lv.v - 2).map(move |n| BlockId::Atypical { r, n })).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockCensus {
    pub level: Level,
    pub ell_window: i64,
    pub atypical_blocks: Vec<String>,
    /// Representatives `(r, s)` of `I_{u,v}` parametrizing typical blocks.
    pub typical_classes: Vec<(i64, i64)>,
    pub typical_description: String,
    pub labels_checked: usize,
    /// Labels found in zero or several chains, or whose chain disagrees with `block_of`.
    pub violations: Vec<String>,
}

impl BlockCensus {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.atypical_blocks.len() as i64 == (self.level.u - 1) * self.level.v
    }
}

/// Lists the atypical blocks and checks that every `σ^ℓ D⁺_{r,s}` with
/// `|ℓ| ≤ ell_window` lies on exactly one block chain.
pub fn enumerate_blocks(lv: &Level, ell_window: i64) -> BlockCensus {
    let blocks = atypical_blocks(lv);
    let span = ell_window + 2 * lv.v + 2;
    let chains: Vec<(BlockId, Vec<SimpleLabel>)> = blocks
        .iter()
        .map(|b| {
            let BlockId::Atypical { r, n } = b else { unreachable!() };
            (b.clone(), (-span..=span).map(|j| chain_member(lv, *r, *n, j)).collect())
        })
        .collect();
    let mut violations = Vec::new();
    let mut checked = 0;
    for r in 1..lv.u {
        for s in 1..lv.v {
            for ell in -ell_window..=ell_window {
                let x = SimpleLabel::dplus(r, s, ell);
                checked += 1;
                let hits: Vec<&BlockId> =
                    chains.iter().filter(|(_, c)| c.contains(&x)).map(|(b, _)| b).collect();
                let assigned = block_of(lv, &x).expect("canonical label");
                if hits.len() != 1 || *hits[0] != assigned {
                    let names: Vec<String> = hits.iter().map(|b| b.to_string()).collect();
                    violations.push(format!("{x}: chains [{}], block_of {assigned}", names.join(", ")));
                }
            }
        }
    }
    let typical_classes = lv.typical_classes();
    BlockCensus {
        level: *lv,
        ell_window,
        atypical_blocks: blocks.iter().map(|b| b.to_string()).collect(),
        typical_description: format!(
            "E^l_(r,s,lambda): (r,s) in {} classes of I_({},{}), l in Z, lambda in Q/2Z with lambda != lambda_(r,s), lambda_(u-r,v-s)",
            typical_classes.len(),
            lv.u,
            lv.v
        ),
        typical_classes,
        labels_checked: checked,
        violations,
    }
}

/// A label has nonzero Ext¹ with something only if it is atypical.
pub fn is_atypical_lambda(lv: &Level, lambda: &Rat, r: i64, s: i64) -> Result<bool, AffineError> {
    let lam = reduce_mod2(lambda);
    Ok(reduce_mod2(&lambda_rs(lv, r, s)?) == lam || reduce_mod2(&lambda_rs(lv, lv.u - r, lv.v - s)?) == lam)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levels() -> Vec<Level> {
        [(3, 2), (5, 2), (4, 3), (5, 3), (7, 5)].iter().map(|&(u, v)| Level::new(u, v).unwrap()).collect()
    }

    #[test]
    fn level_validation() {
        assert!(Level::new(4, 2).is_err());
        assert!(Level::new(1, 2).is_err());
        assert_eq!(Level::new(3, 2).unwrap().k(), rat(-1, 2));
    }

    #[test]
    fn lambda_and_delta_values() {
        let a = Level::new(3, 2).unwrap();
        let b = Level::new(5, 3).unwrap();
        assert_eq!(lambda_rs(&a, 1, 0).unwrap(), rat_int(0));
        assert_eq!(lambda_rs(&a, 1, 1).unwrap(), rat(-3, 2));
        assert_eq!(lambda_rs(&b, 2, 1).unwrap(), rat(-2, 3));
        assert_eq!(delta_rs(&a, 1, 1).unwrap(), rat(-1, 8));
        assert_eq!(delta_rs(&b, 1, 0).unwrap(), rat_int(0));
        assert!(lambda_rs(&a, 3, 0).is_err());
        assert!(delta_rs(&a, 1, 2).is_err());
    }

    #[test]
    fn delta_symmetry_and_collisions() {
        for lv in levels() {
            for r in 1..lv.u {
                for s in 1..lv.v {
                    assert_eq!(delta_rs(&lv, r, s).unwrap(), delta_rs(&lv, lv.u - r, lv.v - s).unwrap());
                }
            }
            assert!(delta_collision_check(&lv), "{lv}");
        }
    }

    #[test]
    fn twist_identifications() {
        let lv = Level::new(5, 3).unwrap();
        for r in 1..lv.u {
            assert_eq!(sigma(&lv, &SimpleLabel::Irr { r }, 1).unwrap(), SimpleLabel::dplus(lv.u - r, lv.v - 1, 0));
            assert_eq!(
                sigma(&lv, &SimpleLabel::Irr { r }, -1).unwrap(),
                normalize(&lv, &SimpleLabel::dminus(lv.u - r, lv.v - 1, 0)).unwrap()
            );
            for s in 1..=lv.v - 2 {
                assert_eq!(
                    sigma(&lv, &SimpleLabel::dplus(r, s, 0), -1).unwrap(),
                    normalize(&lv, &SimpleLabel::dminus(lv.u - r, lv.v - 1 - s, 0)).unwrap()
                );
            }
        }
    }

    #[test]
    fn normalize_is_idempotent_and_conjugation_involutive() {
        for lv in levels() {
            for r in 1..lv.u {
                for s in 1..lv.v {
                    for ell in -3..=3 {
                        for x in [SimpleLabel::dplus(r, s, ell), SimpleLabel::dminus(r, s, ell)] {
                            let y = normalize(&lv, &x).unwrap();
                            assert_eq!(normalize(&lv, &y).unwrap(), y);
                            assert_eq!(conjugate(&lv, &conjugate(&lv, &y).unwrap()).unwrap(), y);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn typical_labels() {
        let lv = Level::new(3, 2).unwrap();
        // λ_{1,1} = −3/2 ≡ 1/2, λ_{2,1} = −1/2 ≡ 3/2
        assert!(normalize(&lv, &SimpleLabel::Etyp { lambda: rat(1, 2), r: 1, s: 1, ell: 0 }).is_err());
        assert!(normalize(&lv, &SimpleLabel::Etyp { lambda: rat(3, 2), r: 2, s: 1, ell: 0 }).is_err());
        let e = normalize(&lv, &SimpleLabel::Etyp { lambda: rat(7, 3), r: 2, s: 1, ell: 4 }).unwrap();
        assert_eq!(e, SimpleLabel::Etyp { lambda: rat(1, 3), r: 1, s: 1, ell: 4 });
        assert!(matches!(block_of(&lv, &e).unwrap(), BlockId::Typical { .. }));
        assert_eq!(ext1_simples(&lv, &e, &SimpleLabel::dplus(1, 1, 4)).unwrap(), 0);
        assert!(block_chain(&lv, &block_of(&lv, &e).unwrap(), 0, 3).is_err());
    }

    #[test]
    fn block_assignment() {
        for lv in levels() {
            for r in 1..lv.u {
                assert_eq!(block_of(&lv, &SimpleLabel::dplus(r, lv.v - 1, 0)).unwrap(), BlockId::Atypical { r, n: 0 });
                assert_eq!(
                    block_of(&lv, &SimpleLabel::Irr { r: lv.u - r }).unwrap(),
                    BlockId::Atypical { r, n: -1 }
                );
                for n in 0..=lv.v - 2 {
                    assert_eq!(
                        block_of(&lv, &SimpleLabel::dplus(r, lv.v - 1 - n, 0)).unwrap(),
                        BlockId::Atypical { r, n }
                    );
                }
            }
        }
    }

    #[test]
    fn chain_matches_displayed_sequence() {
        let lv = Level::new(7, 5).unwrap();
        let r = 2;
        let chain = block_chain(&lv, &BlockId::Atypical { r, n: 0 }, 0, lv.v - 1).unwrap();
        let mut expected: Vec<SimpleLabel> = (0..=lv.v - 2).map(|j| SimpleLabel::dplus(r, lv.v - 1 - j, -j)).collect();
        expected.push(SimpleLabel::dplus(lv.u - r, lv.v - 1, -lv.v));
        assert_eq!(chain.into_iter().map(|(_, x)| x).collect::<Vec<_>>(), expected);
        let lv2 = Level::new(3, 2).unwrap();
        assert_eq!(chain_member(&lv2, 1, 0, 1), SimpleLabel::dplus(2, 1, -2));
        assert_eq!(chain_member(&lv2, 1, 0, -1), SimpleLabel::dplus(2, 1, 2));
    }

    #[test]
    fn chain_ext_graph_is_a_path() {
        for lv in levels() {
            for b in atypical_blocks(&lv) {
                let chain = block_chain(&lv, &b, -6, 6).unwrap();
                for (i, x) in &chain {
                    assert_eq!(block_of(&lv, x).unwrap(), b);
                    for (j, y) in &chain {
                        let want = usize::from((i - j).abs() == 1);
                        assert_eq!(ext1_simples(&lv, x, y).unwrap(), want, "{lv} {b} {x} {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibles_have_no_mutual_extensions() {
        let lv = Level::new(5, 3).unwrap();
        for r in 1..lv.u {
            for r2 in 1..lv.u {
                assert_eq!(ext1_simples(&lv, &SimpleLabel::Irr { r }, &SimpleLabel::Irr { r: r2 }).unwrap(), 0);
            }
        }
    }

    #[test]
    fn census_counts() {
        assert_eq!(enumerate_blocks(&Level::new(3, 2).unwrap(), 8).atypical_blocks.len(), 4);
        assert_eq!(enumerate_blocks(&Level::new(5, 3).unwrap(), 8).atypical_blocks.len(), 12);
        for lv in levels() {
            assert!(enumerate_blocks(&lv, 8).passed(), "{lv}");
        }
    }

    #[test]
    fn label_round_trips() {
        let lv = Level::new(5, 3).unwrap();
        for text in ["L(2)", "D+(1,2,-3)", "D-(4,1,5)", "E(1/3,2,1,7)"] {
            let x: SimpleLabel = text.parse().unwrap();
            assert_eq!(x.to_string(), text);
            assert_eq!(SimpleLabel::from_json(&x.to_json()).unwrap(), x);
            normalize(&lv, &x).unwrap();
        }
        assert!("Q(1)".parse::<SimpleLabel>().is_err());
    }
}
