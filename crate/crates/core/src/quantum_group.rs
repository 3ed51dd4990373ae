//! Weight modules of the unrolled small quantum group of sl₂ at `q = ζ_{2r}`,
//! with `K` acting as `q^H`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::cyclotomic::{qint_rational, rat_int, CycNum, Rat};
use crate::ext_engine::{
    build_diamond, check_relations, ext1, extend, is_indecomposable, is_isomorphic, radical_filtration,
    AlgebraPresentation, EngineError, ModuleRep, SimpleInventory, Term, WeightFn,
};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::zigzag::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QgError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("index i = {i} outside 0..={max}")]
    IndexRange { i: i64, max: i64 },
    #[error("weight {0} is not in the lattice of the parameters")]
    Denominator(Rat),
    #[error("twist {0} is not a multiple of r")]
    Twist(Rat),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QGParams {
    /// `q = ζ_{2r}`.
    pub r: u64,
    /// Weights live in `(1/N)·Z`.
    pub denominator: u64,
}

impl QGParams {
    pub fn new(r: u64, denominator: u64) -> Result<Self, QgError> {
        if r < 2 || denominator < 1 {
            return Err(QgError::Params(format!("r = {r}, N = {denominator}")));
        }
        Ok(QGParams { r, denominator })
    }

    /// Order of the cyclotomic field holding every `q^h`.
    pub fn field_order(&self) -> u64 {
        2 * self.r * self.denominator
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QGModuleLabel {
    Simple { i: i64, beta: Rat },
    Typical { alpha: Rat },
    Projective { i: i64, beta: Rat },
}

impl fmt::Display for QGModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QGModuleLabel::Simple { i, beta } => write!(f, "S({i},{beta})"),
            QGModuleLabel::Typical { alpha } => write!(f, "V({alpha})"),
            QGModuleLabel::Projective { i, beta } => write!(f, "P({i},{beta})"),
        }
    }
}

fn is_int_multiple(x: &Rat, r: u64) -> bool {
    x.is_integer() && x.to_integer().is_multiple_of(&BigInt::from(r))
}

/// Generators `E` (+2), `F` (−2), `H`; relations `[H,E] = 2E`, `[H,F] = −2F`,
/// `[E,F] = [H]_q`, `E^r = F^r = 0`.
pub fn uqh_presentation(p: &QGParams) -> AlgebraPresentation<CycNum> {
    let mut alg = AlgebraPresentation::new(format!("u_q^H(sl2), r = {}", p.r));
    let e = alg.add_generator("E", rat_int(2), false);
    let f = alg.add_generator("F", rat_int(-2), false);
    let h = alg.add_generator("H", rat_int(0), true);
    let one = CycNum::one();
    let m_one = CycNum::from_int(-1);
    alg.add_relation(
        "HE",
        vec![
            Term::word(one.clone(), vec![e, h]),
            Term::word(m_one.clone(), vec![h, e]),
            Term::word(CycNum::from_int(-2), vec![e]),
        ],
    );
    alg.add_relation(
        "HF",
        vec![Term::word(one.clone(), vec![f, h]), Term::word(m_one.clone(), vec![h, f]), Term::word(CycNum::from_int(2), vec![f])],
    );
    let (r, den) = (p.r, p.denominator);
    let cache: Arc<Mutex<HashMap<Rat, CycNum>>> = Arc::new(Mutex::new(HashMap::new()));
    let bracket: WeightFn<CycNum> = Arc::new(move |w: &Rat| {
        if let Some(v) = cache.lock().expect("cache lock").get(w) {
            return v.clone();
        }
        let v = qint_rational(w, r, den).expect("module weights lie in the parameter lattice");
        cache.lock().expect("cache lock").insert(w.clone(), v.clone());
        v
    });
    alg.add_relation(
        "EF",
        vec![
            Term::word(one.clone(), vec![f, e]),
            Term::word(m_one.clone(), vec![e, f]),
            Term::weighted(m_one, bracket, vec![]),
        ],
    );
    alg.add_relation("E^r", vec![Term::word(one.clone(), vec![e; r as usize])]);
    alg.add_relation("F^r", vec![Term::word(one, vec![f; r as usize])]);
    alg
}

/// Calculator for one choice of parameters.
pub struct QuantumGroup {
    pub params: QGParams,
    alg: AlgebraPresentation<CycNum>,
}

impl QuantumGroup {
    pub fn new(params: QGParams) -> Self {
        QuantumGroup { alg: uqh_presentation(&params), params }
    }

    pub fn presentation(&self) -> &AlgebraPresentation<CycNum> {
        &self.alg
    }

    fn qint(&self, x: &Rat) -> CycNum {
        qint_rational(x, self.params.r, self.params.denominator).expect("weight in lattice")
    }

    fn check_lattice(&self, x: &Rat) -> Result<(), QgError> {
        let scaled = x * Rat::from_integer(BigInt::from(self.params.denominator));
        if scaled.is_integer() {
            Ok(())
        } else {
            Err(QgError::Denominator(x.clone()))
        }
    }

    /// Module with basis `v_0 … v_{d−1}` of weights `λ − 2j`, `F v_j = v_{j+1}`,
    /// `E v_j = [j]_q [λ − j + 1]_q v_{j−1}`.
    fn highest_weight(&self, lambda: &Rat, d: usize) -> ModuleRep<CycNum> {
        let weights: Vec<Rat> = (0..d).map(|j| lambda - rat_int(2 * j as i64)).collect();
        let mut e = Matrix::zeros(d, d);
        let mut f = Matrix::zeros(d, d);
        for j in 0..d {
            if j + 1 < d {
                f.set(j + 1, j, CycNum::one());
            }
            if j > 0 {
                let jj = rat_int(j as i64);
                let c = self.qint(&jj).mul(&self.qint(&(lambda - &jj + rat_int(1))));
                e.set(j - 1, j, c);
            }
        }
        let h = Matrix::diagonal(&weights.iter().map(<CycNum as Field>::from_rat).collect::<Vec<_>>());
        ModuleRep::from_parts(weights, vec![e, f, h])
    }

    fn check_index(&self, i: i64) -> Result<(), QgError> {
        let max = self.params.r as i64 - 2;
        if i < 0 || i > max {
            return Err(QgError::IndexRange { i, max });
        }
        Ok(())
    }

    /// `S_i ⊗ C_β`: dimension `i + 1`, top weight `β + i`.
    pub fn simple_module(&self, i: i64, beta: &Rat) -> Result<ModuleRep<CycNum>, QgError> {
        self.check_index(i)?;
        if !is_int_multiple(beta, self.params.r) {
            return Err(QgError::Twist(beta.clone()));
        }
        Ok(self.highest_weight(&(beta + rat_int(i)), i as usize + 1))
    }

    /// `V_α`: dimension `r`, top weight `α + r − 1`.
    pub fn typical_module(&self, alpha: &Rat) -> Result<ModuleRep<CycNum>, QgError> {
        self.check_lattice(alpha)?;
        Ok(self.highest_weight(&(alpha + rat_int(self.params.r as i64 - 1)), self.params.r as usize))
    }

    /// `true` iff `V_α` is simple and projective, i.e. `α ∉ Z∖rZ`.
    pub fn typical_is_simple(&self, alpha: &Rat) -> bool {
        !alpha.is_integer() || is_int_multiple(alpha, self.params.r)
    }

    /// `P_i ⊗ C_β` glued from `S_i ⊗ C_β` and the two neighbours `S_{r−i−2} ⊗ C_{β∓r}`.
    pub fn projective_module(&self, i: i64, beta: &Rat) -> Result<ModuleRep<CycNum>, QgError> {
        let x = self.simple_module(i, beta)?;
        let r = rat_int(self.params.r as i64);
        let j = self.params.r as i64 - i - 2;
        let b = self.simple_module(j, &(beta - &r))?;
        let c = self.simple_module(j, &(beta + &r))?;
        Ok(build_diamond(&self.alg, &x, &b, &c)?)
    }

    pub fn module(&self, label: &QGModuleLabel) -> Result<ModuleRep<CycNum>, QgError> {
        match label {
            QGModuleLabel::Simple { i, beta } => self.simple_module(*i, beta),
            QGModuleLabel::Typical { alpha } => self.typical_module(alpha),
            QGModuleLabel::Projective { i, beta } => self.projective_module(*i, beta),
        }
    }

    /// Label of `L_n` in the block of `S_i`.
    pub fn block_label(&self, i: i64, n: i64) -> QGModuleLabel {
        let r = self.params.r as i64;
        let idx = if n.rem_euclid(2) == 0 { i } else { r - i - 2 };
        QGModuleLabel::Simple { i: idx, beta: rat_int(n * r) }
    }

    /// The simples `L_n`, `|n| ≤ w`, of the block containing `S_i`.
    pub fn atypical_inventory(&self, i: i64, w: i64) -> Result<Vec<(i64, ModuleRep<CycNum>)>, QgError> {
        self.check_index(i)?;
        (-w..=w).map(|n| Ok((n, self.module(&self.block_label(i, n))?))).collect()
    }

    /// `dim Ext¹(L_n, L_m)` for `|n|, |m| ≤ w`.
    pub fn ext_table(&self, i: i64, w: i64) -> Result<BTreeMap<(i64, i64), usize>, QgError> {
        let inv = self.atypical_inventory(i, w)?;
        let pairs: Vec<(usize, usize)> =
            (0..inv.len()).flat_map(|a| (0..inv.len()).map(move |b| (a, b))).collect();
        Ok(pairs
            .par_iter()
            .map(|&(a, b)| ((inv[a].0, inv[b].0), ext1(&self.alg, &inv[a].1, &inv[b].1).dim))
            .collect())
    }

    /// `E^±_n`: the nonsplit extension of `L_{n±1}` by `L_n`.
    pub fn e_module(&self, i: i64, n: i64, plus: bool) -> Result<ModuleRep<CycNum>, QgError> {
        let sub = self.module(&self.block_label(i, n))?;
        let quot = self.module(&self.block_label(i, if plus { n + 1 } else { n - 1 }))?;
        let e = ext1(&self.alg, &quot, &sub);
        let c = e
            .cocycles
            .first()
            .ok_or_else(|| EngineError::Hypothesis(format!("Ext¹(L_{}, L_{n}) vanishes", if plus { n + 1 } else { n - 1 })))?;
        Ok(extend(&self.alg, &quot, &sub, c)?)
    }

    /// `P_n` of the block containing `S_i`.
    pub fn block_projective(&self, i: i64, n: i64) -> Result<ModuleRep<CycNum>, QgError> {
        match self.block_label(i, n) {
            QGModuleLabel::Simple { i, beta } => self.projective_module(i, &beta),
            _ => unreachable!("block labels are simple"),
        }
    }

    pub fn check(&self, m: &ModuleRep<CycNum>) -> Result<bool, QgError> {
        Ok(check_relations(&self.alg, m)?)
    }
}

/// Every simple weight module meeting a given weight: `S_i ⊗ C_β` and simple `V_α`.
pub struct QgInventory<'a> {
    pub qg: &'a QuantumGroup,
}

impl SimpleInventory<CycNum> for QgInventory<'_> {
    fn simples_with_weight(&self, w: &Rat) -> Vec<(String, ModuleRep<CycNum>)> {
        let qg = self.qg;
        let r = qg.params.r as i64;
        let mut out = Vec::new();
        for i in 0..=r - 2 {
            for j in 0..=i {
                let beta = w - rat_int(i - 2 * j);
                if is_int_multiple(&beta, qg.params.r) {
                    let label = QGModuleLabel::Simple { i, beta: beta.clone() };
                    out.push((label.to_string(), qg.simple_module(i, &beta).expect("valid simple")));
                }
            }
        }
        for j in 0..r {
            let alpha = w - rat_int(r - 1 - 2 * j);
            if qg.typical_is_simple(&alpha) && qg.check_lattice(&alpha).is_ok() {
                let label = QGModuleLabel::Typical { alpha: alpha.clone() };
                out.push((label.to_string(), qg.typical_module(&alpha).expect("valid typical")));
            }
        }
        out
    }
}

/// Parses `S(i,β)`, `V(α)` or `P(i,β)` with rational entries like `1/2`.
pub fn parse_label(s: &str) -> Option<QGModuleLabel> {
    let t = s.trim();
    let open = t.find('(')?;
    let inner = t[open + 1..].strip_suffix(')')?;
    let args: Vec<Rat> = inner.split(',').map(|x| x.trim().parse::<Rat>().ok()).collect::<Option<_>>()?;
    let int = |x: &Rat| x.is_integer().then(|| x.to_integer().to_i64()).flatten();
    match (&t[..open], args.as_slice()) {
        ("S", [i, b]) => Some(QGModuleLabel::Simple { i: int(i)?, beta: b.clone() }),
        ("P", [i, b]) => Some(QGModuleLabel::Projective { i: int(i)?, beta: b.clone() }),
        ("V", [a]) => Some(QGModuleLabel::Typical { alpha: a.clone() }),
        _ => None,
    }
}

impl QuantumGroup {
    /// Checks the block of `S_i` on `|n| ≤ w`: relations and dimensions of the
    /// simple, typical and projective modules, the Loewy diamond of `P_n`, the
    /// Ext¹ table of the simples on `|n| ≤ w − 2`, and the vanishing and
    /// nonvanishing statements for `E^±_n`.
    pub fn verify_block(&self, i: i64, w: i64) -> Result<Report, QgError> {
        self.check_index(i)?;
        if w < 3 {
            return Err(QgError::Params(format!("window {w} leaves no interior")));
        }
        let r = self.params.r as i64;
        let alg = &self.alg;
        let inner = w - 2;
        let mut rep = Report::default();
        let simples: BTreeMap<i64, ModuleRep<CycNum>> =
            self.atypical_inventory(i, w)?.into_iter().collect();
        for (n, s) in &simples {
            rep.record("relations", self.block_label(i, *n), "S", 1, usize::from(self.check(s)?));
        }
        let den = self.params.denominator as i64;
        for k in -2 * den..=(r + 2) * den {
            let alpha = Rat::new(k.into(), den.into());
            let v = self.typical_module(&alpha)?;
            let label = QGModuleLabel::Typical { alpha: alpha.clone() };
            rep.record("relations", &label, "V", 1, usize::from(self.check(&v)?));
            rep.record("dim", &label, "V", r as usize, v.dim());
            let layers = radical_filtration(alg, &v, &QgInventory { qg: self })?;
            let expected = if self.typical_is_simple(&alpha) { 1 } else { 2 };
            rep.record("loewy length", &label, "V", expected, layers.len());
        }
        let inv = QgInventory { qg: self };
        let sorted = |mut v: Vec<String>| {
            v.sort();
            v
        };
        let pairs: Vec<(i64, i64)> =
            (-inner..=inner).flat_map(|n| (-inner..=inner).map(move |m| (n, m))).collect();
        let table: Vec<((i64, i64), usize)> =
            pairs.par_iter().map(|&(n, m)| ((n, m), ext1(alg, &simples[&n], &simples[&m]).dim)).collect();
        for ((n, m), d) in table {
            rep.record("QG1", self.block_label(i, n), self.block_label(i, m), usize::from((n - m).abs() == 1), d);
        }
        let label = |n: i64| self.block_label(i, n).to_string();
        let ep = |n: i64| self.e_module(i, n, true);
        let em = |n: i64| self.e_module(i, n, false);
        for n in -inner + 1..=inner - 1 {
            let l = &simples[&n];
            let p = self.block_projective(i, n)?;
            let pl = format!("P_{n}");
            rep.record("relations", &pl, "P", 1, usize::from(self.check(&p)?));
            rep.record("dim", &pl, "P", 2 * r as usize, p.dim());
            rep.record("indecomposable", &pl, "P", 1, usize::from(is_indecomposable(alg, &p)));
            let layers: Vec<Vec<String>> =
                radical_filtration(alg, &p, &inv)?.into_iter().map(sorted).collect();
            let diamond = vec![vec![label(n)], sorted(vec![label(n - 1), label(n + 1)]), vec![label(n)]];
            rep.record("loewy", &pl, "diamond", 1, usize::from(layers == diamond));
            for m in [n - 1, n, n + 1] {
                rep.record("projective", &pl, label(m), 0, ext1(alg, &p, &simples[&m]).dim);
                rep.record("projective", label(m), &pl, 0, ext1(alg, &simples[&m], &p).dim);
            }
            let zero = |item: &str, a: &ModuleRep<CycNum>, b: &ModuleRep<CycNum>, an: String, bn: String| {
                (item.to_string(), an, bn, ext1(alg, a, b).dim)
            };
            let checks = vec![
                zero("QG2", &ep(n + 1)?, l, format!("E+_{}", n + 1), label(n)),
                zero("QG2", l, &ep(n - 2)?, label(n), format!("E+_{}", n - 2)),
                zero("QG2", &em(n - 1)?, l, format!("E-_{}", n - 1), label(n)),
                zero("QG2", l, &em(n + 2)?, label(n), format!("E-_{}", n + 2)),
                zero("QG3", &ep(n - 1)?, l, format!("E+_{}", n - 1), label(n)),
                zero("QG3", l, &ep(n)?, label(n), format!("E+_{n}")),
                zero("QG3", &em(n + 1)?, l, format!("E-_{}", n + 1), label(n)),
                zero("QG3", l, &em(n)?, label(n), format!("E-_{n}")),
            ];
            for (item, a, b, d) in checks {
                rep.record(&item, a, b, 0, d);
            }
            let plus = ext1(alg, &ep(n)?, &ep(n + 1)?);
            let minus = ext1(alg, &em(n)?, &em(n - 1)?);
            rep.record("QG4", format!("E+_{n}"), format!("E+_{}", n + 1), 1, usize::from(plus.dim > 0));
            rep.record("QG4", format!("E-_{n}"), format!("E-_{}", n - 1), 1, usize::from(minus.dim > 0));
            // Middle terms of the two sequences E^±_n → P_n → E^±_{n∓1}.
            for (quot, sub, name) in [(ep(n - 1)?, ep(n)?, "E+"), (em(n + 1)?, em(n)?, "E-")] {
                let e = ext1(alg, &quot, &sub);
                let iso = match e.cocycles.first() {
                    Some(c) => is_isomorphic(alg, &extend(alg, &quot, &sub, c)?, &p),
                    None => false,
                };
                rep.record("sequence", format!("{name} sequence"), &pl, 1, usize::from(iso));
            }
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rat;

    #[test]
    fn small_simple_module() {
        let qg = QuantumGroup::new(QGParams::new(3, 2).unwrap());
        let s = qg.simple_module(1, &rat_int(0)).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(qg.check(&s).unwrap());
        assert!(matches!(qg.simple_module(1, &rat_int(1)), Err(QgError::Twist(_))));
        assert!(matches!(qg.simple_module(2, &rat_int(0)), Err(QgError::IndexRange { .. })));
    }

    #[test]
    fn typical_exact_sequence() {
        let qg = QuantumGroup::new(QGParams::new(3, 2).unwrap());
        let v = qg.typical_module(&rat_int(1)).unwrap();
        let layers = radical_filtration(qg.presentation(), &v, &QgInventory { qg: &qg }).unwrap();
        assert_eq!(layers, vec![vec!["S(0,3)".to_string()], vec!["S(1,0)".to_string()]]);
        let half = qg.typical_module(&rat(1, 2)).unwrap();
        assert_eq!(radical_filtration(qg.presentation(), &half, &QgInventory { qg: &qg }).unwrap().len(), 1);
    }

    #[test]
    fn block_labels_alternate() {
        let qg = QuantumGroup::new(QGParams::new(3, 2).unwrap());
        assert_eq!(qg.block_label(0, 0).to_string(), "S(0,0)");
        assert_eq!(qg.block_label(0, 1).to_string(), "S(1,3)");
        assert_eq!(parse_label("S(1,3)"), Some(qg.block_label(0, 1)));
    }

    #[test]
    fn block_suite_r2() {
        let qg = QuantumGroup::new(QGParams::new(2, 2).unwrap());
        let rep = qg.verify_block(0, 4).unwrap();
        assert!(rep.passed(), "{:?}", rep.mismatches);
        assert!(rep.checks > 100);
    }
}
