//! Ext¹ tables of the atypical block computed three ways (label rules, the
//! zigzag model, the quantum group) and compared entry by entry.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::affine_labels::{block_chain, ext1_simples, AffineError, BlockId, Level};
use crate::cyclotomic::CycNum;
use crate::ext_engine::{ext1, radical_filtration, LoewyLayer, ModuleRep};
use crate::quantum_group::{QGParams, QgError, QgInventory, QuantumGroup};
use crate::zigzag::{Report, Window, Zigzag, ZigzagError, ZigzagName, PAD};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossError {
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
    #[error(transparent)]
    Qg(#[from] QgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    AffineRules,
    Zigzag,
    QuantumGroup,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::AffineRules => "affine-rules",
            Provenance::Zigzag => "zigzag",
            Provenance::QuantumGroup => "quantum-group",
        })
    }
}

/// Which objects enter a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inventory {
    /// `L_n` only.
    Simples,
    /// `L_n`, `E^±_n` and `P_n`.
    Full,
}

impl Inventory {
    /// Objects whose support lies in `[−w, w]`.
    pub fn names(self, w: i64) -> Vec<ZigzagName> {
        let mut out: Vec<ZigzagName> = (-w..=w).map(ZigzagName::L).collect();
        if self == Inventory::Full {
            for n in -w..=w {
                out.extend([ZigzagName::Eplus(n), ZigzagName::Eminus(n), ZigzagName::P(n)]);
            }
            out.retain(|x| x.support().is_some_and(|(a, b)| a >= -w && b <= w));
        }
        out
    }
}

/// `entries[(X, Y)] = dim Ext¹(X, Y)`, extensions `0 → Y → E → X → 0`.
#[derive(Clone, Debug)]
pub struct ExtTable {
    /// Every object has support in `[−window, window]`.
    pub window: i64,
    pub provenance: Provenance,
    pub entries: BTreeMap<(ZigzagName, ZigzagName), usize>,
}

impl ExtTable {
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((x, y), d)| json!({"lhs": x.to_string(), "rhs": y.to_string(), "dim": d}))
            .collect();
        json!({"window": self.window, "provenance": self.provenance, "entries": entries})
    }
}

fn pairs(names: &[ZigzagName]) -> Vec<(ZigzagName, ZigzagName)> {
    names.iter().flat_map(|&x| names.iter().map(move |&y| (x, y))).collect()
}

/// Simple-by-simple table from the label rules along the chain of an atypical block.
pub fn table_affine(lv: &Level, block: &BlockId, window: i64) -> Result<ExtTable, CrossError> {
    let chain: HashMap<i64, _> = block_chain(lv, block, -window, window)?.into_iter().collect();
    let names = Inventory::Simples.names(window);
    let mut entries = BTreeMap::new();
    for (x, y) in pairs(&names) {
        let (ZigzagName::L(a), ZigzagName::L(b)) = (x, y) else { unreachable!() };
        entries.insert((x, y), ext1_simples(lv, &chain[&a], &chain[&b])?);
    }
    Ok(ExtTable { window, provenance: Provenance::AffineRules, entries })
}

/// The zigzag window that leaves exactly the padding around `[−w, w]`.
pub fn zigzag_window(w: i64) -> Window {
    Window::new(-w - PAD, w + PAD)
}

pub fn table_zigzag(window: i64, inv: Inventory) -> Result<ExtTable, CrossError> {
    let zz = Zigzag::new(zigzag_window(window));
    let names = inv.names(window);
    let built: HashMap<ZigzagName, _> =
        names.iter().map(|&x| Ok((x, zz.build(x)?))).collect::<Result<_, ZigzagError>>()?;
    let entries = pairs(&names)
        .par_iter()
        .map(|&(x, y)| Ok(((x, y), zz.ext1_rep(&built[&x], &built[&y])?)))
        .collect::<Result<BTreeMap<_, _>, ZigzagError>>()?;
    Ok(ExtTable { window, provenance: Provenance::Zigzag, entries })
}

/// The object of the quantum-group block of `S_i` matching a zigzag name.
pub fn qg_object(qg: &QuantumGroup, i: i64, name: ZigzagName) -> Result<ModuleRep<CycNum>, CrossError> {
    Ok(match name {
        ZigzagName::L(n) => qg.module(&qg.block_label(i, n))?,
        ZigzagName::Eplus(n) => qg.e_module(i, n, true)?,
        ZigzagName::Eminus(n) => qg.e_module(i, n, false)?,
        ZigzagName::P(n) => qg.block_projective(i, n)?,
        other => return Err(CrossError::Qg(QgError::Params(format!("no quantum-group object named {other}")))),
    })
}

pub fn table_qg(p: QGParams, i: i64, window: i64, inv: Inventory) -> Result<ExtTable, CrossError> {
    let qg = QuantumGroup::new(p);
    let names = inv.names(window);
    let built: HashMap<ZigzagName, ModuleRep<CycNum>> =
        names.iter().map(|&x| Ok((x, qg_object(&qg, i, x)?))).collect::<Result<_, CrossError>>()?;
    let alg = qg.presentation();
    let entries = pairs(&names)
        .par_iter()
        .map(|&(x, y)| ((x, y), ext1(alg, &built[&x], &built[&y]).dim))
        .collect();
    Ok(ExtTable { window, provenance: Provenance::QuantumGroup, entries })
}

/// Index map `n ↦ ±n + shift`; the reflection exchanges `E^+_n` and `E^−_{−n}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Correspondence {
    pub shift: i64,
    pub reflect: bool,
}

impl Correspondence {
    pub fn apply(&self, x: ZigzagName) -> ZigzagName {
        let f = |n: i64| if self.reflect { -n + self.shift } else { n + self.shift };
        match x {
            ZigzagName::L(n) => ZigzagName::L(f(n)),
            ZigzagName::P(n) => ZigzagName::P(f(n)),
            ZigzagName::Eplus(n) if self.reflect => ZigzagName::Eminus(f(n)),
            ZigzagName::Eminus(n) if self.reflect => ZigzagName::Eplus(f(n)),
            ZigzagName::Eplus(n) => ZigzagName::Eplus(f(n)),
            ZigzagName::Eminus(n) => ZigzagName::Eminus(f(n)),
            // Reversing a string of odd length swaps socle and top positions.
            ZigzagName::Lam(n, m) if self.reflect && m % 2 != 0 => ZigzagName::V(f(n + m), m),
            ZigzagName::V(n, m) if self.reflect && m % 2 != 0 => ZigzagName::Lam(f(n + m), m),
            ZigzagName::Lam(n, m) if self.reflect => ZigzagName::Lam(f(n + m), m),
            ZigzagName::V(n, m) if self.reflect => ZigzagName::V(f(n + m), m),
            ZigzagName::Lam(n, m) => ZigzagName::Lam(f(n), m),
            ZigzagName::V(n, m) => ZigzagName::V(f(n), m),
        }
    }
}

/// Disagreements between `a` (renamed through `corr`) and `b` on their common entries.
pub fn diff_tables(a: &ExtTable, b: &ExtTable, corr: Correspondence) -> Report {
    let mut rep = Report::default();
    let item = format!("{} vs {}", a.provenance, b.provenance);
    for ((x, y), &got_a) in &a.entries {
        let key = (corr.apply(*x), corr.apply(*y));
        if let Some(&got_b) = b.entries.get(&key) {
            rep.record(&item, key.0, key.1, got_a, got_b);
        }
    }
    rep
}

/// The correspondence with the most agreeing common entries; ties go to the
/// smallest shift, unreflected first.
pub fn align(a: &ExtTable, b: &ExtTable) -> Correspondence {
    let w = a.window + b.window;
    let mut best = (Correspondence::default(), i64::MIN);
    for reflect in [false, true] {
        for shift in 0..=2 * w {
            let shift = if shift % 2 == 0 { shift / 2 } else { -(shift + 1) / 2 };
            let corr = Correspondence { shift, reflect };
            let rep = diff_tables(a, b, corr);
            let score = rep.checks as i64 - 2 * rep.mismatches.len() as i64;
            if score > best.1 {
                best = (corr, score);
            }
        }
    }
    best.0
}

/// Loewy layers of `P_n` in the zigzag model and in the quantum-group block of
/// `S_i`, both written as multisets of `L_k`.
pub fn compare_projective_loewy(p: QGParams, i: i64, n: i64) -> Result<Report, CrossError> {
    let zz = Zigzag::new(Window::new(n - 1 - PAD, n + 1 + PAD));
    let zl = zz.loewy(&zz.build(ZigzagName::P(n))?)?;
    let qg = QuantumGroup::new(p);
    let pm = qg.block_projective(i, n)?;
    let ql = radical_filtration(qg.presentation(), &pm, &QgInventory { qg: &qg })
        .map_err(|e| CrossError::Qg(QgError::Engine(e)))?;
    let names: HashMap<String, String> = (n - 2..=n + 2)
        .map(|k| (qg.block_label(i, k).to_string(), ZigzagName::L(k).to_string()))
        .collect();
    let rename = |layers: Vec<LoewyLayer>| -> Vec<Vec<String>> {
        layers
            .into_iter()
            .map(|l| {
                let mut l: Vec<String> = l.into_iter().map(|x| names.get(&x).cloned().unwrap_or(x)).collect();
                l.sort();
                l
            })
            .collect()
    };
    let sorted = |layers: Vec<LoewyLayer>| -> Vec<Vec<String>> {
        layers
            .into_iter()
            .map(|mut l| {
                l.sort();
                l
            })
            .collect()
    };
    let (zl, ql) = (sorted(zl), rename(ql));
    let mut rep = Report::default();
    rep.record("loewy layers", ZigzagName::P(n), "count", zl.len(), ql.len());
    for (k, (a, b)) in zl.iter().zip(&ql).enumerate() {
        rep.record("loewy", ZigzagName::P(n), format!("layer {k}: {a:?} vs {b:?}"), 1, usize::from(a == b));
    }
    Ok(rep)
}

/// Flips one entry; used to check that the comparison can fail.
pub fn corrupt(t: &ExtTable, key: &(ZigzagName, ZigzagName)) -> ExtTable {
    let mut out = t.clone();
    if let Some(d) = out.entries.get_mut(key) {
        *d = usize::from(*d == 0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ZigzagName::*;

    #[test]
    fn inventory_respects_support() {
        let names = Inventory::Full.names(2);
        assert!(names.contains(&P(1)));
        assert!(!names.contains(&P(2)));
        assert!(names.contains(&Eplus(1)));
        assert!(!names.contains(&Eplus(2)));
        assert!(names.contains(&Eminus(-1)));
        assert!(!names.contains(&Eminus(-2)));
        assert_eq!(Inventory::Simples.names(3).len(), 7);
    }

    #[test]
    fn reflection_is_an_involution() {
        let c = Correspondence { shift: 3, reflect: true };
        for x in [L(2), Eplus(1), Eminus(-4), P(0), Lam(1, 3), V(-2, 2)] {
            assert_eq!(c.apply(c.apply(x)), x);
            assert_eq!(c.apply(x).support().map(|(a, b)| (3 - b, 3 - a)), x.support());
        }
    }

    #[test]
    fn affine_table_entries() {
        let lv = Level::new(3, 2).unwrap();
        let t = table_affine(&lv, &BlockId::Atypical { r: 1, n: 0 }, 3).unwrap();
        assert_eq!(t.entries[&(L(0), L(1))], 1);
        assert_eq!(t.entries[&(L(0), L(2))], 0);
        assert_eq!(t.entries[&(L(1), L(1))], 0);
        let typ = BlockId::Typical { r: 1, s: 1, ell: 0, lambda: crate::cyclotomic::rat(1, 3) };
        assert!(table_affine(&lv, &typ, 3).is_err());
    }

    #[test]
    fn zigzag_and_qg_tables_agree() {
        let z = table_zigzag(2, Inventory::Full).unwrap();
        let q = table_qg(QGParams::new(2, 2).unwrap(), 0, 2, Inventory::Full).unwrap();
        assert_eq!(z.entries[&(L(0), L(1))], 1);
        assert_eq!(q.entries[&(Eplus(0), Eminus(1))], 0);
        assert!(q.entries[&(Eplus(-1), Eplus(0))] >= 1);
        let rep = diff_tables(&z, &q, Correspondence::default());
        assert_eq!(rep.checks, z.entries.len());
        assert!(rep.passed(), "{:?}", rep.mismatches);
        assert_eq!(align(&z, &q), Correspondence::default());
    }

    #[test]
    fn corrupted_table_is_detected() {
        let z = table_zigzag(2, Inventory::Simples).unwrap();
        let bad = corrupt(&z, &(L(0), L(1)));
        let rep = diff_tables(&z, &bad, Correspondence::default());
        assert_eq!(rep.mismatches.len(), 1);
    }

    #[test]
    fn projective_loewy_agrees() {
        for r in [2, 3] {
            let rep = compare_projective_loewy(QGParams::new(r, 2).unwrap(), 0, 1).unwrap();
            assert!(rep.passed(), "{:?}", rep.mismatches);
        }
    }
}
