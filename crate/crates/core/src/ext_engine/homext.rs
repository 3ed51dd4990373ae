use std::collections::HashMap;

use serde_json::{json, Value};

use super::algebra::AlgebraPresentation;
use super::module::{check_relations, ModuleRep};
use super::EngineError;
use crate::field::Field;
use crate::linalg::{Matrix, Span};

/// Basis of the intertwiners `T : M → N` (each `dim N × dim M`).
pub fn hom<F: Field>(alg: &AlgebraPresentation<F>, m: &ModuleRep<F>, n: &ModuleRep<F>) -> Vec<Matrix<F>> {
    let (dm, dn) = (m.dim(), n.dim());
    let vars: Vec<(usize, usize)> = (0..dn)
        .flat_map(|i| (0..dm).map(move |j| (i, j)))
        .filter(|&(i, j)| n.weights()[i] == m.weights()[j])
        .collect();
    if vars.is_empty() {
        return Vec::new();
    }
    let gens: Vec<usize> = alg.non_grading().collect();
    let block = dn * dm;
    let mut sys: Matrix<F> = Matrix::zeros(gens.len() * block, vars.len());
    for (gi, &g) in gens.iter().enumerate() {
        let (ma, na) = (m.action(g), n.action(g));
        for (v, &(i, j)) in vars.iter().enumerate() {
            for b in 0..dm {
                let x = ma.get(j, b);
                if !x.is_zero() {
                    let row = gi * block + i * dm + b;
                    let cur = sys.get(row, v).add(x);
                    sys.set(row, v, cur);
                }
            }
            for a in 0..dn {
                let x = na.get(a, i);
                if !x.is_zero() {
                    let row = gi * block + a * dm + j;
                    let cur = sys.get(row, v).sub(x);
                    sys.set(row, v, cur);
                }
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|sol| {
            let mut t = Matrix::zeros(dn, dm);
            for (v, &(i, j)) in vars.iter().enumerate() {
                t.set(i, j, sol[v].clone());
            }
            t
        })
        .collect()
}

pub fn hom_dim<F: Field>(alg: &AlgebraPresentation<F>, m: &ModuleRep<F>, n: &ModuleRep<F>) -> usize {
    hom(alg, m, n).len()
}

/// Off-diagonal blocks `φ(g)` (`dim N × dim M`) of an extension of `M` by `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle<F> {
    pub blocks: Vec<Matrix<F>>,
}

impl<F: Field> Cocycle<F> {
    pub fn zero(alg: &AlgebraPresentation<F>, m: &ModuleRep<F>, n: &ModuleRep<F>) -> Self {
        Cocycle { blocks: vec![Matrix::zeros(n.dim(), m.dim()); alg.generators.len()] }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn scale(&self, s: &F) -> Self {
        Cocycle { blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Cocycle { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }
}

/// `Ext¹(M, N)` in the weight-module category: extensions `0 → N → E → M → 0`.
#[derive(Clone, Debug)]
pub struct ExtSpace<F> {
    pub dim: usize,
    /// Representatives of a basis of cocycles modulo coboundaries.
    pub cocycles: Vec<Cocycle<F>>,
}

impl<F: Field> ExtSpace<F> {
    pub fn to_json(&self, alg: &AlgebraPresentation<F>) -> Value {
        let cocycles: Vec<Value> = self
            .cocycles
            .iter()
            .map(|c| {
                let mut obj = serde_json::Map::new();
                for (g, b) in c.blocks.iter().enumerate() {
                    if alg.generators[g].grading {
                        continue;
                    }
                    let rows: Vec<Vec<String>> = (0..b.rows())
                        .map(|i| (0..b.cols()).map(|j| b.get(i, j).to_string()).collect())
                        .collect();
                    obj.insert(alg.generators[g].name.clone(), json!(rows));
                }
                Value::Object(obj)
            })
            .collect();
        json!({ "dim": self.dim, "cocycles": cocycles })
    }
}

/// The relation constraints on `φ`, linearized around the split extension.
pub(crate) struct LinearizedSystem<F> {
    /// `(generator, row in N, column in M)` for every free entry of `φ`.
    pub vars: Vec<(usize, usize, usize)>,
    /// One row per `(relation, a, b)` entry of the `dim N × dim M` residual block.
    pub matrix: Matrix<F>,
}

impl<F: Field> LinearizedSystem<F> {
    pub fn index(&self) -> HashMap<(usize, usize, usize), usize> {
        self.vars.iter().enumerate().map(|(k, &v)| (v, k)).collect()
    }

    pub fn to_cocycle(&self, alg: &AlgebraPresentation<F>, dn: usize, dm: usize, x: &[F]) -> Cocycle<F> {
        let mut blocks = vec![Matrix::zeros(dn, dm); alg.generators.len()];
        for (k, &(g, i, j)) in self.vars.iter().enumerate() {
            blocks[g].set(i, j, x[k].clone());
        }
        Cocycle { blocks }
    }

    pub fn to_vector(&self, c: &Cocycle<F>) -> Vec<F> {
        self.vars.iter().map(|&(g, i, j)| c.blocks[g].get(i, j).clone()).collect()
    }
}

pub(crate) fn linearized_system<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
) -> LinearizedSystem<F> {
    let (dm, dn) = (m.dim(), n.dim());
    let mut vars = Vec::new();
    for g in alg.non_grading() {
        let deg = &alg.generators[g].degree;
        for i in 0..dn {
            for j in 0..dm {
                if n.weights()[i] == &m.weights()[j] + deg {
                    vars.push((g, i, j));
                }
            }
        }
    }
    let block = dn * dm;
    let mut matrix = Matrix::zeros(alg.relations.len() * block, vars.len());
    if vars.is_empty() {
        return LinearizedSystem { vars, matrix };
    }
    let mut by_gen: Vec<Vec<usize>> = vec![Vec::new(); alg.generators.len()];
    for (k, &(g, _, _)) in vars.iter().enumerate() {
        by_gen[g].push(k);
    }
    for (ri, rel) in alg.relations.iter().enumerate() {
        for t in &rel.terms {
            let len = t.word.len();
            // right[p] = M(g_{p-1}) ⋯ M(g_0) · D_M, left[p] = N(g_{k-1}) ⋯ N(g_{p+1}).
            let mut right = Vec::with_capacity(len);
            let mut acc = match &t.weight_factor {
                Some(f) => Matrix::diagonal(&m.weights().iter().map(|w| f(w)).collect::<Vec<_>>()),
                None => Matrix::identity(dm),
            };
            for &g in &t.word {
                right.push(acc.clone());
                acc = m.action(g).mul(&acc);
            }
            let mut left = vec![Matrix::identity(dn); len];
            let mut acc = Matrix::identity(dn);
            for p in (0..len).rev() {
                left[p] = acc.clone();
                acc = acc.mul(n.action(t.word[p]));
            }
            for p in 0..len {
                let g = t.word[p];
                if alg.generators[g].grading {
                    continue;
                }
                let (l, r) = (&left[p], &right[p]);
                for &k in &by_gen[g] {
                    let (_, i, j) = vars[k];
                    for a in 0..dn {
                        let la = l.get(a, i);
                        if la.is_zero() {
                            continue;
                        }
                        let la = la.mul(&t.coeff);
                        for b in 0..dm {
                            let rb = r.get(j, b);
                            if rb.is_zero() {
                                continue;
                            }
                            let row = ri * block + a * dm + b;
                            let cur = matrix.get(row, k).add(&la.mul(rb));
                            matrix.set(row, k, cur);
                        }
                    }
                }
            }
        }
    }
    LinearizedSystem { vars, matrix }
}

/// Span of the coboundaries `φ(g) = N(g)ψ − ψM(g)` in the coordinates of `sys`.
fn coboundary_span<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    sys: &LinearizedSystem<F>,
) -> Span<F> {
    let (dm, dn) = (m.dim(), n.dim());
    let index = sys.index();
    let mut span = Span::new(sys.vars.len());
    for i in 0..dn {
        for j in 0..dm {
            if n.weights()[i] != m.weights()[j] {
                continue;
            }
            let mut v = vec![F::zero(); sys.vars.len()];
            for g in alg.non_grading() {
                let (na, ma) = (n.action(g), m.action(g));
                for a in 0..dn {
                    let x = na.get(a, i);
                    if !x.is_zero() {
                        let k = index[&(g, a, j)];
                        v[k] = v[k].add(x);
                    }
                }
                for b in 0..dm {
                    let x = ma.get(j, b);
                    if !x.is_zero() {
                        let k = index[&(g, i, b)];
                        v[k] = v[k].sub(x);
                    }
                }
            }
            span.insert(&v);
        }
    }
    span
}

/// Computes `Ext¹(M, N)`: cocycles solving the linearized relations, modulo
/// coboundaries of weight-preserving `ψ`.
pub fn ext1<F: Field>(alg: &AlgebraPresentation<F>, m: &ModuleRep<F>, n: &ModuleRep<F>) -> ExtSpace<F> {
    let sys = linearized_system(alg, m, n);
    if sys.vars.is_empty() {
        return ExtSpace { dim: 0, cocycles: Vec::new() };
    }
    let z = sys.matrix.nullspace();
    let mut quotient = coboundary_span(alg, m, n, &sys);
    let mut cocycles = Vec::new();
    for v in &z {
        if quotient.insert(v) {
            cocycles.push(sys.to_cocycle(alg, n.dim(), m.dim(), v));
        }
    }
    ExtSpace { dim: cocycles.len(), cocycles }
}

/// `true` iff `c` is a coboundary (the extension it defines splits).
pub fn is_coboundary<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    c: &Cocycle<F>,
) -> bool {
    let sys = linearized_system(alg, m, n);
    if sys.vars.is_empty() {
        return true;
    }
    coboundary_span(alg, m, n, &sys).contains(&sys.to_vector(c))
}

/// Middle term of the extension `0 → N → E → M → 0` defined by `c`, on the
/// basis `N ⊕ M` with action `[[N(g), φ(g)], [0, M(g)]]`.
pub fn extend<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    c: &Cocycle<F>,
) -> Result<ModuleRep<F>, EngineError> {
    let (dm, dn) = (m.dim(), n.dim());
    if c.blocks.len() != alg.generators.len()
        || c.blocks.iter().any(|b| b.rows() != dn || b.cols() != dm)
    {
        return Err(EngineError::DimensionMismatch("cocycle blocks do not fit N × M".into()));
    }
    let mut weights = n.weights().to_vec();
    weights.extend(m.weights().iter().cloned());
    let actions = (0..alg.generators.len())
        .map(|g| {
            let mut a = Matrix::zeros(dn + dm, dn + dm);
            a.put(0, 0, n.action(g));
            a.put(dn, dn, m.action(g));
            if !alg.generators[g].grading {
                a.put(0, dn, &c.blocks[g]);
            }
            a
        })
        .collect();
    let e = ModuleRep::from_parts(weights, actions);
    if let Some(rel) = alg.relations.iter().find(|r| !e.eval_relation(r).is_zero()) {
        return Err(EngineError::InvalidCocycle(rel.name.clone()));
    }
    if !check_relations(alg, &e)? {
        return Err(EngineError::InvalidCocycle("weight grading".into()));
    }
    Ok(e)
}
