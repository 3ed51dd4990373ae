use super::algebra::AlgebraPresentation;
use super::homext::{ext1, linearized_system, Cocycle};
use super::iso::is_isomorphic;
use super::module::{check_relations, grading_matrix, ModuleRep};
use super::radical::is_indecomposable;
use super::EngineError;
use crate::field::Field;
use crate::linalg::Matrix;

struct Pieces<'a, F> {
    x: &'a ModuleRep<F>,
    b: &'a ModuleRep<F>,
    c: &'a ModuleRep<F>,
    beta: Cocycle<F>,
    beta2: Cocycle<F>,
    gamma: Cocycle<F>,
    gamma2: Cocycle<F>,
}

impl<F: Field> Pieces<'_, F> {
    /// Basis `[X_top, B, C, X_bottom]`, block-lower-triangular action.
    fn assemble(
        &self,
        alg: &AlgebraPresentation<F>,
        beta_scale: &F,
        gamma_scale: &F,
        corner: Option<&Cocycle<F>>,
    ) -> ModuleRep<F> {
        let (dx, db, dc) = (self.x.dim(), self.b.dim(), self.c.dim());
        let (ob, oc, ox) = (dx, dx + db, dx + db + dc);
        let total = ox + dx;
        let mut weights = self.x.weights().to_vec();
        weights.extend(self.b.weights().iter().cloned());
        weights.extend(self.c.weights().iter().cloned());
        weights.extend(self.x.weights().iter().cloned());
        let actions = (0..alg.generators.len())
            .map(|g| {
                if alg.generators[g].grading {
                    return grading_matrix(&weights);
                }
                let mut a = Matrix::zeros(total, total);
                a.put(0, 0, self.x.action(g));
                a.put(ob, ob, self.b.action(g));
                a.put(oc, oc, self.c.action(g));
                a.put(ox, ox, self.x.action(g));
                if !beta_scale.is_zero() {
                    a.put(ob, 0, &self.beta.blocks[g].scale(beta_scale));
                    a.put(ox, ob, &self.beta2.blocks[g]);
                }
                if !gamma_scale.is_zero() {
                    a.put(oc, 0, &self.gamma.blocks[g].scale(gamma_scale));
                    a.put(ox, oc, &self.gamma2.blocks[g]);
                }
                if let Some(mu) = corner {
                    a.put(ox, 0, &mu.blocks[g]);
                }
                a
            })
            .collect();
        ModuleRep::from_parts(weights, actions)
    }

    /// Corner residuals of every relation, flattened like the linearized system.
    fn corner_residual(&self, alg: &AlgebraPresentation<F>, m: &ModuleRep<F>) -> Vec<F> {
        let dx = self.x.dim();
        let ox = m.dim() - dx;
        let rows: Vec<usize> = (ox..m.dim()).collect();
        let cols: Vec<usize> = (0..dx).collect();
        alg.relations
            .iter()
            .flat_map(|rel| m.eval_relation(rel).select(&rows, &cols).flat().to_vec())
            .collect()
    }
}

fn first_class<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    what: &str,
) -> Result<Cocycle<F>, EngineError> {
    ext1(alg, m, n)
        .cocycles
        .into_iter()
        .next()
        .ok_or_else(|| EngineError::Hypothesis(format!("Ext¹({what}) vanishes")))
}

/// Builds an indecomposable module with Loewy layers `[X], [B, C], [X]`.
///
/// The result lives on `X ⊕ B ⊕ C ⊕ X` (top copy of `X` first) and glues the
/// four length-two extensions through a corner block solving the relations.
pub fn build_diamond<F: Field>(
    alg: &AlgebraPresentation<F>,
    x: &ModuleRep<F>,
    b: &ModuleRep<F>,
    c: &ModuleRep<F>,
) -> Result<ModuleRep<F>, EngineError> {
    if is_isomorphic(alg, b, c) {
        return Err(EngineError::Hypothesis("B and C are isomorphic".into()));
    }
    for (m, what) in [(x, "X, X"), (b, "B, B"), (c, "C, C")] {
        if ext1(alg, m, m).dim != 0 {
            return Err(EngineError::Hypothesis(format!("Ext¹({what}) is nonzero")));
        }
    }
    let pieces = Pieces {
        x,
        b,
        c,
        beta: first_class(alg, x, b, "X, B")?,
        beta2: first_class(alg, b, x, "B, X")?,
        gamma: first_class(alg, x, c, "X, C")?,
        gamma2: first_class(alg, c, x, "C, X")?,
    };
    let (one, zero) = (F::one(), F::zero());
    let r_b = pieces.corner_residual(alg, &pieces.assemble(alg, &one, &zero, None));
    let r_c = pieces.corner_residual(alg, &pieces.assemble(alg, &zero, &one, None));

    let sys = linearized_system(alg, x, x);
    let nv = sys.vars.len();
    let rows = sys.matrix.rows();
    let mut aug = Matrix::zeros(rows, nv + 2);
    aug.put(0, 0, &sys.matrix);
    for i in 0..rows {
        aug.set(i, nv, r_b[i].clone());
        aug.set(i, nv + 1, r_c[i].clone());
    }
    let null = aug.nullspace();
    let pick_b = null.iter().find(|v| !v[nv].is_zero());
    let pick_c = null.iter().find(|v| !v[nv + 1].is_zero());
    let (vb, vc) = match (pick_b, pick_c) {
        (Some(vb), Some(vc)) => (vb, vc),
        _ => return Err(EngineError::NoDiamond),
    };
    // vb + t·vc has both scalars nonzero for all but at most two values of t.
    let solution = (0..4)
        .map(|t| {
            let t = F::from_i64(t);
            vb.iter().zip(vc).map(|(p, q)| p.add(&q.mul(&t))).collect::<Vec<F>>()
        })
        .find(|v| !v[nv].is_zero() && !v[nv + 1].is_zero())
        .ok_or(EngineError::NoDiamond)?;
    let mu = sys.to_cocycle(alg, x.dim(), x.dim(), &solution[..nv]);
    let module = pieces.assemble(alg, &solution[nv], &solution[nv + 1], Some(&mu));
    if !check_relations(alg, &module)? || !is_indecomposable(alg, &module) {
        return Err(EngineError::NoDiamond);
    }
    Ok(module)
}
