use std::collections::BTreeSet;

use super::algebra::AlgebraPresentation;
use super::homext::{hom, hom_dim};
use super::module::{subquotient, ModuleRep, Subquotient};
use super::EngineError;
use crate::cyclotomic::Rat;
use crate::field::Field;
use crate::linalg::{Matrix, Span};

/// Multiset of simple labels in one radical layer.
pub type LoewyLayer = Vec<String>;

/// A registry of simple modules used to name radical layers.
pub trait SimpleInventory<F: Field> {
    /// Every registered simple (with its label) having `w` among its weights.
    fn simples_with_weight(&self, w: &Rat) -> Vec<(String, ModuleRep<F>)>;
}

/// Basis of the image of the algebra in `End(M)`.
pub fn image_algebra<F: Field>(alg: &AlgebraPresentation<F>, m: &ModuleRep<F>) -> Vec<Matrix<F>> {
    let d = m.dim();
    let mut span = Span::new(d * d);
    let mut basis = Vec::new();
    let mut queue = Vec::new();
    let id = Matrix::identity(d);
    span.insert(id.flat());
    basis.push(id.clone());
    queue.push(id);
    while let Some(x) = queue.pop() {
        for g in 0..alg.generators.len() {
            let y = m.action(g).mul(&x);
            if span.insert(y.flat()) {
                basis.push(y.clone());
                queue.push(y);
            }
        }
    }
    basis
}

/// Kernel of the trace form `(x, y) ↦ tr(xy)` on a matrix algebra, which is
/// its Jacobson radical in characteristic zero.
pub(crate) fn trace_radical<F: Field>(elements: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let k = elements.len();
    if k == 0 {
        return Vec::new();
    }
    let d = elements[0].rows();
    let transposed: Vec<Matrix<F>> = elements.iter().map(Matrix::transpose).collect();
    let mut gram = Matrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            // tr(xy) = Σ x_ij y_ji
            let x = elements[a].flat();
            let yt = transposed[b].flat();
            let mut t = F::zero();
            for idx in 0..d * d {
                if !x[idx].is_zero() && !yt[idx].is_zero() {
                    t = t.add(&x[idx].mul(&yt[idx]));
                }
            }
            gram.set(a, b, t.clone());
            gram.set(b, a, t);
        }
    }
    gram.nullspace()
        .into_iter()
        .map(|c| {
            c.iter().zip(elements).fold(Matrix::zeros(d, d), |acc, (ci, x)| {
                if ci.is_zero() {
                    acc
                } else {
                    acc.add(&x.scale(ci))
                }
            })
        })
        .collect()
}

fn apply_all<F: Field>(ops: &[Matrix<F>], vectors: &[Vec<F>], len: usize) -> Span<F> {
    let mut span = Span::new(len);
    for x in ops {
        for v in vectors {
            span.insert(&x.mul_vec(v));
        }
    }
    span
}

pub(crate) fn unit_vectors<F: Field>(d: usize) -> Vec<Vec<F>> {
    (0..d)
        .map(|i| {
            let mut e = vec![F::zero(); d];
            e[i] = F::one();
            e
        })
        .collect()
}

/// `J·M` for the Jacobson radical `J` of the image algebra.
pub fn radical_submodule<F: Field>(alg: &AlgebraPresentation<F>, m: &ModuleRep<F>) -> Span<F> {
    let j = trace_radical(&image_algebra(alg, m));
    let d = m.dim();
    apply_all(&j, &unit_vectors(d), d)
}

/// The radical layers `J^k M / J^{k+1} M`, top first.
pub fn radical_layers<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
) -> Result<Vec<Subquotient<F>>, EngineError> {
    let d = m.dim();
    let j = trace_radical(&image_algebra(alg, m));
    let mut spans = Vec::new();
    let mut current = Span::new(d);
    for e in unit_vectors::<F>(d) {
        current.insert(&e);
    }
    while current.dim() > 0 {
        let next = apply_all(&j, current.basis(), d);
        if next.dim() >= current.dim() {
            return Err(EngineError::DimensionMismatch("radical powers do not decrease".into()));
        }
        spans.push(current);
        current = next;
    }
    spans.push(current);
    spans.windows(2).map(|w| subquotient(m, &w[0], &w[1])).collect()
}

/// Names the simple summands of a semisimple module.
fn identify_layer<F: Field>(
    alg: &AlgebraPresentation<F>,
    layer: &ModuleRep<F>,
    inv: &dyn SimpleInventory<F>,
) -> Result<LoewyLayer, EngineError> {
    let mut seen = BTreeSet::new();
    let mut labels = Vec::new();
    let mut covered = 0;
    for w in layer.weight_multiset().keys() {
        for (label, s) in inv.simples_with_weight(w) {
            if !seen.insert(label.clone()) {
                continue;
            }
            let k = hom_dim(alg, &s, layer);
            covered += k * s.dim();
            labels.extend(std::iter::repeat(label).take(k));
        }
    }
    if covered != layer.dim() {
        let weights: Vec<String> = layer.weights().iter().map(|w| w.to_string()).collect();
        return Err(EngineError::UnidentifiedLayer(format!("weights [{}]", weights.join(", "))));
    }
    Ok(labels)
}

/// Loewy layers of `M`, top first, each named through the inventory.
pub fn radical_filtration<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    inv: &dyn SimpleInventory<F>,
) -> Result<Vec<LoewyLayer>, EngineError> {
    radical_layers(alg, m)?.iter().map(|l| identify_layer(alg, &l.module, inv)).collect()
}

pub fn head<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    inv: &dyn SimpleInventory<F>,
) -> Result<LoewyLayer, EngineError> {
    let layers = radical_layers(alg, m)?;
    match layers.first() {
        Some(l) => identify_layer(alg, &l.module, inv),
        None => Ok(Vec::new()),
    }
}

/// `true` iff `End(M)` is local.
pub fn is_indecomposable<F: Field>(alg: &AlgebraPresentation<F>, m: &ModuleRep<F>) -> bool {
    if m.dim() == 0 {
        return false;
    }
    let end = hom(alg, m, m);
    end.len() - trace_radical(&end).len() == 1
}
