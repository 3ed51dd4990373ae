use std::collections::BTreeMap;

use super::algebra::{AlgebraPresentation, Term};
use super::EngineError;
use crate::cyclotomic::Rat;
use crate::field::Field;
use crate::linalg::{Matrix, Span};

/// A finite-dimensional weight module: one weight per basis vector and one
/// matrix per generator (indexed like `AlgebraPresentation::generators`).
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleRep<F> {
    weights: Vec<Rat>,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> ModuleRep<F> {
    /// Builds a module from named generator matrices. The grading operator is
    /// filled in from `weights`; generators not listed act by zero.
    pub fn new(
        alg: &AlgebraPresentation<F>,
        weights: Vec<Rat>,
        named: Vec<(&str, Matrix<F>)>,
    ) -> Result<Self, EngineError> {
        let dim = weights.len();
        let mut actions: Vec<Option<Matrix<F>>> = vec![None; alg.generators.len()];
        for (name, m) in named {
            let idx = alg
                .generator_index(name)
                .ok_or_else(|| EngineError::UnknownGenerator(name.to_string()))?;
            if m.rows() != dim || m.cols() != dim {
                return Err(EngineError::DimensionMismatch(format!(
                    "generator {name}: {}x{} matrix on a {dim}-dimensional module",
                    m.rows(),
                    m.cols()
                )));
            }
            actions[idx] = Some(m);
        }
        let actions = actions
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.unwrap_or_else(|| {
                    if alg.generators[i].grading {
                        grading_matrix(&weights)
                    } else {
                        Matrix::zeros(dim, dim)
                    }
                })
            })
            .collect();
        Ok(ModuleRep { weights, actions })
    }

    /// Low-level constructor; `actions` must be indexed like the presentation's generators.
    pub fn from_parts(weights: Vec<Rat>, actions: Vec<Matrix<F>>) -> Self {
        ModuleRep { weights, actions }
    }

    pub fn zero(alg: &AlgebraPresentation<F>) -> Self {
        ModuleRep { weights: Vec::new(), actions: vec![Matrix::zeros(0, 0); alg.generators.len()] }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn action(&self, g: usize) -> &Matrix<F> {
        &self.actions[g]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    /// Distinct weights with multiplicities.
    pub fn weight_multiset(&self) -> BTreeMap<Rat, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn basis_of_weight(&self, w: &Rat) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] == *w).collect()
    }

    /// Matrix of a word, generators applied in list order.
    pub fn word_matrix(&self, word: &[usize]) -> Matrix<F> {
        let mut m = Matrix::identity(self.dim());
        for &g in word {
            m = self.actions[g].mul(&m);
        }
        m
    }

    /// Applies a word to a vector, generators in list order.
    pub fn apply_word(&self, word: &[usize], v: &[F]) -> Vec<F> {
        word.iter().fold(v.to_vec(), |acc, &g| self.actions[g].mul_vec(&acc))
    }

    pub fn eval_term(&self, t: &Term<F>) -> Matrix<F> {
        let mut m = self.word_matrix(&t.word).scale(&t.coeff);
        if let Some(f) = &t.weight_factor {
            let d: Vec<F> = self.weights.iter().map(|w| f(w)).collect();
            m = m.mul(&Matrix::diagonal(&d));
        }
        m
    }

    pub fn eval_relation(&self, rel: &super::algebra::Relation<F>) -> Matrix<F> {
        rel.terms
            .iter()
            .fold(Matrix::zeros(self.dim(), self.dim()), |acc, t| acc.add(&self.eval_term(t)))
    }

    /// `M ⊕ N` with the basis of `M` first.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        let actions =
            self.actions.iter().zip(&other.actions).map(|(a, b)| Matrix::block_diag(&[a, b])).collect();
        ModuleRep { weights, actions }
    }

    pub fn direct_sum_all(alg: &AlgebraPresentation<F>, parts: &[&Self]) -> Self {
        parts.iter().fold(Self::zero(alg), |acc, p| acc.direct_sum(p))
    }

    /// Conjugates every generator by a weight-preserving change of basis `p`:
    /// the new module has action `p · g · p⁻¹`.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self, EngineError> {
        let inv = p
            .inverse()
            .ok_or_else(|| EngineError::DimensionMismatch("base change is singular".into()))?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !p.get(i, j).is_zero() && self.weights[i] != self.weights[j] {
                    return Err(EngineError::DimensionMismatch("base change mixes weights".into()));
                }
            }
        }
        let actions = self.actions.iter().map(|a| p.mul(a).mul(&inv)).collect();
        Ok(ModuleRep { weights: self.weights.clone(), actions })
    }

    /// Shifts every weight by `s` (twist by a one-dimensional grading character).
    pub fn shift_weights(&self, alg: &AlgebraPresentation<F>, s: &Rat) -> Self {
        let weights: Vec<Rat> = self.weights.iter().map(|w| w + s).collect();
        let mut actions = self.actions.clone();
        actions[alg.grading_index()] = grading_matrix(&weights);
        ModuleRep { weights, actions }
    }
}

pub(crate) fn grading_matrix<F: Field>(weights: &[Rat]) -> Matrix<F> {
    Matrix::diagonal(&weights.iter().map(F::from_rat).collect::<Vec<_>>())
}

/// `true` iff the module satisfies every relation exactly and every
/// generator respects the weight grading.
pub fn check_relations<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
) -> Result<bool, EngineError> {
    if m.actions.len() != alg.generators.len() {
        return Err(EngineError::DimensionMismatch(format!(
            "module carries {} generator matrices, presentation has {}",
            m.actions.len(),
            alg.generators.len()
        )));
    }
    let dim = m.dim();
    for (g, a) in m.actions.iter().enumerate() {
        if a.rows() != dim || a.cols() != dim {
            return Err(EngineError::DimensionMismatch(format!(
                "generator {} is {}x{} on a {dim}-dimensional module",
                alg.generators[g].name,
                a.rows(),
                a.cols()
            )));
        }
    }
    for (g, gen) in alg.generators.iter().enumerate() {
        let a = &m.actions[g];
        if gen.grading {
            if *a != grading_matrix(&m.weights) {
                return Ok(false);
            }
            continue;
        }
        for i in 0..dim {
            for j in 0..dim {
                if !a.get(i, j).is_zero() && m.weights[i] != &m.weights[j] + &gen.degree {
                    return Ok(false);
                }
            }
        }
    }
    Ok(alg.relations.iter().all(|rel| m.eval_relation(rel).is_zero()))
}

/// A subquotient `U / W` of a module, realized on a weight-homogeneous basis.
#[derive(Clone, Debug)]
pub struct Subquotient<F> {
    pub module: ModuleRep<F>,
    /// Representatives in the ambient coordinates, one per basis vector of `module`.
    pub basis: Vec<Vec<F>>,
}

impl<F: Field> Subquotient<F> {
    /// Inclusion matrix (ambient × sub) when `W = 0`.
    pub fn inclusion(&self, ambient_dim: usize) -> Matrix<F> {
        Matrix::from_columns(ambient_dim, &self.basis)
    }
}

/// Splits a graded subspace into its weight components.
fn homogeneous_parts<F: Field>(m: &ModuleRep<F>, s: &Span<F>) -> BTreeMap<Rat, Span<F>> {
    let mut parts: BTreeMap<Rat, Span<F>> = BTreeMap::new();
    for v in s.basis() {
        for w in m.weight_multiset().keys() {
            let proj: Vec<F> = (0..m.dim())
                .map(|i| if m.weights[i] == *w { v[i].clone() } else { F::zero() })
                .collect();
            if proj.iter().any(|x| !x.is_zero()) {
                parts.entry(w.clone()).or_insert_with(|| Span::new(m.dim())).insert(&proj);
            }
        }
    }
    parts
}

/// Builds `U / W` for submodules `W ⊆ U` of `m` given as spans.
///
/// Both subspaces must be stable under the action (hence graded).
pub fn subquotient<F: Field>(
    m: &ModuleRep<F>,
    upper: &Span<F>,
    lower: &Span<F>,
) -> Result<Subquotient<F>, EngineError> {
    let dim = m.dim();
    let up = homogeneous_parts(m, upper);
    let low = homogeneous_parts(m, lower);
    let mut reps: Vec<Vec<F>> = Vec::new();
    let mut weights: Vec<Rat> = Vec::new();
    let mut lower_basis: Vec<Vec<F>> = Vec::new();
    for (w, span) in &up {
        let mut acc = low.get(w).cloned().unwrap_or_else(|| Span::new(dim));
        lower_basis.extend(acc.basis().iter().cloned());
        for v in span.basis() {
            if acc.insert(v) {
                reps.push(v.clone());
                weights.push(w.clone());
            }
        }
    }
    for (w, span) in &low {
        if !up.contains_key(w) {
            return Err(EngineError::DimensionMismatch(format!(
                "lower subspace has weight {w} absent from the upper one"
            )));
        }
        let _ = span;
    }
    let k = reps.len();
    // Solve g·rep = Σ α_j rep_j + (element of W) for every generator at once.
    let mut columns = reps.clone();
    columns.extend(lower_basis.iter().cloned());
    let basis_mat = Matrix::from_columns(dim, &columns);
    let mut actions = Vec::with_capacity(m.actions.len());
    for a in &m.actions {
        let targets: Vec<Vec<F>> = reps.iter().map(|v| a.mul_vec(v)).collect();
        let coords = solve_many(&basis_mat, &targets).ok_or_else(|| {
            EngineError::DimensionMismatch("subspace is not stable under the action".into())
        })?;
        let mut mat = Matrix::zeros(k, k);
        for (j, c) in coords.iter().enumerate() {
            for i in 0..k {
                mat.set(i, j, c[i].clone());
            }
        }
        actions.push(mat);
    }
    Ok(Subquotient { module: ModuleRep { weights, actions }, basis: reps })
}

/// Solves `A x_i = b_i` for all right-hand sides; `A` must have full column rank.
pub(crate) fn solve_many<F: Field>(a: &Matrix<F>, rhs: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let (r, c) = (a.rows(), a.cols());
    let mut aug = Matrix::zeros(r, c + rhs.len());
    aug.put(0, 0, a);
    for (j, b) in rhs.iter().enumerate() {
        for i in 0..r {
            aug.set(i, c + j, b[i].clone());
        }
    }
    let pivots = aug.rref();
    if pivots.iter().any(|&p| p >= c) {
        return None;
    }
    Some(
        (0..rhs.len())
            .map(|j| {
                let mut x = vec![F::zero(); c];
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = aug.get(row, c + j).clone();
                }
                x
            })
            .collect(),
    )
}

/// Smallest submodule containing the given vectors.
pub fn generated_submodule<F: Field>(m: &ModuleRep<F>, vectors: &[Vec<F>]) -> Span<F> {
    let mut span = Span::new(m.dim());
    let mut queue: Vec<Vec<F>> = Vec::new();
    for v in vectors {
        if span.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for a in &m.actions {
            let w = a.mul_vec(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span
}
