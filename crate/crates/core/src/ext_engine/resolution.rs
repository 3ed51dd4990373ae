use super::algebra::AlgebraPresentation;
use super::homext::{hom, hom_dim};
use super::module::{subquotient, ModuleRep};
use super::radical::{radical_submodule, unit_vectors};
use super::EngineError;
use crate::cyclotomic::Rat;
use crate::field::Field;
use crate::linalg::{rank_of, Matrix, Span};

/// An indecomposable projective generated by one weight vector.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<F> {
    pub module: ModuleRep<F>,
    /// Basis index of the generating vector.
    pub generator: usize,
    /// `basis[j] = words[j] · basis[generator]`.
    pub words: Vec<Vec<usize>>,
}

/// Supplies projective covers for the simple heads met while resolving.
pub trait ProjectiveCovers<F: Field> {
    /// The projective cover of the simple whose head contains a vector of weight `w`.
    fn cover(&self, w: &Rat) -> Result<ProjectiveCover<F>, EngineError>;
}

/// A minimal projective resolution `⋯ → P_1 → P_0 → M → 0`, truncated.
#[derive(Clone, Debug)]
pub struct Resolution<F> {
    pub terms: Vec<ModuleRep<F>>,
    /// Summand head weights of each term, in basis order.
    pub summands: Vec<Vec<Rat>>,
    /// `Ω^0 = M, Ω^1, …`; one more than `terms`.
    pub syzygies: Vec<ModuleRep<F>>,
    /// Covers `P_k → Ω^k`.
    pub covers: Vec<Matrix<F>>,
    /// Inclusions `Ω^{k+1} → P_k`.
    pub inclusions: Vec<Matrix<F>>,
}

impl<F: Field> Resolution<F> {
    /// Differential `P_k → P_{k-1}` for `k ≥ 1`.
    pub fn differential(&self, k: usize) -> Matrix<F> {
        self.inclusions[k - 1].mul(&self.covers[k])
    }
}

/// Projective cover of `M` built by lifting a basis of the head.
fn cover_module<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    covers: &dyn ProjectiveCovers<F>,
) -> Result<(ModuleRep<F>, Matrix<F>, Vec<Rat>), EngineError> {
    let d = m.dim();
    let mut acc: Span<F> = radical_submodule(alg, m);
    let mut parts: Vec<ModuleRep<F>> = Vec::new();
    let mut columns: Vec<Vec<F>> = Vec::new();
    let mut heads = Vec::new();
    for (i, e) in unit_vectors::<F>(d).into_iter().enumerate() {
        if acc.contains(&e) {
            continue;
        }
        let w = &m.weights()[i];
        let pc = covers.cover(w)?;
        let cols: Vec<Vec<F>> = pc.words.iter().map(|word| m.apply_word(word, &e)).collect();
        let f = Matrix::from_columns(d, &cols);
        for g in alg.non_grading() {
            if f.mul(pc.module.action(g)) != m.action(g).mul(&f) {
                return Err(EngineError::Lift(format!(
                    "generator at weight {w} does not extend to the projective cover"
                )));
            }
        }
        for c in &cols {
            acc.insert(c);
        }
        columns.extend(cols);
        parts.push(pc.module);
        heads.push(w.clone());
    }
    let refs: Vec<&ModuleRep<F>> = parts.iter().collect();
    let p = ModuleRep::direct_sum_all(alg, &refs);
    Ok((p, Matrix::from_columns(d, &columns), heads))
}

/// Builds `length` terms of a minimal projective resolution of `M`.
pub fn minimal_resolution<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    length: usize,
    covers: &dyn ProjectiveCovers<F>,
) -> Result<Resolution<F>, EngineError> {
    let mut res = Resolution {
        terms: Vec::new(),
        summands: Vec::new(),
        syzygies: vec![m.clone()],
        covers: Vec::new(),
        inclusions: Vec::new(),
    };
    for _ in 0..length {
        let omega = res.syzygies.last().expect("nonempty");
        let (p, f, heads) = cover_module(alg, omega, covers)?;
        let mut kernel = Span::new(p.dim());
        for v in f.nullspace() {
            kernel.insert(&v);
        }
        let sub = subquotient(&p, &kernel, &Span::new(p.dim()))?;
        res.inclusions.push(sub.inclusion(p.dim()));
        res.syzygies.push(sub.module);
        res.covers.push(f);
        res.summands.push(heads);
        res.terms.push(p);
    }
    Ok(res)
}

/// `dim Ext^s(M, N)`, computed as `Hom(Ω^s, N)` modulo maps factoring
/// through `Ω^s → P_{s-1}`.
pub fn ext_s<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    s: usize,
    covers: &dyn ProjectiveCovers<F>,
) -> Result<usize, EngineError> {
    if s == 0 {
        return Ok(hom_dim(alg, m, n));
    }
    let res = minimal_resolution(alg, m, s, covers)?;
    Ok(ext_from_resolution(alg, &res, n, s))
}

/// `dim Ext^s(M, N)` from a resolution of `M` with at least `s` terms.
pub fn ext_from_resolution<F: Field>(
    alg: &AlgebraPresentation<F>,
    res: &Resolution<F>,
    n: &ModuleRep<F>,
    s: usize,
) -> usize {
    if s == 0 {
        return hom_dim(alg, &res.syzygies[0], n);
    }
    let omega = &res.syzygies[s];
    let iota = &res.inclusions[s - 1];
    let total = hom_dim(alg, omega, n);
    let restricted: Vec<Vec<F>> =
        hom(alg, &res.terms[s - 1], n).iter().map(|f| f.mul(iota).flat().to_vec()).collect();
    total - rank_of(&restricted, n.dim() * omega.dim())
}
