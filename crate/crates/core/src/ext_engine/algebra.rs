use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::EngineError;
use crate::cyclotomic::Rat;
use crate::field::Field;

/// A scalar that depends on the weight of the vector it is applied to.
pub type WeightFn<F> = Arc<dyn Fn(&Rat) -> F + Send + Sync>;

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    /// Weight shift: the generator maps weight `w` into weight `w + degree`.
    pub degree: Rat,
    /// Grading operators act diagonally by the basis weights.
    pub grading: bool,
}

/// `coeff · g_{k-1} ⋯ g_1 g_0 · D`, where `word = [g_0, …, g_{k-1}]` is listed
/// in the order the generators are applied and `D` is the optional diagonal
/// weight factor acting first.
#[derive(Clone)]
pub struct Term<F> {
    pub coeff: F,
    pub weight_factor: Option<WeightFn<F>>,
    pub word: Vec<usize>,
}

impl<F: Field> Term<F> {
    pub fn word(coeff: F, word: Vec<usize>) -> Self {
        Term { coeff, weight_factor: None, word }
    }

    pub fn weighted(coeff: F, f: WeightFn<F>, word: Vec<usize>) -> Self {
        Term { coeff, weight_factor: Some(f), word }
    }
}

impl<F: fmt::Debug> fmt::Debug for Term<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Term")
            .field("coeff", &self.coeff)
            .field("weighted", &self.weight_factor.is_some())
            .field("word", &self.word)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub struct Relation<F> {
    pub name: String,
    pub terms: Vec<Term<F>>,
}

/// A finitely presented algebra acting on weight-graded modules.
///
/// Exactly one generator is a grading operator; its eigenvalues are the
/// basis weights of every module.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation<F> {
    pub name: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation<F>>,
}

impl<F: Field> AlgebraPresentation<F> {
    pub fn new(name: impl Into<String>) -> Self {
        AlgebraPresentation { name: name.into(), generators: Vec::new(), relations: Vec::new() }
    }

    pub fn add_generator(&mut self, name: impl Into<String>, degree: Rat, grading: bool) -> usize {
        self.generators.push(Generator { name: name.into(), degree, grading });
        self.generators.len() - 1
    }

    pub fn add_relation(&mut self, name: impl Into<String>, terms: Vec<Term<F>>) {
        self.relations.push(Relation { name: name.into(), terms });
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn grading_index(&self) -> usize {
        self.generators.iter().position(|g| g.grading).expect("validated presentation")
    }

    pub fn non_grading(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.iter().enumerate().filter(|(_, g)| !g.grading).map(|(i, _)| i)
    }

    pub fn word_degree(&self, word: &[usize]) -> Rat {
        word.iter().fold(<Rat as Zero>::zero(), |acc, &g| acc + &self.generators[g].degree)
    }

    /// Common degree of the terms of a relation.
    pub fn relation_degree(&self, rel: &Relation<F>) -> Rat {
        rel.terms.first().map_or_else(<Rat as Zero>::zero, |t| self.word_degree(&t.word))
    }

    /// Checks that there is exactly one grading operator, that it has degree
    /// zero and that every relation is weight-homogeneous.
    pub fn validate(&self) -> Result<(), EngineError> {
        let grading: Vec<_> = self.generators.iter().filter(|g| g.grading).collect();
        if grading.len() != 1 {
            return Err(EngineError::InvalidPresentation(format!(
                "expected exactly one grading operator, found {}",
                grading.len()
            )));
        }
        if !Zero::is_zero(&grading[0].degree) {
            return Err(EngineError::InvalidPresentation("grading operator must have degree 0".into()));
        }
        for rel in &self.relations {
            for t in &rel.terms {
                if t.word.iter().any(|&g| g >= self.generators.len()) {
                    return Err(EngineError::InvalidPresentation(format!(
                        "relation {} references an unknown generator",
                        rel.name
                    )));
                }
            }
            let d = self.relation_degree(rel);
            if rel.terms.iter().any(|t| self.word_degree(&t.word) != d) {
                return Err(EngineError::InvalidPresentation(format!(
                    "relation {} is not weight-homogeneous",
                    rel.name
                )));
            }
        }
        Ok(())
    }
}
