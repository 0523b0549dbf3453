use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::Group;
use crate::error::Result;
use crate::words::Word;

/// How an oracle proposes candidate exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Read the exponent off a canonical `s^n · h` form.
    ShiftTail,
    /// A homomorphism to Z that sends the generator to 1.
    ExponentSum,
    /// Conjugate into a subgroup where the exponent is readable.
    ConjugateTransport,
    /// Count free-product syllables of a known power pattern.
    SyllablePattern,
}

pub type CandidateFn<G> = Arc<dyn Fn(&G, &<G as Group>::Elem) -> Vec<BigInt> + Send + Sync>;

/// Membership test for the cyclic subgroup generated by `generator_word`.
///
/// The candidate function proposes a finite exponent set; every candidate
/// `n` is confirmed by checking `g = generatorⁿ` in the ambient group, so a
/// returned exponent is always correct. Completeness depends on the
/// candidate function containing the true exponent for every power.
pub struct CyclicOracle<G: Group> {
    name: String,
    generator_word: Word,
    generator: G::Elem,
    strategy: Strategy,
    candidates: CandidateFn<G>,
}

impl<G: Group> CyclicOracle<G> {
    pub fn new(
        group: &G,
        name: impl Into<String>,
        generator_word: Word,
        strategy: Strategy,
        candidates: CandidateFn<G>,
    ) -> Result<Self> {
        let generator = group.eval(&generator_word)?;
        Ok(CyclicOracle {
            name: name.into(),
            generator_word,
            generator,
            strategy,
            candidates,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_word(&self) -> &Word {
        &self.generator_word
    }

    pub fn generator(&self) -> &G::Elem {
        &self.generator
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn power(&self, group: &G, n: &BigInt) -> G::Elem {
        group.pow(&self.generator, n)
    }

    pub fn member(&self, group: &G, g: &G::Elem) -> Option<BigInt> {
        (self.candidates)(group, g)
            .into_iter()
            .find(|n| group.equal(&self.power(group, n), g))
    }
}

impl<G: Group> fmt::Debug for CyclicOracle<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CyclicOracle")
            .field("name", &self.name)
            .field("generator", &self.generator_word.to_string())
            .field("strategy", &self.strategy)
            .finish()
    }
}

/// Returns `n` with `g = generatorⁿ`, or `None` when `g` is not in the subgroup.
pub fn cyclic_member<G: Group>(group: &G, oracle: &CyclicOracle<G>, g: &G::Elem) -> Option<BigInt> {
    oracle.member(group, g)
}
