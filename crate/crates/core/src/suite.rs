//! The seven acceptance criteria as check functions, shared by `run-all`
//! and the `acceptance` test target.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bass_serre::{self, CosetKind};
use crate::combinators::Group;
use crate::elementary::{self, Center, SamplerConfig};
use crate::error::Result;
use crate::h0::H0Element;
use crate::morphisms::{self, is_inverse_pair};
use crate::quotients::{self, NamedQuotient};
use crate::report::Check;
use crate::tower::{Level, LevelVisitor, Tower};
use crate::words::{w, Letter, Word};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub property_samples: usize,
    pub property_max_len: usize,
    pub conjugation_max_k: u32,
    pub targets: Vec<String>,
    pub max_target_order: usize,
    pub brute_force_max_order: usize,
    pub sampler: SamplerConfig,
    pub shorten_samples: usize,
    pub ball_radius: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: elementary::DEFAULT_SEED,
            property_samples: 10_000,
            property_max_len: 12,
            conjugation_max_k: 40,
            targets: quotients::BUILTIN_TARGETS.iter().map(|s| s.to_string()).collect(),
            max_target_order: 30,
            brute_force_max_order: 24,
            sampler: SamplerConfig::default(),
            shorten_samples: 500,
            ball_radius: 1,
        }
    }
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> SuiteConfig {
        let mut cfg = SuiteConfig {
            seed,
            ..SuiteConfig::default()
        };
        cfg.sampler.seed = seed;
        cfg
    }
}

pub const CRITERIA: [&str; 7] = [
    "non-hopfian certificate",
    "normal-form property suite",
    "H0 embeds in G",
    "quotient scan",
    "automorphism and quotient instances",
    "elementary subgroup sampling",
    "bass-serre ball",
];

/// Runs criterion `n` (1-based).
pub fn criterion(tower: &Tower, cfg: &SuiteConfig, n: usize) -> Result<Vec<Check>> {
    match n {
        1 => non_hopfian(tower),
        2 => property_suite(tower, cfg),
        3 => h0_embedding(tower),
        4 => quotient_scan(&cfg.targets, cfg.max_target_order, cfg.brute_force_max_order),
        5 => instances(tower),
        6 => elementary_sampling(tower, &cfg.sampler, cfg.shorten_samples),
        7 => bass_serre_checks(tower, cfg.ball_radius),
        _ => Err(crate::Error::Config(format!("no criterion {n}"))),
    }
}

/// All criteria, concurrently, in criterion order.
pub fn run_all(tower: &Tower, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let parts: Vec<Vec<Check>> = (1..=CRITERIA.len())
        .into_par_iter()
        .map(|n| criterion(tower, cfg, n))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

pub fn non_hopfian(tower: &Tower) -> Result<Vec<Check>> {
    let mut psi = morphisms::psi();
    let cert = morphisms::certify_non_hopfian(
        tower,
        &mut psi,
        &morphisms::psi_kernel_witness(),
        &morphisms::psi_witnesses(),
    )?;
    let details = json!({
        "relators_checked": cert.well_defined.evidence.len(),
        "witnesses_checked": cert.surjectivity.evidence.len(),
        "kernel_checks": cert.kernel.evidence.len(),
        "certificate": &cert,
    });
    Ok(vec![Check::new(
        "psi is a non-injective surjection of G",
        "G is non-Hopfian",
        cert.verdict,
        details,
    )])
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyCounts {
    pub samples: usize,
    pub idempotence_failures: usize,
    pub inverse_failures: usize,
    pub homomorphism_failures: usize,
    pub embedding_checks: usize,
    pub embedding_failures: usize,
    pub errors: usize,
}

impl PropertyCounts {
    pub fn clean(&self) -> bool {
        self.idempotence_failures + self.inverse_failures + self.homomorphism_failures + self.embedding_failures + self.errors
            == 0
    }
}

struct PairLaws<'a>(&'a [(Word, Word)]);

impl LevelVisitor for PairLaws<'_> {
    type Output = PropertyCounts;

    fn visit<G: Group>(self, g: &G) -> PropertyCounts {
        let per: Vec<[bool; 4]> = self
            .0
            .par_iter()
            .map(|(u, v)| {
                let (Ok(x), Ok(y), Ok(xy)) = (g.eval(u), g.eval(v), g.eval(&u.concat(v))) else {
                    return [false, false, false, true];
                };
                let r = g.reduce(&x);
                let nf = g.to_word(&x);
                let idem = g.reduce(&r) == r && g.eval(&nf).is_ok_and(|z| g.equal(&z, &x));
                let inv = g.is_trivial(&g.mul(&x, &g.inv(&x)))
                    && g.is_trivial(&g.mul(&g.inv(&x), &x))
                    && g.word_is_trivial(&u.concat(&u.inverse())).unwrap_or(false);
                let hom = g.equal(&xy, &g.mul(&x, &y));
                [idem, inv, hom, false]
            })
            .collect();
        PropertyCounts {
            samples: per.len(),
            idempotence_failures: per.iter().filter(|p| !p[0] && !p[3]).count(),
            inverse_failures: per.iter().filter(|p| !p[1] && !p[3]).count(),
            homomorphism_failures: per.iter().filter(|p| !p[2] && !p[3]).count(),
            errors: per.iter().filter(|p| p[3]).count(),
            ..PropertyCounts::default()
        }
    }
}

/// A product of one to three conjugated relators of `level`, hence trivial there.
pub fn random_relator_product(rng: &mut impl Rng, level: Level, max_len: usize) -> Word {
    let relators = level.relators();
    let mut out = Word::empty();
    if relators.is_empty() {
        return out;
    }
    for _ in 0..rng.random_range(1..=3) {
        let p = Word::random(rng, level.alphabet(), max_len / 2);
        let mut r = relators[rng.random_range(0..relators.len())].clone();
        if rng.random_bool(0.5) {
            r = r.inverse();
        }
        out.push_word(&p.concat(&r).concat(&p.inverse()));
    }
    out
}

/// Random and relator-built words over a lower level: the lower and the
/// ambient solver must agree on triviality.
fn embedding_checks(tower: &Tower, level: Level, rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Result<(usize, usize)> {
    let lower: Vec<Level> = Level::ALL.iter().copied().filter(|l| *l != level && l.embeds_in(level)).collect();
    if lower.is_empty() {
        return Ok((0, 0));
    }
    let words: Vec<(Level, Word)> = (0..n)
        .map(|i| {
            let l = lower[i % lower.len()];
            let word = if rng.random_bool(0.5) {
                random_relator_product(rng, l, max_len)
            } else {
                Word::random(rng, l.alphabet(), max_len)
            };
            (l, word)
        })
        .collect();
    let failures = words
        .par_iter()
        .map(|(l, word)| Ok(tower.wp_is_trivial(*l, word)? != tower.wp_is_trivial(level, word)?))
        .collect::<Result<Vec<bool>>>()?;
    Ok((words.len(), failures.iter().filter(|f| **f).count()))
}

pub fn level_properties(tower: &Tower, level: Level, seed: u64, samples: usize, max_len: usize) -> Result<PropertyCounts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (level as u64).wrapping_mul(0x9e37_79b9));
    let pairs: Vec<(Word, Word)> = (0..samples)
        .map(|_| {
            let u = Word::random(&mut rng, level.alphabet(), max_len);
            let v = if rng.random_bool(0.25) {
                u.inverse().concat(&random_relator_product(&mut rng, level, max_len))
            } else {
                Word::random(&mut rng, level.alphabet(), max_len)
            };
            (u, v)
        })
        .collect();
    let mut counts = tower.visit(level, PairLaws(&pairs));
    let (checked, failed) = embedding_checks(tower, level, &mut rng, samples, max_len)?;
    counts.embedding_checks = checked;
    counts.embedding_failures = failed;
    Ok(counts)
}

/// `t⁻ᵏ s tᵏ` reduces to exactly `s^(3^k)` in `H₂`.
pub fn conjugation_powers(tower: &Tower, max_k: u32) -> Result<Vec<u32>> {
    let mut bad = Vec::new();
    for k in 1..=max_k {
        let word = Word::power(Letter::T, -(k as i64)).concat(&w("s")).concat(&Word::power(Letter::T, k));
        let expected = Word::power(Letter::S, BigInt::from(3).pow(k));
        let nf = tower.normal_form(Level::H2, &word)?;
        if nf != expected || !tower.wp_equal(Level::H2, &word, &expected)? {
            bad.push(k);
        }
    }
    Ok(bad)
}

pub fn property_suite(tower: &Tower, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let per_level: Vec<(Level, PropertyCounts)> = Level::ALL
        .iter()
        .map(|&l| Ok((l, level_properties(tower, l, cfg.seed, cfg.property_samples, cfg.property_max_len)?)))
        .collect::<Result<_>>()?;
    let mut checks: Vec<Check> = per_level
        .into_iter()
        .map(|(l, c)| {
            Check::new(
                format!("normal-form laws in {l}"),
                "Britton reduction and free-product normal forms",
                c.clean() && c.samples >= cfg.property_samples,
                c,
            )
        })
        .collect();
    let bad = conjugation_powers(tower, cfg.conjugation_max_k)?;
    checks.push(Check::new(
        format!("t^-k s t^k = s^(3^k) for k = 1..{}", cfg.conjugation_max_k),
        "t^-1 s t = s^3",
        bad.is_empty(),
        json!({ "failing_k": bad }),
    ));
    Ok(checks)
}

pub fn h0_embedding(tower: &Tower) -> Result<Vec<Check>> {
    let words: Vec<Word> = H0Element::all().map(|h| h.to_word()).collect();
    let mut pairs = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            pairs.push((i, j));
        }
    }
    let equal: Vec<(usize, usize)> = pairs
        .par_iter()
        .map(|&(i, j)| Ok(tower.wp_equal(Level::G, &words[i], &words[j])?.then_some((i, j))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(vec![Check::new(
        "the 18 elements of H0 stay distinct in G",
        "H0 embeds in G",
        words.len() == 18 && equal.is_empty(),
        json!({ "elements": words, "comparisons": pairs.len(), "equal_pairs": equal }),
    )])
}

pub fn quotient_scan(targets: &[String], max_order: usize, brute_force_max: usize) -> Result<Vec<Check>> {
    targets
        .par_iter()
        .map(|name| {
            let table = quotients::resolve_target(name)?;
            let result = quotients::enumerate_homs(&table, max_order)?;
            let argument = quotients::check_c3_argument(&table, &result);
            let verified = quotients::verify_homs(&table, &result);
            let brute = if table.order() <= brute_force_max {
                let b = quotients::enumerate_homs_brute_force(&table, max_order)?;
                let mut x = result.homs.clone();
                let mut y = b.homs;
                x.sort_unstable();
                y.sort_unstable();
                Some(x == y)
            } else {
                None
            };
            let pass = verified
                && result.all_kill_c3()
                && result.all_s_orders_prime_to_3()
                && argument.pass()
                && brute != Some(false);
            let orders: BTreeMap<u64, usize> = result.stats.iter().fold(BTreeMap::new(), |mut m, s| {
                *m.entry(s.order_of_s).or_insert(0) += 1;
                m
            });
            Ok(Check::new(
                format!("homomorphisms H2 -> {}", table.name()),
                "finite quotients of H2 kill c^3",
                pass,
                json!({
                    "order": table.order(),
                    "homs": result.homs.len(),
                    "relators_hold": verified,
                    "all_kill_c3": result.all_kill_c3(),
                    "s_orders": orders,
                    "argument_failures": argument.failures,
                    "brute_force_agrees": brute,
                }),
            ))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GridEntry {
    pub p: u32,
    pub upper: bool,
    pub holds: bool,
    pub expected: bool,
}

/// `s^∓3ᵖ b s^±3ᵖ = bc⁻³` in `H₂` for `p ≤ 3`; upper sign conjugates by `s^+`.
pub fn conjugation_grid(tower: &Tower) -> Result<Vec<GridEntry>> {
    let mut out = Vec::new();
    for p in 0..=3u32 {
        for upper in [true, false] {
            let e: BigInt = BigInt::from(3).pow(p) * if upper { 1 } else { -1 };
            let word = Word::power(Letter::S, -e.clone()).concat(&w("b")).concat(&Word::power(Letter::S, e));
            let holds = tower.wp_equal(Level::H2, &word, &w("b c^-3"))?;
            out.push(GridEntry {
                p,
                upper,
                holds,
                expected: p == 0 && upper,
            });
        }
    }
    Ok(out)
}

pub fn instances(tower: &Tower) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut pair = |name: String, a: &morphisms::Hom, b: &morphisms::Hom| -> Result<()> {
        let mut a = a.clone();
        let mut b = b.clone();
        let wa = a.check_well_defined(tower)?.verdict;
        let wb = b.check_well_defined(tower)?.verdict;
        let inv = wa && wb && is_inverse_pair(tower, &a, &b)?;
        checks.push(Check::new(
            name,
            "automorphisms of H2",
            inv,
            json!({ "forward": a.name(), "backward": b.name(), "well_defined": [wa, wb] }),
        ));
        Ok(())
    };
    for m in -2..=2 {
        pair(format!("rho({m}) and rho'({m}) are inverse"), &morphisms::rho(m), &morphisms::rho_prime(m))?;
    }
    for k in [1, 2, 4, 5, 7, 8] {
        pair(
            format!("tau({k}) and its inverse are inverse"),
            &morphisms::tau(k)?,
            &morphisms::tau_inverse(k)?,
        )?;
    }
    for text in ["c", "s", "b c^3", "s c"] {
        pair(
            format!("t -> t({text})^-1 and t -> t({text}) are inverse"),
            &morphisms::twist(&w(text), -1)?,
            &morphisms::twist(&w(text), 1)?,
        )?;
    }
    for q in [NamedQuotient::Z2Cube, NamedQuotient::Zq(2), NamedQuotient::Z3FreeZ] {
        let r = quotients::check_named_quotient(tower, &q)?;
        checks.push(Check::new(
            format!("quotient {q}"),
            "quotients of H2 distinguishing automorphism classes",
            r.pass,
            &r,
        ));
    }
    let grid = conjugation_grid(tower)?;
    let aux = [
        ("s b s^-1", "b c^3"),
        ("s^-3 b s^3", "b"),
        ("s^3 b s^-3", "b"),
        ("s^-9 b s^9", "b"),
        ("s^9 b s^-9", "b"),
    ];
    let aux_results: Vec<(String, bool)> = aux
        .iter()
        .map(|(l, r)| Ok((format!("{l} = {r}"), tower.wp_equal(Level::H2, &w(l), &w(r))?)))
        .collect::<Result<_>>()?;
    checks.push(Check::new(
        "conjugates of b by powers of s",
        "s^-1 b s = b c^-3",
        grid.iter().all(|g| g.holds == g.expected) && aux_results.iter().all(|a| a.1),
        json!({ "grid": grid, "identities": aux_results }),
    ));
    Ok(checks)
}

pub fn elementary_sampling(tower: &Tower, sampler: &SamplerConfig, shorten_samples: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (level, center) in [(Level::Ha, Center::Ac), (Level::K, Center::U), (Level::K, Center::V)] {
        let r = elementary::elementary_search(tower, level, center, sampler)?;
        checks.push(Check::new(
            format!("E({center}) is cyclic on samples in {level}"),
            format!("maximal elementary subgroup of {center}"),
            r.pass(),
            json!({
                "tested": r.tested,
                "excluded": r.excluded,
                "comparisons": r.comparisons,
                "violations": r.violations,
                "controls_pass": r.controls_pass(),
            }),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let words = elementary::prefixed_samples(tower, &mut rng, shorten_samples, sampler.max_word_length)?;
    let mut not_shorter = Vec::new();
    for f in &words {
        let before = elementary::syllable_length(tower, f)?;
        let shorter = match elementary::shorten_move(tower, f)? {
            Some(g) => elementary::syllable_length(tower, &g)? < before,
            None => false,
        };
        if !shorter {
            not_shorter.push(f.clone());
        }
    }
    checks.push(Check::new(
        "shorten move decreases syllable length",
        "descent on syllable length in H * <a>",
        words.len() == shorten_samples && not_shorter.is_empty(),
        json!({ "samples": words.len(), "failures": not_shorter }),
    ));
    Ok(checks)
}

pub fn bass_serre_checks(tower: &Tower, radius: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let base_degree = bass_serre::degree(tower, &Word::empty())?;
    let b1 = bass_serre::ball(tower, radius.max(1), bass_serre::DEFAULT_MAX_RADIUS)?;
    checks.push(Check::new(
        "base vertex degree",
        "Bass-Serre tree of H2",
        base_degree == 72 && b1.degree(0) == 72,
        json!({ "distinct_incident_edges": base_degree, "ball_degree": b1.degree(0) }),
    ));
    let b2 = bass_serre::ball(tower, 2, bass_serre::DEFAULT_MAX_RADIUS)?;
    for b in [&b1, &b2] {
        checks.push(Check::new(
            format!("ball({}) is a tree", b.radius),
            "Bass-Serre tree of H2",
            b.is_tree(),
            json!({ "vertices": b.vertices.len(), "edges": b.edges.len(), "connected": b.is_connected() }),
        ));
    }
    let stab = [
        ("s fixes H1", bass_serre::action_fixes(tower, &w("s"), CosetKind::Vertex, &w(""))?, true),
        ("s fixes tH1", bass_serre::action_fixes(tower, &w("s"), CosetKind::Vertex, &w("t"))?, true),
        (
            "s^3 fixes t^-1<s>",
            bass_serre::action_fixes(tower, &w("s^3"), CosetKind::Edge, &w("t^-1"))?,
            true,
        ),
        (
            "s does not fix t^-1<s>",
            bass_serre::action_fixes(tower, &w("s"), CosetKind::Edge, &w("t^-1"))?,
            false,
        ),
    ];
    checks.push(Check::new(
        "stabilizers",
        "Bass-Serre tree of H2",
        stab.iter().all(|(_, got, want)| got == want),
        stab.iter().map(|(n, got, _)| (n.to_string(), *got)).collect::<BTreeMap<_, _>>(),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            property_samples: 200,
            conjugation_max_k: 8,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn grid_truth_table() {
        let grid = conjugation_grid(Tower::shared()).unwrap();
        assert_eq!(grid.len(), 8);
        assert!(grid.iter().all(|g| g.holds == g.expected), "{grid:?}");
    }

    #[test]
    fn conjugation_powers_small() {
        assert!(conjugation_powers(Tower::shared(), 8).unwrap().is_empty());
    }

    #[test]
    fn property_suite_small_is_clean() {
        for c in property_suite(Tower::shared(), &small()).unwrap() {
            assert!(c.pass(), "{}: {}", c.name, c.details);
        }
    }

    #[test]
    fn relator_products_are_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for l in Level::ALL {
            let word = random_relator_product(&mut rng, l, 8);
            assert!(Tower::shared().wp_is_trivial(l, &word).unwrap(), "{l}: {word}");
        }
    }

    #[test]
    fn unknown_criterion() {
        assert!(criterion(Tower::shared(), &small(), 8).is_err());
    }
}
