//! Homomorphisms given by generator images: well-definedness, application,
//! composition, inverse pairs and the non-Hopfian certificate for `G`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::combinators::targets::{make_target, Target, TargetKind};
use crate::error::{Error, Result};
use crate::tower::{Level, Tower};
use crate::words::{w, Letter, Word};

/// A tower level or a named quotient target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupRef {
    Level(Level),
    Target(TargetKind),
}

impl GroupRef {
    pub fn alphabet(&self) -> Vec<Letter> {
        match self {
            GroupRef::Level(l) => l.alphabet().to_vec(),
            GroupRef::Target(TargetKind::Z) => vec![Letter::T],
            GroupRef::Target(TargetKind::Zq(_)) => vec![Letter::S],
            GroupRef::Target(TargetKind::Z2Cube) => vec![Letter::B, Letter::S, Letter::T],
            GroupRef::Target(TargetKind::ZqSemidirect(_)) => vec![Letter::S, Letter::T],
            GroupRef::Target(TargetKind::Z3FreeZ) => vec![Letter::C, Letter::T],
            GroupRef::Target(TargetKind::FiniteTable(t)) => t.letters(),
        }
    }
}

impl fmt::Display for GroupRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupRef::Level(l) => write!(f, "{l}"),
            GroupRef::Target(TargetKind::Z) => write!(f, "z"),
            GroupRef::Target(TargetKind::Zq(q)) => write!(f, "zmod({q})"),
            GroupRef::Target(TargetKind::Z2Cube) => write!(f, "z2cube"),
            GroupRef::Target(TargetKind::ZqSemidirect(q)) => write!(f, "zq({q})"),
            GroupRef::Target(TargetKind::Z3FreeZ) => write!(f, "z3freez"),
            GroupRef::Target(TargetKind::FiniteTable(t)) => write!(f, "table({})", t.name()),
        }
    }
}

impl Serialize for GroupRef {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parenthesized(s: &str, head: &str) -> Option<u64> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
}

/// Levels (`h0` … `g`) and the structured targets `z`, `zmod(q)`, `z2cube`,
/// `zq(q)`, `z3freez`. Tables are not nameable here.
impl FromStr for GroupRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupRef> {
        if let Ok(l) = s.parse::<Level>() {
            return Ok(GroupRef::Level(l));
        }
        let lower = s.trim().to_ascii_lowercase();
        let kind = match lower.as_str() {
            "z" => TargetKind::Z,
            "z2cube" => TargetKind::Z2Cube,
            "z3freez" => TargetKind::Z3FreeZ,
            other => {
                if let Some(q) = parenthesized(other, "zmod") {
                    TargetKind::Zq(q)
                } else if let Some(q) = parenthesized(other, "zq") {
                    TargetKind::ZqSemidirect(q)
                } else {
                    return Err(Error::UnknownGroup(s.to_string()));
                }
            }
        };
        Ok(GroupRef::Target(kind))
    }
}

/// A word-problem solver for either kind of [`GroupRef`].
pub enum Solver<'a> {
    Tower(&'a Tower, Level),
    Target(Box<Target>),
}

impl<'a> Solver<'a> {
    pub fn new(tower: &'a Tower, group: &GroupRef) -> Result<Solver<'a>> {
        Ok(match group {
            GroupRef::Level(l) => Solver::Tower(tower, *l),
            GroupRef::Target(kind) => Solver::Target(Box::new(make_target(kind.clone())?)),
        })
    }

    pub fn is_trivial(&self, word: &Word) -> Result<bool> {
        match self {
            Solver::Tower(t, l) => t.wp_is_trivial(*l, word),
            Solver::Target(t) => t.word_is_trivial(word),
        }
    }

    pub fn equal(&self, a: &Word, b: &Word) -> Result<bool> {
        self.is_trivial(&a.concat(&b.inverse()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HomStatus {
    Unchecked,
    Verified,
}

/// A homomorphism from a tower level, given by the images of its generators.
#[derive(Clone, Debug, Serialize)]
pub struct Hom {
    name: String,
    domain: Level,
    codomain: GroupRef,
    images: BTreeMap<Letter, Word>,
    status: HomStatus,
}

impl Hom {
    /// `images` must name every domain generator and nothing else.
    pub fn new(
        name: impl Into<String>,
        domain: Level,
        codomain: GroupRef,
        images: impl IntoIterator<Item = (Letter, Word)>,
    ) -> Result<Hom> {
        let images: BTreeMap<Letter, Word> = images.into_iter().collect();
        if let Some(l) = images.keys().find(|l| !domain.alphabet().contains(l)) {
            return Err(Error::Hom(format!("`{l}` is not a generator of {domain}")));
        }
        if let Some(l) = domain.alphabet().iter().find(|l| !images.contains_key(l)) {
            return Err(Error::Hom(format!("no image given for generator `{l}`")));
        }
        Ok(Hom {
            name: name.into(),
            domain,
            codomain,
            images,
            status: HomStatus::Unchecked,
        })
    }

    /// Endomorphism of `level` from `(letter, image text)` pairs; letters
    /// not listed are fixed.
    pub fn endo(name: &str, level: Level, changes: &[(Letter, &str)]) -> Result<Hom> {
        let mut images: BTreeMap<Letter, Word> =
            level.alphabet().iter().map(|l| (*l, Word::letter(*l))).collect();
        for (l, text) in changes {
            images.insert(*l, Word::parse(text)?);
        }
        Hom::new(name, level, GroupRef::Level(level), images)
    }

    pub fn identity(level: Level) -> Hom {
        let mut h = Hom::endo("id", level, &[]).expect("identity images");
        h.status = HomStatus::Verified;
        h
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Level {
        self.domain
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.codomain
    }

    pub fn images(&self) -> &BTreeMap<Letter, Word> {
        &self.images
    }

    pub fn image(&self, l: Letter) -> Option<&Word> {
        self.images.get(&l)
    }

    pub fn status(&self) -> HomStatus {
        self.status
    }

    pub fn is_verified(&self) -> bool {
        self.status == HomStatus::Verified
    }

    pub fn is_endomorphism(&self) -> bool {
        self.codomain == GroupRef::Level(self.domain)
    }

    /// Substitution without the verification gate.
    pub fn substitute(&self, word: &Word) -> Result<Word> {
        if let Some(l) = word.letters_used().into_iter().find(|l| !self.images.contains_key(l)) {
            return Err(Error::Alphabet {
                letter: l,
                group: self.domain.to_string(),
            });
        }
        Ok(word.substitute(|l| self.images[&l].clone()))
    }

    /// Maps every domain relator into the codomain; marks the hom verified
    /// when all images are trivial.
    pub fn check_well_defined(&mut self, tower: &Tower) -> Result<Certificate> {
        let cod_alphabet = self.codomain.alphabet();
        for (g, img) in &self.images {
            if let Some(l) = img.letters_used().into_iter().find(|l| !cod_alphabet.contains(l)) {
                return Err(Error::Hom(format!(
                    "image of `{g}` uses `{l}`, which is not in {}",
                    self.codomain
                )));
            }
        }
        let solver = Solver::new(tower, &self.codomain)?;
        let mut evidence = Vec::new();
        for r in self.domain.relators() {
            let image = self.substitute(&r)?;
            let pass = solver.is_trivial(&image)?;
            evidence.push(Evidence::new(format!("relator {r} maps to 1"), vec![r, image], pass));
        }
        let cert = Certificate::new(CertificateKind::WellDefined, &self.name, evidence);
        if cert.verdict {
            self.status = HomStatus::Verified;
        }
        Ok(cert)
    }

    /// Verifies and returns the hom, or fails with the first bad relator.
    pub fn verified(mut self, tower: &Tower) -> Result<Hom> {
        let cert = self.check_well_defined(tower)?;
        match cert.evidence.iter().find(|e| !e.pass) {
            None => Ok(self),
            Some(e) => Err(Error::Hom(format!("{} is not well defined: {}", self.name, e.description))),
        }
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        if !self.is_verified() {
            return Err(Error::Hom(format!("{} has not been verified", self.name)));
        }
        self.substitute(word)
    }
}

/// `outer ∘ inner`.
pub fn compose(outer: &Hom, inner: &Hom) -> Result<Hom> {
    if inner.codomain != GroupRef::Level(outer.domain) {
        return Err(Error::Hom(format!(
            "cannot compose: {} lands in {}, {} starts at {}",
            inner.name, inner.codomain, outer.name, outer.domain
        )));
    }
    if !outer.is_verified() || !inner.is_verified() {
        return Err(Error::Hom("compose needs verified homomorphisms".into()));
    }
    let images = inner
        .images
        .iter()
        .map(|(l, img)| Ok((*l, outer.apply(img)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Hom {
        name: format!("{} . {}", outer.name, inner.name),
        domain: inner.domain,
        codomain: outer.codomain.clone(),
        images,
        status: HomStatus::Verified,
    })
}

/// `true` iff `h` fixes every generator of its domain up to equality.
pub fn fixes_generators(tower: &Tower, h: &Hom) -> Result<bool> {
    let solver = Solver::new(tower, &h.codomain)?;
    for (l, img) in &h.images {
        if !solver.equal(img, &Word::letter(*l))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both composites are the identity.
pub fn is_inverse_pair(tower: &Tower, h1: &Hom, h2: &Hom) -> Result<bool> {
    if !h1.is_endomorphism() || !h2.is_endomorphism() || h1.domain != h2.domain {
        return Err(Error::Hom("inverse pairs need endomorphisms of one level".into()));
    }
    Ok(fixes_generators(tower, &compose(h1, h2)?)? && fixes_generators(tower, &compose(h2, h1)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    WellDefined,
    InversePair,
    KernelElement,
    Surjectivity,
    NonHopfian,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub description: String,
    pub words: Vec<Word>,
    pub pass: bool,
}

impl Evidence {
    pub fn new(description: impl Into<String>, words: Vec<Word>, pass: bool) -> Evidence {
        Evidence {
            description: description.into(),
            words,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub subject: String,
    pub evidence: Vec<Evidence>,
    pub verdict: bool,
}

impl Certificate {
    pub fn new(kind: CertificateKind, subject: &str, evidence: Vec<Evidence>) -> Certificate {
        let verdict = evidence.iter().all(|e| e.pass);
        Certificate {
            kind,
            subject: subject.to_string(),
            evidence,
            verdict,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Evidence> {
        self.evidence.iter().filter(|e| !e.pass)
    }
}

/// Result of [`certify_non_hopfian`]: the three component certificates and
/// the combined verdict.
#[derive(Clone, Debug, Serialize)]
pub struct NonHopfianCertificate {
    pub well_defined: Certificate,
    pub surjectivity: Certificate,
    pub kernel: Certificate,
    pub verdict: bool,
}

/// Checks that `h` is a well-defined, surjective, non-injective endomorphism of `G`.
pub fn certify_non_hopfian(
    tower: &Tower,
    h: &mut Hom,
    kernel_witness: &Word,
    surj_witnesses: &BTreeMap<Letter, Word>,
) -> Result<NonHopfianCertificate> {
    if h.domain != Level::G || !h.is_endomorphism() {
        return Err(Error::Hom(format!("{} is not an endomorphism of G", h.name)));
    }
    if let Some(l) = Level::G.alphabet().iter().find(|l| !surj_witnesses.contains_key(l)) {
        return Err(Error::Hom(format!("missing surjectivity witness for `{l}`")));
    }
    let well_defined = h.check_well_defined(tower)?;
    let g = Solver::new(tower, &GroupRef::Level(Level::G))?;

    let mut evidence = Vec::new();
    for l in Level::G.alphabet() {
        let witness = &surj_witnesses[l];
        let image = h.substitute(witness)?;
        let pass = g.equal(&image, &Word::letter(*l))?;
        evidence.push(Evidence::new(
            format!("image of witness for {l} equals {l}"),
            vec![witness.clone(), image],
            pass,
        ));
    }
    let surjectivity = Certificate::new(CertificateKind::Surjectivity, &h.name, evidence);

    let image = h.substitute(kernel_witness)?;
    let killed = g.is_trivial(&image)?;
    let nontrivial = !g.is_trivial(kernel_witness)?;
    let kernel = Certificate::new(
        CertificateKind::KernelElement,
        &h.name,
        vec![
            Evidence::new(
                format!("{kernel_witness} maps to 1"),
                vec![kernel_witness.clone(), image],
                killed,
            ),
            Evidence::new(format!("{kernel_witness} is not 1"), vec![kernel_witness.clone()], nontrivial),
        ],
    );
    let verdict = well_defined.verdict && surjectivity.verdict && kernel.verdict;
    Ok(NonHopfianCertificate {
        well_defined,
        surjectivity,
        kernel,
        verdict,
    })
}

/// The non-injective surjection `G → G`.
pub fn psi() -> Hom {
    Hom::endo(
        "psi",
        Level::G,
        &[
            (Letter::C, "c^3"),
            (Letter::S, "s^3"),
            (Letter::A, "s"),
            (Letter::U, "1"),
            (Letter::V, "1"),
        ],
    )
    .expect("psi images")
}

pub fn psi_kernel_witness() -> Word {
    w("c^3")
}

/// Preimages under [`psi`] of every generator of `G`.
pub fn psi_witnesses() -> BTreeMap<Letter, Word> {
    let wu = w("x c e c e^-1 x^-1");
    let wv = w("y c f c f^-1 y^-1");
    // v (t s t^-1) v^-1 = a
    let wa = wv.concat(&w("t a t^-1")).concat(&wv.inverse());
    // b a c b^-1 = u a u^-1, so c = a^-1 b^-1 u a u^-1 b
    let wc = wa
        .inverse()
        .concat(&w("b^-1"))
        .concat(&wu)
        .concat(&wa)
        .concat(&wu.inverse())
        .concat(&w("b"));
    let mut m: BTreeMap<Letter, Word> = [Letter::B, Letter::T, Letter::E, Letter::F, Letter::X, Letter::Y]
        .into_iter()
        .map(|l| (l, Word::letter(l)))
        .collect();
    m.insert(Letter::S, w("a"));
    m.insert(Letter::A, wa);
    m.insert(Letter::C, wc);
    m.insert(Letter::U, wu);
    m.insert(Letter::V, wv);
    m
}

/// `b ↦ bc⁻ᵐ` on `H₂`, other generators fixed.
pub fn rho(m: i64) -> Hom {
    Hom::endo(&format!("rho({m})"), Level::H2, &[(Letter::B, &format!("b c^{}", -m))]).expect("rho images")
}

/// `b ↦ bcᵐ`, inverse to [`rho`].
pub fn rho_prime(m: i64) -> Hom {
    Hom::endo(&format!("rho'({m})"), Level::H2, &[(Letter::B, &format!("b c^{m}"))]).expect("rho' images")
}

/// `c ↦ cᵏ, s ↦ s^sign` on `H₂`.
pub fn power_map(k: i64, s_sign: i64) -> Hom {
    Hom::endo(
        &format!("c->c^{k},s->s^{s_sign}"),
        Level::H2,
        &[(Letter::C, &format!("c^{k}")), (Letter::S, &format!("s^{s_sign}"))],
    )
    .expect("power map images")
}

/// Inverse of `k` modulo 9, for `k` prime to 3.
pub fn inverse_mod9(k: i64) -> Option<i64> {
    let e = BigInt::from(k).extended_gcd(&BigInt::from(9));
    (e.gcd == BigInt::from(1)).then(|| {
        let x: i64 = e.x.try_into().expect("small");
        x.rem_euclid(9)
    })
}

/// The automorphism `c ↦ cᵏ` of `H₂`: `s` is fixed when `k ≡ 1 (mod 3)`
/// and inverted when `k ≡ 2 (mod 3)`.
pub fn tau(k: i64) -> Result<Hom> {
    match k.rem_euclid(3) {
        1 => Ok(power_map(k, 1)),
        2 => Ok(power_map(k, -1)),
        _ => Err(Error::Hom(format!("tau needs k prime to 3, got {k}"))),
    }
}

pub fn tau_inverse(k: i64) -> Result<Hom> {
    let kk = inverse_mod9(k).ok_or_else(|| Error::Hom(format!("{k} is not invertible mod 9")))?;
    tau(kk)
}

/// `t ↦ t·w⁻¹` (`sign = -1`) or `t ↦ t·w` (`sign = 1`) for `w ∈ H₁`.
pub fn twist(word: &Word, sign: i64) -> Result<Hom> {
    if let Some(l) = word.letters_used().into_iter().find(|l| !Level::H1.alphabet().contains(l)) {
        return Err(Error::Alphabet {
            letter: l,
            group: "H1".into(),
        });
    }
    let img = if sign < 0 { word.inverse() } else { word.clone() };
    let image = Word::letter(Letter::T).concat(&img);
    Hom::endo(&format!("t->{image}"), Level::H2, &[(Letter::T, &image.to_string())])
}

/// Parses `gen = word` lines; `#` starts a comment. Returns the pairs in
/// file order.
pub fn parse_assignments(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            let (lhs, rhs) = body
                .split_once('=')
                .ok_or_else(|| Error::parse(offset, format!("expected `name = value`, got {body:?}")))?;
            out.push((lhs.trim().to_string(), rhs.trim().to_string()));
        }
        offset += line.len();
    }
    Ok(out)
}

fn single_letter(name: &str) -> Result<Letter> {
    let mut chars = name.chars();
    match (chars.next().and_then(Letter::from_symbol), chars.next()) {
        (Some(l), None) => Ok(l),
        _ => Err(Error::Hom(format!("`{name}` is not a generator"))),
    }
}

/// Witness files use the hom-file syntax without `domain`/`codomain`.
pub fn parse_witnesses(text: &str) -> Result<BTreeMap<Letter, Word>> {
    parse_assignments(text)?
        .into_iter()
        .map(|(l, rhs)| Ok((single_letter(&l)?, Word::parse(&rhs)?)))
        .collect()
}

/// A hom file: `domain = g`, `codomain = g`, then one `gen = word` line per generator.
pub fn parse_hom(text: &str) -> Result<Hom> {
    let mut domain = None;
    let mut codomain = None;
    let mut images = Vec::new();
    for (lhs, rhs) in parse_assignments(text)? {
        match lhs.as_str() {
            "domain" => domain = Some(rhs.parse::<Level>()?),
            "codomain" => codomain = Some(rhs.parse::<GroupRef>()?),
            _ => images.push((single_letter(&lhs)?, Word::parse(&rhs)?)),
        }
    }
    let domain = domain.ok_or_else(|| Error::Hom("missing `domain = ...` line".into()))?;
    let codomain = codomain.unwrap_or(GroupRef::Level(domain));
    Hom::new("file", domain, codomain, images)
}

pub fn format_hom(h: &Hom) -> String {
    let mut out = format!("domain = {}\ncodomain = {}\n", h.domain, h.codomain);
    for (l, img) in &h.images {
        out.push_str(&format!("{l} = {img}\n"));
    }
    out
}
