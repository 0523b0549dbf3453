//! Finite targets given by multiplication tables, the exhaustive scan of
//! homomorphisms `H₂ → P`, and the structured quotients of `H₂`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::Path;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinators::targets::{order_up_to, powers_distinct, z3_free_z, TargetKind, Z2Cube, ZqSemidirect};
use crate::combinators::Group;
use crate::error::{Error, Result};
use crate::h0::H0Element;
use crate::morphisms::{Evidence, GroupRef, Hom};
use crate::tower::{Level, Tower};
use crate::words::{w, Letter, Word};

/// A finite group as a Cayley table, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroupTable {
    name: String,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    element_order: Vec<u64>,
    /// Generators named by tower letters, when the table came from permutations.
    named: Vec<(Letter, usize)>,
    alphabet: Vec<Letter>,
}

impl FiniteGroupTable {
    pub fn from_table(name: impl Into<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        let n = mul.len();
        let bad = |msg: String| Error::Target(format!("{name}: {msg}"));
        if n == 0 {
            return Err(bad("empty table".into()));
        }
        if let Some(row) = mul.iter().position(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(bad(format!("row {row} is not a row of an order-{n} table")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| bad("no identity".into()))?;
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| mul[x][y] == identity && mul[y][x] == identity)
                    .ok_or_else(|| bad(format!("element {x} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        for x in 0..n {
            for y in 0..n {
                let xy = mul[x][y];
                for z in 0..n {
                    if mul[xy][z] != mul[x][mul[y][z]] {
                        return Err(bad(format!("not associative at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        let element_order = (0..n)
            .map(|x| {
                let mut acc = x;
                let mut k = 1;
                while acc != identity {
                    acc = mul[acc][x];
                    k += 1;
                }
                k
            })
            .collect();
        Ok(FiniteGroupTable {
            name,
            mul,
            identity,
            inverses,
            element_order,
            named: Vec::new(),
            alphabet: Vec::new(),
        })
    }

    /// Closure of the given permutations (one-line notation, 0- or 1-based).
    /// Generator names that are tower letters become usable in words.
    pub fn from_permutations(name: impl Into<String>, gens: &[(String, Vec<usize>)]) -> Result<Self> {
        let name = name.into();
        let degree = gens.first().map_or(0, |(_, p)| p.len());
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for (g, p) in gens {
            let one_based = !p.contains(&0);
            let p: Vec<usize> = p.iter().map(|&x| if one_based { x.wrapping_sub(1) } else { x }).collect();
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Target(format!("{name}: `{g}` is not a permutation of degree {degree}")));
            }
            perms.push(p);
        }
        let id: Vec<usize> = (0..degree).collect();
        // apply p then q
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&i| q[i]).collect() };
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for p in &perms {
                let next = compose(&elems[i], p);
                if !index.contains_key(&next) {
                    if elems.len() >= 5040 {
                        return Err(Error::Budget(format!("{name}: permutation group too large")));
                    }
                    index.insert(next.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(next);
                }
            }
        }
        let mul = elems
            .iter()
            .map(|x| elems.iter().map(|y| index[&compose(x, y)]).collect())
            .collect();
        let mut table = FiniteGroupTable::from_table(name, mul)?;
        for ((g, _), p) in gens.iter().zip(&perms) {
            let mut chars = g.chars();
            if let (Some(l), None) = (chars.next().and_then(Letter::from_symbol), chars.next()) {
                table.named.push((l, index[p]));
                table.alphabet.push(l);
            }
        }
        Ok(table)
    }

    pub fn from_json(name: impl Into<String>, text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct TargetFile {
            table: Option<Vec<Vec<usize>>>,
            permutations: Option<BTreeMap<String, Vec<usize>>>,
        }
        let name = name.into();
        let file: TargetFile = serde_json::from_str(text)?;
        match (file.table, file.permutations) {
            (Some(t), None) => FiniteGroupTable::from_table(name, t),
            (None, Some(p)) => {
                let gens: Vec<(String, Vec<usize>)> = p.into_iter().collect();
                FiniteGroupTable::from_permutations(name, &gens)
            }
            _ => Err(Error::Target(format!(
                "{name}: expected exactly one of \"table\" or \"permutations\""
            ))),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
        FiniteGroupTable::from_json(name, &text)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.element_order[x]
    }

    pub fn power(&self, x: usize, n: i64) -> usize {
        let k = n.rem_euclid(self.element_order[x] as i64);
        (0..k).fold(self.identity, |acc, _| self.mul[acc][x])
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.alphabet.clone()
    }
}

impl Group for FiniteGroupTable {
    type Elem = usize;

    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, x: &usize, y: &usize) -> usize {
        self.mul[*x][*y]
    }

    fn inv(&self, x: &usize) -> usize {
        self.inverses[*x]
    }

    fn is_trivial(&self, x: &usize) -> bool {
        *x == self.identity
    }

    fn letter(&self, l: Letter) -> Option<usize> {
        self.named.iter().find(|(m, _)| *m == l).map(|(_, x)| *x)
    }

    /// Shortest word in the named generators.
    fn to_word(&self, x: &usize) -> Word {
        let mut prev: Vec<Option<(usize, Letter, i64)>> = vec![None; self.order()];
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(y) = queue.pop_front() {
            for (l, g) in &self.named {
                for (z, sign) in [(self.mul[y][*g], 1), (self.mul[y][self.inverses[*g]], -1)] {
                    if !seen[z] {
                        seen[z] = true;
                        prev[z] = Some((y, *l, sign));
                        queue.push_back(z);
                    }
                }
            }
        }
        assert!(seen[*x], "element {x} of {} is not reachable from the named generators", self.name);
        let mut letters = Vec::new();
        let mut cur = *x;
        while let Some((y, l, sign)) = prev[cur] {
            letters.push((l, sign));
            cur = y;
        }
        let mut out = Word::empty();
        for (l, sign) in letters.into_iter().rev() {
            out.push_power(l, sign.into());
        }
        out
    }
}

fn cyclic_table(name: &str, n: usize) -> FiniteGroupTable {
    let mul = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    FiniteGroupTable::from_table(name, mul).expect("cyclic table")
}

fn product_table(name: &str, a: usize, b: usize) -> FiniteGroupTable {
    let n = a * b;
    let mul = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| ((x / b + y / b) % a) * b + (x % b + y % b) % b)
                .collect()
        })
        .collect();
    FiniteGroupTable::from_table(name, mul).expect("product table")
}

pub const BUILTIN_TARGETS: [&str; 10] = ["trivial", "z2", "z3", "z9", "z18", "d9", "s3", "s4", "z2cube", "z3xz9"];

pub fn builtin_target(name: &str) -> Option<FiniteGroupTable> {
    Some(match name {
        "trivial" => cyclic_table("trivial", 1),
        "z2" => cyclic_table("z2", 2),
        "z3" => cyclic_table("z3", 3),
        "z9" => cyclic_table("z9", 9),
        "z18" => cyclic_table("z18", 18),
        "d9" => {
            let elems: Vec<H0Element> = H0Element::all().collect();
            let mul = elems.iter().map(|x| elems.iter().map(|y| x.mul(*y).index()).collect()).collect();
            FiniteGroupTable::from_table("d9", mul).expect("d9 table")
        }
        "s3" => perms("s3", &[("b", vec![1, 0, 2]), ("c", vec![1, 2, 0])]),
        "s4" => perms("s4", &[("b", vec![1, 0, 2, 3]), ("c", vec![1, 2, 3, 0])]),
        "z2cube" => {
            let mul = (0..8).map(|x| (0..8).map(|y| x ^ y).collect()).collect();
            FiniteGroupTable::from_table("z2cube", mul).expect("z2cube table")
        }
        "z3xz9" => product_table("z3xz9", 3, 9),
        _ => return None,
    })
}

fn perms(name: &str, gens: &[(&str, Vec<usize>)]) -> FiniteGroupTable {
    let gens: Vec<(String, Vec<usize>)> = gens.iter().map(|(g, p)| (g.to_string(), p.clone())).collect();
    FiniteGroupTable::from_permutations(name, &gens).expect("builtin permutations")
}

/// Built-in name or path to a JSON file.
pub fn resolve_target(spec: &str) -> Result<FiniteGroupTable> {
    let spec = spec.trim();
    if let Some(t) = builtin_target(&spec.to_ascii_lowercase()) {
        return Ok(t);
    }
    let path = Path::new(spec);
    if path.exists() {
        return FiniteGroupTable::load(path);
    }
    Err(Error::Target(format!(
        "`{spec}` is neither a built-in target ({}) nor a file",
        BUILTIN_TARGETS.join(", ")
    )))
}

/// Images of `(b, c, s, t)`.
pub type Assignment = [usize; 4];

pub const H2_LETTERS: [Letter; 4] = [Letter::B, Letter::C, Letter::S, Letter::T];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomStats {
    pub images: Assignment,
    pub order_of_s: u64,
    pub c3: usize,
    pub c3_trivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomSearchResult {
    pub target: String,
    pub order: usize,
    pub relators: Vec<Word>,
    pub homs: Vec<Assignment>,
    pub stats: Vec<HomStats>,
}

impl HomSearchResult {
    pub fn all_kill_c3(&self) -> bool {
        self.stats.iter().all(|s| s.c3_trivial)
    }

    pub fn all_s_orders_prime_to_3(&self) -> bool {
        self.stats.iter().all(|s| s.order_of_s % 3 != 0)
    }
}

/// Evaluates a word in `table` under a letter assignment by plain repeated
/// multiplication.
pub fn eval_in_table(table: &FiniteGroupTable, assign: &[(Letter, usize)], word: &Word) -> Result<usize> {
    let mut acc = table.identity;
    for g in word.generators() {
        let x = assign
            .iter()
            .find(|(l, _)| *l == g.letter)
            .map(|(_, x)| *x)
            .ok_or_else(|| Error::Alphabet {
                letter: g.letter,
                group: table.name.clone(),
            })?;
        let x = if g.sign.as_i64() < 0 { table.inverses[x] } else { x };
        acc = table.mul[acc][x];
    }
    Ok(acc)
}

fn stats(table: &FiniteGroupTable, images: Assignment) -> HomStats {
    let c3 = table.power(images[1], 3);
    HomStats {
        images,
        order_of_s: table.element_order(images[2]),
        c3,
        c3_trivial: c3 == table.identity,
    }
}

fn finish(table: &FiniteGroupTable, homs: Vec<Assignment>) -> HomSearchResult {
    let stats = homs.iter().map(|h| stats(table, *h)).collect();
    HomSearchResult {
        target: table.name.clone(),
        order: table.order(),
        relators: Level::H2.relators(),
        homs,
        stats,
    }
}

fn check_budget(table: &FiniteGroupTable, max_order: usize) -> Result<()> {
    if table.order() > max_order {
        return Err(Error::Budget(format!(
            "target {} has order {} > {max_order}",
            table.name,
            table.order()
        )));
    }
    Ok(())
}

/// All homomorphisms `H₂ → table`, by backtracking over the images of
/// `b`, `c`, `s`, `t` in that order, each constrained by the relators whose
/// letters are already placed.
pub fn enumerate_homs(table: &FiniteGroupTable, max_order: usize) -> Result<HomSearchResult> {
    check_budget(table, max_order)?;
    let n = table.order();
    let e = table.identity;
    let op = |x: usize, y: usize| table.mul[x][y];
    let inv = |x: usize| table.inverses[x];
    let pow = |x: usize, k: i64| table.power(x, k);

    let bs: Vec<usize> = (0..n).filter(|&b| op(b, b) == e).collect();
    let homs: Vec<Vec<Assignment>> = bs
        .par_iter()
        .map(|&b| {
            let mut out = Vec::new();
            for c in (0..n).filter(|&c| pow(c, 9) == e && op(op(op(inv(b), c), b), c) == e) {
                let bc3 = op(b, pow(c, -3));
                for s in (0..n).filter(|&s| {
                    let si = inv(s);
                    op(op(si, b), s) == bc3 && op(op(si, c), s) == c
                }) {
                    let s3 = pow(s, 3);
                    for t in (0..n).filter(|&t| op(op(inv(t), s), t) == s3) {
                        out.push([b, c, s, t]);
                    }
                }
            }
            out
        })
        .collect();
    Ok(finish(table, homs.into_iter().flatten().collect()))
}

/// Same result as [`enumerate_homs`] by testing all `|P|⁴` tuples against
/// the relator words.
pub fn enumerate_homs_brute_force(table: &FiniteGroupTable, max_order: usize) -> Result<HomSearchResult> {
    check_budget(table, max_order)?;
    let n = table.order();
    let relators = Level::H2.relators();
    let homs: Vec<Vec<Assignment>> = (0..n)
        .into_par_iter()
        .map(|b| {
            let mut out = Vec::new();
            for c in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        let assign = [(Letter::B, b), (Letter::C, c), (Letter::S, s), (Letter::T, t)];
                        let ok = relators
                            .iter()
                            .all(|r| eval_in_table(table, &assign, r).expect("H2 letters") == table.identity);
                        if ok {
                            out.push([b, c, s, t]);
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(finish(table, homs.into_iter().flatten().collect()))
}

/// Every listed assignment satisfies every relator, checked word by word.
pub fn verify_homs(table: &FiniteGroupTable, result: &HomSearchResult) -> bool {
    result.homs.iter().all(|h| {
        let assign: Vec<(Letter, usize)> = H2_LETTERS.iter().copied().zip(h.iter().copied()).collect();
        result
            .relators
            .iter()
            .all(|r| eval_in_table(table, &assign, r).is_ok_and(|x| x == table.identity))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArgumentStep {
    /// `ord ψ(s) = ord ψ(s)³`
    OrderPreservedByCubing,
    /// `gcd(ord ψ(s), 3) = 1`
    OrderPrimeTo3,
    /// `ψ(b)⁻¹ψ(s)ψ(b) = ψ(s)ψ(c³)`
    ConjugationByB,
    /// `ψ(c³)^m = 1` with `m = ord ψ(s)`
    C3PowerM,
    /// `ψ(c³)³ = 1`
    C3Cubed,
    /// `ψ(c³) = 1`
    C3Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArgumentFailure {
    pub hom: Assignment,
    pub step: ArgumentStep,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArgumentReport {
    pub target: String,
    pub homs_checked: usize,
    pub failures: Vec<ArgumentFailure>,
}

impl ArgumentReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Replays the chain `ord ψ(s)` prime to 3 ⟹ `ψ(c³) = 1` on every hom of a scan.
pub fn check_c3_argument(table: &FiniteGroupTable, result: &HomSearchResult) -> ArgumentReport {
    let mut failures = Vec::new();
    for h in &result.homs {
        let [b, c, s, _] = *h;
        let m = table.element_order(s);
        let c3 = table.power(c, 3);
        let steps = [
            (ArgumentStep::OrderPreservedByCubing, table.element_order(table.power(s, 3)) == m),
            (ArgumentStep::OrderPrimeTo3, m.gcd(&3) == 1),
            (
                ArgumentStep::ConjugationByB,
                table.op(table.op(table.inverse(b), s), b) == table.op(s, c3),
            ),
            (ArgumentStep::C3PowerM, table.power(c3, m as i64) == table.identity),
            (ArgumentStep::C3Cubed, table.power(c3, 3) == table.identity),
            (ArgumentStep::C3Trivial, c3 == table.identity),
        ];
        if let Some((step, _)) = steps.iter().find(|(_, ok)| !ok) {
            failures.push(ArgumentFailure { hom: *h, step: *step });
        }
    }
    ArgumentReport {
        target: result.target.clone(),
        homs_checked: result.homs.len(),
        failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedQuotient {
    Z2Cube,
    Zq(u64),
    Z3FreeZ,
}

impl std::str::FromStr for NamedQuotient {
    type Err = Error;

    fn from_str(s: &str) -> Result<NamedQuotient> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "z2cube" => Ok(NamedQuotient::Z2Cube),
            "z3freez" => Ok(NamedQuotient::Z3FreeZ),
            _ => lower
                .strip_prefix("zq(")
                .and_then(|x| x.strip_suffix(')'))
                .and_then(|x| x.trim().parse().ok())
                .map(NamedQuotient::Zq)
                .ok_or_else(|| Error::Target(format!("unknown quotient `{s}`"))),
        }
    }
}

impl std::fmt::Display for NamedQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NamedQuotient::Z2Cube => write!(f, "z2cube"),
            NamedQuotient::Zq(q) => write!(f, "zq({q})"),
            NamedQuotient::Z3FreeZ => write!(f, "z3freez"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub name: String,
    pub evidence: Vec<Evidence>,
    pub pass: bool,
}

impl NamedQuotient {
    /// The quotient map `H₂ → target` by generator images.
    pub fn map(&self) -> Result<Hom> {
        let (kind, images): (TargetKind, [&str; 4]) = match self {
            NamedQuotient::Z2Cube => (TargetKind::Z2Cube, ["b", "1", "s", "t"]),
            NamedQuotient::Zq(q) => (TargetKind::ZqSemidirect(*q), ["1", "1", "s", "t"]),
            NamedQuotient::Z3FreeZ => (TargetKind::Z3FreeZ, ["1", "c", "1", "t"]),
        };
        if let NamedQuotient::Zq(q) = self {
            ZqSemidirect::new(*q)?;
        }
        Hom::new(
            self.to_string(),
            Level::H2,
            GroupRef::Target(kind),
            H2_LETTERS.iter().copied().zip(images.iter().map(|t| w(t))),
        )
    }

    /// Normal generators the map must kill.
    pub fn killed(&self) -> Vec<Word> {
        match self {
            NamedQuotient::Z2Cube => vec![w("c"), w("s^2"), w("t^2"), w("t^-1 b t b^-1")],
            NamedQuotient::Zq(q) => vec![w("b"), w("c"), Word::power(Letter::S, *q)],
            NamedQuotient::Z3FreeZ => vec![w("b"), w("c^3"), w("s")],
        }
    }
}

/// Well-definedness and kernel of the quotient map, plus the target fact
/// (`Z₂³` needs three generators; the others are not cyclic).
pub fn check_named_quotient(tower: &Tower, q: &NamedQuotient) -> Result<QuotientReport> {
    let mut hom = q.map()?;
    let cert = hom.check_well_defined(tower)?;
    let mut evidence = cert.evidence;
    let solver = crate::morphisms::Solver::new(tower, hom.codomain())?;
    for k in q.killed() {
        let image = hom.substitute(&k)?;
        let pass = solver.is_trivial(&image)?;
        evidence.push(Evidence::new(format!("{k} maps to 1"), vec![k, image], pass));
    }
    match q {
        NamedQuotient::Z2Cube => {
            let g = Z2Cube;
            let spanned = |x: u8, y: u8| -> usize {
                let set: std::collections::BTreeSet<u8> = [g.identity(), x, y, g.mul(&x, &y)].into();
                set.len()
            };
            let pairs: Vec<(u8, u8)> = Z2Cube::elements().flat_map(|x| Z2Cube::elements().map(move |y| (x, y))).collect();
            let generating = pairs.iter().filter(|(x, y)| spanned(*x, *y) == 8).count();
            evidence.push(Evidence::new(
                format!("none of the {} pairs generates Z2^3", pairs.len()),
                vec![],
                generating == 0,
            ));
        }
        NamedQuotient::Zq(qq) => {
            let g = ZqSemidirect::new(*qq)?;
            let s = g.letter(Letter::S).expect("s");
            let t = g.letter(Letter::T).expect("t");
            evidence.push(Evidence::new(
                format!("s has finite order {qq}"),
                vec![w("s")],
                order_up_to(&g, &s, *qq) == Some(*qq),
            ));
            // the t-coordinate is a homomorphism onto Z sending t to 1
            let t_power = g.pow(&t, &10.into());
            evidence.push(Evidence::new(
                "t has infinite order (t-coordinate of t^10 is 10)",
                vec![w("t")],
                powers_distinct(&g, &t, 10) && t_power.1 == 10.into(),
            ));
        }
        NamedQuotient::Z3FreeZ => {
            let g = z3_free_z();
            let c = g.letter(Letter::C).expect("c");
            let t = g.letter(Letter::T).expect("t");
            evidence.push(Evidence::new("c has order 3", vec![w("c")], order_up_to(&g, &c, 3) == Some(3)));
            evidence.push(Evidence::new(
                "t^1..t^10 are pairwise distinct",
                vec![w("t")],
                powers_distinct(&g, &t, 10),
            ));
        }
    }
    let pass = evidence.iter().all(|e| e.pass);
    Ok(QuotientReport {
        name: q.to_string(),
        evidence,
        pass,
    })
}
