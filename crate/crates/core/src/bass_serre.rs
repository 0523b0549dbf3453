//! Finite balls in the Bass-Serre tree of `H₂ = ⟨H₁, t | t⁻¹st = s³⟩`.
//!
//! Vertices are cosets `xH₁`, edges are cosets `x⟨s⟩`, and the edge `x⟨s⟩`
//! joins `xH₁` to `xtH₁`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use petgraph::algo::connected_components;
use petgraph::graph::UnGraph;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinators::Group;
use crate::error::{Error, Result};
use crate::h0::H0Element;
use crate::tower::{H1Element, H1Group, H2Elem, Subgroup, Tower};
use crate::words::{Letter, Sign, Word};

pub const DEFAULT_MAX_RADIUS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CosetKind {
    Vertex,
    Edge,
}

/// `x⁻¹y ∈ H₁` for vertices, `x⁻¹y ∈ ⟨s⟩` for edges.
pub fn coset_equal(tower: &Tower, kind: CosetKind, x: &Word, y: &Word) -> Result<bool> {
    let h2 = tower.h2();
    let d = h2.mul(&h2.inv(&h2.eval(x)?), &h2.eval(y)?);
    if !d.tail.is_empty() {
        return Ok(false);
    }
    Ok(match kind {
        CosetKind::Vertex => true,
        CosetKind::Edge => tower.h1_oracle(Subgroup::S).member(h2.base(), &d.head).is_some(),
    })
}

/// `g·rep` and `rep` name the same coset.
pub fn action_fixes(tower: &Tower, g: &Word, kind: CosetKind, rep: &Word) -> Result<bool> {
    coset_equal(tower, kind, &g.concat(rep), rep)
}

/// One step of a canonical coset label: the stable letter's sign and the
/// transversal representative that precedes it.
pub type KeyStep = (Sign, H1Element);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexKey(Vec<KeyStep>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeKey(Vec<KeyStep>, H1Element);

/// Splits `g = r·a` with `r` the transversal representative of `g⟨s⟩`
/// (`ε = +1`) or `g⟨s³⟩` (`ε = -1`), returning `r` and the element
/// `t^-ε a t^ε` of `H₁` that `a` becomes after crossing the stable letter.
fn split(g: &H1Element, sign: Sign) -> (H1Element, H1Element) {
    match sign {
        // s^n h = φ^-n(h) s^n, and s^n t = t s^3n
        Sign::Plus => {
            let n = g.shift.clone();
            let k = n.mod_floor(&BigInt::from(3)).try_into().unwrap_or(0i64);
            (
                H1Element::new(0, g.tail.phi(-k)),
                H1Element::new(n * 3, H0Element::IDENTITY),
            )
        }
        // s^(3q+r) h = s^r h s^3q, and s^3q t^-1 = t^-1 s^q
        Sign::Minus => {
            let (q, r) = g.shift.div_mod_floor(&BigInt::from(3));
            (H1Element::new(r, g.tail), H1Element::new(q, H0Element::IDENTITY))
        }
    }
}

/// Transversal form of a reduced element: the coefficient before each stable
/// letter is a coset representative, and the leftover lands at the end.
fn canonical(h1: &H1Group, x: &H2Elem) -> (Vec<KeyStep>, H1Element) {
    let mut steps = Vec::with_capacity(x.tail.len());
    let mut carry = x.head.clone();
    for step in &x.tail {
        let (rep, pushed) = split(&carry, step.sign);
        steps.push((step.sign, rep));
        carry = h1.mul(&pushed, &step.coef);
    }
    (steps, carry)
}

pub fn vertex_key(tower: &Tower, x: &Word) -> Result<VertexKey> {
    let x = tower.h2().eval(x)?;
    Ok(VertexKey(canonical(tower.h1(), &x).0))
}

pub fn edge_key(tower: &Tower, x: &Word) -> Result<EdgeKey> {
    let x = tower.h2().eval(x)?;
    let (steps, last) = canonical(tower.h1(), &x);
    let (rep, _) = split(&last, Sign::Plus);
    Ok(EdgeKey(steps, rep))
}

/// Representatives of `H₁/⟨s⟩`: the 18 elements of `H₀`.
pub fn edge_out_reps() -> Vec<Word> {
    H0Element::all().map(|h| h.to_word()).collect()
}

/// Representatives of `H₁/⟨s³⟩`: `s^r h` for `r ∈ {0,1,2}`, `h ∈ H₀`.
pub fn edge_in_reps() -> Vec<Word> {
    (0..3)
        .flat_map(|r| H0Element::all().map(move |h| Word::power(Letter::S, r).concat(&h.to_word())))
        .collect()
}

/// The edges at `xH₁` as `(edge representative, far vertex representative)`:
/// `xh⟨s⟩` joining to `xhtH₁`, and `xgt⁻¹⟨s⟩` joining `xgt⁻¹H₁` to `xH₁`.
pub fn incident(x: &Word) -> Vec<(Word, Word)> {
    let t = Word::letter(Letter::T);
    let t_inv = Word::power(Letter::T, -1);
    let mut out = Vec::with_capacity(72);
    for h in edge_out_reps() {
        let e = x.concat(&h);
        let far = e.concat(&t);
        out.push((e, far));
    }
    for g in edge_in_reps() {
        let e = x.concat(&g).concat(&t_inv);
        out.push((e.clone(), e));
    }
    out
}

/// Number of distinct edges at `xH₁`.
pub fn degree(tower: &Tower, x: &Word) -> Result<usize> {
    let mut keys = std::collections::HashSet::new();
    for (e, _) in incident(x) {
        keys.insert(edge_key(tower, &e)?);
    }
    Ok(keys.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct BallVertex {
    pub rep: Word,
    pub depth: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BallEdge {
    pub rep: Word,
    /// Vertex `xH₁`.
    pub origin: usize,
    /// Vertex `xtH₁`.
    pub terminus: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Ball {
    pub radius: usize,
    pub vertices: Vec<BallVertex>,
    pub edges: Vec<BallEdge>,
}

impl Ball {
    pub fn graph(&self) -> UnGraph<String, String> {
        let mut g = UnGraph::new_undirected();
        let ids: Vec<_> = self.vertices.iter().map(|v| g.add_node(v.rep.to_string())).collect();
        for e in &self.edges {
            g.add_edge(ids[e.origin], ids[e.terminus], e.rep.to_string());
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        connected_components(&self.graph()) == 1
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len() && self.is_connected()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.origin == v || e.terminus == v).count()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph bass_serre {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{} H1\"];", v.rep);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -- v{} [label=\"{} <s>\"];", e.origin, e.terminus, e.rep);
        }
        out.push_str("}\n");
        out
    }
}

/// An incident edge, its far vertex, their keys, and whether it points away.
type Incidence = (Word, EdgeKey, Word, VertexKey, bool);

/// Breadth-first ball of the given radius around the vertex `H₁`.
pub fn ball(tower: &Tower, radius: usize, max_radius: usize) -> Result<Ball> {
    if radius > max_radius {
        return Err(Error::Budget(format!("radius {radius} exceeds the limit {max_radius}")));
    }
    let mut vertices = vec![BallVertex {
        rep: Word::empty(),
        depth: 0,
    }];
    let mut vertex_ids: HashMap<VertexKey, usize> = HashMap::new();
    vertex_ids.insert(vertex_key(tower, &Word::empty())?, 0);
    let mut edge_ids: HashMap<EdgeKey, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for depth in 0..radius {
        // keys are computed in parallel, merged in frontier order
        let expanded: Vec<Vec<Incidence>> = frontier
            .par_iter()
            .map(|&v| {
                let x = &vertices[v].rep;
                let mut out = Vec::new();
                for (i, (e, far)) in incident(x).into_iter().enumerate() {
                    let outward = i < 18;
                    let ek = edge_key(tower, &e)?;
                    let vk = vertex_key(tower, &far)?;
                    out.push((e, ek, far, vk, outward));
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (&v, list) in frontier.iter().zip(expanded) {
            for (e, ek, far, vk, outward) in list {
                if edge_ids.contains_key(&ek) {
                    continue;
                }
                let w = match vertex_ids.get(&vk) {
                    Some(&w) => w,
                    None => {
                        let w = vertices.len();
                        vertices.push(BallVertex { rep: far, depth: depth + 1 });
                        vertex_ids.insert(vk, w);
                        next.push(w);
                        w
                    }
                };
                let (origin, terminus) = if outward { (v, w) } else { (w, v) };
                edge_ids.insert(ek, edges.len());
                edges.push(BallEdge { rep: e, origin, terminus });
            }
        }
        frontier = next;
    }
    Ok(Ball {
        radius,
        vertices,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn tower() -> &'static Tower {
        Tower::shared()
    }

    #[test]
    fn coset_equality_examples() {
        let t = tower();
        assert!(coset_equal(t, CosetKind::Vertex, &w(""), &w("s^5 b c^2")).unwrap());
        assert!(!coset_equal(t, CosetKind::Vertex, &w(""), &w("t")).unwrap());
        assert!(coset_equal(t, CosetKind::Edge, &w(""), &w("s^3")).unwrap());
        assert!(!coset_equal(t, CosetKind::Edge, &w(""), &w("b")).unwrap());
    }

    #[test]
    fn action_examples() {
        let t = tower();
        assert!(action_fixes(t, &w("s"), CosetKind::Vertex, &w("")).unwrap());
        assert!(action_fixes(t, &w("s"), CosetKind::Vertex, &w("t")).unwrap());
        assert!(!action_fixes(t, &w("s"), CosetKind::Edge, &w("t^-1")).unwrap());
        assert!(action_fixes(t, &w("s^3"), CosetKind::Edge, &w("t^-1")).unwrap());
    }

    #[test]
    fn keys_agree_with_coset_equality() {
        let t = tower();
        let samples = [
            "", "b", "s", "s^3", "t", "s t", "s^3 t", "t s", "t^-1", "s^3 t^-1", "s t^-1", "b t^-1 s^3",
            "t s^2 t^-1", "t s^3 t^-1", "s^-1 t b", "c^3 t b t", "s^6 t^-1 b",
        ];
        for x in samples {
            for y in samples {
                for kind in [CosetKind::Vertex, CosetKind::Edge] {
                    let eq = coset_equal(t, kind, &w(x), &w(y)).unwrap();
                    let keys = match kind {
                        CosetKind::Vertex => vertex_key(t, &w(x)).unwrap() == vertex_key(t, &w(y)).unwrap(),
                        CosetKind::Edge => edge_key(t, &w(x)).unwrap() == edge_key(t, &w(y)).unwrap(),
                    };
                    assert_eq!(eq, keys, "{kind:?} {x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn ball_zero_and_one() {
        let t = tower();
        let b0 = ball(t, 0, 2).unwrap();
        assert_eq!((b0.vertices.len(), b0.edges.len()), (1, 0));
        let b1 = ball(t, 1, 2).unwrap();
        assert_eq!(b1.degree(0), 72);
        assert!(b1.is_tree());
        // the edge <s> joins H1 and tH1
        let e = b1.edges.iter().find(|e| e.rep.is_empty()).unwrap();
        assert_eq!(e.origin, 0);
        assert!(coset_equal(t, CosetKind::Vertex, &b1.vertices[e.terminus].rep, &w("t")).unwrap());
        assert!(matches!(ball(t, 3, 2), Err(Error::Budget(_))));
    }

    #[test]
    fn ball_one_is_deduplicated_exactly() {
        let t = tower();
        let b1 = ball(t, 1, 2).unwrap();
        let reps: Vec<&Word> = b1.vertices.iter().map(|v| &v.rep).collect();
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                assert!(!coset_equal(t, CosetKind::Vertex, reps[i], reps[j]).unwrap());
            }
        }
        let erps: Vec<&Word> = b1.edges.iter().map(|e| &e.rep).collect();
        for i in 0..erps.len() {
            for j in (i + 1)..erps.len() {
                assert!(!coset_equal(t, CosetKind::Edge, erps[i], erps[j]).unwrap());
            }
        }
    }

    #[test]
    fn edge_stabilizers_at_the_base() {
        let t = tower();
        for h in edge_out_reps() {
            let g = h.concat(&w("s")).concat(&h.inverse());
            assert!(action_fixes(t, &g, CosetKind::Edge, &h).unwrap(), "{h}");
        }
    }

    #[test]
    fn dot_output_mentions_every_edge() {
        let b1 = ball(tower(), 1, 2).unwrap();
        let dot = b1.to_dot();
        assert!(dot.starts_with("graph"));
        assert_eq!(dot.matches(" -- ").count(), 72);
    }
}
