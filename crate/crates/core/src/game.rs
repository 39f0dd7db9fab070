//! Lit-only sigma game: playing a lit vertex toggles the lamps of all its
//! neighbours. This is the dual transvection action over GF(2) on the free
//! space of the graph's vertices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::field::FieldVector;
use crate::graphs::FormGraph;
use crate::orbits::{self, Decision, DualProblem, Move};
use crate::symplectic::{Functional, SymplecticSpace};

pub mod protocol;

/// Graph file / protocol payload: vertex labels (only the count matters)
/// and an edge list over vertex indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<serde_json::Value>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    pub fn to_graph(&self) -> Result<FormGraph> {
        FormGraph::from_edges(self.vertices.len(), &self.edges)
    }

    pub fn to_space(&self) -> Result<SymplecticSpace> {
        SymplecticSpace::from_graph(self.vertices.len(), &self.edges)
    }
}

pub fn lamps_from_bits(bits: &[u8]) -> Result<Functional> {
    Functional::new(2, bits.to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    graph: FormGraph,
    initial: Functional,
    lamps: Functional,
    history: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinLit {
    pub count: usize,
    pub lamps: Vec<u8>,
    /// Moves from the current position to `lamps`.
    pub moves: Vec<usize>,
}

impl GameState {
    pub fn new(graph: FormGraph, lamps: Functional) -> Result<Self> {
        if lamps.coords().p() != 2 || lamps.len() != graph.n() {
            return invalid(format!(
                "lamp configuration of length {} does not fit a graph on {} vertices",
                lamps.len(),
                graph.n()
            ));
        }
        Ok(Self {
            graph,
            initial: lamps.clone(),
            lamps,
            history: Vec::new(),
        })
    }

    pub fn graph(&self) -> &FormGraph {
        &self.graph
    }

    pub fn lamps(&self) -> &Functional {
        &self.lamps
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn space(&self) -> SymplecticSpace {
        SymplecticSpace::new(self.graph.gram(), None).expect("graph Gram matrices are alternating")
    }

    pub fn is_lit(&self, v: usize) -> bool {
        v < self.graph.n() && self.lamps.coords().get(v) == 1
    }

    pub fn legal_moves(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.is_lit(v)).collect()
    }

    pub fn play(&self, v: usize) -> Result<Self> {
        if !self.is_lit(v) {
            return Err(Error::IllegalMove(v));
        }
        let mut next = self.clone();
        next.lamps = toggle_neighbours(&self.graph, &self.lamps, v);
        next.history.push(v);
        Ok(next)
    }

    /// Drops the last move and replays the rest from the initial lamps.
    pub fn undo(&self) -> Option<Self> {
        let (_, rest) = self.history.split_last()?;
        let mut st = Self::new(self.graph.clone(), self.initial.clone()).expect("validated before");
        for &v in rest {
            st = st.play(v).expect("history only contains legal moves");
        }
        Some(st)
    }

    /// Orbit decision for reaching `target`, with a witness move list when
    /// `witness_budget` is given and the search finds one in time.
    pub fn reachable(&self, target: &Functional, witness_budget: Option<usize>) -> Result<Decision> {
        let prob = DualProblem::new(self.space(), self.lamps.clone(), target.clone())?;
        let mut decision = orbits::decide_dual(&prob)?;
        if decision.is_same() && decision.witness.is_none() {
            if let Some(budget) = witness_budget {
                decision.witness = orbits::find_witness(&prob, budget)?;
            }
        }
        Ok(decision)
    }

    /// Fewest lit lamps over the orbit of the current position, by
    /// breadth-first search over moves.
    pub fn min_lit(&self, budget: usize) -> Result<MinLit> {
        let start = self.lamps.clone();
        let mut parent: HashMap<Functional, Option<(Functional, usize)>> =
            HashMap::from([(start.clone(), None)]);
        let mut queue = vec![start.clone()];
        let mut best = start;
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            head += 1;
            if cur.coords().weight() < best.coords().weight() {
                best = cur.clone();
            }
            for v in (0..self.graph.n()).filter(|&v| cur.coords().get(v) == 1) {
                let next = toggle_neighbours(&self.graph, &cur, v);
                if parent.contains_key(&next) {
                    continue;
                }
                if parent.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        what: "minimum-lit search".into(),
                        limit: budget,
                    });
                }
                parent.insert(next.clone(), Some((cur.clone(), v)));
                queue.push(next);
            }
        }
        let mut moves = Vec::new();
        let mut cur = best.clone();
        while let Some(Some((prev, v))) = parent.get(&cur) {
            moves.push(*v);
            cur = prev.clone();
        }
        moves.reverse();
        Ok(MinLit {
            count: best.coords().weight(),
            lamps: best.coords().coords().to_vec(),
            moves,
        })
    }
}

fn toggle_neighbours(g: &FormGraph, lamps: &Functional, v: usize) -> Functional {
    let mut bits = lamps.coords().coords().to_vec();
    for u in g.neighbors(v) {
        bits[u] ^= 1;
    }
    Functional(FieldVector::new(2, bits).expect("bits"))
}

/// Converts a witness over the standard basis into a vertex sequence.
pub fn witness_vertices(moves: &[Move]) -> Vec<usize> {
    moves.iter().map(|m| m.s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::e6_graph;
    use crate::oracle::{enumerate_dual_orbits, DEFAULT_BUDGET};
    use crate::orbits::Certificate;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn lamps(bits: &[u8]) -> Functional {
        lamps_from_bits(bits).unwrap()
    }

    fn k2(bits: &[u8]) -> GameState {
        GameState::new(FormGraph::from_edges(2, &[(0, 1)]).unwrap(), lamps(bits)).unwrap()
    }

    #[test]
    fn legal_moves() {
        assert!(k2(&[0, 0]).legal_moves().is_empty());
        assert_eq!(k2(&[1, 1]).legal_moves(), vec![0, 1]);
        assert_eq!(k2(&[1, 0]).legal_moves(), vec![0]);
    }

    #[test]
    fn play_examples() {
        assert_eq!(k2(&[1, 0]).play(0).unwrap().lamps(), &lamps(&[1, 1]));
        assert_eq!(k2(&[1, 0]).play(1), Err(Error::IllegalMove(1)));
        let p3 = FormGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let st = GameState::new(p3, lamps(&[0, 1, 0])).unwrap();
        assert_eq!(st.play(1).unwrap().lamps(), &lamps(&[1, 1, 1]));
    }

    #[test]
    fn play_is_dual_transvection() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=7);
            let mut g = FormGraph::empty(n);
            for u in 0..n {
                for v in 0..u {
                    if rng.gen_bool(0.4) {
                        g.set_edge(u, v, true);
                    }
                }
            }
            let bits: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let st = GameState::new(g, lamps(&bits)).unwrap();
            let legal = st.legal_moves();
            if legal.is_empty() {
                continue;
            }
            let v = legal[rng.gen_range(0..legal.len())];
            let sp = st.space();
            let played = st.play(v).unwrap();
            let dual = sp.dual_transvection_apply(&sp.spanning_set()[v], 1, st.lamps()).unwrap();
            assert_eq!(played.lamps(), &dual);
            // weight changes by deg(v) - 2 * (lit neighbours)
            let lit_nbrs = st.graph().neighbors(v).filter(|&u| st.is_lit(u)).count() as i64;
            let delta = played.lamps().coords().weight() as i64 - st.lamps().coords().weight() as i64;
            assert_eq!(delta, st.graph().degree(v) as i64 - 2 * lit_nbrs);
        }
    }

    #[test]
    fn undo_replays_history() {
        let st = GameState::new(e6_graph(), lamps(&[1, 0, 0, 0, 0, 0])).unwrap();
        let a = st.play(0).unwrap();
        let b = a.play(1).unwrap();
        assert_eq!(b.undo().unwrap(), a);
        assert_eq!(a.undo().unwrap(), st);
        assert!(st.undo().is_none());
    }

    #[test]
    fn reachability() {
        let st = k2(&[1, 0]);
        assert!(st.reachable(&lamps(&[1, 0]), None).unwrap().is_same());
        assert!(st.reachable(&lamps(&[1, 1]), None).unwrap().is_same());
        let d = st.reachable(&lamps(&[0, 0]), None).unwrap();
        assert_eq!(d.certificate, Some(Certificate::ZeroVsNonzero));
        let d = st.reachable(&lamps(&[0, 1]), Some(100)).unwrap();
        let mut replay = st.clone();
        for v in witness_vertices(d.witness.as_ref().unwrap()) {
            replay = replay.play(v).unwrap();
        }
        assert_eq!(replay.lamps(), &lamps(&[0, 1]));
    }

    #[test]
    fn e6_reachability_matches_oracle() {
        let g = e6_graph();
        let sp = SymplecticSpace::new(g.gram(), None).unwrap();
        let part = enumerate_dual_orbits(&sp, DEFAULT_BUDGET).unwrap();
        for a in 0..64u64 {
            let st = GameState::new(g.clone(), Functional(FieldVector::decode(2, 6, a))).unwrap();
            for b in 0..64u64 {
                let target = Functional(FieldVector::decode(2, 6, b));
                assert_eq!(st.reachable(&target, None).unwrap().is_same(), part.same_block(a, b));
            }
        }
    }

    #[test]
    fn moves_preserve_orbit() {
        let g = e6_graph();
        let st = GameState::new(g, lamps(&[1, 1, 0, 1, 0, 0])).unwrap();
        let targets: Vec<Functional> =
            (0..64).map(|c| Functional(FieldVector::decode(2, 6, c))).collect();
        for v in st.legal_moves() {
            let next = st.play(v).unwrap();
            for t in &targets {
                assert_eq!(
                    st.reachable(t, None).unwrap().is_same(),
                    next.reachable(t, None).unwrap().is_same()
                );
            }
        }
    }

    #[test]
    fn min_lit_examples() {
        assert_eq!(k2(&[0, 0]).min_lit(100).unwrap().count, 0);
        let m = k2(&[1, 1]).min_lit(100).unwrap();
        assert_eq!(m.count, 1);
        let mut st = k2(&[1, 1]);
        for &v in &m.moves {
            st = st.play(v).unwrap();
        }
        assert_eq!(st.lamps().coords().coords(), &m.lamps[..]);
        let big = GameState::new(e6_graph(), lamps(&[1, 1, 1, 1, 1, 1])).unwrap();
        assert!(matches!(big.min_lit(3), Err(Error::BudgetExceeded { .. })));
    }
}
