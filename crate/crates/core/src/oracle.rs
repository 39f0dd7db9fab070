//! Brute-force orbit enumeration. States are integer-encoded (base-p digits,
//! little-endian) and explored breadth-first in ascending seed order, so the
//! resulting partition is canonical: blocks are sorted internally and ordered
//! by their smallest element.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{self, FieldVector};
use crate::symplectic::{Functional, SymplecticSpace};

pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Budget from `TRANSVECT_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("TRANSVECT_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub p: u8,
    pub dim: usize,
    pub blocks: Vec<Vec<u64>>,
    #[serde(skip)]
    block_of: Vec<u32>,
}

impl OrbitPartition {
    pub fn state_count(&self) -> u64 {
        self.block_of.len() as u64
    }

    pub fn block_index(&self, code: u64) -> usize {
        self.block_of[code as usize] as usize
    }

    pub fn same_block(&self, a: u64, b: u64) -> bool {
        self.block_of[a as usize] == self.block_of[b as usize]
    }

    pub fn block_containing(&self, code: u64) -> &[u64] {
        &self.blocks[self.block_index(code)]
    }

    pub fn non_singleton_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() > 1).count()
    }
}

/// Which group acts on the enumerated states.
#[derive(Clone, Debug)]
pub enum Action<'a> {
    /// `α ↦ α ∘ τ_{s,k}` on functionals.
    Dual,
    /// `x ↦ τ_{s,k}(x)` on vectors.
    Vector,
    /// `x ↦ τ^{α(s)}_{s,k}(x)` on vectors.
    Affine(&'a Functional),
}

fn check_budget(sp: &SymplecticSpace, budget: u64) -> Result<u64> {
    let states = (sp.p() as u64).checked_pow(sp.dim() as u32);
    match states {
        Some(n) if n <= budget => Ok(n),
        _ => Err(Error::BudgetExceeded {
            what: format!("orbit enumeration over GF({})^{}", sp.p(), sp.dim()),
            limit: budget as usize,
        }),
    }
}

/// One generator application on an encoded state.
struct Generators<'a> {
    sp: &'a SymplecticSpace,
    action: Action<'a>,
    /// `G·s` for each spanning vector (the row `ω(·, s)`).
    omega_rows: Vec<FieldVector>,
}

impl<'a> Generators<'a> {
    fn new(sp: &'a SymplecticSpace, action: Action<'a>) -> Self {
        let omega_rows = sp.spanning_set().iter().map(|s| sp.gram().mul_vec(s)).collect();
        Self {
            sp,
            action,
            omega_rows,
        }
    }

    fn neighbours(&self, state: &FieldVector, out: &mut Vec<u64>) {
        let p = self.sp.p();
        for (s, row) in self.sp.spanning_set().iter().zip(&self.omega_rows) {
            // every generator with spanning vector s adds a multiple of one
            // fixed vector, scaled by k
            let (coef, dir) = match self.action {
                Action::Dual => (state.dot(s), row),
                Action::Vector => (row.dot(state), s),
                Action::Affine(alpha) => (field::add(p, row.dot(state), alpha.eval(s)), s),
            };
            if coef == 0 {
                continue;
            }
            for k in 1..p {
                out.push(state.add_scaled(field::mul(p, k, coef), dir).encode());
            }
        }
    }
}

/// Orbits of the chosen action on all `p^dim` states.
pub fn enumerate_orbits(sp: &SymplecticSpace, action: Action<'_>, budget: u64) -> Result<OrbitPartition> {
    let n = check_budget(sp, budget)?;
    let gens = Generators::new(sp, action);
    let (p, dim) = (sp.p(), sp.dim());
    let mut block_of = vec![u32::MAX; n as usize];
    let mut blocks = Vec::new();
    let mut scratch = Vec::new();
    for seed in 0..n {
        if block_of[seed as usize] != u32::MAX {
            continue;
        }
        let id = blocks.len() as u32;
        block_of[seed as usize] = id;
        let mut block = vec![seed];
        let mut head = 0;
        while head < block.len() {
            let state = FieldVector::decode(p, dim, block[head]);
            head += 1;
            scratch.clear();
            gens.neighbours(&state, &mut scratch);
            for &next in &scratch {
                if block_of[next as usize] == u32::MAX {
                    block_of[next as usize] = id;
                    block.push(next);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    Ok(OrbitPartition {
        p,
        dim,
        blocks,
        block_of,
    })
}

pub fn enumerate_dual_orbits(sp: &SymplecticSpace, budget: u64) -> Result<OrbitPartition> {
    enumerate_orbits(sp, Action::Dual, budget)
}

pub fn enumerate_vector_orbits(sp: &SymplecticSpace, budget: u64) -> Result<OrbitPartition> {
    enumerate_orbits(sp, Action::Vector, budget)
}

pub fn enumerate_affine_orbits(
    sp: &SymplecticSpace,
    alpha: &Functional,
    budget: u64,
) -> Result<OrbitPartition> {
    if alpha.coords().p() != sp.p() || alpha.len() != sp.dim() {
        return Err(Error::InvalidInput("functional does not match the space".into()));
    }
    enumerate_orbits(sp, Action::Affine(alpha), budget)
}
