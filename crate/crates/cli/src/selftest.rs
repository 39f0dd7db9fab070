use rand::{rngs::StdRng, Rng, SeedableRng};
use serde_json::json;

use transvect_core::oracle;
use transvect_core::orbits::{self, DualProblem};
use transvect_core::{FieldMatrix, FieldVector, Functional, SymplecticSpace};

use crate::{CliError, Outcome};

fn random_space(rng: &mut StdRng, p: u8, max_dim: usize, max_span: usize) -> SymplecticSpace {
    loop {
        let dim = rng.gen_range(1..=max_dim);
        let mut g = FieldMatrix::zeros(p, dim, dim);
        for i in 0..dim {
            for j in 0..i {
                let v = rng.gen_range(0..p);
                g.set(i, j, v);
                g.set(j, i, (p - v) % p);
            }
        }
        let m = rng.gen_range(dim..=max_span.max(dim));
        let span: Vec<FieldVector> = (0..m)
            .map(|_| FieldVector::new(p, (0..dim).map(|_| rng.gen_range(0..p)).collect()).unwrap())
            .collect();
        if let Ok(sp) = SymplecticSpace::new(g, Some(span)) {
            return sp;
        }
    }
}

/// Random spaces over GF(2), GF(3) and GF(5); every functional pair is
/// checked against the brute-force orbit partition.
pub fn run(seed: u64, spaces: usize) -> Result<Outcome, CliError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pairs = 0u64;
    let mut mismatches = Vec::new();
    for i in 0..spaces {
        let (p, max_dim) = match i % 3 {
            0 => (2, 5),
            1 => (3, 3),
            _ => (5, 2),
        };
        let sp = random_space(&mut rng, p, max_dim, max_dim + 2);
        let part = oracle::enumerate_dual_orbits(&sp, oracle::budget_from_env())?;
        let n = part.state_count();
        for a in 0..n {
            for b in 0..n {
                let alpha = Functional(FieldVector::decode(p, sp.dim(), a));
                let beta = Functional(FieldVector::decode(p, sp.dim(), b));
                let d = orbits::decide_dual(&DualProblem::new(sp.clone(), alpha, beta)?)?;
                pairs += 1;
                if d.is_same() != part.same_block(a, b) {
                    mismatches.push(json!({"space": i, "from": a, "to": b}));
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    Ok(Outcome {
        json: json!({"seed": seed, "spaces": spaces, "pairs": pairs, "mismatches": mismatches}),
        code: if ok { 0 } else { 2 },
        summary: format!(
            "{pairs} pairs checked, {} mismatch(es)",
            mismatches.len()
        ),
    })
}
