//! Seeded generators shared by the property and acceptance suites.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tricomb::exactalg::{FGAbelianGroup, GroupElement, IntMatrix};
use tricomb::surgery::{apply_move, FramedLinkMatrix, KirbyMove, MoveScript, Sign};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_symmetric_rows(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    entry_bound: i64,
) -> Vec<Vec<i64>> {
    let n = rng.gen_range(1..=max_n);
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = rng.gen_range(-entry_bound..=entry_bound);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    rows
}

pub fn random_framed_link(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    entry_bound: i64,
) -> FramedLinkMatrix {
    FramedLinkMatrix::from_rows(&random_symmetric_rows(rng, max_n, entry_bound))
        .expect("construction is symmetric")
}

/// Random f.g. abelian group with free rank ≤ 2 and at most 3 torsion
/// factors, each at most 12, forming a divisor chain.
pub fn random_group(rng: &mut ChaCha8Rng) -> FGAbelianGroup {
    let free_rank = rng.gen_range(0..=2);
    let mut torsion: Vec<BigInt> = Vec::new();
    let mut d: i64 = [2, 2, 3, 4, 5][rng.gen_range(0..5)];
    let factors = rng.gen_range(0..=3);
    for _ in 0..factors {
        if d > 12 {
            break;
        }
        torsion.push(BigInt::from(d));
        d *= rng.gen_range(1..=3);
    }
    FGAbelianGroup::new(free_rank, torsion).expect("chain by construction")
}

pub fn random_element(rng: &mut ChaCha8Rng, group: &FGAbelianGroup) -> GroupElement {
    let coords: Vec<BigInt> = (0..group.coordinate_count())
        .map(|_| BigInt::from(rng.gen_range(-20i64..=20)))
        .collect();
    group.element(coords).expect("coordinate count matches")
}

pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        // row i += c * row j
        for k in 0..n {
            let add = &c * &m[(j, k)];
            m[(i, k)] += add;
        }
    }
    m
}

/// Random script of valid moves for `start`, built move by move.
pub fn random_valid_script(
    rng: &mut ChaCha8Rng,
    start: &FramedLinkMatrix,
    len: usize,
) -> MoveScript {
    let mut script = MoveScript::new();
    let mut current = start.clone();
    for _ in 0..len {
        let n = current.components();
        let sign = if rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let candidates: Vec<KirbyMove> = {
            let mut c = vec![KirbyMove::BlowUp(sign)];
            if n >= 2 {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                // prefer slides when possible
                c.push(KirbyMove::Slide { i, j, sign });
                c.push(KirbyMove::Slide { i, j, sign });
            }
            for idx in 0..n {
                if apply_move(&current, KirbyMove::BlowDown(idx)).is_ok() {
                    c.push(KirbyMove::BlowDown(idx));
                    break;
                }
            }
            c
        };
        let mv = candidates[rng.gen_range(0..candidates.len())];
        if let Ok(next) = apply_move(&current, mv) {
            current = next;
            script.push(mv);
        }
    }
    script
}
