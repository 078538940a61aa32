//! Evenization: Kirby-move scripts making every framing even.
//!
//! Strategy, in order:
//!
//! 1. fast path — the diagonal is already even;
//! 2. guided phase — merge the characteristic sublink into a single
//!    pivot component by slides, drive the pivot framing to ±1 with
//!    blow-up/slide steps, clear all linkings with the pivot (each unit
//!    slide over the ±1 pivot flips the parity of the slid component,
//!    and a component's framing parity equals its linking parity with
//!    the pivot once the pivot is the whole characteristic sublink), and
//!    blow the pivot down;
//! 3. fallback — bounded iterative-deepening search over all moves,
//!    reporting budget exhaustion with the best partial script instead
//!    of failing silently.
//!
//! Every returned witness is machine-verified before it leaves this
//! module: parity of the result, script replay from the input, and
//! equality of cokernel invariant factors.

use num_traits::{One, Signed, Zero};

use super::charsub::{characteristic_solutions, handle_parity};
use super::link::FramedLinkMatrix;
use super::moves::{apply_move, apply_script, KirbyMove, MoveScript, Sign};
use crate::exactalg::cokernel;

/// Budgets for [`evenize_with`]. The defaults bound only the fallback
/// search; the guided phase is limited by `guided_move_limit` as a
/// safety net.
#[derive(Debug, Clone)]
pub struct EvenizeConfig {
    /// Maximum script length explored by the fallback search.
    pub search_depth: usize,
    /// Maximum number of blow-ups (stabilizations) in a searched script.
    pub search_max_blowups: usize,
    /// The fallback search is attempted only for links of at most this
    /// many components.
    pub search_max_components: usize,
    /// Total states the fallback search may visit before reporting
    /// exhaustion.
    pub search_node_budget: usize,
    /// Hard cap on guided-phase script length.
    pub guided_move_limit: usize,
}

impl Default for EvenizeConfig {
    fn default() -> Self {
        EvenizeConfig {
            search_depth: 12,
            search_max_blowups: 2,
            search_max_components: 6,
            search_node_budget: 200_000,
            guided_move_limit: 100_000,
        }
    }
}

/// Which strategy produced the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvenizePhase {
    AlreadyEven,
    Guided,
    Search,
}

impl std::fmt::Display for EvenizePhase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EvenizePhase::AlreadyEven => f.write_str("already-even"),
            EvenizePhase::Guided => f.write_str("guided"),
            EvenizePhase::Search => f.write_str("search"),
        }
    }
}

/// A verified evenization witness.
#[derive(Debug, Clone)]
pub struct Evenized {
    pub result: FramedLinkMatrix,
    pub script: MoveScript,
    pub phase: EvenizePhase,
}

#[derive(Debug, thiserror::Error)]
pub enum EvenizeError {
    #[error(
        "search budget exhausted (depth {depth}, {nodes} states); \
         best partial script leaves {odd_remaining} odd framings"
    )]
    BudgetExhausted {
        depth: usize,
        nodes: usize,
        odd_remaining: usize,
        partial: MoveScript,
    },
    #[error("witness verification failed: {0}")]
    VerificationFailed(String),
}

/// Evenize with default budgets.
pub fn evenize(f: &FramedLinkMatrix) -> Result<Evenized, EvenizeError> {
    evenize_with(f, &EvenizeConfig::default())
}

pub fn evenize_with(f: &FramedLinkMatrix, cfg: &EvenizeConfig) -> Result<Evenized, EvenizeError> {
    if handle_parity(f).all_even {
        return Ok(Evenized {
            result: f.clone(),
            script: MoveScript::new(),
            phase: EvenizePhase::AlreadyEven,
        });
    }
    let (result, script, phase) = match guided(f, cfg) {
        Ok((result, script)) => (result, script, EvenizePhase::Guided),
        Err(_) => {
            let (result, script) = search(f, cfg)?;
            (result, script, EvenizePhase::Search)
        }
    };
    verify_witness(f, &result, &script)?;
    Ok(Evenized {
        result,
        script,
        phase,
    })
}

fn verify_witness(
    original: &FramedLinkMatrix,
    result: &FramedLinkMatrix,
    script: &MoveScript,
) -> Result<(), EvenizeError> {
    if !handle_parity(result).all_even {
        return Err(EvenizeError::VerificationFailed(
            "result diagonal is not even".into(),
        ));
    }
    match apply_script(original, script) {
        Ok(replayed) if &replayed == result => {}
        Ok(_) => {
            return Err(EvenizeError::VerificationFailed(
                "script replay does not reproduce the result".into(),
            ))
        }
        Err(e) => {
            return Err(EvenizeError::VerificationFailed(format!(
                "script does not replay: {e}"
            )))
        }
    }
    if cokernel(original.matrix()) != cokernel(result.matrix()) {
        return Err(EvenizeError::VerificationFailed(
            "cokernel changed under the script".into(),
        ));
    }
    Ok(())
}

struct GuidedFail;

struct Recorder {
    current: FramedLinkMatrix,
    script: MoveScript,
    limit: usize,
}

impl Recorder {
    fn apply(&mut self, mv: KirbyMove) -> Result<(), GuidedFail> {
        if self.script.len() >= self.limit {
            return Err(GuidedFail);
        }
        match apply_move(&self.current, mv) {
            Ok(next) => {
                self.current = next;
                self.script.push(mv);
                Ok(())
            }
            Err(_) => Err(GuidedFail),
        }
    }
}

/// Kaplan-style guided evenization. `f` has at least one odd framing.
fn guided(
    f: &FramedLinkMatrix,
    cfg: &EvenizeConfig,
) -> Result<(FramedLinkMatrix, MoveScript), GuidedFail> {
    let mut rec = Recorder {
        current: f.clone(),
        script: MoveScript::new(),
        limit: cfg.guided_move_limit,
    };

    // Merge the characteristic sublink into a single pivot: sliding the
    // pivot over another member removes that member from the sublink
    // (indicators transform by x ↦ E⁻ᵀx under a slide).
    let x = characteristic_solutions(&rec.current).canonical.indicator;
    let support: Vec<usize> = (0..x.len()).filter(|&i| x[i]).collect();
    let &pivot = support
        .first()
        .expect("odd diagonal forces a nonzero indicator");
    for &j in &support[1..] {
        rec.apply(KirbyMove::Slide {
            i: pivot,
            j,
            sign: Sign::Plus,
        })?;
    }

    // Drive the pivot framing to ±1. Each round blows up a distant ±1
    // unknot and slides the pivot over it once: the fresh component is
    // unlinked at slide time, so the pivot framing moves by exactly ±1,
    // and the indicator support stays {pivot}.
    loop {
        let fp = rec.current.framing(pivot).clone();
        if fp.abs().is_one() {
            break;
        }
        let sign = if fp >= One::one() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let fresh = rec.current.components();
        rec.apply(KirbyMove::BlowUp(sign))?;
        rec.apply(KirbyMove::Slide {
            i: pivot,
            j: fresh,
            sign: Sign::Plus,
        })?;
    }

    // Clear every linking with the pivot by unit slides. A component
    // linked l times with the pivot has framing parity l; the |l|
    // clearing slides flip its parity |l| times, leaving it even.
    let pivot_positive = rec.current.framing(pivot).is_positive();
    let n = rec.current.components();
    for i in 0..n {
        if i == pivot {
            continue;
        }
        loop {
            let l = rec.current.linking(i, pivot).clone();
            if l.is_zero() {
                break;
            }
            let sign = if l.is_positive() == pivot_positive {
                Sign::Minus
            } else {
                Sign::Plus
            };
            rec.apply(KirbyMove::Slide { i, j: pivot, sign })?;
        }
    }

    rec.apply(KirbyMove::BlowDown(pivot))?;
    Ok((rec.current, rec.script))
}

fn odd_count(f: &FramedLinkMatrix) -> usize {
    handle_parity(f).parities.iter().filter(|&&p| p).count()
}

struct SearchCtx<'a> {
    cfg: &'a EvenizeConfig,
    nodes: usize,
    best_odd: usize,
    best_script: MoveScript,
}

/// Bounded iterative-deepening search over all Kirby moves, deepest
/// budgets first-by-order deterministic.
fn search(
    f: &FramedLinkMatrix,
    cfg: &EvenizeConfig,
) -> Result<(FramedLinkMatrix, MoveScript), EvenizeError> {
    let exhausted = |ctx: &SearchCtx<'_>, depth: usize| EvenizeError::BudgetExhausted {
        depth,
        nodes: ctx.nodes,
        odd_remaining: ctx.best_odd,
        partial: ctx.best_script.clone(),
    };
    let mut ctx = SearchCtx {
        cfg,
        nodes: 0,
        best_odd: odd_count(f),
        best_script: MoveScript::new(),
    };
    if f.components() > cfg.search_max_components {
        return Err(exhausted(&ctx, 0));
    }
    for depth in 1..=cfg.search_depth {
        let mut script = MoveScript::new();
        if let Some(result) = dfs(f, depth, 0, &mut script, &mut ctx) {
            return Ok((result, script));
        }
        if ctx.nodes >= cfg.search_node_budget {
            return Err(exhausted(&ctx, depth));
        }
    }
    Err(exhausted(&ctx, cfg.search_depth))
}

fn dfs(
    state: &FramedLinkMatrix,
    remaining: usize,
    blowups: usize,
    script: &mut MoveScript,
    ctx: &mut SearchCtx<'_>,
) -> Option<FramedLinkMatrix> {
    ctx.nodes += 1;
    let odd = odd_count(state);
    if odd < ctx.best_odd {
        ctx.best_odd = odd;
        ctx.best_script = script.clone();
    }
    if odd == 0 {
        return Some(state.clone());
    }
    if remaining == 0 || ctx.nodes >= ctx.cfg.search_node_budget {
        return None;
    }
    let n = state.components();
    let mut candidates: Vec<KirbyMove> = Vec::new();
    for i in 0..n {
        candidates.push(KirbyMove::BlowDown(i));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                candidates.push(KirbyMove::Slide {
                    i,
                    j,
                    sign: Sign::Plus,
                });
                candidates.push(KirbyMove::Slide {
                    i,
                    j,
                    sign: Sign::Minus,
                });
            }
        }
    }
    if blowups < ctx.cfg.search_max_blowups && n < ctx.cfg.search_max_components {
        candidates.push(KirbyMove::BlowUp(Sign::Plus));
        candidates.push(KirbyMove::BlowUp(Sign::Minus));
    }
    for mv in candidates {
        let Ok(next) = apply_move(state, mv) else {
            continue;
        };
        script.push(mv);
        let next_blowups = blowups + usize::from(matches!(mv, KirbyMove::BlowUp(_)));
        if let Some(found) = dfs(&next, remaining - 1, next_blowups, script, ctx) {
            return Some(found);
        }
        script.pop();
        if ctx.nodes >= ctx.cfg.search_node_budget {
            return None;
        }
    }
    None
}
