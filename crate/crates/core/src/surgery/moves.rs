//! Kirby moves on linking matrices and replayable move scripts.
//!
//! Matrix semantics:
//! - blow-up: `Q ↦ Q ⊕ (±1)`, a distant unknotted ±1-framed component;
//! - blow-down at `i`: allowed when row `i` is `±1` on the diagonal and
//!   zero elsewhere, deletes row and column `i`;
//! - handle slide of `i` over `j` with sign `s`: `Q ↦ E·Q·Eᵀ` where `E`
//!   is the identity plus `s` in entry `(i, j)`, so the framing becomes
//!   `f_i + 2s·Q[i,j] + f_j`.
//!
//! Every move preserves symmetry and the cokernel isomorphism class.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::link::FramedLinkMatrix;
use crate::exactalg::IntMatrix;
use crate::textfmt::{ParseError, Tokens};

/// Sign of a blow-up or a slide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+1"),
            Sign::Minus => f.write_str("-1"),
        }
    }
}

/// A single Kirby move; indices are 0-based in memory and 1-based in
/// the script file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KirbyMove {
    BlowUp(Sign),
    BlowDown(usize),
    Slide { i: usize, j: usize, sign: Sign },
}

impl fmt::Display for KirbyMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KirbyMove::BlowUp(s) => write!(f, "blowup {s}"),
            KirbyMove::BlowDown(i) => write!(f, "blowdown {}", i + 1),
            KirbyMove::Slide { i, j, sign } => write!(f, "slide {} {} {sign}", i + 1, j + 1),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("component index {index} out of range (n={n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot slide component {0} over itself")]
    SelfSlide(usize),
    #[error(
        "blow-down of component {index} requires framing ±1 and no linking, \
         found framing {framing} with nonzero linkings at {linked:?}"
    )]
    BlowDownPrecondition {
        index: usize,
        framing: BigInt,
        linked: Vec<usize>,
    },
}

/// Error of a script replay: the first invalid move and its position.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("move {position} ({mv}): {source}")]
pub struct ScriptError {
    /// 1-based position in the script.
    pub position: usize,
    pub mv: KirbyMove,
    pub source: MoveError,
}

/// Add a distant unknot with framing ±1: `Q ↦ Q ⊕ (±1)`.
pub fn blow_up(f: &FramedLinkMatrix, sign: Sign) -> FramedLinkMatrix {
    let one = IntMatrix::new(1, 1, vec![BigInt::from(sign.to_i64())]).expect("1x1");
    let matrix = f.matrix().direct_sum(&one);
    let mut labels = f.labels().to_vec();
    labels.push(f.fresh_label());
    FramedLinkMatrix::replace_parts(matrix, labels)
}

/// Delete an unlinked ±1-framed component.
pub fn blow_down(f: &FramedLinkMatrix, i: usize) -> Result<FramedLinkMatrix, MoveError> {
    let n = f.components();
    if i >= n {
        return Err(MoveError::IndexOutOfRange { index: i, n });
    }
    let framing = f.framing(i).clone();
    let linked: Vec<usize> = (0..n)
        .filter(|&j| j != i && !f.linking(i, j).is_zero())
        .collect();
    if !framing.abs().is_one() || !linked.is_empty() {
        return Err(MoveError::BlowDownPrecondition {
            index: i,
            framing,
            linked,
        });
    }
    let matrix = f.matrix().delete_row_col(i);
    let mut labels = f.labels().to_vec();
    labels.remove(i);
    Ok(FramedLinkMatrix::replace_parts(matrix, labels))
}

/// Slide component `i` over component `j`: congruence by the elementary
/// matrix `E = I + sign·e_{ij}`.
pub fn handle_slide(
    f: &FramedLinkMatrix,
    i: usize,
    j: usize,
    sign: Sign,
) -> Result<FramedLinkMatrix, MoveError> {
    let n = f.components();
    if i >= n {
        return Err(MoveError::IndexOutOfRange { index: i, n });
    }
    if j >= n {
        return Err(MoveError::IndexOutOfRange { index: j, n });
    }
    if i == j {
        return Err(MoveError::SelfSlide(i));
    }
    let s = BigInt::from(sign.to_i64());
    let mut m = f.matrix().clone();
    // row i += s * row j, then col i += s * col j
    for c in 0..n {
        let add = &s * &m[(j, c)];
        m[(i, c)] += add;
    }
    for r in 0..n {
        let add = &s * &m[(r, j)];
        m[(r, i)] += add;
    }
    Ok(FramedLinkMatrix::replace_parts(m, f.labels().to_vec()))
}

/// Apply one move.
pub fn apply_move(f: &FramedLinkMatrix, mv: KirbyMove) -> Result<FramedLinkMatrix, MoveError> {
    match mv {
        KirbyMove::BlowUp(sign) => Ok(blow_up(f, sign)),
        KirbyMove::BlowDown(i) => blow_down(f, i),
        KirbyMove::Slide { i, j, sign } => handle_slide(f, i, j, sign),
    }
}

/// Ordered, replayable list of Kirby moves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveScript(Vec<KirbyMove>);

impl MoveScript {
    pub fn new() -> Self {
        MoveScript(Vec::new())
    }

    pub fn from_moves(moves: Vec<KirbyMove>) -> Self {
        MoveScript(moves)
    }

    pub fn push(&mut self, mv: KirbyMove) {
        self.0.push(mv);
    }

    pub fn pop(&mut self) -> Option<KirbyMove> {
        self.0.pop()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[KirbyMove] {
        &self.0
    }

    /// One move per line, 1-based indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for mv in &self.0 {
            out.push_str(&mv.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self, ParseError> {
        let mut toks = Tokens::new(input);
        let mut moves = Vec::new();
        let parse_sign = |toks: &mut Tokens<'_>| -> Result<Sign, ParseError> {
            let tok = toks.next_token("+1 or -1")?;
            match tok {
                "+1" | "+" | "1" => Ok(Sign::Plus),
                "-1" | "-" => Ok(Sign::Minus),
                other => Err(ParseError::new(
                    toks.current_line(),
                    format!("expected +1 or -1, found {other:?}"),
                )),
            }
        };
        let parse_index = |toks: &mut Tokens<'_>| -> Result<usize, ParseError> {
            let idx: usize = toks.next_parsed("1-based component index")?;
            if idx == 0 {
                return Err(ParseError::new(
                    toks.current_line(),
                    "component indices are 1-based",
                ));
            }
            Ok(idx - 1)
        };
        while !toks.is_empty() {
            let keyword = toks.next_token("move keyword")?;
            let mv = match keyword {
                "blowup" => KirbyMove::BlowUp(parse_sign(&mut toks)?),
                "blowdown" => KirbyMove::BlowDown(parse_index(&mut toks)?),
                "slide" => {
                    let i = parse_index(&mut toks)?;
                    let j = parse_index(&mut toks)?;
                    let sign = parse_sign(&mut toks)?;
                    KirbyMove::Slide { i, j, sign }
                }
                other => {
                    return Err(ParseError::new(
                        toks.current_line(),
                        format!("unknown move {other:?}"),
                    ));
                }
            };
            moves.push(mv);
        }
        Ok(MoveScript(moves))
    }
}

impl<'a> IntoIterator for &'a MoveScript {
    type Item = &'a KirbyMove;
    type IntoIter = std::slice::Iter<'a, KirbyMove>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Deterministic replay of a script; fails on the first invalid move,
/// reporting its 1-based position.
pub fn apply_script(
    f: &FramedLinkMatrix,
    script: &MoveScript,
) -> Result<FramedLinkMatrix, ScriptError> {
    let mut current = f.clone();
    for (pos, &mv) in script.moves().iter().enumerate() {
        current = apply_move(&current, mv).map_err(|source| ScriptError {
            position: pos + 1,
            mv,
            source,
        })?;
    }
    Ok(current)
}
