//! Symbolic ledger of combings and their comparison classes.
//!
//! Combings are opaque symbols; the ledger tracks exactly the
//! homotopy-level algebra: each symbol's Euler class in a fixed
//! finitely generated abelian group (playing `H^2(M;Z)`), per-pair
//! comparison classes, and the history of Pontryagin surgeries. The
//! governing relations are
//!
//! - `euler(v) = α⁺ + α⁻` and `euler(v') = −α⁺ + α⁻` for every
//!   recorded pair `(v, v')`, where `α⁺ = α(v,v')` and `α⁻ = α(v,−v')`;
//! - `euler(v') = euler(v) − 2β` for every surgery edge labeled `β`;
//! - evenness of the Euler class is a ledger-wide constant.
//!
//! Comparison classes are stored per pair rather than recomputed: when
//! the group has 2-torsion the relation `2α = Δeuler` does not
//! determine `α`, mirroring the fact that the class depends on the
//! actual pair of fields. Opposite combings are represented only
//! through the stored `α⁻`; zero-locus curves have no ledger home.

use std::fmt;

use num_bigint::BigInt;

use crate::exactalg::{FGAbelianGroup, GroupElement, GroupError};
use crate::textfmt::{ParseError, Tokens};

/// Opaque handle for a registered combing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombingSymbol(usize);

impl CombingSymbol {
    pub fn index(&self) -> usize {
        self.0
    }
}

impl fmt::Display for CombingSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Comparison data for an ordered pair `(v, v')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecord {
    pub v: CombingSymbol,
    pub v_prime: CombingSymbol,
    /// `α(v, v')`
    pub alpha_plus: GroupElement,
    /// `α(v, −v')`
    pub alpha_minus: GroupElement,
}

/// Directed surgery edge `v → v'` labeled by the class `β` realized as
/// `α(v, v')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryRecord {
    pub from: CombingSymbol,
    pub to: CombingSymbol,
    pub beta: GroupElement,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LedgerError {
    #[error("unknown combing symbol v{0}")]
    UnknownSymbol(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("no pair record or surgery path connects v{0} and v{1}")]
    NotConnected(usize, usize),
}

/// A violated ledger invariant, as reported by [`CombingLedger::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LedgerViolation {
    /// `euler(v) ≠ α⁺ + α⁻` for the pair at this position.
    PairFirstLaw { pair_index: usize },
    /// `euler(v') ≠ −α⁺ + α⁻` for the pair at this position.
    PairSecondLaw { pair_index: usize },
    /// `euler(to) ≠ euler(from) − 2β` for the surgery at this position.
    SurgeryLaw { surgery_index: usize },
    /// Two symbols whose Euler classes disagree on evenness.
    EvennessMismatch {
        first: CombingSymbol,
        second: CombingSymbol,
    },
}

impl fmt::Display for LedgerViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerViolation::PairFirstLaw { pair_index } => {
                write!(f, "pair {pair_index}: euler(v) != alpha+ + alpha-")
            }
            LedgerViolation::PairSecondLaw { pair_index } => {
                write!(f, "pair {pair_index}: euler(v') != -alpha+ + alpha-")
            }
            LedgerViolation::SurgeryLaw { surgery_index } => {
                write!(
                    f,
                    "surgery {surgery_index}: euler(to) != euler(from) - 2*beta"
                )
            }
            LedgerViolation::EvennessMismatch { first, second } => {
                write!(f, "evenness of euler({first}) and euler({second}) disagree")
            }
        }
    }
}

/// Registry of combing symbols over a fixed group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombingLedger {
    group: FGAbelianGroup,
    eulers: Vec<GroupElement>,
    pairs: Vec<PairRecord>,
    surgeries: Vec<SurgeryRecord>,
}

impl CombingLedger {
    /// Fresh ledger with one base combing of Euler class `e0`.
    pub fn new(group: FGAbelianGroup, e0: GroupElement) -> Result<Self, LedgerError> {
        if e0.group() != &group {
            return Err(GroupError::GroupMismatch.into());
        }
        Ok(CombingLedger {
            group,
            eulers: vec![e0],
            pairs: Vec::new(),
            surgeries: Vec::new(),
        })
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn base(&self) -> CombingSymbol {
        CombingSymbol(0)
    }

    pub fn symbol_count(&self) -> usize {
        self.eulers.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = CombingSymbol> {
        (0..self.eulers.len()).map(CombingSymbol)
    }

    pub fn pairs(&self) -> &[PairRecord] {
        &self.pairs
    }

    pub fn surgeries(&self) -> &[SurgeryRecord] {
        &self.surgeries
    }

    pub fn euler(&self, v: CombingSymbol) -> Result<&GroupElement, LedgerError> {
        self.eulers.get(v.0).ok_or(LedgerError::UnknownSymbol(v.0))
    }

    fn check_symbol(&self, v: CombingSymbol) -> Result<(), LedgerError> {
        if v.0 >= self.eulers.len() {
            return Err(LedgerError::UnknownSymbol(v.0));
        }
        Ok(())
    }

    /// Perform a Pontryagin surgery on `v` along a curve dual to `beta`,
    /// registering and returning the new symbol `v'`.
    ///
    /// Afterwards `euler(v') = euler(v) − 2β`, and the recorded pair has
    /// `α(v,v') = β`, `α(v,−v') = euler(v) − β`.
    pub fn pontryagin_surgery(
        &mut self,
        v: CombingSymbol,
        beta: &GroupElement,
    ) -> Result<CombingSymbol, LedgerError> {
        self.check_symbol(v)?;
        if beta.group() != &self.group {
            return Err(GroupError::GroupMismatch.into());
        }
        let euler_v = self.eulers[v.0].clone();
        let euler_new = euler_v.sub(&beta.double())?;
        let alpha_minus = euler_v.sub(beta)?;
        let v_prime = CombingSymbol(self.eulers.len());
        self.eulers.push(euler_new);
        self.pairs.push(PairRecord {
            v,
            v_prime,
            alpha_plus: beta.clone(),
            alpha_minus,
        });
        self.surgeries.push(SurgeryRecord {
            from: v,
            to: v_prime,
            beta: beta.clone(),
        });
        Ok(v_prime)
    }

    /// The comparison class `α(v, v')` accumulated along the first
    /// recorded path connecting the two symbols (edge labels negate
    /// when an edge is traversed backward).
    pub fn compare(
        &self,
        v: CombingSymbol,
        v_prime: CombingSymbol,
    ) -> Result<GroupElement, LedgerError> {
        self.check_symbol(v)?;
        self.check_symbol(v_prime)?;
        if v == v_prime {
            return Ok(self.group.zero());
        }
        // edges from pair records and surgery history, both directions
        let mut adjacency: Vec<Vec<(usize, GroupElement)>> = vec![Vec::new(); self.eulers.len()];
        for p in &self.pairs {
            adjacency[p.v.0].push((p.v_prime.0, p.alpha_plus.clone()));
            adjacency[p.v_prime.0].push((p.v.0, p.alpha_plus.neg()));
        }
        for s in &self.surgeries {
            adjacency[s.from.0].push((s.to.0, s.beta.clone()));
            adjacency[s.to.0].push((s.from.0, s.beta.neg()));
        }
        let mut accumulated: Vec<Option<GroupElement>> = vec![None; self.eulers.len()];
        accumulated[v.0] = Some(self.group.zero());
        let mut queue = std::collections::VecDeque::from([v.0]);
        while let Some(cur) = queue.pop_front() {
            let alpha_cur = accumulated[cur].clone().expect("queued nodes are reached");
            for (next, label) in &adjacency[cur] {
                if accumulated[*next].is_none() {
                    let total = alpha_cur.add(label)?;
                    if *next == v_prime.0 {
                        return Ok(total);
                    }
                    accumulated[*next] = Some(total);
                    queue.push_back(*next);
                }
            }
        }
        Err(LedgerError::NotConnected(v.0, v_prime.0))
    }

    /// Decide parallelizability: true exactly when the base Euler class
    /// is even. On success the evenness witness `β` is realized by a
    /// Pontryagin surgery, registering and returning a symbol whose
    /// Euler class is zero.
    pub fn is_parallelizable(&mut self) -> Option<CombingSymbol> {
        let beta = self
            .group
            .is_even(&self.eulers[0])
            .expect("base euler lives in the ledger group")?;
        let witness = self
            .pontryagin_surgery(self.base(), &beta)
            .expect("base symbol and witness are valid");
        debug_assert!(self.eulers[witness.0].is_zero());
        Some(witness)
    }

    /// Replay every record against the ledger invariants. Returns the
    /// list of violations, empty for a consistent ledger.
    pub fn validate(&self) -> Vec<LedgerViolation> {
        let mut violations = Vec::new();
        for (i, p) in self.pairs.iter().enumerate() {
            let sum = p.alpha_plus.add(&p.alpha_minus);
            match sum {
                Ok(sum) if sum == self.eulers[p.v.0] => {}
                _ => violations.push(LedgerViolation::PairFirstLaw { pair_index: i }),
            }
            let diff = p.alpha_minus.sub(&p.alpha_plus);
            match diff {
                Ok(diff) if diff == self.eulers[p.v_prime.0] => {}
                _ => violations.push(LedgerViolation::PairSecondLaw { pair_index: i }),
            }
        }
        for (i, s) in self.surgeries.iter().enumerate() {
            let expected = self.eulers[s.from.0].sub(&s.beta.double());
            match expected {
                Ok(expected) if expected == self.eulers[s.to.0] => {}
                _ => violations.push(LedgerViolation::SurgeryLaw { surgery_index: i }),
            }
        }
        let base_even = self
            .group
            .is_even(&self.eulers[0])
            .expect("ledger elements live in the ledger group")
            .is_some();
        for (i, e) in self.eulers.iter().enumerate().skip(1) {
            let even = self
                .group
                .is_even(e)
                .expect("ledger elements live in the ledger group")
                .is_some();
            if even != base_even {
                violations.push(LedgerViolation::EvennessMismatch {
                    first: CombingSymbol(0),
                    second: CombingSymbol(i),
                });
            }
        }
        violations
    }

    /// Line-oriented serialization: the group descriptor, then one line
    /// per combing, pair record, and surgery record.
    pub fn to_text(&self) -> String {
        let mut out = String::from("group ");
        out.push_str(&self.group.free_rank().to_string());
        for d in self.group.torsion() {
            out.push(' ');
            out.push_str(&d.to_string());
        }
        out.push('\n');
        let coords = |e: &GroupElement| {
            e.coords()
                .iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        for (i, e) in self.eulers.iter().enumerate() {
            out.push_str(&format!("combing {i} euler {}\n", coords(e)));
        }
        for p in &self.pairs {
            out.push_str(&format!(
                "pair {} {} alpha+ {} alpha- {}\n",
                p.v.0,
                p.v_prime.0,
                coords(&p.alpha_plus),
                coords(&p.alpha_minus)
            ));
        }
        for s in &self.surgeries {
            out.push_str(&format!(
                "surgery {} {} beta {}\n",
                s.from.0,
                s.to.0,
                coords(&s.beta)
            ));
        }
        out
    }

    /// Parse the serialization produced by [`to_text`](Self::to_text).
    ///
    /// Only structure is checked here; mathematical consistency of a
    /// hand-edited ledger is the business of [`validate`](Self::validate).
    pub fn from_text(input: &str) -> Result<Self, ParseError> {
        let mut toks = Tokens::new(input);
        toks.expect("group")?;
        let free_rank: usize = toks.next_parsed("free rank")?;
        let mut torsion = Vec::new();
        while let Some(tok) = toks.peek() {
            if matches!(tok, "combing" | "pair" | "surgery") {
                break;
            }
            torsion.push(toks.next_parsed::<BigInt>("torsion factor")?);
        }
        let group = FGAbelianGroup::new(free_rank, torsion)
            .map_err(|e| ParseError::new(toks.current_line(), e.to_string()))?;
        let ncoords = group.coordinate_count();

        let mut eulers: Vec<GroupElement> = Vec::new();
        let mut pairs = Vec::new();
        let mut surgeries = Vec::new();
        let parse_elem = |toks: &mut Tokens<'_>| -> Result<GroupElement, ParseError> {
            let mut cs = Vec::with_capacity(ncoords);
            for _ in 0..ncoords {
                cs.push(toks.next_parsed::<BigInt>("coordinate")?);
            }
            group
                .element(cs)
                .map_err(|e| ParseError::new(toks.current_line(), e.to_string()))
        };
        let check_id = |id: usize, known: usize, toks: &Tokens<'_>| -> Result<(), ParseError> {
            if id >= known {
                return Err(ParseError::new(
                    toks.current_line(),
                    format!("combing id {id} not yet declared"),
                ));
            }
            Ok(())
        };
        while !toks.is_empty() {
            let keyword = toks.next_token("record keyword")?;
            match keyword {
                "combing" => {
                    let id: usize = toks.next_parsed("combing id")?;
                    if id != eulers.len() {
                        return Err(ParseError::new(
                            toks.current_line(),
                            format!("combing ids must be dense, expected {}", eulers.len()),
                        ));
                    }
                    toks.expect("euler")?;
                    eulers.push(parse_elem(&mut toks)?);
                }
                "pair" => {
                    let v: usize = toks.next_parsed("combing id")?;
                    let v_prime: usize = toks.next_parsed("combing id")?;
                    check_id(v, eulers.len(), &toks)?;
                    check_id(v_prime, eulers.len(), &toks)?;
                    toks.expect("alpha+")?;
                    let alpha_plus = parse_elem(&mut toks)?;
                    toks.expect("alpha-")?;
                    let alpha_minus = parse_elem(&mut toks)?;
                    pairs.push(PairRecord {
                        v: CombingSymbol(v),
                        v_prime: CombingSymbol(v_prime),
                        alpha_plus,
                        alpha_minus,
                    });
                }
                "surgery" => {
                    let from: usize = toks.next_parsed("combing id")?;
                    let to: usize = toks.next_parsed("combing id")?;
                    check_id(from, eulers.len(), &toks)?;
                    check_id(to, eulers.len(), &toks)?;
                    toks.expect("beta")?;
                    let beta = parse_elem(&mut toks)?;
                    surgeries.push(SurgeryRecord {
                        from: CombingSymbol(from),
                        to: CombingSymbol(to),
                        beta,
                    });
                }
                other => {
                    return Err(ParseError::new(
                        toks.current_line(),
                        format!("unknown record keyword {other:?}"),
                    ));
                }
            }
        }
        if eulers.is_empty() {
            return Err(ParseError::new(1, "ledger declares no combing"));
        }
        Ok(CombingLedger {
            group,
            eulers,
            pairs,
            surgeries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_ledger(e0: i64) -> CombingLedger {
        let g = FGAbelianGroup::free(1);
        let e = g.element_from_i64(&[e0]).unwrap();
        CombingLedger::new(g, e).unwrap()
    }

    #[test]
    fn new_ledger_registers_base() {
        let g = FGAbelianGroup::cyclic(5);
        let ledger = CombingLedger::new(g.clone(), g.zero()).unwrap();
        assert_eq!(ledger.symbol_count(), 1);
        assert!(ledger.euler(ledger.base()).unwrap().is_zero());

        let wrong = FGAbelianGroup::cyclic(7).zero();
        assert!(CombingLedger::new(g, wrong).is_err());
    }

    #[test]
    fn surgery_shifts_euler_by_twice_beta() {
        let mut ledger = z_ledger(0);
        let g = ledger.group().clone();
        let beta = g.element_from_i64(&[3]).unwrap();
        let v_prime = ledger.pontryagin_surgery(ledger.base(), &beta).unwrap();
        assert_eq!(
            ledger.euler(v_prime).unwrap(),
            &g.element_from_i64(&[-6]).unwrap()
        );
        assert_eq!(ledger.compare(ledger.base(), v_prime).unwrap(), beta);
    }

    #[test]
    fn trivial_surgery_keeps_euler() {
        let mut ledger = z_ledger(2);
        let g = ledger.group().clone();
        let v_prime = ledger.pontryagin_surgery(ledger.base(), &g.zero()).unwrap();
        assert_eq!(
            ledger.euler(v_prime).unwrap(),
            ledger.euler(ledger.base()).unwrap()
        );
    }

    #[test]
    fn surgery_in_torsion_group() {
        let g = FGAbelianGroup::cyclic(4);
        let e0 = g.element_from_i64(&[2]).unwrap();
        let mut ledger = CombingLedger::new(g.clone(), e0).unwrap();
        let beta = g.element_from_i64(&[1]).unwrap();
        let v_prime = ledger.pontryagin_surgery(ledger.base(), &beta).unwrap();
        assert!(ledger.euler(v_prime).unwrap().is_zero());
        assert_eq!(
            ledger.pairs()[0].alpha_minus,
            g.element_from_i64(&[1]).unwrap()
        );
    }

    #[test]
    fn compare_is_antisymmetric_and_additive() {
        let mut ledger = z_ledger(0);
        let g = ledger.group().clone();
        let b1 = g.element_from_i64(&[2]).unwrap();
        let b2 = g.element_from_i64(&[5]).unwrap();
        let v0 = ledger.base();
        let v1 = ledger.pontryagin_surgery(v0, &b1).unwrap();
        let v2 = ledger.pontryagin_surgery(v1, &b2).unwrap();

        assert!(ledger.compare(v0, v0).unwrap().is_zero());
        assert_eq!(ledger.compare(v1, v0).unwrap(), b1.neg());
        assert_eq!(ledger.compare(v0, v2).unwrap(), b1.add(&b2).unwrap());
        // difference law along the chain
        let alpha = ledger.compare(v0, v2).unwrap();
        let delta = ledger
            .euler(v0)
            .unwrap()
            .sub(ledger.euler(v2).unwrap())
            .unwrap();
        assert_eq!(alpha.double(), delta);
    }

    #[test]
    fn compare_unconnected_symbols_errors() {
        let g = FGAbelianGroup::free(1);
        let text = "group 1\ncombing 0 euler 0\ncombing 1 euler 2\n";
        let ledger = CombingLedger::from_text(text).unwrap();
        assert_eq!(ledger.group(), &g);
        let err = ledger
            .compare(CombingSymbol(0), CombingSymbol(1))
            .unwrap_err();
        assert_eq!(err, LedgerError::NotConnected(0, 1));
    }

    #[test]
    fn parallelizability_decision() {
        let mut even = z_ledger(4);
        let witness = even.is_parallelizable().expect("4 is even in Z");
        assert!(even.euler(witness).unwrap().is_zero());

        let g2 = FGAbelianGroup::cyclic(2);
        let e = g2.element_from_i64(&[1]).unwrap();
        let mut odd = CombingLedger::new(g2, e).unwrap();
        assert!(odd.is_parallelizable().is_none());

        let trivial = FGAbelianGroup::trivial();
        let mut t = CombingLedger::new(trivial.clone(), trivial.zero()).unwrap();
        assert!(t.is_parallelizable().is_some());
    }

    #[test]
    fn validate_accepts_surgery_histories() {
        let g = FGAbelianGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let e0 = g.element_from_i64(&[2, 2]).unwrap();
        let mut ledger = CombingLedger::new(g.clone(), e0).unwrap();
        assert!(ledger.validate().is_empty());
        let mut v = ledger.base();
        for coords in [[1, 0], [0, 3], [2, 1], [5, 2]] {
            let beta = g.element_from_i64(&coords).unwrap();
            v = ledger.pontryagin_surgery(v, &beta).unwrap();
        }
        assert!(ledger.validate().is_empty());
    }

    #[test]
    fn validate_reports_corrupted_euler() {
        let mut ledger = z_ledger(0);
        let g = ledger.group().clone();
        let beta = g.element_from_i64(&[1]).unwrap();
        ledger.pontryagin_surgery(ledger.base(), &beta).unwrap();
        let mut text = ledger.to_text();
        // corrupt the euler entry of v1 (-2 -> -3)
        text = text.replace("combing 1 euler -2", "combing 1 euler -3");
        let corrupted = CombingLedger::from_text(&text).unwrap();
        let violations = corrupted.validate();
        assert!(!violations.is_empty());
        assert!(violations
            .iter()
            .any(|v| matches!(v, LedgerViolation::SurgeryLaw { .. })));
        assert!(violations
            .iter()
            .any(|v| matches!(v, LedgerViolation::EvennessMismatch { .. })));
    }

    #[test]
    fn serialization_round_trip() {
        let g = FGAbelianGroup::new(2, vec![BigInt::from(3), BigInt::from(6)]).unwrap();
        let e0 = g.element_from_i64(&[1, -2, 2, 5]).unwrap();
        let mut ledger = CombingLedger::new(g.clone(), e0).unwrap();
        let beta = g.element_from_i64(&[0, 1, 1, 4]).unwrap();
        ledger.pontryagin_surgery(ledger.base(), &beta).unwrap();
        let text = ledger.to_text();
        let reparsed = CombingLedger::from_text(&text).unwrap();
        assert_eq!(reparsed, ledger);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(CombingLedger::from_text("group 1\n").is_err());
        assert!(CombingLedger::from_text("combing 0 euler 1\n").is_err());
        let err =
            CombingLedger::from_text("group 1\ncombing 0 euler 0\npair 0 3 alpha+ 1 alpha- 2\n")
                .unwrap_err();
        assert!(err.message.contains("not yet declared"));
    }
}
