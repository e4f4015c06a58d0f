//! Presentations of closed subsets of the space of infinite binary
//! sequences.
//!
//! Four presentation styles are supported: the full space, a single
//! eventually periodic sequence `u·v^ω`, a finite union of cylinders
//! (sequences extending one of the listed finite words), and a total DFA
//! over `{0, 1}` whose accepted finite words are exactly the prefixes of
//! members.
//!
//! Validity for the DFA style is checked exactly, not heuristically: among
//! states reachable from the start,
//!
//! * rejection must be permanent (a rejecting state never steps to an
//!   accepting one), so the accepted language is prefix-closed;
//! * every accepting state must have an accepting successor, so every
//!   accepted word extends to an infinite member;
//! * the start state must accept, so the set is nonempty.
//!
//! Under these three conditions the infinite paths through accepting
//! states form a nonempty closed set whose prefixes are the accepted
//! words.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub states: u32,
    pub init: u32,
    pub accepting: Vec<bool>,
    /// `delta[q] = [on_zero, on_one]`.
    pub delta: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedSetPresentation {
    /// All infinite binary sequences.
    Full,
    /// The single sequence `prefix · period^ω`.
    Singleton { prefix: Vec<bool>, period: Vec<bool> },
    /// Everything extending one of the words.
    CylinderUnion { words: Vec<Vec<bool>> },
    /// Prefix language given by a total DFA.
    Automaton(Dfa),
}

fn word_to_string(w: &[bool]) -> String {
    if w.is_empty() {
        "-".to_string()
    } else {
        w.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

fn comparable(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x == y)
}

impl Dfa {
    fn check_ranges(&self) -> Result<()> {
        if self.states == 0 {
            return Err(Error::InvalidClosedSet {
                reason: "automaton needs at least one state".into(),
            });
        }
        if self.accepting.len() != self.states as usize || self.delta.len() != self.states as usize
        {
            return Err(Error::InvalidClosedSet {
                reason: "accepting/transition tables must cover every state".into(),
            });
        }
        if self.init >= self.states {
            return Err(Error::InvalidClosedSet {
                reason: format!("initial state {} out of range", self.init),
            });
        }
        for (q, d) in self.delta.iter().enumerate() {
            for &t in d {
                if t >= self.states {
                    return Err(Error::InvalidClosedSet {
                        reason: format!("transition {q} -> {t} out of range"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Shortest accepted word leading to each reachable state (BFS order).
    fn reachable_words(&self) -> Vec<Option<Vec<bool>>> {
        let mut words: Vec<Option<Vec<bool>>> = vec![None; self.states as usize];
        words[self.init as usize] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([self.init]);
        while let Some(q) = queue.pop_front() {
            let here = words[q as usize].clone().unwrap();
            for (bit, &t) in self.delta[q as usize].iter().enumerate() {
                if words[t as usize].is_none() {
                    let mut w = here.clone();
                    w.push(bit == 1);
                    words[t as usize] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        words
    }

    /// State reached from the initial state along a word.
    pub fn run(&self, w: &[bool]) -> u32 {
        let mut q = self.init;
        for &b in w {
            q = self.delta[q as usize][usize::from(b)];
        }
        q
    }
}

impl ClosedSetPresentation {
    /// Checks that the presentation denotes a nonempty closed set.
    pub fn validate(&self) -> Result<()> {
        match self {
            ClosedSetPresentation::Full => Ok(()),
            ClosedSetPresentation::Singleton { period, .. } => {
                if period.is_empty() {
                    Err(Error::InvalidClosedSet {
                        reason: "singleton needs a nonempty period".into(),
                    })
                } else {
                    Ok(())
                }
            }
            ClosedSetPresentation::CylinderUnion { words } => {
                if words.is_empty() {
                    Err(Error::InvalidClosedSet {
                        reason: "cylinder union over no words is empty".into(),
                    })
                } else {
                    Ok(())
                }
            }
            ClosedSetPresentation::Automaton(dfa) => {
                dfa.check_ranges()?;
                if !dfa.accepting[dfa.init as usize] {
                    return Err(Error::InvalidClosedSet {
                        reason: "empty set: initial state rejects".into(),
                    });
                }
                let words = dfa.reachable_words();
                for q in 0..dfa.states {
                    let Some(w) = &words[q as usize] else { continue };
                    if !dfa.accepting[q as usize] {
                        for (bit, &t) in dfa.delta[q as usize].iter().enumerate() {
                            if dfa.accepting[t as usize] {
                                return Err(Error::InvalidClosedSet {
                                    reason: format!(
                                        "prefix closure fails: rejected word {} accepts after {bit}",
                                        word_to_string(w)
                                    ),
                                });
                            }
                        }
                    } else if dfa.delta[q as usize]
                        .iter()
                        .all(|&t| !dfa.accepting[t as usize])
                    {
                        return Err(Error::ClosedSetDeadEnd {
                            word: word_to_string(w),
                        });
                    }
                }
                Ok(())
            }
        }
    }

    /// Is `w` a prefix of some member? Assumes a validated presentation.
    pub fn prefix_allowed(&self, w: &[bool]) -> bool {
        match self {
            ClosedSetPresentation::Full => true,
            ClosedSetPresentation::Singleton { prefix, period } => {
                w.iter().enumerate().all(|(i, &b)| {
                    let expect = if i < prefix.len() {
                        prefix[i]
                    } else {
                        period[(i - prefix.len()) % period.len()]
                    };
                    b == expect
                })
            }
            ClosedSetPresentation::CylinderUnion { words } => {
                words.iter().any(|word| comparable(w, word))
            }
            ClosedSetPresentation::Automaton(dfa) => {
                let mut q = dfa.init;
                for &b in w {
                    q = dfa.delta[q as usize][usize::from(b)];
                    if !dfa.accepting[q as usize] {
                        return false;
                    }
                }
                dfa.accepting[q as usize]
            }
        }
    }

    /// Which one-bit extensions of an allowed prefix stay allowed.
    pub fn extensions(&self, w: &[bool]) -> (bool, bool) {
        let mut w0 = w.to_vec();
        w0.push(false);
        let mut w1 = w.to_vec();
        w1.push(true);
        (self.prefix_allowed(&w0), self.prefix_allowed(&w1))
    }

    /// Does the presentation denote a one-point set? Exact for every style:
    /// cylinder unions and the full space are never singletons (no isolated
    /// points), and for automata we look for a reachable accepting state
    /// with two accepting successors.
    pub fn is_singleton(&self) -> bool {
        match self {
            ClosedSetPresentation::Full | ClosedSetPresentation::CylinderUnion { .. } => false,
            ClosedSetPresentation::Singleton { .. } => true,
            ClosedSetPresentation::Automaton(dfa) => {
                // Walk only through accepting states.
                let mut seen = vec![false; dfa.states as usize];
                let mut queue = std::collections::VecDeque::from([dfa.init]);
                seen[dfa.init as usize] = true;
                while let Some(q) = queue.pop_front() {
                    let branches = dfa.delta[q as usize]
                        .iter()
                        .filter(|&&t| dfa.accepting[t as usize])
                        .count();
                    if branches == 2 {
                        return false;
                    }
                    for &t in &dfa.delta[q as usize] {
                        if dfa.accepting[t as usize] && !seen[t as usize] {
                            seen[t as usize] = true;
                            queue.push_back(t);
                        }
                    }
                }
                true
            }
        }
    }

    /// All allowed words of the given length, in lexicographic order.
    pub fn allowed_words(&self, len: u32) -> Vec<Vec<bool>> {
        let mut frontier = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in frontier {
                let (zero, one) = self.extensions(&w);
                if zero {
                    let mut w0 = w.clone();
                    w0.push(false);
                    next.push(w0);
                }
                if one {
                    let mut w1 = w;
                    w1.push(true);
                    next.push(w1);
                }
            }
            frontier = next;
        }
        frontier
    }

    /// Homeomorphism type of the set, when it is one of the two clean
    /// cases. Exact for every presentation style: for automata the analysis
    /// separates members that are eventually choice-free (isolated points)
    /// from members that pass branching states forever.
    pub fn space_kind(&self) -> SpaceKind {
        match self {
            ClosedSetPresentation::Full | ClosedSetPresentation::CylinderUnion { .. } => {
                SpaceKind::Cantor
            }
            ClosedSetPresentation::Singleton { .. } => SpaceKind::FinitePoints(1),
            ClosedSetPresentation::Automaton(dfa) => automaton_space_kind(dfa),
        }
    }

    /// Canonical one-line text form (the inverse of [`parse_closed_set`]).
    pub fn to_text(&self) -> String {
        match self {
            ClosedSetPresentation::Full => "full".to_string(),
            ClosedSetPresentation::Singleton { prefix, period } => format!(
                "singleton {} {}",
                word_to_string(prefix),
                word_to_string(period)
            ),
            ClosedSetPresentation::CylinderUnion { words } => {
                let mut s = "cylinders".to_string();
                for w in words {
                    s.push(' ');
                    s.push_str(&word_to_string(w));
                }
                s
            }
            ClosedSetPresentation::Automaton(dfa) => {
                let accepting: Vec<String> = (0..dfa.states)
                    .filter(|&q| dfa.accepting[q as usize])
                    .map(|q| q.to_string())
                    .collect();
                let mut s = format!(
                    "automaton {} {} accept={}",
                    dfa.states,
                    dfa.init,
                    accepting.join(",")
                );
                for (q, d) in dfa.delta.iter().enumerate() {
                    s.push_str(&format!(" {q}:{},{}", d[0], d[1]));
                }
                s
            }
        }
    }
}

impl fmt::Display for ClosedSetPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Homeomorphism type of a closed set, when recognized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    /// Exactly this many points, all isolated.
    FinitePoints(u32),
    /// Perfect and nonempty: a Cantor set.
    Cantor,
    /// Mixed isolated and limit points; not classified further here.
    Other,
}

/// Classifies a validated automaton presentation.
///
/// Work in the accepting subgraph reachable from the start. A member is
/// isolated exactly when its state path eventually avoids branching states
/// (those with both successors accepting): past the last branching state
/// the continuation is forced, pinning the member inside a cylinder. Such
/// tails pump a cycle avoiding branching states, so:
///
/// * no cycle avoiding branching states => perfect => Cantor;
/// * no cycle touching a branching state => every member isolated => a
///   finite set, counted by walking the (acyclic) branching structure;
/// * otherwise both kinds of member exist.
fn automaton_space_kind(dfa: &Dfa) -> SpaceKind {
    let n = dfa.states as usize;
    let reachable: Vec<bool> = {
        let words = dfa.reachable_words();
        (0..n)
            .map(|q| words[q].is_some() && dfa.accepting[q])
            .collect()
    };
    let succs = |q: usize| -> Vec<usize> {
        dfa.delta[q]
            .iter()
            .map(|&t| t as usize)
            .filter(|&t| reachable[t])
            .collect()
    };
    let branching: Vec<bool> = (0..n)
        .map(|q| reachable[q] && succs(q).len() == 2)
        .collect();

    // Cycle detection on an induced vertex set.
    let has_cycle = |allowed: &dyn Fn(usize) -> bool| -> bool {
        let mut color = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        for start in 0..n {
            if !allowed(start) || color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some(&mut (q, ref mut i)) = stack.last_mut() {
                let next = succs(q).into_iter().filter(|&t| allowed(t)).nth(*i);
                *i += 1;
                match next {
                    Some(t) if color[t] == 1 => return true,
                    Some(t) if color[t] == 0 => {
                        color[t] = 1;
                        stack.push((t, 0));
                    }
                    Some(_) => {}
                    None => {
                        color[q] = 2;
                        stack.pop();
                    }
                }
            }
        }
        false
    };

    let quiet_cycle = has_cycle(&|q| reachable[q] && !branching[q]);
    if !quiet_cycle {
        return SpaceKind::Cantor;
    }
    // A cycle through a branching state exists iff some branching state
    // reaches itself.
    let branching_cycle = (0..n).any(|b| {
        if !branching[b] {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue: Vec<usize> = succs(b);
        while let Some(q) = queue.pop() {
            if q == b {
                return true;
            }
            if !seen[q] {
                seen[q] = true;
                queue.extend(succs(q));
            }
        }
        false
    });
    if branching_cycle {
        return SpaceKind::Other;
    }

    // All members isolated: count maximal choice paths. Branching states
    // form a DAG here, and choice-free runs either reach a branching state
    // or close a cycle (one member).
    fn count(q: usize, branching: &[bool], succs: &dyn Fn(usize) -> Vec<usize>, memo: &mut Vec<Option<u64>>) -> u64 {
        if let Some(c) = memo[q] {
            return c;
        }
        let result = if branching[q] {
            succs(q)
                .into_iter()
                .map(|t| count(t, branching, succs, memo))
                .sum()
        } else {
            // Follow forced moves until a branching state or a repeat.
            let mut cur = q;
            let mut trail = vec![false; branching.len()];
            loop {
                trail[cur] = true;
                let next = succs(cur)[0];
                if branching[next] {
                    break count(next, branching, succs, memo);
                }
                if trail[next] {
                    break 1;
                }
                cur = next;
            }
        };
        memo[q] = Some(result);
        result
    }
    let mut memo = vec![None; n];
    let total = count(dfa.init as usize, &branching, &succs, &mut memo);
    SpaceKind::FinitePoints(total.min(u64::from(u32::MAX)) as u32)
}

fn parse_word(tok: &str) -> Result<Vec<bool>> {
    if tok == "-" {
        return Ok(Vec::new());
    }
    tok.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::InvalidClosedSet {
                reason: format!("bad symbol {other:?} in word {tok:?}"),
            }),
        })
        .collect()
}

/// Parses the one-line closed-set grammar:
///
/// ```text
/// full
/// singleton <prefix|-> <period>        (or the compact form <prefix>(<period>)^w)
/// cylinders <word> [<word> ...]
/// automaton <states> <init> accept=<q,...> <q>:<on0>,<on1> ...
/// ```
///
/// `dfa` is accepted as a synonym for `automaton`.
pub fn parse_closed_set(text: &str) -> Result<ClosedSetPresentation> {
    let mut toks = text.split_whitespace();
    let head = toks.next().ok_or_else(|| Error::InvalidClosedSet {
        reason: "empty closed-set description".into(),
    })?;
    let set = match head {
        "full" => {
            ClosedSetPresentation::Full
        }
        "singleton" => {
            let first = toks.next().ok_or_else(|| Error::InvalidClosedSet {
                reason: "singleton needs <prefix> <period>".into(),
            })?;
            if let Some((pre, rest)) = first.split_once('(') {
                let per = rest.strip_suffix(")^w").ok_or_else(|| Error::InvalidClosedSet {
                    reason: format!("expected <prefix>(<period>)^w, got {first:?}"),
                })?;
                ClosedSetPresentation::Singleton {
                    prefix: parse_word(pre)?,
                    period: parse_word(per)?,
                }
            } else {
                let period = parse_word(toks.next().ok_or_else(|| Error::InvalidClosedSet {
                    reason: "singleton needs <prefix> <period>".into(),
                })?)?;
                ClosedSetPresentation::Singleton {
                    prefix: parse_word(first)?,
                    period,
                }
            }
        }
        "cylinders" => {
            let words: Result<Vec<Vec<bool>>> = toks.by_ref().map(parse_word).collect();
            ClosedSetPresentation::CylinderUnion { words: words? }
        }
        "automaton" | "dfa" => {
            let states: u32 = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidClosedSet {
                    reason: "automaton needs a state count".into(),
                })?;
            let init: u32 = toks
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidClosedSet {
                    reason: "automaton needs an initial state".into(),
                })?;
            let accept_tok = toks.next().ok_or_else(|| Error::InvalidClosedSet {
                reason: "automaton needs accept=<states>".into(),
            })?;
            let accept_list = accept_tok
                .strip_prefix("accept=")
                .ok_or_else(|| Error::InvalidClosedSet {
                    reason: format!("expected accept=..., got {accept_tok:?}"),
                })?;
            let mut accepting = vec![false; states as usize];
            if !accept_list.is_empty() {
                for part in accept_list.split(',') {
                    let q: u32 = part.parse().map_err(|_| Error::InvalidClosedSet {
                        reason: format!("bad accepting state {part:?}"),
                    })?;
                    if q >= states {
                        return Err(Error::InvalidClosedSet {
                            reason: format!("accepting state {q} out of range"),
                        });
                    }
                    accepting[q as usize] = true;
                }
            }
            let mut delta = vec![[u32::MAX, u32::MAX]; states as usize];
            for tok in toks.by_ref() {
                let (q, rest) = tok.split_once(':').ok_or_else(|| Error::InvalidClosedSet {
                    reason: format!("expected <state>:<on0>,<on1>, got {tok:?}"),
                })?;
                let (t0, t1) = rest.split_once(',').ok_or_else(|| Error::InvalidClosedSet {
                    reason: format!("expected <state>:<on0>,<on1>, got {tok:?}"),
                })?;
                let parse_state = |s: &str| -> Result<u32> {
                    s.parse().map_err(|_| Error::InvalidClosedSet {
                        reason: format!("bad state {s:?} in {tok:?}"),
                    })
                };
                let q = parse_state(q)?;
                if q >= states {
                    return Err(Error::InvalidClosedSet {
                        reason: format!("state {q} out of range"),
                    });
                }
                delta[q as usize] = [parse_state(t0)?, parse_state(t1)?];
            }
            for (q, d) in delta.iter().enumerate() {
                if d[0] == u32::MAX || d[1] == u32::MAX {
                    return Err(Error::InvalidClosedSet {
                        reason: format!("state {q} has no transitions"),
                    });
                }
            }
            ClosedSetPresentation::Automaton(Dfa {
                states,
                init,
                accepting,
                delta,
            })
        }
        other => {
            return Err(Error::InvalidClosedSet {
                reason: format!("unknown closed-set kind {other:?}"),
            })
        }
    };
    if let Some(extra) = toks.next() {
        return Err(Error::InvalidClosedSet {
            reason: format!("unexpected trailing token {extra:?}"),
        });
    }
    set.validate()?;
    Ok(set)
}

/// `{0^ω, 1^ω}`: the two constant sequences, as a 4-state automaton.
pub fn two_point_automaton() -> ClosedSetPresentation {
    ClosedSetPresentation::Automaton(Dfa {
        states: 4,
        init: 0,
        accepting: vec![true, true, true, false],
        delta: vec![[1, 2], [1, 3], [3, 2], [3, 3]],
    })
}

/// Sequences with no three consecutive ones; a Cantor set.
pub fn no_triple_ones_automaton() -> ClosedSetPresentation {
    ClosedSetPresentation::Automaton(Dfa {
        states: 4,
        init: 0,
        accepting: vec![true, true, true, false],
        delta: vec![[0, 1], [0, 2], [0, 3], [3, 3]],
    })
}

/// A five-cylinder clopen set over depth-3 words.
pub fn five_cylinders() -> ClosedSetPresentation {
    let words = ["000", "001", "011", "101", "110"]
        .iter()
        .map(|w| parse_word(w).unwrap())
        .collect();
    ClosedSetPresentation::CylinderUnion { words }
}
