//! Exact output-pattern counting.
//!
//! Two backends compute the same histogram. `count_enumerate` evaluates every
//! input minterm and is the reference. `count_cofactor` splits the cube list
//! by Shannon cofactoring and never materializes the input space, so it also
//! handles wide functions given as compact PLA covers.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::bits::{format_bits, low_mask, BitPattern};
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, OutputHistogram, Uncovered};

pub const DEFAULT_ENUMERATE_LIMIT: u32 = 20;

/// Inputs per parallel work item in `count_enumerate`.
const CHUNK_BITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Enumerate,
    Cofactor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountBackend {
    pub kind: BackendKind,
    /// `Enumerate` refuses functions with more inputs than this.
    pub enumerate_limit: u32,
    /// Memoize cofactor results. Never changes the answer.
    pub memoize: bool,
}

impl CountBackend {
    pub fn enumerate() -> Self {
        CountBackend {
            kind: BackendKind::Enumerate,
            ..Self::default()
        }
    }

    pub fn cofactor() -> Self {
        Self::default()
    }
}

impl Default for CountBackend {
    fn default() -> Self {
        CountBackend {
            kind: BackendKind::Cofactor,
            enumerate_limit: DEFAULT_ENUMERATE_LIMIT,
            memoize: true,
        }
    }
}

/// Histogram of `f`'s output patterns computed with `backend`.
pub fn histogram(f: &BooleanFunction, backend: &CountBackend) -> Result<OutputHistogram> {
    let h = match backend.kind {
        BackendKind::Enumerate => enumerate_with_limit(f, backend.enumerate_limit)?,
        BackendKind::Cofactor => cofactor(f, backend.memoize)?,
    };
    if !h.is_complete() {
        return Err(Error::HistogramNotComplete {
            total: h.total(),
            n: f.inputs(),
        });
    }
    Ok(h)
}

pub fn count_enumerate(f: &BooleanFunction) -> Result<OutputHistogram> {
    enumerate_with_limit(f, DEFAULT_ENUMERATE_LIMIT)
}

pub fn count_cofactor(f: &BooleanFunction) -> Result<OutputHistogram> {
    cofactor(f, true)
}

/// `count_cofactor` with the memo table switched off.
pub fn count_cofactor_uncached(f: &BooleanFunction) -> Result<OutputHistogram> {
    cofactor(f, false)
}

fn to_histogram(f: &BooleanFunction, tally: &BTreeMap<u64, u128>) -> Result<OutputHistogram> {
    let m = f.outputs();
    OutputHistogram::new(
        f.inputs(),
        m,
        tally.iter().map(|(&y, &c)| (BitPattern::truncated(y, m), c)),
    )
}

fn enumerate_with_limit(f: &BooleanFunction, limit: u32) -> Result<OutputHistogram> {
    let n = f.inputs();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let size = 1u64 << n;
    let chunk = 1u64 << CHUNK_BITS.min(n);
    let parts: Vec<Result<BTreeMap<u64, u128>>> = (0..size / chunk)
        .into_par_iter()
        .map(|c| {
            let mut tally = BTreeMap::new();
            for x in c * chunk..(c + 1) * chunk {
                *tally.entry(image(f, x)?).or_insert(0) += 1;
            }
            Ok(tally)
        })
        .collect();
    // Chunks are merged in input order so the reported error is the one at
    // the smallest failing input.
    let mut total = BTreeMap::new();
    for part in parts {
        for (y, c) in part? {
            *total.entry(y).or_insert(0u128) += c;
        }
    }
    to_histogram(f, &total)
}

/// The unique image of `x`, checking every covering cube.
fn image(f: &BooleanFunction, x: u64) -> Result<u64> {
    if let Some(table) = f.table() {
        return Ok(table[x as usize]);
    }
    let mut found: Option<u64> = None;
    for cube in f.cubes().iter().filter(|c| c.covers(x)) {
        let y = cube.output().value();
        match found {
            None => found = Some(y),
            Some(prev) if prev != y => {
                return Err(Error::InconsistentFunction {
                    input: format_bits(x as u128, f.inputs()),
                    first: format_bits(prev as u128, f.outputs()),
                    second: format_bits(y as u128, f.outputs()),
                })
            }
            Some(_) => {}
        }
    }
    match (found, f.uncovered()) {
        (Some(y), _) => Ok(y),
        (None, Uncovered::Zero) => Ok(0),
        (None, Uncovered::Error) => Err(Error::UncoveredMinterm {
            input: format_bits(x as u128, f.inputs()),
        }),
    }
}

/// A cube restricted to the free variables of a cofactor.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Term {
    care: u64,
    value: u64,
    out: u64,
}

struct Node {
    free: u64,
    /// Values of the variables already split on.
    path: u64,
    terms: Vec<Term>,
}

type Tally = Arc<BTreeMap<u64, u128>>;

enum Task {
    Expand(Node),
    Merge(Option<(u64, Vec<Term>)>),
}

struct Cofactorer<'a> {
    f: &'a BooleanFunction,
    memo: Option<HashMap<(u64, Vec<Term>), Tally>>,
}

fn cofactor(f: &BooleanFunction, memoize: bool) -> Result<OutputHistogram> {
    let free = low_mask(f.inputs());
    let terms = f
        .cubes()
        .iter()
        .map(|c| Term {
            care: c.care_mask(),
            value: c.value_mask(),
            out: c.output().value(),
        })
        .collect();
    let mut engine = Cofactorer {
        f,
        memo: memoize.then(HashMap::new),
    };
    let tally = engine.run(Node {
        free,
        path: 0,
        terms,
    })?;
    to_histogram(f, &tally)
}

impl Cofactorer<'_> {
    /// Depth-first over an explicit stack; `values` holds finished subresults.
    fn run(&mut self, root: Node) -> Result<Tally> {
        let mut stack = vec![Task::Expand(root)];
        let mut values: Vec<Tally> = Vec::new();
        while let Some(task) = stack.pop() {
            match task {
                Task::Expand(mut node) => {
                    node.terms.sort_unstable();
                    node.terms.dedup();
                    let key = self.memo.as_ref().map(|_| (node.free, node.terms.clone()));
                    if let (Some(memo), Some(key)) = (&self.memo, &key) {
                        if let Some(hit) = memo.get(key) {
                            values.push(hit.clone());
                            continue;
                        }
                    }
                    if let Some(leaf) = self.leaf(&node)? {
                        let leaf = Arc::new(leaf);
                        if let (Some(memo), Some(key)) = (&mut self.memo, key) {
                            memo.insert(key, leaf.clone());
                        }
                        values.push(leaf);
                        continue;
                    }
                    let var = split_variable(&node);
                    let (neg, pos) = split(node, var);
                    stack.push(Task::Merge(key));
                    stack.push(Task::Expand(pos));
                    stack.push(Task::Expand(neg));
                }
                Task::Merge(key) => {
                    let hi = values.pop().expect("merge without right operand");
                    let lo = values.pop().expect("merge without left operand");
                    let mut sum = (*lo).clone();
                    for (&y, &c) in hi.iter() {
                        *sum.entry(y).or_insert(0) += c;
                    }
                    let sum = Arc::new(sum);
                    if let (Some(memo), Some(key)) = (&mut self.memo, key) {
                        memo.insert(key, sum.clone());
                    }
                    values.push(sum);
                }
            }
        }
        debug_assert_eq!(values.len(), 1);
        Ok(values.pop().expect("empty cofactor result"))
    }

    /// Result for nodes that need no further splitting, `None` otherwise.
    fn leaf(&self, node: &Node) -> Result<Option<BTreeMap<u64, u128>>> {
        let f = self.f;
        let space = 1u128 << node.free.count_ones();
        let witness = |x: u64| format_bits(x as u128, f.inputs());
        let out = |y: u64| format_bits(y as u128, f.outputs());

        if node.terms.is_empty() {
            return match f.uncovered() {
                Uncovered::Zero => Ok(Some(BTreeMap::from([(0, space)]))),
                Uncovered::Error => Err(Error::UncoveredMinterm {
                    input: witness(node.path),
                }),
            };
        }

        if let Some(full) = node.terms.iter().find(|t| t.care == 0) {
            if let Some(other) = node.terms.iter().find(|t| t.out != full.out) {
                return Err(Error::InconsistentFunction {
                    input: witness(node.path | other.value),
                    first: out(full.out),
                    second: out(other.out),
                });
            }
            return Ok(Some(BTreeMap::from([(full.out, space)])));
        }

        if let [only] = node.terms.as_slice() {
            let covered = space >> only.care.count_ones();
            let rest = space - covered;
            let mut tally = BTreeMap::from([(only.out, covered)]);
            match f.uncovered() {
                Uncovered::Zero => *tally.entry(0).or_insert(0) += rest,
                Uncovered::Error => {
                    let flip = only.care & only.care.wrapping_neg();
                    return Err(Error::UncoveredMinterm {
                        input: witness(node.path | (only.value ^ flip)),
                    });
                }
            }
            return Ok(Some(tally));
        }

        Ok(None)
    }
}

/// The free variable bound by the most terms; lowest index on ties.
fn split_variable(node: &Node) -> u32 {
    let bound = node.terms.iter().fold(0u64, |acc, t| acc | t.care);
    debug_assert!(bound != 0);
    let mut best = (0usize, 0u32);
    let mut rest = bound;
    while rest != 0 {
        let var = rest.trailing_zeros();
        rest &= rest - 1;
        let uses = node
            .terms
            .iter()
            .filter(|t| (t.care >> var) & 1 == 1)
            .count();
        if uses > best.0 {
            best = (uses, var);
        }
    }
    best.1
}

fn split(node: Node, var: u32) -> (Node, Node) {
    let bit = 1u64 << var;
    let restrict = |polarity: u64| {
        let terms = node
            .terms
            .iter()
            .filter(|t| t.care & bit == 0 || t.value & bit == polarity)
            .map(|t| Term {
                care: t.care & !bit,
                value: t.value & !bit,
                out: t.out,
            })
            .collect();
        Node {
            free: node.free & !bit,
            path: node.path | polarity,
            terms,
        }
    };
    (restrict(0), restrict(bit))
}
