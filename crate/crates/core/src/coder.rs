//! Pseudo-Huffman trees and the variable-length output codes derived from
//! them.
//!
//! Each occurring output pattern `p` becomes a terminal of weight
//! `ceil(log2 mu(p))`, the number of garbage bits needed to tell its `mu(p)`
//! preimages apart. The two lightest available nodes are joined repeatedly
//! into a parent of weight `max(w(a), w(b)) + 1`. Unlike classic Huffman
//! coding, weights combine by `max + 1`, not by sum. The root weight is the
//! output width of the coded embedding, and it is always `n` or `n + 1`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt::{self, Write as _};

use crate::bits::{format_bits, BitPattern};
use crate::error::{Error, Result};
use crate::function::OutputHistogram;

/// `ceil(log2 x)` for `x >= 1`, with `ceil_log2(1) == 0`.
pub fn ceil_log2(x: u128) -> u32 {
    assert!(x > 0, "ceil_log2 of zero");
    if x == 1 {
        0
    } else {
        128 - (x - 1).leading_zeros()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Terminal { pattern: BitPattern, mu: u128 },
    Internal { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhNode {
    pub id: usize,
    pub weight: u32,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhTree {
    n: u32,
    nodes: Vec<PhNode>,
    root: usize,
    terminal_of: BTreeMap<BitPattern, usize>,
}

/// Greedy construction. Ties on weight go to the node created first, and
/// terminals are created in ascending pattern order. The first node taken
/// becomes the left child.
pub fn build_ph_tree(h: &OutputHistogram) -> Result<PhTree> {
    if h.is_empty() {
        return Err(Error::EmptyHistogram);
    }
    let mut nodes = Vec::with_capacity(2 * h.len() - 1);
    let mut terminal_of = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    for (pattern, mu) in h.iter() {
        let id = nodes.len();
        let weight = ceil_log2(mu);
        nodes.push(PhNode {
            id,
            weight,
            kind: NodeKind::Terminal { pattern, mu },
        });
        terminal_of.insert(pattern, id);
        heap.push(Reverse((weight, id)));
    }
    while heap.len() > 1 {
        let Reverse((wl, left)) = heap.pop().unwrap();
        let Reverse((wr, right)) = heap.pop().unwrap();
        let id = nodes.len();
        let weight = wl.max(wr) + 1;
        nodes.push(PhNode {
            id,
            weight,
            kind: NodeKind::Internal { left, right },
        });
        heap.push(Reverse((weight, id)));
    }
    let Reverse((_, root)) = heap.pop().unwrap();
    Ok(PhTree {
        n: h.inputs(),
        nodes,
        root,
        terminal_of,
    })
}

impl PhTree {
    pub fn nodes(&self) -> &[PhNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &PhNode {
        &self.nodes[id]
    }

    pub fn root(&self) -> &PhNode {
        &self.nodes[self.root]
    }

    pub fn root_weight(&self) -> u32 {
        self.root().weight
    }

    /// Input count of the function the histogram came from.
    pub fn inputs(&self) -> u32 {
        self.n
    }

    pub fn terminal(&self, p: &BitPattern) -> Option<&PhNode> {
        self.terminal_of.get(p).map(|&id| &self.nodes[id])
    }

    pub fn terminals(&self) -> impl Iterator<Item = &PhNode> {
        self.terminal_of.values().map(|&id| &self.nodes[id])
    }

    fn children(&self, id: usize) -> Option<(usize, usize)> {
        match self.nodes[id].kind {
            NodeKind::Internal { left, right } => Some((left, right)),
            NodeKind::Terminal { .. } => None,
        }
    }

    /// Checks the structural tree properties and both defining conditions:
    /// internal weights are `max(children) + 1`, and the child weight
    /// intervals of any two internal nodes do not interleave.
    pub fn check(&self) -> std::result::Result<(), String> {
        let mut parents = vec![0usize; self.nodes.len()];
        for node in &self.nodes {
            match node.kind {
                NodeKind::Terminal { mu, .. } => {
                    if mu == 0 || node.weight != ceil_log2(mu) {
                        return Err(format!("terminal {} has weight {} for mu {}", node.id, node.weight, mu));
                    }
                }
                NodeKind::Internal { left, right } => {
                    parents[left] += 1;
                    parents[right] += 1;
                    let expect = self.nodes[left].weight.max(self.nodes[right].weight) + 1;
                    if node.weight != expect {
                        return Err(format!("node {} has weight {}, expected {}", node.id, node.weight, expect));
                    }
                }
            }
        }
        for (id, &count) in parents.iter().enumerate() {
            let want = usize::from(id != self.root);
            if count != want {
                return Err(format!("node {id} has {count} parents"));
            }
        }
        let intervals: Vec<(u32, u32)> = (0..self.nodes.len())
            .filter_map(|id| self.children(id))
            .map(|(a, b)| {
                let (wa, wb) = (self.nodes[a].weight, self.nodes[b].weight);
                (wa.min(wb), wa.max(wb))
            })
            .collect();
        for (i, &(lo1, hi1)) in intervals.iter().enumerate() {
            for (j, &(lo2, hi2)) in intervals.iter().enumerate() {
                if i != j && !(hi2 <= lo1 || lo2 >= hi1) {
                    return Err(format!(
                        "child weights ({lo2}, {hi2}) interleave with ({lo1}, {hi1})"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Indented rendering, one node per line, left child first.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root, 0usize, String::new())];
        while let Some((id, depth, edge)) = stack.pop() {
            let node = &self.nodes[id];
            let indent = "  ".repeat(depth);
            match node.kind {
                NodeKind::Terminal { pattern, mu } => {
                    let _ = writeln!(out, "{indent}{edge}[w={}] {pattern} (mu={mu})", node.weight);
                }
                NodeKind::Internal { left, right } => {
                    let _ = writeln!(out, "{indent}{edge}(w={})", node.weight);
                    stack.push((right, depth + 1, "1: ".into()));
                    stack.push((left, depth + 1, "0: ".into()));
                }
            }
        }
        out
    }

    /// Graphviz rendering; internal nodes show their weight, terminals show
    /// pattern and multiplicity as well.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ph_tree {\n  node [shape=circle];\n");
        for node in &self.nodes {
            match node.kind {
                NodeKind::Terminal { pattern, mu } => {
                    let _ = writeln!(
                        out,
                        "  v{} [shape=box, label=\"{}\\n{} / mu={}\"];",
                        node.id, node.weight, pattern, mu
                    );
                }
                NodeKind::Internal { left, right } => {
                    let _ = writeln!(out, "  v{} [label=\"{}\"];", node.id, node.weight);
                    let _ = writeln!(out, "  v{} -> v{} [label=\"0\"];", node.id, left);
                    let _ = writeln!(out, "  v{} -> v{} [label=\"1\"];", node.id, right);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A codeword of up to 128 bits; the first bit is the most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Codeword {
    bits: u128,
    len: u32,
}

impl Codeword {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(bits: u128, len: u32) -> Self {
        assert!(len <= 128);
        assert!(len == 128 || bits >> len == 0);
        Codeword { bits, len }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.len() > 128 {
            return Err(Error::BadBitString(s.to_string()));
        }
        let mut cw = Codeword::empty();
        for c in s.chars() {
            cw = match c {
                '0' => cw.push(false),
                '1' => cw.push(true),
                _ => return Err(Error::BadBitString(s.to_string())),
            };
        }
        Ok(cw)
    }

    pub fn push(self, bit: bool) -> Self {
        Codeword {
            bits: (self.bits << 1) | u128::from(bit),
            len: self.len + 1,
        }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        self.len <= other.len && other.bits >> (other.len - self.len) == self.bits
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bits(self.bits, self.len))
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword(\"{self}\")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeEntry {
    pub codeword: Codeword,
    /// Bits left for garbage after the codeword, `total_width - len`.
    pub garbage_budget: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBook {
    entries: BTreeMap<BitPattern, CodeEntry>,
    total_width: u32,
    decode: HashMap<Codeword, BitPattern>,
    lengths: Vec<u32>,
}

/// Reads codes off the tree: `0` for a left edge, `1` for a right edge.
pub fn assign_codes(tree: &PhTree) -> CodeBook {
    let total_width = tree.root_weight();
    let mut codes = Vec::new();
    let mut stack = vec![(tree.root, Codeword::empty())];
    while let Some((id, cw)) = stack.pop() {
        match tree.nodes[id].kind {
            NodeKind::Terminal { pattern, .. } => codes.push((pattern, cw)),
            NodeKind::Internal { left, right } => {
                stack.push((right, cw.push(true)));
                stack.push((left, cw.push(false)));
            }
        }
    }
    CodeBook::from_codes(total_width, codes)
        .expect("tree yields codewords no longer than its root weight")
}

impl CodeBook {
    /// Builds a codebook from explicit codewords. Fails if a codeword is
    /// longer than `total_width` or a pattern repeats.
    pub fn from_codes(
        total_width: u32,
        codes: impl IntoIterator<Item = (BitPattern, Codeword)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut decode = HashMap::new();
        for (pattern, codeword) in codes {
            if codeword.len() > total_width {
                return Err(Error::BadEmbedding(format!(
                    "codeword {codeword} for {pattern} exceeds width {total_width}"
                )));
            }
            let entry = CodeEntry {
                codeword,
                garbage_budget: total_width - codeword.len(),
            };
            if entries.insert(pattern, entry).is_some() {
                return Err(Error::BadEmbedding(format!("pattern {pattern} listed twice")));
            }
            decode.insert(codeword, pattern);
        }
        let mut lengths: Vec<u32> = entries.values().map(|e| e.codeword.len()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        Ok(CodeBook {
            entries,
            total_width,
            decode,
            lengths,
        })
    }

    pub fn total_width(&self) -> u32 {
        self.total_width
    }

    pub fn get(&self, p: &BitPattern) -> Option<&CodeEntry> {
        self.entries.get(p)
    }

    pub fn codeword(&self, p: &BitPattern) -> Option<Codeword> {
        self.entries.get(p).map(|e| e.codeword)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitPattern, &CodeEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sorted codeword lengths, one per pattern.
    pub fn length_multiset(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.entries.values().map(|e| e.codeword.len()).collect();
        v.sort_unstable();
        v
    }

    /// After lexicographic sorting, a prefix always sits directly before
    /// some word it prefixes, so neighbours suffice.
    pub fn is_prefix_free(&self) -> bool {
        let mut words: Vec<String> = self.entries.values().map(|e| e.codeword.to_string()).collect();
        words.sort();
        words.windows(2).all(|w| !w[1].starts_with(w[0].as_str()))
    }

    /// The pattern whose codeword prefixes the `width`-bit word `word`.
    pub fn decode(&self, word: u128, width: u32) -> Option<BitPattern> {
        self.lengths
            .iter()
            .take_while(|&&len| len <= width)
            .find_map(|&len| {
                let prefix = if len == 0 { 0 } else { word >> (width - len) };
                self.decode.get(&Codeword::new(prefix, len)).copied()
            })
    }
}

/// Which of the two possible root weights a histogram leads to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootWeight {
    ExactlyN,
    NPlusOne,
}

impl RootWeight {
    pub fn width(self, n: u32) -> u32 {
        match self {
            RootWeight::ExactlyN => n,
            RootWeight::NPlusOne => n + 1,
        }
    }
}

/// Decides the root weight without building the tree: it is `n` exactly when
/// rounding every multiplicity up to a power of two leaves the total at
/// `2^n`, i.e. when every multiplicity already is a power of two.
pub fn root_weight_bound(h: &OutputHistogram) -> Result<RootWeight> {
    if !h.is_complete() {
        return Err(Error::HistogramNotComplete {
            total: h.total(),
            n: h.inputs(),
        });
    }
    let rounded: u128 = h.iter().map(|(_, mu)| 1u128 << ceil_log2(mu)).sum();
    Ok(if rounded == 1u128 << h.inputs() {
        RootWeight::ExactlyN
    } else {
        RootWeight::NPlusOne
    })
}

/// Terminal weights `w(v)` with an assignment `s_v` satisfying
/// `2^(w-1) < s_v <= 2^w` and `sum s_v = 2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremInstance {
    n: u32,
    weights: Vec<u32>,
    assignment: Vec<u128>,
}

const MAX_THEOREM_N: u32 = 100;

fn lower_open(w: u32) -> u128 {
    if w == 0 {
        0
    } else {
        1u128 << (w - 1)
    }
}

impl TheoremInstance {
    /// Terminal counts taken directly as the assignment, `w = ceil(log2 s)`.
    pub fn from_counts(n: u32, counts: &[u128]) -> Result<Self> {
        if counts.contains(&0) {
            return Err(Error::HypothesisViolated("zero count".into()));
        }
        let weights = counts.iter().map(|&s| ceil_log2(s)).collect();
        Self::with_assignment(n, weights, counts.to_vec())
    }

    pub fn with_assignment(n: u32, weights: Vec<u32>, assignment: Vec<u128>) -> Result<Self> {
        if n > MAX_THEOREM_N {
            return Err(Error::HypothesisViolated(format!("n = {n} is too large")));
        }
        if weights.is_empty() || weights.len() != assignment.len() {
            return Err(Error::HypothesisViolated(
                "need one assignment per terminal".into(),
            ));
        }
        for (&w, &s) in weights.iter().zip(&assignment) {
            if w > MAX_THEOREM_N || !(lower_open(w) < s && s <= 1u128 << w) {
                return Err(Error::HypothesisViolated(format!(
                    "assignment {s} does not fit weight {w}"
                )));
            }
        }
        let total: u128 = assignment.iter().sum();
        if total != 1u128 << n {
            return Err(Error::HypothesisViolated(format!(
                "assignments sum to {total}, not 2^{n}"
            )));
        }
        Ok(TheoremInstance {
            n,
            weights,
            assignment,
        })
    }

    /// Derives an assignment for bare weights if one exists: start every
    /// terminal at its smallest admissible value and raise them in order
    /// until the total reaches `2^n`.
    pub fn from_weights(n: u32, weights: &[u32]) -> Result<Self> {
        if n > MAX_THEOREM_N || weights.iter().any(|&w| w > MAX_THEOREM_N) {
            return Err(Error::HypothesisViolated("weight too large".into()));
        }
        let target = 1u128 << n;
        let mut assignment: Vec<u128> = weights.iter().map(|&w| lower_open(w) + 1).collect();
        let mut total: u128 = assignment.iter().sum();
        if total > target {
            return Err(Error::HypothesisViolated(format!(
                "smallest admissible total {total} exceeds 2^{n}"
            )));
        }
        for (s, &w) in assignment.iter_mut().zip(weights) {
            let room = (1u128 << w) - *s;
            let add = room.min(target - total);
            *s += add;
            total += add;
        }
        if total != target {
            return Err(Error::HypothesisViolated(format!(
                "largest admissible total {total} is below 2^{n}"
            )));
        }
        Self::with_assignment(n, weights.to_vec(), assignment)
    }

    pub fn inputs(&self) -> u32 {
        self.n
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn assignment(&self) -> &[u128] {
        &self.assignment
    }

    /// Replays the greedy construction on the weights mapped `w -> 2^w`.
    pub fn verify(&self) -> TheoremReport {
        replay(self.n, &self.weights)
    }
}

/// One join in the `w -> 2^w` domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub smaller: u128,
    pub larger: u128,
    pub joined: u128,
    /// Sum of the transformed weights of all current roots after the join.
    pub total: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub n: u32,
    pub initial_total: u128,
    pub steps: Vec<TraceStep>,
    pub root_weight: u32,
    pub violations: Vec<String>,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn exactly_n(&self) -> bool {
        self.root_weight == self.n
    }
}

/// Convenience wrapper: counts form the assignment.
pub fn verify_theorem_instance(n: u32, counts: &[u128]) -> Result<TheoremReport> {
    Ok(TheoremInstance::from_counts(n, counts)?.verify())
}

fn replay(n: u32, weights: &[u32]) -> TheoremReport {
    let limit = 1u128 << (n + 1);
    let full = 1u128 << n;
    let mut heap: BinaryHeap<Reverse<u128>> = weights.iter().map(|&w| Reverse(1u128 << w)).collect();
    let initial_total: u128 = heap.iter().map(|r| r.0).sum();
    let mut total = initial_total;
    let mut violations = Vec::new();
    let mut raised_at: Vec<u128> = Vec::new();
    let mut steps = Vec::with_capacity(weights.len().saturating_sub(1));

    if initial_total >= limit {
        violations.push(format!("initial total {initial_total} is not below 2^{}", n + 1));
    }
    while heap.len() > 1 {
        let Reverse(smaller) = heap.pop().unwrap();
        let Reverse(larger) = heap.pop().unwrap();
        let joined = 2 * larger;
        let next = total - smaller - larger + joined;
        if smaller != larger {
            // Unequal join: the total rises to the next multiple of `larger`,
            // and this happens at most once per weight level.
            if next % larger != 0 || next - total >= larger {
                violations.push(format!(
                    "join of {smaller} and {larger} moved total {total} to {next}, not the next multiple of {larger}"
                ));
            }
            if raised_at.contains(&larger) {
                violations.push(format!("second unequal join at level {larger}"));
            }
            raised_at.push(larger);
        } else if next != total {
            violations.push(format!("equal join changed total {total} to {next}"));
        }
        if next > limit {
            violations.push(format!("total {next} exceeds 2^{}", n + 1));
        }
        total = next;
        steps.push(TraceStep {
            smaller,
            larger,
            joined,
            total,
        });
        heap.push(Reverse(joined));
    }
    let root = heap.pop().map(|r| r.0).unwrap_or(0);
    if root != full && root != limit {
        violations.push(format!("root {root} is neither 2^{n} nor 2^{}", n + 1));
    }
    if (root == full) != (initial_total == full) {
        violations.push(format!(
            "root {root} disagrees with initial total {initial_total} on exactness"
        ));
    }
    TheoremReport {
        n,
        initial_total,
        steps,
        root_weight: 127 - root.leading_zeros(),
        violations,
    }
}
