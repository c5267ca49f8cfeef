#![allow(dead_code)]

use qembed::{BitPattern, BooleanFunction, Cube, Literal, Uncovered};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;

pub fn bp(s: &str) -> BitPattern {
    BitPattern::parse(s).unwrap()
}

pub const TABLE2_TT: &str = "3 3\n000 110\n001 000\n010 110\n011 100\n100 000\n101 111\n110 110\n111 110\n";
pub const HALF_ADDER_TT: &str = "2 2\n00 00\n01 01\n10 01\n11 10\n";

pub fn table2() -> BooleanFunction {
    qembed::pla::parse_tt(TABLE2_TT).unwrap().with_name("table2")
}

pub fn half_adder() -> BooleanFunction {
    qembed::pla::parse_tt(HALF_ADDER_TT).unwrap().with_name("ha")
}

/// A random cube cover together with its truth table, which is painted
/// independently of any library counting code.
pub struct Cover {
    pub function: BooleanFunction,
    /// `None` for minterms deliberately left uncovered.
    pub table: Vec<Option<u64>>,
    pub kind: CoverKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverKind {
    Consistent,
    Uncovered,
    Conflicting,
}

impl Cover {
    /// Histogram by direct tally over the painted table.
    pub fn expected(&self) -> BTreeMap<u64, u128> {
        let mut h = BTreeMap::new();
        for y in &self.table {
            *h.entry(y.unwrap_or(0)).or_insert(0) += 1;
        }
        h
    }
}

fn literals(n: u32, care: u64, value: u64) -> Vec<Literal> {
    (0..n)
        .rev()
        .map(|i| match ((care >> i) & 1, (value >> i) & 1) {
            (0, _) => Literal::DontCare,
            (_, 1) => Literal::One,
            _ => Literal::Zero,
        })
        .collect()
}

fn minterms(n: u32, care: u64, value: u64) -> impl Iterator<Item = u64> {
    let free: Vec<u32> = (0..n).filter(|i| (care >> i) & 1 == 0).collect();
    (0..1u64 << free.len()).map(move |k| {
        free.iter()
            .enumerate()
            .fold(value, |acc, (j, &bit)| acc | (((k >> j) & 1) << bit))
    })
}

/// Random cover: a random disjoint cofactor partition, optionally with holes
/// (implicit-zero semantics), plus overlapping consistent cubes. With
/// `kind != Consistent` the cover is broken on purpose.
pub fn random_cover(rng: &mut impl Rng, n: u32, m: u32, holes: bool, kind: CoverKind) -> Cover {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let pool_size = rng.gen_range(1..=8.min(1u64 << m.min(3)) as usize);
    let pool: Vec<u64> = (0..pool_size)
        .map(|_| rng.gen_range(0..1u64 << m))
        .collect();

    let mut table: Vec<Option<u64>> = vec![None; 1 << n];
    let mut cubes: Vec<(u64, u64, u64)> = Vec::new();
    let mut stack = vec![(0u64, 0u64, 0u32)];
    let mut dropped = false;
    while let Some((care, value, depth)) = stack.pop() {
        let stop = care == full || rng.gen_bool((0.15 + 0.12 * depth as f64).min(1.0));
        if stop {
            let drop = (holes || kind == CoverKind::Uncovered) && rng.gen_bool(0.25);
            if drop {
                dropped = true;
                continue;
            }
            let y = *pool.choose(rng).unwrap();
            for x in minterms(n, care, value) {
                table[x as usize] = Some(y);
            }
            cubes.push((care, value, y));
        } else {
            let free: Vec<u32> = (0..n).filter(|i| (care >> i) & 1 == 0).collect();
            let bit = 1u64 << free.choose(rng).unwrap();
            stack.push((care | bit, value, depth + 1));
            stack.push((care | bit, value | bit, depth + 1));
        }
    }
    if kind == CoverKind::Uncovered && !dropped {
        // make sure at least one hole exists
        let x = rng.gen_range(0..1u64 << n);
        let (care, value, _) = cubes
            .iter()
            .copied()
            .find(|&(c, v, _)| x & c == v)
            .unwrap();
        cubes.retain(|&(c, v, _)| (c, v) != (care, value));
        for z in minterms(n, care, value) {
            table[z as usize] = None;
        }
    }

    let treat = |y: Option<u64>| y.unwrap_or(0);
    let extra = rng.gen_range(0..=6);
    for _ in 0..extra {
        let mut care = 0u64;
        let mut value = 0u64;
        for i in 0..n {
            if rng.gen_bool(0.5) {
                care |= 1 << i;
                if rng.gen_bool(0.5) {
                    value |= 1 << i;
                }
            }
        }
        let anchor = value;
        let target = table[anchor as usize];
        if target.is_none() && !holes {
            continue;
        }
        let same = |y: Option<u64>| if holes { treat(y) == treat(target) } else { y == target };
        // Bind more variables to the anchor until the cube is uniform.
        while minterms(n, care, value).any(|x| !same(table[x as usize])) {
            let free: Vec<u32> = (0..n).filter(|i| (care >> i) & 1 == 0).collect();
            let bit = 1u64 << free.choose(rng).unwrap();
            care |= bit;
            value |= anchor & bit;
        }
        let y = treat(target);
        for x in minterms(n, care, value) {
            table[x as usize] = Some(y);
        }
        cubes.push((care, value, y));
    }

    if kind == CoverKind::Conflicting {
        let x = loop {
            let x = rng.gen_range(0..1u64 << n);
            if table[x as usize].is_some() {
                break x;
            }
        };
        let y = table[x as usize].unwrap() ^ 1;
        cubes.push((full, x, y));
    }

    cubes.shuffle(rng);
    let cubes = cubes
        .into_iter()
        .map(|(c, v, y)| Cube::new(&literals(n, c, v), BitPattern::new(y, m).unwrap()).unwrap())
        .collect();
    let mut function = BooleanFunction::new("cover", n, m, cubes).unwrap();
    if holes {
        function = function.with_uncovered(Uncovered::Zero);
    }
    Cover {
        function,
        table,
        kind,
    }
}

/// Random truth table; half the time drawn from a small pattern pool so
/// that multiplicities vary.
pub fn random_table(rng: &mut impl Rng, n: u32, m: u32) -> BooleanFunction {
    let pool: Vec<u64> = (0..rng.gen_range(1..=4))
        .map(|_| rng.gen_range(0..1u64 << m))
        .collect();
    let pooled = rng.gen_bool(0.5);
    let outputs = (0..1u64 << n)
        .map(|_| {
            if pooled {
                *pool.choose(rng).unwrap()
            } else {
                rng.gen_range(0..1u64 << m)
            }
        })
        .collect();
    BooleanFunction::from_truth_table("rand", n, m, outputs).unwrap()
}

/// Every multiset of positive parts summing to `total`, each part at most
/// `max_part` and at most `max_parts` parts, in non-increasing order.
pub fn partitions(total: u128, max_part: u128, max_parts: usize) -> Vec<Vec<u128>> {
    fn go(rest: u128, cap: u128, slots: usize, cur: &mut Vec<u128>, out: &mut Vec<Vec<u128>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Reference: `ceil(log2 x)` by doubling.
pub fn ceil_log2_ref(x: u128) -> u32 {
    let mut k = 0;
    while (1u128 << k) < x {
        k += 1;
    }
    k
}

/// Reference greedy construction on bare weights: join the two smallest,
/// parent weight `max + 1`. Returns the root weight.
pub fn greedy_root_weight(weights: &[u32]) -> u32 {
    let mut w = weights.to_vec();
    while w.len() > 1 {
        w.sort_unstable_by(|a, b| b.cmp(a));
        let a = w.pop().unwrap();
        let b = w.pop().unwrap();
        w.push(a.max(b) + 1);
    }
    w[0]
}
