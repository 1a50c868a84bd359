//! Exact packing of disjoint blocks (loose 6-cycles or single edges).
//!
//! Vertices are relabelled by degree, lowest first. At each node the
//! lowest uncovered vertex `v` is either covered by a block made of `v` and
//! higher vertices, or (when the target leaves room) skipped for good.
//! Blocks are generated lazily in lexicographic order. Failed states
//! (uncovered set, blocks still needed) are memoized.

use std::collections::HashSet;

use crate::bits::{iter_bits, test_bit};
use crate::budget::{Budget, Meter};
use crate::cycle::spans_cycle;
use crate::hypergraph::Hypergraph3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Block {
    Cycle,
    Edge,
}

impl Block {
    fn size(self) -> usize {
        match self {
            Block::Cycle => 6,
            Block::Edge => 3,
        }
    }
}

pub(super) enum PackResult {
    Found(Vec<Vec<usize>>),
    Fail,
    OutOfBudget,
}

enum Step {
    Found,
    Fail,
    Stop,
}

pub(super) struct Packer {
    h: Hypergraph3,
    /// `order[i]` is the original id of relabelled vertex `i`.
    order: Vec<usize>,
    block: Block,
    meter: Meter,
    failed: HashSet<(Box<[u64]>, usize)>,
    chosen: Vec<Vec<usize>>,
}

impl Packer {
    pub fn new(h: &Hypergraph3, block: Block, budget: Budget) -> Self {
        let mut order: Vec<usize> = (0..h.n()).collect();
        order.sort_by_key(|&v| (h.vertex_degree(v), v));
        Packer {
            h: h.relabel(&order),
            order,
            block,
            meter: budget.start(),
            failed: HashSet::new(),
            chosen: Vec::new(),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.meter.nodes
    }

    fn full(&self) -> Vec<u64> {
        let n = self.h.n();
        let mut w = vec![0u64; n.div_ceil(64)];
        for v in 0..n {
            w[v >> 6] |= 1 << (v & 63);
        }
        w
    }

    fn export(&self) -> Vec<Vec<usize>> {
        self.chosen
            .iter()
            .map(|b| {
                let mut o: Vec<usize> = b.iter().map(|&v| self.order[v]).collect();
                o.sort_unstable();
                o
            })
            .collect()
    }

    /// Looks for `need` disjoint blocks.
    pub fn pack(&mut self, need: usize) -> PackResult {
        self.chosen.clear();
        let mut unc = self.full();
        match self.rec(&mut unc, need) {
            Step::Found => PackResult::Found(self.export()),
            Step::Fail => PackResult::Fail,
            Step::Stop => PackResult::OutOfBudget,
        }
    }

    /// Largest packing up to `upper` blocks; the flag is false on budget stop.
    pub fn maximize(&mut self, upper: usize) -> (Vec<Vec<usize>>, bool) {
        let mut best = Vec::new();
        for need in 1..=upper {
            match self.pack(need) {
                PackResult::Found(b) => best = b,
                PackResult::Fail => return (best, true),
                PackResult::OutOfBudget => return (best, false),
            }
        }
        (best, true)
    }

    fn rec(&mut self, unc: &mut Vec<u64>, need: usize) -> Step {
        if need == 0 {
            return Step::Found;
        }
        let k = self.block.size();
        let count: usize = unc.iter().map(|w| w.count_ones() as usize).sum();
        if count < k * need {
            return Step::Fail;
        }
        let key = (unc.clone().into_boxed_slice(), need);
        if self.failed.contains(&key) {
            return Step::Fail;
        }
        let v = iter_bits(unc).next().expect("nonempty");
        unc[v >> 6] &= !(1 << (v & 63));

        let step = match self.block {
            Block::Cycle => self.try_cycles(v, unc, need),
            Block::Edge => self.try_edges(v, unc, need),
        };
        match step {
            Step::Fail => {}
            other => {
                unc[v >> 6] |= 1 << (v & 63);
                return other;
            }
        }
        // Leave v uncovered.
        if count - 1 >= k * need {
            match self.rec(unc, need) {
                Step::Fail => {}
                other => {
                    unc[v >> 6] |= 1 << (v & 63);
                    return other;
                }
            }
        }
        unc[v >> 6] |= 1 << (v & 63);
        self.failed.insert(key);
        Step::Fail
    }

    fn take(&mut self, block: Vec<usize>, unc: &mut Vec<u64>, need: usize) -> Step {
        for &u in &block[1..] {
            unc[u >> 6] &= !(1 << (u & 63));
        }
        self.chosen.push(block);
        let step = self.rec(unc, need - 1);
        let block = self.chosen.pop().expect("pushed");
        if matches!(step, Step::Found) {
            self.chosen.push(block);
            return step;
        }
        for &u in &block[1..] {
            unc[u >> 6] |= 1 << (u & 63);
        }
        step
    }

    fn try_cycles(&mut self, v: usize, unc: &mut Vec<u64>, need: usize) -> Step {
        let rest: Vec<usize> = iter_bits(unc).collect();
        let l = rest.len();
        if l < 5 {
            return Step::Fail;
        }
        let mut idx = [0usize, 1, 2, 3, 4];
        loop {
            if !self.meter.tick() {
                return Step::Stop;
            }
            let six = [v, rest[idx[0]], rest[idx[1]], rest[idx[2]], rest[idx[3]], rest[idx[4]]];
            if spans_cycle(&self.h, &six) {
                match self.take(six.to_vec(), unc, need) {
                    Step::Fail => {}
                    other => return other,
                }
            }
            // Next 5-combination of 0..l in lexicographic order.
            let mut i = 5;
            loop {
                if i == 0 {
                    return Step::Fail;
                }
                i -= 1;
                if idx[i] < l - 5 + i {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..5 {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    fn try_edges(&mut self, v: usize, unc: &mut Vec<u64>, need: usize) -> Step {
        let rest: Vec<usize> = iter_bits(unc).collect();
        for (i, &a) in rest.iter().enumerate() {
            let link = self.h.link(v, a).to_vec();
            for &b in &rest[i + 1..] {
                if !self.meter.tick() {
                    return Step::Stop;
                }
                if test_bit(&link, b) && test_bit(unc, b) && test_bit(unc, a) {
                    match self.take(vec![v, a, b], unc, need) {
                        Step::Fail => {}
                        other => return other,
                    }
                }
            }
        }
        Step::Fail
    }
}
