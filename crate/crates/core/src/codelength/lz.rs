//! Incremental LZ78 parse cost.
//!
//! The input is split into phrases, each the shortest prefix of the rest
//! that is not yet in the dictionary; an unfinished final phrase still
//! counts. With `t` phrases the cost is `Σ_{i=1..t} (⌈log2 i⌉ + 1)` bits:
//! a pointer to one of the `i` earlier dictionary entries plus one literal bit.
//! The parse of `x` is a prefix of the parse of `x ∥ e`, so `t` and the cost
//! never decrease under extension.

use std::collections::HashMap;

use crate::bits::BitString;

#[derive(Clone, Debug, Default)]
pub(crate) struct LzState {
    children: HashMap<(u32, bool), u32>,
    next_node: u32,
    current: u32,
    completed: u64,
}

fn ceil_log2(i: u64) -> u64 {
    if i <= 1 {
        0
    } else {
        64 - (i - 1).leading_zeros() as u64
    }
}

pub(crate) fn phrase_cost(phrases: u64) -> f64 {
    (1..=phrases).map(|i| ceil_log2(i) + 1).sum::<u64>() as f64
}

impl LzState {
    pub fn new() -> Self {
        LzState {
            next_node: 1,
            ..Default::default()
        }
    }

    pub fn push(&mut self, bit: bool) {
        match self.children.get(&(self.current, bit)) {
            Some(&child) => self.current = child,
            None => {
                self.children.insert((self.current, bit), self.next_node);
                self.next_node += 1;
                self.completed += 1;
                self.current = 0;
            }
        }
    }

    pub fn feed(&mut self, x: &BitString) {
        for bit in x {
            self.push(bit);
        }
    }

    pub fn phrases(&self) -> u64 {
        self.completed + u64::from(self.current != 0)
    }

    pub fn bits(&self) -> f64 {
        phrase_cost(self.phrases())
    }

    pub fn extended(&self, x: &BitString) -> f64 {
        let mut s = self.clone();
        s.feed(x);
        s.bits()
    }
}
