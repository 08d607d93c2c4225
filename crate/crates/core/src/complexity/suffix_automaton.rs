//! Online suffix automaton over the binary alphabet that tracks the longest
//! right-branching factor: the longest word `w` such that both `w0` and `w1`
//! occur in the text read so far.
//!
//! Every word in an automaton state has the same set of right extensions, so
//! a state with both outgoing edges contributes its longest word, `len`.
//! Edges are only ever added, which keeps the running maximum exact.

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct State {
    len: u32,
    link: u32,
    next: [u32; 2],
}

impl State {
    fn branches(&self) -> bool {
        self.next[0] != NONE && self.next[1] != NONE
    }
}

pub(crate) struct BranchingAutomaton {
    states: Vec<State>,
    last: u32,
    longest_branching: Option<u32>,
}

impl BranchingAutomaton {
    pub fn with_capacity(n: usize) -> Self {
        let mut states = Vec::with_capacity(2 * n + 1);
        states.push(State {
            len: 0,
            link: NONE,
            next: [NONE; 2],
        });
        Self {
            states,
            last: 0,
            longest_branching: None,
        }
    }

    /// Length of the longest right-branching factor, `None` when no factor
    /// (not even the empty word) is followed by both symbols.
    pub fn longest_branching(&self) -> Option<usize> {
        self.longest_branching.map(|l| l as usize)
    }

    fn set_edge(&mut self, state: u32, c: usize, target: u32) {
        let s = &mut self.states[state as usize];
        let was_new = s.next[c] == NONE;
        s.next[c] = target;
        if was_new && s.branches() {
            let len = s.len;
            self.longest_branching = Some(self.longest_branching.map_or(len, |b| b.max(len)));
        }
    }

    pub fn push(&mut self, bit: bool) {
        let c = bit as usize;
        let cur = self.states.len() as u32;
        self.states.push(State {
            len: self.states[self.last as usize].len + 1,
            link: NONE,
            next: [NONE; 2],
        });
        let mut p = self.last;
        while p != NONE && self.states[p as usize].next[c] == NONE {
            self.set_edge(p, c, cur);
            p = self.states[p as usize].link;
        }
        if p == NONE {
            self.states[cur as usize].link = 0;
        } else {
            let q = self.states[p as usize].next[c];
            if self.states[p as usize].len + 1 == self.states[q as usize].len {
                self.states[cur as usize].link = q;
            } else {
                let clone = self.states.len() as u32;
                let mut cl = self.states[q as usize];
                cl.len = self.states[p as usize].len + 1;
                self.states.push(cl);
                // a clone inherits q's edges, so it branches only if q does,
                // and q is longer; the running maximum is unaffected
                while p != NONE && self.states[p as usize].next[c] == q {
                    self.states[p as usize].next[c] = clone;
                    p = self.states[p as usize].link;
                }
                self.states[q as usize].link = clone;
                self.states[cur as usize].link = clone;
            }
        }
        self.last = cur;
    }
}
