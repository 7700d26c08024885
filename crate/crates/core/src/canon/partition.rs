use std::collections::VecDeque;

use super::dense::Dense;

/// Ordered partition of `0..n` stored as contiguous cells of `elems`.
///
/// A cell is identified by the position of its first element. Nothing here
/// depends on vertex names, only on cell positions and adjacency counts, so
/// refinement commutes with relabeling.
#[derive(Debug, Clone)]
pub(crate) struct Partition {
    pub elems: Vec<usize>,
    /// Position of each vertex in `elems`.
    pos: Vec<usize>,
    /// Start of the cell containing each position.
    cell_of: Vec<usize>,
    /// Length of the cell starting at a position (meaningful at starts only).
    cell_len: Vec<usize>,
    cells: usize,
}

/// Scratch buffers reused across refinements of one graph.
pub(crate) struct Scratch {
    counts: Vec<usize>,
    touched: Vec<usize>,
    marked: Vec<bool>,
    in_queue: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Scratch {
    pub fn new(n: usize) -> Self {
        Self {
            counts: vec![0; n],
            touched: Vec::new(),
            marked: vec![false; n],
            in_queue: vec![false; n],
            queue: VecDeque::new(),
        }
    }
}

impl Partition {
    pub fn unit(n: usize) -> Self {
        let mut cell_len = vec![0; n];
        if n > 0 {
            cell_len[0] = n;
        }
        Self {
            elems: (0..n).collect(),
            pos: (0..n).collect(),
            cell_of: vec![0; n],
            cell_len,
            cells: usize::from(n > 0),
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    /// First cell with more than one element.
    pub fn target_cell(&self) -> Option<&[usize]> {
        let mut s = 0;
        while s < self.elems.len() {
            let len = self.cell_len[s];
            if len > 1 {
                return Some(&self.elems[s..s + len]);
            }
            s += len;
        }
        None
    }

    /// Moves `v` into a singleton cell at the front of its cell and refines.
    pub fn individualize(&mut self, g: &Dense, v: usize, scratch: &mut Scratch) {
        let p = self.pos[v];
        let start = self.cell_of[p];
        let len = self.cell_len[start];
        debug_assert!(len > 1);
        self.swap_positions(p, start);
        self.cell_len[start] = 1;
        self.cell_len[start + 1] = len - 1;
        for q in start + 1..start + len {
            self.cell_of[q] = start + 1;
        }
        self.cells += 1;
        scratch.queue.clear();
        scratch.queue.push_back(start);
        scratch.in_queue[start] = true;
        self.run(g, scratch);
    }

    /// Equitable refinement starting from the whole partition as splitters.
    pub fn refine_all(&mut self, g: &Dense, scratch: &mut Scratch) {
        scratch.queue.clear();
        let mut s = 0;
        while s < self.elems.len() {
            scratch.queue.push_back(s);
            scratch.in_queue[s] = true;
            s += self.cell_len[s];
        }
        self.run(g, scratch);
    }

    fn swap_positions(&mut self, a: usize, b: usize) {
        self.elems.swap(a, b);
        self.pos[self.elems[a]] = a;
        self.pos[self.elems[b]] = b;
    }

    fn run(&mut self, g: &Dense, scratch: &mut Scratch) {
        let mut splitter = Vec::new();
        while let Some(w) = scratch.queue.pop_front() {
            scratch.in_queue[w] = false;
            splitter.clear();
            splitter.extend_from_slice(&self.elems[w..w + self.cell_len[w]]);

            scratch.touched.clear();
            for &x in &splitter {
                for &y in g.neighbors(x) {
                    if scratch.counts[y] == 0 {
                        let c = self.cell_of[self.pos[y]];
                        if !scratch.marked[c] {
                            scratch.marked[c] = true;
                            scratch.touched.push(c);
                        }
                    }
                    scratch.counts[y] += 1;
                }
            }
            scratch.touched.sort_unstable();

            let touched = std::mem::take(&mut scratch.touched);
            for &c in &touched {
                scratch.marked[c] = false;
                self.split_cell(c, scratch);
            }
            scratch.touched = touched;

            for &x in &splitter {
                for &y in g.neighbors(x) {
                    scratch.counts[y] = 0;
                }
            }
            if self.is_discrete() {
                for s in scratch.queue.drain(..) {
                    scratch.in_queue[s] = false;
                }
                break;
            }
        }
    }

    /// Splits the cell at `start` by neighbor counts, fragments in ascending
    /// count order, and queues every new fragment.
    fn split_cell(&mut self, start: usize, scratch: &mut Scratch) {
        let len = self.cell_len[start];
        if len == 1 {
            return;
        }
        let cell = &mut self.elems[start..start + len];
        let first = scratch.counts[cell[0]];
        if cell.iter().all(|&v| scratch.counts[v] == first) {
            return;
        }
        cell.sort_by_key(|&v| scratch.counts[v]);
        for q in start..start + len {
            self.pos[self.elems[q]] = q;
        }

        let mut frag = start;
        for q in start + 1..=start + len {
            let boundary = q == start + len
                || scratch.counts[self.elems[q]] != scratch.counts[self.elems[q - 1]];
            if boundary {
                self.cell_len[frag] = q - frag;
                for r in frag..q {
                    self.cell_of[r] = frag;
                }
                if frag != start {
                    self.cells += 1;
                }
                if !scratch.in_queue[frag] {
                    scratch.in_queue[frag] = true;
                    scratch.queue.push_back(frag);
                }
                frag = q;
            }
        }
    }
}
