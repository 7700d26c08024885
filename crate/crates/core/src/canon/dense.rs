use crate::graph::Graph;

/// Adjacency lists plus a bit matrix, for the small graphs handled by the
/// canonical labeling search.
#[derive(Debug, Clone)]
pub(crate) struct Dense {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl Dense {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.node_count();
        let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
        Self::from_adjacency(adj)
    }

    fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                bits[u * words + v / 64] |= 1 << (v % 64);
            }
        }
        Self {
            n,
            words,
            bits,
            adj,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the complement is connected, without materializing it.
    pub fn complement_is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        // BFS over non-edges, tracking unvisited vertices as a bitset.
        let mut unvisited = vec![u64::MAX; self.words];
        let tail = self.n % 64;
        if tail != 0 {
            unvisited[self.words - 1] = (1u64 << tail) - 1;
        }
        unvisited[0] &= !1;
        let mut remaining = self.n - 1;
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            let row = &self.bits[u * self.words..(u + 1) * self.words];
            for w in 0..self.words {
                let mut reach = unvisited[w] & !row[w];
                unvisited[w] &= !reach;
                while reach != 0 {
                    let b = reach.trailing_zeros() as usize;
                    reach &= reach - 1;
                    stack.push(w * 64 + b);
                    remaining -= 1;
                }
            }
            if remaining == 0 {
                return true;
            }
        }
        remaining == 0
    }

    pub fn complement(&self) -> Dense {
        let adj = (0..self.n)
            .map(|u| {
                (0..self.n)
                    .filter(|&v| v != u && !self.has_edge(u, v))
                    .collect()
            })
            .collect();
        Self::from_adjacency(adj)
    }

    /// Subgraph induced by `nodes` (sorted); node `i` of the result is `nodes[i]`.
    pub fn induced(&self, nodes: &[usize]) -> Dense {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let adj = nodes
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                    .collect()
            })
            .collect();
        Self::from_adjacency(adj)
    }

    /// Upper-triangle adjacency bits of the graph relabeled so that
    /// `order[i]` becomes node `i`, packed row by row, most significant bit
    /// first. Lexicographic order on the words is lexicographic order on
    /// the bit string.
    pub fn form(&self, order: &[usize]) -> Vec<u64> {
        let n = self.n;
        let total = n * n.saturating_sub(1) / 2;
        let mut out = vec![0u64; total.div_ceil(64)];
        let mut k = 0usize;
        for i in 0..n {
            let row = order[i] * self.words;
            for &vj in &order[i + 1..] {
                if self.bits[row + vj / 64] >> (vj % 64) & 1 == 1 {
                    out[k / 64] |= 1 << (63 - k % 64);
                }
                k += 1;
            }
        }
        out
    }
}
