//! Canonical labeling by individualization-refinement.
//!
//! Disconnected graphs are labeled component by component, and graphs with a
//! disconnected complement through the complement, before falling back to a
//! search tree over refined partitions. The search keeps the leaf with the
//! smallest adjacency form and prunes with automorphisms discovered when two
//! leaves produce the same form.

use super::dense::Dense;
use super::partition::{Partition, Scratch};

/// Returns `order` such that relabeling `order[i] -> i` gives the canonical
/// form of `g`.
pub(crate) fn canonical_order(g: &Dense) -> Vec<usize> {
    let n = g.n();
    if n <= 1 {
        return (0..n).collect();
    }

    let comps = g.components();
    if comps.len() > 1 {
        let mut parts: Vec<(usize, Vec<u64>, Vec<usize>)> = comps
            .into_iter()
            .map(|comp| {
                if comp.len() == 1 {
                    return (1, Vec::new(), comp);
                }
                let sub = g.induced(&comp);
                let local = canonical_order(&sub);
                let form = sub.form(&local);
                let order = local.into_iter().map(|i| comp[i]).collect();
                (comp.len(), form, order)
            })
            .collect();
        parts.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        return parts.into_iter().flat_map(|(_, _, order)| order).collect();
    }

    if !g.complement_is_connected() {
        return canonical_order(&g.complement());
    }

    let mut search = Search::new(g);
    let mut root = Partition::unit(n);
    root.refine_all(g, &mut search.scratch);
    search.visit(root);
    search.best.expect("search visits at least one leaf").order
}

struct Leaf {
    form: Vec<u64>,
    order: Vec<usize>,
    path: Vec<usize>,
}

enum Flow {
    Continue,
    /// Resume at the tree node whose individualized prefix has this length.
    Resume(usize),
}

struct Search<'a> {
    g: &'a Dense,
    scratch: Scratch,
    path: Vec<usize>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Dense) -> Self {
        Self {
            g,
            scratch: Scratch::new(g.n()),
            path: Vec::new(),
            first: None,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn visit(&mut self, part: Partition) -> Flow {
        if part.is_discrete() {
            return self.leaf(part.elems);
        }
        let level = self.path.len();
        let mut cell = part.target_cell().expect("non-discrete").to_vec();
        cell.sort_unstable();

        let mut explored: Vec<usize> = Vec::new();
        for v in cell {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored) {
                continue;
            }
            let mut child = part.clone();
            child.individualize(self.g, v, &mut self.scratch);
            self.path.push(v);
            let flow = self.visit(child);
            self.path.pop();
            explored.push(v);
            if let Flow::Resume(target) = flow {
                if target < level {
                    return flow;
                }
            }
        }
        Flow::Continue
    }

    fn leaf(&mut self, order: Vec<usize>) -> Flow {
        let form = self.g.form(&order);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                form,
                order,
                path: self.path.clone(),
            };
            self.best = Some(Leaf {
                form: leaf.form.clone(),
                order: leaf.order.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return Flow::Continue;
        };

        if form == first.form {
            let gamma = mapping(&first.order, &order);
            let back = common_prefix(&first.path, &self.path);
            self.automorphisms.push(gamma);
            return Flow::Resume(back);
        }

        let best = self.best.as_ref().expect("set with first");
        match form.cmp(&best.form) {
            std::cmp::Ordering::Equal => {
                let gamma = mapping(&best.order, &order);
                let back = common_prefix(&best.path, &self.path);
                self.automorphisms.push(gamma);
                Flow::Resume(back)
            }
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf {
                    form,
                    order,
                    path: self.path.clone(),
                });
                Flow::Continue
            }
            std::cmp::Ordering::Greater => Flow::Continue,
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix the current path pointwise.
    fn equivalent_to_explored(&self, v: usize, explored: &[usize]) -> bool {
        let fixing: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|gamma| self.path.iter().all(|&x| gamma[x] == x))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let mut orbits = UnionFind::new(self.g.n());
        for gamma in fixing {
            for (x, &y) in gamma.iter().enumerate() {
                orbits.union(x, y);
            }
        }
        let root = orbits.find(v);
        explored.iter().any(|&u| orbits.find(u) == root)
    }
}

/// The permutation sending `from[i]` to `to[i]`.
fn mapping(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
