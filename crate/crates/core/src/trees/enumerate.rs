use super::DirectedTree;
use crate::cost::Cost;
use crate::degseq::DegreeSequence;
use crate::instance::Instance;

/// Lazily yields every rooted directed tree with a prescribed out-degree
/// vector, each exactly once, using O(n) working state.
///
/// Each step takes the lowest-index unattached vertex whose out-degree is
/// used up and attaches it below some vertex with spare out-degree. The root
/// is only eligible while it keeps at least one unit in reserve for the final
/// edge, so no branch dead-ends.
#[derive(Debug, Clone)]
pub struct TreeEnumerator {
    root: usize,
    out: Vec<u32>,
    parent: Vec<Option<usize>>,
    unattached: usize,
    stack: Vec<Frame>,
    base_child: Option<usize>,
    started: bool,
    done: bool,
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    leaf: usize,
    next: usize,
    chosen: Option<usize>,
}

impl TreeEnumerator {
    pub fn new(ds: &DegreeSequence) -> Self {
        Self::from_raw(ds.out_degrees().to_vec(), ds.root())
    }

    /// `out` must be feasible for `root`.
    pub(crate) fn from_raw(out: Vec<u32>, root: usize) -> Self {
        let n = out.len();
        debug_assert!(crate::degseq::is_feasible(&out, root));
        TreeEnumerator {
            root,
            out,
            parent: vec![None; n],
            unattached: n - 1,
            stack: Vec::with_capacity(n),
            base_child: None,
            started: false,
            done: false,
        }
    }

    fn is_unattached(&self, v: usize) -> bool {
        v != self.root && self.parent[v].is_none()
    }

    /// Undo the top frame's current choice and apply the next admissible one.
    fn advance_top(&mut self) -> bool {
        let n = self.out.len();
        let frame = self.stack.last_mut().expect("advance_top on empty stack");
        let leaf = frame.leaf;
        if let Some(j) = frame.chosen.take() {
            self.out[j] += 1;
            self.parent[leaf] = None;
            self.unattached += 1;
        }
        for j in frame.next..n {
            let spare = if j == self.root { 2 } else { 1 };
            if j != leaf && self.out[j] >= spare {
                self.out[j] -= 1;
                self.parent[leaf] = Some(j);
                self.unattached -= 1;
                frame.chosen = Some(j);
                frame.next = j + 1;
                return true;
            }
        }
        false
    }

    fn backtrack(&mut self) -> bool {
        while !self.stack.is_empty() {
            if self.advance_top() {
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

impl Iterator for TreeEnumerator {
    type Item = DirectedTree;

    fn next(&mut self) -> Option<DirectedTree> {
        if self.done {
            return None;
        }
        if self.started {
            if let Some(c) = self.base_child.take() {
                self.parent[c] = None;
                self.out[self.root] += 1;
            }
            if !self.backtrack() {
                self.done = true;
                return None;
            }
        }
        self.started = true;
        loop {
            if self.unattached == 1 {
                let c = (0..self.out.len())
                    .find(|&v| self.is_unattached(v))
                    .expect("one vertex remains");
                debug_assert_eq!(self.out[self.root], 1);
                self.parent[c] = Some(self.root);
                self.out[self.root] -= 1;
                self.base_child = Some(c);
                return Some(DirectedTree { root: self.root, parent: self.parent.clone() });
            }
            let leaf = (0..self.out.len())
                .find(|&v| self.is_unattached(v) && self.out[v] == 0)
                .expect("a feasible sequence always has an unattached leaf");
            self.stack.push(Frame { leaf, next: 0, chosen: None });
            if !self.advance_top() {
                self.stack.pop();
                if !self.backtrack() {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

/// Every tree realizing `ds`, paired with its cost under `inst`.
pub fn enumerate_trees<'a>(
    ds: &DegreeSequence,
    inst: &'a Instance,
) -> impl Iterator<Item = (DirectedTree, Cost)> + 'a {
    TreeEnumerator::new(ds).map(move |t| {
        let c = t.cost(inst).expect("tree cost overflow");
        (t, c)
    })
}

/// One tree realizing `ds`: the first one [`TreeEnumerator`] yields.
pub fn realize_tree(ds: &DegreeSequence) -> DirectedTree {
    TreeEnumerator::new(ds).next().expect("every feasible sequence is realizable")
}
