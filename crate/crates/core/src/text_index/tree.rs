//! Suffix tree of `w#`, built from the suffix and LCP arrays.

use crate::text_index::{build_lcp_array, build_suffix_array, Text};

const EMPTY: u32 = u32::MAX;

/// Suffix tree of `w#` where `#` is a unique end marker.
///
/// Nodes are numbered in preorder with the root at 0, so `parent(v) < v` for
/// every non-root node and each subtree is a contiguous id range. Children
/// are linked in suffix-array order, hence leaves appear in preorder exactly
/// in suffix-array order. Leaf depths count the end marker; [`word_len`]
/// strips it.
///
/// [`word_len`]: SuffixTree::word_len
pub struct SuffixTree {
    n: usize,
    parent: Vec<u32>,
    depth: Vec<u32>,
    first_child: Vec<u32>,
    next_sibling: Vec<u32>,
    leaf_pos: Vec<u32>,
    edge_pos: Vec<u32>,
}

pub fn build_suffix_tree(text: &Text) -> SuffixTree {
    let sa = build_suffix_array(text);
    let lcp = build_lcp_array(text, &sa);
    SuffixTree::from_parts(text.len(), &sa, &lcp)
}

/// Node arrays under construction; child lists grow newest-first and are
/// reversed at the end, so appends in suffix-array order come out in
/// suffix-array order.
struct Builder {
    parent: Vec<u32>,
    depth: Vec<u32>,
    leaf_pos: Vec<u32>,
    edge_pos: Vec<u32>,
    last_child: Vec<u32>,
    prev_sibling: Vec<u32>,
}

impl Builder {
    fn with_capacity(cap: usize) -> Builder {
        Builder {
            parent: Vec::with_capacity(cap),
            depth: Vec::with_capacity(cap),
            leaf_pos: Vec::with_capacity(cap),
            edge_pos: Vec::with_capacity(cap),
            last_child: Vec::with_capacity(cap),
            prev_sibling: Vec::with_capacity(cap),
        }
    }

    fn new_node(&mut self, parent: u32, depth: u32, leaf: u32, edge: u32) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(parent);
        self.depth.push(depth);
        self.leaf_pos.push(leaf);
        self.edge_pos.push(edge);
        self.last_child.push(EMPTY);
        self.prev_sibling.push(EMPTY);
        id
    }

    fn append_child(&mut self, t: u32, c: u32) {
        self.prev_sibling[c as usize] = self.last_child[t as usize];
        self.last_child[t as usize] = c;
    }
}

impl SuffixTree {
    pub const ROOT: usize = 0;

    /// Builds from the `n + 1` entry suffix and LCP arrays over `w#`.
    pub fn from_parts(n: usize, sa: &[u32], lcp: &[u32]) -> SuffixTree {
        assert_eq!(sa.len(), n + 1);
        assert_eq!(lcp.len(), n + 1);
        let mut b = Builder::with_capacity(2 * n + 3);
        let root = b.new_node(0, 0, EMPTY, 0);

        // Stack is the path from the root to the latest leaf; consecutive
        // entries are parent and child.
        let mut stack: Vec<(u32, u32)> = vec![(root, 0)];
        for (r, &p) in sa.iter().enumerate() {
            let h = if r == 0 { 0 } else { lcp[r] };
            let mut last_popped = EMPTY;
            while stack.last().unwrap().1 > h {
                last_popped = stack.pop().unwrap().0;
            }
            let (top, top_depth) = *stack.last().unwrap();
            let attach = if top_depth == h {
                top
            } else {
                // Split the edge to `last_popped` with a new node at depth
                // `h`, replacing it in `top`'s child list so suffix-array
                // order is preserved. `last_popped` is `top`'s newest child.
                debug_assert!(last_popped != EMPTY);
                let u = b.new_node(top, h, EMPTY, p);
                let lp = last_popped as usize;
                b.prev_sibling[u as usize] = b.prev_sibling[lp];
                b.last_child[top as usize] = u;
                b.parent[lp] = u;
                b.prev_sibling[lp] = EMPTY;
                b.last_child[u as usize] = last_popped;
                stack.push((u, h));
                u
            };
            let leaf_depth = (n as u32 - p) + 1;
            let leaf = b.new_node(attach, leaf_depth, p, p);
            b.append_child(attach, leaf);
            stack.push((leaf, leaf_depth));
        }

        let count = b.parent.len();
        debug_assert!(count <= 2 * n + 3);

        // Reverse the child lists into first_child/next_sibling.
        let mut first_child = vec![EMPTY; count];
        let mut next_sibling = vec![EMPTY; count];
        for t in 0..count {
            let mut c = b.last_child[t];
            let mut next = EMPTY;
            while c != EMPTY {
                let prev = b.prev_sibling[c as usize];
                next_sibling[c as usize] = next;
                next = c;
                c = prev;
            }
            first_child[t] = next;
        }

        // Renumber to preorder so parents precede children.
        let mut order = vec![EMPTY; count];
        let mut next_id = 0u32;
        let mut v = root;
        loop {
            order[v as usize] = next_id;
            next_id += 1;
            if first_child[v as usize] != EMPTY {
                v = first_child[v as usize];
                continue;
            }
            loop {
                if next_sibling[v as usize] != EMPTY {
                    v = next_sibling[v as usize];
                    break;
                }
                if v == root {
                    break;
                }
                v = b.parent[v as usize];
            }
            if v == root {
                break;
            }
        }
        debug_assert_eq!(next_id as usize, count);

        let remap = |x: u32| if x == EMPTY { EMPTY } else { order[x as usize] };
        let mut tree = SuffixTree {
            n,
            parent: vec![0; count],
            depth: vec![0; count],
            first_child: vec![0; count],
            next_sibling: vec![0; count],
            leaf_pos: vec![0; count],
            edge_pos: vec![0; count],
        };
        for old in 0..count {
            let new = order[old] as usize;
            tree.parent[new] = remap(b.parent[old]);
            tree.depth[new] = b.depth[old];
            tree.first_child[new] = remap(first_child[old]);
            tree.next_sibling[new] = remap(next_sibling[old]);
            tree.leaf_pos[new] = b.leaf_pos[old];
            tree.edge_pos[new] = b.edge_pos[old];
        }
        tree
    }

    /// Length of the underlying word, not counting the end marker.
    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v] as usize
    }

    /// String depth counting the end marker on leaf edges.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    /// Length of the node's word with the end marker stripped.
    pub fn word_len(&self, v: usize) -> usize {
        self.depth[v] as usize - usize::from(self.is_leaf(v))
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.leaf_pos[v] != EMPTY
    }

    /// Suffix start position for leaves.
    pub fn leaf_pos(&self, v: usize) -> Option<usize> {
        (self.leaf_pos[v] != EMPTY).then_some(self.leaf_pos[v] as usize)
    }

    /// Start of one occurrence of the node's word.
    pub fn edge_pos(&self, v: usize) -> usize {
        self.edge_pos[v] as usize
    }

    pub fn first_child(&self, v: usize) -> Option<usize> {
        (self.first_child[v] != EMPTY).then_some(self.first_child[v] as usize)
    }

    pub fn next_sibling(&self, v: usize) -> Option<usize> {
        (self.next_sibling[v] != EMPTY).then_some(self.next_sibling[v] as usize)
    }

    pub fn children(&self, v: usize) -> Children<'_> {
        Children {
            tree: self,
            cur: self.first_child[v],
        }
    }

    /// Parent array over preorder ids, for building ancestry indexes.
    pub fn parents(&self) -> &[u32] {
        &self.parent
    }
}

pub struct Children<'a> {
    tree: &'a SuffixTree,
    cur: u32,
}

impl Iterator for Children<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.cur == EMPTY {
            return None;
        }
        let v = self.cur as usize;
        self.cur = self.tree.next_sibling[v];
        Some(v)
    }
}
