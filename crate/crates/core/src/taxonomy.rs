//! The taxonomy data model: a rooted tree of terms with parent/children
//! indexes, root-to-node paths, local context extraction, and the two edit
//! operations the rest of the pipeline is built on — `hollow` (remove a node,
//! re-parenting its children upward) and `insert` (attach a new node, pulling
//! a chosen child set underneath it). Hollow followed by insert at the
//! recorded attachment point is an identity on the edge set.
//!
//! Taxonomies are immutable after construction: edits return new values, so a
//! `Taxonomy` can be shared read-only across workers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Stable opaque identifier of a node within one taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A single term. Surfaces may repeat across branches (homonyms are legal);
/// identity is always by [`NodeId`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermNode {
    pub id: NodeId,
    pub surface: String,
    /// Optional definition text. Carried for scorers that want it; the
    /// default pipeline does not consume it.
    pub definition: Option<String>,
}

impl TermNode {
    pub fn new(id: NodeId, surface: impl Into<String>) -> Result<Self, TaxonomyError> {
        let surface = surface.into();
        if surface.trim().is_empty() {
            return Err(TaxonomyError::EmptySurface);
        }
        Ok(Self {
            id,
            surface,
            definition: None,
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TaxonomyError {
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("term surface is empty")]
    EmptySurface,
    #[error("node {child:?} already has a parent; multi-parent nodes are rejected")]
    DuplicateParent { child: String },
    #[error("taxonomy has multiple roots: {roots:?}")]
    MultipleRoots { roots: Vec<String> },
    #[error("taxonomy contains a cycle")]
    CycleDetected,
    #[error("unknown node id {0}")]
    UnknownNode(NodeId),
    #[error("the root cannot be hollowed")]
    HollowRoot,
    #[error("node id {0} already present")]
    DuplicateId(NodeId),
    #[error("attachment child {child} is not a child of {parent}")]
    InvalidAttachment { parent: NodeId, child: NodeId },
    #[error("surface {0:?} not found")]
    UnknownSurface(String),
}

/// Root-to-node sequence `[root, n1, ..., nD]`. Depth counts non-root nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaxonomyPath {
    nodes: Vec<NodeId>,
}

impl TaxonomyPath {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn depth(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn target(&self) -> NodeId {
        *self.nodes.last().expect("path is never empty")
    }

    pub fn node_set(&self) -> BTreeSet<NodeId> {
        self.nodes.iter().copied().collect()
    }
}

/// The last one or two nodes of a path, deepest last. Depth below two keeps
/// a single node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalContext {
    nodes: Vec<NodeId>,
}

impl LocalContext {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// The deepest node of the context (the candidate itself in stage one).
    pub fn deepest(&self) -> NodeId {
        *self.nodes.last().expect("context is never empty")
    }
}

/// Extracts the local context of a path: its last two nodes, or a single
/// node when the path depth is below two.
pub fn local_context(path: &TaxonomyPath) -> LocalContext {
    let nodes = path.nodes();
    let take = if path.depth() < 2 { 1 } else { 2 };
    LocalContext {
        nodes: nodes[nodes.len() - take..].to_vec(),
    }
}

/// A position in the taxonomy: a parent plus the subset of its current
/// children that an inserted node would adopt. `hollow` produces the gold
/// attachment point of the removed node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachmentPoint {
    pub parent: NodeId,
    pub children: BTreeSet<NodeId>,
}

/// Immutable rooted tree of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    nodes: BTreeMap<NodeId, TermNode>,
    root: NodeId,
    parent: BTreeMap<NodeId, NodeId>,
    children: BTreeMap<NodeId, Vec<NodeId>>,
}

impl Taxonomy {
    /// Builds a taxonomy from `(child-surface, parent-surface)` pairs.
    ///
    /// Ids are assigned by first appearance scanning each pair child-first,
    /// so identical input yields an identical taxonomy. Surfaces act as node
    /// keys here; homonym nodes can only be introduced programmatically via
    /// [`Taxonomy::insert`].
    pub fn build(edges: &[(String, String)]) -> Result<Self, TaxonomyError> {
        if edges.is_empty() {
            return Err(TaxonomyError::EmptyEdgeList);
        }
        let mut ids: BTreeMap<String, NodeId> = BTreeMap::new();
        let mut nodes: BTreeMap<NodeId, TermNode> = BTreeMap::new();
        let mut order: Vec<NodeId> = Vec::new();
        let mut intern = |surface: &str,
                          ids: &mut BTreeMap<String, NodeId>,
                          nodes: &mut BTreeMap<NodeId, TermNode>,
                          order: &mut Vec<NodeId>|
         -> Result<NodeId, TaxonomyError> {
            if let Some(&id) = ids.get(surface) {
                return Ok(id);
            }
            let id = NodeId(ids.len() as u32);
            ids.insert(surface.to_string(), id);
            nodes.insert(id, TermNode::new(id, surface)?);
            order.push(id);
            Ok(id)
        };

        let mut parent: BTreeMap<NodeId, NodeId> = BTreeMap::new();
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for (child_surface, parent_surface) in edges {
            let child = intern(child_surface.trim(), &mut ids, &mut nodes, &mut order)?;
            let par = intern(parent_surface.trim(), &mut ids, &mut nodes, &mut order)?;
            if parent.contains_key(&child) {
                return Err(TaxonomyError::DuplicateParent {
                    child: child_surface.trim().to_string(),
                });
            }
            parent.insert(child, par);
            children.entry(par).or_default().push(child);
        }

        let roots: Vec<NodeId> = order
            .iter()
            .copied()
            .filter(|id| !parent.contains_key(id))
            .collect();
        let root = match roots.as_slice() {
            [] => return Err(TaxonomyError::CycleDetected),
            [r] => *r,
            many => {
                return Err(TaxonomyError::MultipleRoots {
                    roots: many.iter().map(|id| nodes[id].surface.clone()).collect(),
                })
            }
        };

        let t = Self {
            nodes,
            root,
            parent,
            children,
        };
        t.check_reachable()?;
        Ok(t)
    }

    /// A taxonomy consisting of a single root term.
    pub fn single(surface: impl Into<String>) -> Result<Self, TaxonomyError> {
        let root = NodeId(0);
        let node = TermNode::new(root, surface)?;
        Ok(Self {
            nodes: BTreeMap::from([(root, node)]),
            root,
            parent: BTreeMap::new(),
            children: BTreeMap::new(),
        })
    }

    // Every node with a parent must be reachable from the root; a miss means
    // a cycle detached from the tree.
    fn check_reachable(&self) -> Result<(), TaxonomyError> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if seen.insert(id) {
                stack.extend(self.children_of(id).iter().copied());
            }
        }
        if seen.len() == self.nodes.len() {
            Ok(())
        } else {
            Err(TaxonomyError::CycleDetected)
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a taxonomy always has at least its root
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.nodes.contains_key(&id)
    }

    pub fn node(&self, id: NodeId) -> Result<&TermNode, TaxonomyError> {
        self.nodes.get(&id).ok_or(TaxonomyError::UnknownNode(id))
    }

    pub fn surface(&self, id: NodeId) -> &str {
        self.nodes
            .get(&id)
            .map(|n| n.surface.as_str())
            .unwrap_or("<unknown>")
    }

    pub fn parent_of(&self, id: NodeId) -> Option<NodeId> {
        self.parent.get(&id).copied()
    }

    pub fn children_of(&self, id: NodeId) -> &[NodeId] {
        self.children.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.children_of(id).is_empty()
    }

    /// Node ids in ascending order.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    /// First id strictly greater than every existing id.
    pub fn next_id(&self) -> NodeId {
        NodeId(self.nodes.keys().last().map(|id| id.0 + 1).unwrap_or(0))
    }

    /// Looks a node up by surface. Errors if the surface is absent;
    /// if homonyms exist the lowest id wins.
    pub fn find_surface(&self, surface: &str) -> Result<NodeId, TaxonomyError> {
        self.nodes
            .values()
            .find(|n| n.surface == surface)
            .map(|n| n.id)
            .ok_or_else(|| TaxonomyError::UnknownSurface(surface.to_string()))
    }

    /// The unique root-to-node path.
    pub fn path_of(&self, id: NodeId) -> Result<TaxonomyPath, TaxonomyError> {
        if !self.contains(id) {
            return Err(TaxonomyError::UnknownNode(id));
        }
        let mut nodes = vec![id];
        let mut cur = id;
        while let Some(p) = self.parent_of(cur) {
            nodes.push(p);
            cur = p;
        }
        nodes.reverse();
        Ok(TaxonomyPath { nodes })
    }

    /// Depth of a node; the root has depth 0.
    pub fn depth_of(&self, id: NodeId) -> Result<usize, TaxonomyError> {
        Ok(self.path_of(id)?.depth())
    }

    /// Edge set as `(child, parent)` id pairs.
    pub fn edge_set(&self) -> BTreeSet<(NodeId, NodeId)> {
        self.parent.iter().map(|(&c, &p)| (c, p)).collect()
    }

    /// Preorder traversal from the root, children in stored order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            out.push(id);
            for &c in self.children_of(id).iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Removes `node`, re-parenting its children to its original parent, and
    /// returns the gold attachment point that re-inserting it would need.
    pub fn hollow(&self, node: NodeId) -> Result<(Taxonomy, AttachmentPoint), TaxonomyError> {
        if !self.contains(node) {
            return Err(TaxonomyError::UnknownNode(node));
        }
        if node == self.root {
            return Err(TaxonomyError::HollowRoot);
        }
        let parent = self.parent[&node];
        let orphans: Vec<NodeId> = self.children_of(node).to_vec();

        let mut t = self.clone();
        t.nodes.remove(&node);
        t.parent.remove(&node);
        t.children.remove(&node);
        // The orphans take over the removed node's slot in its parent's
        // child list so that re-insertion restores the original order.
        let siblings = t.children.entry(parent).or_default();
        let pos = siblings
            .iter()
            .position(|&c| c == node)
            .expect("child index is consistent with parent map");
        siblings.splice(pos..=pos, orphans.iter().copied());
        for &c in &orphans {
            t.parent.insert(c, parent);
        }

        Ok((
            t,
            AttachmentPoint {
                parent,
                children: orphans.into_iter().collect(),
            },
        ))
    }

    /// Inserts `new` as a child of `at.parent` and re-parents every node in
    /// `at.children` under it. All other edges are untouched.
    pub fn insert(&self, new: TermNode, at: &AttachmentPoint) -> Result<Taxonomy, TaxonomyError> {
        if self.contains(new.id) {
            return Err(TaxonomyError::DuplicateId(new.id));
        }
        if new.surface.trim().is_empty() {
            return Err(TaxonomyError::EmptySurface);
        }
        if !self.contains(at.parent) {
            return Err(TaxonomyError::UnknownNode(at.parent));
        }
        for &c in &at.children {
            if self.parent_of(c) != Some(at.parent) {
                return Err(TaxonomyError::InvalidAttachment {
                    parent: at.parent,
                    child: c,
                });
            }
        }

        let mut t = self.clone();
        let new_id = new.id;
        t.nodes.insert(new_id, new);
        t.parent.insert(new_id, at.parent);

        let siblings = t.children.entry(at.parent).or_default();
        // Adopted children keep their relative order; the new node takes the
        // slot of the first adopted child, or appends when adopting none.
        let adopted: Vec<NodeId> = siblings
            .iter()
            .copied()
            .filter(|c| at.children.contains(c))
            .collect();
        match siblings.iter().position(|c| at.children.contains(c)) {
            Some(pos) => {
                siblings.retain(|c| !at.children.contains(c));
                siblings.insert(pos, new_id);
            }
            None => siblings.push(new_id),
        }
        for &c in &adopted {
            t.parent.insert(c, new_id);
        }
        t.children.insert(new_id, adopted);
        Ok(t)
    }
}

// ---------------------------------------------------------------------------
// TSV interchange
// ---------------------------------------------------------------------------

/// Parses the taxonomy TSV format: one `child<TAB>parent` edge per line,
/// `#` lines ignored. A file holding a single untabbed surface denotes a
/// root-only taxonomy.
pub fn parse_tsv(text: &str) -> Result<Taxonomy, TaxonomyError> {
    let mut edges = Vec::new();
    let mut bare: Option<String> = None;
    for line in text.lines() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        match line.split_once('\t') {
            Some((child, parent)) => edges.push((child.to_string(), parent.to_string())),
            None => bare = Some(line.trim().to_string()),
        }
    }
    match (edges.is_empty(), bare) {
        (true, Some(root)) => Taxonomy::single(root),
        (false, None) => Taxonomy::build(&edges),
        (true, None) => Err(TaxonomyError::EmptyEdgeList),
        (false, Some(extra)) => Err(TaxonomyError::MultipleRoots {
            roots: vec![extra],
        }),
    }
}

/// Writes the TSV form, edges in preorder. The root appears only on the
/// parent side; a root-only taxonomy writes the bare root surface.
pub fn to_tsv(t: &Taxonomy) -> String {
    let mut out = String::new();
    if t.len() == 1 {
        out.push_str(t.surface(t.root()));
        out.push('\n');
        return out;
    }
    for id in t.preorder() {
        if let Some(p) = t.parent_of(id) {
            out.push_str(t.surface(id));
            out.push('\t');
            out.push_str(t.surface(p));
            out.push('\n');
        }
    }
    out
}
