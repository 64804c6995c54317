//! Dependency tree resolution: parent inheritance, dependency management,
//! breadth-first expansion with nearest-wins mediation, exclusions, scopes.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt::Write;

use thiserror::Error;

use crate::manifest::{ManagedDependency, Manifest};
use crate::model::{Coordinate, DependencyDecl, Ga, Origin, Scope};
use crate::repo::{LocalRepository, RepoError};

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error("artifact {coordinate} not found (required via {})", render_path(path))]
    ArtifactNotFound {
        coordinate: Coordinate,
        path: Vec<Coordinate>,
    },
    #[error("parent cycle: {}", render_path(.0))]
    ParentCycle(Vec<Coordinate>),
    #[error("no version for {ga} declared in {declared_in}")]
    UnresolvedVersion { ga: Ga, declared_in: Coordinate },
    #[error(transparent)]
    Repo(RepoError),
}

fn render_path(path: &[Coordinate]) -> String {
    path.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" -> ")
}

fn repo_error(e: RepoError, path: &[Coordinate]) -> ResolveError {
    match e {
        RepoError::ArtifactNotFound { coordinate, .. } => ResolveError::ArtifactNotFound {
            coordinate,
            path: path.to_vec(),
        },
        other => ResolveError::Repo(other),
    }
}

/// Declarations of a manifest after parent inheritance and management.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveManifest {
    pub own: Vec<DependencyDecl>,
    /// Declared by ancestors, nearest ancestor first; never shares a GA with `own`.
    pub inherited: Vec<DependencyDecl>,
}

/// Walks the parent chain of `m`, merging dependency management child over
/// parent and filling versions of version-less declarations.
pub fn effective_manifest(
    m: &Manifest,
    repo: &LocalRepository,
) -> Result<EffectiveManifest, ResolveError> {
    let mut chain: Vec<std::sync::Arc<Manifest>> = Vec::new();
    let mut seen = vec![m.coordinate.clone()];
    let mut next = m.parent.clone();
    while let Some(p) = next {
        if seen.contains(&p) {
            seen.push(p);
            return Err(ResolveError::ParentCycle(seen));
        }
        let pm = repo.manifest(&p).map_err(|e| repo_error(e, &seen))?;
        seen.push(p);
        next = pm.parent.clone();
        chain.push(pm);
    }

    let mut management: BTreeMap<Ga, ManagedDependency> = BTreeMap::new();
    for ancestor in chain.iter().rev() {
        management.extend(ancestor.dependency_management.clone());
    }
    management.extend(m.dependency_management.clone());

    let complete =
        |d: &DependencyDecl, declared_in: &Coordinate| -> Result<DependencyDecl, ResolveError> {
            let mut d = d.clone();
            let managed = management.get(&d.ga);
            if d.version.is_none() {
                d.version = managed.and_then(|x| x.version.clone());
            }
            if d.version.is_none() {
                return Err(ResolveError::UnresolvedVersion {
                    ga: d.ga,
                    declared_in: declared_in.clone(),
                });
            }
            if let Some(x) = managed {
                d.exclusions.extend(x.exclusions.iter().cloned());
            }
            Ok(d)
        };

    let own = m
        .dependencies
        .iter()
        .map(|d| complete(d, &m.coordinate))
        .collect::<Result<Vec<_>, _>>()?;
    let mut taken: HashSet<(Ga, Scope)> = own.iter().map(|d| (d.ga.clone(), d.scope)).collect();
    let own_gas: HashSet<&Ga> = own.iter().map(|d| &d.ga).collect();
    let mut inherited = Vec::new();
    for ancestor in &chain {
        for d in &ancestor.dependencies {
            if own_gas.contains(&d.ga) || !taken.insert((d.ga.clone(), d.scope)) {
                continue;
            }
            inherited.push(complete(d, &ancestor.coordinate)?);
        }
    }
    Ok(EffectiveManifest { own, inherited })
}

/// Where a node sits relative to the root manifest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeOrigin {
    Root,
    Direct,
    Inherited,
    Transitive,
}

impl NodeOrigin {
    /// The usage-label origin; `None` for the root.
    pub fn label_origin(self) -> Option<Origin> {
        match self {
            NodeOrigin::Root => None,
            NodeOrigin::Direct => Some(Origin::Direct),
            NodeOrigin::Inherited => Some(Origin::Inherited),
            NodeOrigin::Transitive => Some(Origin::Transitive),
        }
    }
}

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedNode {
    pub coordinate: Coordinate,
    pub origin: NodeOrigin,
    pub depth: usize,
    /// Scope of the root-level edge this node hangs from.
    pub scope: Scope,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Lost mediation to a nearer occurrence; never expanded.
    pub omitted_duplicate: bool,
}

/// Arena of resolved nodes; node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedTree {
    nodes: Vec<ResolvedNode>,
    height: usize,
    packaging: String,
}

impl ResolvedTree {
    pub const ROOT: NodeId = 0;

    pub fn root(&self) -> &ResolvedNode {
        &self.nodes[Self::ROOT]
    }

    pub fn node(&self, id: NodeId) -> &ResolvedNode {
        &self.nodes[id]
    }

    /// Every node including the root and omitted duplicates.
    pub fn all_nodes(&self) -> impl Iterator<Item = (NodeId, &ResolvedNode)> {
        self.nodes.iter().enumerate()
    }

    /// Non-omitted, non-root nodes in breadth-first order.
    pub fn dependencies(&self) -> impl Iterator<Item = (NodeId, &ResolvedNode)> {
        self.all_nodes()
            .skip(1)
            .filter(|(_, n)| !n.omitted_duplicate)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// The non-omitted node for `ga`, if present.
    pub fn find(&self, ga: &Ga) -> Option<NodeId> {
        self.dependencies()
            .find(|(_, n)| &n.coordinate.ga() == ga)
            .map(|(id, _)| id)
    }

    /// Node ids from the root to `id`, both included.
    pub fn path(&self, id: NodeId) -> Vec<NodeId> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// The depth-1 ancestor of `id` (itself if at depth 1).
    pub fn top_level_ancestor(&self, id: NodeId) -> Option<NodeId> {
        self.path(id).get(1).copied()
    }

    /// `id` and all nodes below it, omitted duplicates included, pre-order.
    pub fn subtree(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(self.nodes[n].children.iter().rev());
        }
        out
    }

    /// Non-omitted dependency coordinates in pre-order: the classpath order.
    pub fn classpath(&self) -> Vec<Coordinate> {
        self.subtree(Self::ROOT)
            .into_iter()
            .skip(1)
            .filter(|&id| !self.nodes[id].omitted_duplicate)
            .map(|id| self.nodes[id].coordinate.clone())
            .collect()
    }

    /// Renders the tree in the build tool's `dependency:tree` text style.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let root = self.root();
        let _ = writeln!(
            out,
            "{}:{}:{}:{}",
            root.coordinate.group,
            root.coordinate.artifact,
            self.packaging,
            root.coordinate.version
        );
        self.render_children(Self::ROOT, "", &mut out);
        out
    }

    fn render_children(&self, id: NodeId, prefix: &str, out: &mut String) {
        let children = &self.nodes[id].children;
        for (i, &c) in children.iter().enumerate() {
            let last = i + 1 == children.len();
            let n = &self.nodes[c];
            let co = &n.coordinate;
            let _ = write!(
                out,
                "{prefix}{}{}:{}:jar:{}:{}",
                if last { "\\- " } else { "+- " },
                co.group,
                co.artifact,
                co.version,
                n.scope
            );
            out.push_str(if n.omitted_duplicate {
                " (omitted for duplicate)\n"
            } else {
                "\n"
            });
            let deeper = format!("{prefix}{}", if last { "   " } else { "|  " });
            self.render_children(c, &deeper, out);
        }
    }
}

/// Longest root-to-leaf path over non-omitted nodes.
pub fn tree_height(t: &ResolvedTree) -> usize {
    t.height
}

struct Pending {
    parent: NodeId,
    decl: DependencyDecl,
    origin: NodeOrigin,
    scope: Scope,
    /// Exclusions in force for this edge's subtree, this edge's own included.
    excluded: BTreeSet<Ga>,
}

/// Resolves the dependency tree of `root`. Root-level declarations are kept
/// iff their scope is in `scopes`; below the root only non-optional
/// compile-scope declarations propagate.
pub fn resolve_tree(
    root: &Manifest,
    repo: &LocalRepository,
    scopes: &BTreeSet<Scope>,
) -> Result<ResolvedTree, ResolveError> {
    let eff = effective_manifest(root, repo)?;
    let mut nodes = vec![ResolvedNode {
        coordinate: root.coordinate.clone(),
        origin: NodeOrigin::Root,
        depth: 0,
        scope: Scope::Compile,
        parent: None,
        children: Vec::new(),
        omitted_duplicate: false,
    }];
    let mut resolved: HashSet<Ga> = HashSet::from([root.coordinate.ga()]);
    let mut queue: VecDeque<Pending> = VecDeque::new();
    let top = eff.own.into_iter().map(|d| (d, NodeOrigin::Direct)).chain(
        eff.inherited
            .into_iter()
            .map(|d| (d, NodeOrigin::Inherited)),
    );
    for (decl, origin) in top {
        if scopes.contains(&decl.scope) {
            let excluded = decl.exclusions.clone();
            queue.push_back(Pending {
                parent: ResolvedTree::ROOT,
                scope: decl.scope,
                decl,
                origin,
                excluded,
            });
        }
    }

    let mut height = 0;
    while let Some(p) = queue.pop_front() {
        let coordinate = p
            .decl
            .coordinate()
            .expect("versions filled by effective_manifest");
        let depth = nodes[p.parent].depth + 1;
        let id = nodes.len();
        let omitted = !resolved.insert(p.decl.ga.clone());
        nodes.push(ResolvedNode {
            coordinate: coordinate.clone(),
            origin: p.origin,
            depth,
            scope: p.scope,
            parent: Some(p.parent),
            children: Vec::new(),
            omitted_duplicate: omitted,
        });
        nodes[p.parent].children.push(id);
        if omitted {
            continue;
        }
        height = height.max(depth);

        let chain = || {
            let mut ids = vec![id];
            let mut cur = id;
            while let Some(par) = nodes[cur].parent {
                ids.push(par);
                cur = par;
            }
            ids.into_iter()
                .rev()
                .map(|i| nodes[i].coordinate.clone())
                .collect::<Vec<_>>()
        };
        let manifest = repo
            .manifest(&coordinate)
            .map_err(|e| repo_error(e, &chain()))?;
        let dep_eff = effective_manifest(&manifest, repo).map_err(|e| match e {
            ResolveError::ArtifactNotFound { coordinate, .. } => ResolveError::ArtifactNotFound {
                coordinate,
                path: chain(),
            },
            other => other,
        })?;
        for decl in dep_eff.own.into_iter().chain(dep_eff.inherited) {
            if decl.scope != Scope::Compile || decl.optional || p.excluded.contains(&decl.ga) {
                continue;
            }
            let mut excluded = p.excluded.clone();
            excluded.extend(decl.exclusions.iter().cloned());
            queue.push_back(Pending {
                parent: id,
                decl,
                origin: NodeOrigin::Transitive,
                scope: p.scope,
                excluded,
            });
        }
    }

    Ok(ResolvedTree {
        nodes,
        height,
        packaging: root.packaging.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_origins() {
        assert_eq!(NodeOrigin::Root.label_origin(), None);
        assert_eq!(
            NodeOrigin::Inherited.label_origin(),
            Some(Origin::Inherited)
        );
    }
}
