//! Used-dependency detection, usage labeling and debloat planning.
//!
//! Usage of a dependency `d` is propagated along the unique tree path
//! `root, b1, .., d`: the classes of `b1` used by the root, then the classes
//! of `b2` used by those, and so on. Within one artifact the used part is
//! closed under the artifact's own internal references.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classfile::ClassSummary;
use crate::manifest::{apply_actions, DebloatAction, Manifest, ManifestError};
use crate::model::{
    is_platform_class, Coordinate, Ga, Origin, RefKind, Scope, UsageLabel, UsageStatus,
};
use crate::repo::{build_class_index, ArtifactBundle, ClassIndex, LocalRepository, RepoError};
use crate::resolve::{resolve_tree, NodeId, NodeOrigin, ResolveError, ResolvedTree};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Repo(#[from] RepoError),
    #[error(transparent)]
    Manifest(#[from] ManifestError),
}

/// Classes of one artifact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet {
    pub owner: Coordinate,
    pub classes: BTreeSet<String>,
}

impl ClassSet {
    pub fn empty(owner: Coordinate) -> Self {
        ClassSet {
            owner,
            classes: BTreeSet::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The root and its dependencies in classpath order, indexed by class name.
pub struct Classpath<'a> {
    index: ClassIndex,
    root: &'a ArtifactBundle,
    defs: HashMap<&'a Coordinate, HashMap<&'a str, &'a ClassSummary>>,
}

impl<'a> Classpath<'a> {
    /// `deps` must be in classpath order; the root shadows all of them.
    pub fn new(
        root: &'a ArtifactBundle,
        deps: impl IntoIterator<Item = &'a ArtifactBundle>,
    ) -> Self {
        let bundles: Vec<&ArtifactBundle> = std::iter::once(root).chain(deps).collect();
        let index = build_class_index(bundles.iter().copied());
        let mut defs: HashMap<&Coordinate, HashMap<&str, &ClassSummary>> = HashMap::new();
        for b in &bundles {
            let classes = defs.entry(&b.coordinate).or_default();
            for c in &b.classes {
                classes.entry(c.name.as_str()).or_insert(c);
            }
        }
        Classpath { index, root, defs }
    }

    pub fn index(&self) -> &ClassIndex {
        &self.index
    }

    /// The definition of `class` inside the bundle at `owner`.
    pub fn summary(&self, owner: &Coordinate, class: &str) -> Option<&'a ClassSummary> {
        self.defs.get(owner).and_then(|m| m.get(class)).copied()
    }

    /// Every class of the root artifact.
    pub fn root_classes(&self) -> ClassSet {
        ClassSet {
            owner: self.root.coordinate.clone(),
            classes: self.root.classes.iter().map(|c| c.name.clone()).collect(),
        }
    }

    fn provided_by(&self, class: &str, target: &Coordinate) -> bool {
        !is_platform_class(class) && self.index.provider(class) == Some(target)
    }
}

/// Classes of `target` referenced from `source` (by any member reference or
/// string-literal candidate), closed under references internal to `target`.
pub fn extract_members(source: &ClassSet, target: &Coordinate, cp: &Classpath) -> ClassSet {
    let mut found = BTreeSet::new();
    let mut work = Vec::new();
    for class in &source.classes {
        let Some(summary) = cp.summary(&source.owner, class) else {
            continue;
        };
        for r in &summary.refs {
            if cp.provided_by(&r.owner, target) && found.insert(r.owner.clone()) {
                work.push(r.owner.clone());
            }
        }
    }
    while let Some(class) = work.pop() {
        let Some(summary) = cp.summary(target, &class) else {
            continue;
        };
        for r in &summary.refs {
            if cp.provided_by(&r.owner, target) && found.insert(r.owner.clone()) {
                work.push(r.owner.clone());
            }
        }
    }
    ClassSet {
        owner: target.clone(),
        classes: found,
    }
}

/// Used part of every used dependency, keyed by tree node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UsedDependencies {
    pub parts: BTreeMap<NodeId, ClassSet>,
}

impl UsedDependencies {
    pub fn coordinates(&self) -> BTreeSet<Coordinate> {
        self.parts.values().map(|p| p.owner.clone()).collect()
    }

    pub fn part(&self, id: NodeId) -> Option<&ClassSet> {
        self.parts.get(&id)
    }
}

/// Propagates usage from the root classes down every tree path. A node is
/// used iff its part is non-empty; propagation stops at the first empty part.
pub fn used_dependencies(tree: &ResolvedTree, cp: &Classpath) -> UsedDependencies {
    let mut parts: BTreeMap<NodeId, ClassSet> = BTreeMap::new();
    let root = cp.root_classes();
    // nodes are stored breadth-first, so a parent's part is always known first
    for (id, node) in tree.dependencies() {
        let parent = node.parent.expect("dependency nodes have a parent");
        let source = if parent == ResolvedTree::ROOT {
            &root
        } else {
            match parts.get(&parent) {
                Some(p) => p,
                None => continue,
            }
        };
        let part = extract_members(source, &node.coordinate, cp);
        if !part.is_empty() {
            parts.insert(id, part);
        }
    }
    UsedDependencies { parts }
}

/// Number of dependencies per usage label.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub ud: usize,
    pub ui: usize,
    pub ut: usize,
    pub bd: usize,
    pub bi: usize,
    pub bt: usize,
}

impl LabelCounts {
    pub fn get(&self, label: UsageLabel) -> usize {
        match label.code() {
            "ud" => self.ud,
            "ui" => self.ui,
            "ut" => self.ut,
            "bd" => self.bd,
            "bi" => self.bi,
            _ => self.bt,
        }
    }

    fn slot(&mut self, label: UsageLabel) -> &mut usize {
        match label.code() {
            "ud" => &mut self.ud,
            "ui" => &mut self.ui,
            "ut" => &mut self.ut,
            "bd" => &mut self.bd,
            "bi" => &mut self.bi,
            _ => &mut self.bt,
        }
    }

    pub fn add(&mut self, label: UsageLabel, n: usize) {
        *self.slot(label) += n;
    }

    pub fn total(&self) -> usize {
        UsageLabel::ALL.iter().map(|&l| self.get(l)).sum()
    }

    pub fn bloated(&self) -> usize {
        self.bd + self.bi + self.bt
    }

    /// `(label, count)` in `ud, ui, ut, bd, bi, bt` order.
    pub fn iter(&self) -> impl Iterator<Item = (UsageLabel, usize)> + '_ {
        UsageLabel::ALL.into_iter().map(|l| (l, self.get(l)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DependencyUsage {
    pub ga: Ga,
    pub version: String,
    pub label: UsageLabel,
    /// Used only because the ignore-list protects it.
    #[serde(default)]
    pub forced: bool,
    pub used_classes: BTreeSet<String>,
    /// GAs from the root to this dependency, both included.
    pub path: Vec<Ga>,
}

impl DependencyUsage {
    pub fn coordinate(&self) -> Coordinate {
        Coordinate::new(
            self.ga.group.clone(),
            self.ga.artifact.clone(),
            self.version.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UsageReport {
    pub root: Coordinate,
    pub usages: Vec<DependencyUsage>,
    pub counts: LabelCounts,
    pub actions: Vec<DebloatAction>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default)]
    pub tree_height: usize,
    #[serde(default)]
    pub multimodule: bool,
}

impl UsageReport {
    pub fn usage(&self, ga: &Ga) -> Option<&DependencyUsage> {
        self.usages.iter().find(|u| &u.ga == ga)
    }

    pub fn label(&self, ga: &Ga) -> Option<UsageLabel> {
        self.usage(ga).map(|u| u.label)
    }

    pub fn with_label(&self, label: UsageLabel) -> impl Iterator<Item = &DependencyUsage> {
        self.usages.iter().filter(move |u| u.label == label)
    }
}

/// Labels every non-omitted dependency node. GAs in `ignore` count as used.
pub fn classify(
    tree: &ResolvedTree,
    used: &UsedDependencies,
    ignore: &BTreeSet<Ga>,
) -> UsageReport {
    let mut usages = Vec::new();
    let mut counts = LabelCounts::default();
    for (id, node) in tree.dependencies() {
        let ga = node.coordinate.ga();
        let part = used.part(id);
        let forced = part.is_none() && ignore.contains(&ga);
        let status = if part.is_some() || forced {
            UsageStatus::Used
        } else {
            UsageStatus::Bloated
        };
        let origin = node.origin.label_origin().expect("non-root node");
        let label = UsageLabel::new(status, origin);
        counts.add(label, 1);
        usages.push(DependencyUsage {
            ga,
            version: node.coordinate.version.clone(),
            label,
            forced,
            used_classes: part.map(|p| p.classes.clone()).unwrap_or_default(),
            path: tree
                .path(id)
                .into_iter()
                .map(|n| tree.node(n).coordinate.ga())
                .collect(),
        });
    }
    UsageReport {
        root: tree.root().coordinate.clone(),
        usages,
        counts,
        actions: Vec::new(),
        warnings: Vec::new(),
        tree_height: tree.height(),
        multimodule: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub scopes: BTreeSet<Scope>,
    pub ignore: BTreeSet<Ga>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            scopes: BTreeSet::from([Scope::Compile]),
            ignore: BTreeSet::new(),
        }
    }
}

/// Loads bundles on demand and keeps them for later resolutions.
struct BundleCache<'r> {
    repo: &'r LocalRepository,
    bundles: HashMap<Coordinate, ArtifactBundle>,
}

impl<'r> BundleCache<'r> {
    fn new(repo: &'r LocalRepository) -> Self {
        BundleCache {
            repo,
            bundles: HashMap::new(),
        }
    }

    /// Loads every missing coordinate, in parallel.
    fn load(&mut self, coords: &[Coordinate]) -> Result<(), RepoError> {
        let missing: Vec<&Coordinate> = coords
            .iter()
            .filter(|c| !self.bundles.contains_key(*c))
            .collect();
        if missing.is_empty() {
            return Ok(());
        }
        let workers = std::thread::available_parallelism()
            .map_or(1, |n| n.get())
            .min(missing.len());
        let next = Mutex::new(missing.iter());
        let results: Mutex<Vec<Result<ArtifactBundle, RepoError>>> = Mutex::new(Vec::new());
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let Some(c) = next.lock().expect("work queue").next().copied() else {
                        break;
                    };
                    let r = self.repo.load_artifact(c);
                    results.lock().expect("results").push(r);
                });
            }
        });
        for r in results.into_inner().expect("results") {
            let b = r?;
            self.bundles.insert(b.coordinate.clone(), b);
        }
        Ok(())
    }

    fn classpath<'a>(&'a self, project: &'a ArtifactBundle, tree: &ResolvedTree) -> Classpath<'a> {
        let deps: Vec<&ArtifactBundle> =
            tree.classpath().iter().map(|c| &self.bundles[c]).collect();
        Classpath::new(project, deps)
    }
}

/// Labels of a project together with the tree they were computed on.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub tree: ResolvedTree,
    pub used: UsedDependencies,
    pub report: UsageReport,
}

fn analyze_with(
    project: &ArtifactBundle,
    cache: &mut BundleCache,
    config: &AnalysisConfig,
) -> Result<Analysis, AnalysisError> {
    let tree = resolve_tree(&project.manifest, cache.repo, &config.scopes)?;
    cache.load(&tree.classpath())?;
    let cp = cache.classpath(project, &tree);
    let used = used_dependencies(&tree, &cp);
    let mut report = classify(&tree, &used, &config.ignore);
    report.multimodule = project.manifest.is_multimodule();
    for w in &project.warnings {
        report
            .warnings
            .push(format!("{}: unparsable class {w}", project.coordinate));
    }
    for c in tree.classpath() {
        for w in &cache.bundles[&c].warnings {
            report.warnings.push(format!("{c}: unparsable class {w}"));
        }
    }
    Ok(Analysis { tree, used, report })
}

/// Resolves, scans and labels `project` without planning any action.
pub fn analyze(
    project: &ArtifactBundle,
    repo: &LocalRepository,
    config: &AnalysisConfig,
) -> Result<Analysis, AnalysisError> {
    analyze_with(project, &mut BundleCache::new(repo), config)
}

/// Depth-1 nodes whose subtree (omitted duplicates included) holds `ga`.
fn carriers(tree: &ResolvedTree, ga: &Ga) -> Vec<NodeId> {
    tree.root()
        .children
        .iter()
        .copied()
        .filter(|&top| !tree.node(top).omitted_duplicate)
        .filter(|&top| {
            tree.subtree(top)
                .into_iter()
                .any(|n| &tree.node(n).coordinate.ga() == ga)
        })
        .collect()
}

/// Nearest ancestor manifest declaring `ga`.
fn declaring_parent(m: &Manifest, repo: &LocalRepository, ga: &Ga) -> Option<Coordinate> {
    let mut next = m.parent.clone();
    let mut hops = 0;
    while let Some(p) = next {
        let pm = repo.manifest(&p).ok()?;
        if pm.declares(ga) {
            return Some(p);
        }
        next = pm.parent.clone();
        hops += 1;
        if hops > 64 {
            return None;
        }
    }
    None
}

/// Classes reachable from the root through used parts: the root's classes
/// and every used part, with the provider each referenced class had.
fn retained_references(analysis: &Analysis, cp: &Classpath) -> BTreeMap<String, Coordinate> {
    let mut sources: Vec<(Coordinate, &BTreeSet<String>)> = Vec::new();
    let root = cp.root_classes();
    sources.push((root.owner.clone(), &root.classes));
    for part in analysis.used.parts.values() {
        sources.push((part.owner.clone(), &part.classes));
    }
    let mut out = BTreeMap::new();
    for (owner, classes) in sources {
        for class in classes {
            let Some(summary) = cp.summary(&owner, class) else {
                continue;
            };
            for r in &summary.refs {
                if r.kind == RefKind::StringLiteral || is_platform_class(&r.owner) {
                    continue;
                }
                if let Some(provider) = cp.index().provider(&r.owner) {
                    out.insert(r.owner.clone(), provider.clone());
                }
            }
        }
    }
    out
}

/// Plans debloat actions for `project`.
///
/// Every bloated-direct dependency gets a `remove-direct`. Bloated-transitive
/// dependencies still present after the removals get an `add-exclusion` under
/// each direct dependency carrying them. Bloated-inherited dependencies are
/// reported only. Finally the plan is checked by re-resolving: any action
/// whose application makes a retained class reference unresolvable is dropped
/// with a warning, and the plan is recomputed.
pub fn debloat(
    project: &ArtifactBundle,
    repo: &LocalRepository,
    config: &AnalysisConfig,
) -> Result<UsageReport, AnalysisError> {
    let mut cache = BundleCache::new(repo);
    let analysis = analyze_with(project, &mut cache, config)?;
    let mut report = analysis.report.clone();
    let retained = {
        let cp = cache.classpath(project, &analysis.tree);
        retained_references(&analysis, &cp)
    };

    let bd: Vec<Ga> = report
        .with_label(UsageLabel::new(UsageStatus::Bloated, Origin::Direct))
        .map(|u| u.ga.clone())
        .collect();
    let bt: Vec<Ga> = report
        .with_label(UsageLabel::new(UsageStatus::Bloated, Origin::Transitive))
        .map(|u| u.ga.clone())
        .collect();
    let bi: Vec<Ga> = report
        .with_label(UsageLabel::new(UsageStatus::Bloated, Origin::Inherited))
        .map(|u| u.ga.clone())
        .collect();
    for g in bi {
        let place = declaring_parent(&project.manifest, repo, &g)
            .map_or_else(|| "the parent manifest".to_string(), |p| p.to_string());
        report.warnings.push(format!(
            "{g} is bloated-inherited: remove its declaration from {place}"
        ));
    }

    // GAs whose removal or exclusion broke a retained reference
    let mut blocked: BTreeSet<Ga> = BTreeSet::new();
    let mut notes: BTreeSet<String>;
    let actions = loop {
        notes = BTreeSet::new();
        let mut actions: Vec<DebloatAction> = bd
            .iter()
            .filter(|g| !blocked.contains(*g))
            .map(|g| DebloatAction::RemoveDirect { target: g.clone() })
            .collect();
        let mut tree;
        // exclusions can expose omitted occurrences elsewhere; iterate to a fixpoint
        loop {
            let m = apply_actions(&project.manifest, &actions)?;
            tree = resolve_tree(&m, repo, &config.scopes)?;
            let mut added = false;
            for g in bt.iter().filter(|g| !blocked.contains(*g)) {
                for top in carriers(&tree, g) {
                    let via = tree.node(top).coordinate.ga();
                    match tree.node(top).origin {
                        NodeOrigin::Direct => {
                            let a = DebloatAction::AddExclusion {
                                target: g.clone(),
                                via,
                            };
                            if !actions.contains(&a) {
                                actions.push(a);
                                added = true;
                            }
                        }
                        _ => {
                            notes.insert(format!(
                                "{g} is bloated-transitive but only reachable through inherited {via}: no child-side exclusion possible"
                            ));
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }

        cache.load(&tree.classpath())?;
        let cp = cache.classpath(project, &tree);
        let mut broken: BTreeSet<Ga> = BTreeSet::new();
        for (class, old_provider) in &retained {
            if cp.index().provider(class).is_none() {
                broken.insert(old_provider.ga());
            }
        }
        if broken.is_empty() {
            break actions;
        }
        // block the missing GAs and every action on the path that removed them
        let before = blocked.len();
        let unresolved: Vec<String> = broken.iter().map(ToString::to_string).collect();
        for g in broken {
            if let Some(id) = analysis.tree.find(&g) {
                for n in analysis.tree.path(id).into_iter().skip(1) {
                    blocked.insert(analysis.tree.node(n).coordinate.ga());
                }
            }
            blocked.insert(g);
        }
        if blocked.len() == before {
            notes.insert(format!(
                "debloated classpath still misses classes of {}",
                unresolved.join(", ")
            ));
            break actions;
        }
    };

    for g in &blocked {
        if bd.contains(g) || bt.contains(g) {
            report.warnings.push(format!(
                "no action for bloated {g}: removing it would leave used classes unresolvable"
            ));
        }
    }
    report.warnings.extend(notes);
    report.actions = actions;
    Ok(report)
}
