use serde::{Deserialize, Serialize};

use super::xml::{Element, Node};
use super::{interpolator, parse_manifest, Interpolator, Manifest, ManifestError};
use crate::model::Ga;

/// An edit to apply to the analyzed manifest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DebloatAction {
    /// Delete the `<dependency>` declaring `target`.
    RemoveDirect { target: Ga },
    /// Add an `<exclusion>` of `target` under the declaration of `via`.
    AddExclusion { target: Ga, via: Ga },
}

impl DebloatAction {
    pub fn target(&self) -> &Ga {
        match self {
            DebloatAction::RemoveDirect { target } | DebloatAction::AddExclusion { target, .. } => {
                target
            }
        }
    }

    pub fn via(&self) -> Option<&Ga> {
        match self {
            DebloatAction::RemoveDirect { .. } => None,
            DebloatAction::AddExclusion { via, .. } => Some(via),
        }
    }
}

impl std::fmt::Display for DebloatAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DebloatAction::RemoveDirect { target } => write!(f, "remove-direct {target}"),
            DebloatAction::AddExclusion { target, via } => {
                write!(f, "add-exclusion {target} via {via}")
            }
        }
    }
}

fn element_ga(e: &Element, interp: &Interpolator) -> Option<Ga> {
    let g = interp.apply(&e.child_text("groupId")?).ok()?;
    let a = interp.apply(&e.child_text("artifactId")?).ok()?;
    Some(Ga::new(g, a))
}

fn dependency_elements<'a>(project: &'a mut Element) -> impl Iterator<Item = &'a mut Element> + 'a {
    project
        .child_mut("dependencies")
        .into_iter()
        .flat_map(|deps| deps.children.iter_mut())
        .filter_map(|n| match n {
            Node::Element(e) if e.name == "dependency" => Some(e),
            _ => None,
        })
}

fn remove_dependency(project: &mut Element, target: &Ga, interp: &Interpolator) {
    if let Some(deps) = project.child_mut("dependencies") {
        deps.children.retain(|n| match n {
            Node::Element(e) if e.name == "dependency" => {
                element_ga(e, interp).as_ref() != Some(target)
            }
            _ => true,
        });
    }
}

fn add_exclusion(project: &mut Element, target: &Ga, via: &Ga, interp: &Interpolator) {
    for dep in dependency_elements(project) {
        if element_ga(dep, interp).as_ref() != Some(via) {
            continue;
        }
        if dep.child("exclusions").is_none() {
            dep.push(Element::new("exclusions"));
        }
        let exclusions = dep.child_mut("exclusions").expect("just inserted");
        let present = exclusions
            .children_named("exclusion")
            .any(|x| element_ga(x, interp).as_ref() == Some(target));
        if !present {
            let mut x = Element::new("exclusion");
            x.push(Element::with_text("groupId", &target.group));
            x.push(Element::with_text("artifactId", &target.artifact));
            exclusions.push(x);
        }
    }
}

fn check_targets(manifest: &Manifest, actions: &[DebloatAction]) -> Result<(), ManifestError> {
    for action in actions {
        let must_exist = match action {
            DebloatAction::RemoveDirect { target } => target,
            DebloatAction::AddExclusion { via, .. } => via,
        };
        if !manifest.declares(must_exist) {
            return Err(ManifestError::ActionTargetMissing(must_exist.clone()));
        }
    }
    Ok(())
}

/// The manifest that [`write_debloated_manifest`] output parses to.
pub fn apply_actions(
    manifest: &Manifest,
    actions: &[DebloatAction],
) -> Result<Manifest, ManifestError> {
    check_targets(manifest, actions)?;
    let mut out = manifest.clone();
    for action in actions {
        match action {
            DebloatAction::RemoveDirect { target } => out.dependencies.retain(|d| &d.ga != target),
            DebloatAction::AddExclusion { target, via } => {
                for d in out.dependencies.iter_mut().filter(|d| &d.ga == via) {
                    d.exclusions.insert(target.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Applies `actions` to the original POM and returns the regenerated document.
///
/// Targets are validated against `manifest` (the parse of `original`) before
/// any edit, so repeating an action in the list is harmless.
pub fn write_debloated_manifest(
    original: &[u8],
    manifest: &Manifest,
    actions: &[DebloatAction],
) -> Result<Vec<u8>, ManifestError> {
    check_targets(manifest, actions)?;
    let text =
        std::str::from_utf8(original).map_err(|e| ManifestError::MalformedXml(e.to_string()))?;
    let mut project =
        Element::parse(text).map_err(|e| ManifestError::MalformedXml(e.to_string()))?;
    let interp = interpolator(manifest);
    for action in actions {
        match action {
            DebloatAction::RemoveDirect { target } => {
                remove_dependency(&mut project, target, &interp)
            }
            DebloatAction::AddExclusion { target, via } => {
                add_exclusion(&mut project, target, via, &interp)
            }
        }
    }
    let out = project.to_document().into_bytes();
    debug_assert!(parse_manifest(&out).is_ok());
    Ok(out)
}
