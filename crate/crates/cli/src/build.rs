//! Turns a parsed spec into a group oracle or a Schreier graph.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use ends_core::graph_build::{free_coset_oracle, lattice_coset_oracle, CayleyGraph, RootedGraph, StallingsAutomaton};
use ends_core::group_core::{
    cyclic, free, free_abelian, product, FiniteGroup, Group, GroupError, NormalForm, Oracle,
    SemidirectFiniteByZ, SemidirectZByFinite, Word,
};
use ends_core::normal_forms::{AmalgamProduct, AmalgamSpec, HnnExtension, HnnSpec};
use ends_core::qi::{change_generators, QiError};

use crate::dsl::{Element, GroupSpecAst};

/// Largest finite normal subgroup enumerated for `quotient`.
pub const QUOTIENT_SUBGROUP_CAP: usize = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Qi(#[from] QiError),
}

/// Subgroup data for a Schreier graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeInfo {
    pub subgroup: Vec<String>,
    /// `None` for infinite index.
    pub index: Option<u64>,
    /// Folded automaton size, for subgroups of free groups.
    pub automaton_states: Option<usize>,
}

pub enum Target {
    Group(Oracle),
    Schreier {
        graph: Arc<dyn RootedGraph>,
        info: RelativeInfo,
    },
}

impl Target {
    pub fn graph(&self) -> Arc<dyn RootedGraph> {
        match self {
            Target::Group(g) => Arc::new(CayleyGraph::new(g.clone())),
            Target::Schreier { graph, .. } => graph.clone(),
        }
    }

    pub fn group(&self) -> Option<&Oracle> {
        match self {
            Target::Group(g) => Some(g),
            Target::Schreier { .. } => None,
        }
    }
}

/// Table paths are resolved against `base_dir`.
pub fn build(ast: &GroupSpecAst, base_dir: &Path) -> Result<Target, BuildError> {
    match ast {
        GroupSpecAst::Rel(base, items) => build_relative(base, items),
        _ => Ok(Target::Group(build_group(ast, base_dir)?)),
    }
}

pub fn build_group(ast: &GroupSpecAst, base_dir: &Path) -> Result<Oracle, BuildError> {
    use GroupSpecAst as G;
    let label = ast.to_string();
    Ok(match ast {
        G::Z => free_abelian(1),
        G::ZPow(n) => free_abelian(*n as usize),
        G::Free(n) => free(*n as usize),
        G::Cyclic(n) => cyclic(*n as usize),
        G::Table(_) => Arc::new(Arc::unwrap_or_clone(finite(ast, base_dir)?)),
        G::Product(a, b) => product(build_group(a, base_dir)?, build_group(b, base_dir)?),
        G::SemidirectFz(k, unit) => Arc::new(SemidirectFiniteByZ::with_power(finite(k, base_dir)?, *unit)?),
        G::SemidirectZf(k) => {
            let k = finite(k, base_dir)?;
            let signs = SemidirectZByFinite::default_action(&k);
            Arc::new(SemidirectZByFinite::new(k, signs)?)
        }
        G::Amalgam(a, b, d) => {
            let spec = AmalgamSpec::with_cyclic_edge(finite(a, base_dir)?, finite(b, base_dir)?, *d as usize)?;
            Arc::new(AmalgamProduct::new(spec)?.with_label(label))
        }
        G::Hnn(a, d, e) => {
            let spec = HnnSpec::with_power_map(finite(a, base_dir)?, *d as usize, e.unwrap_or(1))?;
            Arc::new(HnnExtension::new(spec)?.with_label(label))
        }
        G::Quotient(base, items) => {
            let base = build_group(base, base_dir)?;
            let gens = items
                .iter()
                .map(|x| evaluate(base.as_ref(), x))
                .collect::<Result<Vec<_>, _>>()?;
            let subgroup = generated_subgroup(base.as_ref(), &gens)?;
            ends_core::group_core::quotient(base, subgroup)?
        }
        G::Gens(base, items) => {
            let base = build_group(base, base_dir)?;
            let words = items.iter().map(word_of).collect();
            change_generators(base, words)?.into_oracle()
        }
        G::Rel(..) => {
            return Err(GroupError::Validation("rel(...) defines a coset graph, not a group".into()).into())
        }
    })
}

fn finite(ast: &GroupSpecAst, base_dir: &Path) -> Result<Arc<FiniteGroup>, BuildError> {
    match ast {
        GroupSpecAst::Cyclic(n) => Ok(Arc::new(FiniteGroup::cyclic(*n as usize))),
        GroupSpecAst::Table(p) => Ok(Arc::new(FiniteGroup::load_table(&base_dir.join(p))?)),
        other => Err(GroupError::Validation(format!("{other} is not a finite group term")).into()),
    }
}

fn word_of(x: &Element) -> Word {
    match x {
        Element::Word(w) => w.clone(),
        Element::Vector(_) => unreachable!("vectors are rejected by the parser outside Z^n"),
    }
}

fn evaluate(group: &dyn Group, x: &Element) -> Result<NormalForm, GroupError> {
    match x {
        Element::Word(w) => group.canonical(w),
        Element::Vector(v) => Ok(NormalForm::Ints(v.clone())),
    }
}

fn generated_subgroup(group: &dyn Group, gens: &[NormalForm]) -> Result<Vec<NormalForm>, GroupError> {
    let mut seen: BTreeSet<NormalForm> = BTreeSet::from([group.identity()]);
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = group.product(&x, g)?;
            if seen.insert(y.clone()) {
                if seen.len() > QUOTIENT_SUBGROUP_CAP {
                    return Err(GroupError::Validation(format!(
                        "quotient: subgroup has more than {QUOTIENT_SUBGROUP_CAP} elements"
                    )));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn build_relative(base: &GroupSpecAst, items: &[Element]) -> Result<Target, BuildError> {
    let label = GroupSpecAst::Rel(Box::new(base.clone()), items.to_vec()).to_string();
    let subgroup = items.iter().map(|x| x.to_string()).collect();
    match base {
        GroupSpecAst::Free(n) => {
            let words: Vec<Word> = items.iter().map(word_of).collect();
            let aut = StallingsAutomaton::from_generators(*n as usize, &words)?;
            let states = aut.state_count();
            let index = aut.is_complete().then_some(states as u64);
            Ok(Target::Schreier {
                graph: Arc::new(free_coset_oracle(aut).with_label(label)),
                info: RelativeInfo {
                    subgroup,
                    index,
                    automaton_states: Some(states),
                },
            })
        }
        GroupSpecAst::Z | GroupSpecAst::ZPow(_) => {
            let dim = base.generator_count().unwrap();
            let lattice = free_abelian(dim);
            let rows = items
                .iter()
                .map(|x| match evaluate(lattice.as_ref(), x)? {
                    NormalForm::Ints(v) => Ok(v),
                    other => Err(GroupError::MalformedForm {
                        group: lattice.name(),
                        payload: other.to_string(),
                    }),
                })
                .collect::<Result<Vec<_>, GroupError>>()?;
            let oracle = lattice_coset_oracle(dim, &rows)?;
            let index = oracle.index();
            Ok(Target::Schreier {
                graph: Arc::new(oracle.with_label(label)),
                info: RelativeInfo {
                    subgroup,
                    index,
                    automaton_states: None,
                },
            })
        }
        other => Err(GroupError::Validation(format!("rel: unsupported ambient group {other}")).into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_spec;

    fn group(text: &str) -> Oracle {
        build_group(&parse_spec(text).unwrap(), Path::new(".")).unwrap()
    }

    #[test]
    fn generator_counts_match_the_parser() {
        for text in [
            "Z",
            "Z^3",
            "free(2)",
            "product(free(2), Z)",
            "semidirect_fz(cyclic(3), 2)",
            "semidirect_zf(cyclic(2))",
            "amalgam(cyclic(4), cyclic(6), 2)",
            "hnn(cyclic(4), 2)",
            "quotient(product(Z, cyclic(2)), [b])",
            "gens(free(2), [a, b, ab])",
        ] {
            let ast = parse_spec(text).unwrap();
            assert_eq!(Some(group(text).generator_count()), ast.generator_count(), "{text}");
        }
    }

    #[test]
    fn quotient_by_generated_subgroup() {
        let q = group("quotient(product(Z, cyclic(4)), [bb])");
        let b = q.canonical(&"b".parse().unwrap()).unwrap();
        assert_eq!(q.product(&b, &b).unwrap(), q.identity());
        let err = build_group(&parse_spec("quotient(Z, [a])").unwrap(), Path::new("."));
        assert!(err.is_err());
    }

    #[test]
    fn relative_targets() {
        let t = build(&parse_spec("rel(free(2), [a, b])").unwrap(), Path::new(".")).unwrap();
        match t {
            Target::Schreier { info, .. } => assert_eq!(info.index, Some(1)),
            Target::Group(_) => panic!(),
        }
        let t = build(&parse_spec("rel(Z^2, [(1,0)])").unwrap(), Path::new(".")).unwrap();
        match t {
            Target::Schreier { info, .. } => assert_eq!(info.index, None),
            Target::Group(_) => panic!(),
        }
        let t = build(&parse_spec("rel(Z^2, [a, bb])").unwrap(), Path::new(".")).unwrap();
        match t {
            Target::Schreier { info, .. } => assert_eq!(info.index, Some(2)),
            Target::Group(_) => panic!(),
        }
    }

    #[test]
    fn table_terms() {
        let dir = tempfile::tempdir().unwrap();
        // S3 with 0 = identity, 1,2 = rotations, 3,4,5 = reflections.
        let s3 = "6\n0 1 2 3 4 5\n1 2 0 4 5 3\n2 0 1 5 3 4\n3 5 4 0 2 1\n4 3 5 1 0 2\n5 4 3 2 1 0\n";
        std::fs::write(dir.path().join("s3.txt"), s3).unwrap();
        let base = dir.path();
        let g = build_group(&parse_spec("table(s3.txt)").unwrap(), base).unwrap();
        assert_eq!(g.generator_count(), 5);
        let zf = build_group(&parse_spec("semidirect_zf(table(s3.txt))").unwrap(), base).unwrap();
        assert_eq!(zf.generator_count(), 6);
        let a = build_group(&parse_spec("amalgam(table(s3.txt), cyclic(4), 2)").unwrap(), base).unwrap();
        assert_eq!(a.generator_count(), 8);
        let h = build_group(&parse_spec("hnn(table(s3.txt), 3, -1)").unwrap(), base).unwrap();
        assert_eq!(h.generator_count(), 6);
        assert!(build_group(&parse_spec("hnn(table(s3.txt), 4)").unwrap(), base).is_err());
        assert!(build_group(&parse_spec("table(missing.txt)").unwrap(), base).is_err());
    }
}
