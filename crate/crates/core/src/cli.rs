//! Graph file format, run reports and the command implementations behind the
//! `mixspec` binary.
//!
//! A graph file is line oriented. `V name…` declares vertices, `E u v [mult]`
//! adds undirected edges (a loop when `u = v`), `A u v [mult]` adds arcs (a
//! directed loop when `u = v`). Text after `#` is ignored. Vertices are
//! indexed in order of first appearance, which fixes the matrix row order.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::associated::{analyze_components, build_associated, mixed_distance_in, predicates_from, set_distance_in, Distance, MixedDistance, Predicates};
use crate::eigen::jacobi_eigen;
use crate::error::{Error, Result};
use crate::graph::{Family, MixedGraph};
use crate::matrix::MatrixKind;
use crate::theorems::{check_bound, check_sampled, lookup, run_all_on, Analysis, BoundArgs, BoundReport, RunOptions, Tolerances, REGISTRY};

/// A graph together with the vertex names used in its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: MixedGraph,
    /// `names[i]` labels vertex `i`.
    pub names: Vec<String>,
}

impl GraphFile {
    /// Names `0, 1, …, n−1`.
    pub fn numbered(graph: MixedGraph) -> Self {
        let names = (0..graph.order()).map(|i| i.to_string()).collect();
        GraphFile { graph, names }
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex {name:?}")))
    }

    /// Indices of a comma-separated list of names.
    pub fn indices_of(&self, list: &str) -> Result<Vec<usize>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.index_of(s))
            .collect()
    }

    /// Name of an associated vertex: `v'` for the first copy, `v''` for the second.
    pub fn associated_name(&self, x: usize) -> String {
        let n = self.graph.order();
        if x < n {
            format!("{}'", self.names[x])
        } else {
            format!("{}''", self.names[x - n])
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<GraphFile> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    let mut register = |name: &str, names: &mut Vec<String>| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((&directive, rest)) = tokens.split_first() else {
            continue;
        };
        match directive {
            "V" => {
                if rest.is_empty() {
                    return Err(parse_error(line_no, "V needs at least one vertex name"));
                }
                for name in rest {
                    register(name, &mut names);
                }
            }
            "E" | "A" => {
                let (u, v, mult) = match rest {
                    [u, v] => (u, v, 1),
                    [u, v, m] => (u, v, parse_multiplicity(m, line_no)?),
                    _ => {
                        return Err(parse_error(
                            line_no,
                            format!("{directive} expects two vertices and an optional multiplicity"),
                        ))
                    }
                };
                let (u, v) = (register(u, &mut names), register(v, &mut names));
                if directive == "E" {
                    edges.push((u, v, mult));
                } else {
                    arcs.push((u, v, mult));
                }
            }
            other => return Err(parse_error(line_no, format!("unknown directive {other:?}"))),
        }
    }
    let mut graph = MixedGraph::new(names.len());
    for (u, v, m) in edges {
        graph.add_edge(u, v, m)?;
    }
    for (u, v, m) in arcs {
        graph.add_arc(u, v, m)?;
    }
    Ok(GraphFile { graph, names })
}

fn parse_multiplicity(token: &str, line: usize) -> Result<u32> {
    let value: i64 = token
        .parse()
        .map_err(|_| parse_error(line, format!("multiplicity {token:?} is not an integer")))?;
    if value < 0 {
        return Err(parse_error(line, format!("negative multiplicity {value}")));
    }
    if value == 0 {
        return Err(parse_error(line, "multiplicity must be at least 1"));
    }
    u32::try_from(value).map_err(|_| parse_error(line, format!("multiplicity {value} is too large")))
}

/// Inverse of [`parse`]: every vertex is declared first so order and
/// isolated vertices survive.
pub fn render(file: &GraphFile) -> String {
    let mut out = String::new();
    for name in &file.names {
        let _ = writeln!(out, "V {name}");
    }
    let mut line = |kind: char, (u, v): (usize, usize), m: u32| {
        let (a, b) = (&file.names[u], &file.names[v]);
        if m == 1 {
            let _ = writeln!(out, "{kind} {a} {b}");
        } else {
            let _ = writeln!(out, "{kind} {a} {b} {m}");
        }
    };
    for (e, m) in file.graph.edges() {
        line('E', e, m);
    }
    for (a, m) in file.graph.arcs() {
        line('A', a, m);
    }
    out
}

/// Rounds to 12 significant digits; magnitudes within `zero` print as 0.
pub fn round_significant(x: f64, zero: f64) -> f64 {
    if x.abs() <= zero || x == 0.0 {
        return 0.0;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupEntry {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub kind: MatrixKind,
    pub tol_group: f64,
    pub groups: Vec<GroupEntry>,
}

pub fn spectrum_entry(g: &MixedGraph, kind: MatrixKind, tol: &Tolerances) -> Result<SpectrumEntry> {
    let spectrum = jacobi_eigen(&kind.build(g), tol.group)?.spectrum;
    Ok(SpectrumEntry {
        kind,
        tol_group: tol.group,
        groups: spectrum
            .groups
            .iter()
            .map(|&(value, multiplicity)| GroupEntry {
                value: round_significant(value, tol.zero),
                multiplicity,
            })
            .collect(),
    })
}

pub fn spectrum_text(entry: &SpectrumEntry) -> String {
    let mut out = format!("# {} spectrum, tol_group = {:e}\n# value multiplicity\n", entry.kind, entry.tol_group);
    for g in &entry.groups {
        let _ = writeln!(out, "{} {}", g.value, g.multiplicity);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub e: u64,
    pub a: u64,
    pub l: u64,
    pub vertices: Vec<String>,
    pub predicates: Predicates,
    /// The input graph in file form, so a report can be replayed.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixEntry {
    pub kind: MatrixKind,
    pub order: usize,
    pub rows: Vec<Vec<f64>>,
}

/// Self-describing record of one run; field order is fixed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub instantiations: usize,
    pub tolerances: Tolerances,
    pub graph: GraphSummary,
    pub matrices: Vec<MatrixEntry>,
    pub spectra: Vec<SpectrumEntry>,
    pub bounds: Vec<BoundReport>,
    pub violations: usize,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn summary(file: &GraphFile, predicates: Predicates) -> GraphSummary {
    let c = file.graph.counts();
    GraphSummary {
        n: file.graph.order(),
        e: c.e,
        a: c.a,
        l: c.l,
        vertices: file.names.clone(),
        predicates,
        source: render(file),
    }
}

/// Builds a report with the requested matrices, all four spectra and the
/// given bound reports.
pub fn run_report(file: &GraphFile, matrices: &[MatrixKind], bounds: Vec<BoundReport>, opts: &RunOptions) -> Result<RunReport> {
    let g = &file.graph;
    let spectra = [MatrixKind::I, MatrixKind::IL, MatrixKind::IQ, MatrixKind::IN]
        .into_iter()
        .map(|k| spectrum_entry(g, k, &opts.tol))
        .collect::<Result<Vec<_>>>()?;
    let violations = bounds.iter().filter(|r| !r.holds).count();
    Ok(RunReport {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        seed: opts.seed,
        instantiations: opts.instantiations,
        tolerances: opts.tol,
        graph: summary(file, crate::associated::predicates(g)),
        matrices: matrices
            .iter()
            .map(|&kind| {
                let m = kind.build(g);
                MatrixEntry {
                    kind,
                    order: m.order(),
                    rows: m.rows(),
                }
            })
            .collect(),
        spectra,
        bounds,
        violations,
    })
}

/// Extra arguments for `check --bound`, by vertex name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NamedArgs {
    pub pair: Option<(String, String)>,
    pub subset: Option<String>,
    pub arc: Option<(String, String)>,
    /// Comma-separated edges `u-v` and arcs `u>v` forming the first factor.
    pub factor: Option<String>,
    /// Two or more comma-separated sets joined by `;`.
    pub sets: Option<String>,
}

impl NamedArgs {
    fn is_empty(&self) -> bool {
        *self == NamedArgs::default()
    }

    fn resolve(&self, file: &GraphFile) -> Result<BoundArgs> {
        let pair = |p: &Option<(String, String)>| -> Result<Option<(usize, usize)>> {
            p.as_ref()
                .map(|(u, v)| Ok((file.index_of(u)?, file.index_of(v)?)))
                .transpose()
        };
        let sets = self
            .sets
            .as_ref()
            .map(|s| s.split(';').map(|part| file.indices_of(part)).collect::<Result<Vec<_>>>())
            .transpose()?;
        let factor = self.factor.as_ref().map(|f| parse_factor(file, f)).transpose()?;
        Ok(BoundArgs {
            pair: pair(&self.pair)?,
            subset: self.subset.as_ref().map(|s| file.indices_of(s)).transpose()?,
            arc: pair(&self.arc)?,
            factor,
            set_pair: sets.as_ref().and_then(|s| match s.as_slice() {
                [x, y] => Some((x.clone(), y.clone())),
                _ => None,
            }),
            sets,
        })
    }
}

fn parse_factor(file: &GraphFile, spec: &str) -> Result<MixedGraph> {
    let mut g = MixedGraph::new(file.graph.order());
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((u, v)) = item.split_once('>') {
            let (u, v) = (file.index_of(u)?, file.index_of(v)?);
            g.add_arc(u, v, file.graph.arc_multiplicity(u, v).max(1))?;
        } else if let Some((u, v)) = item.split_once('-') {
            let (u, v) = (file.index_of(u)?, file.index_of(v)?);
            g.add_edge(u, v, file.graph.edge_multiplicity(u, v).max(1))?;
        } else {
            return Err(Error::InvalidInput(format!("factor item {item:?} is neither u-v nor u>v")));
        }
    }
    Ok(g)
}

/// Result of `check`: the report and whether every evaluated entry held.
pub fn check(file: &GraphFile, bound: Option<&str>, named: &NamedArgs, opts: &RunOptions) -> Result<RunReport> {
    let a = Analysis::new(&file.graph, &opts.tol)?;
    let reports = match bound {
        None => run_all_on(&a, opts)?,
        Some(id) => {
            let info = lookup(id)?;
            if named.is_empty() {
                vec![check_sampled(&a, info, opts)?]
            } else {
                vec![check_bound(id, &file.graph, &named.resolve(file)?, opts)?]
            }
        }
    };
    run_report(file, &[], reports, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentsOutput {
    pub component_count: usize,
    /// Associated vertices of each component, as `v'` and `v''`.
    pub components: Vec<Vec<String>>,
    /// Mixed vertices touched by each component, in index order.
    pub mixed_vertices: Vec<Vec<String>>,
    pub flags: Vec<crate::associated::ComponentFlags>,
    pub predicates: Predicates,
}

pub fn components(file: &GraphFile) -> ComponentsOutput {
    let ag = build_associated(&file.graph);
    let report = analyze_components(&ag);
    let predicates = predicates_from(&file.graph, &ag, &report);
    let n = file.graph.order();
    ComponentsOutput {
        component_count: report.component_count,
        components: report
            .components
            .iter()
            .map(|c| c.iter().map(|&x| file.associated_name(x)).collect())
            .collect(),
        mixed_vertices: report
            .components
            .iter()
            .map(|c| {
                let mut vs: Vec<usize> = c.iter().map(|&x| x % n).collect();
                vs.sort_unstable();
                vs.dedup();
                vs.into_iter().map(|v| file.names[v].clone()).collect()
            })
            .collect(),
        flags: report.flags,
        predicates,
    }
}

pub fn vertex_distance(file: &GraphFile, u: &str, v: &str) -> Result<MixedDistance> {
    let ag = build_associated(&file.graph);
    mixed_distance_in(&ag, file.index_of(u)?, file.index_of(v)?)
}

pub fn sets_distance(file: &GraphFile, x: &str, y: &str) -> Result<Distance> {
    let ag = build_associated(&file.graph);
    set_distance_in(&ag, &file.indices_of(x)?, &file.indices_of(y)?)
}

/// Parses `gen` arguments such as `KM 3`, `KD 3 2` or `OCA 6`.
pub fn family_from_args(name: &str, params: &[usize]) -> Result<Family> {
    let one = |make: fn(usize) -> Family| match params {
        [n] => Ok(make(*n)),
        _ => Err(Error::InvalidInput(format!("{name} takes one parameter"))),
    };
    let multi = |single: fn(usize) -> Family, multi: fn(usize, usize) -> Family| match params {
        [n] => Ok(single(*n)),
        [k, m] => Ok(multi(*k, *m)),
        _ => Err(Error::InvalidInput(format!("{name} takes n, or k and m"))),
    };
    let family = match name.to_ascii_uppercase().as_str() {
        "K" => multi(|n| Family::Complete { n }, |k, m| Family::CompleteMultipartite { k, m }),
        "KD" => multi(
            |n| Family::CompleteDirected { n },
            |k, m| Family::CompleteMultipartiteDirected { k, m },
        ),
        "KM" => multi(
            |n| Family::CompleteMixed { n },
            |k, m| Family::CompleteMultipartiteMixed { k, m },
        ),
        "P" => one(|n| Family::Path { n }),
        "C" => one(|n| Family::Cycle { n }),
        "OP" => one(|n| Family::OrientedPathSame { n }),
        "OC" => one(|n| Family::OrientedCycleSame { n }),
        "OCA" => one(|n| Family::OrientedCycleAlternating { n }),
        "ALT" => one(|n| Family::AlternatingDoubleCycle { n }),
        _ => Err(Error::InvalidInput(format!(
            "unknown family {name:?}; expected K, KD, KM, P, C, OP, OC, OCA or ALT"
        ))),
    }?;
    family.validate()?;
    Ok(family)
}

/// Registry listing, one `id<TAB>summary` line per entry.
pub fn registry_listing() -> String {
    REGISTRY.iter().map(|b| format!("{}\t{}\n", b.id, b.summary)).collect()
}
