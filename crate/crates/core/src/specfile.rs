//! Text inputs: the graph file format, the registry of built-in graphs,
//! and the dispatcher that turns a command-line spec string (builtin name,
//! parametrized construction, or file path) into a usable object.
//!
//! A graph file looks like
//!
//! ```text
//! graph <name> root=<vertex>
//! v <id>
//! e <id> <u> <v>
//! ```
//!
//! with `#` comments and blank lines allowed anywhere. The other recognized
//! file kinds are dispatched on their first keyword: `closedset <body>`
//! (see [`parse_closed_set`]), `descriptor <rank=... ends=...>` (see
//! [`StandardGraphDescriptor`]), and pants-complex files (`pants`/`glue`/
//! `base` lines, see [`PantsComplex::parse`]).

use std::path::Path;
use std::str::FromStr;

use crate::closed_set::{parse_closed_set, ClosedSetPresentation};
use crate::error::{Error, Result};
use crate::multigraph::FiniteMultigraph;
use crate::oracle::{
    ConvergentEndsOracle, GraphInput, LineOracle, LochNessOracle, OneEndRank3Oracle, RayOracle,
    SplitCantorOracle, Tree3Oracle,
};
use crate::phe::StandardGraphDescriptor;
use crate::reductions::{cubic_realization, regular_realization, tree_realization};
use crate::surfaces::PantsComplex;

/// Names served by [`builtin_graph`], in registry order. The `fig4_*`
/// aliases are accepted on input but are not listed here.
pub const BUILTIN_NAMES: &[&str] = &[
    "ray",
    "line",
    "tree3",
    "loch_ness",
    "one_end_rank3",
    "sequence_ends",
    "cantor_split",
];

/// Looks up a built-in infinite graph by name.
///
/// `fig4_first`, `fig4_middle` and `fig4_cantor` are aliases for
/// `one_end_rank3`, `sequence_ends` and `cantor_split` respectively.
pub fn builtin_graph(name: &str) -> Result<GraphInput> {
    match name {
        "ray" => Ok(GraphInput::oracle(RayOracle)),
        "line" => Ok(GraphInput::oracle(LineOracle)),
        "tree3" => Ok(GraphInput::oracle(Tree3Oracle)),
        "loch_ness" => Ok(GraphInput::oracle(LochNessOracle)),
        "one_end_rank3" | "fig4_first" => Ok(GraphInput::oracle(OneEndRank3Oracle)),
        "sequence_ends" | "fig4_middle" => Ok(GraphInput::oracle(ConvergentEndsOracle)),
        "cantor_split" | "fig4_cantor" => Ok(GraphInput::oracle(SplitCantorOracle)),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

/// One parsed input file, whatever its kind.
#[derive(Debug, Clone)]
pub enum SpecFile {
    Graph(FiniteMultigraph),
    ClosedSet(ClosedSetPresentation),
    Descriptor(StandardGraphDescriptor),
    Pants(PantsComplex),
}

impl SpecFile {
    /// Canonical text form; [`parse_spec`] of the result reproduces `self`.
    pub fn to_text(&self) -> String {
        match self {
            SpecFile::Graph(g) => g.to_text(),
            SpecFile::ClosedSet(c) => format!("closedset {}\n", c.to_text()),
            SpecFile::Descriptor(d) => format!("descriptor {d}\n"),
            SpecFile::Pants(p) => p.to_text(),
        }
    }
}

/// Splits a line into whitespace-separated tokens with their 1-based
/// starting columns.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 0;
    for (i, ch) in line.char_indices() {
        if !ch.is_whitespace() && (i == 0 || line[..i].ends_with(char::is_whitespace)) {
            col = i;
        }
        if !ch.is_whitespace()
            && (i + ch.len_utf8() == line.len()
                || line[i + ch.len_utf8()..].starts_with(char::is_whitespace))
        {
            out.push((col + 1, &line[col..i + ch.len_utf8()]));
        }
    }
    out
}

/// Strips a `#` comment and returns the meaningful tokens of each line,
/// keyed by 1-based line number.
fn meaningful_lines(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let toks = tokens_with_columns(line);
        if !toks.is_empty() {
            out.push((i + 1, toks));
        }
    }
    out
}

/// Parses the `graph ... / v ... / e ...` format.
pub fn parse_graph(text: &str) -> Result<FiniteMultigraph> {
    let lines = meaningful_lines(text);
    let Some((first_line, header)) = lines.first() else {
        return Err(Error::parse(1, 1, "empty graph file"));
    };
    if header[0].1 != "graph" {
        return Err(Error::parse(
            *first_line,
            header[0].0,
            format!("expected `graph <name> root=<v>`, got {:?}", header[0].1),
        ));
    }
    if header.len() != 3 {
        return Err(Error::parse(
            *first_line,
            header[0].0,
            "header must be `graph <name> root=<v>`",
        ));
    }
    let name = header[1].1;
    let root = header[2]
        .1
        .strip_prefix("root=")
        .ok_or_else(|| Error::parse(*first_line, header[2].0, "expected root=<vertex>"))?;
    if root.is_empty() {
        return Err(Error::parse(*first_line, header[2].0, "empty root name"));
    }

    let mut g = FiniteMultigraph::new(name);
    let mut edges = Vec::new();
    for (line, toks) in lines.iter().skip(1) {
        match toks[0].1 {
            "v" => {
                if toks.len() != 2 {
                    return Err(Error::parse(*line, toks[0].0, "expected `v <id>`"));
                }
                g.add_vertex(toks[1].1.into())
                    .map_err(|e| Error::parse(*line, toks[1].0, e.to_string()))?;
            }
            "e" => {
                if toks.len() != 4 {
                    return Err(Error::parse(*line, toks[0].0, "expected `e <id> <u> <v>`"));
                }
                edges.push((*line, toks[1], toks[2].1, toks[3].1));
            }
            other => {
                return Err(Error::parse(
                    *line,
                    toks[0].0,
                    format!("expected `v` or `e`, got {other:?}"),
                ));
            }
        }
    }
    // Edges are added after every vertex line has been seen, so the two
    // kinds of line may be interleaved freely in the file.
    for (line, (col, id), u, w) in edges {
        g.add_edge(id.into(), u.into(), w.into())
            .map_err(|e| Error::parse(line, col, e.to_string()))?;
    }
    g.set_root(root.into())
        .map_err(|e| Error::parse(*first_line, header[2].0, e.to_string()))?;
    Ok(g)
}

/// Parses any recognized file kind, dispatching on the first keyword.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let lines = meaningful_lines(text);
    let Some((line, toks)) = lines.first() else {
        return Err(Error::parse(1, 1, "empty input file"));
    };
    match toks[0].1 {
        "graph" => Ok(SpecFile::Graph(parse_graph(text)?)),
        "closedset" => {
            let mut body = String::new();
            for (_, toks) in &lines {
                for (_, t) in toks {
                    if !body.is_empty() {
                        body.push(' ');
                    }
                    body.push_str(t);
                }
            }
            let rest = body.strip_prefix("closedset").expect("checked above");
            Ok(SpecFile::ClosedSet(parse_closed_set(rest)?))
        }
        "descriptor" => {
            if lines.len() != 1 {
                return Err(Error::parse(
                    lines[1].0,
                    lines[1].1[0].0,
                    "descriptor files are a single line",
                ));
            }
            let rest: Vec<&str> = toks.iter().skip(1).map(|(_, t)| *t).collect();
            Ok(SpecFile::Descriptor(StandardGraphDescriptor::from_str(
                &rest.join(" "),
            )?))
        }
        "pants" | "glue" | "base" => Ok(SpecFile::Pants(PantsComplex::parse(text)?)),
        other => Err(Error::parse(
            *line,
            toks[0].0,
            format!("unknown input kind {other:?} (expected graph, closedset, descriptor, or pants)"),
        )),
    }
}

/// `name(` ... `)` with the given name: returns the body between the parens.
fn construction_body<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?
        .strip_prefix('(')?
        .strip_suffix(')')
}

/// `regular<k>(<body>)`: returns `(k, body)`.
fn regular_construction(s: &str) -> Result<Option<(u32, &str)>> {
    let Some(rest) = s.strip_prefix("regular") else {
        return Ok(None);
    };
    let Some(open) = rest.find('(') else {
        return Ok(None);
    };
    let k: u32 = rest[..open].parse().map_err(|_| {
        Error::InvalidParameter(format!(
            "expected regular<k>(...) with a numeric k, got {s:?}"
        ))
    })?;
    let body = rest[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::InvalidParameter(format!("missing closing paren in {s:?}")))?;
    Ok(Some((k, body)))
}

/// Resolves a command-line graph spec: a builtin name, a construction such
/// as `tree(full)`, `cubic(cylinders 00 1)` or `regular5(full)`, or a path
/// to a graph or pants file.
pub fn resolve_graph_spec(spec: &str) -> Result<GraphInput> {
    let s = spec.trim();
    if let Ok(g) = builtin_graph(s) {
        return Ok(g);
    }
    if let Some(body) = construction_body(s, "tree") {
        return tree_realization(parse_closed_set(body)?);
    }
    if let Some(body) = construction_body(s, "cubic") {
        return cubic_realization(parse_closed_set(body)?);
    }
    if let Some((k, body)) = regular_construction(s)? {
        return regular_realization(parse_closed_set(body)?, k);
    }
    if Path::new(s).is_file() {
        let text = std::fs::read_to_string(s)?;
        return match parse_spec(&text)? {
            SpecFile::Graph(g) => Ok(GraphInput::finite(g)),
            SpecFile::Pants(p) => Ok(GraphInput::finite(p.to_graph())),
            SpecFile::ClosedSet(_) => Err(Error::InvalidParameter(format!(
                "{s} holds a closed set, not a graph; wrap it as tree(...), cubic(...) or regular<k>(...)"
            ))),
            SpecFile::Descriptor(_) => Err(Error::InvalidParameter(format!(
                "{s} holds an end-space descriptor, not a graph"
            ))),
        };
    }
    if s.chars().all(|c| c.is_alphanumeric() || c == '_') {
        Err(Error::UnknownBuiltin(s.to_string()))
    } else {
        Err(Error::InvalidParameter(format!(
            "cannot resolve graph spec {s:?}: not a builtin, construction, or readable file"
        )))
    }
}

/// Resolves a command-line closed-set spec: either a path to a `closedset`
/// file or an inline expression such as `full` or `cylinders 00 01 1`.
pub fn resolve_closed_set_spec(spec: &str) -> Result<ClosedSetPresentation> {
    let s = spec.trim();
    if Path::new(s).is_file() {
        let text = std::fs::read_to_string(s)?;
        return match parse_spec(&text)? {
            SpecFile::ClosedSet(c) => Ok(c),
            other => Err(Error::InvalidParameter(format!(
                "{s} does not hold a closed set (found a {})",
                kind_name(&other)
            ))),
        };
    }
    parse_closed_set(s)
}

fn kind_name(s: &SpecFile) -> &'static str {
    match s {
        SpecFile::Graph(_) => "graph",
        SpecFile::ClosedSet(_) => "closed set",
        SpecFile::Descriptor(_) => "descriptor",
        SpecFile::Pants(_) => "pants complex",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::Radius;
    use crate::oracle::oracle_degree;

    #[test]
    fn graph_files_round_trip_through_the_printer() {
        let text = "graph demo root=a\nv a\nv b\nv c\ne ab a b\ne bc b c\ne lp c c\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.to_text(), text);
        let again = parse_graph(&g.to_text()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn graph_files_allow_comments_and_interleaving() {
        let text = "# a triangle\ngraph t root=x # rooted at x\nv x\ne xy x y\nv y\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.root().unwrap().as_str(), "x");
    }

    #[test]
    fn graph_file_errors_carry_positions() {
        let cases = [
            ("", "empty graph file"),
            ("v a\n", "expected `graph"),
            ("graph g root=a\nw a\n", "expected `v` or `e`"),
            ("graph g rot=a\nv a\n", "expected root=<vertex>"),
            ("graph g root=a\nv a\nv a\n", "duplicate"),
            ("graph g root=q\nv a\n", "unknown vertex: q"),
            ("graph g root=a\nv a\ne e1 a zz\n", "zz"),
        ];
        for (text, needle) in cases {
            let err = parse_graph(text).unwrap_err().to_string();
            assert!(
                err.contains("line") && err.contains(needle),
                "{text:?} gave {err:?}, wanted {needle:?}"
            );
        }
    }

    #[test]
    fn builtin_registry_resolves_names_and_aliases() {
        for name in BUILTIN_NAMES {
            assert_eq!(builtin_graph(name).unwrap().label(), *name);
        }
        assert_eq!(builtin_graph("fig4_first").unwrap().label(), "one_end_rank3");
        assert_eq!(
            builtin_graph("fig4_middle").unwrap().label(),
            "sequence_ends"
        );
        assert_eq!(builtin_graph("fig4_cantor").unwrap().label(), "cantor_split");
        let err = builtin_graph("klein_bottle").unwrap_err();
        assert!(matches!(err, Error::UnknownBuiltin(_)));
    }

    #[test]
    fn constructions_resolve_with_descriptive_labels() {
        assert_eq!(resolve_graph_spec("tree(full)").unwrap().label(), "prefix-tree(full)");
        assert_eq!(resolve_graph_spec("cubic(full)").unwrap().label(), "cubic(full)");
        assert_eq!(
            resolve_graph_spec("regular5(cylinders 00 01 1)")
                .unwrap()
                .label(),
            "5-regular(cylinders 00 01 1)"
        );
        // A k = 3 regular request folds into the cubic construction.
        assert_eq!(resolve_graph_spec("regular3(full)").unwrap().label(), "cubic(full)");
        let g = resolve_graph_spec("cubic(full)").unwrap();
        g.with_oracle(|o| {
            assert_eq!(oracle_degree(o, &o.root()), 3);
        })
        .unwrap();
    }

    #[test]
    fn bad_constructions_and_names_report_cleanly() {
        assert!(matches!(
            resolve_graph_spec("nessie"),
            Err(Error::UnknownBuiltin(_))
        ));
        assert!(matches!(
            resolve_graph_spec("regularx(full)"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            resolve_graph_spec("regular4(full"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(resolve_graph_spec("tree(full extra)").is_err());
        assert!(matches!(
            resolve_graph_spec("./no/such/file.graph"),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn spec_dispatch_covers_all_file_kinds() {
        let graph = parse_spec("graph g root=a\nv a\n").unwrap();
        assert!(matches!(graph, SpecFile::Graph(_)));

        let closed = parse_spec("closedset cylinders 00 01 1\n").unwrap();
        let SpecFile::ClosedSet(c) = &closed else {
            panic!("wrong kind");
        };
        assert_eq!(c.to_text(), "cylinders 00 01 1");

        let descr = parse_spec("descriptor rank=2 ends=1 loops=0\n").unwrap();
        let SpecFile::Descriptor(d) = &descr else {
            panic!("wrong kind");
        };
        assert_eq!(d.to_string(), "rank=2 ends=1 loops=0");

        let pants = parse_spec("pants 0 legs=1\nglue 0.1 0.2\nbase 0\n").unwrap();
        assert!(matches!(pants, SpecFile::Pants(_)));

        let err = parse_spec("polygon 5\n").unwrap_err().to_string();
        assert!(err.contains("unknown input kind"));
    }

    #[test]
    fn spec_round_trips_reproduce_the_canonical_text() {
        let samples = [
            "graph g root=a\nv a\nv b\ne ab a b\n",
            "closedset automaton 2 0 accept=0,1 0:0,1 1:1,1\n",
            "descriptor rank=inf ends=seq loops=limit\n",
            "pants 0 legs=2\npants 1 legs=2\nglue 0.1 1.1\nglue 0.2 1.2\nglue 0.3 1.3\nbase 0\n",
        ];
        for text in samples {
            let parsed = parse_spec(text).unwrap();
            assert_eq!(parsed.to_text(), text, "canonical form drifted");
            let reparsed = parse_spec(&parsed.to_text()).unwrap();
            assert_eq!(reparsed.to_text(), text);
        }
    }

    #[test]
    fn files_resolve_as_graph_specs() {
        let dir = std::env::temp_dir().join(format!("specfile-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let gpath = dir.join("path.graph");
        std::fs::write(&gpath, "graph p root=a\nv a\nv b\ne ab a b\n").unwrap();
        let g = resolve_graph_spec(gpath.to_str().unwrap()).unwrap();
        assert_eq!(g.label(), "p");
        let ball = g.ball(Radius(3)).unwrap();
        assert_eq!(ball.vertex_count(), 2);

        let ppath = dir.join("torus.pants");
        std::fs::write(&ppath, "pants 0 legs=1\nglue 0.1 0.2\nbase 0\n").unwrap();
        let t = resolve_graph_spec(ppath.to_str().unwrap()).unwrap();
        let ball = t.ball(Radius(3)).unwrap();
        assert_eq!(ball.rank(), 1);

        let cpath = dir.join("set.closedset");
        std::fs::write(&cpath, "closedset full\n").unwrap();
        assert!(resolve_graph_spec(cpath.to_str().unwrap()).is_err());
        let c = resolve_closed_set_spec(cpath.to_str().unwrap()).unwrap();
        assert_eq!(c.to_text(), "full");
        let inline = resolve_closed_set_spec("singleton - 01").unwrap();
        assert_eq!(inline.to_text(), "singleton - 01");
        std::fs::remove_dir_all(&dir).ok();
    }
}
