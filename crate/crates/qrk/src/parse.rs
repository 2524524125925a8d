//! Line-based text formats for quivers, representations, morphisms, and
//! chains, with printers that round-trip through the parsers.
//!
//! All formats share the conventions: UTF-8, one directive per line, `#`
//! starts a comment, blank lines are ignored, and matrices use the
//! `[a,b;c,d]` syntax of [`Matrix::to_text`].

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::quiver::{Quiver, QuiverMorphism};
use crate::rank::{ChainStep, RankChain};
use crate::rep::Representation;

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Content lines with their 1-based line numbers, comments and blanks
/// stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Column (1-based) where `token` starts within `line`, for error reports.
fn col_of(line: &str, token: &str) -> usize {
    line.find(token).map_or(1, |p| p + 1)
}

pub fn parse_quiver(text: &str) -> Result<Arc<Quiver>> {
    let mut name: Option<String> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("quiver") => {
                let n = tok.next().ok_or_else(|| perr(ln, 1, "missing quiver name"))?;
                name = Some(n.to_string());
            }
            Some("vertices") => {
                vertices.extend(tok.map(str::to_string));
            }
            Some("arrow") => {
                let a = tok.next().ok_or_else(|| perr(ln, 1, "missing arrow name"))?;
                let t = tok
                    .next()
                    .ok_or_else(|| perr(ln, col_of(line, a), "missing tail vertex"))?;
                let h = tok
                    .next()
                    .ok_or_else(|| perr(ln, col_of(line, t), "missing head vertex"))?;
                arrows.push((a.to_string(), t.to_string(), h.to_string()));
            }
            Some(other) => return Err(perr(ln, 1, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines are filtered"),
        }
    }
    let name = name.ok_or_else(|| perr(1, 1, "missing `quiver <name>` line"))?;
    Quiver::new(&name, vertices, arrows)
        .map_err(|e| perr(1, 1, format!("invalid quiver: {e}")))
}

pub fn print_quiver(q: &Quiver) -> String {
    let mut out = format!("quiver {}\n", q.name());
    if q.num_vertices() > 0 {
        out.push_str("vertices");
        for v in q.vertex_names() {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.name,
            q.vertex_name(a.tail),
            q.vertex_name(a.head)
        ));
    }
    out
}

pub fn parse_rep(text: &str, quiver: &Arc<Quiver>) -> Result<Representation> {
    let mut field: Option<FieldSpec> = None;
    let mut dims: Vec<Option<usize>> = vec![None; quiver.num_vertices()];
    let mut map_lines: Vec<(usize, usize, String)> = Vec::new(); // (line, arrow, text)
    for (ln, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("field") => {
                let f = match (tok.next(), tok.next()) {
                    (Some("Q"), None) => FieldSpec::Rationals,
                    (Some("GF"), Some(p)) => {
                        let p: u64 = p
                            .parse()
                            .map_err(|_| perr(ln, col_of(line, p), "bad prime"))?;
                        FieldSpec::prime(p).map_err(|e| perr(ln, 1, e.to_string()))?
                    }
                    _ => return Err(perr(ln, 1, "expected `field Q` or `field GF <p>`")),
                };
                field = Some(f);
            }
            Some("dim") => {
                for chunk in tok {
                    let (v, n) = chunk
                        .split_once('=')
                        .ok_or_else(|| perr(ln, col_of(line, chunk), "expected `<vertex>=<n>`"))?;
                    let x = quiver.vertex_index(v).ok_or_else(|| {
                        perr(ln, col_of(line, chunk), format!("unknown vertex `{v}`"))
                    })?;
                    let d: usize = n
                        .parse()
                        .map_err(|_| perr(ln, col_of(line, chunk), format!("bad dimension `{n}`")))?;
                    dims[x] = Some(d);
                }
            }
            Some("map") => {
                let a = tok.next().ok_or_else(|| perr(ln, 1, "missing arrow name"))?;
                let ai = quiver
                    .arrow_index(a)
                    .ok_or_else(|| perr(ln, col_of(line, a), format!("unknown arrow `{a}`")))?;
                let rest = line
                    .split_once('=')
                    .map(|(_, r)| r.trim())
                    .ok_or_else(|| perr(ln, 1, "expected `map <arrow> = [..]`"))?;
                map_lines.push((ln, ai, rest.to_string()));
            }
            Some(other) => return Err(perr(ln, 1, format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    let field = field.ok_or_else(|| perr(1, 1, "missing `field` line"))?;
    let dims: Vec<usize> = dims
        .into_iter()
        .enumerate()
        .map(|(x, d)| {
            d.ok_or_else(|| {
                perr(1, 1, format!("no dimension given for vertex `{}`", quiver.vertex_name(x)))
            })
        })
        .collect::<Result<_>>()?;
    let mut maps: Vec<Option<Matrix>> = vec![None; quiver.num_arrows()];
    for (ln, ai, mtext) in map_lines {
        let a = quiver.arrow(ai);
        let m = Matrix::parse_text(field, dims[a.head], dims[a.tail], &mtext)
            .map_err(|e| perr(ln, col_of(&mtext, "["), e.to_string()))?;
        maps[ai] = Some(m);
    }
    let maps: Vec<Matrix> = maps
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| {
                perr(1, 1, format!("no map given for arrow `{}`", quiver.arrow(i).name))
            })
        })
        .collect::<Result<_>>()?;
    Representation::new(quiver.clone(), field, dims, maps)
}

pub fn print_rep(rep: &Representation) -> String {
    let q = rep.quiver();
    let mut out = match rep.field() {
        FieldSpec::Rationals => "field Q\n".to_string(),
        FieldSpec::Prime(p) => format!("field GF {p}\n"),
    };
    if q.num_vertices() > 0 {
        out.push_str("dim");
        for x in 0..q.num_vertices() {
            out.push_str(&format!(" {}={}", q.vertex_name(x), rep.dim(x)));
        }
        out.push('\n');
    }
    for (i, a) in q.arrows().iter().enumerate() {
        out.push_str(&format!("map {} = {}\n", a.name, rep.map(i).to_text()));
    }
    out
}

/// The `morphism <src> -> <dst>` header names the two quivers; what the
/// tokens denote (names or file paths) is the caller's affair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismHeader {
    pub src: String,
    pub dst: String,
}

pub fn morphism_header(text: &str) -> Result<MorphismHeader> {
    for (ln, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        if tok.next() == Some("morphism") {
            let (src, arrow, dst) = (tok.next(), tok.next(), tok.next());
            return match (src, arrow, dst) {
                (Some(s), Some("->"), Some(d)) => Ok(MorphismHeader {
                    src: s.to_string(),
                    dst: d.to_string(),
                }),
                _ => Err(perr(ln, 1, "expected `morphism <src> -> <dst>`")),
            };
        }
    }
    Err(perr(1, 1, "missing `morphism <src> -> <dst>` line"))
}

pub fn parse_morphism(text: &str, src: Arc<Quiver>, dst: Arc<Quiver>) -> Result<QuiverMorphism> {
    let mut vertex_pairs: Vec<(String, String)> = Vec::new();
    let mut arrow_pairs: Vec<(String, String)> = Vec::new();
    let mut saw_header = false;
    for (ln, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        let kind = tok.next();
        match kind {
            Some("morphism") => {
                saw_header = true;
            }
            Some("vertex") | Some("arrow") => {
                let (x, sep, y) = (tok.next(), tok.next(), tok.next());
                let (x, y) = match (x, sep, y) {
                    (Some(x), Some("->"), Some(y)) => (x.to_string(), y.to_string()),
                    _ => {
                        return Err(perr(ln, 1, format!("expected `{} <x> -> <y>`", kind.unwrap())))
                    }
                };
                if kind == Some("vertex") {
                    vertex_pairs.push((x, y));
                } else {
                    arrow_pairs.push((x, y));
                }
            }
            Some(other) => return Err(perr(ln, 1, format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    if !saw_header {
        return Err(perr(1, 1, "missing `morphism <src> -> <dst>` line"));
    }
    let v: Vec<(&str, &str)> = vertex_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let a: Vec<(&str, &str)> = arrow_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    QuiverMorphism::from_names(src, dst, &v, &a)
}

pub fn print_morphism(m: &QuiverMorphism, src_token: &str, dst_token: &str) -> String {
    let mut out = format!("morphism {src_token} -> {dst_token}\n");
    let (src, dst) = (m.source(), m.target());
    for x in 0..src.num_vertices() {
        out.push_str(&format!(
            "vertex {} -> {}\n",
            src.vertex_name(x),
            dst.vertex_name(m.vertex_image(x))
        ));
    }
    for b in 0..src.num_arrows() {
        out.push_str(&format!(
            "arrow {} -> {}\n",
            src.arrow(b).name,
            dst.arrow(m.arrow_image(b)).name
        ));
    }
    out
}

/// One line of a chain file: the direction and the morphism file it names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainLine {
    Push(String),
    Pull(String),
}

pub fn parse_chain_spec(text: &str) -> Result<Vec<ChainLine>> {
    let mut lines = Vec::new();
    let mut saw_header = false;
    for (ln, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("chain") => saw_header = true,
            Some(dir @ ("push" | "pull")) => {
                let file = tok
                    .next()
                    .ok_or_else(|| perr(ln, 1, format!("`{dir}` needs a morphism file")))?;
                lines.push(if dir == "push" {
                    ChainLine::Push(file.to_string())
                } else {
                    ChainLine::Pull(file.to_string())
                });
            }
            Some(other) => return Err(perr(ln, 1, format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    if !saw_header {
        return Err(perr(1, 1, "missing `chain` header line"));
    }
    Ok(lines)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read `{}`: {e}", path.display())))
}

pub fn load_quiver(path: &Path) -> Result<Arc<Quiver>> {
    parse_quiver(&read(path)?)
}

pub fn load_rep(path: &Path, quiver: &Arc<Quiver>) -> Result<Representation> {
    parse_rep(&read(path)?, quiver)
}

/// Loads a morphism file, resolving its `<src>`/`<dst>` header tokens as
/// quiver file paths relative to the morphism file's own directory.
pub fn load_morphism(path: &Path) -> Result<QuiverMorphism> {
    let text = read(path)?;
    let header = morphism_header(&text)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let src = load_quiver(&base.join(&header.src))?;
    let dst = load_quiver(&base.join(&header.dst))?;
    parse_morphism(&text, src, dst)
}

/// Loads a chain file; each step's morphism file path is resolved relative
/// to the chain file's directory.
pub fn load_chain(path: &Path) -> Result<RankChain> {
    let spec = parse_chain_spec(&read(path)?)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut steps = Vec::with_capacity(spec.len());
    for line in spec {
        steps.push(match line {
            ChainLine::Push(f) => ChainStep::Push(load_morphism(&base.join(f))?),
            ChainLine::Pull(f) => ChainStep::Pull(load_morphism(&base.join(f))?),
        });
    }
    Ok(RankChain::new(steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A3_FILE: &str = "\
# two maps into a common target
quiver A3
vertices 1 2 3
arrow a 1 2
arrow b 3 2
";

    #[test]
    fn quiver_roundtrip() {
        let q = parse_quiver(A3_FILE).unwrap();
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(q.num_arrows(), 2);
        let printed = print_quiver(&q);
        assert_eq!(parse_quiver(&printed).unwrap(), q);
    }

    #[test]
    fn quiver_errors_carry_position() {
        let bad = "quiver X\nvertices 1\nbogus a 1 1\n";
        match parse_quiver(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        // arrow onto undeclared vertex
        assert!(parse_quiver("quiver X\nvertices 1\narrow a 1 2\n").is_err());
    }

    #[test]
    fn rep_roundtrip_rational_and_modular() {
        let q = parse_quiver(A3_FILE).unwrap();
        let text = "field Q\ndim 1=1 2=2 3=1\nmap a = [1;0]\nmap b = [1/2;-1]\n";
        let rep = parse_rep(text, &q).unwrap();
        assert_eq!(rep.dims(), &[1, 2, 1]);
        let printed = print_rep(&rep);
        assert_eq!(parse_rep(&printed, &q).unwrap(), rep);

        let text2 = "field GF 5\ndim 1=1 2=2 3=1\nmap a = [2;3]\nmap b = [4;0]\n";
        let rep2 = parse_rep(text2, &q).unwrap();
        assert_eq!(parse_rep(&print_rep(&rep2), &q).unwrap(), rep2);
    }

    #[test]
    fn rep_requires_every_dim_and_map() {
        let q = parse_quiver(A3_FILE).unwrap();
        assert!(parse_rep("field Q\ndim 1=1 2=2\nmap a = [1;0]\nmap b = [1;0]\n", &q).is_err());
        assert!(parse_rep("field Q\ndim 1=1 2=2 3=1\nmap a = [1;0]\n", &q).is_err());
        // shape mismatch is caught with a position
        let bad = "field Q\ndim 1=1 2=2 3=1\nmap a = [1,0]\nmap b = [1;0]\n";
        assert!(matches!(parse_rep(bad, &q), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn morphism_roundtrip_collapse() {
        let q5 = parse_quiver(
            "quiver W\nvertices 1 2 3a 3b 4\narrow a 1 3a\narrow b 2 3b\narrow ca 3a 4\narrow cb 3b 4\n",
        )
        .unwrap();
        let q4 = parse_quiver(
            "quiver V\nvertices 1 2 3 4\narrow a 1 3\narrow b 2 3\narrow c 3 4\n",
        )
        .unwrap();
        let text = "\
morphism w.qv -> v.qv
vertex 1 -> 1
vertex 2 -> 2
vertex 3a -> 3
vertex 3b -> 3
vertex 4 -> 4
arrow a -> a
arrow b -> b
arrow ca -> c
arrow cb -> c
";
        let h = morphism_header(text).unwrap();
        assert_eq!(h.src, "w.qv");
        assert_eq!(h.dst, "v.qv");
        let m = parse_morphism(text, q5.clone(), q4.clone()).unwrap();
        assert_eq!(m.vertex_fiber(2), vec![2, 3]);
        let printed = print_morphism(&m, "w.qv", "v.qv");
        assert_eq!(parse_morphism(&printed, q5, q4).unwrap(), m);
    }

    #[test]
    fn chain_spec_lines() {
        let spec = parse_chain_spec("chain\npull f.qm\npush g.qm\n").unwrap();
        assert_eq!(
            spec,
            vec![ChainLine::Pull("f.qm".into()), ChainLine::Push("g.qm".into())]
        );
        assert!(parse_chain_spec("pull f.qm\n").is_err());
    }

    #[test]
    fn files_resolve_relative_paths() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path();
        std::fs::write(p.join("a2.qv"), "quiver A2\nvertices 1 2\narrow a 1 2\n").unwrap();
        std::fs::write(p.join("pt.qv"), "quiver pt\nvertices v\narrow l v v\n").unwrap();
        std::fs::write(
            p.join("collapse.qm"),
            "morphism a2.qv -> pt.qv\nvertex 1 -> v\nvertex 2 -> v\narrow a -> l\n",
        )
        .unwrap();
        std::fs::write(p.join("c.chain"), "chain\npush collapse.qm\n").unwrap();
        let chain = load_chain(&p.join("c.chain")).unwrap();
        assert_eq!(chain.steps().len(), 1);
        let q = load_quiver(&p.join("a2.qv")).unwrap();
        let rep = parse_rep("field Q\ndim 1=1 2=1\nmap a = [1]\n", &q).unwrap();
        // collapsed to a loop the map becomes [[0,0],[1,0]], which is nilpotent
        assert_eq!(chain.eval(&rep).unwrap(), 0);
    }
}
