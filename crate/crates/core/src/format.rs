//! Plain-text file format for categories, functors, presentations, Reedy
//! annotations, diagrams and diagram maps.
//!
//! A document is a sequence of named blocks. Each block is `<kind> <name>`,
//! then `section:` lines, then `end`. A section line may carry values
//! inline (`source: R`) and the indented rows after it belong to it.
//! Blocks refer to earlier blocks by name; `include <path>` pulls in another
//! document relative to the including file. `#` starts a comment and
//! tokens with spaces or special characters are double-quoted.
//!
//! ```text
//! category Z2
//!   objects:
//!     *
//!   arrows:
//!     e e * *
//!     g1 g1 * *
//!   identities:
//!     * e
//!   compose:
//!     e e e
//!     g1 e g1
//!     e g1 g1
//!     g1 g1 e
//! end
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::cattribe::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, RawCategory};
use crate::freecat::AmalgamPresentation;
use crate::reedy::ReedyStructure;

/// Composites with an identity may be left out of a file; add the ones
/// that are missing so validation sees a full table.
fn fill_identity_composites(raw: &mut RawCategory) {
    let id_of: HashMap<&str, &str> = raw.identities.iter().map(|(o, a)| (o.as_str(), a.as_str())).collect();
    let listed: std::collections::HashSet<(String, String)> = raw.compose.iter().map(|(g, f, _)| (g.clone(), f.clone())).collect();
    let mut extra = Vec::new();
    for (f, _, dom, cod) in &raw.arrows {
        let pairs = [id_of.get(cod.as_str()).map(|i| (i.to_string(), f.clone())), id_of.get(dom.as_str()).map(|i| (f.clone(), i.to_string()))];
        for (g, h) in pairs.into_iter().flatten() {
            if !listed.contains(&(g.clone(), h.clone())) && !extra.iter().any(|(a, b, _)| *a == g && *b == h) {
                extra.push((g, h, f.clone()));
            }
        }
    }
    raw.compose.extend(extra);
}

/// Everything read from one document and its includes, by name.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub categories: BTreeMap<String, Arc<FinCat>>,
    pub functors: BTreeMap<String, FinFunctor>,
    pub presentations: BTreeMap<String, AmalgamPresentation>,
    pub reedy: BTreeMap<String, ReedyStructure>,
    pub diagrams: BTreeMap<String, Diagram>,
    pub maps: BTreeMap<String, DiagramMap>,
}

#[derive(Debug)]
struct Row {
    line: usize,
    cells: Vec<String>,
}

#[derive(Debug)]
struct Block {
    kind: String,
    name: String,
    line: usize,
    sections: HashMap<String, Vec<Row>>,
}

impl Block {
    fn rows(&self, section: &str) -> &[Row] {
        self.sections.get(section).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The single value of a one-value section such as `source: R`.
    fn single(&self, section: &str) -> Result<(&str, usize)> {
        match self.rows(section) {
            [row] if row.cells.len() == 1 => Ok((&row.cells[0], row.line)),
            _ => Err(parse_err(self.line, format!("{} `{}` needs exactly one `{section}:` value", self.kind, self.name))),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn tokenize(line: &str, no: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            chars.next();
            let mut tok = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some('\\') => match chars.next() {
                        Some(e) => tok.push(e),
                        None => return Err(parse_err(no, "dangling escape")),
                    },
                    Some(ch) => tok.push(ch),
                    None => return Err(parse_err(no, "unterminated quote")),
                }
            }
            // a quoted token never acts as a section header
            out.push(format!("\"{tok}"));
        } else {
            let mut tok = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '#' {
                    break;
                }
                tok.push(ch);
                chars.next();
            }
            out.push(tok);
        }
    }
    Ok(out)
}

fn unquote(tok: &str) -> String {
    tok.strip_prefix('"').unwrap_or(tok).to_string()
}

fn quote(tok: &str) -> String {
    let plain = !tok.is_empty()
        && tok != "end"
        && tok != "include"
        && !tok.ends_with(':')
        && !tok.chars().any(|c| c.is_whitespace() || c == '#' || c == '"' || c == '\\');
    if plain {
        tok.to_string()
    } else {
        let mut s = String::from("\"");
        for c in tok.chars() {
            if c == '"' || c == '\\' {
                s.push('\\');
            }
            s.push(c);
        }
        s.push('"');
        s
    }
}

fn split_blocks(text: &str) -> Result<(Vec<Block>, Vec<(usize, String)>)> {
    let mut blocks = Vec::new();
    let mut includes = Vec::new();
    let mut current: Option<(Block, Option<String>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let toks = tokenize(raw, no)?;
        if toks.is_empty() {
            continue;
        }
        match &mut current {
            None => match toks.as_slice() {
                [kw, path] if kw == "include" => includes.push((no, unquote(path))),
                [kind, name] => {
                    let block = Block { kind: kind.clone(), name: unquote(name), line: no, sections: HashMap::new() };
                    current = Some((block, None));
                }
                _ => return Err(parse_err(no, "expected `<kind> <name>` or `include <path>`")),
            },
            Some((block, section)) => {
                if toks.len() == 1 && toks[0] == "end" {
                    blocks.push(current.take().expect("open block").0);
                    continue;
                }
                let mut cells = toks.as_slice();
                if let Some(head) = cells[0].strip_suffix(':').filter(|_| !cells[0].starts_with('"')) {
                    *section = Some(head.to_string());
                    block.sections.entry(head.to_string()).or_default();
                    cells = &cells[1..];
                    if cells.is_empty() {
                        continue;
                    }
                }
                let Some(sec) = section.as_ref() else {
                    return Err(parse_err(no, "row outside of any section"));
                };
                let row = Row { line: no, cells: cells.iter().map(|c| unquote(c)).collect() };
                block.sections.get_mut(sec).expect("section opened").push(row);
            }
        }
    }
    if let Some((block, _)) = current {
        return Err(parse_err(block.line, format!("{} `{}` is missing `end`", block.kind, block.name)));
    }
    Ok((blocks, includes))
}

fn expect_cells<'a>(row: &'a Row, n: usize, what: &str) -> Result<&'a [String]> {
    if row.cells.len() == n {
        Ok(&row.cells)
    } else {
        Err(parse_err(row.line, format!("{what} rows have {n} entries, found {}", row.cells.len())))
    }
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let mut doc = Document::default();
        doc.add_text(text, None)?;
        Ok(doc)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Document> {
        let mut doc = Document::default();
        doc.add_file(path.as_ref())?;
        Ok(doc)
    }

    pub fn add_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io { path: path.display().to_string(), msg: e.to_string() })?;
        self.add_text(&text, path.parent())
    }

    pub fn add_text(&mut self, text: &str, base: Option<&Path>) -> Result<()> {
        let (blocks, includes) = split_blocks(text)?;
        for (_, inc) in includes {
            let p: PathBuf = base.map(|b| b.join(&inc)).unwrap_or_else(|| PathBuf::from(&inc));
            self.add_file(&p)?;
        }
        for b in &blocks {
            self.add_block(b).map_err(at(b.line))?;
        }
        Ok(())
    }

    fn add_block(&mut self, b: &Block) -> Result<()> {
        match b.kind.as_str() {
            "category" => {
                let c = Arc::new(self.read_category(b)?);
                self.categories.insert(b.name.clone(), c);
            }
            "functor" => {
                let f = self.read_functor(b)?;
                self.functors.insert(b.name.clone(), f);
            }
            "presentation" => {
                let r = self.category(b.single("r")?.0)?;
                let r0 = self.category(b.single("r0")?.0)?;
                let c = self.functor(b.single("c")?.0)?;
                if *c.source != *r0 || *c.target != *r {
                    return Err(parse_err(b.line, "`c` must go from `r0` to `r`"));
                }
                self.presentations.insert(b.name.clone(), AmalgamPresentation::new(r, r0, c.clone())?);
            }
            "reedy" => {
                let s = self.read_reedy(b)?;
                self.reedy.insert(b.name.clone(), s);
            }
            "diagram" => {
                let d = self.read_diagram(b)?;
                self.diagrams.insert(b.name.clone(), d);
            }
            "map" => {
                let m = self.read_map(b)?;
                self.maps.insert(b.name.clone(), m);
            }
            other => return Err(parse_err(b.line, format!("unknown block kind `{other}`"))),
        }
        Ok(())
    }

    fn read_category(&self, b: &Block) -> Result<FinCat> {
        let mut raw = RawCategory::default();
        for row in b.rows("objects") {
            raw.objects.extend(row.cells.iter().cloned());
        }
        for row in b.rows("arrows") {
            match row.cells.as_slice() {
                [id, dom, cod] => raw.arrows.push((id.clone(), id.clone(), dom.clone(), cod.clone())),
                [id, name, dom, cod] => raw.arrows.push((id.clone(), name.clone(), dom.clone(), cod.clone())),
                _ => return Err(parse_err(row.line, "arrow rows are `id [name] dom cod`")),
            }
        }
        for row in b.rows("identities") {
            let c = expect_cells(row, 2, "identity")?;
            raw.identities.push((c[0].clone(), c[1].clone()));
        }
        for row in b.rows("compose") {
            let c = expect_cells(row, 3, "compose")?;
            raw.compose.push((c[0].clone(), c[1].clone(), c[2].clone()));
        }
        fill_identity_composites(&mut raw);
        FinCat::validate(&raw)
    }

    fn read_functor(&self, b: &Block) -> Result<FinFunctor> {
        let src = self.category(b.single("source")?.0)?;
        let tgt = self.category(b.single("target")?.0)?;
        let mut obj = vec![usize::MAX; src.n_objects()];
        for row in b.rows("objects") {
            let c = expect_cells(row, 2, "object map")?;
            let a = src.object_index(&c[0]).ok_or_else(|| Error::UnknownObject(c[0].clone())).map_err(at(row.line))?;
            obj[a] = tgt.object_index(&c[1]).ok_or_else(|| Error::UnknownObject(c[1].clone())).map_err(at(row.line))?;
        }
        let mut arr = vec![usize::MAX; src.n_arrows()];
        for row in b.rows("arrows") {
            let c = expect_cells(row, 2, "arrow map")?;
            let a = src.arrow_index(&c[0]).ok_or_else(|| Error::UnknownArrow(c[0].clone())).map_err(at(row.line))?;
            arr[a] = tgt.arrow_index(&c[1]).ok_or_else(|| Error::UnknownArrow(c[1].clone())).map_err(at(row.line))?;
        }
        if let Some(o) = obj.iter().position(|&x| x == usize::MAX) {
            return Err(parse_err(b.line, format!("object `{}` is not mapped", src.object_id(o))));
        }
        if let Some(f) = arr.iter().position(|&x| x == usize::MAX) {
            return Err(parse_err(b.line, format!("arrow `{}` is not mapped", src.arrow_id(f))));
        }
        FinFunctor::new(src, tgt, obj, arr)
    }

    fn read_reedy(&self, b: &Block) -> Result<ReedyStructure> {
        let c = self.category(b.single("category")?.0)?;
        let mut degree = vec![None; c.n_objects()];
        for row in b.rows("degrees") {
            let cells = expect_cells(row, 2, "degree")?;
            let o = c.object_index(&cells[0]).ok_or_else(|| Error::UnknownObject(cells[0].clone())).map_err(at(row.line))?;
            degree[o] = Some(cells[1].parse::<usize>().map_err(|e| parse_err(row.line, e.to_string()))?);
        }
        let degree = degree
            .into_iter()
            .enumerate()
            .map(|(o, d)| d.ok_or_else(|| parse_err(b.line, format!("object `{}` has no degree", c.object_id(o)))))
            .collect::<Result<Vec<_>>>()?;
        let member = |section: &str| -> Result<Vec<bool>> {
            let mut v = vec![false; c.n_arrows()];
            for row in b.rows(section) {
                for id in &row.cells {
                    let f = c.arrow_index(id).ok_or_else(|| Error::UnknownArrow(id.clone())).map_err(at(row.line))?;
                    v[f] = true;
                }
            }
            Ok(v)
        };
        ReedyStructure::new(c.clone(), degree, member("plus")?, member("minus")?)
    }

    fn read_diagram(&self, b: &Block) -> Result<Diagram> {
        let shape = self.category(b.single("shape")?.0)?;
        let mut values = vec![None; shape.n_objects()];
        for row in b.rows("values") {
            let c = expect_cells(row, 2, "value")?;
            let o = shape.object_index(&c[0]).ok_or_else(|| Error::UnknownObject(c[0].clone())).map_err(at(row.line))?;
            values[o] = Some(self.category(&c[1]).map_err(at(row.line))?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(o, v)| v.ok_or_else(|| parse_err(b.line, format!("object `{}` has no value", shape.object_id(o)))))
            .collect::<Result<Vec<_>>>()?;
        let mut action: Vec<Option<FinFunctor>> = vec![None; shape.n_arrows()];
        for row in b.rows("actions") {
            let c = expect_cells(row, 2, "action")?;
            let u = shape.arrow_index(&c[0]).ok_or_else(|| Error::UnknownArrow(c[0].clone())).map_err(at(row.line))?;
            action[u] = Some(self.functor(&c[1]).map_err(at(row.line))?.clone());
        }
        // identities may be left implicit
        let action = action
            .into_iter()
            .enumerate()
            .map(|(u, a)| match a {
                Some(a) => Ok(a),
                None if shape.is_identity(u) => Ok(FinFunctor::identity(values[shape.dom(u)].clone())),
                None => Err(parse_err(b.line, format!("arrow `{}` has no action", shape.arrow_id(u)))),
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(shape, values, action)
    }

    fn read_map(&self, b: &Block) -> Result<DiagramMap> {
        let source = self.diagram(b.single("source")?.0)?.clone();
        let target = self.diagram(b.single("target")?.0)?.clone();
        let shape = source.shape.clone();
        let mut comps = vec![None; shape.n_objects()];
        for row in b.rows("components") {
            let c = expect_cells(row, 2, "component")?;
            let o = shape.object_index(&c[0]).ok_or_else(|| Error::UnknownObject(c[0].clone())).map_err(at(row.line))?;
            comps[o] = Some(self.functor(&c[1]).map_err(at(row.line))?.clone());
        }
        let components = comps
            .into_iter()
            .enumerate()
            .map(|(o, c)| c.ok_or_else(|| parse_err(b.line, format!("object `{}` has no component", shape.object_id(o)))))
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new(source, target, components)
    }

    pub fn category(&self, name: &str) -> Result<Arc<FinCat>> {
        self.categories.get(name).cloned().ok_or_else(|| missing("category", name))
    }

    pub fn functor(&self, name: &str) -> Result<&FinFunctor> {
        self.functors.get(name).ok_or_else(|| missing("functor", name))
    }

    pub fn presentation(&self, name: &str) -> Result<&AmalgamPresentation> {
        self.presentations.get(name).ok_or_else(|| missing("presentation", name))
    }

    pub fn reedy_structure(&self, name: &str) -> Result<&ReedyStructure> {
        self.reedy.get(name).ok_or_else(|| missing("reedy annotation", name))
    }

    pub fn diagram(&self, name: &str) -> Result<&Diagram> {
        self.diagrams.get(name).ok_or_else(|| missing("diagram", name))
    }

    pub fn map(&self, name: &str) -> Result<&DiagramMap> {
        self.maps.get(name).ok_or_else(|| missing("map", name))
    }

    /// The only block of a kind, or the one with the given name.
    pub fn pick<'a, T>(items: &'a BTreeMap<String, T>, kind: &str, name: Option<&str>) -> Result<(&'a str, &'a T)> {
        match name {
            Some(n) => items.get_key_value(n).map(|(k, v)| (k.as_str(), v)).ok_or_else(|| missing(kind, n)),
            None if items.len() == 1 => {
                let (k, v) = items.iter().next().expect("one item");
                Ok((k.as_str(), v))
            }
            None if items.is_empty() => Err(Error::Precondition(format!("no {kind} in the input"))),
            None => Err(Error::Precondition(format!(
                "several {kind} blocks ({}); name one",
                items.keys().cloned().collect::<Vec<_>>().join(", ")
            ))),
        }
    }
}

fn missing(kind: &str, name: &str) -> Error {
    Error::Precondition(format!("no {kind} named `{name}`"))
}

/// Accumulates blocks in canonical form.
#[derive(Debug, Default)]
pub struct Writer {
    out: String,
}

fn row(out: &mut String, cells: &[&str]) {
    let _ = writeln!(out, "    {}", cells.iter().map(|c| quote(c)).collect::<Vec<_>>().join(" "));
}

impl Writer {
    pub fn new() -> Self {
        Writer::default()
    }

    pub fn finish(self) -> String {
        self.out
    }

    fn open(&mut self, kind: &str, name: &str) {
        if !self.out.is_empty() {
            self.out.push('\n');
        }
        let _ = writeln!(self.out, "{kind} {}", quote(name));
    }

    fn inline(&mut self, section: &str, value: &str) {
        let _ = writeln!(self.out, "  {section}: {}", quote(value));
    }

    fn section(&mut self, section: &str) {
        let _ = writeln!(self.out, "  {section}:");
    }

    fn close(&mut self) {
        self.out.push_str("end\n");
    }

    pub fn category(&mut self, name: &str, c: &FinCat) -> &mut Self {
        let raw = c.to_raw();
        self.open("category", name);
        self.section("objects");
        for o in &raw.objects {
            row(&mut self.out, &[o]);
        }
        self.section("arrows");
        for (id, nm, d, k) in &raw.arrows {
            if id == nm {
                row(&mut self.out, &[id, d, k]);
            } else {
                row(&mut self.out, &[id, nm, d, k]);
            }
        }
        self.section("identities");
        for (o, a) in &raw.identities {
            row(&mut self.out, &[o, a]);
        }
        self.section("compose");
        for (g, f, gf) in &raw.compose {
            row(&mut self.out, &[g, f, gf]);
        }
        self.close();
        self
    }

    pub fn functor(&mut self, name: &str, f: &FinFunctor, source: &str, target: &str) -> &mut Self {
        self.open("functor", name);
        self.inline("source", source);
        self.inline("target", target);
        self.section("objects");
        for (o, &fo) in f.obj.iter().enumerate() {
            row(&mut self.out, &[f.source.object_id(o), f.target.object_id(fo)]);
        }
        self.section("arrows");
        for (a, &fa) in f.arr.iter().enumerate() {
            row(&mut self.out, &[f.source.arrow_id(a), f.target.arrow_id(fa)]);
        }
        self.close();
        self
    }

    pub fn presentation(&mut self, name: &str, r: &str, r0: &str, c: &str) -> &mut Self {
        self.open("presentation", name);
        self.inline("r", r);
        self.inline("r0", r0);
        self.inline("c", c);
        self.close();
        self
    }

    pub fn reedy(&mut self, name: &str, category: &str, s: &ReedyStructure) -> &mut Self {
        let c = &*s.base;
        self.open("reedy", name);
        self.inline("category", category);
        self.section("degrees");
        for (o, d) in s.degree.iter().enumerate() {
            row(&mut self.out, &[c.object_id(o), &d.to_string()]);
        }
        for (section, class) in [("plus", &s.plus), ("minus", &s.minus)] {
            self.section(section);
            for f in (0..c.n_arrows()).filter(|&f| class[f]) {
                row(&mut self.out, &[c.arrow_id(f)]);
            }
        }
        self.close();
        self
    }

    /// The diagram with its shape, one category per object and one functor
    /// per non-identity arrow, all named after `name`.
    pub fn diagram(&mut self, name: &str, d: &Diagram) -> &mut Self {
        let shape_name = format!("{name}.shape");
        self.category(&shape_name, &d.shape);
        self.diagram_values(name, d);
        self.open("diagram", name);
        self.inline("shape", &shape_name);
        self.section("values");
        for o in 0..d.shape.n_objects() {
            row(&mut self.out, &[d.shape.object_id(o), &format!("{name}.{o}")]);
        }
        self.section("actions");
        for u in (0..d.shape.n_arrows()).filter(|&u| !d.shape.is_identity(u)) {
            row(&mut self.out, &[d.shape.arrow_id(u), &format!("{name}.a{u}")]);
        }
        self.close();
        self
    }

    fn diagram_values(&mut self, name: &str, d: &Diagram) {
        for (o, v) in d.values.iter().enumerate() {
            self.category(&format!("{name}.{o}"), v);
        }
        for u in (0..d.shape.n_arrows()).filter(|&u| !d.shape.is_identity(u)) {
            let (a, b) = (d.shape.dom(u), d.shape.cod(u));
            self.functor(&format!("{name}.a{u}"), &d.action[u], &format!("{name}.{b}"), &format!("{name}.{a}"));
        }
    }

    /// Both diagrams (as `<name>.source` and `<name>.target`), the component
    /// functors and the map block.
    pub fn map(&mut self, name: &str, m: &DiagramMap) -> &mut Self {
        let (s, t) = (format!("{name}.source"), format!("{name}.target"));
        self.diagram(&s, &m.source);
        self.diagram(&t, &m.target);
        for (o, c) in m.components.iter().enumerate() {
            self.functor(&format!("{name}.c{o}"), c, &format!("{s}.{o}"), &format!("{t}.{o}"));
        }
        self.open("map", name);
        self.inline("source", &s);
        self.inline("target", &t);
        self.section("components");
        let shape = &m.source.shape;
        for o in 0..shape.n_objects() {
            row(&mut self.out, &[shape.object_id(o), &format!("{name}.c{o}")]);
        }
        self.close();
        self
    }

    /// `r`, `r0`, `c` and the presentation block.
    pub fn presentation_bundle(&mut self, name: &str, p: &AmalgamPresentation) -> &mut Self {
        let (r, r0, c) = (format!("{name}.r"), format!("{name}.r0"), format!("{name}.c"));
        self.category(&r, &p.r);
        self.category(&r0, &p.r0);
        self.functor(&c, &p.c, &r0, &r);
        self.presentation(name, &r, &r0, &c);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn category_round_trip() {
        for (name, c, _) in zoo::gaunt_catalog() {
            let mut w = Writer::new();
            w.category(name, &c);
            let text = w.finish();
            let doc = Document::parse(&text).unwrap();
            let back = doc.category(name).unwrap();
            assert_eq!(*back, c, "{name}");
            let mut w2 = Writer::new();
            w2.category(name, &back);
            assert_eq!(w2.finish(), text);
        }
    }

    #[test]
    fn quoting() {
        let c = FinCat::discrete(&["a b", "end", "x:", "q\"uote"]);
        let mut w = Writer::new();
        w.category("odd names", &c);
        let doc = Document::parse(&w.finish()).unwrap();
        assert_eq!(*doc.category("odd names").unwrap(), c);
    }

    #[test]
    fn presentation_and_reedy_round_trip() {
        let g = zoo::group_category(&zoo::GroupTable::symmetric3()).unwrap();
        let mut w = Writer::new();
        w.presentation_bundle("S3", &g.presentation).reedy("S3.reedy", "S3.r", &g.reedy);
        let doc = Document::parse(&w.finish()).unwrap();
        let p = doc.presentation("S3").unwrap();
        assert_eq!(*p.r, *g.presentation.r);
        assert_eq!(p.c, g.presentation.c);
        assert_eq!(*doc.reedy_structure("S3.reedy").unwrap(), g.reedy);
    }

    #[test]
    fn map_round_trip() {
        let z2 = Arc::new(zoo::group_category(&zoo::GroupTable::cyclic(2)).unwrap().category().clone());
        let x = Diagram::constant(z2, Arc::new(zoo::walking_iso()));
        let m = DiagramMap::to_terminal(&x);
        let mut w = Writer::new();
        w.map("m", &m);
        let doc = Document::parse(&w.finish()).unwrap();
        let back = doc.map("m").unwrap();
        assert!(back.same_components(&m));
        assert_eq!(back.source.values, m.source.values);
    }

    #[test]
    fn identity_composites_may_be_omitted() {
        let text = "category w\n  objects:\n    a\n    b\n  arrows:\n    ia a a\n    f a b\n    ib b b\n  identities:\n    a ia\n    b ib\nend\n";
        let c = Document::parse(text).unwrap().category("w").unwrap();
        assert_eq!(c.n_arrows(), 3);
        let f = c.arrow_index("f").unwrap();
        assert_eq!(c.comp(c.id(c.cod(f)), f), f);
        assert_eq!(c.comp(f, c.id(c.dom(f))), f);
    }

    #[test]
    fn errors_carry_lines() {
        let text = "category c\n  objects:\n    a\n  arrows:\n    f a b\nend\n";
        assert!(matches!(Document::parse(text), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Document::parse("category c\n  objects:\n"), Err(Error::Parse { .. })));
        assert!(matches!(Document::parse("category c\n    a\nend\n"), Err(Error::Parse { line: 2, .. })));
        let doc = Document::parse("category c\n  objects:\n    a\n  arrows:\n    id a a\n  identities:\n    a id\n  compose:\n    id id id\nend\n");
        assert_eq!(doc.unwrap().category("c").unwrap().n_arrows(), 1);
    }

    #[test]
    fn includes_resolve_relative_to_the_file() {
        let dir = std::env::temp_dir().join(format!("unrolling-format-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut w = Writer::new();
        w.category("w", &zoo::walking_iso());
        std::fs::write(dir.join("w.cat"), w.finish()).unwrap();
        let mut w = Writer::new();
        w.functor("id", &FinFunctor::identity(Arc::new(zoo::walking_iso())), "w", "w");
        std::fs::write(dir.join("main.txt"), format!("include w.cat\n{}", w.finish())).unwrap();
        let doc = Document::read(dir.join("main.txt")).unwrap();
        assert!(doc.functor("id").unwrap().is_isomorphism());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
