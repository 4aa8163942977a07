//! Line-based text format for categories, multicategories, multigraphs and
//! maps between them.
//!
//! ```text
//! # the walking arrow
//! category arrow
//! object 0
//! object 1
//! mor j : 0 -> 1
//! ```
//!
//! Identities are implicit and named `id_X`. Several documents may share a
//! file; a map document names its source and target, which must be defined
//! in the same bundle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use multicat::perm::Perm;
use multicat::{
    FiniteCategory, Functor, Map, MorphismDecl, MultiFunctor, MultiGraph, Multicat, Structure,
    Tables, TablesBuilder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ErrorKind,
    pub source: String,
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
    /// Earlier line involved, e.g. the first declaration of a duplicate.
    pub other_line: Option<usize>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Syntax => "syntax error",
            ErrorKind::Semantic => "semantic error",
        };
        write!(
            f,
            "{}:{}:{}: {kind}: {}",
            self.source, self.line, self.column, self.message
        )?;
        if !self.token.is_empty() {
            write!(f, " at `{}`", self.token)?;
        }
        if let Some(l) = self.other_line {
            write!(f, " (see line {l})")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug)]
pub enum Document {
    Category(Arc<FiniteCategory>),
    Multicat(Arc<Multicat>),
    Multigraph(Arc<MultiGraph>),
    Functor(String, Functor),
    Multifunctor(String, MultiFunctor),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Category(c) => c.name(),
            Document::Multicat(m) => m.name(),
            Document::Multigraph(g) => &g.name,
            Document::Functor(n, _) | Document::Multifunctor(n, _) => n,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Multicat(_) => "multicat",
            Document::Multigraph(_) => "multigraph",
            Document::Functor(..) => "functor",
            Document::Multifunctor(..) => "multifunctor",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TokKind {
    Word,
    Open,
    Close,
    Comma,
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    text: String,
    line: usize,
    col: usize,
}

fn is_special(c: char) -> bool {
    matches!(c, '(' | ')' | ',' | '#')
}

fn lex(line: &str, number: usize) -> Vec<Tok> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(TokKind::Open),
            ')' => Some(TokKind::Close),
            ',' => Some(TokKind::Comma),
            _ => None,
        };
        if let Some(kind) = single {
            out.push(Tok {
                kind,
                text: c.to_string(),
                line: number,
                col: i + 1,
            });
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() && !is_special(chars[i]) {
            i += 1;
        }
        out.push(Tok {
            kind: TokKind::Word,
            text: chars[start..i].iter().collect(),
            line: number,
            col: start + 1,
        });
    }
    out
}

struct Ctx<'a> {
    source: &'a str,
}

impl Ctx<'_> {
    fn err(&self, kind: ErrorKind, at: &Tok, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            source: self.source.to_string(),
            line: at.line,
            column: at.col,
            token: at.text.clone(),
            message: message.into(),
            other_line: None,
        }
    }

    fn syntax(&self, at: &Tok, message: impl Into<String>) -> ParseError {
        self.err(ErrorKind::Syntax, at, message)
    }

    fn semantic(&self, at: &Tok, message: impl Into<String>) -> ParseError {
        self.err(ErrorKind::Semantic, at, message)
    }
}

struct Cursor<'a, 'c> {
    ctx: &'c Ctx<'a>,
    toks: &'c [Tok],
    at: usize,
    /// Position reported when the line ends early.
    end: Tok,
}

impl<'a, 'c> Cursor<'a, 'c> {
    fn new(ctx: &'c Ctx<'a>, toks: &'c [Tok], line: &str, number: usize) -> Self {
        Cursor {
            ctx,
            toks,
            at: 0,
            end: Tok {
                kind: TokKind::Word,
                text: String::new(),
                line: number,
                col: line.chars().count() + 1,
            },
        }
    }

    fn peek(&self) -> Option<&'c Tok> {
        self.toks.get(self.at)
    }

    fn next(&mut self, what: &str) -> Result<&'c Tok, ParseError> {
        match self.toks.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t)
            }
            None => Err(self
                .ctx
                .syntax(&self.end, format!("expected {what}, found end of line"))),
        }
    }

    fn word(&mut self, what: &str) -> Result<&'c Tok, ParseError> {
        let t = self.next(what)?;
        if t.kind == TokKind::Word {
            Ok(t)
        } else {
            Err(self.ctx.syntax(t, format!("expected {what}")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<&'c Tok, ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.kind == TokKind::Word && t.text == kw {
            Ok(t)
        } else {
            Err(self.ctx.syntax(t, format!("expected `{kw}`")))
        }
    }

    fn punct(&mut self, kind: TokKind, what: &str) -> Result<&'c Tok, ParseError> {
        let t = self.next(what)?;
        if t.kind == kind {
            Ok(t)
        } else {
            Err(self.ctx.syntax(t, format!("expected {what}")))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) => Err(self.ctx.syntax(t, "unexpected token")),
            None => Ok(()),
        }
    }

    /// `( w w ... )`, space separated.
    fn word_list(&mut self, what: &str) -> Result<Vec<&'c Tok>, ParseError> {
        self.punct(TokKind::Open, "`(`")?;
        let mut out = Vec::new();
        loop {
            let t = self.next(&format!("{what} or `)`"))?;
            match t.kind {
                TokKind::Close => return Ok(out),
                TokKind::Word => out.push(t),
                _ => return Err(self.ctx.syntax(t, format!("expected {what} or `)`"))),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Category,
    Multicat,
    Multigraph,
    Functor,
    Multifunctor,
}

struct RawMor {
    name: Tok,
    inputs: Vec<Tok>,
    output: Tok,
    tuple: bool,
}

struct RawDoc {
    kind: Kind,
    header: Tok,
    name: Tok,
    bound: usize,
    symmetric: bool,
    ends: Option<(Tok, Tok)>,
    objects: Vec<Tok>,
    mors: Vec<RawMor>,
    comps: Vec<(Tok, Tok, Vec<Tok>, Tok)>,
    acts: Vec<(Tok, Tok, Vec<usize>, Tok)>,
    map_objects: Vec<(Tok, Tok)>,
    map_mors: Vec<(Tok, Tok)>,
}

fn parse_bound(ctx: &Ctx, cur: &mut Cursor) -> Result<usize, ParseError> {
    cur.keyword("truncation")?;
    let t = cur.word("arity bound")?;
    match t.text.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(ctx.syntax(t, "truncation must be a positive integer")),
    }
}

fn parse_header(ctx: &Ctx, first: &Tok, cur: &mut Cursor) -> Result<Option<RawDoc>, ParseError> {
    let kind = match first.text.as_str() {
        "category" => Kind::Category,
        "multicat" => Kind::Multicat,
        "multigraph" => Kind::Multigraph,
        "functor" => Kind::Functor,
        "multifunctor" => Kind::Multifunctor,
        _ => return Ok(None),
    };
    let name = cur.word("a name")?.clone();
    let mut doc = RawDoc {
        kind,
        header: first.clone(),
        name,
        bound: 1,
        symmetric: false,
        ends: None,
        objects: Vec::new(),
        mors: Vec::new(),
        comps: Vec::new(),
        acts: Vec::new(),
        map_objects: Vec::new(),
        map_mors: Vec::new(),
    };
    match kind {
        Kind::Category => {}
        Kind::Multicat => doc.bound = parse_bound(ctx, cur)?,
        Kind::Multigraph => {
            doc.bound = parse_bound(ctx, cur)?;
            if let Some(t) = cur.peek() {
                if t.kind == TokKind::Word && t.text == "symmetric" {
                    cur.next("`symmetric`")?;
                    doc.symmetric = true;
                }
            }
        }
        Kind::Functor | Kind::Multifunctor => {
            cur.keyword(":")?;
            let s = cur.word("source name")?.clone();
            cur.keyword("->")?;
            let t = cur.word("target name")?.clone();
            doc.ends = Some((s, t));
        }
    }
    cur.finish()?;
    Ok(Some(doc))
}

fn parse_body(
    ctx: &Ctx,
    doc: &mut RawDoc,
    first: &Tok,
    cur: &mut Cursor,
) -> Result<(), ParseError> {
    let is_map = matches!(doc.kind, Kind::Functor | Kind::Multifunctor);
    let not_here = || {
        ctx.syntax(
            first,
            format!(
                "`{}` lines are not allowed in a {} document",
                first.text,
                kind_name(doc.kind)
            ),
        )
    };
    match first.text.as_str() {
        "object" if !is_map => {
            doc.objects.push(cur.word("an object token")?.clone());
        }
        "mor" if !is_map => {
            let name = cur.word("a morphism token")?.clone();
            cur.keyword(":")?;
            let (inputs, tuple) = match cur.peek() {
                Some(t) if t.kind == TokKind::Open => {
                    cur.next("`(`")?;
                    let mut v = Vec::new();
                    if cur.peek().map(|t| t.kind) == Some(TokKind::Close) {
                        cur.next("`)`")?;
                    } else {
                        loop {
                            v.push(cur.word("an object token")?.clone());
                            let t = cur.next("`,` or `)`")?;
                            match t.kind {
                                TokKind::Comma => continue,
                                TokKind::Close => break,
                                _ => return Err(ctx.syntax(t, "expected `,` or `)`")),
                            }
                        }
                    }
                    (v, true)
                }
                _ => (vec![cur.word("a source object")?.clone()], false),
            };
            cur.keyword("->")?;
            let output = cur.word("a target object")?.clone();
            doc.mors.push(RawMor {
                name,
                inputs,
                output,
                tuple,
            });
        }
        "comp" if matches!(doc.kind, Kind::Category | Kind::Multicat) => {
            let g = cur.word("a morphism token")?.clone();
            let fs = cur
                .word_list("a morphism token")?
                .into_iter()
                .cloned()
                .collect();
            cur.keyword("=")?;
            let h = cur.word("a morphism token")?.clone();
            doc.comps.push((first.clone(), g, fs, h));
        }
        "act" if doc.kind == Kind::Multicat || (doc.kind == Kind::Multigraph && doc.symmetric) => {
            let f = cur.word("a morphism token")?.clone();
            let images = cur.word_list("a position")?;
            let mut ps = Vec::with_capacity(images.len());
            for t in &images {
                match t.text.parse::<usize>() {
                    Ok(p) if p >= 1 => ps.push(p - 1),
                    _ => return Err(ctx.syntax(t, "expected a position 1..k")),
                }
            }
            if Perm::from_images(ps.clone()).is_none() {
                return Err(ctx.syntax(first, "positions do not form a permutation"));
            }
            cur.keyword("=")?;
            let g = cur.word("a morphism token")?.clone();
            doc.acts.push((first.clone(), f, ps, g));
        }
        "map" if is_map => {
            let what = cur.word("`object` or `mor`")?;
            let a = cur.word("a source token")?.clone();
            cur.keyword("->")?;
            let b = cur.word("a target token")?.clone();
            match what.text.as_str() {
                "object" => doc.map_objects.push((a, b)),
                "mor" => doc.map_mors.push((a, b)),
                _ => return Err(ctx.syntax(what, "expected `object` or `mor`")),
            }
        }
        "object" | "mor" | "comp" | "act" | "map" => return Err(not_here()),
        _ => return Err(ctx.syntax(first, "unknown declaration")),
    }
    cur.finish()
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Category => "category",
        Kind::Multicat => "multicat",
        Kind::Multigraph => "multigraph",
        Kind::Functor => "functor",
        Kind::Multifunctor => "multifunctor",
    }
}

fn parse_raw(ctx: &Ctx, text: &str) -> Result<Vec<RawDoc>, ParseError> {
    let mut docs: Vec<RawDoc> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let number = n + 1;
        let toks = lex(line, number);
        let mut cur = Cursor::new(ctx, &toks, line, number);
        let Some(first) = cur.peek() else { continue };
        if first.kind != TokKind::Word {
            return Err(ctx.syntax(first, "expected a declaration"));
        }
        cur.next("a declaration")?;
        if let Some(doc) = parse_header(ctx, first, &mut cur)? {
            docs.push(doc);
            continue;
        }
        match docs.last_mut() {
            Some(doc) => parse_body(ctx, doc, first, &mut cur)?,
            None => return Err(ctx.syntax(first, "declaration before any document header")),
        }
    }
    Ok(docs)
}

fn duplicate(ctx: &Ctx, first: &Tok, again: &Tok, what: &str) -> ParseError {
    let mut e = ctx.semantic(again, format!("duplicate {what}"));
    e.other_line = Some(first.line);
    e
}

fn resolve_tables(ctx: &Ctx, doc: &RawDoc) -> Result<(Tables, HashMap<String, usize>), ParseError> {
    let identities = doc.kind != Kind::Multigraph;
    let mut b = TablesBuilder::new(doc.name.text.clone(), doc.bound);
    let mut objects: HashMap<&str, (usize, &Tok)> = HashMap::new();
    for t in &doc.objects {
        if let Some((_, prev)) = objects.get(t.text.as_str()) {
            return Err(duplicate(ctx, prev, t, "object"));
        }
        let o = if identities {
            b.object(t.text.clone())
        } else {
            objects.len()
        };
        objects.insert(&t.text, (o, t));
    }
    let mut decl_line: HashMap<String, &Tok> = HashMap::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    if identities {
        for t in &doc.objects {
            let o = objects[t.text.as_str()].0;
            index.insert(format!("id_{}", t.text), b.identity(o));
        }
    }
    let obj = |t: &Tok| -> Result<usize, ParseError> {
        objects
            .get(t.text.as_str())
            .map(|x| x.0)
            .ok_or_else(|| ctx.semantic(t, "unknown object"))
    };
    let mut graph_mors = Vec::new();
    for m in &doc.mors {
        if identities && index.contains_key(&m.name.text) && !decl_line.contains_key(&m.name.text) {
            return Err(ctx.semantic(&m.name, "identities are implicit and must not be declared"));
        }
        if let Some(prev) = decl_line.get(&m.name.text) {
            return Err(duplicate(ctx, prev, &m.name, "morphism"));
        }
        if doc.kind == Kind::Category && m.tuple {
            return Err(ctx.syntax(&m.name, "category morphisms are written `a -> b`"));
        }
        if m.inputs.len() > doc.bound {
            return Err(ctx.semantic(
                &m.name,
                format!("arity {} exceeds truncation {}", m.inputs.len(), doc.bound),
            ));
        }
        let inputs = m.inputs.iter().map(obj).collect::<Result<Vec<_>, _>>()?;
        let output = obj(&m.output)?;
        let x = if identities {
            b.morphism(m.name.text.clone(), inputs, output)
        } else {
            graph_mors.push(MorphismDecl {
                name: m.name.text.clone(),
                sig: multicat::Signature::new(inputs, output),
            });
            graph_mors.len() - 1
        };
        index.insert(m.name.text.clone(), x);
        decl_line.insert(m.name.text.clone(), &m.name);
    }
    let mor = |t: &Tok| -> Result<usize, ParseError> {
        index
            .get(&t.text)
            .copied()
            .ok_or_else(|| ctx.semantic(t, "unknown morphism"))
    };
    let arity = |m: usize| {
        if identities {
            b.sig(m).arity()
        } else {
            graph_mors[m].sig.arity()
        }
    };
    let mut comp_seen: HashMap<(usize, Vec<usize>), &Tok> = HashMap::new();
    let mut comps = Vec::new();
    for (at, g, fs, h) in &doc.comps {
        let key = (mor(g)?, fs.iter().map(mor).collect::<Result<Vec<_>, _>>()?);
        if let Some(prev) = comp_seen.get(&key) {
            return Err(duplicate(ctx, prev, at, "comp entry"));
        }
        comp_seen.insert(key.clone(), at);
        comps.push((key, mor(h)?));
    }
    let mut act_seen: HashMap<(usize, Vec<usize>), &Tok> = HashMap::new();
    let mut acts = Vec::new();
    for (at, f, ps, g) in &doc.acts {
        let fm = mor(f)?;
        if ps.len() != arity(fm) {
            return Err(ctx.semantic(
                at,
                format!(
                    "permutation of {} positions on a morphism of arity {}",
                    ps.len(),
                    arity(fm)
                ),
            ));
        }
        let sigma = Perm::from_images(ps.clone()).expect("checked while parsing");
        if sigma.is_identity() {
            return Err(ctx.semantic(
                at,
                "the identity permutation acts trivially and is not written",
            ));
        }
        let key = (fm, ps.clone());
        if let Some(prev) = act_seen.get(&key) {
            return Err(duplicate(ctx, prev, at, "act entry"));
        }
        act_seen.insert(key, at);
        acts.push((fm, sigma, mor(g)?));
    }
    if !identities {
        let mut action = BTreeMap::new();
        for (f, sigma, g) in acts {
            action.insert((f, sigma), g);
        }
        let objs: Vec<String> = doc.objects.iter().map(|t| t.text.clone()).collect();
        let t = Tables::from_parts(
            doc.name.text.clone(),
            doc.bound,
            objs,
            graph_mors,
            Vec::new(),
            action,
            BTreeMap::new(),
        );
        return Ok((t, index));
    }
    for ((g, fs), h) in comps {
        b.set_comp(g, fs, h);
    }
    for (f, sigma, g) in acts {
        b.set_action(f, sigma, g);
    }
    let built = b.build();
    let remapped = index
        .into_iter()
        .map(|(k, v)| (k, built.morphisms[v]))
        .collect();
    Ok((built.tables, remapped))
}

fn decl_tok<'d>(doc: &'d RawDoc, name: &str) -> &'d Tok {
    doc.mors
        .iter()
        .find(|m| m.name.text == name)
        .map(|m| &m.name)
        .unwrap_or(&doc.header)
}

/// Every composable tuple has a composite and, when symmetric, every
/// non-identity permutation acts on every morphism.
fn check_closure(
    ctx: &Ctx,
    doc: &RawDoc,
    t: &Tables,
    symmetric: bool,
    composition: bool,
) -> Result<(), ParseError> {
    for g in 0..t.morphism_count() {
        if composition {
            for fs in t.composable_tuples(g) {
                if t.comp(g, &fs).is_none() {
                    let names: Vec<&str> = fs.iter().map(|&f| t.morphism_name(f)).collect();
                    return Err(ctx.semantic(
                        decl_tok(doc, t.morphism_name(g)),
                        format!(
                            "missing composite `comp {} ({})`",
                            t.morphism_name(g),
                            names.join(" ")
                        ),
                    ));
                }
            }
        }
        if symmetric {
            for sigma in Perm::non_identity(t.arity(g)) {
                if t.act(&sigma, g).is_none() {
                    let ps: Vec<String> =
                        sigma.images().iter().map(|i| (i + 1).to_string()).collect();
                    return Err(ctx.semantic(
                        decl_tok(doc, t.morphism_name(g)),
                        format!(
                            "missing action `act {} ({})`",
                            t.morphism_name(g),
                            ps.join(" ")
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn resolve_map<S: Structure>(
    ctx: &Ctx,
    doc: &RawDoc,
    src: &Arc<S>,
    tgt: &Arc<S>,
) -> Result<Map<S>, ParseError> {
    let (s, t) = (src.tables(), tgt.tables());
    let mut objects = vec![usize::MAX; s.object_count()];
    let mut seen: HashMap<&str, &Tok> = HashMap::new();
    for (a, b) in &doc.map_objects {
        let x = s
            .object_index(&a.text)
            .ok_or_else(|| ctx.semantic(a, "unknown source object"))?;
        let y = t
            .object_index(&b.text)
            .ok_or_else(|| ctx.semantic(b, "unknown target object"))?;
        if let Some(prev) = seen.insert(&a.text, a) {
            return Err(duplicate(ctx, prev, a, "object mapping"));
        }
        objects[x] = y;
    }
    if let Some(o) = objects.iter().position(|&y| y == usize::MAX) {
        return Err(ctx.semantic(
            &doc.header,
            format!("object `{}` is not mapped", s.object_name(o)),
        ));
    }
    let mut morphisms = vec![usize::MAX; s.morphism_count()];
    let mut seen: HashMap<&str, &Tok> = HashMap::new();
    for (a, b) in &doc.map_mors {
        let x = s
            .morphism_index(&a.text)
            .ok_or_else(|| ctx.semantic(a, "unknown source morphism"))?;
        if s.is_identity(x) {
            return Err(ctx.semantic(a, "identities are implicit and must not be mapped"));
        }
        let y = t
            .morphism_index(&b.text)
            .ok_or_else(|| ctx.semantic(b, "unknown target morphism"))?;
        if let Some(prev) = seen.insert(&a.text, a) {
            return Err(duplicate(ctx, prev, a, "morphism mapping"));
        }
        morphisms[x] = y;
    }
    for o in 0..s.object_count() {
        morphisms[s.identity(o)] = t.identity(objects[o]);
    }
    if let Some(m) = morphisms.iter().position(|&y| y == usize::MAX) {
        return Err(ctx.semantic(
            &doc.header,
            format!("morphism `{}` is not mapped", s.morphism_name(m)),
        ));
    }
    Ok(Map::new(src.clone(), tgt.clone(), objects, morphisms))
}

/// Documents parsed so far; map documents may refer to any structure in
/// the bundle.
#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub documents: Vec<Document>,
}

impl Bundle {
    pub fn new() -> Self {
        Bundle::default()
    }

    pub fn get(&self, name: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.name() == name)
    }

    /// Parses `text` (reported as `source` in errors) and appends its
    /// documents.
    pub fn add_text(&mut self, source: &str, text: &str) -> Result<(), ParseError> {
        let ctx = Ctx { source };
        let raws = parse_raw(&ctx, text)?;
        let mut local: HashMap<String, Tok> = HashMap::new();
        for raw in &raws {
            if let Some(prev) = local.get(&raw.name.text) {
                return Err(duplicate(&ctx, prev, &raw.name, "document name"));
            }
            if self.get(&raw.name.text).is_some() {
                return Err(ctx.semantic(&raw.name, "a document of this name was already loaded"));
            }
            local.insert(raw.name.text.clone(), raw.name.clone());
        }
        let mut maps = Vec::new();
        for raw in &raws {
            let doc = match raw.kind {
                Kind::Category => {
                    let (t, _) = resolve_tables(&ctx, raw)?;
                    check_closure(&ctx, raw, &t, false, true)?;
                    Document::Category(Arc::new(FiniteCategory::from_tables(t)))
                }
                Kind::Multicat => {
                    let (t, _) = resolve_tables(&ctx, raw)?;
                    check_closure(&ctx, raw, &t, true, true)?;
                    Document::Multicat(Arc::new(Multicat::from_tables(t)))
                }
                Kind::Multigraph => {
                    let (t, _) = resolve_tables(&ctx, raw)?;
                    check_closure(&ctx, raw, &t, raw.symmetric, false)?;
                    let mut g = MultiGraph::new(t.name(), t.bound(), t.objects().to_vec());
                    g.symmetric = raw.symmetric;
                    g.morphisms = t.morphisms().to_vec();
                    g.action = t.action_table().clone();
                    g.canonicalize();
                    Document::Multigraph(Arc::new(g))
                }
                Kind::Functor | Kind::Multifunctor => {
                    maps.push(raw);
                    continue;
                }
            };
            self.documents.push(doc);
        }
        for raw in maps {
            let (s, t) = raw.ends.as_ref().expect("map headers have ends");
            let find = |tok: &Tok| {
                self.get(&tok.text)
                    .ok_or_else(|| ctx.semantic(tok, "unknown document"))
            };
            let doc = match (raw.kind, find(s)?, find(t)?) {
                (Kind::Functor, Document::Category(a), Document::Category(b)) => {
                    Document::Functor(raw.name.text.clone(), resolve_map(&ctx, raw, a, b)?)
                }
                (Kind::Multifunctor, Document::Multicat(a), Document::Multicat(b)) => {
                    Document::Multifunctor(raw.name.text.clone(), resolve_map(&ctx, raw, a, b)?)
                }
                (Kind::Functor, ..) => {
                    return Err(ctx.semantic(&raw.header, "a functor goes between categories"))
                }
                _ => return Err(ctx.semantic(&raw.header, "a multifunctor goes between multicats")),
            };
            self.documents.push(doc);
        }
        Ok(())
    }
}

/// Parses a self-contained text.
pub fn parse(text: &str) -> Result<Vec<Document>, ParseError> {
    let mut b = Bundle::new();
    b.add_text("<input>", text)?;
    Ok(b.documents)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintError(pub String);

impl fmt::Display for PrintError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot print token `{}`", self.0)
    }
}

impl std::error::Error for PrintError {}

fn tok(s: &str) -> Result<&str, PrintError> {
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || is_special(c)) {
        Err(PrintError(s.to_string()))
    } else {
        Ok(s)
    }
}

fn print_tables(
    out: &mut String,
    header: String,
    t: &Tables,
    category: bool,
    composition: bool,
    identities: bool,
) -> Result<(), PrintError> {
    use fmt::Write;
    writeln!(out, "{header}").unwrap();
    for o in t.objects() {
        writeln!(out, "object {}", tok(o)?).unwrap();
    }
    for (m, d) in t.morphisms().iter().enumerate() {
        if identities && t.is_identity(m) {
            continue;
        }
        let output = tok(t.object_name(d.sig.output))?;
        if category && d.sig.arity() == 1 {
            writeln!(
                out,
                "mor {} : {} -> {output}",
                tok(&d.name)?,
                tok(t.object_name(d.sig.inputs[0]))?
            )
            .unwrap();
        } else {
            let ins = d
                .sig
                .inputs
                .iter()
                .map(|&o| tok(t.object_name(o)))
                .collect::<Result<Vec<_>, _>>()?;
            writeln!(
                out,
                "mor {} : ({}) -> {output}",
                tok(&d.name)?,
                ins.join(",")
            )
            .unwrap();
        }
    }
    if composition {
        for ((g, fs), &h) in t.comp_table() {
            let implied = (t.is_identity(*g) && fs.len() == 1 && fs[0] == h)
                || (h == *g
                    && fs
                        .iter()
                        .zip(&t.sig(*g).inputs)
                        .all(|(&f, &a)| t.identities().get(a) == Some(&f))
                    && fs.len() == t.arity(*g));
            if implied {
                continue;
            }
            let fs = fs
                .iter()
                .map(|&f| tok(t.morphism_name(f)))
                .collect::<Result<Vec<_>, _>>()?;
            writeln!(
                out,
                "comp {} ({}) = {}",
                tok(t.morphism_name(*g))?,
                fs.join(" "),
                tok(t.morphism_name(h))?
            )
            .unwrap();
        }
    }
    for ((f, sigma), &g) in t.action_table() {
        let ps: Vec<String> = sigma.images().iter().map(|i| (i + 1).to_string()).collect();
        writeln!(
            out,
            "act {} ({}) = {}",
            tok(t.morphism_name(*f))?,
            ps.join(" "),
            tok(t.morphism_name(g))?
        )
        .unwrap();
    }
    Ok(())
}

fn print_map<S: Structure>(
    out: &mut String,
    kind: &str,
    name: &str,
    f: &Map<S>,
) -> Result<(), PrintError> {
    use fmt::Write;
    let (s, t) = (f.src(), f.tgt());
    writeln!(
        out,
        "{kind} {} : {} -> {}",
        tok(name)?,
        tok(s.name())?,
        tok(t.name())?
    )
    .unwrap();
    for (x, &y) in f.objects.iter().enumerate() {
        writeln!(
            out,
            "map object {} -> {}",
            tok(s.object_name(x))?,
            tok(t.object_name(y))?
        )
        .unwrap();
    }
    for (x, &y) in f.morphisms.iter().enumerate() {
        if !s.is_identity(x) {
            writeln!(
                out,
                "map mor {} -> {}",
                tok(s.morphism_name(x))?,
                tok(t.morphism_name(y))?
            )
            .unwrap();
        }
    }
    Ok(())
}

/// Canonical text of one document.
pub fn print(doc: &Document) -> Result<String, PrintError> {
    let mut out = String::new();
    match doc {
        Document::Category(c) => print_tables(
            &mut out,
            format!("category {}", tok(c.name())?),
            c.tables(),
            true,
            true,
            true,
        )?,
        Document::Multicat(m) => print_tables(
            &mut out,
            format!("multicat {} truncation {}", tok(m.name())?, m.bound()),
            m.tables(),
            false,
            true,
            true,
        )?,
        Document::Multigraph(g) => {
            let sym = if g.symmetric { " symmetric" } else { "" };
            let action = if g.symmetric {
                g.action.clone()
            } else {
                BTreeMap::new()
            };
            let t = Tables::from_parts(
                g.name.clone(),
                g.bound,
                g.objects.clone(),
                g.morphisms.clone(),
                Vec::new(),
                action,
                BTreeMap::new(),
            );
            print_tables(
                &mut out,
                format!("multigraph {} truncation {}{sym}", tok(&g.name)?, g.bound),
                &t,
                false,
                false,
                false,
            )?
        }
        Document::Functor(n, f) => print_map(&mut out, "functor", n, f)?,
        Document::Multifunctor(n, f) => print_map(&mut out, "multifunctor", n, f)?,
    }
    Ok(out)
}

/// Canonical text of several documents, separated by blank lines.
pub fn print_all(docs: &[Document]) -> Result<String, PrintError> {
    let parts = docs.iter().map(print).collect::<Result<Vec<_>, _>>()?;
    Ok(parts.join("\n"))
}

pub fn category_doc(c: &FiniteCategory) -> Document {
    Document::Category(Arc::new(c.clone()))
}

pub fn multicat_doc(m: &Multicat) -> Document {
    Document::Multicat(Arc::new(m.clone()))
}
