//! Prompt templating: turns a query term plus taxonomy context into a
//! natural-language sentence, keeping a token-level span map from every term
//! mention back to its node so labeling decisions can be projected onto the
//! tree.
//!
//! A template pattern names a hypernym slot `Y` and up to two hyponym slots
//! `X` and `Z` ("Y such as X and Z"). Rendering with a single hyponym drops
//! the Z part; rendering with more than two repeats it. The five shipped
//! templates can be extended through a plain-text template file without code
//! changes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::taxonomy::{LocalContext, NodeId, Taxonomy, TermNode};

/// Separator used by the pair-wise rendering and by the no-prompt ablation.
pub const SEPARATOR: &str = "\u{27e8}SEP\u{27e9}"; // ⟨SEP⟩

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PromptError {
    #[error("unknown template name {0:?}")]
    UnknownTemplate(String),
    #[error("template {name:?} has a malformed pattern: {reason}")]
    BadPattern { name: String, reason: String },
    #[error("template file line {line}: expected `name<TAB>pattern`")]
    BadTemplateFile { line: usize },
    #[error("span for {0} does not line up with its surface tokens")]
    SpanMismatch(NodeId),
}

/// Deterministic lowercased tokenization: maximal runs of alphanumeric
/// characters, everything else is a separator.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(|s| s.to_lowercase())
        .collect()
}

/// What a span's node contributes to the sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpanRole {
    /// The term being inserted.
    Query,
    /// A path node above the candidate in stage-one context.
    Context,
    /// The candidate under decision (stage-one parent candidate or stage-two
    /// child candidate).
    Candidate,
    /// The parent the query was attached under (stage two).
    Parent,
    /// A child of a stage-two candidate.
    Grandchild,
}

/// Token range `[start, end)` covering one term mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSpan {
    pub node: NodeId,
    pub start: usize,
    pub end: usize,
    pub role: SpanRole,
}

/// Which pipeline step produced a sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SentenceRole {
    Stage1,
    Stage2Pwc,
    Stage2Mnl,
}

/// A generated sentence plus the node-to-token-span map.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedSentence {
    pub text: String,
    /// Tokens of `text` under [`tokenize`]; cached because every scorer needs
    /// them.
    pub tokens: Vec<String>,
    pub spans: Vec<TokenSpan>,
    pub role: SentenceRole,
}

impl RenderedSentence {
    /// Spans with a given role, in text order.
    pub fn spans_with_role(&self, role: SpanRole) -> impl Iterator<Item = &TokenSpan> {
        self.spans.iter().filter(move |s| s.role == role)
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }
}

// Incremental sentence assembly; records the token index before and after
// each term mention so spans never have to be re-discovered by searching.
struct SentenceBuilder {
    text: String,
    spans: Vec<TokenSpan>,
    // nodes that already own a span; later mentions are not re-recorded
    seen: BTreeMap<NodeId, ()>,
}

impl SentenceBuilder {
    fn new() -> Self {
        Self {
            text: String::new(),
            spans: Vec::new(),
            seen: BTreeMap::new(),
        }
    }

    fn lit(&mut self, s: &str) {
        self.text.push_str(s);
    }

    fn term(&mut self, node: NodeId, surface: &str, role: SpanRole) -> Result<(), PromptError> {
        let start = tokenize(&self.text).len();
        self.text.push_str(surface);
        let end = tokenize(&self.text).len();
        if self.seen.contains_key(&node) {
            return Ok(());
        }
        // the mention must tokenize exactly like the bare surface; a custom
        // pattern gluing a slot to adjacent letters would break this
        if end - start != tokenize(surface).len() {
            return Err(PromptError::SpanMismatch(node));
        }
        self.seen.insert(node, ());
        self.spans.push(TokenSpan {
            node,
            start,
            end,
            role,
        });
        Ok(())
    }

    fn finish(self, role: SentenceRole) -> RenderedSentence {
        let tokens = tokenize(&self.text);
        debug_assert!(self.spans.iter().all(|s| s.end <= tokens.len()));
        RenderedSentence {
            text: self.text,
            tokens,
            spans: self.spans,
            role,
        }
    }
}

// ---------------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------------

// A pattern split into literal pieces and slots.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Piece {
    Lit(String),
    Hypernym,      // Y
    FirstHyponym,  // X
    ExtraHyponym,  // Z
}

/// One named prompt pattern, e.g. `including` = "Y including X and Z".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplate {
    pub name: String,
    pub pattern: String,
    // the X part, rendered once
    head: Vec<Piece>,
    // the Z part, repeated for each hyponym beyond the first (empty when the
    // pattern has no Z slot)
    tail: Vec<Piece>,
}

fn split_slots(pattern: &str) -> Vec<Piece> {
    let mut pieces = Vec::new();
    let mut lit = String::new();
    let chars: Vec<char> = pattern.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        let standalone = matches!(c, 'X' | 'Y' | 'Z')
            && !chars.get(i.wrapping_sub(1)).is_some_and(|p| p.is_alphanumeric())
            && !chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
        if standalone {
            if !lit.is_empty() {
                pieces.push(Piece::Lit(std::mem::take(&mut lit)));
            }
            pieces.push(match c {
                'Y' => Piece::Hypernym,
                'X' => Piece::FirstHyponym,
                _ => Piece::ExtraHyponym,
            });
        } else {
            lit.push(c);
        }
    }
    if !lit.is_empty() {
        pieces.push(Piece::Lit(lit));
    }
    pieces
}

impl PromptTemplate {
    pub fn parse(name: &str, pattern: &str) -> Result<Self, PromptError> {
        let bad = |reason: &str| PromptError::BadPattern {
            name: name.to_string(),
            reason: reason.to_string(),
        };
        let pieces = split_slots(pattern);
        let n_x = pieces.iter().filter(|p| **p == Piece::FirstHyponym).count();
        let n_z = pieces.iter().filter(|p| **p == Piece::ExtraHyponym).count();
        let n_y = pieces.iter().filter(|p| **p == Piece::Hypernym).count();
        if n_x != 1 {
            return Err(bad("needs exactly one X slot"));
        }
        if n_z > 1 {
            return Err(bad("needs at most one Z slot"));
        }
        if n_y == 0 {
            return Err(bad("needs a Y slot"));
        }

        // Split off the Z part at the `, and ` / ` and ` joiner right before
        // the Z slot; that part is dropped for one hyponym and repeated for
        // three or more.
        let (head, tail) = if n_z == 1 {
            let z_at = pieces
                .iter()
                .position(|p| *p == Piece::ExtraHyponym)
                .expect("counted above");
            if z_at == 0 {
                return Err(bad("Z slot cannot open the pattern"));
            }
            let Piece::Lit(before) = &pieces[z_at - 1] else {
                return Err(bad("Z slot must follow an `and` joiner"));
            };
            let cut = before
                .rfind(", and ")
                .or_else(|| before.rfind(" and "))
                .ok_or_else(|| bad("Z slot must follow an `and` joiner"))?;
            let mut head: Vec<Piece> = pieces[..z_at - 1].to_vec();
            if cut > 0 {
                head.push(Piece::Lit(before[..cut].to_string()));
            }
            let mut tail = vec![Piece::Lit(before[cut..].to_string())];
            tail.extend(pieces[z_at..].iter().cloned());
            (head, tail)
        } else {
            (pieces, Vec::new())
        };
        if !head.iter().any(|p| *p == Piece::FirstHyponym) {
            return Err(bad("X slot must precede the Z slot"));
        }

        Ok(Self {
            name: name.to_string(),
            pattern: pattern.to_string(),
            head,
            tail,
        })
    }

    /// Renders one clause relating a hypernym to one or more hyponyms into
    /// `out`. Slots marked with node ids get token spans.
    fn clause(
        &self,
        out: &mut SentenceBuilder,
        hypernym: (&str, Option<(NodeId, SpanRole)>),
        hyponyms: &[(&str, Option<(NodeId, SpanRole)>)],
    ) -> Result<(), PromptError> {
        assert!(!hyponyms.is_empty(), "clause needs at least one hyponym");
        let emit = |out: &mut SentenceBuilder,
                    (surface, tag): (&str, Option<(NodeId, SpanRole)>)|
         -> Result<(), PromptError> {
            match tag {
                Some((node, role)) => out.term(node, surface, role),
                None => {
                    out.lit(surface);
                    Ok(())
                }
            }
        };
        for piece in &self.head {
            match piece {
                Piece::Lit(s) => out.lit(s),
                Piece::Hypernym => emit(out, hypernym)?,
                Piece::FirstHyponym => emit(out, hyponyms[0])?,
                Piece::ExtraHyponym => unreachable!("Z never appears in the head"),
            }
        }
        for &extra in &hyponyms[1..] {
            if self.tail.is_empty() {
                // pattern without a Z slot: fall back to a plain `and` join
                out.lit(" and ");
                emit(out, extra)?;
                continue;
            }
            for piece in &self.tail {
                match piece {
                    Piece::Lit(s) => out.lit(s),
                    Piece::Hypernym => emit(out, hypernym)?,
                    Piece::ExtraHyponym => emit(out, extra)?,
                    Piece::FirstHyponym => unreachable!("X never appears in the tail"),
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PromptTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.name, self.pattern)
    }
}

/// An ordered, name-addressable collection of templates.
#[derive(Debug, Clone)]
pub struct TemplateSet {
    templates: Vec<PromptTemplate>,
}

impl TemplateSet {
    /// The five built-in patterns.
    pub fn builtin() -> Self {
        let defs = [
            ("such-as", "Y such as X and Z"),
            ("one-of", "X is one of Y, and Z is one of Y"),
            ("especially", "Y, especially X and Z"),
            ("is-a", "X is a Y, and Z is a Y"),
            ("including", "Y including X and Z"),
        ];
        Self {
            templates: defs
                .iter()
                .map(|(n, p)| PromptTemplate::parse(n, p).expect("built-in patterns are valid"))
                .collect(),
        }
    }

    /// Parses a template file: `name<TAB>pattern` per line, `#` comments.
    pub fn from_text(text: &str) -> Result<Self, PromptError> {
        let mut templates = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (name, pattern) = line
                .split_once('\t')
                .ok_or(PromptError::BadTemplateFile { line: i + 1 })?;
            templates.push(PromptTemplate::parse(name.trim(), pattern.trim())?);
        }
        if templates.is_empty() {
            return Err(PromptError::BadTemplateFile { line: 0 });
        }
        Ok(Self { templates })
    }

    pub fn get(&self, name: &str) -> Result<&PromptTemplate, PromptError> {
        self.templates
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| PromptError::UnknownTemplate(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.templates.iter().map(|t| t.name.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = &PromptTemplate> {
        self.templates.iter()
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Stage-one rendering
// ---------------------------------------------------------------------------

/// Clause direction for stage-one sentences.
///
/// `TopDown` follows the worked example from the method this implements: the
/// query takes the hypernym position and the chain descends through the
/// context ("Social Science including Anthropology, and Anthropology
/// including Archeology"). `BottomUp` renders the conventional direction
/// instead, with the query as the deepest hyponym.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClauseDirection {
    #[default]
    TopDown,
    BottomUp,
}

/// Renders the stage-one sentence for query `q` against the local context of
/// one candidate parent. The context holds one or two nodes, deepest last;
/// the deepest node is the candidate and carries the `Candidate` span role.
pub fn render_stage1(
    t: &Taxonomy,
    q: &TermNode,
    ctx: &LocalContext,
    tpl: &PromptTemplate,
    direction: ClauseDirection,
) -> Result<RenderedSentence, PromptError> {
    let mut out = SentenceBuilder::new();
    let query = (q.surface.as_str(), Some((q.id, SpanRole::Query)));
    let node = |id: NodeId, role: SpanRole| (t.surface(id), Some((id, role)));

    // chain of (hypernym, hyponym) clauses joined by ", and "
    let chain: Vec<[(&str, Option<(NodeId, SpanRole)>); 2]> = match (ctx.nodes(), direction) {
        ([c], ClauseDirection::TopDown) => {
            vec![[query, node(*c, SpanRole::Candidate)]]
        }
        ([c], ClauseDirection::BottomUp) => {
            vec![[node(*c, SpanRole::Candidate), query]]
        }
        ([upper, c], ClauseDirection::TopDown) => vec![
            [query, node(*upper, SpanRole::Context)],
            [node(*upper, SpanRole::Context), node(*c, SpanRole::Candidate)],
        ],
        ([upper, c], ClauseDirection::BottomUp) => vec![
            [node(*upper, SpanRole::Context), node(*c, SpanRole::Candidate)],
            [node(*c, SpanRole::Candidate), query],
        ],
        _ => unreachable!("local context holds one or two nodes"),
    };

    for (i, [hyper, hypo]) in chain.iter().enumerate() {
        if i > 0 {
            out.lit(", and ");
        }
        tpl.clause(&mut out, *hyper, &[*hypo])?;
    }
    Ok(out.finish(SentenceRole::Stage1))
}

/// No-prompt ablation of [`render_stage1`]: the same terms in the same
/// order, joined by the separator token instead of template text.
pub fn render_stage1_plain(t: &Taxonomy, q: &TermNode, ctx: &LocalContext) -> RenderedSentence {
    let mut out = SentenceBuilder::new();
    out.term(q.id, &q.surface, SpanRole::Query)
        .expect("separator-joined mentions always line up");
    for (i, &id) in ctx.nodes().iter().enumerate() {
        out.lit(&format!(" {SEPARATOR} "));
        let role = if i + 1 == ctx.nodes().len() {
            SpanRole::Candidate
        } else {
            SpanRole::Context
        };
        out.term(id, t.surface(id), role)
            .expect("separator-joined mentions always line up");
    }
    out.finish(SentenceRole::Stage1)
}

// ---------------------------------------------------------------------------
// Stage-two rendering
// ---------------------------------------------------------------------------

/// Context for the joint multiple-nodes labeling sentence: the query, the
/// parent it was attached under, the parent's current children (the
/// candidates), and each candidate's own children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnlContext {
    pub query: TermNode,
    pub parent: NodeId,
    pub candidates: Vec<NodeId>,
    pub grandchildren: BTreeMap<NodeId, Vec<NodeId>>,
}

impl MnlContext {
    /// Collects the context from the taxonomy. `include_grandchildren`
    /// is switched off by the no-grandchild ablation.
    pub fn collect(
        t: &Taxonomy,
        query: TermNode,
        parent: NodeId,
        include_grandchildren: bool,
    ) -> Self {
        let candidates: Vec<NodeId> = t.children_of(parent).to_vec();
        let grandchildren = candidates
            .iter()
            .map(|&c| {
                let gs = if include_grandchildren {
                    t.children_of(c).to_vec()
                } else {
                    Vec::new()
                };
                (c, gs)
            })
            .collect();
        Self {
            query,
            parent,
            candidates,
            grandchildren,
        }
    }
}

/// Renders the unified stage-two sentence: the query surface, a clause
/// placing the query under its parent, then one clause per candidate. A
/// candidate with children is expanded as "<candidate>, and it <pattern over
/// its children>"; one without appears bare.
pub fn render_mnl(
    t: &Taxonomy,
    ctx: &MnlContext,
    tpl: &PromptTemplate,
) -> Result<RenderedSentence, PromptError> {
    let mut out = SentenceBuilder::new();
    out.term(ctx.query.id, &ctx.query.surface, SpanRole::Query)?;
    out.lit(". ");
    tpl.clause(
        &mut out,
        (t.surface(ctx.parent), Some((ctx.parent, SpanRole::Parent))),
        &[(ctx.query.surface.as_str(), Some((ctx.query.id, SpanRole::Query)))],
    )?;
    for &c in &ctx.candidates {
        out.lit(". ");
        out.term(c, t.surface(c), SpanRole::Candidate)?;
        let grands = ctx.grandchildren.get(&c).map(Vec::as_slice).unwrap_or(&[]);
        if !grands.is_empty() {
            out.lit(", and ");
            let hyponyms: Vec<(&str, Option<(NodeId, SpanRole)>)> = grands
                .iter()
                .map(|&g| (t.surface(g), Some((g, SpanRole::Grandchild))))
                .collect();
            tpl.clause(&mut out, ("it", None), &hyponyms)?;
        }
    }
    Ok(out.finish(SentenceRole::Stage2Mnl))
}

/// No-prompt ablation of [`render_mnl`]: the same terms in the same order,
/// separator-joined.
pub fn render_mnl_plain(t: &Taxonomy, ctx: &MnlContext) -> RenderedSentence {
    let mut out = SentenceBuilder::new();
    let sep = format!(" {SEPARATOR} ");
    out.term(ctx.query.id, &ctx.query.surface, SpanRole::Query)
        .expect("separator-joined mentions always line up");
    out.lit(&sep);
    out.term(ctx.parent, t.surface(ctx.parent), SpanRole::Parent)
        .expect("separator-joined mentions always line up");
    for &c in &ctx.candidates {
        out.lit(&sep);
        out.term(c, t.surface(c), SpanRole::Candidate)
            .expect("separator-joined mentions always line up");
        for &g in ctx.grandchildren.get(&c).map(Vec::as_slice).unwrap_or(&[]) {
            out.lit(&sep);
            out.term(g, t.surface(g), SpanRole::Grandchild)
                .expect("separator-joined mentions always line up");
        }
    }
    out.finish(SentenceRole::Stage2Mnl)
}

/// Renders the pair-wise classification input: the two surfaces joined by
/// the separator token.
pub fn render_pwc(q: &TermNode, candidate: &TermNode) -> RenderedSentence {
    let mut out = SentenceBuilder::new();
    out.term(q.id, &q.surface, SpanRole::Query)
        .expect("separator-joined mentions always line up");
    out.lit(&format!(" {SEPARATOR} "));
    out.term(candidate.id, &candidate.surface, SpanRole::Candidate)
        .expect("separator-joined mentions always line up");
    out.finish(SentenceRole::Stage2Pwc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy::{local_context, Taxonomy};

    fn fig_tree() -> Taxonomy {
        let edges: Vec<(String, String)> = [
            ("Natural Science", "Science"),
            ("Anthropology", "Science"),
            ("Civics", "Science"),
            ("Chemistry", "Natural Science"),
            ("Physics", "Natural Science"),
            ("Archeology", "Anthropology"),
        ]
        .iter()
        .map(|(c, p)| (c.to_string(), p.to_string()))
        .collect();
        Taxonomy::build(&edges).unwrap()
    }

    fn query(t: &Taxonomy, surface: &str) -> TermNode {
        TermNode::new(t.next_id(), surface).unwrap()
    }

    #[test]
    fn tokenize_lowercases_and_splits() {
        assert_eq!(
            tokenize("Social Science including Anthropology"),
            ["social", "science", "including", "anthropology"]
        );
        assert_eq!(tokenize(""), Vec::<String>::new());
        assert_eq!(tokenize("rock 'n' roll!"), ["rock", "n", "roll"]);
    }

    #[test]
    fn multi_token_surfaces_cover_multiple_tokens() {
        // oracle: span width equals the whitespace-split width of the surface
        for surface in ["social media", "long short term memory", "ph"] {
            let t = fig_tree();
            let q = query(&t, surface);
            let c = t.node(t.find_surface("Civics").unwrap()).unwrap();
            let s = render_pwc(&q, c);
            let span = s.spans_with_role(SpanRole::Query).next().unwrap();
            assert_eq!(span.end - span.start, surface.split_whitespace().count());
        }
    }

    #[test]
    fn stage1_matches_worked_example() {
        let t = fig_tree();
        let q = query(&t, "Social Science");
        let arch = t.find_surface("Archeology").unwrap();
        let ctx = local_context(&t.path_of(arch).unwrap());
        let tplset = TemplateSet::builtin();
        let s = render_stage1(&t, &q, &ctx, tplset.get("including").unwrap(), ClauseDirection::TopDown)
            .unwrap();
        assert_eq!(
            s.text,
            "Social Science including Anthropology, and Anthropology including Archeology"
        );
        // the candidate itself (deepest context node) carries the Candidate role
        let cand = s.spans_with_role(SpanRole::Candidate).next().unwrap();
        assert_eq!(cand.node, arch);
        assert_eq!(&s.tokens[cand.start..cand.end], ["archeology"]);
    }

    #[test]
    fn stage1_single_context_reduces_template() {
        let t = Taxonomy::build(&[("X".to_string(), "R".to_string())]).unwrap();
        let q = query(&t, "Y");
        let x = t.find_surface("X").unwrap();
        let ctx = local_context(&t.path_of(x).unwrap());
        let tplset = TemplateSet::builtin();
        let s = render_stage1(&t, &q, &ctx, tplset.get("such-as").unwrap(), ClauseDirection::TopDown)
            .unwrap();
        assert_eq!(s.text, "Y such as X");
    }

    #[test]
    fn stage1_bottom_up_reverses_chain() {
        let t = fig_tree();
        let q = query(&t, "Social Science");
        let arch = t.find_surface("Archeology").unwrap();
        let ctx = local_context(&t.path_of(arch).unwrap());
        let tplset = TemplateSet::builtin();
        let s = render_stage1(&t, &q, &ctx, tplset.get("including").unwrap(), ClauseDirection::BottomUp)
            .unwrap();
        assert_eq!(
            s.text,
            "Anthropology including Archeology, and Archeology including Social Science"
        );
    }

    #[test]
    fn stage1_spans_echo_surfaces() {
        let t = fig_tree();
        let q = query(&t, "Social Science");
        let tplset = TemplateSet::builtin();
        for name in ["such-as", "one-of", "especially", "is-a", "including"] {
            for target in ["Archeology", "Anthropology", "Chemistry"] {
                let id = t.find_surface(target).unwrap();
                let ctx = local_context(&t.path_of(id).unwrap());
                let s = render_stage1(&t, &q, &ctx, tplset.get(name).unwrap(), ClauseDirection::TopDown)
                    .unwrap();
                for span in &s.spans {
                    let expect = if span.node == q.id {
                        q.surface.clone()
                    } else {
                        t.surface(span.node).to_string()
                    };
                    assert_eq!(
                        s.tokens[span.start..span.end],
                        tokenize(&expect),
                        "template {name}, span of {expect:?} in {:?}",
                        s.text
                    );
                }
            }
        }
    }

    #[test]
    fn unknown_template_errors() {
        let tplset = TemplateSet::builtin();
        assert!(matches!(
            tplset.get("made-up"),
            Err(PromptError::UnknownTemplate(_))
        ));
        assert_eq!(tplset.len(), 5);
    }

    #[test]
    fn mnl_matches_worked_example() {
        let t = fig_tree();
        let q = query(&t, "Social Science");
        let tplset = TemplateSet::builtin();
        let ctx = MnlContext::collect(&t, q, t.root(), true);
        let s = render_mnl(&t, &ctx, tplset.get("including").unwrap()).unwrap();
        assert!(
            s.text
                .contains("Natural Science, and it including Chemistry and Physics"),
            "got {:?}",
            s.text
        );
        // candidates without children appear bare, in candidate order
        let cands: Vec<&str> = s
            .spans_with_role(SpanRole::Candidate)
            .map(|sp| t.surface(sp.node))
            .collect();
        assert_eq!(cands, ["Natural Science", "Anthropology", "Civics"]);
        let grands: Vec<&str> = s
            .spans_with_role(SpanRole::Grandchild)
            .map(|sp| t.surface(sp.node))
            .collect();
        assert_eq!(grands, ["Chemistry", "Physics"]);
    }

    #[test]
    fn mnl_without_grandchildren_degenerates_to_bare_candidates() {
        let t = Taxonomy::build(&[
            ("a".to_string(), "r".to_string()),
            ("b".to_string(), "r".to_string()),
        ])
        .unwrap();
        let q = query(&t, "q");
        let tplset = TemplateSet::builtin();
        let ctx = MnlContext::collect(&t, q, t.root(), true);
        let s = render_mnl(&t, &ctx, tplset.get("including").unwrap()).unwrap();
        assert_eq!(s.text, "q. r including q. a. b");
    }

    #[test]
    fn mnl_empty_candidates_renders_query_and_parent_only() {
        let t = fig_tree();
        let chem = t.find_surface("Chemistry").unwrap();
        let q = query(&t, "q");
        let tplset = TemplateSet::builtin();
        let ctx = MnlContext::collect(&t, q, chem, true);
        let s = render_mnl(&t, &ctx, tplset.get("including").unwrap()).unwrap();
        assert_eq!(s.text, "q. Chemistry including q");
        assert_eq!(s.spans_with_role(SpanRole::Candidate).count(), 0);
    }

    #[test]
    fn pwc_joins_surfaces_with_separator() {
        let t = fig_tree();
        let q = query(&t, "Social Science");
        let anth = t.node(t.find_surface("Anthropology").unwrap()).unwrap();
        let s = render_pwc(&q, anth);
        assert_eq!(s.text, "Social Science \u{27e8}SEP\u{27e9} Anthropology");
        assert_eq!(s.text.matches(SEPARATOR).count(), 1);
        assert_eq!(s.spans.len(), 2);

        // identical surfaces still render
        let same = render_pwc(&q, &TermNode::new(NodeId(99), "Social Science").unwrap());
        assert_eq!(
            same.text,
            "Social Science \u{27e8}SEP\u{27e9} Social Science"
        );
    }

    #[test]
    fn plain_renderings_keep_span_coverage() {
        let t = fig_tree();
        let q = query(&t, "Social Science");
        let arch = t.find_surface("Archeology").unwrap();
        let ctx = local_context(&t.path_of(arch).unwrap());
        let tplset = TemplateSet::builtin();
        let prompted =
            render_stage1(&t, &q, &ctx, tplset.get("including").unwrap(), ClauseDirection::TopDown)
                .unwrap();
        let plain = render_stage1_plain(&t, &q, &ctx);
        let nodes = |s: &RenderedSentence| {
            let mut v: Vec<NodeId> = s.spans.iter().map(|sp| sp.node).collect();
            v.sort();
            v
        };
        assert_eq!(nodes(&prompted), nodes(&plain));
        assert!(plain.text.contains(SEPARATOR));

        let mctx = MnlContext::collect(&t, query(&t, "Social Science"), t.root(), true);
        let prompted = render_mnl(&t, &mctx, tplset.get("including").unwrap()).unwrap();
        let plain = render_mnl_plain(&t, &mctx);
        assert_eq!(nodes(&prompted), nodes(&plain));
    }

    #[test]
    fn template_file_round_trip() {
        let builtin = TemplateSet::builtin();
        let text: String = builtin
            .iter()
            .map(|t| format!("{}\n", t))
            .collect();
        let parsed = TemplateSet::from_text(&text).unwrap();
        assert_eq!(
            parsed.names().collect::<Vec<_>>(),
            builtin.names().collect::<Vec<_>>()
        );
        for (a, b) in parsed.iter().zip(builtin.iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn template_patterns_validate() {
        assert!(PromptTemplate::parse("bad", "Y with nothing").is_err());
        assert!(PromptTemplate::parse("bad", "X only").is_err());
        assert!(PromptTemplate::parse("bad", "Y has X plus Z").is_err()); // no `and` joiner
        assert!(PromptTemplate::parse("ok", "Y like X").is_ok());
    }

    #[test]
    fn three_hyponyms_repeat_the_tail() {
        let tpl = TemplateSet::builtin();
        let t = fig_tree();
        let mut out = SentenceBuilder::new();
        tpl.get("including")
            .unwrap()
            .clause(
                &mut out,
                ("it", None),
                &[("a", None), ("b", None), ("c", None)],
            )
            .unwrap();
        assert_eq!(out.text, "it including a and b and c");
        let mut out = SentenceBuilder::new();
        tpl.get("one-of")
            .unwrap()
            .clause(
                &mut out,
                ("y", None),
                &[("a", None), ("b", None), ("c", None)],
            )
            .unwrap();
        assert_eq!(out.text, "a is one of y, and b is one of y, and c is one of y");
        let _ = t;
    }
}
