//! Recursive-descent parser with statement-level recovery: a malformed
//! statement is reported and skipped, so one pass collects every diagnostic.

use super::lex::{lex, TokKind, Token};
use super::{
    diag, AgentDecl, Document, SourceDiagnostic, VarDecl, WorldDecl,
};
use crate::model::is_identifier;
use crate::responsibility::Rational;
use crate::ExprAst;
use num_bigint::BigInt;

/// Source position of a construct, used to anchor semantic diagnostics that
/// surface after parsing.
pub(super) type Pos = (usize, usize);

#[derive(Debug, Default)]
pub(super) struct AgentSpans {
    pub pos: Pos,
    pub worlds: Vec<Pos>,
}

#[derive(Debug, Default)]
pub(super) struct Spans {
    pub model: Pos,
    pub decls: Vec<Pos>,
    pub context_entries: Vec<Pos>,
    pub outcome: Pos,
    pub agents: Vec<AgentSpans>,
}

pub(super) struct Parsed {
    pub document: Document,
    pub spans: Spans,
}

/// Words that may open a top-level or block-level statement; recovery skips
/// forward to one of these (or a closing brace).
const STATEMENT_STARTS: &[&str] = &[
    "model",
    "context",
    "outcome",
    "agent",
    "exo",
    "var",
    "action",
    "epistemic",
    "world",
];

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    idx: usize,
    diagnostics: Vec<SourceDiagnostic>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&TokKind> {
        self.tokens.get(self.idx).map(|t| &t.kind)
    }

    fn pos(&self) -> Pos {
        self.tokens
            .get(self.idx)
            .or_else(|| self.tokens.last())
            .map(|t| (t.line, t.column))
            .unwrap_or((1, 1))
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.idx).cloned();
        if tok.is_some() {
            self.idx += 1;
        }
        tok
    }

    fn error_here(&mut self, message: &str) {
        let (line, column) = self.pos();
        self.diagnostics.push(diag(self.src, line, column, message));
    }

    fn expected(&mut self, what: &str) {
        let found = match self.peek() {
            Some(kind) => kind.describe(),
            None => "end of input".into(),
        };
        self.error_here(&format!("expected {what}, found {found}"));
    }

    fn eat(&mut self, kind: &TokKind) -> bool {
        if self.peek() == Some(kind) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokKind) -> bool {
        if self.eat(kind) {
            true
        } else {
            self.expected(&kind.describe());
            false
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(TokKind::Word(w)) if w == word) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect_word(&mut self, word: &str) -> bool {
        if self.eat_word(word) {
            true
        } else {
            self.expected(&format!("`{word}`"));
            false
        }
    }

    /// Skips to the next statement keyword or closing brace.
    fn sync(&mut self) {
        while let Some(kind) = self.peek() {
            match kind {
                TokKind::RBrace => return,
                TokKind::Word(w) if STATEMENT_STARTS.contains(&w.as_str()) => return,
                _ => {
                    self.idx += 1;
                }
            }
        }
    }

    /// Recovery inside a block body: skips to the next recovery point and
    /// reports whether parsing can continue in the current block — the next
    /// token is the closing brace or one of the block's own statement
    /// keywords. A foreign keyword or end of input means the block was left
    /// unterminated and the caller must hand control back.
    fn recover_in_block(&mut self, local: &[&str]) -> bool {
        self.sync();
        match self.peek() {
            Some(TokKind::RBrace) => true,
            Some(TokKind::Word(w)) => local.contains(&w.as_str()),
            _ => false,
        }
    }

    fn identifier(&mut self, what: &str) -> Option<String> {
        match self.peek() {
            Some(TokKind::Word(w)) if is_identifier(w) => {
                let w = w.clone();
                self.idx += 1;
                Some(w)
            }
            _ => {
                self.expected(what);
                None
            }
        }
    }

    /// A value token: an identifier or one of the reserved digits `0`/`1`.
    fn value_token(&mut self) -> Option<String> {
        match self.peek() {
            Some(TokKind::Word(w)) if is_identifier(w) => {
                let w = w.clone();
                self.idx += 1;
                Some(w)
            }
            Some(TokKind::Number(n)) if n == "0" || n == "1" => {
                let n = n.clone();
                self.idx += 1;
                Some(n)
            }
            _ => {
                self.expected("a value (an identifier, `0`, or `1`)");
                None
            }
        }
    }

    fn range(&mut self) -> Option<Vec<String>> {
        self.expect(&TokKind::LBrace).then_some(())?;
        let mut values = Vec::new();
        loop {
            if self.eat(&TokKind::RBrace) {
                return Some(values);
            }
            values.push(self.value_token()?);
            self.eat(&TokKind::Comma);
        }
    }

    // expression grammar: or > and > not > primary

    fn expr(&mut self) -> Option<ExprAst> {
        let mut left = self.and_expr()?;
        while self.eat(&TokKind::Pipe) {
            let right = self.and_expr()?;
            left = ExprAst::or(left, right);
        }
        Some(left)
    }

    fn and_expr(&mut self) -> Option<ExprAst> {
        let mut left = self.unary()?;
        while self.eat(&TokKind::Amp) {
            let right = self.unary()?;
            left = ExprAst::and(left, right);
        }
        Some(left)
    }

    fn unary(&mut self) -> Option<ExprAst> {
        if self.eat(&TokKind::Bang) {
            return Some(ExprAst::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Option<ExprAst> {
        match self.peek().cloned() {
            Some(TokKind::LParen) => {
                self.idx += 1;
                let inner = self.expr()?;
                self.expect(&TokKind::RParen).then_some(())?;
                Some(inner)
            }
            Some(TokKind::Number(n)) if n == "0" || n == "1" => {
                self.idx += 1;
                Some(ExprAst::Lit(n))
            }
            Some(TokKind::Word(w)) if w == "case" => {
                self.error_here("a case expression must be the whole right-hand side");
                None
            }
            Some(TokKind::Word(w)) if is_identifier(&w) => {
                self.idx += 1;
                if self.eat(&TokKind::EqEq) {
                    Some(ExprAst::Is(w, self.value_token()?))
                } else if self.eat(&TokKind::NotEq) {
                    Some(ExprAst::IsNot(w, self.value_token()?))
                } else {
                    Some(ExprAst::Var(w))
                }
            }
            _ => {
                self.expected("an expression");
                None
            }
        }
    }

    /// An equation right-hand side: a case expression or a Boolean
    /// expression.
    fn equation(&mut self) -> Option<ExprAst> {
        if self.eat_word("case") {
            self.expect(&TokKind::LBrace).then_some(())?;
            let mut arms = Vec::new();
            loop {
                if self.eat_word("else") {
                    self.expect(&TokKind::Arrow).then_some(())?;
                    let default = self.value_token()?;
                    self.eat(&TokKind::Comma);
                    self.expect(&TokKind::RBrace).then_some(())?;
                    return Some(ExprAst::Case { arms, default });
                }
                if self.peek() == Some(&TokKind::RBrace) || self.peek().is_none() {
                    self.error_here("a case expression needs a final `else -> value` arm");
                    return None;
                }
                let guard = self.expr()?;
                self.expect(&TokKind::Arrow).then_some(())?;
                let value = self.value_token()?;
                self.eat(&TokKind::Comma);
                arms.push((guard, value));
            }
        } else {
            self.expr()
        }
    }

    /// An exact rational weight: an integer, a decimal (`0.6` is exactly
    /// 3/5), or a fraction of two integers (`9/10`).
    fn weight(&mut self) -> Option<Rational> {
        let text = match self.peek() {
            Some(TokKind::Number(n)) => n.clone(),
            _ => {
                self.expected("a weight");
                return None;
            }
        };
        self.idx += 1;
        let numer = if let Some((int, frac)) = text.split_once('.') {
            let digits: String = format!("{int}{frac}");
            let value: BigInt = digits.parse().unwrap();
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            Rational::new(value, scale)
        } else {
            Rational::from_integer(text.parse().unwrap())
        };
        if self.eat(&TokKind::Slash) {
            match self.peek() {
                Some(TokKind::Number(n)) if !n.contains('.') => {
                    let den: BigInt = n.parse().unwrap();
                    self.idx += 1;
                    if den == BigInt::from(0u32) {
                        self.error_here("weight denominator is zero");
                        return None;
                    }
                    return Some(numer / Rational::from_integer(den));
                }
                _ => {
                    self.expected("an integer denominator");
                    return None;
                }
            }
        }
        Some(numer)
    }

    fn model_block(&mut self, doc: &mut Document, spans: &mut Spans) {
        spans.model = self.pos();
        if !self.expect_word("model") || !self.expect(&TokKind::LBrace) {
            self.sync();
            return;
        }
        loop {
            if self.eat(&TokKind::RBrace) {
                return;
            }
            let pos = self.pos();
            let exo = if self.eat_word("exo") {
                true
            } else if self.eat_word("var") {
                false
            } else {
                self.expected("`exo`, `var`, or `}`");
                if !self.recover_in_block(&["exo", "var"]) {
                    return;
                }
                continue;
            };
            let decl = (|| {
                let name = self.identifier("a variable name")?;
                self.expect_word("in").then_some(())?;
                let range = self.range()?;
                let equation = if exo {
                    if self.peek() == Some(&TokKind::Define) {
                        self.error_here("exogenous variables take values from the context, not an equation");
                        return None;
                    }
                    None
                } else {
                    self.expect(&TokKind::Define).then_some(())?;
                    Some(self.equation()?)
                };
                Some(VarDecl {
                    name,
                    range,
                    equation,
                })
            })();
            match decl {
                Some(decl) => {
                    doc.declarations.push(decl);
                    spans.decls.push(pos);
                    self.eat(&TokKind::Comma);
                }
                None => {
                    if !self.recover_in_block(&["exo", "var"]) {
                        return;
                    }
                }
            }
        }
    }

    fn context_block(&mut self, doc: &mut Document, spans: &mut Spans) {
        if !self.expect_word("context") || !self.expect(&TokKind::LBrace) {
            self.sync();
            return;
        }
        loop {
            if self.eat(&TokKind::RBrace) {
                return;
            }
            if self.peek().is_none() {
                self.expected("`}`");
                return;
            }
            let pos = self.pos();
            let entry = (|| {
                let name = self.identifier("an exogenous variable name")?;
                self.expect(&TokKind::Equals).then_some(())?;
                let value = self.value_token()?;
                Some((name, value))
            })();
            match entry {
                Some(entry) => {
                    doc.context.push(entry);
                    spans.context_entries.push(pos);
                    self.eat(&TokKind::Comma);
                }
                None => {
                    if !self.recover_in_block(&[]) {
                        return;
                    }
                }
            }
        }
    }

    fn outcome_stmt(&mut self, doc: &mut Document, spans: &mut Spans) {
        spans.outcome = self.pos();
        self.idx += 1; // the `outcome` word
        let outcome = (|| {
            let name = self.identifier("an outcome variable")?;
            let value = if self.eat(&TokKind::EqEq) {
                self.value_token()?
            } else {
                "1".to_string()
            };
            Some((name, value))
        })();
        match outcome {
            Some(event) => {
                if doc.outcome.is_some() {
                    let (line, column) = spans.outcome;
                    self.diagnostics
                        .push(diag(self.src, line, column, "duplicate outcome statement"));
                }
                doc.outcome = Some(event);
            }
            None => self.sync(),
        }
    }

    fn world(&mut self) -> Option<WorldDecl> {
        self.expect_word("world").then_some(())?;
        let weight = self.weight()?;
        self.expect(&TokKind::LBrace).then_some(())?;
        let mut overrides = Vec::new();
        let mut equations = Vec::new();
        loop {
            if self.eat(&TokKind::RBrace) {
                return Some(WorldDecl {
                    weight,
                    overrides,
                    equations,
                });
            }
            let name = self.identifier("a variable name or `}`")?;
            if self.eat(&TokKind::Equals) {
                overrides.push((name, self.value_token()?));
            } else if self.eat(&TokKind::Define) {
                equations.push((name, self.equation()?));
            } else {
                self.expected("`=` (context override) or `:=` (replacement equation)");
                return None;
            }
            self.eat(&TokKind::Comma);
        }
    }

    fn agent_decl(&mut self, doc: &mut Document, spans: &mut Spans) {
        let pos = self.pos();
        self.idx += 1; // the `agent` word
        let mut agent_spans = AgentSpans {
            pos,
            worlds: Vec::new(),
        };
        let agent = (|| {
            let name = self.identifier("an agent name")?;
            self.expect(&TokKind::LBrace).then_some(())?;
            self.expect_word("action").then_some(())?;
            let action = self.identifier("an action variable")?;
            self.expect_word("epistemic").then_some(())?;
            self.expect(&TokKind::LBrace).then_some(())?;
            let mut worlds = Vec::new();
            loop {
                if self.eat(&TokKind::RBrace) {
                    break;
                }
                if self.peek().is_none() {
                    self.expected("`world` or `}`");
                    return None;
                }
                agent_spans.worlds.push(self.pos());
                match self.world() {
                    Some(world) => worlds.push(world),
                    None => {
                        agent_spans.worlds.pop();
                        if !self.recover_in_block(&["world"]) {
                            return None;
                        }
                    }
                }
            }
            self.expect(&TokKind::RBrace).then_some(())?;
            Some(AgentDecl {
                name,
                action,
                worlds,
            })
        })();
        match agent {
            Some(agent) => {
                doc.agents.push(agent);
                spans.agents.push(agent_spans);
            }
            None => self.sync(),
        }
    }
}

pub(super) fn parse(src: &str) -> Result<Parsed, Vec<SourceDiagnostic>> {
    let mut diagnostics = Vec::new();
    let tokens = lex(src, &mut diagnostics);
    let mut parser = Parser {
        src,
        tokens,
        idx: 0,
        diagnostics,
    };
    let mut document = Document {
        declarations: Vec::new(),
        context: Vec::new(),
        outcome: None,
        agents: Vec::new(),
    };
    let mut spans = Spans::default();
    parser.model_block(&mut document, &mut spans);
    parser.context_block(&mut document, &mut spans);
    while let Some(kind) = parser.peek() {
        match kind {
            TokKind::Word(w) if w == "outcome" => {
                parser.outcome_stmt(&mut document, &mut spans)
            }
            TokKind::Word(w) if w == "agent" => parser.agent_decl(&mut document, &mut spans),
            _ => {
                parser.expected("`outcome`, `agent`, or end of file");
                parser.next();
                parser.sync();
            }
        }
    }
    if parser.diagnostics.is_empty() {
        Ok(Parsed {
            document,
            spans,
        })
    } else {
        Err(parser.diagnostics)
    }
}
