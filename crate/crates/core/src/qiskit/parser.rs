//! Statement and expression parser for the dialect. Produces a block tree of
//! [`PyDialectStmt`]; lowering to the program model happens in `lower`.

use super::lexer::{PyToken, PyTokenKind, SourceLine};
use super::QiskitError;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Name(String),
    Int(String),
    Float(String),
    Str(String),
    /// `True`, `False`, `None`.
    Constant(String),
    Attribute(Box<Expr>, String),
    Call { func: Box<Expr>, args: Vec<CallArg> },
    Subscript(Box<Expr>, Box<Expr>),
    Binary(Box<Expr>, String, Box<Expr>),
    Negate(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CallArg {
    pub keyword: Option<String>,
    pub value: Expr,
}

impl Expr {
    /// Name of the register a qubit/bit argument refers to: `q` for `q` or
    /// `q[i]`.
    pub fn root_name(&self) -> Option<&str> {
        match self {
            Expr::Name(n) => Some(n),
            Expr::Subscript(base, _) => base.root_name(),
            _ => None,
        }
    }

    /// Visits every expression node, outermost first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Attribute(e, _) | Expr::Negate(e) => e.walk(f),
            Expr::Call { func, args } => {
                func.walk(f);
                for a in args {
                    a.value.walk(f);
                }
            }
            Expr::Subscript(a, b) | Expr::Binary(a, _, b) => {
                a.walk(f);
                b.walk(f);
            }
            _ => {}
        }
    }

    pub fn positional_args(&self) -> Vec<&Expr> {
        match self {
            Expr::Call { args, .. } => args
                .iter()
                .filter(|a| a.keyword.is_none())
                .map(|a| &a.value)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Callee name for `f(...)` or `obj.f(...)`.
    pub fn call_name(&self) -> Option<&str> {
        match self {
            Expr::Call { func, .. } => match func.as_ref() {
                Expr::Name(n) => Some(n),
                Expr::Attribute(_, n) => Some(n),
                _ => None,
            },
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StmtForm {
    Assignment,
    ExpressionCall,
    ForRange,
    IfBlock,
    FuncDef,
    Print,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtParts {
    Assign { target: String, value: Expr },
    Expr(Expr),
    For { var: String, range: Expr },
    If { condition: Expr },
    Def { name: String, params: Vec<String> },
    Print(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PyDialectStmt {
    pub form: StmtForm,
    pub line: usize,
    pub column: usize,
    pub indent: usize,
    pub parts: StmtParts,
    pub body: Vec<PyDialectStmt>,
}

/// Builds the block tree from counted lines, enforcing indentation rules.
pub fn parse_lines(lines: &[SourceLine]) -> Result<Vec<PyDialectStmt>, QiskitError> {
    let unit = lines.iter().map(|l| l.indent).find(|&i| i > 0).unwrap_or(4);
    for l in lines {
        if l.indent % unit != 0 {
            return Err(QiskitError::IndentationError {
                line: l.line,
                message: format!("indent of {} is not a multiple of {unit}", l.indent),
            });
        }
    }
    let mut pos = 0;
    let block = parse_block(lines, &mut pos, 0)?;
    if let Some(l) = lines.get(pos) {
        return Err(QiskitError::IndentationError {
            line: l.line,
            message: "unindent does not match any outer indentation level".into(),
        });
    }
    Ok(block)
}

fn parse_block(
    lines: &[SourceLine],
    pos: &mut usize,
    indent: usize,
) -> Result<Vec<PyDialectStmt>, QiskitError> {
    let mut out = Vec::new();
    while let Some(line) = lines.get(*pos) {
        if line.indent < indent {
            break;
        }
        if line.indent > indent {
            return Err(QiskitError::IndentationError {
                line: line.line,
                message: "unexpected indent".into(),
            });
        }
        *pos += 1;
        let mut stmt = parse_statement(line)?;
        if matches!(stmt.form, StmtForm::ForRange | StmtForm::IfBlock | StmtForm::FuncDef) {
            match lines.get(*pos) {
                Some(next) if next.indent > indent => {
                    stmt.body = parse_block(lines, pos, next.indent)?;
                }
                _ => {
                    return Err(QiskitError::IndentationError {
                        line: line.line,
                        message: "expected an indented block".into(),
                    })
                }
            }
            if let Some(next) = lines.get(*pos) {
                if next.indent > indent {
                    return Err(QiskitError::IndentationError {
                        line: next.line,
                        message: "unindent does not match any outer indentation level".into(),
                    });
                }
            }
        }
        out.push(stmt);
    }
    Ok(out)
}

struct Cursor<'a> {
    tokens: &'a [PyToken],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a PyToken> {
        self.tokens.get(self.pos)
    }

    fn peek_op(&self, op: &str) -> bool {
        self.peek()
            .is_some_and(|t| t.kind == PyTokenKind::Op && t.text == op)
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        self.peek()
            .is_some_and(|t| t.kind == PyTokenKind::Keyword && t.text == kw)
    }

    fn bump(&mut self) -> &'a PyToken {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn unexpected(&self) -> QiskitError {
        match self.peek() {
            Some(t) => QiskitError::UnsupportedSyntax {
                line: self.line,
                column: t.column,
                construct: format!("unexpected `{}`", t.text),
            },
            None => QiskitError::UnsupportedSyntax {
                line: self.line,
                column: self.tokens.last().map_or(0, |t| t.column + t.text.len()),
                construct: "unexpected end of line".into(),
            },
        }
    }

    fn expect_op(&mut self, op: &str) -> Result<(), QiskitError> {
        if self.peek_op(op) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), QiskitError> {
        if self.peek_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expect_name(&mut self) -> Result<String, QiskitError> {
        match self.peek() {
            Some(t) if t.kind == PyTokenKind::Name => Ok(self.bump().text.clone()),
            _ => Err(self.unexpected()),
        }
    }

    fn expect_end(&self) -> Result<(), QiskitError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected()),
        }
    }

    /// Consumes a trailing `:` that must end the line.
    fn header_end(&mut self) -> Result<(), QiskitError> {
        self.expect_op(":")?;
        self.expect_end()
    }

    fn expression(&mut self) -> Result<Expr, QiskitError> {
        let left = self.arith()?;
        if let Some(t) = self.peek() {
            if t.kind == PyTokenKind::Op && ["==", "!=", "<", ">", "<=", ">="].contains(&t.text.as_str()) {
                let op = self.bump().text.clone();
                let right = self.arith()?;
                if self.peek().is_some_and(|t| {
                    t.kind == PyTokenKind::Op && ["==", "!=", "<", ">", "<=", ">="].contains(&t.text.as_str())
                }) {
                    let t = self.peek().unwrap();
                    return Err(QiskitError::UnsupportedSyntax {
                        line: self.line,
                        column: t.column,
                        construct: "chained comparison".into(),
                    });
                }
                return Ok(Expr::Binary(Box::new(left), op, Box::new(right)));
            }
        }
        Ok(left)
    }

    fn arith(&mut self) -> Result<Expr, QiskitError> {
        let mut left = self.term()?;
        while self.peek_op("+") || self.peek_op("-") {
            let op = self.bump().text.clone();
            let right = self.term()?;
            left = Expr::Binary(Box::new(left), op, Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr, QiskitError> {
        let mut left = self.unary()?;
        while self.peek_op("*") || self.peek_op("/") {
            let op = self.bump().text.clone();
            let right = self.unary()?;
            left = Expr::Binary(Box::new(left), op, Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expr, QiskitError> {
        if self.peek_op("-") {
            self.bump();
            return Ok(Expr::Negate(Box::new(self.unary()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, QiskitError> {
        let mut expr = self.atom()?;
        loop {
            if self.peek_op(".") {
                self.bump();
                let attr = self.expect_name()?;
                expr = Expr::Attribute(Box::new(expr), attr);
            } else if self.peek_op("(") {
                self.bump();
                let args = self.call_args()?;
                expr = Expr::Call {
                    func: Box::new(expr),
                    args,
                };
            } else if self.peek_op("[") {
                self.bump();
                let index = self.expression()?;
                self.expect_op("]")?;
                expr = Expr::Subscript(Box::new(expr), Box::new(index));
            } else {
                return Ok(expr);
            }
        }
    }

    fn call_args(&mut self) -> Result<Vec<CallArg>, QiskitError> {
        let mut args = Vec::new();
        while !self.peek_op(")") {
            let keyword = match (self.peek(), self.tokens.get(self.pos + 1)) {
                (Some(n), Some(eq)) if n.kind == PyTokenKind::Name && eq.kind == PyTokenKind::Op && eq.text == "=" => {
                    self.pos += 2;
                    Some(n.text.clone())
                }
                _ => None,
            };
            let value = self.expression()?;
            args.push(CallArg { keyword, value });
            if !self.peek_op(",") {
                break;
            }
            self.bump();
        }
        self.expect_op(")")?;
        Ok(args)
    }

    fn atom(&mut self) -> Result<Expr, QiskitError> {
        let Some(t) = self.peek() else {
            return Err(self.unexpected());
        };
        let expr = match t.kind {
            PyTokenKind::Name => Expr::Name(t.text.clone()),
            PyTokenKind::Int => Expr::Int(t.text.clone()),
            PyTokenKind::Float => Expr::Float(t.text.clone()),
            PyTokenKind::Str => Expr::Str(t.text.clone()),
            PyTokenKind::Keyword if ["True", "False", "None"].contains(&t.text.as_str()) => {
                Expr::Constant(t.text.clone())
            }
            PyTokenKind::Op if t.text == "(" => {
                self.bump();
                let inner = self.expression()?;
                if self.peek_op(",") {
                    let t = self.peek().unwrap();
                    return Err(QiskitError::UnsupportedSyntax {
                        line: self.line,
                        column: t.column,
                        construct: "tuple".into(),
                    });
                }
                self.expect_op(")")?;
                return Ok(inner);
            }
            PyTokenKind::Op if t.text == "[" => {
                return Err(QiskitError::UnsupportedSyntax {
                    line: self.line,
                    column: t.column,
                    construct: "list literal".into(),
                })
            }
            _ => return Err(self.unexpected()),
        };
        self.bump();
        Ok(expr)
    }
}

fn parse_statement(line: &SourceLine) -> Result<PyDialectStmt, QiskitError> {
    let mut cur = Cursor {
        tokens: &line.tokens,
        pos: 0,
        line: line.line,
    };
    let column = line.indent;
    let first = &line.tokens[0];
    let (form, parts) = match (first.kind, first.text.as_str()) {
        (PyTokenKind::Keyword, "def") => {
            cur.bump();
            let name = cur.expect_name()?;
            cur.expect_op("(")?;
            let mut params = Vec::new();
            while !cur.peek_op(")") {
                params.push(cur.expect_name()?);
                if !cur.peek_op(",") {
                    break;
                }
                cur.bump();
            }
            cur.expect_op(")")?;
            cur.header_end()?;
            (StmtForm::FuncDef, StmtParts::Def { name, params })
        }
        (PyTokenKind::Keyword, "for") => {
            cur.bump();
            let var = cur.expect_name()?;
            cur.expect_keyword("in")?;
            let range = cur.expression()?;
            if !matches!(&range, Expr::Call { func, .. } if **func == Expr::Name("range".into())) {
                return Err(QiskitError::UnsupportedSyntax {
                    line: line.line,
                    column: line.tokens[3].column,
                    construct: "for loop over a non-range iterable".into(),
                });
            }
            cur.header_end()?;
            (StmtForm::ForRange, StmtParts::For { var, range })
        }
        (PyTokenKind::Keyword, "if") => {
            cur.bump();
            let condition = cur.expression()?;
            cur.header_end()?;
            (StmtForm::IfBlock, StmtParts::If { condition })
        }
        _ => {
            let is_assign = line.tokens.len() > 1
                && first.kind == PyTokenKind::Name
                && line.tokens[1].kind == PyTokenKind::Op
                && line.tokens[1].text == "=";
            if is_assign {
                let target = cur.expect_name()?;
                cur.expect_op("=")?;
                let value = cur.expression()?;
                if cur.peek_op("=") {
                    let t = cur.peek().unwrap();
                    return Err(QiskitError::UnsupportedSyntax {
                        line: line.line,
                        column: t.column,
                        construct: "chained assignment".into(),
                    });
                }
                cur.expect_end()?;
                (StmtForm::Assignment, StmtParts::Assign { target, value })
            } else {
                let expr = cur.expression()?;
                if cur.peek_op("=") || cur.peek_op(",") {
                    let t = cur.peek().unwrap();
                    return Err(QiskitError::UnsupportedSyntax {
                        line: line.line,
                        column: t.column,
                        construct: "assignment to a non-name target".into(),
                    });
                }
                cur.expect_end()?;
                let is_print = matches!(&expr, Expr::Call { func, .. } if **func == Expr::Name("print".into()));
                if is_print {
                    (StmtForm::Print, StmtParts::Print(expr))
                } else {
                    (StmtForm::ExpressionCall, StmtParts::Expr(expr))
                }
            }
        }
    };
    Ok(PyDialectStmt {
        form,
        line: line.line,
        column,
        indent: line.indent,
        parts,
        body: Vec::new(),
    })
}
