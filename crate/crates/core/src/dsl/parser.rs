use super::lexer::{lex, Pos, Tok};
use super::{Context, Expr, Gen, Kind, ParseError, ParseErrorKind};

/// Nesting limit for brackets; deeper input is rejected instead of
/// overflowing the stack.
const MAX_DEPTH: usize = 200;

/// Largest accepted exponent magnitude.
const MAX_EXPONENT: u64 = 1_000_000;

pub fn parse(input: &str, ctx: Context) -> Result<Expr, ParseError> {
    let lexed = lex(input)?;
    let mut p = Parser {
        toks: lexed.toks,
        end: lexed.end,
        at: 0,
        rank: ctx.rank,
        depth: 0,
    };
    let expr = p.word(ctx.kind)?;
    match p.peek() {
        None => Ok(expr),
        Some((tok, pos)) => Err(pos.error(
            ParseErrorKind::Syntax,
            format!("unexpected {} after expression", tok.describe()),
        )),
    }
}

/// Like [`parse`], for raw bytes that may not be UTF-8.
pub fn parse_bytes(input: &[u8], ctx: Context) -> Result<Expr, ParseError> {
    match std::str::from_utf8(input) {
        Ok(s) => parse(s, ctx),
        Err(e) => {
            let valid = std::str::from_utf8(&input[..e.valid_up_to()]).unwrap();
            let line = 1 + valid.matches('\n').count();
            let column = 1 + valid.rsplit('\n').next().unwrap().chars().count();
            Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::Syntax,
                message: "input is not valid UTF-8".into(),
            })
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    end: Pos,
    at: usize,
    rank: u32,
    depth: usize,
}

fn starts_term(tok: &Tok) -> bool {
    matches!(
        tok,
        Tok::E | Tok::F(_) | Tok::L | Tok::Tau | Tok::Sigma | Tok::T | Tok::LParen | Tok::LBracket
    )
}

impl Parser {
    fn peek(&self) -> Option<(&Tok, Pos)> {
        self.toks.get(self.at).map(|(t, p)| (t, *p))
    }

    fn pos(&self) -> Pos {
        self.peek().map_or(self.end, |(_, p)| p)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        match self.next() {
            Some((tok, pos)) if tok == want => Ok(pos),
            Some((tok, pos)) => Err(pos.error(
                ParseErrorKind::Syntax,
                format!("expected {}, found {}", want.describe(), tok.describe()),
            )),
            None => Err(self.end.error(
                ParseErrorKind::Syntax,
                format!("expected {}, found end of input", want.describe()),
            )),
        }
    }

    fn int(&mut self) -> Result<(u64, Pos), ParseError> {
        match self.next() {
            Some((Tok::Int(n), pos)) => Ok((n, pos)),
            Some((tok, pos)) => Err(pos.error(
                ParseErrorKind::Syntax,
                format!("expected integer, found {}", tok.describe()),
            )),
            None => Err(self.end.error(
                ParseErrorKind::Syntax,
                "expected integer, found end of input",
            )),
        }
    }

    fn word(&mut self, kind: Kind) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        while let Some((tok, _)) = self.peek() {
            if !starts_term(tok) {
                break;
            }
            terms.push(self.term(kind)?);
        }
        match terms.len() {
            0 => {
                let found = self
                    .peek()
                    .map_or_else(|| "end of input".to_owned(), |(t, _)| t.describe());
                Err(self.pos().error(
                    ParseErrorKind::Syntax,
                    format!("expected expression, found {found}"),
                ))
            }
            1 => Ok(terms.pop().unwrap()),
            _ => Ok(Expr::Product(terms)),
        }
    }

    fn term(&mut self, kind: Kind) -> Result<Expr, ParseError> {
        let atom = self.atom(kind)?;
        if !matches!(self.peek(), Some((Tok::Caret, _))) {
            return Ok(atom);
        }
        self.next();
        let negative = matches!(self.peek(), Some((Tok::Minus, _)));
        if negative {
            self.next();
        }
        let (n, pos) = self.int()?;
        if n > MAX_EXPONENT {
            return Err(pos.error(
                ParseErrorKind::Syntax,
                format!("exponent exceeds {MAX_EXPONENT}"),
            ));
        }
        let n = n as i64;
        Ok(match (negative, n) {
            (true, 1) => Expr::Inverse(Box::new(atom)),
            (true, n) => Expr::Power(Box::new(atom), -n),
            (false, n) => Expr::Power(Box::new(atom), n),
        })
    }

    fn kind_error(pos: Pos, what: &str, kind: Kind) -> ParseError {
        pos.error(
            ParseErrorKind::Kind,
            format!("{what} is not allowed in a {kind}"),
        )
    }

    fn nested<T>(
        &mut self,
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        if self.depth >= MAX_DEPTH {
            return Err(self
                .pos()
                .error(ParseErrorKind::Syntax, "expression nested too deeply"));
        }
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }

    /// Whether the parenthesis at the cursor closes after a top-level `|`.
    fn paren_holds_pair(&self) -> bool {
        let mut depth = 0usize;
        for (tok, _) in &self.toks[self.at..] {
            match tok {
                Tok::LParen | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBracket => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::Bar if depth == 1 => return true,
                _ => {}
            }
        }
        false
    }

    fn index(&mut self, bound: u32) -> Result<(u32, Pos), ParseError> {
        let (n, pos) = self.int()?;
        match u32::try_from(n) {
            Ok(k) if (1..=bound).contains(&k) => Ok((k, pos)),
            _ => Err(pos.error(
                ParseErrorKind::Rank,
                format!("index {n} outside 1..={bound}"),
            )),
        }
    }

    fn atom(&mut self, kind: Kind) -> Result<Expr, ParseError> {
        let rank = self.rank;
        let (tok, pos) = self.next().expect("caller checked a term starts here");
        match tok {
            Tok::E => Ok(Expr::Identity),
            Tok::F(k) => {
                if kind != Kind::Word {
                    return Err(Self::kind_error(pos, "a free generator", kind));
                }
                if k == 0 || k > rank {
                    return Err(
                        pos.error(ParseErrorKind::Rank, format!("f{k} outside rank {rank}"))
                    );
                }
                Ok(Expr::Gen(Gen::F(k)))
            }
            Tok::L => {
                if !matches!(kind, Kind::LambdaWord | Kind::EndoWord) {
                    return Err(Self::kind_error(pos, "`L(i,j)`", kind));
                }
                self.expect(Tok::LParen)?;
                let (i, _) = self.index(rank)?;
                self.expect(Tok::Comma)?;
                let (j, jpos) = self.index(rank)?;
                self.expect(Tok::RParen)?;
                if kind == Kind::LambdaWord && j >= i {
                    return Err(jpos.error(ParseErrorKind::Rank, format!("L({i},{j}) needs j < i")));
                }
                if i == j {
                    return Err(
                        jpos.error(ParseErrorKind::Rank, format!("L({i},{j}) needs j != i"))
                    );
                }
                Ok(Expr::Gen(Gen::Lambda(i, j)))
            }
            Tok::Tau => {
                if kind != Kind::EndoWord {
                    return Err(Self::kind_error(pos, "`tau(i)`", kind));
                }
                self.expect(Tok::LParen)?;
                let (i, _) = self.index(rank)?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Gen(Gen::Tau(i)))
            }
            Tok::Sigma => {
                if kind != Kind::EndoWord {
                    return Err(Self::kind_error(pos, "`sigma`", kind));
                }
                if rank < 2 {
                    return Err(pos.error(ParseErrorKind::Rank, "`sigma` needs rank at least 2"));
                }
                Ok(Expr::Gen(Gen::Sigma))
            }
            Tok::T => {
                if kind != Kind::HnnWord {
                    return Err(Self::kind_error(pos, "the stable letter `t`", kind));
                }
                Ok(Expr::Gen(Gen::T))
            }
            Tok::LParen => {
                self.at -= 1;
                let pair = kind == Kind::HnnWord && self.paren_holds_pair();
                self.at += 1;
                self.nested(|p| {
                    if pair {
                        let left = p.word(Kind::Word)?;
                        p.expect(Tok::Bar)?;
                        let right = p.word(Kind::Word)?;
                        p.expect(Tok::RParen)?;
                        return Ok(Expr::Pair(Box::new(left), Box::new(right)));
                    }
                    let inner = p.word(kind)?;
                    match p.next() {
                        Some((Tok::RParen, _)) => Ok(inner),
                        Some((Tok::Bar, bar)) => {
                            Err(Self::kind_error(bar, "a pair `(u | v)`", kind))
                        }
                        Some((tok, pos)) => Err(pos.error(
                            ParseErrorKind::Syntax,
                            format!("expected `)`, found {}", tok.describe()),
                        )),
                        None => Err(p
                            .end
                            .error(ParseErrorKind::Syntax, "expected `)`, found end of input")),
                    }
                })
            }
            Tok::LBracket => self.nested(|p| {
                let a = p.word(kind)?;
                p.expect(Tok::Comma)?;
                let b = p.word(kind)?;
                p.expect(Tok::RBracket)?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }),
            _ => unreachable!("starts_term"),
        }
    }
}
