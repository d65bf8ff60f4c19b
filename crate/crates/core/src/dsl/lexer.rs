use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Tok {
    E,
    F(u32),
    L,
    Tau,
    Sigma,
    T,
    Int(u64),
    Minus,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Bar,
}

impl Tok {
    pub(super) fn describe(&self) -> String {
        match self {
            Tok::E => "`e`".into(),
            Tok::F(k) => format!("`f{k}`"),
            Tok::L => "`L`".into(),
            Tok::Tau => "`tau`".into(),
            Tok::Sigma => "`sigma`".into(),
            Tok::T => "`t`".into(),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Minus => "`-`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bar => "`|`".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub(super) fn error(self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
            message: message.into(),
        }
    }
}

#[derive(Debug)]
pub(super) struct Lexed {
    pub toks: Vec<(Tok, Pos)>,
    pub end: Pos,
}

pub(super) fn lex(input: &str) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let mut pos = Pos { line: 1, column: 1 };
    let mut chars = input.chars().peekable();

    let advance = |pos: &mut Pos, c: char| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };

    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(&mut pos, c);
            continue;
        }
        let single = match c {
            '-' => Some(Tok::Minus),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Bar),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            advance(&mut pos, c);
            toks.push((tok, start));
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
                advance(&mut pos, d);
            }
            let n = digits
                .parse::<u64>()
                .map_err(|_| start.error(ParseErrorKind::Syntax, "integer literal too large"))?;
            toks.push((Tok::Int(n), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                ident.push(d);
                chars.next();
                advance(&mut pos, d);
            }
            let tok = match ident.as_str() {
                "e" => Tok::E,
                "L" => Tok::L,
                "tau" => Tok::Tau,
                "sigma" => Tok::Sigma,
                "t" => Tok::T,
                s if s.len() > 1
                    && s.starts_with('f')
                    && s[1..].bytes().all(|b| b.is_ascii_digit()) =>
                {
                    let k = s[1..].parse::<u32>().map_err(|_| {
                        start.error(ParseErrorKind::Rank, "generator index too large")
                    })?;
                    Tok::F(k)
                }
                other => {
                    return Err(start.error(
                        ParseErrorKind::Syntax,
                        format!("unknown identifier `{other}`"),
                    ))
                }
            };
            toks.push((tok, start));
            continue;
        }
        return Err(start.error(
            ParseErrorKind::Syntax,
            format!("unexpected character {c:?}"),
        ));
    }
    Ok(Lexed { toks, end: pos })
}
