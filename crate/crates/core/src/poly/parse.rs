use super::{BooleanPolynomial, Monomial, Var, NUM_VARIABLES};
use crate::error::{ParseError, ParseErrorKind};

/// Parses one line of the form `y_{K} = T_1 + ... + T_m`, where each term is
/// `x_{i}x_{j}`, `x_{i}` or `1`. A lone `0` denotes the zero polynomial.
///
/// Term order is not preserved. Repeated terms, repeated variables inside a
/// term, degree above two and indices outside `1..=64` are rejected.
pub fn parse_polynomial(line: &str) -> Result<BooleanPolynomial, ParseError> {
    let mut cur = Cursor::new(line);
    cur.skip_ws();
    let prefix_at = cur.column();
    let index = parse_lhs(&mut cur).ok_or(ParseError {
        column: prefix_at,
        kind: ParseErrorKind::MissingPrefix,
    })?;

    let mut poly = BooleanPolynomial::zero(index);
    let rhs_start = cur.pos;
    let rhs = &line[rhs_start..];
    if rhs.trim() == "0" {
        return Ok(poly);
    }
    if rhs.trim().is_empty() {
        return Err(ParseError {
            column: rhs_start + 1,
            kind: ParseErrorKind::EmptyPolynomial,
        });
    }

    let mut offset = rhs_start;
    for piece in rhs.split('+') {
        let lead = piece.len() - piece.trim_start().len();
        let text = piece.trim();
        let column = offset + lead + 1;
        offset += piece.len() + 1;

        let term = parse_term(text).map_err(|kind| ParseError { column, kind })?;
        if !poly.insert_new(term) {
            return Err(ParseError {
                column,
                kind: ParseErrorKind::DuplicateTerm(text.to_string()),
            });
        }
    }
    Ok(poly)
}

fn parse_lhs(cur: &mut Cursor<'_>) -> Option<u32> {
    cur.eat("y_{")?;
    let k = cur.number()?;
    cur.eat("}")?;
    cur.skip_ws();
    cur.eat("=")?;
    u32::try_from(k).ok()
}

fn parse_term(text: &str) -> Result<Monomial, ParseErrorKind> {
    let malformed = || ParseErrorKind::MalformedTerm(text.to_string());
    if text == "1" {
        return Ok(Monomial::One);
    }
    let mut cur = Cursor::new(text);
    let mut vars: Vec<u64> = Vec::with_capacity(2);
    while !cur.at_end() {
        cur.eat("x_{").ok_or_else(malformed)?;
        let i = cur.number().ok_or_else(malformed)?;
        cur.eat("}").ok_or_else(malformed)?;
        vars.push(i);
    }
    if vars.is_empty() {
        return Err(malformed());
    }
    if vars.len() > 2 {
        return Err(ParseErrorKind::DegreeTooHigh(text.to_string(), vars.len()));
    }
    let vars = vars
        .into_iter()
        .map(|i| {
            u8::try_from(i)
                .ok()
                .filter(|&i| i <= NUM_VARIABLES)
                .and_then(Var::new)
                .ok_or(ParseErrorKind::VariableOutOfRange(i))
        })
        .collect::<Result<Vec<_>, _>>()?;
    match vars[..] {
        [a] => Ok(Monomial::Linear(a)),
        [a, b] => Monomial::quadratic(a, b).ok_or(ParseErrorKind::RepeatedVariable(a.index())),
        _ => unreachable!(),
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn column(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, lit: &str) -> Option<()> {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            Some(())
        } else {
            None
        }
    }

    fn number(&mut self) -> Option<u64> {
        let digits = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if digits == 0 {
            return None;
        }
        let n = self.rest()[..digits].parse().ok()?;
        self.pos += digits;
        Some(n)
    }
}
