//! Recursive-descent parser for the formula grammar
//!
//! ```text
//! formula := iff
//! iff     := imp ('<->' imp)?
//! imp     := or ('->' imp)?
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := ('~' | 'G' | 'H' | 'F' | 'P') unary | ident | '(' formula ')'
//! ```

use super::formula::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    G,
    H,
    F,
    P,
    And,
    Or,
    Arrow,
    Iff,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Tilde => "`~`".into(),
            Tok::G => "`G`".into(),
            Tok::H => "`H`".into(),
            Tok::F => "`F`".into(),
            Tok::P => "`P`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let (tok, width) = match c {
            '~' => (Tok::Tilde, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                (Tok::Iff, 3)
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let tok = match word.as_str() {
                    "G" => Tok::G,
                    "H" => Tok::H,
                    "F" => Tok::F,
                    "P" => Tok::P,
                    _ => Tok::Ident(word),
                };
                (tok, j - start)
            }
            other => {
                return Err(Error::syntax(
                    line,
                    column,
                    format!("unknown token `{other}`"),
                ));
            }
        };
        out.push((tok, pos));
        i += width;
        column += width;
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let p = self.pos();
        Error::syntax(
            p.line,
            p.column,
            format!("expected {expected}, found {}", self.peek().describe()),
        )
    }

    fn iff(&mut self) -> Result<Formula> {
        let left = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let right = self.imp()?;
            if *self.peek() == Tok::Iff {
                return Err(self.error("a parenthesized operand (`<->` does not associate)"));
            }
            return Ok(Formula::iff(left, right));
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Formula> {
        let left = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.imp()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::G => {
                self.bump();
                Ok(Formula::g(self.unary()?))
            }
            Tok::H => {
                self.bump();
                Ok(Formula::h(self.unary()?))
            }
            Tok::F => {
                self.bump();
                Ok(Formula::future(self.unary()?))
            }
            Tok::P => {
                self.bump();
                Ok(Formula::past(self.unary()?))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::var(&name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses one formula, expanding `F`, `P` and `<->`.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let f = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse("p -> (q -> p)").unwrap(),
            Formula::imp(v("p"), Formula::imp(v("q"), v("p")))
        );
        assert_eq!(
            parse("p -> q -> p").unwrap(),
            parse("p -> (q -> p)").unwrap()
        );
    }

    #[test]
    fn abbreviations_expand() {
        assert_eq!(
            parse("F p").unwrap(),
            Formula::neg(Formula::g(Formula::neg(v("p"))))
        );
        assert_eq!(
            parse("P p").unwrap(),
            Formula::neg(Formula::h(Formula::neg(v("p"))))
        );
        assert_eq!(
            parse("p <-> q").unwrap(),
            Formula::and(Formula::imp(v("p"), v("q")), Formula::imp(v("q"), v("p")))
        );
    }

    #[test]
    fn m1_instance() {
        let expected = Formula::imp(
            Formula::g(Formula::imp(v("p"), v("q"))),
            Formula::imp(Formula::g(v("p")), Formula::g(v("q"))),
        );
        assert_eq!(parse("G(p -> q) -> (G p -> G q)").unwrap(), expected);
    }

    #[test]
    fn precedence() {
        // unary > & > | > ->
        assert_eq!(
            parse("~p & q | r -> s").unwrap(),
            Formula::imp(
                Formula::or(Formula::and(Formula::neg(v("p")), v("q")), v("r")),
                v("s")
            )
        );
        assert_eq!(
            parse("a & b & c").unwrap(),
            Formula::and(Formula::and(v("a"), v("b")), v("c"))
        );
        assert_eq!(
            parse("G p & q").unwrap(),
            Formula::and(Formula::g(v("p")), v("q"))
        );
    }

    #[test]
    fn operator_letters_only_standalone() {
        assert_eq!(parse("Gp").unwrap(), v("Gp"));
        assert_eq!(parse("G G p").unwrap(), Formula::g(Formula::g(v("p"))));
        assert_eq!(parse("α -> β").unwrap(), Formula::imp(v("α"), v("β")));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("p -> $") {
            Err(Error::Syntax {
                line,
                column,
                message,
            }) => {
                assert_eq!((line, column), (1, 6));
                assert!(message.contains("unknown token"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse("(p & q") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("p q").is_err());
        assert!(parse("").is_err());
        assert!(parse("p <-> q <-> r").is_err());
        assert!(parse("p - q").is_err());
    }

    #[test]
    fn printing_is_canonical() {
        for text in [
            "p -> q -> r",
            "(p -> q) -> r",
            "p & (q & r)",
            "p & q & r",
            "~(p | q)",
            "G ~H p",
            "(p | q) & r",
            "p | q & r",
            "G (p -> q) -> G p -> G q",
        ] {
            let f = parse(text).unwrap();
            assert_eq!(f.to_string(), text, "canonical form of {text}");
            assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
        assert_eq!(parse("((p))").unwrap().to_string(), "p");
        assert_eq!(parse("F p").unwrap().to_string(), "~G ~p");
    }
}
