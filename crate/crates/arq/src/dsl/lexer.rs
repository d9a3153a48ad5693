use super::{ParseError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// `[A-Za-z0-9_.]+`, which also covers unsigned integers
    Id(String),
    /// a negative integer literal
    Neg(i64),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Colon,
    Comma,
    Eq,
    Plus,
    Arrow,
    Eof,
}

impl Tok {
    pub fn show(&self) -> String {
        match self {
            Tok::Id(s) => format!("`{s}`"),
            Tok::Neg(n) => format!("`{n}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_id_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if is_id_char(c) {
            let start = i;
            while i < chars.len() && is_id_char(chars[i]) {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Id(s), pos));
            continue;
        }
        if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                out.push((Tok::Arrow, pos));
                i += 2;
                col += 2;
                continue;
            }
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(ParseError::at(pos, "expected `->` or a digit after `-`"));
            }
            let digits: String = chars[start..j].iter().collect();
            let n: i64 = digits
                .parse()
                .map_err(|_| ParseError::at(pos, format!("integer -{digits} out of range")))?;
            out.push((Tok::Neg(-n), pos));
            col += j - i;
            i = j;
            continue;
        }
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            '+' => Tok::Plus,
            other => return Err(ParseError::at(pos, format!("unexpected character {other:?}"))),
        };
        out.push((tok, pos));
        i += 1;
        col += 1;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = lex("quiver A2 {\n  arrow a: 1 -> 2 # c\n}").unwrap();
        let kinds: Vec<&Tok> = t.iter().map(|(k, _)| k).collect();
        assert_eq!(kinds[3], &Tok::Id("arrow".into()));
        assert_eq!(t[3].1, Pos { line: 2, col: 3 });
        assert!(kinds.contains(&&Tok::Arrow));
        assert_eq!(t.last().unwrap().0, Tok::Eof);
        assert_eq!(lex("[-3]").unwrap()[1].0, Tok::Neg(-3));
        let e = lex("a ? b").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 3));
    }
}
