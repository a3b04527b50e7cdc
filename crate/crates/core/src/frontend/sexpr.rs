use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    Atom(String, usize),
    List(Vec<SExpr>, usize),
}

impl SExpr {
    pub fn line(&self) -> usize {
        match self {
            SExpr::Atom(_, l) | SExpr::List(_, l) => *l,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(a, _) => Some(a),
            _ => None,
        }
    }

    /// Head symbol and arguments of an application.
    pub fn as_app(&self) -> Option<(&str, &[SExpr])> {
        match self {
            SExpr::List(items, _) => match items.split_first() {
                Some((SExpr::Atom(h, _), rest)) => Some((h.as_str(), rest)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            SExpr::Atom(a, _) => a.clone(),
            SExpr::List(items, _) => {
                let inner: Vec<String> = items.iter().map(SExpr::render).collect();
                format!("({})", inner.join(" "))
            }
        }
    }
}

/// Reads every top-level s-expression. `;` starts a line comment and
/// `|...|` quotes a symbol.
pub fn parse_all(text: &str) -> Result<Vec<SExpr>, ParseError> {
    let mut stack: Vec<(Vec<SExpr>, usize)> = Vec::new();
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;

    let syntax = |line: usize, msg: &str| ParseError::SyntaxError {
        line,
        msg: msg.to_string(),
    };

    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                stack.push((Vec::new(), line));
            }
            ')' => {
                chars.next();
                let (items, start) = stack.pop().ok_or_else(|| syntax(line, "unbalanced ')'"))?;
                let node = SExpr::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => out.push(node),
                }
            }
            _ => {
                let mut atom = String::new();
                if c == '|' {
                    chars.next();
                    loop {
                        match chars.next() {
                            Some('|') => break,
                            Some(ch) => {
                                if ch == '\n' {
                                    line += 1;
                                }
                                atom.push(ch);
                            }
                            None => return Err(syntax(line, "unterminated quoted symbol")),
                        }
                    }
                } else {
                    while let Some(&ch) = chars.peek() {
                        if ch.is_whitespace() || ch == '(' || ch == ')' || ch == ';' {
                            break;
                        }
                        atom.push(ch);
                        chars.next();
                    }
                }
                let node = SExpr::Atom(atom, line);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => out.push(node),
                }
            }
        }
    }
    if let Some((_, start)) = stack.last() {
        return Err(syntax(*start, "unbalanced '('"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_lists() {
        let v = parse_all("(a (b c) ; comment\n d) e").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].render(), "(a (b c) d)");
        assert_eq!(v[1].as_atom(), Some("e"));
    }

    #[test]
    fn unbalanced() {
        assert!(matches!(parse_all("(a (b)"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_all("a)"), Err(ParseError::SyntaxError { .. })));
    }

    #[test]
    fn quoted_symbols() {
        let v = parse_all("(|x y| 1)").unwrap();
        assert_eq!(v[0].as_app().unwrap().0, "x y");
    }
}
