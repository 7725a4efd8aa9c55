//! Arithmetic expressions for numeric command-line arguments.
//!
//! Grammar: `expr = term (('+' | '-') term)*`, `term = unary (('*' | '/') unary)*`,
//! `unary = '-' unary | '+' unary | atom`, `atom = number | '(' expr ')' | 'sqrt' '(' expr ')' | 'pi'`.

/// Parses a single expression such as `3/2`, `sqrt(2)` or `-(1+sqrt(13))/2`.
pub fn parse_expr(src: &str) -> Result<f64, String> {
    let mut p = Parser { src, pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(format!("unexpected '{}' in \"{src}\"", &src[p.pos..]));
    }
    if !v.is_finite() {
        return Err(format!("\"{src}\" is not a finite number"));
    }
    Ok(v)
}

/// Parses a comma-separated list; commas inside parentheses do not split.
pub fn parse_list(src: &str) -> Result<Vec<f64>, String> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    items.push(&src[start..]);
    if items.iter().all(|s| s.trim().is_empty()) {
        return Ok(Vec::new());
    }
    items.into_iter().map(parse_expr).collect()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<f64, String> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v += self.term()?;
            } else if self.eat('-') {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<f64, String> {
        let mut v = self.unary()?;
        loop {
            if self.eat('*') {
                v *= self.unary()?;
            } else if self.eat('/') {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64, String> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<f64, String> {
        self.skip_ws();
        if self.eat('(') {
            let v = self.expr()?;
            return self.close(v);
        }
        let rest = &self.src[self.pos..];
        if let Some(after) = rest.strip_prefix("sqrt") {
            self.pos += 4;
            if !after.trim_start().starts_with('(') {
                return Err(format!("expected '(' after sqrt in \"{}\"", self.src));
            }
            self.eat('(');
            let v = self.expr()?;
            return self.close(v.sqrt());
        }
        if rest.starts_with("pi") {
            self.pos += 2;
            return Ok(std::f64::consts::PI);
        }
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_digit()
                    || c == '.'
                    || ((c == 'e' || c == 'E') && i > 0)
                    || ((c == '-' || c == '+') && i > 0 && matches!(rest.as_bytes()[i - 1], b'e' | b'E')))
            })
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(format!("expected a number at \"{rest}\""));
        }
        self.pos += len;
        rest[..len]
            .parse()
            .map_err(|_| format!("bad number \"{}\"", &rest[..len]))
    }

    fn close(&mut self, v: f64) -> Result<f64, String> {
        if self.eat(')') {
            Ok(v)
        } else {
            Err(format!("missing ')' in \"{}\"", self.src))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(parse_expr("3/2").unwrap(), 1.5);
        assert_eq!(parse_expr("sqrt(2)").unwrap(), 2f64.sqrt());
        assert_eq!(parse_expr(" -(1 + sqrt(13)) / 2 ").unwrap(), -(1.0 + 13f64.sqrt()) / 2.0);
        assert_eq!(parse_expr("2*3-4/8").unwrap(), 5.5);
        assert_eq!(parse_expr("1e-3").unwrap(), 1e-3);
        assert_eq!(parse_expr("2.5E+2").unwrap(), 250.0);
        assert_eq!(parse_expr("--1").unwrap(), 1.0);
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("3/2,1,sqrt(2),2").unwrap(), vec![1.5, 1.0, 2f64.sqrt(), 2.0]);
        assert_eq!(parse_list("-1, 0, 4, 6").unwrap(), vec![-1.0, 0.0, 4.0, 6.0]);
        assert_eq!(parse_list("(1+2)*2,3").unwrap(), vec![6.0, 3.0]);
    }

    #[test]
    fn errors() {
        for bad in ["", "1+", "sqrt 2", "(1", "1/0", "abc", "1 2"] {
            assert!(parse_expr(bad).is_err(), "{bad}");
        }
    }
}
