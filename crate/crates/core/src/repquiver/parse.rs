//! Text grammars: multisegments (`[1..2]^3+[2..2]`) and comma lists (`1,3,1`).

use crate::error::{Error, Result};

use super::Multisegment;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a nonnegative integer"));
        }
        // Only ASCII digits were consumed.
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse::<u32>()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }
}

/// Parses the multisegment grammar. With `rank = None` the rank is the
/// largest segment end (at least 1); otherwise `j <= rank` is enforced.
pub(crate) fn parse_multisegment(s: &str, rank: Option<usize>) -> Result<Multisegment> {
    let mut cur = Cursor::new(s);
    cur.skip_ws();
    let mut segments: Vec<(usize, usize, u32, usize)> = Vec::new();
    if cur.peek() == Some(b'0') {
        cur.pos += 1;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(Error::parse(cur.pos, "trailing input after `0`"));
        }
        return Ok(Multisegment::zero(rank.unwrap_or(1)));
    }
    loop {
        cur.expect("[")?;
        let start = cur.pos;
        let i = cur.number()? as usize;
        cur.expect("..")?;
        let j = cur.number()? as usize;
        cur.expect("]")?;
        cur.skip_ws();
        let mult = if cur.peek() == Some(b'^') {
            cur.pos += 1;
            cur.number()?
        } else {
            1
        };
        if i == 0 || i > j {
            return Err(Error::parse(start, format!("invalid segment [{i}..{j}]")));
        }
        if let Some(n) = rank {
            if j > n {
                return Err(Error::parse(
                    start,
                    format!("segment [{i}..{j}] exceeds n = {n}"),
                ));
            }
        }
        segments.push((i, j, mult, start));
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'+') => cur.pos += 1,
            Some(_) => return Err(Error::parse(cur.pos, "expected `+` or end of input")),
        }
    }
    let n = rank.unwrap_or_else(|| segments.iter().map(|s| s.1).max().unwrap_or(1));
    // Guard against allocating absurd ranks from untrusted input.
    if n > 64 {
        let pos = segments.iter().find(|s| s.1 > 64).map_or(0, |s| s.3);
        return Err(Error::parse(pos, "rank above 64 is not supported"));
    }
    let segs: Vec<(usize, usize, u32)> = segments.iter().map(|&(i, j, m, _)| (i, j, m)).collect();
    let mut out = Multisegment::zero(n);
    for (i, j, m) in segs {
        let idx = super::interval_index(n, i, j);
        out.m[idx] = out.m[idx]
            .checked_add(m)
            .ok_or_else(|| Error::parse(0, "multiplicity overflow"))?;
    }
    Ok(out)
}

/// Parses a comma-separated list of nonnegative integers; the empty string is the empty list.
pub fn parse_int_list(s: &str) -> Result<Vec<u32>> {
    let mut cur = Cursor::new(s);
    cur.skip_ws();
    let mut out = Vec::new();
    if cur.at_end() {
        return Ok(out);
    }
    loop {
        out.push(cur.number()?);
        cur.skip_ws();
        match cur.peek() {
            None => return Ok(out),
            Some(b',') => cur.pos += 1,
            Some(_) => return Err(Error::parse(cur.pos, "expected `,` or end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grammar_examples() {
        let m = Multisegment::parse("[1..2]^1+[2..2]^3", 2).unwrap();
        assert_eq!(m.multiplicity(1, 2), 1);
        assert_eq!(m.multiplicity(2, 2), 3);
        assert_eq!(m.to_string(), "[1..2]+[2..2]^3");
        assert_eq!(
            Multisegment::parse(" [1..1] +\t[2 .. 2] ", 2)
                .unwrap()
                .to_string(),
            "[1..1]+[2..2]"
        );
        assert_eq!(
            Multisegment::parse("[1..1]+[1..1]", 1).unwrap().to_string(),
            "[1..1]^2"
        );
        assert!(Multisegment::parse("0", 3).unwrap().is_zero());
        assert_eq!(Multisegment::parse_any_rank("[2..3]").unwrap().rank(), 3);
    }

    #[test]
    fn grammar_errors_carry_positions() {
        let err = |s: &str, n| match Multisegment::parse(s, n) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(err("[1..3]", 2), 1);
        assert_eq!(err("[2..1]", 2), 1);
        assert_eq!(err("[1..1]x", 2), 6);
        assert_eq!(err("", 2), 0);
        assert_eq!(err("[1..1]+", 2), 7);
        assert_eq!(err("[0..1]", 2), 1);
        assert_eq!(err("[1..1]^", 2), 7);
    }

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("1,3,1").unwrap(), vec![1, 3, 1]);
        assert_eq!(parse_int_list(" 2 , 0 ").unwrap(), vec![2, 0]);
        assert_eq!(parse_int_list("").unwrap(), Vec::<u32>::new());
        assert!(matches!(
            parse_int_list("1,,2"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(parse_int_list("-1").is_err());
    }

    fn arb_multisegment() -> impl Strategy<Value = Multisegment> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(0u32..4, super::super::interval_count(n))
                .prop_map(move |m| Multisegment { n, m })
        })
    }

    proptest! {
        #[test]
        fn printed_multisegments_reparse(m in arb_multisegment()) {
            let text = m.to_string();
            prop_assert_eq!(Multisegment::parse(&text, m.rank()).unwrap(), m);
        }

        #[test]
        fn parser_never_panics(s in "[\\[\\]0-9.^+ ]{0,24}") {
            let _ = Multisegment::parse(&s, 4);
            let _ = Multisegment::parse_any_rank(&s);
            let _ = parse_int_list(&s);
        }
    }
}
