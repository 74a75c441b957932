use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ternary::{check_vars, Trit, MAX_VARS};
use crate::truth_table::TruthTable;

/// Truth-table text formats.
///
/// * `Bits`: `2^n` characters `0`/`1`, character `i` is point `i`.
/// * `Hex`: `2^n / 4` hex digits of the table read as one big number, most
///   significant digit first (so the last digit holds points `0..4`).
///   Needs `n >= 2`.
/// * `Minterms`: one support point per line, either `n` characters `0`/`1`
///   (`x_1` first) or a decimal index. An optional `.i N` line declares `n`.
/// * `PlaLite`: `.i N`, then `<inputs> <output>` lines over `0`/`1`/`-`
///   (`x_1` first) with output `1` (lines with output `0` are ignored),
///   terminated by `.e`.
///
/// Whitespace around tokens and `#` comment lines are ignored everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Bits,
    Hex,
    Minterms,
    PlaLite,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Bits, Format::Hex, Format::Minterms, Format::PlaLite];

    /// Guess from a file extension: `.bits`, `.hex`, `.min`/`.minterms`, `.pla`.
    pub fn from_extension(path: &str) -> Option<Format> {
        let ext = path.rsplit_once('.')?.1.to_ascii_lowercase();
        match ext.as_str() {
            "bits" | "tt" => Some(Format::Bits),
            "hex" => Some(Format::Hex),
            "min" | "minterms" => Some(Format::Minterms),
            "pla" => Some(Format::PlaLite),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Bits => "bits",
            Format::Hex => "hex",
            Format::Minterms => "minterms",
            Format::PlaLite => "pla",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "bits" => Ok(Format::Bits),
            "hex" => Ok(Format::Hex),
            "minterms" | "min" => Ok(Format::Minterms),
            "pla" | "pla-lite" => Ok(Format::PlaLite),
            other => Err(format!("unknown format {other:?} (bits, hex, minterms, pla)")),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses `input`; `declared_n`, when given, must agree with the content.
pub fn parse(input: &str, format: Format, declared_n: Option<u32>) -> Result<TruthTable> {
    if let Some(n) = declared_n {
        check_vars(n)?;
    }
    match format {
        Format::Bits => parse_bits(input, declared_n),
        Format::Hex => parse_hex(input, declared_n),
        Format::Minterms => parse_minterms(input, declared_n),
        Format::PlaLite => parse_pla(input, declared_n),
    }
}

/// Content lines as `(1-based line number, column of first char, trimmed text)`.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            None
        } else {
            let col = raw.len() - raw.trim_start().len() + 1;
            Some((i + 1, col, text))
        }
    })
}

/// `log2(len)` if `len` is a power of two giving a supported `n`.
fn vars_from_len(len: u64, line: usize, what: &str) -> Result<u32> {
    if len < 2 || !len.is_power_of_two() || len.trailing_zeros() > MAX_VARS {
        return Err(Error::parse(
            line,
            1,
            format!("{what} length {len} is not 2^n for 1 <= n <= {MAX_VARS}"),
        ));
    }
    Ok(len.trailing_zeros())
}

fn check_declared(declared: Option<u32>, found: u32, line: usize) -> Result<u32> {
    match declared {
        Some(d) if d != found => Err(Error::parse(
            line,
            1,
            format!("content implies n = {found}, but n = {d} was declared"),
        )),
        _ => Ok(found),
    }
}

fn parse_bits(input: &str, declared: Option<u32>) -> Result<TruthTable> {
    let mut chars: Vec<(usize, usize, bool)> = Vec::new();
    for (line, raw) in input.lines().enumerate() {
        if raw.trim_start().starts_with('#') {
            continue;
        }
        for (col, c) in raw.chars().enumerate() {
            match c {
                '0' => chars.push((line + 1, col + 1, false)),
                '1' => chars.push((line + 1, col + 1, true)),
                c if c.is_whitespace() || c == '_' => {}
                c => return Err(Error::parse(line + 1, col + 1, format!("invalid character {c:?} in bits"))),
            }
        }
    }
    let n = vars_from_len(chars.len() as u64, 1, "bit string")?;
    let n = check_declared(declared, n, 1)?;
    let mut tt = TruthTable::empty(n)?;
    for (i, &(_, _, b)) in chars.iter().enumerate() {
        if b {
            tt.set(i as u64, true);
        }
    }
    Ok(tt)
}

fn parse_hex(input: &str, declared: Option<u32>) -> Result<TruthTable> {
    let mut digits: Vec<u8> = Vec::new();
    for (line, raw) in input.lines().enumerate() {
        if raw.trim_start().starts_with('#') {
            continue;
        }
        for (col, c) in raw.chars().enumerate() {
            if c.is_whitespace() || c == '_' {
                continue;
            }
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::parse(line + 1, col + 1, format!("invalid hex digit {c:?}")))?;
            digits.push(d as u8);
        }
    }
    let n = vars_from_len(digits.len() as u64 * 4, 1, "hex table (bits)")?;
    let n = check_declared(declared, n, 1)?;
    let mut tt = TruthTable::empty(n)?;
    // last digit covers points 0..4
    for (k, &d) in digits.iter().rev().enumerate() {
        for b in 0..4 {
            if (d >> b) & 1 == 1 {
                tt.set(4 * k as u64 + b, true);
            }
        }
    }
    Ok(tt)
}

/// `.i N` directive value.
fn directive_vars(text: &str, line: usize, col: usize) -> Result<u32> {
    let v = text[2..].trim();
    let n: u32 = v
        .parse()
        .map_err(|_| Error::parse(line, col, format!("bad variable count {v:?} in .i")))?;
    check_vars(n).map_err(|e| Error::parse(line, col, e.to_string()))?;
    Ok(n)
}

fn merge_declared(declared: Option<u32>, found: u32, line: usize, col: usize) -> Result<u32> {
    match declared {
        Some(d) if d != found => Err(Error::parse(
            line,
            col,
            format!("conflicting variable counts: {d} and {found}"),
        )),
        _ => Ok(found),
    }
}

/// A 0/1 line is a binary point when its length is `n` (or, with `n` still
/// unknown, when it is longer than one character); otherwise it is decimal.
fn is_binary_point(text: &str, n: Option<u32>) -> bool {
    text.bytes().all(|c| c == b'0' || c == b'1')
        && match n {
            Some(k) => text.len() as u32 == k,
            None => text.len() > 1,
        }
}

enum Point<'a> {
    Binary(&'a str),
    Index(u64),
}

fn parse_minterms(input: &str, declared: Option<u32>) -> Result<TruthTable> {
    let mut n = declared;
    let mut points: Vec<(usize, usize, Point<'_>)> = Vec::new();
    for (line, col, text) in content_lines(input) {
        if text.starts_with(".i") {
            n = Some(merge_declared(n, directive_vars(text, line, col)?, line, col)?);
        } else if text.starts_with('.') {
            return Err(Error::parse(line, col, format!("unknown directive {text:?}")));
        } else if is_binary_point(text, n) {
            n = Some(text.len() as u32);
            points.push((line, col, Point::Binary(text)));
        } else if let Ok(idx) = text.parse::<u64>() {
            points.push((line, col, Point::Index(idx)));
        } else {
            let bad = text.chars().position(|c| !c.is_ascii_digit()).unwrap_or(0);
            return Err(Error::parse(line, col + bad, format!("expected a binary point or decimal index, got {text:?}")));
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, 1, "cannot infer n: no binary points and no .i declaration"))?;
    check_vars(n)?;
    let mut tt = TruthTable::empty(n)?;
    for (line, col, p) in points {
        let x = match p {
            Point::Binary(s) => {
                if s.len() as u32 != n {
                    return Err(Error::parse(line, col, format!("point has {} symbols, expected {n}", s.len())));
                }
                s.bytes().enumerate().fold(0u64, |acc, (k, c)| acc | (((c - b'0') as u64) << k))
            }
            Point::Index(i) => {
                if i >= tt.len() {
                    return Err(Error::parse(line, col, format!("index {i} out of range for n = {n}")));
                }
                i
            }
        };
        tt.set(x, true);
    }
    Ok(tt)
}

fn parse_pla(input: &str, declared: Option<u32>) -> Result<TruthTable> {
    let mut n: Option<u32> = None;
    let mut tt: Option<TruthTable> = None;
    for (line, col, text) in content_lines(input) {
        if text.starts_with(".e") {
            break;
        }
        if text.starts_with(".i") && !text.starts_with(".ilb") {
            if tt.is_some() {
                return Err(Error::parse(line, col, ".i after cube lines"));
            }
            let v = directive_vars(text, line, col)?;
            let v = merge_declared(declared, v, line, col)?;
            n = Some(merge_declared(n, v, line, col)?);
            continue;
        }
        if text.starts_with(".o") && !text.starts_with(".ob") {
            let v = text[2..].trim();
            if v != "1" {
                return Err(Error::parse(line, col, format!("only single-output tables are supported (.o {v})")));
            }
            continue;
        }
        if text.starts_with('.') {
            // .p, .type, .ilb, .ob and friends carry nothing we need
            continue;
        }
        let nv = n.ok_or_else(|| Error::parse(line, col, "cube line before .i"))?;
        let table = match &mut tt {
            Some(t) => t,
            None => tt.insert(TruthTable::empty(nv)?),
        };
        let mut parts = text.split_whitespace();
        let inputs = parts.next().unwrap_or("");
        let output = parts
            .next()
            .ok_or_else(|| Error::parse(line, col + inputs.len(), "missing output column"))?;
        if parts.next().is_some() {
            return Err(Error::parse(line, col, "expected `<inputs> <output>`"));
        }
        if inputs.chars().count() as u32 != nv {
            return Err(Error::parse(line, col, format!("cube has {} inputs, expected {nv}", inputs.chars().count())));
        }
        let on = match output {
            "1" => true,
            "0" => false,
            o => {
                let at = text.find(o).unwrap_or(0);
                return Err(Error::parse(line, col + at, format!("output must be 0 or 1, got {o:?}")));
            }
        };
        let mut base = 0u64;
        let mut free = 0u64;
        for (k, c) in inputs.chars().enumerate() {
            match Trit::from_char(c) {
                Some(Trit::Zero) => {}
                Some(Trit::One) => base |= 1 << k,
                Some(Trit::Star) => free |= 1 << k,
                None => return Err(Error::parse(line, col + k, format!("invalid input symbol {c:?}"))),
            }
        }
        if on {
            let mut sub = 0u64;
            loop {
                table.set(base | sub, true);
                sub = sub.wrapping_sub(free) & free;
                if sub == 0 {
                    break;
                }
            }
        }
    }
    match (tt, n.or(declared)) {
        (Some(t), _) => Ok(t),
        (None, Some(nv)) => TruthTable::empty(nv),
        (None, None) => Err(Error::parse(1, 1, "missing .i declaration")),
    }
}

/// Serializes `tt`. Fails only for `Hex` with `n < 2`.
pub fn write(tt: &TruthTable, format: Format) -> Result<String> {
    let n = tt.vars();
    let mut out = String::new();
    match format {
        Format::Bits => {
            out.reserve(tt.len() as usize + 1);
            for x in 0..tt.len() {
                out.push(if tt.get(x) { '1' } else { '0' });
            }
            out.push('\n');
        }
        Format::Hex => {
            if n < 2 {
                return Err(Error::VariableCount { n, max: MAX_VARS });
            }
            let digits = tt.len() / 4;
            out.reserve(digits as usize + 1);
            for k in (0..digits).rev() {
                let d = (0..4).fold(0u32, |acc, b| acc | ((tt.get(4 * k + b) as u32) << b));
                out.push(char::from_digit(d, 16).expect("nibble").to_ascii_uppercase());
            }
            out.push('\n');
        }
        Format::Minterms => {
            writeln!(out, ".i {n}").unwrap();
            for x in tt.support() {
                out.extend((0..n).map(|k| if (x >> k) & 1 == 1 { '1' } else { '0' }));
                out.push('\n');
            }
        }
        Format::PlaLite => {
            writeln!(out, ".i {n}\n.o 1\n.p {}", tt.count_ones()).unwrap();
            for x in tt.support() {
                out.extend((0..n).map(|k| if (x >> k) & 1 == 1 { '1' } else { '0' }));
                out.push_str(" 1\n");
            }
            out.push_str(".e\n");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bits_example() {
        let tt = parse("0001", Format::Bits, None).unwrap();
        assert_eq!(tt.vars(), 2);
        assert_eq!(tt.support().collect::<Vec<_>>(), [3]);
    }

    #[test]
    fn hex_example() {
        let tt = parse("8", Format::Hex, None).unwrap();
        assert_eq!(tt.vars(), 2);
        assert_eq!(tt.support().collect::<Vec<_>>(), [3]);
        assert_eq!(write(&tt, Format::Hex).unwrap(), "8\n");
        // agrees with the bits writer
        assert_eq!(write(&tt, Format::Bits).unwrap(), "0001\n");
        // two digits: last digit is points 0..4
        let tt = parse("1 0", Format::Hex, None).unwrap();
        assert_eq!(tt.support().collect::<Vec<_>>(), [4]);
    }

    #[test]
    fn minterms_example() {
        let tt = parse("11\n", Format::Minterms, None).unwrap();
        assert_eq!(tt, parse("0001", Format::Bits, None).unwrap());
        let tt = parse(".i 2\n3\n", Format::Minterms, None).unwrap();
        assert_eq!(tt.support().collect::<Vec<_>>(), [3]);
        // x1 first: "100" is point 1
        let tt = parse("100\n# comment\n 001 \n", Format::Minterms, None).unwrap();
        assert_eq!(tt.support().collect::<Vec<_>>(), [1, 4]);
        let tt = parse("1\n0\n", Format::Minterms, Some(1)).unwrap();
        assert_eq!(tt.count_ones(), 2);
    }

    #[test]
    fn pla_example() {
        let src = ".i 3\n.o 1\n.p 2\n11- 1\n0-1 1\n000 0\n.e\n";
        let tt = parse(src, Format::PlaLite, None).unwrap();
        // 11- covers points 3, 7; 0-1 covers 4, 6
        assert_eq!(tt.support().collect::<Vec<_>>(), [3, 4, 6, 7]);
        let empty = parse(".i 4\n.e\n", Format::PlaLite, None).unwrap();
        assert_eq!((empty.vars(), empty.count_ones()), (4, 0));
    }

    #[test]
    fn parse_errors_carry_position() {
        assert!(matches!(parse("012", Format::Bits, None), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(parse("000", Format::Bits, None), Err(Error::Parse { .. })));
        assert!(matches!(parse("0001", Format::Bits, Some(3)), Err(Error::Parse { .. })));
        assert!(matches!(parse("8g", Format::Hex, None), Err(Error::Parse { line: 1, column: 2, .. })));
        assert!(matches!(parse("11\n101\n", Format::Minterms, None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("3\n", Format::Minterms, None), Err(Error::Parse { .. })));
        assert!(matches!(parse(".i 2\n9\n", Format::Minterms, None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse(".i 2\n1x 1\n", Format::PlaLite, None), Err(Error::Parse { line: 2, column: 2, .. })));
        assert!(matches!(parse(".i 2\n11 2\n", Format::PlaLite, None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse(".i 2\n111 1\n", Format::PlaLite, None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse(".i 2\n", Format::PlaLite, Some(3)), Err(Error::Parse { .. })));
        assert!(matches!(parse("11 1\n", Format::PlaLite, None), Err(Error::Parse { .. })));
    }

    #[test]
    fn hex_needs_two_variables() {
        let tt = TruthTable::full(1).unwrap();
        assert!(write(&tt, Format::Hex).is_err());
    }

    #[test]
    fn extension_guess() {
        assert_eq!(Format::from_extension("a/maj3.bits"), Some(Format::Bits));
        assert_eq!(Format::from_extension("f.PLA"), Some(Format::PlaLite));
        assert_eq!(Format::from_extension("noext"), None);
    }

    fn arb_table() -> impl Strategy<Value = TruthTable> {
        (1u32..=16, any::<u64>(), 0.0f64..=1.0).prop_map(|(n, seed, d)| {
            crate::io::random_function(n, d, seed).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn write_then_parse_is_identity(tt in arb_table()) {
            for f in Format::ALL {
                if f == Format::Hex && tt.vars() < 2 {
                    continue;
                }
                let text = write(&tt, f).unwrap();
                let back = parse(&text, f, None).unwrap();
                prop_assert_eq!(&back, &tt, "format {}", f);
            }
        }
    }
}
