//! Function-spec mini language.
//!
//! ```text
//! spec     := moebius | binpow | expline | spiralpow | poly
//! moebius  := "moebius:" "A=" real "," "B=" real
//! binpow   := "binpow:" "B=" real "," "lam=" complex
//! expline  := "expline:" "C=" complex
//! spiralpow:= "spiralpow:" "p=" int "," "a=" complex "," "b=" complex "," "alpha=" real "," "lam=" real
//! poly     := "poly:" "p=" int (";" "a" int "=" complex)*
//! complex  := real | real ("+"|"-") unsigned "i" | real "i"
//! ```
//!
//! Keyed fields may appear in any order; each must appear exactly once.
//! Whitespace is allowed only around the whole spec.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::zoo::{make_pvalent, AnalyticMap, DominantSpec, PValentMap, PValentSpec};

/// Parsed spec: either a dominant family or a p-valent polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Dominant(DominantSpec<f64>),
    PValent(PValentSpec<f64>),
}

impl FunctionSpec {
    /// Builds the map; parameter-range violations surface here, not in the parser.
    pub fn build(&self) -> Result<Box<dyn AnalyticMap<f64>>> {
        match self {
            FunctionSpec::Dominant(d) => d.build(),
            FunctionSpec::PValent(p) => Ok(Box::new(make_pvalent(p)?)),
        }
    }

    pub fn pvalent(&self) -> Option<&PValentSpec<f64>> {
        match self {
            FunctionSpec::PValent(p) => Some(p),
            FunctionSpec::Dominant(_) => None,
        }
    }

    pub fn build_pvalent(&self) -> Result<PValentMap<f64>> {
        match self {
            FunctionSpec::PValent(p) => make_pvalent(p),
            FunctionSpec::Dominant(d) => Err(Error::Usage(format!(
                "expected a p-valent 'poly:' spec, got the {} family",
                d.family()
            ))),
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, at: usize, expected: impl Into<String>) -> Error {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            col,
            expected: expected.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..self.end]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(self.pos, format!("'{s}'")))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.end
    }

    fn ident(&mut self) -> &'a str {
        let r = self.rest();
        let n = r.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(r.len());
        self.pos += n;
        &r[..n]
    }

    fn digits(&mut self) -> usize {
        let r = self.rest();
        let n = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        self.pos += n;
        n
    }

    /// Unsigned decimal: `digits [. digits] [e [+-] digits]`, at least one digit in the mantissa.
    fn unsigned(&mut self) -> Result<f64> {
        let start = self.pos;
        let mut n = self.digits();
        if self.eat(".") {
            n += self.digits();
        }
        if n == 0 {
            self.pos = start;
            return Err(self.err(start, "number"));
        }
        let save = self.pos;
        if self.eat("e") || self.eat("E") {
            let _ = self.eat("+") || self.eat("-");
            if self.digits() == 0 {
                self.pos = save;
                return Err(self.err(self.pos, "exponent digits"));
            }
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map_err(|_| self.err(start, "number"))
    }

    fn signed(&mut self) -> Result<f64> {
        let neg = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let v = self.unsigned()?;
        Ok(if neg { -v } else { v })
    }

    fn real(&mut self) -> Result<f64> {
        let start = self.pos;
        let v = self.signed()?;
        if self.peek() == Some('i') {
            return Err(self.err(self.pos, "real number (no imaginary part)"));
        }
        if !v.is_finite() {
            return Err(self.err(start, "finite number"));
        }
        Ok(v)
    }

    fn complex(&mut self) -> Result<Complex<f64>> {
        let start = self.pos;
        let a = self.signed()?;
        let z = if self.eat("i") {
            Complex::new(0.0, a)
        } else if matches!(self.peek(), Some('+') | Some('-')) {
            let neg = self.peek() == Some('-');
            self.pos += 1;
            let b = self.unsigned()?;
            self.expect("i")?;
            Complex::new(a, if neg { -b } else { b })
        } else {
            Complex::new(a, 0.0)
        };
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(self.err(start, "finite number"));
        }
        Ok(z)
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        if self.digits() == 0 {
            return Err(self.err(start, "unsigned integer"));
        }
        self.src[start..self.pos]
            .parse::<u32>()
            .map_err(|_| self.err(start, "unsigned integer in range"))
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Real,
    Complex,
    Int,
}

#[derive(Clone, Copy)]
enum Val {
    R(f64),
    C(Complex<f64>),
    I(u32),
}

impl Val {
    fn r(self) -> f64 {
        match self {
            Val::R(x) => x,
            _ => unreachable!(),
        }
    }
    fn c(self) -> Complex<f64> {
        match self {
            Val::C(x) => x,
            _ => unreachable!(),
        }
    }
    fn i(self) -> u32 {
        match self {
            Val::I(x) => x,
            _ => unreachable!(),
        }
    }
}

/// Comma-separated `key=value` list with a fixed key set.
fn fields(cur: &mut Cursor, keys: &[(&str, Kind)]) -> Result<BTreeMap<String, Val>> {
    let mut out = BTreeMap::new();
    let names: Vec<&str> = keys.iter().map(|k| k.0).collect();
    loop {
        let at = cur.pos;
        let key = cur.ident();
        let Some(&(name, kind)) = keys.iter().find(|k| k.0 == key) else {
            return Err(cur.err(at, format!("one of {}", names.join(", "))));
        };
        if out.contains_key(name) {
            return Err(cur.err(at, format!("no repeated key '{name}'")));
        }
        cur.expect("=")?;
        let v = match kind {
            Kind::Real => Val::R(cur.real()?),
            Kind::Complex => Val::C(cur.complex()?),
            Kind::Int => Val::I(cur.uint()?),
        };
        out.insert(name.to_string(), v);
        if out.len() == keys.len() {
            break;
        }
        if !cur.eat(",") {
            let missing: Vec<&str> = names.iter().copied().filter(|n| !out.contains_key(*n)).collect();
            return Err(cur.err(cur.pos, format!("',' then {}", missing.join(", "))));
        }
    }
    Ok(out)
}

/// Parses a function spec.
/// Parses a bare complex literal such as `3`, `-0.5+2i` or `1.5i`.
pub fn parse_complex(text: &str) -> Result<Complex<f64>> {
    let mut cur = Cursor {
        src: text,
        pos: 0,
        end: text.len(),
    };
    let z = cur.complex()?;
    if !cur.at_end() {
        return Err(cur.err(cur.pos, "end of number"));
    }
    Ok(z)
}

pub fn parse_function_spec(text: &str) -> Result<FunctionSpec> {
    let lead = text.len() - text.trim_start().len();
    let end = text.trim_end().len().max(lead);
    let mut cur = Cursor {
        src: text,
        pos: lead,
        end,
    };
    let at = cur.pos;
    let family = cur.ident();
    let expected_family = "family (moebius, binpow, expline, spiralpow, poly)";
    if !matches!(family, "moebius" | "binpow" | "expline" | "spiralpow" | "poly") {
        return Err(cur.err(at, expected_family));
    }
    cur.expect(":")?;
    let spec = match family {
        "moebius" => {
            let f = fields(&mut cur, &[("A", Kind::Real), ("B", Kind::Real)])?;
            FunctionSpec::Dominant(DominantSpec::Moebius {
                a: f["A"].r(),
                b: f["B"].r(),
            })
        }
        "binpow" => {
            let f = fields(&mut cur, &[("B", Kind::Real), ("lam", Kind::Complex)])?;
            FunctionSpec::Dominant(DominantSpec::BinomialPower {
                b: f["B"].r(),
                lambda: f["lam"].c(),
            })
        }
        "expline" => {
            let f = fields(&mut cur, &[("C", Kind::Complex)])?;
            FunctionSpec::Dominant(DominantSpec::ExpLine { c: f["C"].c() })
        }
        "spiralpow" => {
            let f = fields(
                &mut cur,
                &[
                    ("p", Kind::Int),
                    ("a", Kind::Complex),
                    ("b", Kind::Complex),
                    ("alpha", Kind::Real),
                    ("lam", Kind::Real),
                ],
            )?;
            FunctionSpec::Dominant(DominantSpec::SpiralPower {
                p: f["p"].i(),
                a: f["a"].c(),
                b: f["b"].c(),
                alpha: f["alpha"].r(),
                spiral_angle: f["lam"].r(),
            })
        }
        _ => {
            cur.expect("p=")?;
            let p_at = cur.pos;
            let p = cur.uint()?;
            if p == 0 {
                return Err(cur.err(p_at, "positive valence"));
            }
            let mut spec = PValentSpec::new(p);
            while cur.eat(";") {
                cur.expect("a")?;
                let k_at = cur.pos;
                let k = cur.uint()? as usize;
                if k <= p as usize {
                    return Err(cur.err(k_at, format!("coefficient index > {p}")));
                }
                if spec.tail.contains_key(&k) {
                    return Err(cur.err(k_at, format!("no repeated coefficient a{k}")));
                }
                if k > 4096 {
                    return Err(cur.err(k_at, "coefficient index <= 4096"));
                }
                cur.expect("=")?;
                spec = spec.with(k, cur.complex()?);
            }
            FunctionSpec::PValent(spec)
        }
    };
    if !cur.at_end() {
        return Err(cur.err(cur.pos, "end of spec"));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    fn c(re: f64, im: f64) -> num_complex::Complex<f64> {
        num_complex::Complex::new(re, im)
    }
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let id = parse_function_spec("poly:p=1").unwrap().build().unwrap();
        assert_eq!(id.eval(c(0.3, 0.2)), c(0.3, 0.2));
        let hp = parse_function_spec("moebius:A=1,B=-1").unwrap().build().unwrap();
        let z = c(0.2, 0.1);
        assert!((hp.eval(z) - (1.0 + z) / (1.0 - z)).norm() < 1e-15);
        let f = parse_function_spec("poly:p=2;a3=0.3+0.1i").unwrap();
        let m = f.build().unwrap();
        assert!((m.eval(z) - (z * z + c(0.3, 0.1) * z * z * z)).norm() < 1e-15);
        assert_eq!(
            f,
            FunctionSpec::PValent(PValentSpec::new(2).with(3, c(0.3, 0.1)))
        );
    }

    #[test]
    fn parses_every_family() {
        assert_eq!(
            parse_function_spec("binpow:B=-1,lam=2").unwrap(),
            FunctionSpec::Dominant(DominantSpec::BinomialPower { b: -1.0, lambda: c(2.0, 0.0) })
        );
        assert_eq!(
            parse_function_spec("binpow:lam=0.5-1.5i,B=0.25").unwrap(),
            FunctionSpec::Dominant(DominantSpec::BinomialPower { b: 0.25, lambda: c(0.5, -1.5) })
        );
        assert_eq!(
            parse_function_spec("expline:C=1e-1+2i").unwrap(),
            FunctionSpec::Dominant(DominantSpec::ExpLine { c: c(0.1, 2.0) })
        );
        assert_eq!(
            parse_function_spec("expline:C=-0.5i").unwrap(),
            FunctionSpec::Dominant(DominantSpec::ExpLine { c: c(0.0, -0.5) })
        );
        assert_eq!(
            parse_function_spec("  spiralpow:p=1,a=0.5,b=1,alpha=0,lam=0\n").unwrap(),
            FunctionSpec::Dominant(DominantSpec::SpiralPower {
                p: 1,
                a: c(0.5, 0.0),
                b: c(1.0, 0.0),
                alpha: 0.0,
                spiral_angle: 0.0
            })
        );
    }

    fn pos(text: &str) -> (usize, usize) {
        match parse_function_spec(text) {
            Err(Error::Parse { line, col, .. }) => (line, col),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn positioned_errors() {
        assert_eq!(pos("moebuis:A=1,B=0"), (1, 1));
        assert_eq!(pos("moebius:A=1;B=0"), (1, 12));
        assert_eq!(pos("moebius:A=x,B=0"), (1, 11));
        assert_eq!(pos("moebius:A=1,A=0"), (1, 13));
        assert_eq!(pos("moebius:A=1,B=0,"), (1, 16));
        assert_eq!(pos("binpow:B=0.5i,lam=1"), (1, 13));
        assert_eq!(pos("expline:C=1+i"), (1, 13));
        assert_eq!(pos("poly:p=2;a2=1"), (1, 11));
        assert_eq!(pos("poly:p=0"), (1, 8));
        assert_eq!(pos("poly:p=1;a3=1;a3=2"), (1, 16));
        assert_eq!(pos("poly:p=1 ;a2=1"), (1, 9));
        assert_eq!(pos("\n\npoly:p=1;b2=1"), (3, 10));
        assert_eq!(pos("expline:C=1e"), (1, 12));
    }

    #[test]
    fn semantic_errors_deferred_to_build() {
        let s = parse_function_spec("moebius:A=-1,B=1").unwrap();
        assert!(matches!(s.build(), Err(Error::ParameterOrderViolated(_))));
        let s = parse_function_spec("binpow:B=0,lam=1").unwrap();
        assert_eq!(s.build().err(), Some(Error::ZeroB));
        let s = parse_function_spec("expline:C=4").unwrap();
        assert!(matches!(s.build(), Err(Error::COutOfRange(_))));
    }

    #[test]
    fn descriptor_round_trip() {
        for text in [
            "moebius:A=1,B=-0.5",
            "binpow:B=-1,lam=2+0.5i",
            "expline:C=0.3-0.2i",
            "poly:p=2;a3=0.3+0.1i;a5=-0.01+0i",
        ] {
            let m = parse_function_spec(text).unwrap().build().unwrap();
            let again = parse_function_spec(&m.descriptor()).unwrap().build().unwrap();
            assert_eq!(m.eval(c(0.3, 0.4)), again.eval(c(0.3, 0.4)));
        }
    }

    proptest! {
        #[test]
        fn never_panics_on_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
            let s = String::from_utf8_lossy(&bytes);
            let _ = parse_function_spec(&s);
        }

        #[test]
        fn never_panics_on_grammar_soup(
            parts in proptest::collection::vec(
                prop_oneof![
                    Just("moebius:"), Just("binpow:"), Just("expline:"), Just("spiralpow:"),
                    Just("poly:"), Just("A="), Just("B="), Just("C="), Just("p="), Just("lam="),
                    Just("alpha="), Just("a"), Just("b="), Just(","), Just(";"), Just("1"), Just("-"),
                    Just("+"), Just("i"), Just("."), Just("e"), Just("3"), Just("0.5"), Just("\n"),
                ],
                0..16,
            )
        ) {
            let s: String = parts.concat();
            match parse_function_spec(&s) {
                Ok(spec) => { let _ = spec.build(); }
                Err(Error::Parse { line, col, .. }) => {
                    prop_assert!(line >= 1 && col >= 1);
                }
                Err(e) => prop_assert!(false, "unexpected error kind {e:?}"),
            }
        }
    }
}
