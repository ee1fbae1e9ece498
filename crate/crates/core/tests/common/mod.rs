//! Shared helpers: fixture trajectories and a reader for y-variable formulas
//! written in TeX-like notation, e.g. `y_1^{-1}(1+y_2+\alpha y_1y_2)`.

#![allow(dead_code)]

use gencluster::arith::{rational_from_int, RatFunc};
use gencluster::fixtures::Fixture;
use gencluster::seed::{run_sequence, MutationTrajectory};
use gencluster::semifield::Generators;

pub fn trajectory(f: &Fixture) -> MutationTrajectory {
    run_sequence(&f.seed().unwrap(), &f.ks).unwrap()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn tokenize(src: &str) -> Vec<Tok> {
    // a backslash starts a new symbol; subscripts are dropped
    let cleaned: String = src
        .chars()
        .filter(|&c| c != '_')
        .map(|c| if c == '\\' { ' ' } else { c })
        .collect();
    let chars: Vec<char> = cleaned.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\n' | '\t' => i += 1,
            '+' | '-' | '*' | '^' | '(' | ')' | '{' | '}' => {
                out.push(match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    _ => Tok::RBrace,
                });
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().unwrap()));
            }
            a if a.is_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_alphabetic() {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => panic!("unexpected character {other:?} in formula"),
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) {
        let got = self.next();
        assert_eq!(got, Some(t), "malformed formula");
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> RatFunc {
        let mut acc = self.term();
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term());
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term());
                }
                _ => return acc,
            }
        }
    }

    fn term(&mut self) -> RatFunc {
        let mut acc = self.power();
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.power());
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power());
                }
                _ => return acc,
            }
        }
    }

    fn exponent(&mut self) -> i64 {
        let braced = self.peek() == Some(&Tok::LBrace);
        if braced {
            self.next();
        }
        let neg = self.peek() == Some(&Tok::Minus);
        if neg {
            self.next();
        }
        let e = match self.next() {
            Some(Tok::Num(n)) => n,
            other => panic!("expected exponent, got {other:?}"),
        };
        if braced {
            self.expect(Tok::RBrace);
        }
        if neg {
            -e
        } else {
            e
        }
    }

    fn power(&mut self) -> RatFunc {
        let base = self.atom();
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let e = self.exponent();
            base.pow(e)
        } else {
            base
        }
    }

    fn atom(&mut self) -> RatFunc {
        match self.next() {
            Some(Tok::Num(n)) => RatFunc::constant(self.nvars(), rational_from_int(n)),
            Some(Tok::Ident(name)) => {
                let slot = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .unwrap_or_else(|| panic!("unknown symbol {name}"));
                RatFunc::var(self.nvars(), slot)
            }
            Some(Tok::LParen) => {
                let e = self.expr();
                self.expect(Tok::RParen);
                e
            }
            Some(Tok::Minus) => self.atom().neg(),
            other => panic!("unexpected token {other:?}"),
        }
    }
}

/// Reads a formula over the semifield generators of `gens`.
pub fn parse_formula(src: &str, gens: &Generators) -> RatFunc {
    let mut p = Parser {
        toks: tokenize(src),
        pos: 0,
        names: gens.names(),
    };
    let e = p.expr();
    assert!(p.pos == p.toks.len(), "trailing input in {src}");
    e
}

/// `y_{k_t}[t]` for `t = 1..=6` along `mu_1, mu_2, ...` on the B2 seed.
pub const B2_Y: [&str; 6] = [
    "y_1",
    "y_2(1+\\alpha y_1+y_1^2)",
    "y_1^{-1}(1+y_2+\\alpha y_1y_2+y_1^2y_2)",
    "y_1^{-2}y_2^{-1}(1+2y_2+y_2^2+\\alpha y_1y_2+\\alpha y_1y_2^2+y_1^2y_2^2)",
    "y_1^{-1}y_2^{-1}(1+y_2)",
    "y_2^{-1}",
];

/// `y_{k_t}[t]` for `t = 1..=8` on the G2 seed.
pub const G2_Y: [&str; 8] = [
    "y_1",
    "y_2(1+\\alpha y_1+\\beta y_1^2+y_1^3)",
    "y_1^{-1}(1+y_2+\\alpha y_1y_2+\\beta y_1^2y_2+y_1^3y_2)",
    "y_1^{-3}y_2^{-1}(1+3y_2+3y_2^2+y_2^3+2\\alpha y_1y_2+4\\alpha y_1y_2^2+2\\alpha y_1y_2^3
        +\\beta y_1^2y_2+\\alpha^2y_1^2y_2^2+3\\beta y_1^2y_2^2+\\alpha^2y_1^2y_2^3+2\\beta y_1^2y_2^3
        +\\alpha\\beta y_1^3y_2^2+2\\alpha\\beta y_1^3y_2^3+3y_1^3y_2^2+2y_1^3y_2^3
        +\\alpha y_1^4y_2^2+2\\alpha y_1^4y_2^3+\\beta^2y_1^4y_2^3+2\\beta y_1^5y_2^3+y_1^6y_2^3)",
    "y_1^{-2}y_2^{-1}(1+2y_2+y_2^2+\\alpha y_1y_2+\\alpha y_1y_2^2+\\beta y_1^2y_2^2+y_1^3y_2^2)",
    "y_1^{-3}y_2^{-2}(1+3y_2+3y_2^2+y_2^3+\\alpha y_1y_2+2\\alpha y_1y_2^2+\\alpha y_1y_2^3
        +\\beta y_1^2y_2^2+\\beta y_1^2y_2^3+y_1^3y_2^3)",
    "y_1^{-1}y_2^{-1}(1+y_2)",
    "y_2^{-1}",
];

pub const B2_SIGNS: [i64; 6] = [1, 1, -1, -1, -1, -1];
pub const G2_SIGNS: [i64; 8] = [1, 1, -1, -1, -1, -1, -1, -1];

/// Indices `t` (0-based) where the engine's `y_{k_t}[t]` differs from `expected`.
pub fn y_mismatches(traj: &MutationTrajectory, expected: &[&str]) -> Vec<usize> {
    let gens = traj.initial().generators().clone();
    assert_eq!(traj.len(), expected.len());
    traj.ks
        .iter()
        .enumerate()
        .filter(|&(t, &k)| {
            let want = parse_formula(expected[t], &gens);
            !traj.seeds[t].y[k].to_ratfunc().equals(&want)
        })
        .map(|(t, _)| t)
        .collect()
}

/// Double-exponential quadrature on `[a, b]`, refined until two levels
/// agree to `1e-14` relative.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let pi2 = std::f64::consts::FRAC_PI_2;
    let node = |t: f64| {
        let u = pi2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // distance from the nearer endpoint, in units of `half`
        let gap = 2.0 * e / (1.0 + e);
        let w = pi2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        let x = if t < 0.0 { a + half * gap } else { b - half * gap };
        (x, w)
    };
    let eval = |t: f64| {
        let (x, w) = node(t);
        if w == 0.0 || x <= a || x >= b {
            0.0
        } else {
            w * f(x)
        }
    };
    let tmax = 4.5;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h * half;
    for _ in 0..12 {
        h /= 2.0;
        let mut k = 1;
        while k as f64 * h <= tmax {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let cur = sum * h * half;
        if (cur - prev).abs() <= 1e-14 * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// Classical Rogers dilogarithm `L(x) = Li2(x) + (1/2) log x log(1-x)` on
/// `[0, 1]`, from its integral form.
pub fn classical_rogers(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    -0.5 * tanh_sinh(|t| (-t).ln_1p() / t + t.ln() / (1.0 - t), 0.0, x)
}

/// `L~_{d,z}(x)` for `x > 0` straight from its definition as an integral of
/// `log P / y`.
pub fn rogers_tilde_oracle(x: f64, z: &[f64]) -> f64 {
    let log_p = |y: f64| z.iter().rev().fold(0.0, |acc, c| acc * y + c).ln();
    tanh_sinh(|y| log_p(y) / y, 0.0, x) - 0.5 * x.ln() * log_p(x)
}
