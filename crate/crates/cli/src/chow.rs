//! A small prefix language over the Chow rings of `G`, `G × G`, `E` and the
//! blowup `B`.
//!
//! ```text
//! mul E D1_tilde
//! push sigma[2,1]
//! mul D1_tilde (pull sigma[1|0])
//! ```
//!
//! Atoms: `D1`, `D1_tilde`, `Gamma_tilde`, `E`, `zeta`, `sigma[a,b]` (on `G`),
//! `sigma[a|b]` (on `G × G`). Operations: `mul`, `add`, `sub`, `push`
//! (`i_*: G → G×G`, `j_*: E → B`), `pull` (`π^*: G×G → B`, `G → E`),
//! `restrict` (`i^*: G×G → G`). Lines starting with `#` are comments.

use skewcalc_core::blowup::{i_pullback, i_pushforward, Blowup, BlowupClass, EClass, TensorClass};
use skewcalc_core::schubert::ChowClass;
use skewcalc_core::ParamPoly;

#[derive(Debug)]
pub enum ChowError {
    /// Unknown identifier or malformed expression.
    Parse(String),
    /// The core library rejected the operation.
    Core(skewcalc_core::Error),
}

impl From<skewcalc_core::Error> for ChowError {
    fn from(e: skewcalc_core::Error) -> Self {
        ChowError::Core(e)
    }
}

impl std::fmt::Display for ChowError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChowError::Parse(m) => write!(f, "{m}"),
            ChowError::Core(e) => write!(f, "{e}"),
        }
    }
}

type Result<T> = std::result::Result<T, ChowError>;

#[derive(Debug, Clone)]
pub enum Value {
    G(ChowClass),
    GG(TensorClass),
    E(EClass),
    B(BlowupClass),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::G(_) => "A(G)",
            Value::GG(_) => "A(G×G)",
            Value::E(_) => "A(E)",
            Value::B(_) => "A(B)",
        }
    }
}

pub struct Evaluator {
    blowup: Blowup,
    dv: ParamPoly,
    genus: ParamPoly,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn tokenize(line: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                out.push(Token::Open);
                chars.next();
            }
            ')' => {
                out.push(Token::Close);
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut w = String::new();
                let mut depth = 0;
                while let Some(&c) = chars.peek() {
                    if depth == 0 && (c.is_whitespace() || c == '(' || c == ')') {
                        break;
                    }
                    match c {
                        '[' => depth += 1,
                        ']' => depth -= 1,
                        _ => {}
                    }
                    w.push(c);
                    chars.next();
                }
                out.push(Token::Word(w));
            }
        }
    }
    Ok(out)
}

fn parse_parts(s: &str) -> Result<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| ChowError::Parse(format!("bad partition entry {x:?}"))))
        .collect()
}

impl Evaluator {
    /// Classes of curves use the symbolic `dv` and `g` unless given numbers.
    pub fn new(sub: usize, ambient: usize, dv: ParamPoly, genus: ParamPoly) -> Result<Self> {
        let ctx = skewcalc_core::schubert::GrassContext::new(sub, ambient)?;
        Ok(Self { blowup: Blowup::new(ctx)?, dv, genus })
    }

    pub fn eval_line(&self, line: &str) -> Result<Value> {
        let tokens = tokenize(line)?;
        let mut pos = 0;
        let v = self.expr(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(ChowError::Parse(format!("trailing input in {line:?}")));
        }
        Ok(v)
    }

    fn expr(&self, tokens: &[Token], pos: &mut usize) -> Result<Value> {
        let tok = tokens.get(*pos).ok_or_else(|| ChowError::Parse("unexpected end of expression".into()))?.clone();
        *pos += 1;
        match tok {
            Token::Open => {
                let v = self.expr(tokens, pos)?;
                if tokens.get(*pos) != Some(&Token::Close) {
                    return Err(ChowError::Parse("missing ')'".into()));
                }
                *pos += 1;
                Ok(v)
            }
            Token::Close => Err(ChowError::Parse("unexpected ')'".into())),
            Token::Word(w) => match w.as_str() {
                "mul" | "add" | "sub" => {
                    let a = self.expr(tokens, pos)?;
                    let b = self.expr(tokens, pos)?;
                    self.binary(&w, a, b)
                }
                "push" | "pull" | "restrict" => {
                    let a = self.expr(tokens, pos)?;
                    self.unary(&w, a)
                }
                _ => self.atom(&w),
            },
        }
    }

    fn atom(&self, w: &str) -> Result<Value> {
        let ctx = self.blowup.ctx();
        match w {
            "D1" => Ok(Value::GG(self.blowup.class_d1()?)),
            "D1_tilde" => Ok(Value::B(self.blowup.d1_tilde()?.class)),
            "Gamma_tilde" => Ok(Value::B(self.blowup.gamma_tilde(&self.dv, &self.genus)?.class)),
            "E" => Ok(Value::B(BlowupClass::exceptional_divisor(ctx))),
            "zeta" => Ok(Value::E(self.blowup.zeta_power(1))),
            "1" => Ok(Value::G(ChowClass::one(ctx))),
            _ => {
                let inner = w
                    .strip_prefix("sigma[")
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| ChowError::Parse(format!("unknown identifier {w:?}")))?;
                match inner.split_once('|') {
                    Some((a, b)) => Ok(Value::GG(TensorClass::sigma(ctx, &parse_parts(a)?, &parse_parts(b)?)?)),
                    None => Ok(Value::G(ChowClass::sigma(ctx, &parse_parts(inner)?)?)),
                }
            }
        }
    }

    fn unary(&self, op: &str, a: Value) -> Result<Value> {
        match (op, a) {
            ("push", Value::G(c)) => Ok(Value::GG(i_pushforward(&c))),
            ("push", Value::E(e)) => Ok(Value::B(self.blowup.normal_form(&BlowupClass::pushforward(e))?)),
            ("pull", Value::GG(t)) => Ok(Value::B(BlowupClass::pullback(t))),
            ("pull", Value::G(c)) => Ok(Value::E(EClass::from_base(&c))),
            ("restrict", Value::GG(t)) => Ok(Value::G(i_pullback(&t))),
            (op, a) => Err(ChowError::Parse(format!("{op} is not defined on {}", a.kind()))),
        }
    }

    fn binary(&self, op: &str, a: Value, b: Value) -> Result<Value> {
        let b = match (&a, b) {
            // pull classes on G×G up when combined with blowup classes
            (Value::B(_), Value::GG(t)) => Value::B(BlowupClass::pullback(t)),
            (_, b) => b,
        };
        let a = match (a, &b) {
            (Value::GG(t), Value::B(_)) => Value::B(BlowupClass::pullback(t)),
            (a, _) => a,
        };
        Ok(match (op, a, b) {
            ("mul", Value::G(x), Value::G(y)) => Value::G(x.product(&y)?),
            ("mul", Value::GG(x), Value::GG(y)) => Value::GG(x.product(&y)?),
            ("mul", Value::E(x), Value::E(y)) => Value::E(self.blowup.mult_e(&x, &y)?),
            ("mul", Value::B(x), Value::B(y)) => Value::B(self.blowup.mult_b(&x, &y)?),
            ("add", Value::G(x), Value::G(y)) => Value::G(x.add(&y)?),
            ("add", Value::GG(x), Value::GG(y)) => Value::GG(x.add(&y)?),
            ("add", Value::E(x), Value::E(y)) => Value::E(x.add(&y)?),
            ("add", Value::B(x), Value::B(y)) => Value::B(self.blowup.normal_form(&x.add(&y)?)?),
            ("sub", Value::G(x), Value::G(y)) => Value::G(x.sub(&y)?),
            ("sub", Value::GG(x), Value::GG(y)) => Value::GG(x.sub(&y)?),
            ("sub", Value::E(x), Value::E(y)) => Value::E(x.sub(&y)?),
            ("sub", Value::B(x), Value::B(y)) => Value::B(self.blowup.normal_form(&x.sub(&y)?)?),
            (op, a, b) => return Err(ChowError::Parse(format!("{op} of {} and {}", a.kind(), b.kind()))),
        })
    }

    /// Normal form; blowup classes supported on `E` are shown as `j*(…)`.
    pub fn display(&self, v: &Value) -> Result<String> {
        Ok(match v {
            Value::G(c) => c.to_string(),
            Value::GG(t) => t.to_string(),
            Value::E(e) => e.to_string(),
            Value::B(b) => match self.blowup.exceptional_form(b)? {
                Some(e) => BlowupClass::pushforward(e).to_string(),
                None => self.blowup.normal_form(b)?.to_string(),
            },
        })
    }

    pub fn space(v: &Value) -> &'static str {
        v.kind()
    }
}
