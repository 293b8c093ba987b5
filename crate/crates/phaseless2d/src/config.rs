//! Run configuration (TOML) and the small expression language used for
//! impedance profiles and refractive indices.
//!
//! Expression grammar (complex-valued functions of the boundary parameter t):
//!
//! ```text
//! sum    := prod (('+' | '-') prod)*
//! prod   := atom ('*' atom)*
//! atom   := NUMBER 'i'? | 'i' | 'sin' 't' | '(' sum ')' | '-' atom
//! ```
//!
//! Examples: `0`, `2+1.5i`, `(5+5i)*(1+0.5*sin t)`.

use crate::forward::{default_quadrature, Condition, Obstacle, ScatteringScene};
use crate::geometry::{BoundaryCurve, CurveKind, SamplingGrid};
use crate::{Complex, Error, Result, Vec2};
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// expressions
// ---------------------------------------------------------------------------

/// Parsed complex-valued expression in the boundary parameter t.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarExpr {
    Const(Complex),
    SinT,
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Neg(Box<ScalarExpr>),
}

impl ScalarExpr {
    pub fn constant(c: Complex) -> Self {
        ScalarExpr::Const(c)
    }

    pub fn zero() -> Self {
        ScalarExpr::Const(Complex::new(0.0, 0.0))
    }

    pub fn eval(&self, t: f64) -> Complex {
        match self {
            ScalarExpr::Const(c) => *c,
            ScalarExpr::SinT => Complex::new(t.sin(), 0.0),
            ScalarExpr::Add(a, b) => a.eval(t) + b.eval(t),
            ScalarExpr::Sub(a, b) => a.eval(t) - b.eval(t),
            ScalarExpr::Mul(a, b) => a.eval(t) * b.eval(t),
            ScalarExpr::Neg(a) => -a.eval(t),
        }
    }

    /// True when the expression does not depend on t.
    pub fn is_constant(&self) -> bool {
        match self {
            ScalarExpr::Const(_) => true,
            ScalarExpr::SinT => false,
            ScalarExpr::Add(a, b) | ScalarExpr::Sub(a, b) | ScalarExpr::Mul(a, b) => {
                a.is_constant() && b.is_constant()
            }
            ScalarExpr::Neg(a) => a.is_constant(),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        let tokens = lex(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in expression `{src}`")));
        }
        Ok(e)
    }
}

impl std::str::FromStr for ScalarExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    ImagNum(f64),
    I,
    SinT,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            'i' => {
                out.push(Token::I);
                i += 1;
            }
            's' => {
                let rest = &src[i..];
                if let Some(stripped) = rest.strip_prefix("sin") {
                    let stripped = stripped.trim_start();
                    if let Some(after) = stripped.strip_prefix('t') {
                        out.push(Token::SinT);
                        i = src.len() - after.len();
                    } else {
                        return Err(Error::Parse(format!("`sin` must be followed by `t` in `{src}`")));
                    }
                } else {
                    return Err(Error::Parse(format!("unexpected `s` in `{src}`")));
                }
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len()
                    && matches!(bytes[i] as char, '0'..='9' | '.' | 'e' | 'E')
                {
                    // allow exponent signs
                    if (bytes[i] as char == 'e' || bytes[i] as char == 'E')
                        && i + 1 < bytes.len()
                        && matches!(bytes[i + 1] as char, '+' | '-')
                    {
                        i += 1;
                    }
                    i += 1;
                }
                let num: f64 = src[start..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number `{}`", &src[start..i])))?;
                if i < bytes.len() && bytes[i] as char == 'i' {
                    out.push(Token::ImagNum(num));
                    i += 1;
                } else {
                    out.push(Token::Num(num));
                }
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}` in `{src}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn sum(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.prod()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.pos += 1;
                    acc = ScalarExpr::Add(Box::new(acc), Box::new(self.prod()?));
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = ScalarExpr::Sub(Box::new(acc), Box::new(self.prod()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.atom()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = ScalarExpr::Mul(Box::new(acc), Box::new(self.atom()?));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ScalarExpr> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(ScalarExpr::Const(Complex::new(v, 0.0)))
            }
            Some(Token::ImagNum(v)) => {
                self.pos += 1;
                Ok(ScalarExpr::Const(Complex::new(0.0, v)))
            }
            Some(Token::I) => {
                self.pos += 1;
                Ok(ScalarExpr::Const(Complex::new(0.0, 1.0)))
            }
            Some(Token::SinT) => {
                self.pos += 1;
                Ok(ScalarExpr::SinT)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                match self.tokens.get(self.pos) {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(ScalarExpr::Neg(Box::new(self.atom()?)))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// run configuration
// ---------------------------------------------------------------------------

/// One scatterer in the configuration file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstacleConfig {
    pub kind: CurveKind,
    #[serde(default)]
    pub center: [f64; 2],
    pub condition: String,
    /// Impedance profile expression (impedance condition only).
    #[serde(default)]
    pub rho: Option<String>,
    /// Refractive index expression, constant (medium condition only).
    #[serde(default)]
    pub n: Option<String>,
    /// Cells per side of the medium grid.
    #[serde(default)]
    pub medium_grid: Option<usize>,
    /// Boundary quadrature size override (even).
    #[serde(default)]
    pub quadrature: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridConfig {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { xmin: -6.0, xmax: 6.0, ymin: -6.0, ymax: 6.0, nx: 101, ny: 101 }
    }
}

fn default_m() -> usize {
    100
}

fn default_cutoff() -> f64 {
    1e-12
}

fn default_l() -> usize {
    128
}

/// Full description of a simulation / inversion run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub k: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(default = "default_l", rename = "L")]
    pub l: usize,
    #[serde(default = "default_m", rename = "M")]
    pub m: usize,
    #[serde(default)]
    pub delta: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_cutoff")]
    pub cutoff: f64,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub obstacle: Vec<ObstacleConfig>,
}

impl RunConfig {
    pub fn from_toml_str(src: &str) -> Result<Self> {
        let cfg: RunConfig =
            toml::from_str(src).map_err(|e| Error::Parse(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0) {
            return Err(Error::InvalidArgument(format!("k must be positive, got {}", self.k)));
        }
        if !(self.r > 0.0) {
            return Err(Error::InvalidArgument(format!("R must be positive, got {}", self.r)));
        }
        if self.l < 2 || self.l % 2 != 0 {
            return Err(Error::InvalidArgument(format!("L must be even and >= 2, got {}", self.l)));
        }
        if self.delta < 0.0 {
            return Err(Error::InvalidArgument(format!("delta must be >= 0, got {}", self.delta)));
        }
        if !(0.0..1.0).contains(&self.cutoff) {
            return Err(Error::InvalidArgument(format!(
                "cutoff must be in [0, 1), got {}",
                self.cutoff
            )));
        }
        for ob in &self.obstacle {
            match ob.condition.as_str() {
                "dirichlet" => {}
                "impedance" => {
                    let rho = ob.rho.as_deref().unwrap_or("0");
                    ScalarExpr::parse(rho)?;
                }
                "medium" => {
                    let n = ob.n.as_deref().ok_or_else(|| {
                        Error::Parse("medium obstacle needs an `n` field".into())
                    })?;
                    let expr = ScalarExpr::parse(n)?;
                    if !expr.is_constant() {
                        return Err(Error::Parse(
                            "refractive index must be a constant expression".into(),
                        ));
                    }
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unknown condition `{other}` (expected dirichlet/impedance/medium)"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn sampling_grid(&self) -> Result<SamplingGrid> {
        SamplingGrid::new(
            self.grid.xmin,
            self.grid.xmax,
            self.grid.ymin,
            self.grid.ymax,
            self.grid.nx,
            self.grid.ny,
        )
    }

    /// Build the scattering scene, applying the automatic quadrature default
    /// max(256, 12 points per wavelength) where no override is given.
    pub fn scene(&self) -> Result<ScatteringScene> {
        let mut obstacles = Vec::with_capacity(self.obstacle.len());
        for ob in &self.obstacle {
            let probe = BoundaryCurve::new(ob.kind, Vec2::new(ob.center[0], ob.center[1]), 256)?;
            let quad = match ob.quadrature {
                Some(q) => q,
                None => default_quadrature(&probe, self.k),
            };
            let curve = BoundaryCurve::new(ob.kind, Vec2::new(ob.center[0], ob.center[1]), quad)?;
            let condition = match ob.condition.as_str() {
                "dirichlet" => Condition::Dirichlet,
                "impedance" => {
                    ScalarExpr::parse(ob.rho.as_deref().unwrap_or("0")).map(Condition::Impedance)?
                }
                "medium" => {
                    let n = ScalarExpr::parse(ob.n.as_deref().unwrap())?.eval(0.0);
                    Condition::Medium { n, grid: ob.medium_grid.unwrap_or(64) }
                }
                _ => unreachable!("validated"),
            };
            obstacles.push(Obstacle { curve, condition });
        }
        ScatteringScene::new(self.k, obstacles)
    }
}
