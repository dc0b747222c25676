//! Numeric certification of the measure analysis: constraint tables for
//! the simple and advanced suites, the dovetail combiner, and the live drop
//! audit.

use crate::branch::{val, BranchSeq, MeasureParams};
use crate::error::{Error, Result};
use crate::solver::Level;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Default tolerance on every slack.
pub const SLACK_TOL: f64 = 1e-9;

/// Band for the deliberately tight inequalities printed with rounded constants.
pub const TIGHT_TOL: f64 = 1e-4;

// ---------------------------------------------------------------------------
// Combiner
// ---------------------------------------------------------------------------

/// Exponent of the dovetail of an `e^{aμ+bk}` solver with an `e^{cn}` solver:
/// `d = 2c(a+b)/(a+2c)`.
pub fn combine_rate(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0 && c >= 0.0) || !(a + b + c).is_finite() {
        return Err(Error::Precondition(format!("combine_rate needs finite a, b, c ≥ 0 (got {a}, {b}, {c})")));
    }
    let den = a + 2.0 * c;
    if den <= 0.0 {
        return Err(Error::Precondition("combine_rate: a + 2c must be positive".into()));
    }
    Ok(2.0 * c * (a + b) / den)
}

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

/// Every constant the tables depend on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Simple-suite level parameters, degrees 4, 5, 6.
    pub simple: [MeasureParams; 3],
    /// Level-7 rate of the simple suite.
    pub simple_rate7: f64,
    /// Advanced degree-4 parameters.
    pub adv4: MeasureParams,
    /// Bonus parameters of the degree-4 analysis.
    pub alpha: f64,
    /// See `alpha`.
    pub beta: f64,
    /// Advanced degree-5 parameters for intensities 1, 2, 3.
    pub adv5: [MeasureParams; 3],
    /// Advanced degree-6 parameters for intensities 1, 2, 3.
    pub adv6: [MeasureParams; 3],
    /// Advanced degree-7 parameters.
    pub adv7: MeasureParams,
    /// Final advanced rate (degree ≥ 8 splitting).
    pub adv_rate8: f64,
    /// MaxIS-5 degree weights `w3, w4`.
    pub w5: [f64; 2],
    /// MaxIS-6 degree weights `w3, w4, w5`.
    pub w6: [f64; 3],
    /// MaxIS-7 degree weights `w3, w4, w5, w6`.
    pub w7: [f64; 4],
    /// AGVC rate.
    pub agvc: f64,
    /// MaxIS-Δ rates for Δ = 3..7.
    pub maxis: [f64; 5],
}

fn mp(a: f64, b: f64) -> MeasureParams {
    MeasureParams { a, b }
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            simple: [mp(0.71808, 0.019442), mp(0.44849, 0.085297), mp(0.20199, 0.160637)],
            simple_rate7: 1.2575,
            adv4: mp(0.59394, 0.039361),
            alpha: 0.03894,
            beta: 0.05478,
            adv5: [mp(0.496708, 0.064301), mp(0.437086, 0.080751), mp(0.379406, 0.097471)],
            adv6: [mp(0.254135, 0.137360), mp(0.202348, 0.154382), mp(0.166944, 0.166214)],
            adv7: mp(0.01266, 0.221723),
            adv_rate8: 1.25284,
            w5: [0.5093, 0.8243],
            w6: [0.49969, 0.76163, 0.92401],
            w7: [0.65077, 0.78229, 0.89060, 0.96384],
            agvc: 2.3146,
            maxis: [1.083506, 1.137595, 1.17366, 1.18922, 1.19698],
        }
    }
}

impl Constants {
    /// Copy with `delta` added to every `a` parameter.
    pub fn shift_a(&self, delta: f64) -> Constants {
        let sh = |p: MeasureParams| mp(p.a + delta, p.b);
        let mut c = self.clone();
        c.simple = c.simple.map(sh);
        c.adv4 = sh(c.adv4);
        c.adv5 = c.adv5.map(sh);
        c.adv6 = c.adv6.map(sh);
        c.adv7 = sh(c.adv7);
        c
    }

    fn ln_maxis(&self, d: usize) -> f64 {
        self.maxis[d - 3].ln()
    }
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

/// Sum/max/product of exponentials `e^{−(x·a + y·b + p·α + q·β)}`.
#[derive(Clone, Debug)]
enum Expr {
    Exp { x: f64, y: f64, p: f64, q: f64 },
    Sum(Vec<Expr>),
    Max(Vec<Expr>),
    Prod(Box<Expr>, Box<Expr>),
}

struct Env {
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
}

impl Expr {
    fn eval(&self, env: &Env) -> f64 {
        match self {
            Expr::Exp { x, y, p, q } => (-(x * env.a + y * env.b + p * env.alpha + q * env.beta)).exp(),
            Expr::Sum(v) => v.iter().map(|e| e.eval(env)).sum(),
            Expr::Max(v) => v.iter().map(|e| e.eval(env)).fold(f64::NEG_INFINITY, f64::max),
            Expr::Prod(l, r) => l.eval(env) * r.eval(env),
        }
    }

    fn times(self, other: Expr) -> Expr {
        Expr::Prod(Box::new(self), Box::new(other))
    }

    fn alpha(self) -> Expr {
        self.shift(1.0, 0.0)
    }

    fn beta(self) -> Expr {
        self.shift(0.0, 1.0)
    }

    fn shift(self, dp: f64, dq: f64) -> Expr {
        match self {
            Expr::Exp { x, y, p, q } => Expr::Exp { x, y, p: p + dp, q: q + dq },
            other => panic!("shift applies to a single exponential, not {other:?}"),
        }
    }
}

/// `e^{−xa − yb}`.
fn e(x: f64, y: f64) -> Expr {
    Expr::Exp { x, y, p: 0.0, q: 0.0 }
}

fn sum(v: Vec<Expr>) -> Expr {
    Expr::Sum(v)
}

fn max(v: Vec<Expr>) -> Expr {
    Expr::Max(v)
}

/// `val` of a two-way branch-seq `[(x1,y1),(x2,y2)]`.
fn pair(x1: f64, y1: f64, x2: f64, y2: f64) -> Expr {
    sum(vec![e(x1, y1), e(x2, y2)])
}

fn psi5() -> Expr {
    max(vec![e(0.0, 2.0), pair(1.0, 4.0, 1.0, 6.0), pair(0.5, 2.0, 2.0, 6.0)])
}

fn psi6() -> Expr {
    max(vec![e(0.0, 2.0), pair(1.0, 4.0, 1.0, 6.0), pair(0.5, 3.0, 2.0, 6.0), pair(0.5, 2.0, 2.5, 7.0)])
}

fn psi7() -> Expr {
    max(vec![e(0.0, 2.0), pair(1.0, 4.0, 1.0, 6.0), pair(0.5, 3.0, 2.0, 6.0), pair(0.5, 2.0, 2.5, 8.0)])
}

fn gamma2() -> Expr {
    max(vec![e(0.0, 1.0), pair(1.0, 4.0, 1.0, 4.0), pair(0.5, 3.0, 2.0, 5.0)])
}

fn gamma3() -> Expr {
    max(vec![e(0.0, 1.0), pair(1.0, 4.0, 1.0, 5.0), pair(0.5, 4.0, 2.0, 5.0)])
}

fn gamma_r(r: f64) -> Expr {
    max(vec![e(0.0, 1.0), pair(1.0, r, 1.0, r + 2.0)])
}

/// `γ*_r`, the bonus-aware variant used by the degree-4 analysis.
fn gamma_star(r: f64) -> Expr {
    max(vec![e(0.0, 1.0).alpha(), sum(vec![e(1.0, r).alpha(), e(1.0, r + 2.0).alpha()])])
}

/// Right-hand side of a branching inequality.
#[derive(Clone, Copy, Debug)]
enum Bound {
    One,
    NegAlpha,
    NegBeta,
}

// ---------------------------------------------------------------------------
// Rows and reports
// ---------------------------------------------------------------------------

/// One evaluated inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintRow {
    /// Label, e.g. `(5-3)@a52`.
    pub label: String,
    /// Left-hand side value.
    pub value: f64,
    /// Required bound: `value ≤ bound`.
    pub bound: f64,
    /// `bound − value`.
    pub slack: f64,
    /// Allowed negative slack.
    pub tolerance: f64,
    /// `slack ≥ −tolerance`.
    pub pass: bool,
    /// Informational rows are reported, never asserted.
    pub informational: bool,
}

impl ConstraintRow {
    fn new(label: impl Into<String>, value: f64, bound: f64, tolerance: f64) -> Self {
        let slack = bound - value;
        ConstraintRow { label: label.into(), value, bound, slack, tolerance, pass: slack >= -tolerance, informational: false }
    }

    fn info(label: impl Into<String>, value: f64, bound: f64) -> Self {
        let mut r = ConstraintRow::new(label, value, bound, 0.0);
        r.informational = true;
        r
    }
}

/// Constraint profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// The four simple-suite levels run by the solvers.
    Simple,
    /// Degree-4 analysis with bonus parameters.
    Advanced4,
    /// Degree-5 analysis, three intensities.
    Advanced5,
    /// Degree-6 analysis, three intensities.
    Advanced6,
    /// Degree-7 analysis and the final degree-8 split.
    Advanced7,
}

impl Profile {
    /// Every profile.
    pub const ALL: [Profile; 5] = [Profile::Simple, Profile::Advanced4, Profile::Advanced5, Profile::Advanced6, Profile::Advanced7];

    /// Kebab-case name.
    pub fn name(self) -> &'static str {
        match self {
            Profile::Simple => "simple",
            Profile::Advanced4 => "advanced-4",
            Profile::Advanced5 => "advanced-5",
            Profile::Advanced6 => "advanced-6",
            Profile::Advanced7 => "advanced-7",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Profile> {
        Profile::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::Usage(format!("unknown profile '{s}'")))
    }
}

/// Evaluated profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    /// Which profile.
    pub profile: Profile,
    /// One row per inequality.
    pub rows: Vec<ConstraintRow>,
    /// Whether every non-informational row passes.
    pub pass: bool,
}

impl ConstraintReport {
    /// Row by exact label.
    pub fn row(&self, label: &str) -> Option<&ConstraintRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Tab-separated table: label, value, bound, slack, pass.
    pub fn to_table(&self) -> String {
        let mut s = String::from("label\tvalue\tbound\tslack\tpass\n");
        for r in &self.rows {
            let status = if r.informational { "info" } else if r.pass { "pass" } else { "FAIL" };
            s.push_str(&format!("{}\t{:.6}\t{:.6}\t{:.6}\t{}\n", r.label, r.value, r.bound, r.slack, status));
        }
        s
    }
}

/// Collects rows for one profile.
struct Table<'c> {
    c: &'c Constants,
    rows: Vec<ConstraintRow>,
}

/// Labels evaluated with [`TIGHT_TOL`]: the rounded constants put them
/// within 10⁻⁴ of equality.
const TIGHT: &[&str] = &["(7-2)"];

impl<'c> Table<'c> {
    fn tol(label: &str) -> f64 {
        if TIGHT.contains(&label) {
            TIGHT_TOL
        } else {
            SLACK_TOL
        }
    }

    fn branch(&mut self, label: &str, tag: &str, p: MeasureParams, expr: Expr, bound: Bound) {
        let env = Env { a: p.a, b: p.b, alpha: self.c.alpha, beta: self.c.beta };
        let rhs = match bound {
            Bound::One => 1.0,
            Bound::NegAlpha => (-self.c.alpha).exp(),
            Bound::NegBeta => (-self.c.beta).exp(),
        };
        let full = if tag.is_empty() { label.to_string() } else { format!("{label}@{tag}") };
        self.rows.push(ConstraintRow::new(full, expr.eval(&env), rhs, Table::tol(label)));
    }

    /// `min{ lo.a·μ + lo.b·k, 2(k − μ)·c } ≤ p.a·μ + p.b·k` over `0 ≤ μ ≤ k`.
    ///
    /// Dividing by `k` leaves a convex piecewise-linear gap in `t = μ/k ∈
    /// [0, 1]` whose minimum sits at `t = 0`, `t = 1` or where the two
    /// branches of the min cross; those rays are checked exactly.
    fn base(&mut self, label: &str, lo: MeasureParams, c: f64, p: MeasureParams) {
        let f1 = |t: f64| lo.a * t + lo.b;
        let f2 = |t: f64| 2.0 * (1.0 - t) * c;
        let g = |t: f64| p.a * t + p.b;
        let mut rays = vec![0.0, 1.0];
        // f1(t) = f2(t) ⇔ (lo.a + 2c) t = 2c − lo.b.
        if lo.a + 2.0 * c > 0.0 {
            let t = (2.0 * c - lo.b) / (lo.a + 2.0 * c);
            if (0.0..=1.0).contains(&t) {
                rays.push(t);
            }
        }
        let worst = rays.iter().map(|&t| f1(t).min(f2(t)) - g(t)).fold(f64::NEG_INFINITY, f64::max);
        self.rows.push(ConstraintRow::new(label, worst, 0.0, Table::tol(label)));
    }

    fn rate(&mut self, label: &str, p: MeasureParams, c: f64, target: f64) {
        let d = combine_rate(p.a, p.b, c).expect("valid constants");
        self.rows.push(ConstraintRow::new(label, d.exp(), target, Table::tol(label)));
    }

    fn rate_info(&mut self, label: &str, p: MeasureParams, c: f64, printed: f64) {
        let d = combine_rate(p.a, p.b, c).expect("valid constants");
        self.rows.push(ConstraintRow::info(label, d.exp(), printed));
    }
}

/// Evaluates `profile` at the default constants.
pub fn evaluate_constraints(profile: Profile) -> ConstraintReport {
    evaluate_constraints_with(profile, &Constants::default())
}

/// Evaluates `profile` at the given constants.
pub fn evaluate_constraints_with(profile: Profile, c: &Constants) -> ConstraintReport {
    let mut t = Table { c, rows: Vec::new() };
    match profile {
        Profile::Simple => simple(&mut t),
        Profile::Advanced4 => advanced4(&mut t),
        Profile::Advanced5 => advanced5(&mut t),
        Profile::Advanced6 => advanced6(&mut t),
        Profile::Advanced7 => advanced7(&mut t),
    }
    let pass = t.rows.iter().all(|r| r.informational || r.pass);
    ConstraintReport { profile, rows: t.rows, pass }
}

fn simple(t: &mut Table<'_>) {
    let c = t.c;
    let [p4, p5, p6] = c.simple;
    let agvc = mp(c.agvc.ln(), 0.0);
    use Bound::One;
    t.branch("simple-4/split-set", "a4", p4, pair(1.0, 3.0, 1.0, 5.0), One);
    t.branch("simple-4/split-degree", "a4", p4, pair(0.5, 1.0, 1.5, 4.0), One);
    t.base("simple-4/base", agvc, c.ln_maxis(3), p4);
    t.branch("simple-5/split-set", "a5", p5, pair(1.0, 3.0, 1.0, 5.0), One);
    t.branch("simple-5/split-degree", "a5", p5, pair(0.5, 1.0, 2.0, 5.0), One);
    t.base("simple-5/base", p4, c.ln_maxis(4), p5);
    t.branch("simple-6/split-set", "a6", p6, pair(1.0, 3.0, 1.0, 5.0), One);
    t.branch("simple-6/split-neighbor", "a6", p6, pair(0.5, 2.0, 2.0, 5.0), One);
    t.branch("simple-6/split-degree", "a6", p6, pair(0.5, 1.0, 2.5, 6.0), One);
    t.base("simple-6/base", p5, c.ln_maxis(5), p6);
    let b7 = c.simple_rate7.ln();
    t.branch("simple-7/split", "", mp(0.0, b7), pair(0.0, 1.0, 0.0, 7.0), One);
    t.rate("simple-7/combine", p6, c.ln_maxis(6), c.simple_rate7);
    t.rate_info("simple-4/combine-maxis4", p4, c.ln_maxis(4), 1.2152);
    t.rate_info("simple-5/combine-maxis5", p5, c.ln_maxis(5), 1.2491);
}

fn advanced4(t: &mut Table<'_>) {
    use Bound::*;
    let c = t.c;
    let p = c.adv4;
    let tg = "a4";
    // 0 ≤ α ≤ b ≤ β ≤ 2b.
    let order = [("bonus/alpha>=0", 0.0, c.alpha), ("bonus/alpha<=b", c.alpha, p.b), ("bonus/b<=beta", p.b, c.beta), ("bonus/beta<=2b", c.beta, 2.0 * p.b)];
    for (label, lo, hi) in order {
        t.rows.push(ConstraintRow::new(label, lo, hi, SLACK_TOL));
    }
    let aa = || sum(vec![e(1.0, 3.0).alpha(), e(1.0, 3.0).alpha()]);
    t.branch("(4-1)", tg, p, max(vec![e(0.0, 1.0), pair(0.5, 1.0, 2.0, 5.0), aa(), pair(1.0, 3.0, 1.0, 5.0)]), One);
    t.branch("(4-2)", tg, p, max(vec![e(0.0, 2.0), pair(0.5, 2.0, 2.0, 5.0), aa(), pair(1.0, 3.0, 1.0, 5.0)]), NegBeta);
    t.branch(
        "(4-3)",
        tg,
        p,
        max(vec![e(0.0, 1.0), sum(vec![e(0.5, 1.0).alpha(), e(2.0, 5.0)]), aa(), pair(1.0, 3.0, 1.0, 5.0)]),
        NegAlpha,
    );
    t.base("(4-4)", mp(c.agvc.ln(), 0.0), c.ln_maxis(3), p);
    // The display prints the MaxIS-3 rate with transposed digits (1.085306);
    // that variant misses by about 7·10⁻⁴ and is reported only.
    let n = t.rows.len();
    t.base("(4-4)/as-printed", mp(c.agvc.ln(), 0.0), 1.085306f64.ln(), p);
    t.rows[n].informational = true;
    t.branch("(4-5)", tg, p, sum(vec![e(1.5, 4.0).alpha(), e(0.5, 1.0).times(psi5())]), One);
    t.branch("(4-6)", tg, p, sum(vec![e(1.5, 6.0).alpha(), e(0.5, 3.0).alpha()]), NegBeta);
    t.branch("(4-7)", tg, p, sum(vec![e(1.5, 4.0).times(gamma_star(3.0)), e(1.0, 4.0).alpha(), e(2.5, 7.0).alpha()]), NegBeta);
    t.branch("(4-8)", tg, p, sum(vec![e(1.5, 4.0).alpha(), e(1.0, 4.0).alpha(), e(3.0, 8.0).alpha()]), NegBeta);
    t.branch("(4-9)", tg, p, sum(vec![e(1.5, 7.0).alpha(), e(0.5, 2.0).alpha()]), NegAlpha);
    t.branch("(4-10)", tg, p, sum(vec![e(1.5, 4.0).times(gamma_star(3.0)), e(1.0, 3.0).alpha(), e(2.5, 7.0).alpha()]), NegAlpha);
    t.branch("(4-11)", tg, p, sum(vec![e(1.5, 4.0).alpha(), e(1.0, 3.0).alpha(), e(3.0, 8.0).alpha()]), NegAlpha);
    t.branch("(4-12)", tg, p, sum(vec![e(1.5, 6.0).alpha(), e(0.5, 2.0).beta()]), NegAlpha);
    t.branch("(4-13)", tg, p, sum(vec![e(0.5, 1.0).alpha(), e(1.5, 6.0).alpha()]), One);
    t.branch("(4-14)", tg, p, sum(vec![e(0.5, 1.0).alpha(), e(2.5, 8.0).alpha(), e(2.5, 10.0).alpha()]), One);
    t.branch("(4-15)", tg, p, sum(vec![e(1.5, 4.0).alpha(), e(1.5, 4.0).alpha(), e(2.0, 5.0).alpha(), e(3.5, 9.0).alpha()]), One);
    t.branch("(4-16)", tg, p, sum(vec![e(1.5, 4.0).alpha(), e(1.5, 4.0).alpha(), e(2.0, 7.0).alpha(), e(3.0, 12.0).alpha()]), One);
    t.branch("(4-17)", tg, p, sum(vec![e(1.5, 4.0).beta(), e(1.5, 4.0).alpha(), e(2.0, 7.0).alpha(), e(3.0, 11.0).alpha()]), One);
    t.branch("(4-18)", tg, p, sum(vec![e(1.5, 4.0).beta(), e(1.5, 4.0).beta(), e(2.0, 7.0).alpha(), e(3.0, 10.0).alpha()]), One);
    t.branch(
        "(4-19)",
        tg,
        p,
        sum(vec![e(1.5, 4.0).beta(), e(1.5, 4.0).alpha(), e(2.0, 5.0).times(gamma_star(3.0)), e(3.0, 13.0).alpha()]),
        One,
    );
    t.branch(
        "(4-20)",
        tg,
        p,
        sum(vec![e(1.5, 4.0).alpha(), e(1.5, 4.0).alpha(), e(2.0, 5.0).times(gamma_star(3.0)), e(3.0, 14.0).alpha()]),
        One,
    );
    // The headline degree-4 rate is not printed as a numeral; report it alone.
    let d4 = combine_rate(p.a, p.b, c.ln_maxis(4)).expect("valid constants").exp();
    t.rows.push(ConstraintRow::info("degree-4/combine-maxis4", d4, d4));
}

fn advanced5(t: &mut Table<'_>) {
    use Bound::One;
    let c = t.c;
    let [p1, p2, p3] = c.adv5;
    let ln5 = c.ln_maxis(5);
    let [_w3, w4] = c.w5;
    // Intensity 1.
    t.branch("(5-1)", "a51", p1, max(vec![pair(1.0, 3.0, 1.0, 5.0), pair(0.5, 1.0, 2.0, 5.0)]), One);
    t.base("(5-2)", c.adv4, c.ln_maxis(4), p1);
    // Shared by intensities 2 and 3.
    let three = || max(vec![e(0.0, 1.0), pair(1.0, 3.0, 1.0, 5.0), pair(0.5, 2.0, 2.0, 5.0)]);
    let g3mix = || {
        max(vec![sum(vec![e(2.0, 5.0).times(gamma3()), e(2.5, 6.0)]), sum(vec![e(2.0, 5.0), e(2.5, 6.0).times(gamma3())])])
    };
    for (tg, p) in [("a52", p2), ("a53", p3)] {
        t.branch(
            "(5-3)",
            tg,
            p,
            max(vec![pair(1.0, 3.0, 1.0, 4.0), pair(1.0, 2.0, 1.0, 5.0), pair(0.5, 2.0, 2.0, 5.0), pair(0.5, 1.0, 2.5, 6.0)]),
            One,
        );
        t.branch("(5-4)", tg, p, sum(vec![e(2.0, 5.0), e(2.5, 7.0), e(1.0, 3.0)]), One);
        t.branch("(5-5)", tg, p, sum(vec![e(2.0, 5.0), e(2.0, 5.0), e(1.5, 4.0)]), One);
        t.branch("(5-6)", tg, p, sum(vec![e(2.0, 5.0), e(2.5, 6.0), e(1.0, 2.0).times(psi6())]), One);
        t.branch("(5-12)", tg, p, pair(0.5, 1.0, 2.0, 7.0), One);
        t.branch("(5-13)", tg, p, sum(vec![e(2.0, 5.0), e(2.5, 6.0), e(3.0, 10.0), e(1.5, 3.0).times(psi7())]), One);
        t.branch("(5-14)", tg, p, sum(vec![e(2.0, 5.0), g3mix(), e(3.0, 7.0).times(gamma2()), e(4.0, 11.0)]), One);
        t.branch("(5-15)", tg, p, sum(vec![e(2.0, 5.0), g3mix(), e(3.0, 7.0), e(4.5, 11.0)]), One);
        t.branch(
            "(5-16)",
            tg,
            p,
            sum(vec![e(2.0, 5.0).times(three()), e(2.0, 5.0), e(2.5, 6.0), e(3.0, 7.0).times(gamma_r(4.0)), e(4.0, 12.0)]),
            One,
        );
        t.branch(
            "(5-17)",
            tg,
            p,
            sum(vec![
                e(2.0, 5.0),
                e(2.0, 5.0),
                e(2.5, 6.0),
                e(3.0, 7.0).times(gamma_r(4.0)),
                max(vec![e(4.0, 13.0), e(4.5, 11.0)]),
            ]),
            One,
        );
        t.branch(
            "(5-18)",
            tg,
            p,
            sum(vec![e(2.0, 5.0), e(2.0, 5.0), e(2.5, 6.0), e(3.0, 7.0), max(vec![e(4.5, 14.0), e(5.0, 12.0)])]),
            One,
        );
    }
    // Intensity 2 only.
    let tg = "a52";
    t.branch("(5-7)", tg, p2, sum(vec![e(2.0, 5.0).times(gamma3()), e(0.5, 1.0)]), One);
    t.branch("(5-8)", tg, p2, sum(vec![e(2.0, 5.0), e(2.5, 6.0), e(1.0, 3.0)]), One);
    t.branch("(5-9)", tg, p2, sum(vec![e(1.5, 4.0), e(3.5, 9.0), e(1.0, 3.0)]), One);
    t.branch("(5-19)", tg, p2, sum(vec![e(2.0, 5.0), e(2.5, 6.0), e(3.0, 7.0), e(1.5, 3.0).times(psi6())]), One);
    t.branch("(5-20)", tg, p2, sum(vec![e(2.0, 5.0), e(2.0, 5.0), e(4.0, 10.0), e(1.5, 3.0).times(psi6())]), One);
    t.branch(
        "(5-21)",
        tg,
        p2,
        sum(vec![e(2.0, 5.0), e(2.0, 5.0).times(three()), max(vec![e(3.5, 11.0), e(4.0, 10.0)]), e(1.5, 3.0).times(psi6())]),
        One,
    );
    t.branch("(5-22)", tg, p2, sum(vec![e(0.5, 1.0), e(3.0, 8.0), e(3.5, 9.0)]), One);
    t.branch("(5-23)", tg, p2, sum(vec![e(2.0, 5.0), e(2.5, 8.0), e(3.0, 9.0), e(1.5, 3.0)]), One);
    // MaxIS-5 hand-offs with degree weights.
    t.base("(5-10)", p2, (w4 * 0.5 + 0.5) * ln5, p3);
    t.base("(5-11)", p1, (w4 * 0.75 + 0.25) * ln5, p2);
    t.rows.push(ConstraintRow::info("weights/w3", c.w5[0], 0.5093));
    t.rows.push(ConstraintRow::info("weights/w4", c.w5[1], 0.8243));
    t.rate_info("degree-5/combine-maxis5", p3, ln5, 1.24394);
}

fn advanced6(t: &mut Table<'_>) {
    use Bound::One;
    let c = t.c;
    let [p1, p2, p3] = c.adv6;
    let ln6 = c.ln_maxis(6);
    let w5 = c.w6[2];
    t.branch("(6-1)", "a61", p1, max(vec![pair(1.0, 3.0, 1.0, 5.0), pair(0.5, 2.0, 2.0, 5.0), pair(0.5, 1.0, 2.5, 6.0)]), One);
    t.base("(6-2)", c.adv5[2], c.ln_maxis(5), p1);
    for (tg, p) in [("a62", p2), ("a63", p3)] {
        t.branch("(6-3)", tg, p, max(vec![pair(1.0, 3.0, 1.0, 4.0), pair(1.0, 2.0, 1.0, 5.0), pair(0.5, 2.0, 2.0, 5.0)]), One);
        t.branch("(6-4)", tg, p, sum(vec![e(0.5, 1.0), e(2.5, 6.0).times(gamma2())]), One);
        t.branch(
            "(6-5)",
            tg,
            p,
            sum(vec![e(2.5, 6.0), e(0.5, 1.0).times(max(vec![e(0.0, 1.0), pair(1.0, 3.0, 1.0, 4.0), pair(0.5, 2.0, 2.0, 5.0)]))]),
            One,
        );
        t.branch("(6-6)", tg, p, sum(vec![e(2.5, 6.0), e(3.0, 7.0), e(3.5, 8.0), e(1.5, 4.0)]), One);
        t.branch("(6-10)", tg, p, sum(vec![e(2.5, 6.0), e(3.0, 7.0), e(3.5, 8.0).times(gamma3()), e(3.5, 9.0), e(2.0, 5.0)]), One);
        t.branch("(6-11)", tg, p, sum(vec![e(2.5, 6.0), e(2.5, 6.0), e(3.0, 7.0), e(3.5, 8.0), e(4.0, 9.0), e(5.0, 13.0)]), One);
        t.branch("(6-12)", tg, p, sum(vec![e(2.5, 6.0), e(3.0, 7.0).times(gamma3()), e(3.0, 7.0), e(1.5, 4.0)]), One);
        t.branch("(6-13)", tg, p, sum(vec![e(2.5, 6.0), e(3.0, 7.0), e(3.0, 7.0), e(2.0, 5.0), e(4.5, 12.0)]), One);
        t.branch("(6-14)", tg, p, sum(vec![e(2.5, 6.0), e(2.5, 6.0), e(3.0, 7.0), e(2.0, 5.0)]), One);
    }
    let tg = "a62";
    t.branch("(6-7)", tg, p2, sum(vec![e(2.5, 6.0), e(3.0, 8.0), e(1.0, 2.0)]), One);
    // The printed exponent `+1.5a` of the last term is a sign slip: the
    // subproblem has a positive drop (1.5, 3).
    t.branch("(6-15)", tg, p2, sum(vec![e(2.5, 6.0), e(3.0, 7.0), e(3.0, 7.0), e(1.5, 3.0).times(psi7())]), One);
    t.branch("(6-16)", tg, p2, sum(vec![e(2.0, 5.0), e(2.5, 7.0), e(4.0, 11.0), e(1.5, 3.0).times(psi7())]), One);
    t.branch(
        "(6-17)",
        tg,
        p2,
        sum(vec![e(2.0, 5.0), e(2.5, 6.0), max(vec![e(4.0, 13.0), e(4.5, 12.0)]), e(1.5, 3.0).times(psi7())]),
        One,
    );
    t.base("(6-8)", p1, (w5 * 2.0 / 3.0 + 1.0 / 3.0) * ln6, p2);
    t.base("(6-9)", p2, (w5 / 2.0 + 0.5) * ln6, p3);
    t.rate_info("degree-6/combine-maxis6", p3, ln6, 1.25214);
}

fn advanced7(t: &mut Table<'_>) {
    use Bound::One;
    let c = t.c;
    let p = c.adv7;
    let tg = "a7";
    t.branch("(7-1)", tg, p, max(vec![pair(1.0, 3.0, 1.0, 4.0), pair(0.5, 2.0, 2.0, 5.0), pair(0.5, 1.0, 2.5, 8.0)]), One);
    t.branch("(7-2)", tg, p, pair(0.5, 1.0, 3.0, 7.0), One);
    t.branch("(7-3)", tg, p, pair(1.0, 2.0, 1.0, 5.0), One);
    t.base("(7-4)", c.adv6[2], c.w7[3] * c.ln_maxis(7), p);
    let b8 = c.adv_rate8.ln();
    t.branch("degree-8/split", "", mp(0.0, b8), pair(0.0, 1.0, 0.0, 8.0), One);
    t.rate_info("degree-7/combine-maxis7", p, c.ln_maxis(7), c.adv_rate8);
}

/// The degree-3 triple point of the simple degree-4 level: the ray
/// `t = μ/k` where `μ ln r_agvc = 2(k − μ) ln r_3`, and the relative gap
/// between `at + b` and that common value.
pub fn triple_point(c: &Constants) -> (f64, f64) {
    let la = c.agvc.ln();
    let l3 = c.ln_maxis(3);
    let t = 2.0 * l3 / (la + 2.0 * l3);
    let common = t * la;
    let p = c.simple[0];
    let line = p.a * t + p.b;
    (t, (line - common).abs() / common)
}

// ---------------------------------------------------------------------------
// Drop audit
// ---------------------------------------------------------------------------

/// One audited branching node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    /// Search node id (visit order).
    pub node: u64,
    /// Level whose measure is being checked.
    pub level: Level,
    /// Branching rule with its vertices.
    pub rule: String,
    /// Selector case id.
    pub case: String,
    /// Claimed drops.
    pub claimed: BranchSeq,
    /// Drops realized after simplifying the children.
    pub realized: BranchSeq,
    /// `val` of the claim.
    pub val_claimed: f64,
    /// `val` of the realized drops.
    pub val_realized: f64,
    /// `val_realized > min(1, val_claimed) + 10⁻⁹`.
    pub violation: bool,
}

impl AuditRecord {
    /// Builds a record, evaluating both branch-seqs at `params`.
    pub fn new(
        node: u64,
        level: Level,
        rule: String,
        case: String,
        claimed: BranchSeq,
        realized: BranchSeq,
        params: MeasureParams,
    ) -> AuditRecord {
        let val_claimed = val(params, &claimed);
        let val_realized = val(params, &realized);
        let violation = val_realized > val_claimed.min(1.0) + SLACK_TOL;
        AuditRecord { node, level, rule, case, claimed, realized, val_claimed, val_realized, violation }
    }
}

/// Per-rule audit tallies.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RuleAudit {
    /// Records seen.
    pub records: u64,
    /// Violations among them.
    pub violations: u64,
    /// Largest realized `val`.
    pub max_val_realized: f64,
}

/// Summary of an audit.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    /// Records seen.
    pub records: u64,
    /// Violations.
    pub violations: u64,
    /// Tallies keyed by rule name.
    pub per_rule: BTreeMap<String, RuleAudit>,
    /// Tallies keyed by selector case.
    pub per_case: BTreeMap<String, RuleAudit>,
    /// Records whose stored `val_realized` disagrees with a recomputation
    /// from the realized drops (the composition check).
    pub composition_mismatches: u64,
}

/// Summarizes audit records.
pub fn audit_trace(records: &[AuditRecord], params: &[MeasureParams; 4]) -> AuditSummary {
    let mut s = AuditSummary::default();
    for r in records {
        s.records += 1;
        s.violations += u64::from(r.violation);
        let rule = r.rule.split('(').next().unwrap_or(&r.rule).to_string();
        for (map, key) in [(&mut s.per_rule, rule), (&mut s.per_case, r.case.clone())] {
            let e = map.entry(key).or_default();
            e.records += 1;
            e.violations += u64::from(r.violation);
            e.max_val_realized = e.max_val_realized.max(r.val_realized);
        }
        let p = params[r.level.degree() - 4];
        let recomputed: f64 = r.realized.drops().iter().map(|d| d.weight(p)).sum();
        if (recomputed - r.val_realized).abs() > SLACK_TOL {
            s.composition_mismatches += 1;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine_examples() {
        let d = combine_rate(2.3146f64.ln(), 0.0, 1.083506f64.ln()).unwrap();
        assert!((d.exp() - 1.14416).abs() < 1e-4, "{}", d.exp());
        let d = combine_rate(0.20199, 0.160637, 1.18922f64.ln()).unwrap();
        assert!((d.exp() - 1.2575).abs() < 1e-4, "{}", d.exp());
        assert!((combine_rate(0.0, 0.3, 0.7).unwrap() - 0.3).abs() < 1e-15);
        assert!(combine_rate(0.0, 0.3, 0.0).is_err());
        assert!(combine_rate(-1.0, 0.3, 0.1).is_err());
    }

    #[test]
    fn simple_example_slack() {
        let r = evaluate_constraints(Profile::Simple);
        let row = r.row("simple-4/split-set@a4").unwrap();
        assert!((row.slack - 0.0974).abs() < 1e-4, "{row:?}");
    }

    #[test]
    fn tight_row_and_weights() {
        let r = evaluate_constraints(Profile::Advanced7);
        let row = r.row("(7-2)@a7").unwrap();
        assert!((row.value - 1.0).abs() < 1e-4, "{row:?}");
        let r5 = evaluate_constraints(Profile::Advanced5);
        assert_eq!(r5.row("weights/w3").unwrap().value, 0.5093);
        assert_eq!(r5.row("weights/w4").unwrap().value, 0.8243);
    }

    #[test]
    fn synthetic_violation() {
        let p = MeasureParams { a: 0.71808, b: 0.019442 };
        let claimed = BranchSeq::from_pairs(&[(0.5, 1), (1.5, 4)]).unwrap();
        let short = BranchSeq::from_pairs(&[(0.5, 1), (1.0, 4)]).unwrap();
        let ok = AuditRecord::new(0, Level::L4, "split-vertex(u=0)".into(), "x".into(), claimed.clone(), claimed.clone(), p);
        let bad = AuditRecord::new(1, Level::L4, "split-vertex(u=0)".into(), "x".into(), claimed, short, p);
        assert!(!ok.violation && bad.violation);
        let s = audit_trace(&[ok, bad], &crate::solver::default_params());
        assert_eq!((s.records, s.violations, s.composition_mismatches), (2, 1, 0));
        assert_eq!(s.per_rule["split-vertex"].violations, 1);
        assert_eq!(audit_trace(&[], &crate::solver::default_params()), AuditSummary::default());
    }
}
