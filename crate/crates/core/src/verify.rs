//! Seeded verification runs: every identity is addressed by a stable id and
//! checked at random rational points (or coefficientwise for series).
//!
//! Trial `k` draws from `trial_rng(seed, k)`, so a single trial can be
//! replayed in isolation. Points that hit a pole are redrawn from the same
//! stream and counted.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::closed::{
    catalan_dual, catalan_lhs, catalan_rhs, central_binomial_dual, central_binomial_lhs,
    central_binomial_rhs, hermite_dual, hermite_lhs, hermite_rhs, laguerre_dual, laguerre_lhs,
    laguerre_rhs, rf_ver_dual, rf_ver_lhs, rf_ver_rhs,
};
use crate::identities::closed_decomp::check_closed_decomposition;
use crate::identities::sums::{
    dougall_lhs, dougall_rhs, dougall_via_phi, qv4_increment_holds, qv4_lhs, qv4_rhs, split_rhs,
    split_sum, GForm, Point4, SumKind,
};
use crate::identities::{Conjecture, ParityRule, PfFamily, Point};
use crate::rpp::{
    check_binom_expansion, check_gf_rel, check_tableaux_gf, gf_tableaux_bruteforce,
    gf_tableaux_det, lhs_weighted_sum, rhs_series, Profile, RppParams, RppTheorem,
    StrictPartition,
};
use crate::scalar::{
    format_rational, sample_rational, trial_rng, Rational, Scalar, TrialRng, DEFAULT_BOUND,
    RETRY_BUDGET,
};
use crate::telescope::{
    check_gosper, check_lambda_start, check_ratio, check_recurrence, check_telescoped, Parity,
    TelescopePoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AppendixCheck {
    Gosper,
    Ratio,
    Recurrence,
    Telescoped,
}

/// Extra shifted-RPP checks beyond the six theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RppExtra {
    /// GF relation and the tableau determinant against enumeration.
    GfRel,
    /// Tableau form of the staircase identity.
    Tableaux,
    /// Expansion of the Pfaffian as a sum over profiles.
    BinomExpansion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    Pf(PfFamily),
    RfVer,
    Catalan,
    CentralBinomial,
    Laguerre,
    Hermite,
    Conj(Conjecture),
    DecompClosedForm,
    DecompClosedFormTilde,
    QDougall,
    Sum(SumKind),
    Qv4,
    Appendix(AppendixCheck),
    Rpp(RppTheorem),
    RppExtra(RppExtra),
}

impl IdentityId {
    pub fn all() -> Vec<IdentityId> {
        let mut v: Vec<IdentityId> = PfFamily::ALL.into_iter().map(IdentityId::Pf).collect();
        v.extend([
            IdentityId::RfVer,
            IdentityId::Catalan,
            IdentityId::CentralBinomial,
            IdentityId::Laguerre,
            IdentityId::Hermite,
        ]);
        v.extend(Conjecture::ALL.into_iter().map(IdentityId::Conj));
        v.extend([IdentityId::DecompClosedForm, IdentityId::DecompClosedFormTilde, IdentityId::QDougall]);
        v.extend([SumKind::Odd, SumKind::Even, SumKind::Add, SumKind::Subtract].map(IdentityId::Sum));
        v.push(IdentityId::Qv4);
        v.extend(
            [AppendixCheck::Gosper, AppendixCheck::Ratio, AppendixCheck::Recurrence, AppendixCheck::Telescoped]
                .map(IdentityId::Appendix),
        );
        v.extend(RppTheorem::ALL.into_iter().map(IdentityId::Rpp));
        v.extend([RppExtra::GfRel, RppExtra::Tableaux, RppExtra::BinomExpansion].map(IdentityId::RppExtra));
        v
    }

    pub fn id(self) -> &'static str {
        match self {
            IdentityId::Pf(f) => match f {
                PfFamily::Special => "pf-special",
                PfFamily::General1 => "pf-general1",
                PfFamily::General2 => "pf-general2",
                PfFamily::Byproduct => "pf-byproduct",
                PfFamily::General3 => "pf-general3",
                PfFamily::General4 => "pf-general4",
                PfFamily::ByproductB => "pf-byproduct-b",
                PfFamily::GeneralB3 => "pf-general-b3",
                PfFamily::GeneralB4 => "pf-general-b4",
            },
            IdentityId::RfVer => "rf-ver",
            IdentityId::Catalan => "catalan",
            IdentityId::CentralBinomial => "central-binomial",
            IdentityId::Laguerre => "laguerre",
            IdentityId::Hermite => "hermite",
            IdentityId::Conj(c) => match c {
                Conjecture::Asc1 => "conj-asc1",
                Conjecture::Asc2 => "conj-asc2",
                Conjecture::Motzkin => "conj-motzkin",
                Conjecture::Delannoy => "conj-delannoy",
                Conjecture::Schroeder => "conj-schroeder",
                Conjecture::Narayana => "conj-narayana",
                Conjecture::Asm => "conj-asm",
            },
            IdentityId::DecompClosedForm => "decomp-closed-form",
            IdentityId::DecompClosedFormTilde => "decomp-closed-form-tilde",
            IdentityId::QDougall => "q-dougall",
            IdentityId::Sum(k) => match k {
                SumKind::Odd => "sum-k-odd",
                SumKind::Even => "sum-k-even",
                SumKind::Add => "sum-add",
                SumKind::Subtract => "sum-subtract",
            },
            IdentityId::Qv4 => "qv4",
            IdentityId::Appendix(c) => match c {
                AppendixCheck::Gosper => "appendix-gosper",
                AppendixCheck::Ratio => "appendix-ratio",
                AppendixCheck::Recurrence => "appendix-recurrence",
                AppendixCheck::Telescoped => "appendix-telescoped",
            },
            IdentityId::Rpp(t) => t.id(),
            IdentityId::RppExtra(e) => match e {
                RppExtra::GfRel => "rpp-gf-rel",
                RppExtra::Tableaux => "rpp-tableaux",
                RppExtra::BinomExpansion => "rpp-binom-expansion",
            },
        }
    }

    /// True when no random scalar enters, so one trial per instance suffices.
    pub fn is_exact(self) -> bool {
        match self {
            IdentityId::Catalan | IdentityId::CentralBinomial | IdentityId::Hermite => true,
            IdentityId::Conj(c) => !c.uses_a() && !c.uses_q(),
            IdentityId::RppExtra(RppExtra::GfRel) => true,
            _ => false,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::all().into_iter().find(|i| i.id() == s).ok_or_else(|| {
            let ids: Vec<&str> = IdentityId::all().into_iter().map(|i| i.id()).collect();
            Error::Parse(format!("unknown identity id {s:?}; valid ids: {}", ids.join(", ")))
        })
    }
}

/// Integer parameters select instances; unset ones take per-identity
/// defaults. Set scalars are used as given instead of being sampled.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyParams {
    pub n: Option<i64>,
    pub max_n: Option<i64>,
    pub r: Option<i64>,
    pub m: Option<i64>,
    pub l: Option<i64>,
    pub i: Option<i64>,
    pub j: Option<i64>,
    pub s: Option<i64>,
    pub order: Option<usize>,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub q: Option<Rational>,
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub trials: usize,
    pub seed: u64,
    pub timing: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            n: None,
            max_n: None,
            r: None,
            m: None,
            l: None,
            i: None,
            j: None,
            s: None,
            order: None,
            a: None,
            b: None,
            q: None,
            alpha: None,
            beta: None,
            trials: 5,
            seed: 0,
            timing: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        })
    }
}

/// One trial of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub trial: usize,
    pub params: BTreeMap<String, String>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub outcome: Outcome,
    /// Points redrawn because of a pole.
    pub resamples: usize,
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let count = |o| reports.iter().filter(|r| r.outcome == o).count();
        Summary {
            total: reports.len(),
            passed: count(Outcome::Pass),
            failed: count(Outcome::Fail),
            skipped: count(Outcome::Skipped),
        }
    }
}

type Instance = Vec<(&'static str, i64)>;

struct Eval {
    lhs: Option<String>,
    rhs: Option<String>,
    pass: bool,
    detail: Option<String>,
}

impl Eval {
    fn values<S: fmt::Display>(lhs: &S, rhs: &S, pass: bool) -> Self {
        Eval { lhs: Some(lhs.to_string()), rhs: Some(rhs.to_string()), pass, detail: None }
    }

    fn flag(pass: bool, detail: Option<String>) -> Self {
        Eval { lhs: None, rhs: None, pass, detail }
    }

    fn with_detail(mut self, d: Option<String>) -> Self {
        self.detail = d;
        self
    }
}

/// Draws scalars for one attempt, honouring fixed values.
struct Sampler<'a> {
    rng: &'a mut TrialRng,
    fixed: &'a VerifyParams,
    drew: bool,
    used: Vec<(&'static str, Rational)>,
}

impl Sampler<'_> {
    fn draw(&mut self, name: &'static str, fixed: Option<&Rational>, exclude: fn(&Rational) -> bool) -> Result<Rational> {
        let x = match fixed {
            Some(x) => x.clone(),
            None => {
                self.drew = true;
                sample_rational(self.rng, DEFAULT_BOUND, exclude)?
            }
        };
        self.used.push((name, x.clone()));
        Ok(x)
    }

    fn a(&mut self) -> Result<Rational> {
        let f = self.fixed.a.clone();
        self.draw("a", f.as_ref(), |_| false)
    }

    fn b(&mut self) -> Result<Rational> {
        let f = self.fixed.b.clone();
        self.draw("b", f.as_ref(), |x| x == &Rational::from_int(1))
    }

    fn q(&mut self) -> Result<Rational> {
        let f = self.fixed.q.clone();
        self.draw("q", f.as_ref(), |x| num_traits::Signed::abs(x) == Rational::from_int(1))
    }

    fn free(&mut self, name: &'static str) -> Result<Rational> {
        self.draw(name, None, |_| false)
    }

    fn alpha(&mut self) -> Result<Rational> {
        let f = self.fixed.alpha.clone();
        self.draw("alpha", f.as_ref(), |_| false)
    }

    fn beta(&mut self) -> Result<Rational> {
        let f = self.fixed.beta.clone();
        self.draw("beta", f.as_ref(), |_| false)
    }

    fn point(&mut self, r: i64) -> Result<Point<Rational>> {
        Ok(Point::new(self.a()?, self.b()?, self.q()?, r))
    }
}

fn is_pole(e: &Error) -> bool {
    matches!(e, Error::Pole(_) | Error::NotAUnit | Error::ZeroDenominator | Error::Pivot { .. })
}

fn get(inst: &Instance, key: &str) -> i64 {
    inst.iter().find(|(k, _)| *k == key).map(|x| x.1).unwrap_or(0)
}

fn range(fixed: Option<i64>, lo: i64, hi: i64) -> Vec<i64> {
    match fixed {
        Some(x) => vec![x],
        None => (lo..=hi).collect(),
    }
}

fn instances(id: IdentityId, p: &VerifyParams) -> Result<Vec<Instance>> {
    let ns = |default_max: i64| range(p.n, 1, p.max_n.unwrap_or(default_max));
    let rs = |hi: i64| range(p.r, 0, hi);
    let mut out = Vec::new();
    match id {
        IdentityId::Pf(f) => {
            for n in ns(3) {
                if n < f.min_n() {
                    continue;
                }
                let ms = if f.uses_m() { range(p.m, f.min_m(n), f.min_m(n) + 2) } else { vec![0] };
                for m in ms {
                    if f.check_domain(n, m).is_err() {
                        continue;
                    }
                    for r in rs(1) {
                        out.push(if f.uses_m() { vec![("n", n), ("m", m), ("r", r)] } else { vec![("n", n), ("r", r)] });
                    }
                }
            }
        }
        IdentityId::RfVer | IdentityId::Laguerre | IdentityId::Hermite => {
            for n in ns(3) {
                for r in rs(1) {
                    out.push(vec![("n", n), ("r", r)]);
                }
            }
        }
        IdentityId::Catalan | IdentityId::CentralBinomial => {
            for n in ns(4) {
                for r in rs(2) {
                    out.push(vec![("n", n), ("r", r)]);
                }
            }
        }
        IdentityId::Conj(_) => out.extend(ns(4).into_iter().map(|n| vec![("n", n)])),
        IdentityId::DecompClosedForm | IdentityId::DecompClosedFormTilde => {
            for n in ns(4) {
                for r in rs(1) {
                    out.push(vec![("n", n), ("r", r)]);
                }
            }
        }
        IdentityId::QDougall => {
            for m in range(p.m, 0, 2) {
                for i in range(p.i, m.max(1), 6) {
                    for j in range(p.j, m.max(1), 6) {
                        out.push(vec![("m", m), ("i", i), ("j", j)]);
                    }
                }
            }
        }
        IdentityId::Sum(_) => {
            for i in range(p.i, 1, 8) {
                for j in range(p.j, 1, 8) {
                    out.push(vec![("i", i), ("j", j)]);
                }
            }
        }
        IdentityId::Qv4 => out.extend(range(p.m, 0, 4).into_iter().map(|m| vec![("m", m)])),
        IdentityId::Appendix(_) => out.extend(range(p.j, 1, 8).into_iter().map(|j| vec![("j", j)])),
        IdentityId::Rpp(t) => {
            let n = p.n.unwrap_or(if matches!(t, RppTheorem::Odd2 | RppTheorem::Odd3) { 2 } else { 1 });
            let min_m = if t.is_odd() { 2 * n - 1 } else { 2 * n };
            let m = p.m.unwrap_or(min_m);
            let l = p.l.unwrap_or(m + 2);
            let k = p.order.unwrap_or(6) as i64;
            for r in rs(0) {
                let mut inst = vec![("n", n), ("m", m)];
                if t.uses_l() {
                    inst.push(("l", l));
                }
                inst.extend([("r", r), ("trunc", k)]);
                out.push(inst);
            }
        }
        IdentityId::RppExtra(RppExtra::GfRel) => {
            let k = p.order.unwrap_or(8) as i64;
            for (idx, _) in StrictPartition::all_up_to(10).iter().enumerate() {
                out.push(vec![("shape", idx as i64), ("trunc", k)]);
            }
        }
        IdentityId::RppExtra(RppExtra::Tableaux) => {
            let k = p.order.unwrap_or(6) as i64;
            for n in ns(2) {
                for m in range(p.m, 2 * n, 2 * n + 1) {
                    for r in rs(1) {
                        out.push(vec![("n", n), ("m", m), ("r", r), ("trunc", k)]);
                    }
                }
            }
        }
        IdentityId::RppExtra(RppExtra::BinomExpansion) => {
            let k = p.order.unwrap_or(6) as i64;
            for n in ns(2) {
                for s in range(p.s, 1, 2) {
                    for r in rs(1) {
                        out.push(vec![("n", n), ("s", s), ("r", r), ("trunc", k)]);
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Domain(format!("{id}: no admissible instance for the given parameters")));
    }
    Ok(out)
}

fn agree<S: PartialEq + fmt::Display>(lhs: S, rhs: S, second: Option<S>) -> Eval {
    let pass = lhs == rhs && second.as_ref().is_none_or(|d| d == &rhs);
    let detail = match second {
        Some(d) if d != rhs => Some(format!("second transcription gives {d}")),
        _ => None,
    };
    Eval::values(&lhs, &rhs, pass).with_detail(detail)
}

fn failing<T: fmt::Debug>(items: &[T]) -> Option<String> {
    if items.is_empty() {
        None
    } else {
        Some(format!("failing at {items:?}"))
    }
}

fn evaluate(id: IdentityId, inst: &Instance, s: &mut Sampler) -> Result<Eval> {
    let n = get(inst, "n");
    let r = get(inst, "r");
    let m = get(inst, "m");
    match id {
        IdentityId::Pf(f) => {
            let p = s.point(r)?;
            Ok(agree(f.lhs(&p, n, m)?, f.rhs(&p, n, m)?, Some(f.rhs_dual(&p, n, m)?)))
        }
        IdentityId::RfVer => {
            let (al, be) = (s.alpha()?, s.beta()?);
            Ok(agree(rf_ver_lhs(n, r, &al, &be)?, rf_ver_rhs(n, r, &al, &be)?, Some(rf_ver_dual(n, r, &al, &be)?)))
        }
        IdentityId::Catalan => Ok(agree(catalan_lhs(n, r)?, catalan_rhs(n, r)?, Some(catalan_dual(n, r)?))),
        IdentityId::CentralBinomial => Ok(agree(
            central_binomial_lhs(n, r)?,
            central_binomial_rhs(n, r)?,
            Some(central_binomial_dual(n, r)?),
        )),
        IdentityId::Laguerre => {
            let al = s.alpha()?;
            Ok(agree(laguerre_lhs(n, r, &al)?, laguerre_rhs(n, r, &al)?, Some(laguerre_dual(n, r, &al)?)))
        }
        IdentityId::Hermite => Ok(agree(hermite_lhs(n, r)?, hermite_rhs(n, r)?, Some(hermite_dual(n, r)?))),
        IdentityId::Conj(c) => {
            let one = Rational::from_int(1);
            let a = if c.uses_a() { s.a()? } else { one.clone() };
            let q = if c.uses_q() { s.q()? } else { one };
            Ok(agree(c.lhs(n, &a, &q)?, c.rhs(n, &a, &q)?, None))
        }
        IdentityId::DecompClosedForm | IdentityId::DecompClosedFormTilde => {
            let rule = if id == IdentityId::DecompClosedForm { ParityRule::A } else { ParityRule::ATilde };
            let p = s.point(r)?;
            let c = check_closed_decomposition(&p, rule, n as usize)?;
            Ok(Eval::flag(c.ok(), (!c.ok()).then(|| format!("{c:?}"))))
        }
        IdentityId::QDougall => {
            let (i, j) = (get(inst, "i"), get(inst, "j"));
            let a = s.a()?;
            let root = s.free("root")?;
            let b = root.clone() * root.clone() / a.clone();
            s.used.push(("b", b.clone()));
            let p = Point::new(a, b, s.q()?, 0);
            let lhs = dougall_lhs(&p, m, i, j)?;
            let rhs = dougall_rhs(&p, m, i, j)?;
            let (phi, closed) = dougall_via_phi(&p, &root, m, i, j)?;
            let pass = lhs == rhs && phi == rhs && closed == rhs;
            let detail = (!pass).then(|| format!("6phi5 route {phi}, closed route {closed}"));
            Ok(Eval::values(&lhs, &rhs, pass).with_detail(detail))
        }
        IdentityId::Sum(kind) => {
            let (i, j) = (get(inst, "i"), get(inst, "j"));
            let p = s.point(0)?;
            let direct = split_sum(&p, kind, GForm::Direct, i, j)?;
            let rewritten = split_sum(&p, kind, GForm::Rewritten, i, j)?;
            Ok(agree(direct, split_rhs(&p, kind, i, j)?, Some(rewritten)))
        }
        IdentityId::Qv4 => {
            let base = s.point(0)?;
            let p4 = Point4 { base, c: s.free("c")?, d: s.free("d")? };
            let lhs = qv4_lhs(&p4, m)?;
            let rhs = qv4_rhs(&p4, m)?;
            let step = qv4_increment_holds(&p4, m)?;
            let detail = (!step).then(|| "induction increment fails".to_string());
            Ok(Eval::values(&lhs, &rhs, lhs == rhs && step).with_detail(detail))
        }
        IdentityId::Appendix(check) => {
            let j = get(inst, "j");
            let p = TelescopePoint { a: s.a()?, b: s.b()?, c: s.free("c")?, q: s.q()? };
            let mut bad: Vec<String> = Vec::new();
            match check {
                AppendixCheck::Telescoped => {
                    for parity in [Parity::Odd, Parity::Even] {
                        if !check_telescoped(&p, parity, j)? {
                            bad.push(format!("{parity:?}"));
                        }
                    }
                }
                AppendixCheck::Recurrence if !check_lambda_start(&p, j)? => bad.push("start".into()),
                _ => {}
            }
            if check != AppendixCheck::Telescoped {
                for k in 0..=10 {
                    let ok = match check {
                        AppendixCheck::Gosper => check_gosper(&p, j, k)?,
                        AppendixCheck::Ratio => check_ratio(&p, j, k)?,
                        _ => check_recurrence(&p, j, k)?,
                    };
                    if !ok {
                        bad.push(format!("k={k}"));
                    }
                }
            }
            Ok(Eval::flag(bad.is_empty(), failing(&bad)))
        }
        IdentityId::Rpp(t) => {
            let params = RppParams {
                m,
                n,
                l: get(inst, "l"),
                r,
                a: s.a()?,
                b: s.b()?,
                order: get(inst, "trunc") as usize,
            };
            let lhs = lhs_weighted_sum(t, &params)?;
            let rhs = rhs_series(t, &params)?;
            Ok(Eval { lhs: Some(lhs.coeff_list()), rhs: Some(rhs.coeff_list()), pass: lhs == rhs, detail: None })
        }
        IdentityId::RppExtra(RppExtra::GfRel) => {
            let shape = &StrictPartition::all_up_to(10)[get(inst, "shape") as usize];
            let k = get(inst, "trunc") as usize;
            let mut bad = Vec::new();
            for nu in Profile::all_bounded(shape.len(), 2) {
                let mu = nu.plus_epsilon();
                let det = gf_tableaux_det(shape, &mu, k)?;
                let nonneg = det.coeffs().iter().all(|c| c.is_integer() && *c >= Rational::from_int(0));
                if !check_gf_rel(shape, &nu, k)? || det != gf_tableaux_bruteforce(shape, &mu, k)? || !nonneg {
                    bad.push(nu.values().to_vec());
                }
            }
            s.used.clear();
            let detail = failing(&bad).map(|d| format!("shape {shape}: {d}"));
            Ok(Eval { lhs: None, rhs: None, pass: bad.is_empty(), detail: detail.or(Some(format!("shape {shape}"))) })
        }
        IdentityId::RppExtra(RppExtra::Tableaux) => {
            let (a, b) = (s.a()?, s.b()?);
            let c = check_tableaux_gf(m, n, r, &a, &b, get(inst, "trunc") as usize)?;
            let detail = (!c.ok()).then(|| {
                format!(
                    "series equal: {}; q-shifts: sum {}, printed {}, alternate {}",
                    c.series_equal, c.lhs_shift, c.printed_shift, c.alternate_shift
                )
            });
            Ok(Eval::flag(c.ok(), detail))
        }
        IdentityId::RppExtra(RppExtra::BinomExpansion) => {
            let (a, b) = (s.a()?, s.b()?);
            let c = check_binom_expansion(n, get(inst, "s"), r, &a, &b, get(inst, "trunc") as usize)?;
            Ok(Eval::flag(c.ok(), (!c.ok()).then(|| format!("{c:?}"))))
        }
    }
}

fn run_trial(id: IdentityId, inst: &Instance, p: &VerifyParams, index: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = trial_rng(p.seed, index as u64);
    let mut resamples = 0;
    let mut last_pole = None;
    let eval = loop {
        if resamples >= RETRY_BUDGET {
            break None;
        }
        let mut s = Sampler { rng: &mut rng, fixed: p, drew: false, used: Vec::new() };
        match evaluate(id, inst, &mut s) {
            Ok(e) => break Some((e, s.used)),
            Err(e) if is_pole(&e) => {
                resamples += 1;
                last_pole = Some(e.to_string());
                if !s.drew {
                    break None;
                }
            }
            Err(e) => return Err(e),
        }
    };
    let mut params: BTreeMap<String, String> = inst.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let (outcome, lhs, rhs, detail) = match eval {
        Some((e, used)) => {
            params.extend(used.into_iter().map(|(k, v)| (k.to_string(), format_rational(&v))));
            let o = if e.pass { Outcome::Pass } else { Outcome::Fail };
            (o, e.lhs, e.rhs, e.detail)
        }
        None => (Outcome::Skipped, None, None, last_pole.map(|e| format!("no pole-free point: {e}"))),
    };
    Ok(VerificationReport {
        id: id.id().to_string(),
        trial: index,
        params,
        lhs,
        rhs,
        outcome,
        resamples,
        detail,
        elapsed_ms: p.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Runs every instance of `id` for `p.trials` trials (one for exact ids),
/// in parallel; reports come back in trial order.
pub fn verify(id: IdentityId, p: &VerifyParams) -> Result<Vec<VerificationReport>> {
    if p.trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let trials = if id.is_exact() { 1 } else { p.trials };
    let jobs: Vec<(usize, Instance)> = instances(id, p)?
        .into_iter()
        .flat_map(|inst| (0..trials).map(move |_| inst.clone()))
        .enumerate()
        .collect();
    jobs.par_iter().map(|(idx, inst)| run_trial(id, inst, p, *idx)).collect()
}
