//! One function per bound. Each reads only the [`Context`] and returns the
//! measured quantity, the formula side(s), and named auxiliary terms.

use std::collections::BTreeMap;

use super::context::Context;
use crate::hypergraph::binomial;

/// How the measured quantity relates to a formula value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    /// `quantity >= rhs` (or `>` when strict).
    AtLeast,
    /// `quantity <= rhs` (or `<` when strict).
    AtMost,
    /// `quantity == rhs`.
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Computed {
    pub lhs: f64,
    /// One or two `(side, rhs)` checks; the one with least slack binds.
    pub checks: Vec<(Side, f64)>,
    pub strict: bool,
    pub equality_expected: Option<bool>,
    pub terms: BTreeMap<String, f64>,
}

/// Why a bound does not apply, with any terms computed before deciding.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Skip {
    pub reason: String,
    pub terms: BTreeMap<String, f64>,
}

impl From<String> for Skip {
    fn from(reason: String) -> Self {
        Skip { reason, terms: BTreeMap::new() }
    }
}

impl From<&str> for Skip {
    fn from(reason: &str) -> Self {
        reason.to_string().into()
    }
}

pub(crate) type Outcome = Result<Computed, Skip>;

fn one(lhs: f64, side: Side, rhs: f64, strict: bool) -> Computed {
    Computed { lhs, checks: vec![(side, rhs)], strict, equality_expected: None, terms: BTreeMap::new() }
}

impl Computed {
    fn expect(mut self, e: bool) -> Self {
        self.equality_expected = Some(e);
        self
    }

    fn term(mut self, name: &str, v: f64) -> Self {
        self.terms.insert(name.to_string(), v);
        self
    }
}

/// Scalars every formula uses, as floats.
struct Base {
    n: f64,
    k: f64,
    m: f64,
    d_min: f64,
    d_max: f64,
    km: f64,
}

fn base(c: &Context) -> Base {
    let k = c.k.expect("gated on uniformity") as f64;
    let m = c.inv.m as f64;
    Base { n: c.n as f64, k, m, d_min: c.inv.d_min as f64, d_max: c.inv.d_max as f64, km: k * m }
}

pub(crate) fn compute(id: &str, c: &Context) -> Outcome {
    let b = base(c);
    let s = &c.summary;
    match id {
        "B01" => {
            let rhs = (b.d_min + (b.d_min * b.d_min + 8.0 * c.inv.t_min as f64 / (b.k - 1.0)).sqrt()) / 2.0;
            Ok(one(s.q_max, Side::AtLeast, rhs, false).expect(c.inv.is_regular() && c.inv.is_linear()))
        }
        "B02" => {
            if c.tau == 0 {
                return Err("no weak independent set exists (tau = 0)".into());
            }
            let (n, k, t) = (c.n as i64, b.k as i64, c.tau as i64);
            let num = (n - t) as f64 * binomial(n - t, k - 1) as f64 + t as f64 * binomial(n - t - 1, k - 2) as f64;
            let expected = c.complete_bipartite.is_some_and(|(x, y)| x == c.tau.min(c.n - c.tau) && y == c.tau.max(c.n - c.tau));
            Ok(one(s.q_max, Side::AtLeast, num / (b.k - 1.0), false).expect(expected).term("tau", c.tau as f64))
        }
        "B03" => {
            let chi = *c.chi.as_ref().map_err(|e| format!("resource cap: {e}"))?;
            if chi < 2 {
                return Err(format!("chi = {chi} < 2").into());
            }
            let rhs = b.km / b.n * (1.0 + 1.0 / (chi as f64 - 1.0));
            Ok(one(s.q_max, Side::AtLeast, rhs, false).term("chi", chi as f64))
        }
        "B04" => {
            let rhs = (0..c.n)
                .map(|i| c.inv.degrees[i] as f64 + c.inv.average_degrees[i].unwrap_or(0.0) / (b.k - 1.0))
                .fold(f64::NEG_INFINITY, f64::max);
            Ok(one(s.q_max, Side::AtMost, rhs, false).expect(c.inv.is_regular() || c.bipartite_semiregular))
        }
        "B05" => Ok(Computed {
            lhs: s.q_max,
            checks: vec![(Side::AtLeast, 2.0 * b.d_min), (Side::AtMost, 2.0 * b.d_max)],
            strict: false,
            equality_expected: Some(c.inv.is_regular()),
            terms: BTreeMap::new(),
        }),
        "B06" => {
            let rows: Vec<f64> = (0..c.n)
                .map(|u| {
                    let d = c.inv.degrees[u];
                    let cross: u64 = (0..c.n).map(|v| c.inv.codegrees[u][v] * c.inv.degrees[v]).sum();
                    (2.0 * (d * d) as f64 + 2.0 * cross as f64 / (b.k - 1.0)).sqrt()
                })
                .collect();
            let lo = rows.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = rows.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            Ok(Computed {
                lhs: s.q_max,
                checks: vec![(Side::AtLeast, lo), (Side::AtMost, hi)],
                strict: false,
                equality_expected: None,
                terms: BTreeMap::new(),
            })
        }
        "B07" => {
            let inner = (b.k - 1.0) * (2.0 * b.d_max * b.d_max + 2.0 * b.m * b.d_min * b.d_min)
                + 2.0 * b.m * (b.km - b.n * b.d_min);
            if inner < 0.0 {
                return Err(format!("inner expression {inner} is negative").into());
            }
            let rhs = inner.sqrt() / (b.k - 1.0).sqrt();
            Ok(one(s.q_max, Side::AtMost, rhs, false).term("radicand", inner))
        }
        "B08" => {
            let inner = 2.0 * (b.k - 1.0) * b.d_min * b.d_min + 2.0 * b.km - 2.0 * b.d_max * (b.n + 2.0 - b.k - b.d_min);
            let (lhs_cond, rhs_cond) = ((c.n as u64 - 1) * c.inv.d_max, c.inv.m as u64 * c.k.unwrap() as u64);
            if lhs_cond > rhs_cond {
                return Err(Skip {
                    reason: format!("condition (n-1) d_max <= k m fails ({lhs_cond} > {rhs_cond})"),
                    terms: BTreeMap::from([
                        ("radicand".to_string(), inner),
                        ("condition_lhs".to_string(), lhs_cond as f64),
                        ("condition_rhs".to_string(), rhs_cond as f64),
                    ]),
                });
            }
            if inner < 0.0 {
                return Err(format!("inner expression {inner} is negative although the condition holds").into());
            }
            Ok(one(s.q_max, Side::AtLeast, (inner / (b.k - 1.0)).sqrt(), false)
                .term("radicand", inner)
                .term("condition_lhs", lhs_cond as f64)
                .term("condition_rhs", rhs_cond as f64))
        }
        "B09" => {
            let xy = c.xy.ok_or("2-section graph is complete; no non-adjacent pair")?;
            let extreme = xy.max_side as f64 / (b.k - 1.0);
            let half = xy.max_total as f64 / (2.0 * (b.k - 1.0));
            Ok(one(s.q_max, Side::AtLeast, extreme, false)
                .term("half_weight_rhs", half)
                .term("exhaustive", f64::from(u8::from(xy.exhaustive))))
        }
        "B10" => {
            let q_bar = c.complement_q_max.clone()?;
            let (n, k) = (c.n as i64, b.k as i64);
            let theta = binomial(n - 2, k - 2) as f64 / (b.k - 1.0);
            let rhs = (b.n - 2.0) * theta - s.q_min;
            Ok(one(q_bar, Side::AtLeast, rhs, false).term("theta", theta))
        }
        "B11" => {
            if c.k == Some(2) {
                Ok(one(s.q_min, Side::AtLeast, 0.0, false).expect(c.two_section_bipartite))
            } else {
                Ok(one(s.q_min, Side::AtLeast, 0.0, true))
            }
        }
        "B12" => {
            let d = c.inv.sorted_degrees();
            Ok(one(s.q_min, Side::AtMost, (d[0] + d[1]) as f64 / 2.0, false))
        }
        "B13" => {
            let xy = c.xy.ok_or("2-section graph is complete; no non-adjacent pair")?;
            let rhs = xy.min_total as f64 * b.m / (2.0 * (b.k - 1.0));
            Ok(one(s.q_min, Side::AtMost, rhs, false).term("exhaustive", f64::from(u8::from(xy.exhaustive))))
        }
        "B14" => Ok(one(s.q_min, Side::AtMost, b.d_max - 1.0 / (b.k - 1.0), false)),
        "B15" => {
            let inner = 2.0 * b.d_max * b.d_max
                + 2.0 * b.km / (b.k - 1.0)
                    * (b.km - (b.n - 1.0) * b.d_min + ((b.k - 1.0) * b.d_min - 1.0) * b.d_max);
            if inner < 0.0 {
                return Err(format!("inner expression {inner} is negative").into());
            }
            Ok(one(s.q_min, Side::AtMost, inner.sqrt(), false).term("radicand", inner))
        }
        "B16" => Ok(one(s.q_min, Side::AtMost, 2.0 * (c.inv.z1 as f64 / b.n).sqrt(), false)),
        "B17" => Ok(one(s.s_q, Side::AtLeast, 1.0, true)),
        "B18" => {
            // d_min > d_bar / 2  <=>  2 n d_min > k m
            let (lhs_cond, rhs_cond) = (2 * c.n as u64 * c.inv.d_min, c.inv.m as u64 * c.k.unwrap() as u64);
            if lhs_cond <= rhs_cond {
                return Err(format!("condition d_min > d_bar/2 fails (2 n d_min = {lhs_cond} <= k m = {rhs_cond})").into());
            }
            let rhs = (2.0 * b.n * b.d_min - b.km) / (b.n - 1.0);
            scaled_complete(c, one(s.s_q, Side::AtLeast, rhs, false))
        }
        "B19" => Ok(one(s.s_q, Side::AtLeast, (b.n * (b.d_max + 1.0 / (b.k - 1.0)) - b.km) / (b.n - 1.0), false)),
        "B20" => Ok(one(s.s_q, Side::AtLeast, b.d_max - b.d_min + 1.0 / (b.k - 1.0), false)),
        "B21" => {
            if !c.inv.is_regular() {
                return Err("not regular".into());
            }
            Ok(one(s.s_q, Side::Equal, s.s_a, false))
        }
        "B22" => {
            let t = 4.0 * b.d_max * b.d_max - 0.25;
            let rhs = (t * t + 2.0 * (2.0 * b.d_max + 0.5)) / (2.0 * 2f64.sqrt());
            Ok(one(s.s_q, Side::AtMost, rhs, true))
        }
        "B23" => {
            if c.tau == 0 {
                return Err("no weak independent set exists (tau = 0)".into());
            }
            let t2 = (c.tau * c.tau) as f64;
            Ok(one(s.s_q, Side::AtMost, 2.0 * t2 * b.d_max / (t2 - 1.0 / b.n), true).term("tau", c.tau as f64))
        }
        "B24" => {
            let trace_sq = c.inv.z1 as f64 + c.inv.alpha as f64 / ((b.k - 1.0) * (b.k - 1.0));
            let reading = |d: f64| 2.0 * d - ((trace_sq - 4.0 * d * d) / (b.n - 1.0)).sqrt();
            let inner = trace_sq - 4.0 * b.d_min * b.d_min;
            if inner < 0.0 {
                return Err(format!("inner expression {inner} is negative").into());
            }
            let mut out = one(s.s_q, Side::AtLeast, reading(b.d_min), false).term("trace_q_squared", trace_sq);
            let alt = reading(b.d_max);
            if alt.is_finite() {
                out = out.term("rhs_with_d_max", alt);
            }
            scaled_complete(c, out)
        }
        "B25" => {
            let chi = *c.chi.as_ref().map_err(|e| format!("resource cap: {e}"))?;
            if chi < 2 {
                return Err(format!("chi = {chi} < 2").into());
            }
            let (chi, root) = (chi as f64, (b.n * b.n - 1.0).sqrt());
            let lo = chi * root / (b.n * (1.0 + (b.k - 1.0) * b.d_max));
            let hi = 4.0 * b.n * chi * b.d_max / (b.k * root);
            Ok(Computed {
                lhs: s.s_q,
                checks: vec![(Side::AtLeast, lo), (Side::AtMost, hi)],
                strict: true,
                equality_expected: None,
                terms: BTreeMap::from([("chi".to_string(), chi)]),
            })
        }
        other => Err(format!("unknown bound {other}").into()),
    }
}

/// Attaches the `Q = t((n-2)I + J)` equality predicate and records whether
/// the alternative `t((n-1)I + J)` form matched instead.
fn scaled_complete(c: &Context, out: Computed) -> Outcome {
    let (n2, n1) = scaled_complete_forms(c);
    let mut out = out
        .expect(n2.is_some())
        .term("form_n_minus_2", flag(n2.is_some()))
        .term("form_n_minus_1", flag(n1.is_some()));
    if let Some(t) = n2.or(n1) {
        out = out.term("form_t", t);
    }
    Ok(out)
}

fn flag(b: bool) -> f64 {
    f64::from(u8::from(b))
}

/// `t` for which `Q = t((n-2)I + J)`, and `t` for which `Q = t((n-1)I + J)`.
///
/// `(n-2)I + J` has diagonal `n-1` and off-diagonal 1, so the test is a
/// constant positive off-diagonal `t` with constant diagonal `(n-1) t`
/// (respectively `n t`).
pub(crate) fn scaled_complete_forms(c: &Context) -> (Option<f64>, Option<f64>) {
    const TOL: f64 = 1e-12;
    let q = &c.q;
    let n = q.order();
    if n < 2 {
        return (None, None);
    }
    let t = q.get(0, 1);
    let a = q.get(0, 0);
    let uniform = t > TOL
        && (0..n).all(|i| (0..n).all(|j| (q.get(i, j) - if i == j { a } else { t }).abs() <= TOL));
    if !uniform {
        return (None, None);
    }
    let nf = n as f64;
    let form2 = ((a - (nf - 1.0) * t).abs() <= TOL).then_some(t);
    let form1 = ((a - nf * t).abs() <= TOL).then_some(t);
    (form2, form1)
}
