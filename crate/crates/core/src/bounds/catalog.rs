use serde::Serialize;

/// What a bound constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Target {
    QMaxLower,
    QMaxUpper,
    /// Lower and upper bound on `q_max` at once.
    QMaxBracket,
    QMinUpper,
    QMinPositivity,
    SpreadLower,
    SpreadUpper,
    /// Lower and upper bound on `s_Q` at once.
    SpreadBracket,
    /// `s_A = s_Q`.
    SpreadIdentity,
    ComplementRelation,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::QMaxLower => "qMaxLower",
            Target::QMaxUpper => "qMaxUpper",
            Target::QMaxBracket => "qMaxBracket",
            Target::QMinUpper => "qMinUpper",
            Target::QMinPositivity => "qMinPositivity",
            Target::SpreadLower => "spreadLower",
            Target::SpreadUpper => "spreadUpper",
            Target::SpreadBracket => "spreadBracket",
            Target::SpreadIdentity => "spreadIdentity",
            Target::ComplementRelation => "complementRelation",
        }
    }
}

/// `Asserted` bounds must hold on every input; `Audited` bounds are
/// evaluated and reported, and a failure is a finding rather than an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Assurance {
    Asserted,
    Audited,
}

impl Assurance {
    pub fn as_str(self) -> &'static str {
        match self {
            Assurance::Asserted => "asserted",
            Assurance::Audited => "audited",
        }
    }
}

/// Structural predicate claimed to characterize equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum EqualityRule {
    /// Regular, and every adjacent pair lies in exactly one edge.
    RegularAndLinear,
    /// The complete bipartite graph `K_{tau, n-tau}`.
    CompleteBipartiteTau,
    RegularOrBipartiteSemiregularGraph,
    Regular,
    /// The 2-section graph is bipartite (rank 2 only).
    BipartiteTwoSection,
    /// `Q = t((n-2)I + J)` for some `t > 0`.
    ScaledCompleteForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualitySpec {
    pub rule: EqualityRule,
    pub assurance: Assurance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundSpec {
    pub id: &'static str,
    pub target: Target,
    /// The inequality is strict (`<` or `>`).
    pub strict: bool,
    pub assurance: Assurance,
    /// Conditions beyond "connected, uniform, at least one edge".
    pub applicability: &'static str,
    pub equality: Option<EqualitySpec>,
    /// The inequality in plain notation.
    pub statement: &'static str,
}

const fn eq(rule: EqualityRule, assurance: Assurance) -> Option<EqualitySpec> {
    Some(EqualitySpec { rule, assurance })
}

use Assurance::{Asserted, Audited};
use EqualityRule::*;
use Target::*;

static CATALOG: [BoundSpec; 25] = [
    BoundSpec {
        id: "B01",
        target: QMaxLower,
        strict: false,
        assurance: Asserted,
        applicability: "always",
        equality: eq(RegularAndLinear, Asserted),
        statement: "q_max >= (d_min + sqrt(d_min^2 + 8 T_min/(k-1))) / 2",
    },
    BoundSpec {
        id: "B02",
        target: QMaxLower,
        strict: false,
        assurance: Audited,
        applicability: "tau >= 1",
        equality: eq(CompleteBipartiteTau, Audited),
        statement: "q_max >= ((n-tau) C(n-tau,k-1) + tau C(n-tau-1,k-2)) / (k-1)",
    },
    BoundSpec {
        id: "B03",
        target: QMaxLower,
        strict: false,
        assurance: Asserted,
        applicability: "chi >= 2",
        equality: None,
        statement: "q_max >= (k m / n)(1 + 1/(chi-1))",
    },
    BoundSpec {
        id: "B04",
        target: QMaxUpper,
        strict: false,
        assurance: Asserted,
        applicability: "always",
        equality: eq(RegularOrBipartiteSemiregularGraph, Asserted),
        statement: "q_max <= max_i (d_i + s_i/(k-1))",
    },
    BoundSpec {
        id: "B05",
        target: QMaxBracket,
        strict: false,
        assurance: Asserted,
        applicability: "always",
        equality: eq(Regular, Asserted),
        statement: "2 d_min <= q_max <= 2 d_max",
    },
    BoundSpec {
        id: "B06",
        target: QMaxBracket,
        strict: false,
        assurance: Asserted,
        applicability: "always",
        equality: None,
        statement: "min_u r_u <= q_max <= max_u r_u, r_u = sqrt(2 d_u^2 + (2/(k-1)) sum_v d_uv d_v)",
    },
    BoundSpec {
        id: "B07",
        target: QMaxUpper,
        strict: false,
        assurance: Asserted,
        applicability: "always",
        equality: None,
        statement: "q_max <= sqrt((k-1)(2 d_max^2 + 2 m d_min^2) + 2m(k m - n d_min)) / sqrt(k-1)",
    },
    BoundSpec {
        id: "B08",
        target: QMaxLower,
        strict: false,
        assurance: Asserted,
        applicability: "(n-1) d_max <= k m",
        equality: None,
        statement: "q_max >= sqrt(2(k-1) d_min^2 + 2km - 2 d_max (n+2-k-d_min)) / sqrt(k-1)",
    },
    BoundSpec {
        id: "B09",
        target: QMaxLower,
        strict: false,
        assurance: Audited,
        applicability: "2-section not complete",
        equality: None,
        statement: "q_max >= (b1^2 |X| + b2^2 |Y|)/(k-1) for disjoint non-adjacent X, Y and b1^2 + b2^2 = 1",
    },
    BoundSpec {
        id: "B10",
        target: ComplementRelation,
        strict: false,
        assurance: Asserted,
        applicability: "complement small enough to build",
        equality: None,
        statement: "q_max(complement) >= (n-2) theta - q_min, theta = C(n-2,k-2)/(k-1)",
    },
    BoundSpec {
        id: "B11",
        target: QMinPositivity,
        strict: true,
        assurance: Asserted,
        applicability: "always; strict for k >= 3, equality iff bipartite for k = 2",
        equality: eq(BipartiteTwoSection, Asserted),
        statement: "q_min > 0 for k >= 3; for k = 2, q_min = 0 iff bipartite",
    },
    BoundSpec {
        id: "B12",
        target: QMinUpper,
        strict: false,
        assurance: Asserted,
        applicability: "n >= 2",
        equality: None,
        statement: "q_min <= (d_u + d_v)/2 at the two smallest degrees",
    },
    BoundSpec {
        id: "B13",
        target: QMinUpper,
        strict: false,
        assurance: Audited,
        applicability: "2-section not complete",
        equality: None,
        statement: "q_min <= (|X| + |Y|) m / (2(k-1)) for disjoint non-adjacent X, Y",
    },
    BoundSpec {
        id: "B14",
        target: QMinUpper,
        strict: false,
        assurance: Asserted,
        applicability: "n >= 2",
        equality: None,
        statement: "q_min <= d_max - 1/(k-1)",
    },
    BoundSpec {
        id: "B15",
        target: QMinUpper,
        strict: false,
        assurance: Asserted,
        applicability: "n >= 2",
        equality: None,
        statement: "q_min <= sqrt(2 d_max^2 + (2km/(k-1))(km - (n-1) d_min + ((k-1) d_min - 1) d_max))",
    },
    BoundSpec {
        id: "B16",
        target: QMinUpper,
        strict: false,
        assurance: Asserted,
        applicability: "n >= 2",
        equality: None,
        statement: "q_min <= 2 sqrt(Z1/n)",
    },
    BoundSpec {
        id: "B17",
        target: SpreadLower,
        strict: true,
        assurance: Asserted,
        applicability: "always",
        equality: None,
        statement: "s_Q > 1",
    },
    BoundSpec {
        id: "B18",
        target: SpreadLower,
        strict: false,
        assurance: Asserted,
        applicability: "d_min > d_bar/2",
        equality: eq(ScaledCompleteForm, Audited),
        statement: "s_Q >= (2 n d_min - k m)/(n-1)",
    },
    BoundSpec {
        id: "B19",
        target: SpreadLower,
        strict: false,
        assurance: Asserted,
        applicability: "always",
        equality: None,
        statement: "s_Q >= (n (d_max + 1/(k-1)) - k m)/(n-1)",
    },
    BoundSpec {
        id: "B20",
        target: SpreadLower,
        strict: false,
        assurance: Asserted,
        applicability: "always",
        equality: None,
        statement: "s_Q >= d_max - d_min + 1/(k-1)",
    },
    BoundSpec {
        id: "B21",
        target: SpreadIdentity,
        strict: false,
        assurance: Asserted,
        applicability: "regular",
        equality: None,
        statement: "s_A = s_Q",
    },
    BoundSpec {
        id: "B22",
        target: SpreadUpper,
        strict: true,
        assurance: Asserted,
        applicability: "always",
        equality: None,
        statement: "s_Q < ((4 d_max^2 - 1/4)^2 + 2(2 d_max + 1/2)) / (2 sqrt 2)",
    },
    BoundSpec {
        id: "B23",
        target: SpreadUpper,
        strict: true,
        assurance: Audited,
        applicability: "tau >= 1",
        equality: None,
        statement: "s_Q < 2 tau^2 d_max / (tau^2 - 1/n)",
    },
    BoundSpec {
        id: "B24",
        target: SpreadLower,
        strict: false,
        assurance: Asserted,
        applicability: "always",
        equality: eq(ScaledCompleteForm, Audited),
        statement: "s_Q >= 2 d_min - sqrt((Z1 + alpha/(k-1)^2 - (2 d_min)^2)/(n-1))",
    },
    BoundSpec {
        id: "B25",
        target: SpreadBracket,
        strict: true,
        assurance: Asserted,
        applicability: "chi >= 2",
        equality: None,
        statement: "chi sqrt(n^2-1) / (n (1 + (k-1) d_max)) < s_Q < 4 n chi d_max / (k sqrt(n^2-1))",
    },
];

/// The 25 bounds in a fixed order.
pub fn catalog() -> &'static [BoundSpec] {
    &CATALOG
}

pub fn spec(id: &str) -> Option<&'static BoundSpec> {
    CATALOG.iter().find(|s| s.id == id)
}
