//! Self-contained reports for the command-line front end.
//!
//! A report embeds its input ideals as full exponent vectors, so every
//! verdict, witness and order can be re-derived from the report alone.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bivariate::{cwp_structural, order_hash, tight_factorization, TightKind};
use crate::error::{Error, Result};
use crate::exchange::{
    is_componentwise_polymatroidal, is_componentwise_sep, is_polymatroidal, satisfies_nonpure_dual_exchange,
    satisfies_nonpure_exchange, satisfies_strong_exchange, ComponentwiseVerdict, ExchangeWitness, Verdict,
};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::quotients::{
    find_admissible_order, is_admissible_order, ColonTrace, GeneratorOrder, SearchStatus,
};
use crate::text::ParsedIdeal;
use crate::veronese::{sep_admissible_order, ChainAudit, MaximalChainMethod};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    Order,
    VerifyOrder,
    Product,
    Component,
    SepOrder,
}

/// A command with its inputs.
#[derive(Debug, Clone)]
pub enum Request {
    Classify(ParsedIdeal),
    Order { input: ParsedIdeal, budget: u64 },
    VerifyOrder { input: ParsedIdeal, order: Vec<Monomial> },
    Product(ParsedIdeal, ParsedIdeal),
    Component { input: ParsedIdeal, degree: u32 },
    SepOrder(ParsedIdeal),
}

impl Request {
    pub fn command(&self) -> Command {
        match self {
            Request::Classify(_) => Command::Classify,
            Request::Order { .. } => Command::Order,
            Request::VerifyOrder { .. } => Command::VerifyOrder,
            Request::Product(..) => Command::Product,
            Request::Component { .. } => Command::Component,
            Request::SepOrder(_) => Command::SepOrder,
        }
    }
}

/// Whether the question the command asks was answered positively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    PredicateFalse,
    /// The search ran out of budget.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDigest {
    pub nvars: usize,
    pub generator_count: usize,
    pub generators: Vec<Monomial>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub non_minimal_input: bool,
}

impl IdealDigest {
    pub fn of(ideal: &MonomialIdeal, non_minimal_input: bool) -> Self {
        IdealDigest {
            nvars: ideal.nvars(),
            generator_count: ideal.len(),
            generators: ideal.gens().to_vec(),
            non_minimal_input,
        }
    }

    pub fn ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::minimalize(self.nvars, self.generators.iter().cloned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Polymatroidal,
    NonpureExchange,
    NonpureDualExchange,
    StrongExchange,
    ComponentwisePolymatroidal,
    ComponentwiseSep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub predicate: Predicate,
    /// `None` when the predicate does not apply to the input.
    pub holds: Option<bool>,
    /// Failing component degree, for componentwise predicates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ExchangeWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerdictRecord {
    fn from_verdict(predicate: Predicate, v: Verdict) -> Self {
        VerdictRecord {
            predicate,
            holds: Some(v.holds()),
            degree: None,
            witness: v.witness().cloned(),
            note: None,
        }
    }

    fn from_componentwise(predicate: Predicate, v: ComponentwiseVerdict) -> Self {
        let failure = v.failure().map(|(d, w)| (d, w.clone()));
        VerdictRecord {
            predicate,
            holds: Some(v.holds()),
            degree: failure.as_ref().map(|(d, _)| *d),
            witness: failure.map(|(_, w)| w),
            note: None,
        }
    }

    fn not_applicable(predicate: Predicate, note: &str) -> Self {
        VerdictRecord {
            predicate,
            holds: None,
            degree: None,
            witness: None,
            note: Some(note.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderSource {
    Search,
    /// The bivariate valley order.
    Hash,
    Supplied,
    Sep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFailureRecord {
    pub position: usize,
    pub generator: Monomial,
    pub colon: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub source: OrderSource,
    pub generators: Option<Vec<Monomial>>,
    /// Result of the independent verifier; `None` when there is no order.
    pub admissible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colon_variables: Option<ColonTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<OrderFailureRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<SearchStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join_index: Option<usize>,
}

impl OrderRecord {
    fn verified(source: OrderSource, order: &GeneratorOrder) -> Self {
        let mut rec = OrderRecord {
            source,
            generators: Some(order.order().to_vec()),
            admissible: None,
            colon_variables: None,
            failure: None,
            status: None,
            nodes: None,
            join_index: None,
        };
        match is_admissible_order(order) {
            Ok(trace) => {
                rec.admissible = Some(true);
                rec.colon_variables = Some(trace);
            }
            Err(f) => {
                rec.admissible = Some(false);
                rec.failure = Some(OrderFailureRecord {
                    position: f.position,
                    generator: order.order()[f.position].clone(),
                    colon: f.colon.gens().to_vec(),
                });
            }
        }
        rec
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightRecord {
    pub kind: TightKind,
    pub join_indices: Vec<usize>,
    pub m: usize,
    /// The factor `x^r y^s` divided out before classifying.
    pub shift: Monomial,
    /// Smallest valley index when the structural conditions hold.
    pub valley: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub degree: u32,
    pub lower_shift: Monomial,
    pub upper_shift: Monomial,
    pub maximal_method: MaximalChainMethod,
    pub maximal: ChainAudit,
    pub var: ChainAudit,
    pub caps: ChainAudit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Command,
    pub inputs: Vec<IdealDigest>,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<VerdictRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tight: Option<TightRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orders: Vec<OrderRecord>,
    /// Product or graded component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<IdealDigest>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepRecord>,
    pub elapsed_ms: f64,
}

impl Report {
    fn new(command: Command, inputs: Vec<IdealDigest>) -> Self {
        Report {
            schema: SCHEMA,
            command,
            inputs,
            outcome: Outcome::Success,
            verdicts: Vec::new(),
            tight: None,
            orders: Vec::new(),
            result: None,
            steps: Vec::new(),
            elapsed_ms: 0.0,
        }
    }

    pub fn verdict(&self, predicate: Predicate) -> Option<&VerdictRecord> {
        self.verdicts.iter().find(|v| v.predicate == predicate)
    }
}

/// All exchange predicates for `ideal`.
pub fn classify(ideal: &MonomialIdeal) -> Result<Vec<VerdictRecord>> {
    let mut out = vec![
        VerdictRecord::from_verdict(Predicate::NonpureExchange, satisfies_nonpure_exchange(ideal)?),
        VerdictRecord::from_verdict(Predicate::NonpureDualExchange, satisfies_nonpure_dual_exchange(ideal)?),
    ];
    if ideal.is_equigenerated() {
        let poly = is_polymatroidal(ideal)?;
        let holds = poly.holds();
        out.push(VerdictRecord::from_verdict(Predicate::Polymatroidal, poly));
        out.push(if holds {
            VerdictRecord::from_verdict(Predicate::StrongExchange, satisfies_strong_exchange(ideal)?)
        } else {
            VerdictRecord::not_applicable(Predicate::StrongExchange, "not polymatroidal")
        });
    } else {
        out.push(VerdictRecord::not_applicable(Predicate::Polymatroidal, "not equigenerated"));
        out.push(VerdictRecord::not_applicable(Predicate::StrongExchange, "not equigenerated"));
    }
    out.push(VerdictRecord::from_componentwise(
        Predicate::ComponentwisePolymatroidal,
        is_componentwise_polymatroidal(ideal)?,
    ));
    out.push(VerdictRecord::from_componentwise(
        Predicate::ComponentwiseSep,
        is_componentwise_sep(ideal)?,
    ));
    Ok(out)
}

/// Tight classification of a two-variable ideal.
pub fn tight_record(ideal: &MonomialIdeal) -> Result<TightRecord> {
    let f = tight_factorization(ideal)?;
    Ok(TightRecord {
        kind: f.class.kind,
        join_indices: f.class.join_indices.clone(),
        m: f.class.m,
        shift: f.shift(),
        valley: cwp_structural(ideal)?,
    })
}

fn audit_steps(ideal: &MonomialIdeal) -> Result<(GeneratorOrder, Vec<StepRecord>)> {
    let sep = sep_admissible_order(ideal)?;
    let steps = sep
        .steps
        .iter()
        .map(|s| {
            Ok(StepRecord {
                degree: s.degree,
                lower_shift: s.lower.shift.clone(),
                upper_shift: s.upper.shift.clone(),
                maximal_method: s.maximal_method,
                maximal: s.maximal.audit()?,
                var: s.var.audit()?,
                caps: s.caps.audit()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok((sep.order, steps))
}

pub fn run(request: &Request) -> Result<Report> {
    let started = Instant::now();
    let digest = |p: &ParsedIdeal| IdealDigest::of(&p.ideal, p.non_minimal_input);
    let mut report = match request {
        Request::Classify(input) => {
            let mut r = Report::new(Command::Classify, vec![digest(input)]);
            r.verdicts = classify(&input.ideal)?;
            if input.ideal.nvars() == 2 {
                r.tight = Some(tight_record(&input.ideal)?);
            }
            r
        }
        Request::Order { input, budget } => {
            let ideal = &input.ideal;
            let mut r = Report::new(Command::Order, vec![digest(input)]);
            let outcome = find_admissible_order(ideal, *budget)?;
            let mut rec = match &outcome.sequence {
                Some(seq) => OrderRecord::verified(
                    OrderSource::Search,
                    &GeneratorOrder::new(ideal.clone(), seq.clone())?,
                ),
                None => OrderRecord {
                    source: OrderSource::Search,
                    generators: None,
                    admissible: None,
                    colon_variables: None,
                    failure: None,
                    status: None,
                    nodes: None,
                    join_index: None,
                },
            };
            rec.status = Some(outcome.status);
            rec.nodes = Some(outcome.nodes);
            r.orders.push(rec);
            if ideal.nvars() == 2 {
                if let Some(join) = cwp_structural(ideal)? {
                    let mut hash = OrderRecord::verified(OrderSource::Hash, &order_hash(ideal)?);
                    hash.join_index = Some(join);
                    r.orders.push(hash);
                }
            }
            r.outcome = match outcome.status {
                SearchStatus::Found => Outcome::Success,
                SearchStatus::Exhausted => Outcome::PredicateFalse,
                SearchStatus::BudgetExceeded => Outcome::Inconclusive,
            };
            r
        }
        Request::VerifyOrder { input, order } => {
            let mut r = Report::new(Command::VerifyOrder, vec![digest(input)]);
            let order = GeneratorOrder::new(input.ideal.clone(), order.clone())?;
            let rec = OrderRecord::verified(OrderSource::Supplied, &order);
            if rec.admissible != Some(true) {
                r.outcome = Outcome::PredicateFalse;
            }
            r.orders.push(rec);
            r
        }
        Request::Product(a, b) => {
            if a.ideal.nvars() != b.ideal.nvars() {
                return Err(Error::ArityMismatch {
                    expected: a.ideal.nvars(),
                    found: b.ideal.nvars(),
                });
            }
            let mut r = Report::new(Command::Product, vec![digest(a), digest(b)]);
            let product = a.ideal.product(&b.ideal)?;
            r.verdicts = classify(&product)?;
            if product.nvars() == 2 {
                r.tight = Some(tight_record(&product)?);
            }
            r.result = Some(IdealDigest::of(&product, false));
            r
        }
        Request::Component { input, degree } => {
            let mut r = Report::new(Command::Component, vec![digest(input)]);
            let component = input.ideal.graded_component(*degree)?;
            r.result = Some(IdealDigest::of(&component, false));
            r
        }
        Request::SepOrder(input) => {
            let ideal = &input.ideal;
            let mut r = Report::new(Command::SepOrder, vec![digest(input)]);
            let sep = is_componentwise_sep(ideal)?;
            let holds = sep.holds();
            r.verdicts.push(VerdictRecord::from_componentwise(Predicate::ComponentwiseSep, sep));
            if holds {
                let (order, steps) = audit_steps(ideal)?;
                r.orders.push(OrderRecord::verified(OrderSource::Sep, &order));
                r.steps = steps;
            } else {
                r.outcome = Outcome::PredicateFalse;
            }
            r
        }
    };
    report.elapsed_ms = started.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

fn join_monomials(ms: &[Monomial]) -> String {
    ms.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn render_verdict(out: &mut String, v: &VerdictRecord) {
    let name = serde_json::to_value(v.predicate).expect("enum serializes");
    let name = name.as_str().unwrap_or_default();
    let value = match v.holds {
        Some(true) => "true".to_string(),
        Some(false) => match v.degree {
            Some(d) => format!("false (degree {d})"),
            None => "false".to_string(),
        },
        None => format!("n/a ({})", v.note.as_deref().unwrap_or("")),
    };
    let _ = writeln!(out, "{name}: {value}");
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "  witness: {w}");
    }
}

impl Report {
    /// Human-readable summary; the JSON form carries everything.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, input) in self.inputs.iter().enumerate() {
            let _ = writeln!(
                out,
                "input {}: {} generators in {} variables{}",
                k + 1,
                input.generator_count,
                input.nvars,
                if input.non_minimal_input { " (input was not minimal)" } else { "" }
            );
        }
        for v in &self.verdicts {
            render_verdict(&mut out, v);
        }
        if let Some(t) = &self.tight {
            let _ = writeln!(
                out,
                "tight: {} join {:?} m={} shift {}{}",
                t.kind,
                t.join_indices,
                t.m,
                t.shift,
                t.valley.map(|j| format!(" valley {j}")).unwrap_or_default()
            );
        }
        for o in &self.orders {
            let source = serde_json::to_value(o.source).expect("enum serializes");
            let _ = write!(out, "order ({})", source.as_str().unwrap_or_default());
            if let Some(s) = o.status {
                let s = serde_json::to_value(s).expect("enum serializes");
                let _ = write!(out, " {}", s.as_str().unwrap_or_default());
            }
            if let Some(n) = o.nodes {
                let _ = write!(out, " after {n} nodes");
            }
            out.push('\n');
            if let Some(g) = &o.generators {
                let _ = writeln!(out, "  {}", join_monomials(g));
            }
            match (o.admissible, &o.failure) {
                (Some(true), _) => out.push_str("  admissible: yes\n"),
                (Some(false), Some(f)) => {
                    let _ = writeln!(
                        out,
                        "  admissible: no, colon at position {} ({}) is ({})",
                        f.position,
                        f.generator,
                        join_monomials(&f.colon)
                    );
                }
                _ => {}
            }
        }
        if let Some(r) = &self.result {
            let _ = writeln!(out, "result: ({})", join_monomials(&r.generators));
        }
        for s in &self.steps {
            let _ = writeln!(
                out,
                "step {} -> {}: {:?}, {} + {} + {} generators appended",
                s.degree,
                s.degree + 1,
                s.maximal_method,
                s.maximal.appended.len(),
                s.var.appended.len(),
                s.caps.appended.len()
            );
        }
        out
    }
}
