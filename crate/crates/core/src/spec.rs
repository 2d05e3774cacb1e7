//! Textual algebra specifications.
//!
//! A spec is a JSON tree mirroring [`Algebra`]. Scalars are integers or
//! `"p/q"` strings; floats are rejected. Every node is validated while it is
//! parsed, so errors carry the line and column where the offending node ends.
//!
//! ```
//! use pmvroot::spec::parse_spec;
//!
//! let spec = parse_spec(r#"{"kind":"mv_chain","n":4}"#).unwrap();
//! assert_eq!(spec.algebra().describe(), "Γ(ℤ,4)");
//! assert_eq!(parse_spec(&spec.to_text()).unwrap(), spec);
//! ```

use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, FiniteTable};
use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement, OrderKind};
use crate::ideals::quotient_algebra;
use crate::rational::Rational;

/// A scalar or nested list: a group coordinate vector, a product tuple, or a
/// table label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementSpec {
    Int(i64),
    Text(String),
    List(Vec<ElementSpec>),
}

impl Serialize for ElementSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ElementSpec::Int(n) => s.serialize_i64(*n),
            ElementSpec::Text(t) => s.serialize_str(t),
            ElementSpec::List(v) => {
                let mut seq = s.serialize_seq(Some(v.len()))?;
                for e in v {
                    seq.serialize_element(e)?;
                }
                seq.end()
            }
        }
    }
}

struct ElementVisitor;

impl<'de> Visitor<'de> for ElementVisitor {
    type Value = ElementSpec;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer, a \"p/q\" string, a label or a list")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ElementSpec, E> {
        Ok(ElementSpec::Int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ElementSpec, E> {
        i64::try_from(v).map(ElementSpec::Int).map_err(|_| E::custom(format!("integer {v} is too large; write it as a string")))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ElementSpec, E> {
        Err(E::custom(format!("float {v} is not allowed; write rationals as \"p/q\"")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ElementSpec, E> {
        Ok(ElementSpec::Text(v.to_string()))
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<ElementSpec, A::Error> {
        let mut out = Vec::new();
        while let Some(e) = seq.next_element()? {
            out.push(e);
        }
        Ok(ElementSpec::List(out))
    }
}

impl<'de> Deserialize<'de> for ElementSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ElementVisitor)
    }
}

impl ElementSpec {
    fn scalar(&self) -> Result<Rational> {
        match self {
            ElementSpec::Int(n) => Ok(Rational::from_integer(*n)),
            ElementSpec::Text(t) => Ok(t.parse()?),
            ElementSpec::List(_) => Err(Error::DescriptorMismatch("expected a scalar, found a list".into())),
        }
    }

    fn of_scalar(r: &Rational) -> Self {
        let text = r.to_string();
        match text.parse::<i64>() {
            Ok(n) => ElementSpec::Int(n),
            Err(_) => ElementSpec::Text(text),
        }
    }

    fn coords(&self, dims: usize) -> Result<GroupElement> {
        let coords = match self {
            ElementSpec::List(v) => v.iter().map(ElementSpec::scalar).collect::<Result<Vec<_>>>()?,
            scalar => vec![scalar.scalar()?],
        };
        if coords.len() != dims {
            return Err(Error::DescriptorMismatch(format!("{} coordinates for a {dims}-dimensional group", coords.len())));
        }
        Ok(GroupElement::new(coords))
    }

    /// Resolves the literal to an element of `m`.
    pub fn resolve(&self, m: &Algebra) -> Result<Element> {
        let e = match m {
            Algebra::Table(t) => {
                let label = match self {
                    ElementSpec::Int(n) => n.to_string(),
                    ElementSpec::Text(s) => s.clone(),
                    ElementSpec::List(_) => return Err(Error::DescriptorMismatch("table elements are labels".into())),
                };
                Element::Index(
                    t.index_of(&label)
                        .ok_or_else(|| Error::NotInAlgebra { element: label.clone(), reason: "no such label".into() })?,
                )
            }
            Algebra::Gamma(g) => Element::Group(self.coords(g.descriptor().dims())?),
            Algebra::Product(fs) => {
                let ElementSpec::List(v) = self else {
                    return Err(Error::DescriptorMismatch("product elements are lists".into()));
                };
                if v.len() != fs.len() {
                    return Err(Error::DescriptorMismatch(format!("{} components for {} factors", v.len(), fs.len())));
                }
                Element::Tuple(v.iter().zip(fs).map(|(e, f)| e.resolve(f)).collect::<Result<_>>()?)
            }
            Algebra::Interval { base, .. } => self.resolve(base)?,
            Algebra::Quotient(q) => {
                let x = self.resolve(q.base())?;
                q.project(&x).cloned().ok_or_else(|| Error::NotInAlgebra { element: x.to_string(), reason: "no class".into() })?
            }
        };
        m.require(&e)?;
        Ok(e)
    }

    /// The literal naming `x` in `m`.
    pub fn of(m: &Algebra, x: &Element) -> Self {
        match (m, x) {
            (Algebra::Table(t), Element::Index(i)) => {
                let label = t.label(*i).unwrap_or_default();
                match label.parse::<i64>() {
                    Ok(n) if n.to_string() == label => ElementSpec::Int(n),
                    _ => ElementSpec::Text(label.to_string()),
                }
            }
            (Algebra::Product(fs), Element::Tuple(v)) => {
                ElementSpec::List(fs.iter().zip(v).map(|(f, e)| ElementSpec::of(f, e)).collect())
            }
            (Algebra::Interval { base, .. }, e) => ElementSpec::of(base, e),
            (Algebra::Quotient(q), e) => ElementSpec::of(q.base(), e),
            (_, Element::Group(g)) if g.dims() == 1 => ElementSpec::of_scalar(&g.coords()[0]),
            (_, Element::Group(g)) => ElementSpec::List(g.coords().iter().map(ElementSpec::of_scalar).collect()),
            (_, e) => ElementSpec::Text(e.to_string()),
        }
    }
}

/// Parses an element given on the command line: JSON, or a bare scalar or
/// label such as `1/2`.
pub fn parse_element(m: &Algebra, text: &str) -> Result<Element> {
    let spec = serde_json::from_str::<ElementSpec>(text).unwrap_or_else(|_| ElementSpec::Text(text.trim().to_string()));
    spec.resolve(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderSpec {
    Product,
    Lex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawGroup")]
pub enum GroupSpec {
    IntVector {
        dims: usize,
        order: OrderSpec,
    },
    RatVector {
        dims: usize,
        order: OrderSpec,
    },
    CocycleQ4,
    LexPair {
        h: Box<GroupSpec>,
        g: Box<GroupSpec>,
    },
}

fn missing(kind: &str, field: &str) -> String {
    format!("`{kind}` needs the field `{field}`")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    kind: String,
    dims: Option<usize>,
    order: Option<OrderSpec>,
    h: Option<Box<GroupSpec>>,
    g: Option<Box<GroupSpec>>,
}

impl TryFrom<RawGroup> for GroupSpec {
    type Error = String;

    fn try_from(r: RawGroup) -> std::result::Result<Self, String> {
        let k = r.kind.as_str();
        let extra = |ok: bool| if ok { Ok(()) } else { Err(format!("unexpected field for `{k}`")) };
        match k {
            "int_vector" | "rat_vector" => {
                extra(r.h.is_none() && r.g.is_none())?;
                let dims = r.dims.ok_or_else(|| missing(k, "dims"))?;
                let order = r.order.unwrap_or(OrderSpec::Lex);
                Ok(if k == "int_vector" { GroupSpec::IntVector { dims, order } } else { GroupSpec::RatVector { dims, order } })
            }
            "cocycle_q4" => {
                extra(r.dims.is_none() && r.order.is_none() && r.h.is_none() && r.g.is_none())?;
                Ok(GroupSpec::CocycleQ4)
            }
            "lex_pair" => {
                extra(r.dims.is_none() && r.order.is_none())?;
                let spec = GroupSpec::LexPair { h: r.h.ok_or_else(|| missing(k, "h"))?, g: r.g.ok_or_else(|| missing(k, "g"))? };
                spec.descriptor().map_err(|e| e.to_string())?;
                Ok(spec)
            }
            other => Err(format!(
                "unknown group kind `{other}`, expected one of `int_vector`, `rat_vector`, `cocycle_q4`, `lex_pair`"
            )),
        }
    }
}

impl GroupSpec {
    pub fn descriptor(&self) -> Result<GroupDescriptor> {
        let order = |o: &OrderSpec| match o {
            OrderSpec::Product => OrderKind::Product,
            OrderSpec::Lex => OrderKind::Lex,
        };
        Ok(match self {
            GroupSpec::IntVector { dims, order: o } => GroupDescriptor::int(*dims, order(o)),
            GroupSpec::RatVector { dims, order: o } => GroupDescriptor::rat(*dims, order(o)),
            GroupSpec::CocycleQ4 => GroupDescriptor::CocycleQ4,
            GroupSpec::LexPair { h, g } => GroupDescriptor::lex_pair(h.descriptor()?, g.descriptor()?)?,
        })
    }

    fn of(d: &GroupDescriptor) -> Self {
        let order = |o: &OrderKind| match o {
            OrderKind::Product => OrderSpec::Product,
            OrderKind::Lex => OrderSpec::Lex,
        };
        match d {
            GroupDescriptor::IntVector { dims, order: o } => GroupSpec::IntVector { dims: *dims, order: order(o) },
            GroupDescriptor::RatVector { dims, order: o } => GroupSpec::RatVector { dims: *dims, order: order(o) },
            GroupDescriptor::CocycleQ4 => GroupSpec::CocycleQ4,
            GroupDescriptor::LexPair { h, g } => {
                GroupSpec::LexPair { h: Box::new(GroupSpec::of(h)), g: Box::new(GroupSpec::of(g)) }
            }
        }
    }
}

/// A chain length that must be non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ChainLength(pub u64);

impl<'de> Deserialize<'de> for ChainLength {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = i64::deserialize(d)?;
        u64::try_from(n).map(ChainLength).map_err(|_| de::Error::custom("n must be ≥ 0"))
    }
}

/// The syntax tree of a spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecNode {
    MvChain {
        n: ChainLength,
    },
    Boolean {
        dims: usize,
    },
    Gamma {
        group: GroupSpec,
        unit: ElementSpec,
    },
    Product {
        factors: Vec<AlgebraSpec>,
    },
    Interval {
        base: Box<AlgebraSpec>,
        top: ElementSpec,
    },
    Quotient {
        base: Box<AlgebraSpec>,
        ideal: Vec<ElementSpec>,
    },
    Table {
        labels: Vec<String>,
        oplus: Vec<Vec<usize>>,
        minus: Vec<usize>,
        sim: Vec<usize>,
        zero: usize,
        one: usize,
    },
}

impl SpecNode {
    fn build(&self) -> Result<Algebra> {
        Ok(match self {
            SpecNode::MvChain { n } => Algebra::mv_chain(n.0),
            SpecNode::Boolean { dims } => Algebra::boolean(*dims),
            SpecNode::Gamma { group, unit } => {
                let d = group.descriptor()?;
                let u = unit.coords(d.dims())?;
                Algebra::gamma_from(d, u)?
            }
            SpecNode::Product { factors } => Algebra::product(factors.iter().map(|f| f.algebra.clone()).collect()),
            SpecNode::Interval { base, top } => {
                let top = top.resolve(&base.algebra)?;
                Algebra::interval(base.algebra.clone(), top)?
            }
            SpecNode::Quotient { base, ideal } => {
                let members = ideal.iter().map(|e| e.resolve(&base.algebra)).collect::<Result<Vec<_>>>()?;
                quotient_algebra(&base.algebra, &members)?
            }
            SpecNode::Table { labels, oplus, minus, sim, zero, one } => Algebra::table(FiniteTable::new(
                labels.clone(),
                oplus.clone(),
                minus.clone(),
                sim.clone(),
                *zero,
                *one,
            )?),
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    kind: String,
    n: Option<ChainLength>,
    dims: Option<usize>,
    group: Option<GroupSpec>,
    unit: Option<ElementSpec>,
    factors: Option<Vec<AlgebraSpec>>,
    base: Option<Box<AlgebraSpec>>,
    top: Option<ElementSpec>,
    ideal: Option<Vec<ElementSpec>>,
    labels: Option<Vec<String>>,
    oplus: Option<Vec<Vec<usize>>>,
    minus: Option<Vec<usize>>,
    sim: Option<Vec<usize>>,
    zero: Option<usize>,
    one: Option<usize>,
}

impl RawNode {
    fn present(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        let mut note = |on: bool, name| {
            if on {
                v.push(name)
            }
        };
        note(self.n.is_some(), "n");
        note(self.dims.is_some(), "dims");
        note(self.group.is_some(), "group");
        note(self.unit.is_some(), "unit");
        note(self.factors.is_some(), "factors");
        note(self.base.is_some(), "base");
        note(self.top.is_some(), "top");
        note(self.ideal.is_some(), "ideal");
        note(self.labels.is_some(), "labels");
        note(self.oplus.is_some(), "oplus");
        note(self.minus.is_some(), "minus");
        note(self.sim.is_some(), "sim");
        note(self.zero.is_some(), "zero");
        note(self.one.is_some(), "one");
        v
    }
}

impl TryFrom<RawNode> for SpecNode {
    type Error = String;

    fn try_from(r: RawNode) -> std::result::Result<Self, String> {
        let allowed: &[&str] = match r.kind.as_str() {
            "mv_chain" => &["n"],
            "boolean" => &["dims"],
            "gamma" => &["group", "unit"],
            "product" => &["factors"],
            "interval" => &["base", "top"],
            "quotient" => &["base", "ideal"],
            "table" => &["labels", "oplus", "minus", "sim", "zero", "one"],
            other => {
                return Err(format!(
                    "unknown kind `{other}`, expected one of `mv_chain`, `boolean`, `gamma`, `product`, `interval`, `quotient`, `table`"
                ))
            }
        };
        let k = r.kind.clone();
        if let Some(f) = r.present().into_iter().find(|f| !allowed.contains(f)) {
            return Err(format!("unexpected field `{f}` for `{k}`"));
        }
        let need = |f: &str| missing(&k, f);
        Ok(match k.as_str() {
            "mv_chain" => SpecNode::MvChain { n: r.n.ok_or_else(|| need("n"))? },
            "boolean" => SpecNode::Boolean { dims: r.dims.ok_or_else(|| need("dims"))? },
            "gamma" => SpecNode::Gamma { group: r.group.ok_or_else(|| need("group"))?, unit: r.unit.ok_or_else(|| need("unit"))? },
            "product" => SpecNode::Product { factors: r.factors.ok_or_else(|| need("factors"))? },
            "interval" => SpecNode::Interval { base: r.base.ok_or_else(|| need("base"))?, top: r.top.ok_or_else(|| need("top"))? },
            "quotient" => SpecNode::Quotient { base: r.base.ok_or_else(|| need("base"))?, ideal: r.ideal.ok_or_else(|| need("ideal"))? },
            _ => SpecNode::Table {
                labels: r.labels.ok_or_else(|| need("labels"))?,
                oplus: r.oplus.ok_or_else(|| need("oplus"))?,
                minus: r.minus.ok_or_else(|| need("minus"))?,
                sim: r.sim.ok_or_else(|| need("sim"))?,
                zero: r.zero.ok_or_else(|| need("zero"))?,
                one: r.one.ok_or_else(|| need("one"))?,
            },
        })
    }
}

/// A validated spec together with the algebra it denotes.
#[derive(Debug, Clone, Deserialize)]
#[serde(try_from = "RawNode")]
pub struct AlgebraSpec {
    node: SpecNode,
    algebra: Algebra,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl Eq for AlgebraSpec {}

impl Serialize for AlgebraSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.node.serialize(s)
    }
}

impl TryFrom<SpecNode> for AlgebraSpec {
    type Error = Error;

    fn try_from(node: SpecNode) -> Result<Self> {
        let algebra = node.build()?;
        Ok(AlgebraSpec { node, algebra })
    }
}

impl TryFrom<RawNode> for AlgebraSpec {
    type Error = String;

    fn try_from(raw: RawNode) -> std::result::Result<Self, String> {
        AlgebraSpec::try_from(SpecNode::try_from(raw)?).map_err(|e| e.to_string())
    }
}

impl AlgebraSpec {
    pub fn node(&self) -> &SpecNode {
        &self.node
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> Algebra {
        self.algebra
    }

    /// Canonical text: pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.node).expect("spec trees always serialize");
        s.push('\n');
        s
    }

    /// The spec describing `m`, when `m` has one.
    pub fn of(m: &Algebra) -> Result<Self> {
        let node = match m {
            Algebra::Table(t) => SpecNode::Table {
                labels: t.labels().to_vec(),
                oplus: t.oplus_rows(),
                minus: t.minus_table().to_vec(),
                sim: t.sim_table().to_vec(),
                zero: t.zero(),
                one: t.one(),
            },
            Algebra::Gamma(g) => SpecNode::Gamma {
                group: GroupSpec::of(g.descriptor()),
                unit: ElementSpec::of(m, &Element::Group(g.unit().clone())),
            },
            Algebra::Product(fs) => SpecNode::Product { factors: fs.iter().map(AlgebraSpec::of).collect::<Result<_>>()? },
            Algebra::Interval { base, top } => {
                SpecNode::Interval { base: Box::new(AlgebraSpec::of(base)?), top: ElementSpec::of(base, top) }
            }
            Algebra::Quotient(q) => SpecNode::Quotient {
                base: Box::new(AlgebraSpec::of(q.base())?),
                ideal: q.ideal().iter().map(|e| ElementSpec::of(q.base(), e)).collect(),
            },
        };
        AlgebraSpec::try_from(node)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses and validates a spec.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: strip_position(&e) })
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}
