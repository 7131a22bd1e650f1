//! Text and JSON forms of command results. JSON records follow the sorted
//! order of the underlying maps, so output is canonical.

use postlie::sample::AxiomReport;
use postlie::{Character, Coaction, Grade, LElement, Polynomial, TruncatedSeries, UElement, UTensor, Q};
use serde_json::{json, Value};

pub enum Rendered {
    Grade(Grade),
    Rational(Q),
    LElement(LElement),
    UElement(UElement),
    Polynomial(Polynomial),
    Series(TruncatedSeries),
    Tensor(UTensor),
    Coaction(Coaction),
    Character(Character),
    Axioms(AxiomReport),
}

fn records<'a, K: 'a>(terms: impl Iterator<Item = (K, &'a Q)>, key: impl Fn(K) -> Value) -> Value {
    Value::Array(terms.map(|(k, c)| json!({ "coeff": c.to_string(), "term": key(k) })).collect())
}

impl Rendered {
    pub fn to_text(&self) -> String {
        match self {
            Rendered::Grade(g) => g.to_string(),
            Rendered::Rational(q) => q.to_string(),
            Rendered::LElement(x) => x.to_string(),
            Rendered::UElement(u) => u.to_string(),
            Rendered::Polynomial(p) => p.to_string(),
            Rendered::Series(s) => format!("{s}   (mod homogeneity > {})", s.cutoff()),
            Rendered::Tensor(t) => {
                if t.is_empty() {
                    return "0".into();
                }
                t.iter().map(|((a, b), c)| format!("{c}  {a} (x) {b}")).collect::<Vec<_>>().join("\n")
            }
            Rendered::Coaction(t) => {
                if t.is_empty() {
                    return "0".into();
                }
                t.iter().map(|((u, b), c)| format!("{c}  {u} (x) z{b}")).collect::<Vec<_>>().join("\n")
            }
            Rendered::Character(f) => {
                let lines: Vec<String> = f.support().map(|(g, q)| format!("{g} = {q}")).collect();
                if lines.is_empty() {
                    "(unit character)".into()
                } else {
                    lines.join("\n")
                }
            }
            Rendered::Axioms(r) => {
                let mut lines = vec![if r.ok() { "OK".to_string() } else { "FAILED".to_string() }];
                for l in &r.laws {
                    lines.push(format!("{}: {} passed, {} failed", l.name, l.passed, l.failed));
                }
                lines.join("\n")
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Rendered::Grade(g) => json!(g.to_string()),
            Rendered::Rational(q) => json!(q.to_string()),
            Rendered::LElement(x) => records(x.terms(), |g| json!(g.to_string())),
            Rendered::UElement(u) => records(u.terms(), |w| json!(w.to_string())),
            Rendered::Polynomial(p) => records(p.terms(), |g| json!(format!("z{g}"))),
            Rendered::Series(s) => json!({
                "cutoff": s.cutoff().to_string(),
                "terms": records(s.terms().terms(), |g| json!(format!("z{g}"))),
            }),
            Rendered::Tensor(t) => Value::Array(
                t.iter()
                    .map(|((a, b), c)| json!({ "coeff": c.to_string(), "left": a.to_string(), "right": b.to_string() }))
                    .collect(),
            ),
            Rendered::Coaction(t) => Value::Array(
                t.iter()
                    .map(|((u, b), c)| json!({ "coeff": c.to_string(), "left": u.to_string(), "right": format!("z{b}") }))
                    .collect(),
            ),
            Rendered::Character(f) => {
                let values: serde_json::Map<String, Value> =
                    f.support().map(|(g, q)| (g.to_string(), json!(q.to_string()))).collect();
                json!({ "dim": f.dim(), "values": values })
            }
            Rendered::Axioms(r) => json!({
                "ok": r.ok(),
                "laws": r.laws.iter().map(|l| json!({ "name": l.name, "passed": l.passed, "failed": l.failed })).collect::<Vec<_>>(),
            }),
        }
    }
}
