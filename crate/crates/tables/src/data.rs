//! Record types for the classification tables, with the JSON editions
//! embedded at compile time; an environment override (QAE_DATA_DIR) lets a
//! deployment swap in external copies, which are validated on load.

use serde::{Deserialize, Serialize};

use numth::lie::LieFamily;
use numth::table2::{OrderExpr, OrderFactor};

use crate::error::TableError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableId {
    A1,
    A2,
    B1,
    B2,
    T1,
    T2,
}

/// The derangement-class descriptor in a table's final column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum XDescriptor {
    /// A plain prime: the unique class of that order in G.
    Order { value: u64 },
    /// Cycle shape in the natural alternating/symmetric representation.
    Shape { value: String },
    /// Parameter-dependent shape for the infinite families.
    ShapeFormula { value: String },
    /// Parameter-dependent prime.
    Formula { value: String },
    /// Letter-named class: given order, rank by ascending class size.
    Named { order: u64, rank: u32 },
    /// The class of involutions lying in the socle.
    SocleInvolution,
    /// Unipotent class identified by its Jordan shape on the natural module.
    Unipotent { shape: String, order: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Constructible {
    /// Built and checked with default bounds.
    Default,
    /// Needs the extended bounds flag.
    Extended,
    /// Verified at the order-arithmetic level only.
    Arithmetic,
    /// Parameterized family, exercised by the family scans.
    Family,
    /// Open number-theoretic conditions; never constructed.
    Open,
    /// Built from stored generator data.
    Stored,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SocleFamilyRef {
    pub family: String,
    #[serde(default)]
    pub n: u32,
    pub q: u64,
}

impl SocleFamilyRef {
    pub fn lie_family(&self) -> Result<LieFamily, TableError> {
        Ok(match self.family.as_str() {
            "unitary" => LieFamily::Unitary(self.n),
            "linear" => LieFamily::Linear(self.n),
            "symplectic" => LieFamily::Symplectic(self.n),
            "g2" => LieFamily::G2,
            "tits" => LieFamily::TwoF4Derived,
            other => return Err(TableError::Data(format!("socle family {other}"))),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct A1Row {
    pub case: String,
    pub socle: String,
    pub class: String,
    pub h_type: String,
    pub g_forms: Vec<String>,
    pub conditions: String,
    pub x: XDescriptor,
    pub constructible: Constructible,
}

#[derive(Debug, Clone, Deserialize)]
pub struct A2Row {
    pub row_id: String,
    pub socle: String,
    pub class: String,
    pub h_type: String,
    pub g_forms: Vec<String>,
    pub x: XDescriptor,
    pub constructible: Constructible,
    #[serde(default)]
    pub socle_order_family: Option<SocleFamilyRef>,
    #[serde(default)]
    pub h0_order: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct B1Row {
    pub case: String,
    pub g: String,
    pub h: String,
    pub conditions: String,
    pub alpha_condition: String,
    pub x: XDescriptor,
}

#[derive(Debug, Clone, Deserialize)]
pub struct B2Row {
    pub row_id: String,
    pub g: String,
    pub h: String,
    pub h_order: u64,
    /// A2 row ids (or the borel id) of the maximal overgroups.
    pub m: Vec<String>,
    /// Stored columns: class counts are data-only (establishing them needs
    /// isomorphism testing across the whole subgroup lattice of G).
    pub a: u32,
    pub b: u32,
    /// Depth, verified by lattice descent inside M.
    pub c: u32,
    pub x: u64,
    pub verify: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct T1Row {
    pub degree: String,
    pub p: u64,
    pub d: u32,
    /// External database positions, stored verbatim as provenance and never
    /// dereferenced; acceptance checks the count per degree.
    pub database_indices: Vec<u64>,
    pub count: usize,
    pub families: Vec<String>,
    pub verify: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct T2Row {
    pub case: String,
    pub socle: serde_json::Value,
    pub h0_type: String,
    pub h0_order: Vec<String>,
    #[serde(default)]
    pub i: Option<u32>,
    #[serde(default)]
    pub r: Option<u64>,
    #[serde(default)]
    pub q_samples: Vec<u64>,
    #[serde(default)]
    pub condition: Option<String>,
}

impl T2Row {
    pub fn socle_family(&self) -> Result<Option<LieFamily>, TableError> {
        let obj = self.socle.as_object().ok_or_else(|| TableError::Data("socle".into()))?;
        if let Some(f) = obj.get("family").and_then(|v| v.as_str()) {
            let fam = match f {
                "g2" => LieFamily::G2,
                "2g2" => LieFamily::TwoG2,
                "2b2" => LieFamily::TwoB2,
                "3d4" => LieFamily::ThreeD4,
                "f4" => LieFamily::F4,
                "tits" => LieFamily::TwoF4Derived,
                other => return Err(TableError::Data(format!("family {other}"))),
            };
            return Ok(Some(fam));
        }
        Ok(None)
    }

    pub fn socle_const(&self) -> Option<u64> {
        self.socle
            .as_object()
            .and_then(|o| o.get("const"))
            .and_then(|v| v.as_str())
            .and_then(|s| s.parse().ok())
    }

    pub fn order_expr(&self) -> Result<OrderExpr, TableError> {
        parse_order_expr(&self.h0_order)
    }
}

pub fn parse_order_expr(factors: &[String]) -> Result<OrderExpr, TableError> {
    let mut out = Vec::new();
    for f in factors {
        let (tag, arg) = f.split_once(':').unwrap_or((f.as_str(), ""));
        let factor = match tag {
            "const" => OrderFactor::Const(arg.parse().map_err(|_| bad(f))?),
            "q_pow" => OrderFactor::QPow(arg.parse().map_err(|_| bad(f))?),
            "q_minus" => OrderFactor::QPowMinus(arg.parse().map_err(|_| bad(f))?),
            "q_plus" => OrderFactor::QPowPlus(arg.parse().map_err(|_| bad(f))?),
            "phi12" => OrderFactor::Phi12,
            "gcd2_qm1" => OrderFactor::Gcd2QMinus1,
            "div_gcd2_qm1" => OrderFactor::DivGcd2QMinus1,
            "div_const" => OrderFactor::DivConst(arg.parse().map_err(|_| bad(f))?),
            _ => return Err(bad(f)),
        };
        out.push(factor);
    }
    Ok(OrderExpr(out))
}

fn bad(f: &str) -> TableError {
    TableError::Data(format!("bad order factor {f:?}"))
}

#[derive(Debug, Clone)]
pub struct Tables {
    pub a1: Vec<A1Row>,
    pub a2: Vec<A2Row>,
    pub b1: Vec<B1Row>,
    pub b2: Vec<B2Row>,
    pub t1: Vec<T1Row>,
    pub t2: Vec<T2Row>,
}

/// Summary view used by the query API: one record per table row.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRecord {
    pub table: TableId,
    pub case: String,
    pub socle: String,
    pub h_type: String,
    pub x: String,
}

#[derive(Deserialize)]
struct Wrapper<T> {
    table: String,
    schema_version: u32,
    rows: Vec<T>,
}

fn load_embedded<T: for<'de> Deserialize<'de>>(
    name: &str,
    embedded: &str,
    expect: &str,
) -> Result<Vec<T>, TableError> {
    let text = match std::env::var("QAE_DATA_DIR") {
        Ok(dir) => std::fs::read_to_string(std::path::Path::new(&dir).join("tables").join(name))
            .map_err(|e| TableError::Data(format!("{name}: {e}")))?,
        Err(_) => embedded.to_string(),
    };
    let w: Wrapper<T> =
        serde_json::from_str(&text).map_err(|e| TableError::Data(format!("{name}: {e}")))?;
    if w.table != expect || w.schema_version != 1 {
        return Err(TableError::Data(format!("{name}: wrong table header")));
    }
    Ok(w.rows)
}

const A1_JSON: &str = include_str!("../../../data/tables/a1.json");
const A2_JSON: &str = include_str!("../../../data/tables/a2.json");
const B1_JSON: &str = include_str!("../../../data/tables/b1.json");
const B2_JSON: &str = include_str!("../../../data/tables/b2.json");
const T1_JSON: &str = include_str!("../../../data/tables/t1_affine.json");
const T2_JSON: &str = include_str!("../../../data/tables/t2_pi.json");

pub fn load_tables() -> Result<Tables, TableError> {
    let tables = Tables {
        a1: load_embedded("a1.json", A1_JSON, "A1")?,
        a2: load_embedded("a2.json", A2_JSON, "A2")?,
        b1: load_embedded("b1.json", B1_JSON, "B1")?,
        b2: load_embedded("b2.json", B2_JSON, "B2")?,
        t1: load_embedded("t1_affine.json", T1_JSON, "T1")?,
        t2: load_embedded("t2_pi.json", T2_JSON, "T2")?,
    };
    // row counts pinned to the source tables
    if tables.a1.len() != 11 {
        return Err(TableError::Data("A1 must have 11 rows".into()));
    }
    if tables.b1.len() != 4 {
        return Err(TableError::Data("B1 must have 4 rows".into()));
    }
    if tables.t1.len() != 10 {
        return Err(TableError::Data("T1 must have 10 degree rows".into()));
    }
    if tables.a2.len() != 35 || tables.b2.len() != 19 {
        return Err(TableError::Data("A2/B2 row counts off".into()));
    }
    // every B2 maximal-overgroup reference resolves to an A2 row or the
    // borel family
    for row in &tables.b2 {
        for m in &row.m {
            let known = m == "l249_borel" || tables.a2.iter().any(|r| &r.row_id == m);
            if !known {
                return Err(TableError::Data(format!("B2 row {} references {m}", row.row_id)));
            }
        }
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_load_and_counts_match() {
        let t = load_tables().unwrap();
        assert_eq!(t.a1.len(), 11);
        assert_eq!(t.b1.len(), 4);
        assert_eq!(t.t1.len(), 10);
        assert_eq!(
            t.t1.iter().map(|r| r.count).sum::<usize>(),
            2 + 6 + 5 + 4 + 3 + 5 + 2 + 2 + 3 + 2
        );
        assert!(t.t2.iter().any(|r| r.case == "D2"));
    }

    #[test]
    fn order_expressions_evaluate() {
        let t = load_tables().unwrap();
        let d2 = t.t2.iter().find(|r| r.case == "D2").unwrap();
        let expr = d2.order_expr().unwrap();
        // |G2(2)| = 12096
        assert_eq!(expr.evaluate(2).unwrap(), num_bigint::BigUint::from(12096u64));
    }
}
