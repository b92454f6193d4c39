//! Report documents: an aligned plain-text table for people and a JSON
//! mirror for machines. Reports are byte-identical across runs; wall-clock
//! data is attached only when explicitly requested.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BidegreeRow {
    pub word_length: usize,
    pub internal_degree: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorRow {
    pub name: String,
    pub degree: usize,
    pub word_length: Option<usize>,
    pub internal_degree: Option<usize>,
    pub order: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductRow {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductsSection {
    pub generators: Vec<GeneratorRow>,
    pub unit: String,
    pub products: Vec<ProductRow>,
    /// Heuristic pretty-printing of annihilation relations; never used by
    /// acceptance checks.
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSection {
    pub agrees: bool,
    pub blocks_checked: usize,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TimingSection {
    pub total_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub name: String,
    pub ring: String,
    pub max_degree: usize,
    pub route: String,
    pub spec_echo: String,
    pub poincare: Vec<DegreeRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bigraded: Option<Vec<BidegreeRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub products: Option<ProductsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingSection>,
}

fn torsion_text(t: &[String]) -> String {
    if t.is_empty() {
        "-".to_string()
    } else {
        t.join(",")
    }
}

impl ReportDocument {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dgtor report: {}\n", self.name));
        out.push_str(&format!(
            "ring {}, max degree {}, route: {}\n",
            self.ring, self.max_degree, self.route
        ));
        out.push('\n');
        out.push_str("Poincare table (total degree)\n");
        out.push_str("  deg  rank  torsion\n");
        for row in &self.poincare {
            out.push_str(&format!(
                "  {:>3}  {:>4}  {}\n",
                row.degree,
                row.rank,
                torsion_text(&row.torsion)
            ));
        }
        if let Some(bigraded) = &self.bigraded {
            out.push('\n');
            out.push_str("Bigraded table (word length p, internal degree q)\n");
            out.push_str("  (p, q)   rank  torsion\n");
            for row in bigraded {
                out.push_str(&format!(
                    "  ({:>2},{:>3})  {:>4}  {}\n",
                    row.word_length,
                    row.internal_degree,
                    row.rank,
                    torsion_text(&row.torsion)
                ));
            }
        }
        if let Some(products) = &self.products {
            out.push('\n');
            out.push_str("Ring structure\n");
            out.push_str("  generators:\n");
            for g in &products.generators {
                let bidegree = match (g.word_length, g.internal_degree) {
                    (Some(p), Some(q)) => format!(", bidegree ({p},{q})"),
                    _ => String::new(),
                };
                let order = match &g.order {
                    Some(d) => format!(", order {d}"),
                    None => ", free".to_string(),
                };
                out.push_str(&format!(
                    "    {}  degree {}{}{}\n",
                    g.name, g.degree, bidegree, order
                ));
            }
            out.push_str(&format!("  unit: {}\n", products.unit));
            out.push_str("  products:\n");
            for p in &products.products {
                out.push_str(&format!("    {}*{} = {}\n", p.left, p.right, p.value));
            }
            if !products.relations.is_empty() {
                out.push_str("  relations (heuristic display only):\n");
                for r in &products.relations {
                    out.push_str(&format!("    {r}\n"));
                }
            }
        }
        if let Some(oracle) = &self.oracle {
            out.push('\n');
            out.push_str(&format!(
                "Oracle check (Koszul route): {} ({} blocks compared)\n",
                if oracle.agrees { "AGREE" } else { "MISMATCH" },
                oracle.blocks_checked
            ));
            for m in &oracle.mismatches {
                out.push_str(&format!("  mismatch: {m}\n"));
            }
        }
        if let Some(t) = &self.timing {
            out.push('\n');
            out.push_str(&format!("wall clock: {} ms\n", t.total_ms));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
