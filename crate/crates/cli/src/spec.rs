//! The span-specification text format: a key/value document with nested
//! generator and map tables.
//!
//! ```text
//! # a comment
//! name = su4_u1
//! ring = Z
//! max_degree = 16
//! outputs = poincare bigraded torsion products oracle_check
//!
//! [base]
//! c2 : 4
//! c3 : 6
//! c4 : 8
//!
//! [left]            # empty table: the trivial algebra
//!
//! [right]
//! t : 2
//!
//! [left_map]
//! c2 -> 0
//! c3 -> 0
//! c4 -> 0
//!
//! [right_map]
//! c2 -> -6*t^2
//! c3 -> -8*t^3
//! c4 -> -3*t^4
//! ```
//!
//! A generator line is `name : degree`, optionally followed by `polynomial`
//! to allow nonzero squares on an odd generator in characteristic 2. Map
//! lines are `generator -> expression` in the polynomial-expression grammar
//! (integer coefficients, `*`, `^`, `+`, `-`).

use std::collections::BTreeSet;
use std::fmt;

use dgtor_core::dga::{FreeGcaPresentation, GcaGenerator};
use dgtor_core::linalg::CoefficientRing;

/// Which sections of the report to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Poincare,
    Bigraded,
    Torsion,
    Products,
    OracleCheck,
}

impl Output {
    pub fn parse(s: &str) -> Option<Output> {
        match s {
            "poincare" => Some(Output::Poincare),
            "bigraded" => Some(Output::Bigraded),
            "torsion" => Some(Output::Torsion),
            "products" => Some(Output::Products),
            "oracle_check" => Some(Output::OracleCheck),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Output::Poincare => "poincare",
            Output::Bigraded => "bigraded",
            Output::Torsion => "torsion",
            Output::Products => "products",
            Output::OracleCheck => "oracle_check",
        }
    }
}

/// A parsed and validated span specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanSpec {
    pub name: String,
    pub ring: CoefficientRing,
    pub max_degree: usize,
    pub outputs: BTreeSet<Output>,
    pub base: Vec<GcaGenerator>,
    pub left: Vec<GcaGenerator>,
    pub right: Vec<GcaGenerator>,
    pub left_map: Vec<(String, String)>,
    pub right_map: Vec<(String, String)>,
    /// Characteristic-2 hypotheses on vanishing ∪₁-squares are asserted by
    /// the user, not checked: they live at cochain level.
    pub char2_hypotheses_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

pub fn default_outputs() -> BTreeSet<Output> {
    [Output::Poincare, Output::Bigraded, Output::Torsion]
        .into_iter()
        .collect()
}

/// Parse a specification document; collects diagnostics with line positions.
pub fn parse_spec(text: &str) -> Result<SpanSpec, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut name = String::from("unnamed");
    let mut ring: Option<CoefficientRing> = None;
    let mut max_degree: Option<usize> = None;
    let mut outputs = default_outputs();
    let mut char2 = false;
    let mut tables: Vec<(String, Vec<(usize, String)>)> = Vec::new();
    let mut current: Option<usize> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(section) = line.strip_prefix('[') {
            let Some(section) = section.strip_suffix(']') else {
                diags.push(Diagnostic {
                    line: lineno,
                    message: "unterminated section header".into(),
                });
                continue;
            };
            tables.push((section.trim().to_string(), Vec::new()));
            current = Some(tables.len() - 1);
            continue;
        }
        match current {
            None => {
                // top-level key = value
                let Some((key, value)) = line.split_once('=') else {
                    diags.push(Diagnostic {
                        line: lineno,
                        message: format!("expected `key = value`, found `{line}`"),
                    });
                    continue;
                };
                let key = key.trim();
                let value = value.trim();
                match key {
                    "name" => name = value.to_string(),
                    "ring" => match parse_ring(value) {
                        Some(r) => ring = Some(r),
                        None => diags.push(Diagnostic {
                            line: lineno,
                            message: format!("unknown ring `{value}` (use Z, Q, or F<p>)"),
                        }),
                    },
                    "max_degree" => match value.parse::<usize>() {
                        Ok(v) => max_degree = Some(v),
                        Err(_) => diags.push(Diagnostic {
                            line: lineno,
                            message: format!("max_degree must be a number, found `{value}`"),
                        }),
                    },
                    "outputs" => {
                        outputs.clear();
                        for word in value.split_whitespace() {
                            match Output::parse(word) {
                                Some(o) => {
                                    outputs.insert(o);
                                }
                                None => diags.push(Diagnostic {
                                    line: lineno,
                                    message: format!("unknown output `{word}`"),
                                }),
                            }
                        }
                    }
                    "char2_hypotheses_asserted" => {
                        char2 = value == "true" || value == "yes";
                    }
                    _ => diags.push(Diagnostic {
                        line: lineno,
                        message: format!("unknown key `{key}`"),
                    }),
                }
            }
            Some(t) => tables[t].1.push((lineno, line.to_string())),
        }
    }

    let mut base = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut left_map = Vec::new();
    let mut right_map = Vec::new();
    let mut seen = BTreeSet::new();
    for (section, lines) in &tables {
        if !seen.insert(section.clone()) {
            diags.push(Diagnostic {
                line: 0,
                message: format!("duplicate section [{section}]"),
            });
        }
        match section.as_str() {
            "base" | "left" | "right" => {
                let into = match section.as_str() {
                    "base" => &mut base,
                    "left" => &mut left,
                    _ => &mut right,
                };
                for (lineno, line) in lines {
                    match parse_generator_line(line) {
                        Ok(g) => into.push(g),
                        Err(m) => diags.push(Diagnostic {
                            line: *lineno,
                            message: m,
                        }),
                    }
                }
            }
            "left_map" | "right_map" => {
                let into = if section == "left_map" {
                    &mut left_map
                } else {
                    &mut right_map
                };
                for (lineno, line) in lines {
                    match line.split_once("->") {
                        Some((g, e)) => into.push((g.trim().to_string(), e.trim().to_string())),
                        None => diags.push(Diagnostic {
                            line: *lineno,
                            message: format!("expected `generator -> expression`, found `{line}`"),
                        }),
                    }
                }
            }
            other => diags.push(Diagnostic {
                line: 0,
                message: format!("unknown section [{other}]"),
            }),
        }
    }

    let Some(ring) = ring else {
        diags.push(Diagnostic {
            line: 0,
            message: "missing `ring =` declaration".into(),
        });
        return Err(diags);
    };
    let max_degree = max_degree.unwrap_or(12);

    // structural validation
    for g in &base {
        if g.degree < 2 {
            diags.push(Diagnostic {
                line: 0,
                message: format!(
                    "base generator {} has degree {}; base generators must have degree ≥ 2",
                    g.name, g.degree
                ),
            });
        }
    }
    for gens in [&base, &left, &right] {
        for g in gens {
            if g.polynomial_square && g.degree % 2 == 1 && ring.characteristic() != 2 {
                diags.push(Diagnostic {
                    line: 0,
                    message: format!(
                        "odd generator {} may only be polynomial in characteristic 2",
                        g.name
                    ),
                });
            }
        }
    }
    for (map, gens, which) in [
        (&left_map, &base, "left_map"),
        (&right_map, &base, "right_map"),
    ] {
        let mut mapped = BTreeSet::new();
        for (g, _) in map.iter() {
            if !gens.iter().any(|x| &x.name == g) {
                diags.push(Diagnostic {
                    line: 0,
                    message: format!("[{which}] names unknown base generator `{g}`"),
                });
            }
            mapped.insert(g.clone());
        }
        for g in gens.iter() {
            if !mapped.contains(&g.name) {
                diags.push(Diagnostic {
                    line: 0,
                    message: format!("[{which}] is missing an image for `{}`", g.name),
                });
            }
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    Ok(SpanSpec {
        name,
        ring,
        max_degree,
        outputs,
        base,
        left,
        right,
        left_map,
        right_map,
        char2_hypotheses_asserted: char2,
    })
}

fn parse_generator_line(line: &str) -> Result<GcaGenerator, String> {
    let Some((name, rest)) = line.split_once(':') else {
        return Err(format!("expected `name : degree`, found `{line}`"));
    };
    let name = name.trim().to_string();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(format!("bad generator name `{name}`"));
    }
    let mut parts = rest.trim().split_whitespace();
    let degree: usize = parts
        .next()
        .ok_or("missing degree")?
        .parse()
        .map_err(|_| format!("bad degree in `{line}`"))?;
    let mut polynomial = false;
    for flag in parts {
        match flag {
            "polynomial" => polynomial = true,
            other => return Err(format!("unknown generator flag `{other}`")),
        }
    }
    Ok(GcaGenerator {
        name,
        degree,
        polynomial_square: polynomial,
    })
}

pub fn parse_ring(s: &str) -> Option<CoefficientRing> {
    match s {
        "Z" | "z" => Some(CoefficientRing::Integers),
        "Q" | "q" => Some(CoefficientRing::Rationals),
        _ => {
            let p = s.strip_prefix('F').or_else(|| s.strip_prefix('f'))?;
            let p: u64 = p.parse().ok()?;
            CoefficientRing::prime_field(p).ok()
        }
    }
}

/// Emit a specification back to text; `parse_spec(emit(s)) == s`.
pub fn emit(spec: &SpanSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("name = {}\n", spec.name));
    out.push_str(&format!("ring = {}\n", spec.ring));
    out.push_str(&format!("max_degree = {}\n", spec.max_degree));
    let outputs: Vec<&str> = spec.outputs.iter().map(|o| o.name()).collect();
    out.push_str(&format!("outputs = {}\n", outputs.join(" ")));
    if spec.char2_hypotheses_asserted {
        out.push_str("char2_hypotheses_asserted = true\n");
    }
    for (section, gens) in [
        ("base", &spec.base),
        ("left", &spec.left),
        ("right", &spec.right),
    ] {
        out.push_str(&format!("\n[{section}]\n"));
        for g in gens.iter() {
            if g.polynomial_square {
                out.push_str(&format!("{} : {} polynomial\n", g.name, g.degree));
            } else {
                out.push_str(&format!("{} : {}\n", g.name, g.degree));
            }
        }
    }
    for (section, map) in [("left_map", &spec.left_map), ("right_map", &spec.right_map)] {
        out.push_str(&format!("\n[{section}]\n"));
        for (g, e) in map.iter() {
            out.push_str(&format!("{g} -> {e}\n"));
        }
    }
    out
}

impl SpanSpec {
    pub fn presentation(gens: &[GcaGenerator], ring: CoefficientRing) -> FreeGcaPresentation {
        FreeGcaPresentation {
            generators: gens.to_vec(),
            ring,
            cutoff: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
name = cyclic2
ring = Z
max_degree = 8
outputs = poincare torsion

[base]
u : 2

[left]

[right]
v : 2

[left_map]
u -> 0

[right_map]
u -> 2*v
";

    #[test]
    fn parse_then_emit_round_trips() {
        let spec = parse_spec(SAMPLE).unwrap();
        assert_eq!(spec.name, "cyclic2");
        assert_eq!(spec.ring, CoefficientRing::Integers);
        assert_eq!(spec.max_degree, 8);
        let emitted = emit(&spec);
        let again = parse_spec(&emitted).unwrap();
        assert_eq!(spec, again);
    }

    #[test]
    fn degree_one_base_generator_is_rejected() {
        let bad = SAMPLE.replace("u : 2", "u : 1");
        let err = parse_spec(&bad).unwrap_err();
        assert!(err.iter().any(|d| d.message.contains("degree ≥ 2")));
    }

    #[test]
    fn missing_image_is_rejected_with_position() {
        let bad = SAMPLE.replace("u -> 2*v", "");
        let err = parse_spec(&bad).unwrap_err();
        assert!(err.iter().any(|d| d.message.contains("missing an image")));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "ring = Z\nmax_degree = oops\n";
        let err = parse_spec(bad).unwrap_err();
        assert!(err.iter().any(|d| d.line == 2));
    }
}
