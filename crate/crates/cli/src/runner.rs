//! Orchestration: build the span, run the requested computations, assemble
//! the report.

use std::time::Instant;

use dgtor_core::guard::CellBudget;
use dgtor_core::tor::{tor_additive, Span, TorRing};
use dgtor_core::Error as CoreError;

use crate::report::{
    BidegreeRow, DegreeRow, GeneratorRow, OracleSection, ProductRow, ProductsSection,
    ReportDocument, TimingSection,
};
use crate::spec::{emit, Output, SpanSpec};

#[derive(Debug)]
pub enum RunError {
    /// Bad input: exit code 2.
    Validation(String),
    /// Resource guard tripped: exit code 3.
    Resource(String),
    /// Anything else: exit code 1.
    Internal(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Validation(m) => write!(f, "validation error: {m}"),
            RunError::Resource(m) => write!(f, "resource guard: {m}"),
            RunError::Internal(m) => write!(f, "{m}"),
        }
    }
}

fn classify(e: CoreError) -> RunError {
    match e {
        CoreError::CutoffTooLarge { .. } => RunError::Resource(e.to_string()),
        CoreError::DegreeMismatch { .. }
        | CoreError::UnknownGenerator { .. }
        | CoreError::ExprParse { .. }
        | CoreError::NotOneConnected { .. }
        | CoreError::CutoffTooSmall { .. }
        | CoreError::OddGeneratorInBase { .. } => RunError::Validation(e.to_string()),
        other => RunError::Internal(other.to_string()),
    }
}

pub fn build_span(spec: &SpanSpec) -> Result<Span, RunError> {
    let algebra_cutoff = spec.max_degree + 2;
    Span::build(
        spec.ring,
        algebra_cutoff,
        &SpanSpec::presentation(&spec.base, spec.ring),
        &SpanSpec::presentation(&spec.left, spec.ring),
        &SpanSpec::presentation(&spec.right, spec.ring),
        &spec.left_map,
        &spec.right_map,
    )
    .map_err(classify)
}

pub fn run(
    spec: &SpanSpec,
    budget: &CellBudget,
    timings: bool,
) -> Result<ReportDocument, RunError> {
    let start = Instant::now();
    let span = build_span(spec)?;
    let tsb = span
        .bar_complex(spec.max_degree + 1, budget)
        .map_err(classify)?;
    let tor = tor_additive(&tsb.view).map_err(classify)?;

    let poincare: Vec<DegreeRow> = (0..=spec.max_degree)
        .map(|n| DegreeRow {
            degree: n,
            rank: tor.total_rank(n),
            torsion: tor.total_torsion(n).iter().map(|d| d.to_string()).collect(),
        })
        .collect();

    let bigraded = if spec.outputs.contains(&Output::Bigraded) && tor.bigraded {
        Some(
            tor.blocks
                .iter()
                .filter(|(_, s)| !s.is_zero())
                .map(|(&(p, q), s)| BidegreeRow {
                    word_length: p,
                    internal_degree: q,
                    rank: s.free_rank,
                    torsion: s.torsion.iter().map(|d| d.to_string()).collect(),
                })
                .collect(),
        )
    } else {
        None
    };

    let products = if spec.outputs.contains(&Output::Products) {
        Some(products_section(&tsb, &tor)?)
    } else {
        None
    };

    let oracle = if spec.outputs.contains(&Output::OracleCheck) {
        Some(oracle_section(&span, &tsb, &tor, spec, budget)?)
    } else {
        None
    };

    Ok(ReportDocument {
        name: spec.name.clone(),
        ring: spec.ring.to_string(),
        max_degree: spec.max_degree,
        route: "two-sided bar".into(),
        spec_echo: emit(spec),
        poincare,
        bigraded,
        products,
        oracle,
        timing: timings.then(|| TimingSection {
            total_ms: start.elapsed().as_millis(),
        }),
    })
}

/// Display name of a generator: g<degree>_<index within the degree>.
fn generator_names(ring: &TorRing<'_>) -> Vec<String> {
    let mut per_degree = std::collections::BTreeMap::new();
    ring.generators
        .iter()
        .map(|g| {
            let k = per_degree.entry(g.total_degree).or_insert(0usize);
            let name = format!("g{}_{}", g.total_degree, k);
            *k += 1;
            name
        })
        .collect()
}

fn class_text(ring: &TorRing<'_>, names: &[String], class: &dgtor_core::tor::ClassVec) -> String {
    if class.is_empty() {
        return "0".to_string();
    }
    let _ = ring;
    class
        .iter()
        .map(|(g, c)| {
            if c.is_one() {
                names[*g].clone()
            } else {
                format!("{}*{}", c, names[*g])
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn products_section(
    tsb: &dgtor_core::tor::TwoSidedBar,
    additive: &dgtor_core::tor::BigradedTor,
) -> Result<ProductsSection, RunError> {
    let mult = |i: usize, j: usize| tsb.shuffle_mult(i, j);
    let mut ring =
        TorRing::with_additive(&tsb.view, &mult, tsb.unit_cell(), additive).map_err(classify)?;
    let names = generator_names(&ring);
    let table = ring.structure_constants().map_err(classify)?;
    let generators: Vec<GeneratorRow> = table
        .generators
        .iter()
        .zip(&names)
        .map(|(g, name)| GeneratorRow {
            name: name.clone(),
            degree: g.total_degree,
            word_length: tsb.view.bigraded.then_some(g.key.0),
            internal_degree: tsb.view.bigraded.then_some(g.key.1),
            order: g.order.as_ref().map(|d| d.to_string()),
        })
        .collect();
    let unit = class_text(&ring, &names, &table.unit);
    let mut products = Vec::new();
    let mut relations = Vec::new();
    for ((i, j), value) in &table.products {
        if *j < *i {
            continue;
        }
        products.push(ProductRow {
            left: names[*i].clone(),
            right: names[*j].clone(),
            value: class_text(&ring, &names, value),
        });
        // annihilation display: k·(gᵢ·gⱼ) = 0 for the smallest torsion order
        if !value.is_empty() {
            if let Some(order) = value
                .iter()
                .filter_map(|(g, _)| table.generators[*g].order.clone())
                .min()
            {
                relations.push(format!("{}*({}*{}) = 0", order, names[*i], names[*j]));
            }
        }
    }
    Ok(ProductsSection {
        generators,
        unit,
        products,
        relations,
    })
}

fn oracle_section(
    span: &Span,
    tsb: &dgtor_core::tor::TwoSidedBar,
    bar_tor: &dgtor_core::tor::BigradedTor,
    spec: &SpanSpec,
    budget: &CellBudget,
) -> Result<OracleSection, RunError> {
    if span
        .base
        .presentation
        .generators
        .iter()
        .any(|g| g.degree % 2 != 0)
    {
        return Err(RunError::Validation(
            "oracle_check needs a polynomial base on even generators".into(),
        ));
    }
    let kz = span.koszul(spec.max_degree + 1, budget).map_err(classify)?;
    let kz_tor = tor_additive(&kz.view).map_err(classify)?;
    let mut mismatches = Vec::new();
    let mut blocks = 0usize;
    let keys: std::collections::BTreeSet<_> = bar_tor
        .blocks
        .keys()
        .chain(kz_tor.blocks.keys())
        .copied()
        .collect();
    for key in keys {
        let a = bar_tor.blocks.get(&key);
        let b = kz_tor.blocks.get(&key);
        let (ra, ta) = a
            .map(|s| (s.free_rank, s.torsion.clone()))
            .unwrap_or_default();
        let (rb, tb) = b
            .map(|s| (s.free_rank, s.torsion.clone()))
            .unwrap_or_default();
        blocks += 1;
        if ra != rb || ta != tb {
            mismatches.push(format!(
                "bidegree ({}, {}): bar gives rank {ra} torsion {ta:?}, Koszul gives rank {rb} torsion {tb:?}",
                key.0, key.1
            ));
        }
    }
    let _ = tsb;
    Ok(OracleSection {
        agrees: mismatches.is_empty(),
        blocks_checked: blocks,
        mismatches,
    })
}
