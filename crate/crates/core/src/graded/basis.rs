use std::collections::BTreeMap;
use std::sync::Arc;

/// One named basis element of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
}

/// A finitely generated free graded module with a named, ordered basis,
/// truncated at `cutoff`. Elements are ordered by (degree, insertion order),
/// so matrices and reports come out deterministic.
#[derive(Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub cutoff: usize,
    elements: Vec<BasisElement>,
    by_degree: Vec<Vec<usize>>,
    offset_in_degree: Vec<usize>,
    name_index: BTreeMap<String, usize>,
}

impl GradedBasis {
    pub fn new(cutoff: usize, raw: Vec<(String, usize)>) -> Arc<Self> {
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| (raw[i].1, i));
        let elements: Vec<BasisElement> = order
            .iter()
            .map(|&i| BasisElement {
                name: raw[i].0.clone(),
                degree: raw[i].1,
            })
            .collect();
        let mut by_degree = vec![Vec::new(); cutoff + 1];
        let mut offset_in_degree = vec![0; elements.len()];
        let mut name_index = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            assert!(e.degree <= cutoff, "element above cutoff");
            offset_in_degree[i] = by_degree[e.degree].len();
            by_degree[e.degree].push(i);
            let clash = name_index.insert(e.name.clone(), i);
            assert!(clash.is_none(), "duplicate basis name `{}`", e.name);
        }
        Arc::new(GradedBasis {
            cutoff,
            elements,
            by_degree,
            offset_in_degree,
            name_index,
        })
    }

    /// The zero module.
    pub fn empty(cutoff: usize) -> Arc<Self> {
        Self::new(cutoff, Vec::new())
    }

    /// The base ring concentrated in degree 0.
    pub fn unit(cutoff: usize) -> Arc<Self> {
        Self::new(cutoff, vec![("1".to_string(), 0)])
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.elements[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.elements[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    /// Indices of the basis elements in one degree, in basis order.
    pub fn in_degree(&self, q: usize) -> &[usize] {
        if q <= self.cutoff {
            &self.by_degree[q]
        } else {
            &[]
        }
    }

    /// Position of element `i` within its own degree.
    pub fn offset(&self, i: usize) -> usize {
        self.offset_in_degree[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.by_degree.iter().map(|d| d.len()).collect()
    }

    pub fn dim_in_degree(&self, q: usize) -> usize {
        self.in_degree(q).len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BasisElement)> {
        self.elements.iter().enumerate()
    }

    /// Two bases are interchangeable if they are the same allocation or are
    /// structurally equal.
    pub fn same(a: &Arc<GradedBasis>, b: &Arc<GradedBasis>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }

    /// Render a sparse vector over this basis for diagnostics.
    pub fn format_vec(&self, v: &crate::linalg::SparseVec) -> String {
        if v.is_empty() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.name(*i).to_string()
                } else {
                    format!("{}·{}", c, self.name(*i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_by_degree_then_insertion() {
        let b = GradedBasis::new(
            4,
            vec![
                ("c".into(), 2),
                ("a".into(), 0),
                ("d".into(), 2),
                ("b".into(), 1),
            ],
        );
        let names: Vec<&str> = (0..b.len()).map(|i| b.name(i)).collect();
        assert_eq!(names, vec!["a", "b", "c", "d"]);
        assert_eq!(b.in_degree(2), &[2, 3]);
        assert_eq!(b.offset(3), 1);
        assert_eq!(b.dims(), vec![1, 1, 2, 0, 0]);
    }
}
