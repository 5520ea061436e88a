//! Max-k-SAT <-> MaxCut reduction toolchain with brute-force
//! certification.
//!
//! The SAT-to-cut direction builds, per variable, a heavy consistency
//! edge between its two literal vertices, and per clause a gadget of two
//! auxiliary vertices tied to the clause's literal vertices by unit
//! edges. The certificate measures — rather than assumes — whether the
//! textbook identity `OPT_cut = 3 OPT_sat + n W` holds, and whether every
//! optimal cut separates all literal pairs.
//!
//! The cut-to-SAT direction emits one clause pair per edge under either
//! of two conventions, distinguished by which arrangement of an edge's
//! endpoints satisfies both clauses; the certificate again measures the
//! identity each convention is quoted with.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Variable-count cap for assignment enumeration.
pub const MAX_SAT_VARS: usize = 20;
/// Vertex-count cap for enumerating every optimal cut of a reduction
/// graph.
pub const MAX_CERTIFY_VERTICES: usize = 22;
/// Assignments are packed into a `u64`, one bit per variable.
const MAX_CNF_VARS: usize = 63;

/// CNF formula over 1-based variables, clauses as DIMACS-style literals
/// (`3` for the variable, `-3` for its negation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    /// Validates and canonicalizes: literals sorted within each clause by
    /// variable then polarity, duplicate literals dropped, tautological
    /// or empty clauses rejected.
    pub fn new(n_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::InvalidInstance("formula needs at least one variable".into()));
        }
        if n_vars > MAX_CNF_VARS {
            return Err(Error::TooLarge {
                context: "CNF variable count",
                size: n_vars,
                limit: MAX_CNF_VARS,
            });
        }
        if clauses.is_empty() {
            return Err(Error::InvalidInstance("formula needs at least one clause".into()));
        }
        let mut canonical = Vec::with_capacity(clauses.len());
        for (index, clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidInstance(format!("clause {index} is empty")));
            }
            let mut lits = clause;
            for &lit in &lits {
                if lit == 0 {
                    return Err(Error::InvalidInstance(format!(
                        "clause {index} contains literal 0"
                    )));
                }
                let var = lit.unsigned_abs() as usize;
                if var > n_vars {
                    return Err(Error::InvalidInstance(format!(
                        "clause {index} references variable {var} beyond {n_vars}"
                    )));
                }
            }
            lits.sort_by_key(|&l| (l.abs(), l < 0));
            lits.dedup();
            for pair in lits.windows(2) {
                if pair[0] == -pair[1] {
                    return Err(Error::InvalidInstance(format!(
                        "clause {index} is a tautology on variable {}",
                        pair[0].abs()
                    )));
                }
            }
            canonical.push(lits);
        }
        Ok(Self { n_vars, clauses: canonical })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Largest clause width.
    pub fn k(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of satisfied clauses under the assignment whose bit
    /// `i - 1` gives the value of variable `i`.
    pub fn evaluate(&self, assignment: u64) -> usize {
        self.clauses
            .iter()
            .filter(|clause| {
                clause.iter().any(|&lit| {
                    let bit = assignment >> (lit.unsigned_abs() - 1) & 1;
                    (lit > 0) == (bit == 1)
                })
            })
            .count()
    }

    /// DIMACS CNF text (`p cnf <vars> <clauses>` header, `0`-terminated
    /// clause lines).
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF: `c` comment lines, one `p cnf` header, then
    /// `0`-terminated clauses which may span lines. Clause and variable
    /// counts must match the header.
    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut tokens: Vec<i32> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p ") {
                if header.is_some() {
                    return Err(Error::Parse("duplicate DIMACS header".into()));
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(Error::Parse(format!("malformed DIMACS header {line:?}")));
                }
                let n_vars = fields[1]
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("variable count: {e}")))?;
                let n_clauses = fields[2]
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("clause count: {e}")))?;
                header = Some((n_vars, n_clauses));
                continue;
            }
            if header.is_none() {
                return Err(Error::Parse(format!(
                    "clause data before DIMACS header: {line:?}"
                )));
            }
            for token in line.split_whitespace() {
                tokens.push(
                    token
                        .parse::<i32>()
                        .map_err(|e| Error::Parse(format!("literal {token:?}: {e}")))?,
                );
            }
        }
        let Some((n_vars, n_clauses)) = header else {
            return Err(Error::Parse("missing DIMACS header".into()));
        };
        let mut clauses = Vec::with_capacity(n_clauses);
        let mut current = Vec::new();
        for token in tokens {
            if token == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(token);
            }
        }
        if !current.is_empty() {
            return Err(Error::Parse("unterminated final clause".into()));
        }
        if clauses.len() != n_clauses {
            return Err(Error::Parse(format!(
                "header promises {n_clauses} clauses, found {}",
                clauses.len()
            )));
        }
        Self::new(n_vars, clauses)
    }
}

/// Optimal assignment found by enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatResult {
    /// Bit `i - 1` is the value of variable `i`; the smallest maximizing
    /// assignment in integer order.
    pub assignment: u64,
    pub satisfied: usize,
    pub n_vars: usize,
}

impl SatResult {
    /// Truth values indexed by variable, `values()[0]` for variable 1.
    pub fn truth_values(&self) -> Vec<bool> {
        (0..self.n_vars).map(|i| self.assignment >> i & 1 == 1).collect()
    }
}

/// Exhaustive Max-SAT over all assignments; ties break to the smallest
/// assignment.
pub fn brute_force_maxsat(formula: &CnfFormula) -> Result<SatResult> {
    if formula.n_vars() > MAX_SAT_VARS {
        return Err(Error::TooLarge {
            context: "assignment enumeration",
            size: formula.n_vars(),
            limit: MAX_SAT_VARS,
        });
    }
    let mut best = SatResult {
        assignment: 0,
        satisfied: formula.evaluate(0),
        n_vars: formula.n_vars(),
    };
    for assignment in 1..1u64 << formula.n_vars() {
        let satisfied = formula.evaluate(assignment);
        if satisfied > best.satisfied {
            best = SatResult { assignment, satisfied, n_vars: formula.n_vars() };
        }
    }
    Ok(best)
}

/// MaxCut instance encoding a CNF formula, with the vertex layout needed
/// to interpret cuts.
#[derive(Debug, Clone, PartialEq)]
pub struct SatToCutMap {
    graph: Graph,
    n_vars: usize,
    n_clauses: usize,
    variable_edge_weight: f64,
}

impl SatToCutMap {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_clauses(&self) -> usize {
        self.n_clauses
    }

    /// Weight of each variable-consistency edge, `3m + 1`.
    pub fn variable_edge_weight(&self) -> f64 {
        self.variable_edge_weight
    }

    /// Vertex carrying the positive literal of 1-based variable `var`.
    pub fn positive_vertex(&self, var: usize) -> usize {
        2 * (var - 1)
    }

    /// Vertex carrying the negated literal of 1-based variable `var`.
    pub fn negative_vertex(&self, var: usize) -> usize {
        2 * (var - 1) + 1
    }

    /// The two auxiliary vertices of 0-based clause `j`.
    pub fn clause_vertices(&self, j: usize) -> (usize, usize) {
        (2 * self.n_vars + 2 * j, 2 * self.n_vars + 2 * j + 1)
    }

    fn literal_vertex(&self, lit: i32) -> usize {
        let var = lit.unsigned_abs() as usize;
        if lit > 0 {
            self.positive_vertex(var)
        } else {
            self.negative_vertex(var)
        }
    }

    /// Best cut consistent with a truth assignment: literal vertices take
    /// the side dictated by the assignment, and each clause's auxiliary
    /// pair picks whichever of its three distinct arrangements cuts the
    /// most gadget weight. Returns the cut mask and its value — a witness
    /// lower bound on the optimal cut.
    pub fn best_cut_for_assignment(&self, formula: &CnfFormula, assignment: u64) -> (u64, f64) {
        let mut mask: u64 = 0;
        for var in 1..=self.n_vars {
            let value = assignment >> (var - 1) & 1;
            mask |= value << self.positive_vertex(var);
            mask |= (1 - value) << self.negative_vertex(var);
        }
        for (j, clause) in formula.clauses().iter().enumerate() {
            let k = clause.len();
            let on_one = clause
                .iter()
                .filter(|&&lit| mask >> self.literal_vertex(lit) & 1 == 1)
                .count();
            let on_zero = k - on_one;
            let (u_side, w_side) = {
                let split = (k + 1) as f64;
                let both_zero = (2 * on_one) as f64;
                let both_one = (2 * on_zero) as f64;
                if both_zero >= split && both_zero >= both_one {
                    (0u64, 0u64)
                } else if both_one >= split {
                    (1, 1)
                } else {
                    (0, 1)
                }
            };
            let (u, w) = self.clause_vertices(j);
            mask |= u_side << u;
            mask |= w_side << w;
        }
        (mask, self.graph.cut_value(mask))
    }
}

/// Encodes a formula as a MaxCut instance: per variable an edge of weight
/// `3m + 1` between its literal vertices; per clause two auxiliary
/// vertices joined to each other and to every literal vertex of the
/// clause by unit edges.
pub fn sat_to_maxcut(formula: &CnfFormula) -> Result<SatToCutMap> {
    let n = formula.n_vars();
    let m = formula.n_clauses();
    let weight = (3 * m + 1) as f64;
    let mut edges = Vec::new();
    for var in 1..=n {
        edges.push((2 * (var - 1), 2 * (var - 1) + 1, weight));
    }
    for (j, clause) in formula.clauses().iter().enumerate() {
        let u = 2 * n + 2 * j;
        let w = u + 1;
        for &lit in clause {
            let var = lit.unsigned_abs() as usize;
            let lv = if lit > 0 { 2 * (var - 1) } else { 2 * (var - 1) + 1 };
            edges.push((lv, u, 1.0));
            edges.push((lv, w, 1.0));
        }
        edges.push((u, w, 1.0));
    }
    let graph = Graph::new(2 * n + 2 * m, &edges)?;
    Ok(SatToCutMap { graph, n_vars: n, n_clauses: m, variable_edge_weight: weight })
}

/// Measured outcome of the formula-to-cut encoding on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SatToCutCertificate {
    pub n_vars: usize,
    pub n_clauses: usize,
    pub n_vertices: usize,
    pub variable_edge_weight: f64,
    pub sat_optimum: usize,
    pub cut_optimum: f64,
    /// `3 * sat_optimum + n_vars * variable_edge_weight`, the identity
    /// the construction is quoted with.
    pub predicted_cut_optimum: f64,
    /// Whether the measured optimum equals the predicted one.
    pub relation_holds: bool,
    /// Whether every optimal cut separates both literal vertices of every
    /// variable.
    pub consistency_holds: bool,
    pub n_optimal_cuts: usize,
}

/// Certifies the formula-to-cut encoding by full enumeration on both
/// sides: exact Max-SAT, exact MaxCut, every optimal cut checked for
/// variable consistency, and the quoted optimum identity measured.
pub fn certify_sat_to_maxcut(formula: &CnfFormula) -> Result<SatToCutCertificate> {
    let map = sat_to_maxcut(formula)?;
    let n_vertices = map.graph().n_vertices();
    if n_vertices > MAX_CERTIFY_VERTICES {
        return Err(Error::TooLarge {
            context: "optimal-cut enumeration",
            size: n_vertices,
            limit: MAX_CERTIFY_VERTICES,
        });
    }
    let sat = brute_force_maxsat(formula)?;
    let cut = map.graph().brute_force_maxcut()?;
    let mut n_optimal_cuts = 0usize;
    let mut consistency_holds = true;
    for mask in 0..1u64 << n_vertices {
        if map.graph().cut_value(mask) == cut.cut_value {
            n_optimal_cuts += 1;
            for var in 1..=formula.n_vars() {
                let pos = mask >> map.positive_vertex(var) & 1;
                let neg = mask >> map.negative_vertex(var) & 1;
                if pos == neg {
                    consistency_holds = false;
                }
            }
        }
    }
    let predicted = 3.0 * sat.satisfied as f64
        + formula.n_vars() as f64 * map.variable_edge_weight();
    Ok(SatToCutCertificate {
        n_vars: formula.n_vars(),
        n_clauses: formula.n_clauses(),
        n_vertices,
        variable_edge_weight: map.variable_edge_weight(),
        sat_optimum: sat.satisfied,
        cut_optimum: cut.cut_value,
        predicted_cut_optimum: predicted,
        relation_holds: cut.cut_value == predicted,
        consistency_holds,
        n_optimal_cuts,
    })
}

/// Which arrangement of an edge's endpoints satisfies both of the edge's
/// clauses in the cut-to-SAT encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairConvention {
    /// `(x_u | x_v) & (!x_u | !x_v)`: both clauses hold exactly when the
    /// endpoints take different values, so `satisfied = m + cut`.
    Separating,
    /// `(x_u | !x_v) & (!x_u | x_v)`: both clauses hold exactly when the
    /// endpoints take the same value, so `satisfied = 2m - cut`.
    Agreeing,
}

impl std::fmt::Display for PairConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PairConvention::Separating => write!(f, "separating"),
            PairConvention::Agreeing => write!(f, "agreeing"),
        }
    }
}

impl std::str::FromStr for PairConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "separating" => Ok(PairConvention::Separating),
            "agreeing" => Ok(PairConvention::Agreeing),
            other => Err(Error::Parse(format!(
                "unknown clause-pair convention {other:?} (expected separating or agreeing)"
            ))),
        }
    }
}

/// Encodes an unweighted graph as Max-2-SAT: one variable per vertex, one
/// clause pair per edge under the chosen convention.
pub fn maxcut_to_sat(graph: &Graph, convention: PairConvention) -> Result<CnfFormula> {
    if !graph.is_unweighted() {
        return Err(Error::InvalidInstance(
            "cut-to-SAT encoding is defined for unit edge weights".into(),
        ));
    }
    if graph.n_edges() == 0 {
        return Err(Error::InvalidInstance("cut-to-SAT encoding needs at least one edge".into()));
    }
    let mut clauses = Vec::with_capacity(2 * graph.n_edges());
    for &(u, v, _) in graph.edges() {
        let (xu, xv) = (u as i32 + 1, v as i32 + 1);
        match convention {
            PairConvention::Separating => {
                clauses.push(vec![xu, xv]);
                clauses.push(vec![-xu, -xv]);
            }
            PairConvention::Agreeing => {
                clauses.push(vec![xu, -xv]);
                clauses.push(vec![-xu, xv]);
            }
        }
    }
    CnfFormula::new(graph.n_vertices(), clauses)
}

/// Measured outcome of the cut-to-SAT encoding on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutToSatCertificate {
    pub convention: PairConvention,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub cut_optimum: f64,
    pub sat_optimum: usize,
    /// The identity each convention is quoted with: `m + cut_optimum`
    /// for the separating pair, `2 * cut_optimum` for the agreeing pair.
    pub predicted_sat_optimum: f64,
    pub relation_holds: bool,
}

/// Certifies the cut-to-SAT encoding by exact enumeration on both sides.
pub fn certify_maxcut_to_sat(
    graph: &Graph,
    convention: PairConvention,
) -> Result<CutToSatCertificate> {
    if graph.n_vertices() > MAX_SAT_VARS {
        return Err(Error::TooLarge {
            context: "assignment enumeration",
            size: graph.n_vertices(),
            limit: MAX_SAT_VARS,
        });
    }
    let formula = maxcut_to_sat(graph, convention)?;
    let cut = graph.brute_force_maxcut()?;
    let sat = brute_force_maxsat(&formula)?;
    let predicted = match convention {
        PairConvention::Separating => graph.n_edges() as f64 + cut.cut_value,
        PairConvention::Agreeing => 2.0 * cut.cut_value,
    };
    Ok(CutToSatCertificate {
        convention,
        n_vertices: graph.n_vertices(),
        n_edges: graph.n_edges(),
        cut_optimum: cut.cut_value,
        sat_optimum: sat.satisfied,
        predicted_sat_optimum: predicted,
        relation_holds: sat.satisfied as f64 == predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(n: usize, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula::new(n, clauses.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn construction_canonicalizes_and_validates() {
        let f = formula(3, &[&[3, -1, 3, 2]]);
        assert_eq!(f.clauses(), &[vec![-1, 2, 3]]);
        assert_eq!(f.k(), 3);
        assert!(CnfFormula::new(2, vec![vec![1, -1]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![0]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![3]]).is_err());
        assert!(CnfFormula::new(0, vec![vec![1]]).is_err());
        assert!(CnfFormula::new(2, vec![]).is_err());
    }

    #[test]
    fn evaluation_and_enumeration_match_a_hand_checked_instance() {
        // Three width-3 clauses over three variables; five of the eight
        // assignments satisfy all three, and the smallest assignment
        // doing so sets only variable 1.
        let f = formula(3, &[&[1, 2, 3], &[-1, 2, -3], &[1, -2, 3]]);
        let expected = [2usize, 3, 2, 3, 3, 2, 3, 3];
        for (assignment, &count) in expected.iter().enumerate() {
            assert_eq!(f.evaluate(assignment as u64), count, "assignment {assignment}");
        }
        let best = brute_force_maxsat(&f).unwrap();
        assert_eq!(best.satisfied, 3);
        assert_eq!(best.assignment, 0b001);
        assert_eq!(best.truth_values(), vec![true, false, false]);
    }

    #[test]
    fn dimacs_round_trip_and_multiline_clauses() {
        let f = formula(4, &[&[1, -2], &[3, 4, -1], &[2]]);
        let parsed = CnfFormula::from_dimacs(&f.to_dimacs()).unwrap();
        assert_eq!(parsed, f);

        let text = "c comment\np cnf 3 2\n1 -2\n3 0 2 -3 0\n";
        let multi = CnfFormula::from_dimacs(text).unwrap();
        assert_eq!(multi.clauses(), &[vec![1, -2, 3], vec![2, -3]]);

        assert!(CnfFormula::from_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(CnfFormula::from_dimacs("1 0\n").is_err());
        assert!(CnfFormula::from_dimacs("p cnf 2 1\n1 2\n").is_err());
        assert!(CnfFormula::from_dimacs("p cnf x 1\n1 0\n").is_err());
    }

    #[test]
    fn encoding_shape_matches_closed_forms() {
        let f = formula(3, &[&[1, 2, 3], &[-1, 2, -3]]);
        let map = sat_to_maxcut(&f).unwrap();
        assert_eq!(map.graph().n_vertices(), 2 * 3 + 2 * 2);
        assert_eq!(map.graph().n_edges(), 3 + (2 * 3 + 1) + (2 * 3 + 1));
        assert_eq!(map.variable_edge_weight(), 7.0);
        let heavy = map
            .graph()
            .edges()
            .iter()
            .filter(|&&(_, _, w)| w == 7.0)
            .count();
        assert_eq!(heavy, 3);
        assert_eq!(map.clause_vertices(1), (8, 9));
        assert_eq!(map.positive_vertex(2), 2);
        assert_eq!(map.negative_vertex(2), 3);
    }

    #[test]
    fn single_positive_clause_certificate() {
        // One variable, one clause: the gadget triangle can contribute at
        // most 2 of its 3 unit edges, so the measured optimum falls one
        // short of the quoted identity.
        let f = formula(1, &[&[1]]);
        let cert = certify_sat_to_maxcut(&f).unwrap();
        assert_eq!(cert.sat_optimum, 1);
        assert_eq!(cert.cut_optimum, 6.0);
        assert_eq!(cert.predicted_cut_optimum, 7.0);
        assert!(!cert.relation_holds);
        assert!(cert.consistency_holds);
        assert!(cert.n_optimal_cuts > 0);
    }

    #[test]
    fn two_literal_clause_certificate() {
        // Placing both literal vertices of a satisfied clause opposite
        // the auxiliary pair cuts 4 gadget edges, overshooting the quoted
        // 3-per-satisfied-clause accounting.
        let f = formula(2, &[&[1, 2]]);
        let cert = certify_sat_to_maxcut(&f).unwrap();
        assert_eq!(cert.sat_optimum, 1);
        assert_eq!(cert.cut_optimum, 12.0);
        assert_eq!(cert.predicted_cut_optimum, 11.0);
        assert!(!cert.relation_holds);
        assert!(cert.consistency_holds);
    }

    #[test]
    fn contradictory_pair_certificate_and_witness_bound() {
        // (x1 | x2) & (!x1 | !x2): equal assignments leave one clause
        // unsatisfied yet cut more gadget weight (4 + 4) than the mixed
        // assignments that satisfy both (3 + 3).
        let f = formula(2, &[&[1, 2], &[-1, -2]]);
        let cert = certify_sat_to_maxcut(&f).unwrap();
        assert_eq!(cert.sat_optimum, 2);
        assert_eq!(cert.cut_optimum, 22.0);
        assert_eq!(cert.predicted_cut_optimum, 20.0);
        assert!(!cert.relation_holds);
        assert!(cert.consistency_holds);

        // The best consistent witness over all assignments reaches the
        // enumerated optimum exactly.
        let map = sat_to_maxcut(&f).unwrap();
        let best_witness = (0..1u64 << f.n_vars())
            .map(|a| map.best_cut_for_assignment(&f, a).1)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(best_witness, cert.cut_optimum);
    }

    #[test]
    fn witness_matches_enumeration_on_random_formulas() {
        // Exhaustive cross-check of the assignment-witness construction:
        // consistency holds on these instances, so maximizing the witness
        // over assignments must reproduce the true optimum.
        let cases: Vec<CnfFormula> = vec![
            formula(2, &[&[1, -2], &[2]]),
            formula(3, &[&[1, 2, 3], &[-2, -3]]),
            formula(2, &[&[1], &[-1], &[1, 2]]),
        ];
        for f in cases {
            let cert = certify_sat_to_maxcut(&f).unwrap();
            let map = sat_to_maxcut(&f).unwrap();
            let best_witness = (0..1u64 << f.n_vars())
                .map(|a| map.best_cut_for_assignment(&f, a).1)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(cert.consistency_holds);
            assert_eq!(best_witness, cert.cut_optimum);
        }
    }

    #[test]
    fn cut_to_sat_conventions_on_triangle_and_edge() {
        let triangle = Graph::complete(3).unwrap();
        let separating =
            certify_maxcut_to_sat(&triangle, PairConvention::Separating).unwrap();
        assert_eq!(separating.cut_optimum, 2.0);
        assert_eq!(separating.sat_optimum, 5);
        assert_eq!(separating.predicted_sat_optimum, 5.0);
        assert!(separating.relation_holds);

        let agreeing = certify_maxcut_to_sat(&triangle, PairConvention::Agreeing).unwrap();
        assert_eq!(agreeing.sat_optimum, 6);
        assert_eq!(agreeing.predicted_sat_optimum, 4.0);
        assert!(!agreeing.relation_holds);

        // A single edge is bipartite: both conventions' identities hold.
        let k2 = Graph::complete(2).unwrap();
        for convention in [PairConvention::Separating, PairConvention::Agreeing] {
            let cert = certify_maxcut_to_sat(&k2, convention).unwrap();
            assert!(cert.relation_holds, "{convention}");
            assert_eq!(cert.sat_optimum, 2);
        }
    }

    #[test]
    fn separating_identity_holds_exhaustively_on_small_graphs() {
        for n in 2..=4usize {
            for mask in 0..1u64 << (n * (n - 1) / 2) {
                let mut edges = Vec::new();
                let mut bit = 0;
                for u in 0..n {
                    for v in (u + 1)..n {
                        if mask >> bit & 1 == 1 {
                            edges.push((u, v, 1.0));
                        }
                        bit += 1;
                    }
                }
                if edges.is_empty() {
                    continue;
                }
                let g = Graph::new(n, &edges).unwrap();
                let cert = certify_maxcut_to_sat(&g, PairConvention::Separating).unwrap();
                assert!(cert.relation_holds, "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn cut_to_sat_rejects_weighted_graphs() {
        let weighted = Graph::new(3, &[(0, 1, 2.0), (1, 2, 1.0)]).unwrap();
        assert!(maxcut_to_sat(&weighted, PairConvention::Separating).is_err());
    }

    #[test]
    fn convention_strings_round_trip() {
        for convention in [PairConvention::Separating, PairConvention::Agreeing] {
            let s = convention.to_string();
            assert_eq!(s.parse::<PairConvention>().unwrap(), convention);
        }
        assert!("other".parse::<PairConvention>().is_err());
    }
}
