//! The sweep: every generated instance goes through the exact oracle, the combinatorial
//! formulas, the four decision procedures and the structural claims about matchings, pegs
//! and paths. Claims that fail produce counterexamples; observations are only tallied.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::characterize::{Predicate, Verdict};
use crate::combinatorics::{pegs, Analysis, Matching, PegSet, Structure};
use crate::error::{Error, Result};
use crate::exact::{det_exact, inverse_exact, GaussianRational, Matrix, Unit};
use crate::generators::{colorize, generate, generate_skeletons, ColoringMode, Family, FamilySpec, Labels};
use crate::graph::{adjacency_matrix, classify_shape, theta_paths, ColoredDigraph, ShapeClass};

/// Everything the sweep checks, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    ShapeConsistency,
    DetCombinatorialEqualsExact,
    DetRealInteger,
    DetBicyclicFormula,
    InverseCombinatorialEqualsExact,
    InverseHermitianIdentity,
    ConjugateOrientation,
    PredicateNonsingular,
    PredicateZeroDiagonal,
    PredicateUnimodular,
    PredicateInverse3colored,
    SpanningCountOneIndependent,
    SpanningCountInfinityBothIndependent,
    SpanningCountThetaAllIndependent,
    SeveralMatchingsIffIndependentEvenCycle,
    OutgoingPegParity,
    PegParityAsStated,
    PegParityPerMatching,
    UniqueMatchingNonsingular,
    AllImaginaryDetIsMatchingCount,
    NoMatchingEvenCyclesSingular,
    NoMatchingNonsingularIffIndependentRealCycle,
    OneIndependentCycleDet,
    InfinityBothIndependentDet,
    ThetaAllIndependentDet,
    InfinitySharedVertexOneIndependent,
    ThetaOneOrThreeIndependent,
    ThetaAllIndependentEvenPaths,
    ThetaOneRealCycle,
    UnicyclicZeroDiagonal,
    EvenCyclesZeroDiagonal,
    NoOddRealCycleZeroDiagonal,
    NoMatchingNonzeroDiagonal,
    ZeroDiagonalIffOddRealCyclesHaveTwoPegs,
    ManyPegsNeverIndependentAfterPath,
    IndependentImaginaryCycleNot3colored,
    SeveralMatchingsNot3colored,
    NoTwoPegCycle3colored,
    NoTwoPegCycle3coloredChordsCounted,
    ContributingComplementIffMmAlternating,
    MmAlternatingAtMostFour,
}

impl Check {
    pub const ALL: [Check; 41] = [
        Check::ShapeConsistency,
        Check::DetCombinatorialEqualsExact,
        Check::DetRealInteger,
        Check::DetBicyclicFormula,
        Check::InverseCombinatorialEqualsExact,
        Check::InverseHermitianIdentity,
        Check::ConjugateOrientation,
        Check::PredicateNonsingular,
        Check::PredicateZeroDiagonal,
        Check::PredicateUnimodular,
        Check::PredicateInverse3colored,
        Check::SpanningCountOneIndependent,
        Check::SpanningCountInfinityBothIndependent,
        Check::SpanningCountThetaAllIndependent,
        Check::SeveralMatchingsIffIndependentEvenCycle,
        Check::OutgoingPegParity,
        Check::PegParityAsStated,
        Check::PegParityPerMatching,
        Check::UniqueMatchingNonsingular,
        Check::AllImaginaryDetIsMatchingCount,
        Check::NoMatchingEvenCyclesSingular,
        Check::NoMatchingNonsingularIffIndependentRealCycle,
        Check::OneIndependentCycleDet,
        Check::InfinityBothIndependentDet,
        Check::ThetaAllIndependentDet,
        Check::InfinitySharedVertexOneIndependent,
        Check::ThetaOneOrThreeIndependent,
        Check::ThetaAllIndependentEvenPaths,
        Check::ThetaOneRealCycle,
        Check::UnicyclicZeroDiagonal,
        Check::EvenCyclesZeroDiagonal,
        Check::NoOddRealCycleZeroDiagonal,
        Check::NoMatchingNonzeroDiagonal,
        Check::ZeroDiagonalIffOddRealCyclesHaveTwoPegs,
        Check::ManyPegsNeverIndependentAfterPath,
        Check::IndependentImaginaryCycleNot3colored,
        Check::SeveralMatchingsNot3colored,
        Check::NoTwoPegCycle3colored,
        Check::NoTwoPegCycle3coloredChordsCounted,
        Check::ContributingComplementIffMmAlternating,
        Check::MmAlternatingAtMostFour,
    ];

    pub fn name(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }

    /// Observations are tallied but never count as counterexamples.
    pub fn is_observation(self) -> bool {
        matches!(
            self,
            Check::PegParityAsStated | Check::PegParityPerMatching | Check::NoTwoPegCycle3coloredChordsCounted
        )
    }

    pub fn description(self) -> &'static str {
        use Check::*;
        match self {
            ShapeConsistency => "generator family, shape classifier and cycle structure agree",
            DetCombinatorialEqualsExact => "det from contributing spanning elementary subgraphs equals exact det",
            DetRealInteger => "exact det is a real integer",
            DetBicyclicFormula => "m0(-1)^{n/2} - 2 sum m1 Re w (-1)^{(n+|C|)/2} equals exact det",
            InverseCombinatorialEqualsExact => "inverse from path sums equals exact inverse",
            InverseHermitianIdentity => "exact inverse is Hermitian and A * A^-1 = I",
            ConjugateOrientation => "reversing every green arc keeps det and conjugates the inverse",
            PredicateNonsingular => "nonsingularity procedure agrees with det != 0",
            PredicateZeroDiagonal => "zero-diagonal procedure agrees with the exact inverse",
            PredicateUnimodular => "unimodularity procedure agrees with |det| = 1",
            PredicateInverse3colored => "3-colored-inverse procedure agrees with the exact inverse",
            SpanningCountOneIndependent => "bicyclic, perfect matching, one independent cycle: 3 spanning elementary subgraphs",
            SpanningCountInfinityBothIndependent => "infinity-type, both cycles independent: 9 spanning elementary subgraphs",
            SpanningCountThetaAllIndependent => "theta-type, all cycles independent: 6 spanning elementary subgraphs",
            SeveralMatchingsIffIndependentEvenCycle => "more than one perfect matching iff some even cycle is independent",
            OutgoingPegParity => "pegs leaving a cycle have the cycle's parity; even cycle independent iff peg-free for some matching",
            PegParityAsStated => "odd cycle has an odd number of pegs; even cycle has no pegs iff independent, else an even number (every matching, chords counted)",
            PegParityPerMatching => "as above with only the pegs that leave the cycle",
            UniqueMatchingNonsingular => "a unique perfect matching makes the graph nonsingular",
            AllImaginaryDetIsMatchingCount => "all cycles imaginary: det = m0 (-1)^{n/2}",
            NoMatchingEvenCyclesSingular => "no perfect matching and all cycles even: det = 0",
            NoMatchingNonsingularIffIndependentRealCycle => "bicyclic without perfect matching: nonsingular iff an independent real cycle exists",
            OneIndependentCycleDet => "bicyclic with one independent cycle: det = 2(-1)^{n/2}[1 - w(-1)^{|C|/2}], or 2(-1)^{n/2} if imaginary",
            InfinityBothIndependentDet => "infinity-type, both independent: det = 4(-1)^{n/2}[1 - w(-1)^{|C|/2}], or 4(-1)^{n/2}",
            ThetaAllIndependentDet => "theta-type, all independent: det = (-1)^{n/2}[3 - 2w(-1)^{|C1|/2}]",
            InfinitySharedVertexOneIndependent => "infinity-type with a shared vertex and a perfect matching: at most one independent cycle",
            ThetaOneOrThreeIndependent => "theta-type with several perfect matchings: one or three independent cycles",
            ThetaAllIndependentEvenPaths => "theta-type, all independent: every branch path has an even number of vertices",
            ThetaOneRealCycle => "theta-type in the model: exactly one cycle of real weight",
            UnicyclicZeroDiagonal => "nonsingular unicyclic: zero inverse diagonal",
            EvenCyclesZeroDiagonal => "nonsingular with a perfect matching and only even cycles: zero inverse diagonal",
            NoOddRealCycleZeroDiagonal => "nonsingular with a perfect matching and no odd real cycle: zero inverse diagonal",
            NoMatchingNonzeroDiagonal => "nonsingular bicyclic without perfect matching: some inverse diagonal entry is nonzero",
            ZeroDiagonalIffOddRealCyclesHaveTwoPegs => "nonsingular bicyclic with a perfect matching: zero diagonal iff every odd real cycle has >= 2 pegs for every matching",
            ManyPegsNeverIndependentAfterPath => "a cycle with >= 3 pegs for every matching is independent in no G - P",
            IndependentImaginaryCycleNot3colored => "invertible with one independent cycle, even and imaginary: inverse not 3-colored",
            SeveralMatchingsNot3colored => "invertible bicyclic with several perfect matchings: inverse not 3-colored",
            NoTwoPegCycle3colored => "invertible bicyclic, unique matching, no cycle left by exactly two matching edges: inverse 3-colored",
            NoTwoPegCycle3coloredChordsCounted => "as above with matched chords counted as pegs",
            ContributingComplementIffMmAlternating => "invertible bicyclic: G - P has a contributing spanning subgraph iff P is mm-alternating",
            MmAlternatingAtMostFour => "bicyclic: at most four mm-alternating paths between any two vertices",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Where an instance sits in the generated stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub family: Family,
    pub n: usize,
    pub index: u64,
    pub graph: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub applicable: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<FirstViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstViolation {
    pub instance: Instance,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleFacts {
    pub det: String,
    pub zero_diagonal: Option<bool>,
    pub unimodular: bool,
    pub inverse_3colored: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: Check,
    pub instance: Instance,
    pub detail: String,
    pub verdicts: Vec<Verdict>,
    pub oracle: OracleFacts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSpec {
    pub families: Vec<Family>,
    pub max_n: usize,
    pub coloring: ColoringMode,
    pub labels: Labels,
    /// Every this many instances also run with all green arcs reversed; 0 disables.
    pub conjugation_every: u64,
}

impl SweepSpec {
    pub fn new(families: Vec<Family>, max_n: usize, coloring: ColoringMode) -> Self {
        SweepSpec { families, max_n, coloring, labels: Labels::Canonical, conjugation_every: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub spec: SweepSpec,
    /// Instances per family and order.
    pub instances: BTreeMap<String, BTreeMap<usize, u64>>,
    pub total_instances: u64,
    pub checks: BTreeMap<String, Tally>,
    pub observations: BTreeMap<String, Tally>,
    /// How many infinity-type instances have one real cycle and how many have none.
    pub infinity_real_cycles: BTreeMap<String, u64>,
    pub counterexamples: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn tally(&self, check: Check) -> &Tally {
        let map = if check.is_observation() { &self.observations } else { &self.checks };
        &map[&check.name()]
    }

    pub fn passed(&self) -> bool {
        self.counterexamples == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instances: {}", self.total_instances);
        for (family, per_n) in &self.instances {
            let counts: Vec<String> = per_n.iter().map(|(n, c)| format!("n={n}:{c}")).collect();
            let _ = writeln!(out, "  {family}: {}", counts.join(" "));
        }
        let _ = writeln!(out, "checks:");
        for check in Check::ALL.iter().filter(|c| !c.is_observation()) {
            let t = self.tally(*check);
            let _ = writeln!(out, "  {:<52} applicable {:>9}  violations {}", check.name(), t.applicable, t.violations);
            if let Some(v) = &t.first_violation {
                let _ = writeln!(out, "    first: {} ({} n={} #{})", v.detail, v.instance.family, v.instance.n, v.instance.index);
                for line in v.instance.graph.lines() {
                    let _ = writeln!(out, "      {line}");
                }
            }
        }
        let _ = writeln!(out, "observations:");
        for check in Check::ALL.iter().filter(|c| c.is_observation()) {
            let t = self.tally(*check);
            let _ = writeln!(out, "  {:<52} applicable {:>9}  violations {}", check.name(), t.applicable, t.violations);
            if let Some(v) = &t.first_violation {
                let _ = writeln!(out, "    first: {} ({} n={} #{})", v.detail, v.instance.family, v.instance.n, v.instance.index);
            }
        }
        if !self.infinity_real_cycles.is_empty() {
            let census: Vec<String> = self.infinity_real_cycles.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "infinity-type real cycles: {}", census.join(" "));
        }
        let _ = writeln!(out, "counterexamples: {}", self.counterexamples);
        if let Some(c) = &self.first_counterexample {
            let _ = writeln!(out, "first counterexample: {} ({} n={} #{})", c.check, c.instance.family, c.instance.n, c.instance.index);
            let _ = writeln!(out, "  {}", c.detail);
            let _ = writeln!(out, "  graph:");
            for line in c.instance.graph.lines() {
                let _ = writeln!(out, "    {line}");
            }
            let _ = writeln!(out, "  verdicts:");
            for v in &c.verdicts {
                let _ = writeln!(out, "    {}: {} ({})", v.predicate, v.holds, v.clause);
            }
            let o = &c.oracle;
            let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
            let _ = writeln!(
                out,
                "  oracle: det {}, zero_diagonal {}, unimodular {}, inverse_3colored {}",
                o.det,
                opt(o.zero_diagonal),
                o.unimodular,
                opt(o.inverse_3colored)
            );
        }
        out
    }
}

/// Color-independent facts about one skeleton, shared by all its colorings.
struct SkeletonFacts {
    structure: Structure,
    matchings: Vec<Matching>,
    independent: Vec<bool>,
    /// `pegs[m][c]`: pegs on cycle `c` relative to matching `m`.
    pegs: Vec<Vec<PegSet>>,
    claims: Vec<(Check, bool, String)>,
}

impl SkeletonFacts {
    fn new(family: Family, g: &ColoredDigraph) -> Result<Self> {
        let structure = Structure::new(g)?;
        let s = &structure;
        let matchings: Vec<Matching> = s.matchings(s.full()).iter().map(|m| Matching::from_compact(m)).collect();
        let cycles = s.cycles();
        let independent: Vec<bool> = (0..cycles.len()).map(|c| s.is_independent(c)).collect();
        let pegs: Vec<Vec<PegSet>> = matchings.iter().map(|m| cycles.iter().map(|c| pegs(m, c)).collect()).collect();
        let mut facts = SkeletonFacts { structure, matchings, independent, pegs, claims: Vec::new() };
        facts.claims = facts.skeleton_claims(family, g);
        Ok(facts)
    }

    fn m0(&self) -> usize {
        self.matchings.len()
    }

    fn independent_count(&self) -> usize {
        self.independent.iter().filter(|&&b| b).count()
    }

    fn skeleton_claims(&self, family: Family, g: &ColoredDigraph) -> Vec<(Check, bool, String)> {
        let s = &self.structure;
        let cycles = s.cycles();
        let m0 = self.m0();
        let shape = s.shape();
        let bicyclic = shape.is_bicyclic();
        let k = self.independent_count();
        let mut out = Vec::new();

        let expected_cycles = match shape {
            ShapeClass::Unicyclic => 1,
            ShapeClass::BicyclicInfinity => 2,
            ShapeClass::BicyclicTheta => 3,
            _ => 0,
        };
        let consistent =
            classify_shape(g) == family.shape() && shape == family.shape() && cycles.len() == expected_cycles;
        out.push((Check::ShapeConsistency, consistent, format!("family {family}, classified {}", classify_shape(g))));

        let spanning = s.spanning().len();
        if bicyclic && m0 > 0 && k == 1 {
            out.push((Check::SpanningCountOneIndependent, spanning == 3, format!("{spanning} spanning elementary subgraphs")));
        }
        if shape == ShapeClass::BicyclicInfinity && m0 > 0 && k == 2 {
            out.push((Check::SpanningCountInfinityBothIndependent, spanning == 9, format!("{spanning} spanning elementary subgraphs")));
        }
        if shape == ShapeClass::BicyclicTheta && m0 > 0 && k == 3 {
            out.push((Check::SpanningCountThetaAllIndependent, spanning == 6, format!("{spanning} spanning elementary subgraphs")));
        }

        let even_independent = (0..cycles.len()).any(|c| self.independent[c] && cycles[c].is_even());
        out.push((
            Check::SeveralMatchingsIffIndependentEvenCycle,
            (m0 > 1) == even_independent,
            format!("{m0} perfect matchings, independent even cycle: {even_independent}"),
        ));

        if m0 > 0 {
            out.push(self.outgoing_peg_parity());
            out.push(self.peg_parity_per_matching(Check::PegParityAsStated, true));
            out.push(self.peg_parity_per_matching(Check::PegParityPerMatching, false));
        }

        if shape == ShapeClass::BicyclicInfinity && m0 > 0 && s.cycle_mask(0) & s.cycle_mask(1) != 0 {
            out.push((Check::InfinitySharedVertexOneIndependent, k <= 1, format!("{k} independent cycles")));
        }
        if shape == ShapeClass::BicyclicTheta && m0 > 1 {
            out.push((Check::ThetaOneOrThreeIndependent, k == 1 || k == 3, format!("{k} independent cycles")));
        }
        if shape == ShapeClass::BicyclicTheta && m0 > 0 && k == 3 {
            let ok = match theta_paths(g) {
                Ok(t) => t.paths.iter().all(|p| p.vertices().len() % 2 == 0),
                Err(_) => false,
            };
            out.push((Check::ThetaAllIndependentEvenPaths, ok, "branch path with an odd number of vertices".into()));
        }
        if bicyclic && m0 > 0 {
            if let Some(claim) = self.many_pegs_claim() {
                out.push(claim);
            }
        }
        if bicyclic {
            let (worst, pair) = self.most_mm_alternating_paths();
            out.push((
                Check::MmAlternatingAtMostFour,
                worst <= 4,
                format!("{worst} mm-alternating paths between {} and {}", pair.0, pair.1),
            ));
        }
        out
    }

    fn outgoing_peg_parity(&self) -> (Check, bool, String) {
        let cycles = self.structure.cycles();
        for (mi, row) in self.pegs.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                if p.outgoing() % 2 != cycles[c].length() % 2 {
                    return (
                        Check::OutgoingPegParity,
                        false,
                        format!("cycle {} has {} outgoing pegs relative to {}", cycles[c], p.outgoing(), self.matchings[mi]),
                    );
                }
            }
        }
        for (c, cycle) in cycles.iter().enumerate().filter(|(_, c)| c.is_even()) {
            let peg_free = self.pegs.iter().any(|row| row[c].count() == 0);
            if peg_free != self.independent[c] {
                return (
                    Check::OutgoingPegParity,
                    false,
                    format!("cycle {cycle}: independent {}, peg-free for some matching {peg_free}", self.independent[c]),
                );
            }
        }
        (Check::OutgoingPegParity, true, String::new())
    }

    /// Per matching: odd cycles have an odd number of pegs, even cycles none exactly when
    /// independent and an even number otherwise.
    fn peg_parity_per_matching(&self, check: Check, chords: bool) -> (Check, bool, String) {
        let cycles = self.structure.cycles();
        for (mi, row) in self.pegs.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                let count = if chords { p.count() } else { p.outgoing() };
                let ok = if cycles[c].is_even() {
                    (count == 0) == self.independent[c] && count % 2 == 0
                } else {
                    count % 2 == 1
                };
                if !ok {
                    return (
                        check,
                        false,
                        format!(
                            "{} cycle {} (independent: {}) has {} pegs ({} chords) relative to {}",
                            if cycles[c].is_even() { "even" } else { "odd" },
                            cycles[c],
                            self.independent[c],
                            count,
                            p.chords(),
                            self.matchings[mi]
                        ),
                    );
                }
            }
        }
        (check, true, String::new())
    }

    /// Cycles with at least three pegs for every matching must stay dependent after deleting
    /// any path (single vertices included) that misses them.
    fn many_pegs_claim(&self) -> Option<(Check, bool, String)> {
        let s = &self.structure;
        let heavy: Vec<usize> =
            (0..s.cycles().len()).filter(|&c| self.pegs.iter().all(|row| row[c].count() >= 3)).collect();
        if heavy.is_empty() {
            return None;
        }
        let n = s.order();
        let mut path_masks: Vec<(u32, String)> = (0..n).map(|v| (1u32 << v, format!("[{}]", v + 1))).collect();
        for list in &s.paths().pairs {
            for p in list {
                let mask = p.vertices.iter().fold(0u32, |m, &v| m | 1 << v);
                path_masks.push((mask, p.to_path().to_string()));
            }
        }
        for &c in &heavy {
            let cm = s.cycle_mask(c);
            for (pm, label) in &path_masks {
                if pm & cm == 0 && s.has_matching(s.full() & !pm & !cm) {
                    return Some((
                        Check::ManyPegsNeverIndependentAfterPath,
                        false,
                        format!("cycle {} is independent after deleting {label}", s.cycles()[c]),
                    ));
                }
            }
        }
        Some((Check::ManyPegsNeverIndependentAfterPath, true, String::new()))
    }

    fn most_mm_alternating_paths(&self) -> (usize, (usize, usize)) {
        let s = &self.structure;
        let n = s.order();
        let table = s.paths();
        let mut worst = (0, (1, 2));
        for i in 0..n {
            for j in i + 1..n {
                let k = table.pairs[i * n + j].iter().filter(|p| p.mm_alternating).count();
                if k > worst.0 {
                    worst = (k, (i + 1, j + 1));
                }
            }
        }
        worst
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `w(-1)^{|C|/2}` for a real-weight even cycle.
fn signed_weight(w: Unit, len: usize) -> i64 {
    w.re() * sign(len / 2)
}

/// Ground truth from exact elimination.
pub(crate) struct Oracle {
    pub det: GaussianRational,
    pub inverse: Option<Matrix>,
}

impl Oracle {
    pub(crate) fn new(g: &ColoredDigraph) -> Self {
        let a = adjacency_matrix(g);
        let det = det_exact(&a);
        let inverse = if det.is_zero() { None } else { inverse_exact(&a).ok() };
        Oracle { det, inverse }
    }

    pub(crate) fn nonsingular(&self) -> bool {
        !self.det.is_zero()
    }

    pub(crate) fn zero_diagonal(&self) -> Option<bool> {
        self.inverse.as_ref().map(|m| m.diagonal().all(GaussianRational::is_zero))
    }

    pub(crate) fn invertible(&self) -> bool {
        self.zero_diagonal() == Some(true)
    }

    pub(crate) fn unimodular(&self) -> bool {
        self.det.norm() == 1.into()
    }

    pub(crate) fn inverse_3colored(&self) -> Option<bool> {
        if !self.invertible() {
            return None;
        }
        self.inverse.as_ref().map(|m| m.entries().iter().all(GaussianRational::is_zero_or_unit))
    }

    pub(crate) fn facts(&self) -> OracleFacts {
        OracleFacts {
            det: self.det.to_string(),
            zero_diagonal: self.zero_diagonal(),
            unimodular: self.unimodular(),
            inverse_3colored: self.inverse_3colored(),
        }
    }
}

/// Runs the sweep, accumulating tallies in generation order.
pub struct Harness {
    spec: SweepSpec,
    instances: BTreeMap<String, BTreeMap<usize, u64>>,
    total: u64,
    tallies: BTreeMap<Check, Tally>,
    infinity_real_cycles: BTreeMap<String, u64>,
    counterexamples: u64,
    first: Option<Counterexample>,
}

impl Harness {
    pub fn new(spec: SweepSpec) -> Self {
        Harness {
            spec,
            instances: BTreeMap::new(),
            total: 0,
            tallies: Check::ALL.iter().map(|&c| (c, Tally::default())).collect(),
            infinity_real_cycles: BTreeMap::new(),
            counterexamples: 0,
            first: None,
        }
    }

    pub fn run(mut self) -> Result<VerifyReport> {
        for spec in self.family_specs() {
            spec.validate()?;
        }
        for spec in self.family_specs() {
            if spec.n < spec.family.min_order() {
                continue;
            }
            match spec.coloring {
                ColoringMode::Exhaustive { .. } => {
                    for skeleton in generate_skeletons(&spec)? {
                        let facts = SkeletonFacts::new(spec.family, &skeleton)?;
                        for g in colorize(&skeleton, spec.coloring, true) {
                            self.instance(&spec, &facts, &g);
                        }
                    }
                }
                ColoringMode::Sampled { .. } => {
                    for g in generate(&spec)? {
                        let facts = SkeletonFacts::new(spec.family, &g)?;
                        self.instance(&spec, &facts, &g);
                    }
                }
            }
        }
        Ok(self.finish())
    }

    fn family_specs(&self) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for &family in &self.spec.families {
            for n in family.min_order()..=self.spec.max_n.max(family.min_order()) {
                if n > self.spec.max_n {
                    break;
                }
                out.push(FamilySpec {
                    family,
                    n,
                    coloring: self.spec.coloring,
                    require_in_model: true,
                    labels: self.spec.labels,
                });
            }
        }
        if out.is_empty() {
            // still validate the requested order so oversize requests are rejected
            for &family in &self.spec.families {
                out.push(FamilySpec {
                    family,
                    n: self.spec.max_n,
                    coloring: self.spec.coloring,
                    require_in_model: true,
                    labels: self.spec.labels,
                });
            }
        }
        out
    }

    fn finish(self) -> VerifyReport {
        let mut checks = BTreeMap::new();
        let mut observations = BTreeMap::new();
        for (check, tally) in self.tallies {
            if check.is_observation() {
                observations.insert(check.name(), tally);
            } else {
                checks.insert(check.name(), tally);
            }
        }
        VerifyReport {
            schema: 1,
            spec: self.spec,
            instances: self.instances,
            total_instances: self.total,
            checks,
            observations,
            infinity_real_cycles: self.infinity_real_cycles,
            counterexamples: self.counterexamples,
            first_counterexample: self.first,
        }
    }

    fn instance(&mut self, spec: &FamilySpec, facts: &SkeletonFacts, g: &ColoredDigraph) {
        let per_n = self.instances.entry(spec.family.to_string()).or_default().entry(spec.n).or_default();
        let index = *per_n;
        *per_n += 1;
        let instance = || Instance { family: spec.family, n: spec.n, index, graph: g.to_graph_file() };
        self.total += 1;

        let analysis = facts.structure.analyze(g);
        let oracle = Oracle::new(g);
        let mut results: Vec<(Check, bool, String)> = facts.claims.clone();
        let verdicts = instance_checks(&mut results, facts, &analysis, &oracle, g);
        if self.spec.conjugation_every > 0 && index.is_multiple_of(self.spec.conjugation_every) {
            results.push(conjugation_check(&facts.structure, &oracle, g));
        }
        if spec.family == Family::BicyclicInfinity {
            let real = (0..2).filter(|&c| analysis.cycle_weight(c).is_real()).count();
            let key = if real == 0 { "none" } else { "one" };
            *self.infinity_real_cycles.entry(key.into()).or_default() += 1;
        }

        let mut first_failure: Option<(Check, String)> = None;
        for (check, ok, detail) in results {
            let tally = self.tallies.get_mut(&check).expect("every check has a tally");
            tally.applicable += 1;
            if ok {
                continue;
            }
            tally.violations += 1;
            if tally.first_violation.is_none() {
                tally.first_violation = Some(FirstViolation { instance: instance(), detail: detail.clone() });
            }
            if !check.is_observation() && first_failure.is_none() {
                first_failure = Some((check, detail));
            }
        }
        if let Some((check, detail)) = first_failure {
            self.counterexamples += 1;
            if self.first.is_none() {
                self.first = Some(Counterexample { check, instance: instance(), detail, verdicts, oracle: oracle.facts() });
            }
        }
    }
}

fn conjugation_check(s: &Structure, oracle: &Oracle, g: &ColoredDigraph) -> (Check, bool, String) {
    let h = g.with_green_reversed();
    let other = Oracle::new(&h);
    let det_ok = other.det == oracle.det;
    let inv_ok = match (&oracle.inverse, &other.inverse) {
        (Some(a), Some(b)) => a.entries().iter().zip(b.entries()).all(|(x, y)| x.conj() == *y),
        (None, None) => true,
        _ => false,
    };
    let comb_ok = s.analyze(&h).det() == s.analyze(g).det();
    (
        Check::ConjugateOrientation,
        det_ok && inv_ok && comb_ok,
        format!("det {} vs {} after reversing green arcs", oracle.det, other.det),
    )
}

fn exact_integer(z: &GaussianRational) -> Option<i64> {
    z.to_integer().and_then(|v| i64::try_from(v).ok())
}

/// Color-dependent checks; returns the verdicts of the decision procedures that applied.
/// Records a check outcome; the detail is only built for failures.
fn push(out: &mut Vec<(Check, bool, String)>, check: Check, ok: bool, detail: impl FnOnce() -> String) {
    out.push((check, ok, if ok { String::new() } else { detail() }));
}

fn instance_checks(
    out: &mut Vec<(Check, bool, String)>,
    facts: &SkeletonFacts,
    a: &Analysis,
    oracle: &Oracle,
    g: &ColoredDigraph,
) -> Vec<Verdict> {
    let s = &facts.structure;
    let n = s.order();
    let shape = s.shape();
    let bicyclic = shape.is_bicyclic();
    let cycles = s.cycles();
    let m0 = facts.m0();
    let weights: Vec<Unit> = (0..cycles.len()).map(|c| a.cycle_weight(c)).collect();
    let det = a.det();
    let exact = exact_integer(&oracle.det);

    push(out, Check::DetRealInteger, exact.is_some(), || format!("exact det {}", oracle.det));
    let exact = exact.unwrap_or(i64::MIN);
    push(out, Check::DetCombinatorialEqualsExact, det == exact, || format!("combinatorial det {det}, exact det {}", oracle.det));
    if bicyclic {
        let formula = a.det_bicyclic_formula().unwrap_or(i64::MIN);
        push(out, Check::DetBicyclicFormula, formula == exact, || format!("formula {formula}, exact det {}", oracle.det));
    }
    if let Some(inv) = &oracle.inverse {
        let comb = a.inverse();
        let ok = comb.as_ref() == Ok(inv);
        push(out, Check::InverseCombinatorialEqualsExact, ok, || match &comb {
            Ok(m) => first_difference(m, inv),
            Err(e) => e.to_string(),
        });
        let adj = adjacency_matrix(g);
        let identity = &*adj * inv == Matrix::identity(n);
        push(out, Check::InverseHermitianIdentity, identity && inv.is_hermitian(), || "A * A^-1 != I or not Hermitian".into());
    }

    // decision procedures against the oracle
    let mut verdicts = Vec::new();
    let mut predicate = |out: &mut Vec<(Check, bool, String)>, check: Check, v: Verdict, truth: bool| {
        push(out, check, v.holds == truth, || format!("{}: procedure says {} ({}), oracle says {truth}", v.predicate, v.holds, v.clause));
        verdicts.push(v);
    };
    predicate(out, Check::PredicateNonsingular, a.nonsingular_verdict(), oracle.nonsingular());
    if let Some(zero) = oracle.zero_diagonal() {
        predicate(out, Check::PredicateZeroDiagonal, a.zero_diagonal_verdict(), zero);
    }
    predicate(out, Check::PredicateUnimodular, a.unimodular_verdict(), oracle.unimodular());
    if let Some(three) = oracle.inverse_3colored() {
        predicate(out, Check::PredicateInverse3colored, a.inverse_3colored_verdict(), three);
    }
    debug_assert!(verdicts.iter().all(|v| Predicate::ALL.contains(&v.predicate)));

    // determinant identities
    if m0 == 1 {
        push(out, Check::UniqueMatchingNonsingular, exact != 0, || format!("det {exact}"));
    }
    if weights.iter().all(|w| w.is_imaginary()) {
        let expected = if n.is_multiple_of(2) { m0 as i64 * sign(n / 2) } else { 0 };
        push(out, Check::AllImaginaryDetIsMatchingCount, exact == expected, || format!("det {exact}, expected {expected}"));
    }
    if m0 == 0 && cycles.iter().all(|c| c.is_even()) {
        push(out, Check::NoMatchingEvenCyclesSingular, exact == 0, || format!("det {exact}"));
    }
    let independent_real = (0..cycles.len()).any(|c| facts.independent[c] && weights[c].is_real());
    if bicyclic && m0 == 0 {
        push(out, Check::NoMatchingNonsingularIffIndependentRealCycle, (exact != 0) == independent_real, || format!("det {exact}, independent real cycle: {independent_real}"));
    }
    let ind: Vec<usize> = (0..cycles.len()).filter(|&c| facts.independent[c]).collect();
    let half = sign(n / 2);
    let closed = |c: usize, k: i64| -> i64 {
        if weights[c].is_real() {
            k * half * (1 - signed_weight(weights[c], cycles[c].length()))
        } else {
            k * half
        }
    };
    if bicyclic && m0 > 0 && ind.len() == 1 {
        let expected = closed(ind[0], 2);
        push(out, Check::OneIndependentCycleDet, exact == expected, || format!("det {exact}, closed form {expected}"));
    }
    if shape == ShapeClass::BicyclicInfinity && m0 > 0 && ind.len() == 2 {
        let real: Vec<usize> = ind.iter().copied().filter(|&c| weights[c].is_real()).collect();
        let expected = match real[..] {
            [] => Some(4 * half),
            [c] => Some(closed(c, 4)),
            _ => None,
        };
        if let Some(expected) = expected {
            push(out, Check::InfinityBothIndependentDet, exact == expected, || format!("det {exact}, closed form {expected}"));
        }
    }
    if shape == ShapeClass::BicyclicTheta {
        let real: Vec<usize> = (0..cycles.len()).filter(|&c| weights[c].is_real()).collect();
        push(out, Check::ThetaOneRealCycle, real.len() == 1, || format!("{} real cycles", real.len()));
        if m0 > 0 && ind.len() == 3 && real.len() == 1 {
            let c = real[0];
            let expected = half * (3 - 2 * signed_weight(weights[c], cycles[c].length()));
            push(out, Check::ThetaAllIndependentDet, exact == expected, || format!("det {exact}, closed form {expected}"));
        }
    }

    // inverse diagonal
    if let Some(zero) = oracle.zero_diagonal() {
        if shape == ShapeClass::Unicyclic {
            push(out, Check::UnicyclicZeroDiagonal, zero, || "nonzero inverse diagonal".into());
        }
        if m0 > 0 && cycles.iter().all(|c| c.is_even()) {
            push(out, Check::EvenCyclesZeroDiagonal, zero, || "nonzero inverse diagonal".into());
        }
        let odd_real: Vec<usize> =
            (0..cycles.len()).filter(|&c| !cycles[c].is_even() && weights[c].is_real()).collect();
        if m0 > 0 && odd_real.is_empty() {
            push(out, Check::NoOddRealCycleZeroDiagonal, zero, || "nonzero inverse diagonal".into());
        }
        if bicyclic && m0 == 0 {
            push(out, Check::NoMatchingNonzeroDiagonal, !zero, || "zero inverse diagonal".into());
        }
        if bicyclic && m0 > 0 {
            let two_pegs = odd_real.iter().all(|&c| facts.pegs.iter().all(|row| row[c].count() >= 2));
            push(out, Check::ZeroDiagonalIffOddRealCyclesHaveTwoPegs, zero == two_pegs, || format!("zero diagonal {zero}, odd real cycles with >= 2 pegs for every matching {two_pegs}"));
        }
    }

    // 3-colored inverse
    if let Some(three) = oracle.inverse_3colored() {
        if ind.len() == 1 && cycles[ind[0]].is_even() && weights[ind[0]].is_imaginary() {
            push(out, Check::IndependentImaginaryCycleNot3colored, !three, || "inverse is 3-colored".into());
        }
        if bicyclic && m0 > 1 {
            push(out, Check::SeveralMatchingsNot3colored, !three, || "inverse is 3-colored".into());
        }
        if bicyclic && m0 == 1 && facts.pegs[0].iter().all(|p| p.outgoing() != 2) {
            push(out, Check::NoTwoPegCycle3colored, three, || "inverse is not 3-colored".into());
        }
        if bicyclic && m0 == 1 && facts.pegs[0].iter().all(|p| p.count() != 2) {
            push(out, Check::NoTwoPegCycle3coloredChordsCounted, three, || "inverse is not 3-colored".into());
        }
        if bicyclic {
            out.push(mm_alternating_characterization(s, a));
        }
    }
    verdicts
}

fn mm_alternating_characterization(s: &Structure, a: &Analysis) -> (Check, bool, String) {
    let table = s.paths();
    for list in &table.pairs {
        for p in list {
            let contributing = table.lists[p.rest].iter().any(|h| a.is_contributing_shape(h));
            if contributing != p.mm_alternating {
                return (
                    Check::ContributingComplementIffMmAlternating,
                    false,
                    format!("path {}: contributing complement {contributing}, mm-alternating {}", p.to_path(), p.mm_alternating),
                );
            }
        }
    }
    (Check::ContributingComplementIffMmAlternating, true, String::new())
}

fn first_difference(a: &Matrix, b: &Matrix) -> String {
    let n = a.order();
    for r in 0..n {
        for c in 0..n {
            if a[(r, c)] != b[(r, c)] {
                return format!("entry ({}, {}): combinatorial {}, exact {}", r + 1, c + 1, a[(r, c)], b[(r, c)]);
            }
        }
    }
    String::new()
}

/// Runs a sweep; `Err` only for invalid requests.
pub fn verify(spec: SweepSpec) -> Result<VerifyReport> {
    if spec.families.is_empty() {
        return Err(Error::Precondition("no family selected".into()));
    }
    Harness::new(spec).run()
}
