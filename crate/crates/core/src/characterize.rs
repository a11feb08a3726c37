//! Decision procedures for nonsingularity, zero inverse diagonal, unimodularity and
//! 3-colored inverses of unicyclic and bicyclic graphs in which some cycle has weight `±i`.
//!
//! Every verdict is derived from matchings, independent cycles, pegs, paths and weights only;
//! none of them looks at a determinant.

use std::fmt;

use serde::Serialize;

use crate::combinatorics::{pegs, Analysis, Matching, PegSet, Structure};
use crate::error::{Error, ModelError, Result};
use crate::exact::Unit;
use crate::graph::{path_weight, ColoredDigraph, Cycle, Path, ShapeClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Nonsingular,
    ZeroDiagonal,
    Unimodular,
    #[serde(rename = "inverse_3colored")]
    InverseThreeColored,
}

impl Predicate {
    pub const ALL: [Predicate; 4] =
        [Predicate::Nonsingular, Predicate::ZeroDiagonal, Predicate::Unimodular, Predicate::InverseThreeColored];

    pub fn label(self) -> &'static str {
        match self {
            Predicate::Nonsingular => "nonsingular",
            Predicate::ZeroDiagonal => "zero_diagonal",
            Predicate::Unimodular => "unimodular",
            Predicate::InverseThreeColored => "inverse_3colored",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Evidence behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Matching { matching: Matching },
    Cycle { cycle: Cycle, weight: String, independent: bool },
    Pegs { pegs: PegSet },
    PathPair { pegs: PegSet, p: Path, q: Path },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub predicate: Predicate,
    pub holds: bool,
    /// Which case of the decision procedure settled the verdict.
    pub clause: &'static str,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new(predicate: Predicate, holds: bool, clause: &'static str, witness: Option<Witness>) -> Self {
        Verdict { predicate, holds, clause, witness }
    }
}

fn cycle_witness(a: &Analysis, id: usize) -> Witness {
    let s = a.structure();
    Witness::Cycle {
        cycle: s.cycles()[id].clone(),
        weight: a.cycle_weight(id).to_string(),
        independent: s.is_independent(id),
    }
}

/// The pegs that leave `cycle`. A matched chord never changes which entries of the inverse
/// cancel, so the decision procedures count only edges with one endpoint off the cycle.
fn outgoing_pegs(m: &Matching, cycle: &Cycle) -> PegSet {
    let mut p = pegs(m, cycle);
    p.pegs.retain(|peg| !peg.chord);
    p
}

/// `w(Γ)(-1)^{|Γ|/2}` for an even cycle of real weight.
fn signed_weight(w: Unit, length: usize) -> i64 {
    debug_assert!(w.is_real() && length.is_multiple_of(2));
    if (length / 2).is_multiple_of(2) {
        w.re()
    } else {
        -w.re()
    }
}

impl Analysis<'_> {
    fn first_matching(&self) -> Option<Matching> {
        let s = self.structure();
        s.matchings(s.full()).first().map(|m| Matching::from_compact(m))
    }

    fn perfect_matchings(&self) -> Vec<Matching> {
        let s = self.structure();
        s.matchings(s.full()).iter().map(|m| Matching::from_compact(m)).collect()
    }

    /// Nonsingularity decided from the matching count and the independent cycles.
    pub fn nonsingular_verdict(&self) -> Verdict {
        use Predicate::Nonsingular as P;
        let s = self.structure();
        let m0 = s.perfect_matching_count();
        let matching = || self.first_matching().map(|matching| Witness::Matching { matching });
        if s.shape() == ShapeClass::Unicyclic || m0 == 1 {
            return match m0 {
                0 => Verdict::new(P, false, "no_perfect_matching", None),
                1 => Verdict::new(P, true, "unique_perfect_matching", matching()),
                _ => Verdict::new(P, true, "perfect_matching", matching()),
            };
        }
        let cycles = s.cycles();
        let ind: Vec<bool> = (0..cycles.len()).map(|c| s.is_independent(c)).collect();
        if m0 == 0 {
            let found = (0..cycles.len())
                .find(|&c| ind[c] && cycles[c].length() % 2 == 1 && self.cycle_weight(c).is_real());
            return match found {
                Some(c) => Verdict::new(P, true, "odd_independent_real_cycle", Some(cycle_witness(self, c))),
                None => Verdict::new(P, false, "no_perfect_matching", None),
            };
        }
        // the weight and length conditions on a single independent cycle
        let listed = |c: usize| -> Option<&'static str> {
            let w = self.cycle_weight(c);
            let len = cycles[c].length();
            if w.is_imaginary() {
                Some("independent_imaginary_cycle")
            } else if w == Unit::ONE && len % 4 == 2 {
                Some("independent_unit_cycle_length_2_mod_4")
            } else if w == Unit::MINUS_ONE && len.is_multiple_of(4) {
                Some("independent_negative_cycle_length_0_mod_4")
            } else {
                None
            }
        };
        match s.shape() {
            ShapeClass::BicyclicInfinity => {
                // Γ' is any cycle of weight ±i, Γ the other one
                for (g, gp) in [(0, 1), (1, 0)] {
                    if self.cycle_weight(gp).is_real() {
                        continue;
                    }
                    if !ind[g] && ind[gp] {
                        return Verdict::new(P, true, "only_imaginary_cycle_independent", Some(cycle_witness(self, gp)));
                    }
                    if ind[g] {
                        if let Some(clause) = listed(g) {
                            return Verdict::new(P, true, clause, Some(cycle_witness(self, g)));
                        }
                    }
                }
                Verdict::new(P, false, "no_listed_case", None)
            }
            _ => {
                let independent: Vec<usize> = (0..cycles.len()).filter(|&c| ind[c]).collect();
                match independent[..] {
                    [c] => match listed(c) {
                        Some(clause) => Verdict::new(P, true, clause, Some(cycle_witness(self, c))),
                        None => Verdict::new(P, false, "no_listed_case", Some(cycle_witness(self, c))),
                    },
                    [] => Verdict::new(P, false, "no_independent_cycle", None),
                    _ => Verdict::new(P, true, "several_independent_cycles", matching()),
                }
            }
        }
    }

    /// Zero inverse diagonal, for a nonsingular graph.
    pub fn zero_diagonal_verdict(&self) -> Verdict {
        use Predicate::ZeroDiagonal as P;
        let s = self.structure();
        if s.shape() == ShapeClass::Unicyclic {
            return Verdict::new(P, true, "unicyclic", None);
        }
        let matchings = self.perfect_matchings();
        if matchings.is_empty() {
            return Verdict::new(P, false, "no_perfect_matching", None);
        }
        for m in &matchings {
            for (c, cycle) in s.cycles().iter().enumerate() {
                if cycle.length() % 2 == 1 && self.cycle_weight(c).is_real() {
                    let p = pegs(m, cycle);
                    if p.outgoing() == 1 {
                        return Verdict::new(P, false, "odd_real_cycle_with_one_peg", Some(Witness::Pegs { pegs: p }));
                    }
                }
            }
        }
        Verdict::new(P, true, "no_odd_real_cycle_with_one_peg", None)
    }

    /// `det A(G) = ±1`.
    pub fn unimodular_verdict(&self) -> Verdict {
        use Predicate::Unimodular as P;
        let s = self.structure();
        let m0 = s.perfect_matching_count();
        if m0 == 1 {
            let matching = self.first_matching().map(|matching| Witness::Matching { matching });
            return Verdict::new(P, true, "unique_perfect_matching", matching);
        }
        if s.shape() == ShapeClass::BicyclicTheta && m0 > 0 {
            let cycles = s.cycles();
            if (0..cycles.len()).all(|c| s.is_independent(c)) {
                let found = (0..cycles.len()).find(|&c| {
                    let w = self.cycle_weight(c);
                    w.is_real() && cycles[c].length().is_multiple_of(2) && signed_weight(w, cycles[c].length()) == 1
                });
                return match found {
                    Some(c) => Verdict::new(P, true, "all_independent_with_signed_unit_cycle", Some(cycle_witness(self, c))),
                    None => Verdict::new(P, false, "all_independent_without_signed_unit_cycle", None),
                };
            }
        }
        Verdict::new(P, false, "no_listed_case", None)
    }

    /// Whether the inverse has all entries in `{0, ±1, ±i}`, for an invertible graph.
    pub fn inverse_3colored_verdict(&self) -> Verdict {
        use Predicate::InverseThreeColored as P;
        let s = self.structure();
        if s.perfect_matching_count() != 1 {
            return Verdict::new(P, false, "no_unique_perfect_matching", None);
        }
        let m = self.first_matching().expect("one perfect matching");
        let two_peg: Vec<PegSet> =
            s.cycles().iter().map(|c| outgoing_pegs(&m, c)).filter(|p| p.count() == 2).collect();
        if s.shape() == ShapeClass::Unicyclic {
            return match two_peg.into_iter().next() {
                Some(p) => Verdict::new(P, false, "cycle_with_two_pegs", Some(Witness::Pegs { pegs: p })),
                None => Verdict::new(P, true, "unique_perfect_matching_no_two_pegs", None),
            };
        }
        if two_peg.is_empty() {
            return Verdict::new(P, true, "unique_perfect_matching_no_two_pegs", None);
        }
        let mut first = None;
        for p in two_peg {
            match self.balanced_pair(&p) {
                Some((x, y)) => {
                    first.get_or_insert(Witness::PathPair { pegs: p, p: x, q: y });
                }
                None => return Verdict::new(P, false, "unbalanced_two_peg_cycle", Some(Witness::Pegs { pegs: p })),
            }
        }
        Verdict::new(P, true, "two_peg_cycles_balanced", first)
    }

    /// Two `u'⇝v'` mm-alternating paths whose terms cancel: `|P| - |Q| ≡ 2 (mod 4)` with
    /// `w(P) = w(Q)`, or `≡ 0` with `w(P) = -w(Q)`.
    fn balanced_pair(&self, p: &PegSet) -> Option<(Path, Path)> {
        let (u, v) = (p.pegs[0].other, p.pegs[1].other);
        let paths: Vec<Path> = self.structure().mm_alternating(u, v).into_iter().map(|(x, _)| x).collect();
        for (k, x) in paths.iter().enumerate() {
            for y in &paths[k + 1..] {
                let diff = (x.length() as i64 - y.length() as i64).rem_euclid(4);
                let (wx, wy) = (path_weight(self.graph(), x), path_weight(self.graph(), y));
                if (diff == 2 && wx == wy) || (diff == 0 && wx == -wy) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
        None
    }

    /// Every verdict whose precondition holds: nonsingularity and unimodularity always, zero
    /// diagonal when nonsingular, 3-colored inverse when invertible.
    pub fn verdicts(&self) -> Vec<Verdict> {
        let mut out = vec![self.nonsingular_verdict()];
        let nonsingular = self.det() != 0;
        if nonsingular {
            out.push(self.zero_diagonal_verdict());
        }
        out.push(self.unimodular_verdict());
        if nonsingular && self.minors_vanish() {
            out.push(self.inverse_3colored_verdict());
        }
        out
    }
}

/// Builds the structure after checking that `g` is one of `allowed` and in the model.
fn prepare(g: &ColoredDigraph, allowed: &[ShapeClass], expected: &'static str) -> Result<Structure> {
    let s = Structure::new(g)?;
    if !allowed.contains(&s.shape()) {
        return Err(Error::Shape { expected, found: s.shape() });
    }
    if !s.analyze(g).in_model() {
        return Err(ModelError::NotInModel.into());
    }
    Ok(s)
}

const UNI_OR_BI: [ShapeClass; 3] =
    [ShapeClass::Unicyclic, ShapeClass::BicyclicInfinity, ShapeClass::BicyclicTheta];

/// Shape and model checks shared by the predicates; the structure is reusable for
/// [`Analysis::verdicts`].
pub fn model_structure(g: &ColoredDigraph) -> Result<Structure> {
    prepare(g, &UNI_OR_BI, "unicyclic or bicyclic")
}

/// Nonsingular exactly when there is a perfect matching.
pub fn nonsingular_unicyclic(g: &ColoredDigraph) -> Result<Verdict> {
    let s = prepare(g, &[ShapeClass::Unicyclic], "unicyclic")?;
    Ok(s.analyze(g).nonsingular_verdict())
}

pub fn nonsingular_bicyclic(g: &ColoredDigraph) -> Result<Verdict> {
    let s = prepare(g, &[ShapeClass::BicyclicInfinity, ShapeClass::BicyclicTheta], "bicyclic")?;
    Ok(s.analyze(g).nonsingular_verdict())
}

pub fn zero_diagonal_predicate(g: &ColoredDigraph) -> Result<Verdict> {
    let s = model_structure(g)?;
    let a = s.analyze(g);
    if a.det() == 0 {
        return Err(Error::Precondition("graph is singular".into()));
    }
    Ok(a.zero_diagonal_verdict())
}

pub fn unimodular_predicate(g: &ColoredDigraph) -> Result<Verdict> {
    let s = model_structure(g)?;
    Ok(s.analyze(g).unimodular_verdict())
}

pub fn inverse_is_3colored(g: &ColoredDigraph) -> Result<Verdict> {
    let s = model_structure(g)?;
    let a = s.analyze(g);
    if a.det() == 0 || !a.minors_vanish() {
        return Err(Error::Precondition("graph is not invertible (singular or nonzero inverse diagonal)".into()));
    }
    Ok(a.inverse_3colored_verdict())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::testing::golden_theta;

    fn g(text: &str) -> ColoredDigraph {
        parse_graph(text).unwrap()
    }

    #[test]
    fn unicyclic_nonsingularity() {
        assert!(nonsingular_unicyclic(&g("n=4; 1 2 g; 2 3 r; 3 4 r; 4 1 r")).unwrap().holds);
        assert!(nonsingular_unicyclic(&g("n=4; 1 2 g; 2 3 r; 3 1 r; 1 4 r")).unwrap().holds);
        let odd = g("n=5; 1 2 g; 2 3 r; 3 1 r; 1 4 r; 1 5 r");
        assert!(!nonsingular_unicyclic(&odd).unwrap().holds);
    }

    #[test]
    fn shape_and_model_errors() {
        assert!(matches!(nonsingular_unicyclic(&golden_theta()), Err(Error::Shape { .. })));
        let red = g("n=4; 1 2 r; 2 3 r; 3 4 r; 4 1 r");
        assert_eq!(nonsingular_unicyclic(&red), Err(Error::Model(ModelError::NotInModel)));
        let tree = g("n=2; 1 2 r");
        assert!(matches!(unimodular_predicate(&tree), Err(Error::Shape { .. })));
    }

    #[test]
    fn golden_theta_verdicts() {
        let b = golden_theta();
        assert!(nonsingular_bicyclic(&b).unwrap().holds);
        assert!(zero_diagonal_predicate(&b).unwrap().holds);
        assert!(unimodular_predicate(&b).unwrap().holds);
        let v = inverse_is_3colored(&b).unwrap();
        assert!(!v.holds);
        assert_eq!(v.clause, "no_unique_perfect_matching");
    }

    #[test]
    fn infinity_graph_with_signed_unit_cycle_is_singular() {
        // triangle 1-2-3 (one green arc) and square 3-4-5-6 sharing vertex 3, pendant 7-8 on 1
        // keeps the triangle from being independent; the all-red square has w(-1)^2 = 1
        let b = g("n=8; 1 2 g; 2 3 r; 3 1 r; 3 4 r; 4 5 r; 5 6 r; 6 3 r; 1 7 r; 7 8 r");
        let s = Structure::new(&b).unwrap();
        let a = s.analyze(&b);
        assert_eq!(s.shape(), ShapeClass::BicyclicInfinity);
        let v = nonsingular_bicyclic(&b).unwrap();
        assert_eq!(v.holds, a.det() != 0);
    }

    #[test]
    fn unimodular_and_three_colored_small_cases() {
        let c4 = g("n=4; 1 2 g; 2 3 r; 3 4 r; 4 1 r");
        assert!(!unimodular_predicate(&c4).unwrap().holds);
        let pendant = g("n=4; 1 2 g; 2 3 r; 3 1 r; 1 4 r");
        assert!(unimodular_predicate(&pendant).unwrap().holds);
        assert!(inverse_is_3colored(&pendant).unwrap().holds);
        assert!(zero_diagonal_predicate(&pendant).unwrap().holds);
    }

    #[test]
    fn preconditions() {
        let p = g("n=5; 1 2 g; 2 3 r; 3 1 r; 1 4 r; 1 5 r");
        assert!(matches!(zero_diagonal_predicate(&p), Err(Error::Precondition(_))));
        assert!(matches!(inverse_is_3colored(&p), Err(Error::Precondition(_))));
    }

    #[test]
    fn verdict_json_shape() {
        let v = unimodular_predicate(&golden_theta()).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["predicate"], "unimodular");
        assert_eq!(json["holds"], true);
        assert_eq!(json["witness"]["kind"], "cycle");
    }
}
