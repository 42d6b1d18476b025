//! Reweighting a surface so that its unit ball, cut down to the span of a
//! family of disjoint simple cycles, is a prescribed symmetric polytope.
//!
//! Lengths of the cycles are pinned to the targets, then every other edge is
//! made more expensive by doubling until each signed combination of the
//! cycles is certified minimal by an exact linear program.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::ChainVector;
use crate::circuits::DEFAULT_CIRCUIT_CAP;
use crate::error::{Error, Result};
use crate::hull::{polar_vertices, Polytope};
use crate::linalg::{self, Matrix};
use crate::rational::{self, Rational};
use crate::ratlp::{solve_weighted_l1, LinearProgram, LpStatus};
use crate::stablenorm::{unit_ball_with_cap, walk_labels, NormContext, NormValue};
use crate::surface::{is_simple_on_surface, parse_surface, resolve_multicurve, SurfaceComplex};

/// Doubling rounds tried before giving up.
pub const DEFAULT_MAX_ESCALATIONS: usize = 64;
/// Largest edge count accepted by the exhaustive curve-system search.
pub const DEFAULT_SEARCH_EDGE_CAP: usize = 12;
const SEARCH_NODE_BUDGET: usize = 2_000_000;

/// Cycles `c_i` with target lengths `r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrescriptionProblem {
    surface: SurfaceComplex,
    cycles: Vec<ChainVector>,
    targets: Vec<Rational>,
    classes: Vec<Vec<Rational>>,
}

impl PrescriptionProblem {
    /// Validates the family: simple, pairwise edge-disjoint cycles with
    /// pairwise non-proportional nonzero classes and positive targets.
    ///
    /// Cycles may pass through a common vertex as long as they do not share
    /// an edge; on a torus two non-proportional classes always meet.
    pub fn new(surface: SurfaceComplex, cycles: Vec<ChainVector>, targets: Vec<Rational>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidPrescription(m));
        if cycles.is_empty() {
            return bad("no cycles given".into());
        }
        if cycles.len() != targets.len() {
            return bad(format!("{} cycles but {} targets", cycles.len(), targets.len()));
        }
        if let Some(r) = targets.iter().find(|r| !r.is_positive()) {
            return bad(format!("target {r} is not positive"));
        }
        let ctx = NormContext::new(&surface);
        let mut used = vec![None; surface.edge_count()];
        let mut classes = Vec::new();
        for (i, c) in cycles.iter().enumerate() {
            if c.len() != surface.edge_count() {
                return Err(Error::DimensionMismatch { expected: surface.edge_count(), got: c.len() });
            }
            if !is_simple_on_surface(&surface, c)? {
                return bad(format!("cycle {} is not simple", i + 1));
            }
            for e in c.support() {
                if let Some(j) = used[e] {
                    return bad(format!("cycles {} and {} share edge {}", j + 1, i + 1, surface.label(e)));
                }
                used[e] = Some(i);
            }
            let class = ctx.class_of(c);
            if rational::is_zero_vector(&class) {
                return bad(format!("cycle {} is null-homologous", i + 1));
            }
            classes.push(class);
        }
        for i in 0..classes.len() {
            for j in 0..i {
                if linalg::rank_of_vectors(&[classes[i].clone(), classes[j].clone()], ctx.rank()) < 2 {
                    return bad(format!("cycles {} and {} have proportional classes", j + 1, i + 1));
                }
            }
        }
        Ok(PrescriptionProblem { surface, cycles, targets, classes })
    }

    pub fn surface(&self) -> &SurfaceComplex {
        &self.surface
    }

    pub fn cycles(&self) -> &[ChainVector] {
        &self.cycles
    }

    pub fn targets(&self) -> &[Rational] {
        &self.targets
    }

    /// Homology classes `[c_i]` in the basis of the surface.
    pub fn classes(&self) -> &[Vec<Rational>] {
        &self.classes
    }

    /// Edges carried by some `c_i`.
    pub fn on_union(&self) -> Vec<bool> {
        let mut on = vec![false; self.surface.edge_count()];
        for c in &self.cycles {
            for e in c.support() {
                on[e] = true;
            }
        }
        on
    }

    /// Sign vectors `{−1,0,1}^l` without the zero vector, in odometer order.
    pub fn sign_vectors(&self) -> Vec<Vec<i8>> {
        let l = self.cycles.len();
        let mut out = Vec::new();
        let mut eps = vec![-1i8; l];
        loop {
            if eps.iter().any(|&e| e != 0) {
                out.push(eps.clone());
            }
            let mut k = 0;
            while k < l && eps[k] == 1 {
                eps[k] = -1;
                k += 1;
            }
            if k == l {
                return out;
            }
            eps[k] += 1;
        }
    }

    /// `Σ ε_i [c_i]`.
    pub fn combination(&self, signs: &[i8]) -> Vec<Rational> {
        let dim = self.classes[0].len();
        let mut h = vec![Rational::zero(); dim];
        for (s, class) in signs.iter().zip(&self.classes) {
            for (x, y) in h.iter_mut().zip(class) {
                *x += y * Rational::from_integer((*s).into());
            }
        }
        h
    }

    /// Gauge of `Conv_s([c_i]/r_i)` at `h`: the least `Σ r_i |a_i|` with
    /// `Σ a_i [c_i] = h`, i.e. the cheapest combination of the pinned cycles.
    /// `None` outside their span.
    pub fn union_length(&self, class: &[Rational]) -> Option<Rational> {
        let dim = class.len();
        let columns: Matrix = (0..dim).map(|k| self.classes.iter().map(|c| c[k].clone()).collect()).collect();
        let lp = LinearProgram::new(self.targets.clone(), columns, class.to_vec()).ok()?;
        let sol = solve_weighted_l1(&lp);
        (sol.status == LpStatus::Optimal).then_some(sol.value)
    }
}

/// Reads a surface file carrying `prescribe <target> <walk>` lines.
///
/// ```text
/// face a b -a -b
/// prescribe 2 a
/// prescribe 5 b
/// ```
pub fn parse_prescription(text: &str) -> Result<PrescriptionProblem> {
    let mut surface_text = String::new();
    let mut wanted = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        match line.strip_prefix("prescribe") {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => {
                let mut words = rest.split_whitespace();
                let target = words.next().and_then(rational::parse).ok_or_else(|| Error::Syntax {
                    line: n + 1,
                    message: "expected `prescribe <target> <walk>`".into(),
                })?;
                let walk: Vec<&str> = words.collect();
                wanted.push((n + 1, target, walk.join(" ")));
                surface_text.push('\n');
            }
            _ => {
                surface_text.push_str(raw);
                surface_text.push('\n');
            }
        }
    }
    let surface = parse_surface(&surface_text)?;
    let mut cycles = Vec::new();
    let mut targets = Vec::new();
    for (line, target, walk) in wanted {
        let tokens = surface.parse_walk(&walk)?;
        if !surface.is_closed_walk(&tokens) {
            return Err(Error::Syntax { line, message: format!("`{walk}` is not a closed walk") });
        }
        cycles.push(ChainVector::from_tokens(surface.edge_count(), &tokens));
        targets.push(target);
    }
    PrescriptionProblem::new(surface, cycles, targets)
}

/// `surface` as text followed by the `prescribe` lines of `problem`, so the
/// result can be read back with [`parse_prescription`].
pub fn prescription_text(surface: &SurfaceComplex, problem: &PrescriptionProblem) -> String {
    let mut out = surface.to_text();
    for (c, r) in problem.cycles.iter().zip(&problem.targets) {
        let walk = resolve_multicurve(&problem.surface, std::slice::from_ref(c))
            .ok()
            .flatten()
            .map(|res| res.walks.into_iter().next().unwrap_or_default())
            .expect("validated cycles are simple");
        out.push_str(&format!("prescribe {} {}\n", rational::format(r), walk_labels(surface, &walk).join(" ")));
    }
    out
}

/// Scales each `c_i` by `r_i / w(c_i)` so that its length is `r_i`.
pub fn normalize_lengths(problem: &PrescriptionProblem) -> SurfaceComplex {
    let s = &problem.surface;
    let mut weights = s.weights().to_vec();
    for (c, r) in problem.cycles.iter().zip(&problem.targets) {
        let factor = r / s.mass(c);
        for e in c.support() {
            weights[e] = &weights[e] * &factor;
        }
    }
    s.with_weights(weights).expect("scaling keeps weights positive")
}

/// Outcome for one sign vector in the final round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCheck {
    pub signs: Vec<i8>,
    #[serde(with = "crate::rational::serde_vec")]
    pub class: Vec<Rational>,
    /// Stable norm of the class.
    #[serde(with = "crate::rational::serde_rational")]
    pub norm: Rational,
    /// Length of the cheapest combination of the pinned cycles.
    #[serde(with = "crate::rational::serde_rational")]
    pub union_length: Rational,
    /// `union_length − norm`; zero once certified.
    #[serde(with = "crate::rational::serde_rational")]
    pub gap: Rational,
    /// Weight the LP minimizer spends off the pinned cycles.
    #[serde(with = "crate::rational::serde_rational")]
    pub outside_time: Rational,
    #[serde(with = "crate::rational::serde_vec")]
    pub minimizer: Vec<Rational>,
    #[serde(with = "crate::rational::serde_vec")]
    pub covector: Vec<Rational>,
    #[serde(with = "crate::rational::serde_vec")]
    pub potential: Vec<Rational>,
}

/// Summary of one escalation round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    #[serde(with = "crate::rational::serde_rational")]
    pub factor: Rational,
    pub failures: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub max_gap: Rational,
}

/// Evidence that every `Σ ε_i [c_i]` is minimized by the pinned cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "crate::rational::serde_rational")]
    pub factor: Rational,
    pub rounds: usize,
    pub labels: Vec<String>,
    #[serde(with = "crate::rational::serde_vec")]
    pub weights: Vec<Rational>,
    pub checks: Vec<SignCheck>,
    pub history: Vec<Round>,
}

impl Certificate {
    /// Re-checks every claim from the stored primal and dual solutions.
    pub fn verify(&self, problem: &PrescriptionProblem) -> bool {
        let Ok(surface) = problem.surface.with_weights(self.weights.clone()) else {
            return false;
        };
        let pinned = normalize_lengths(problem);
        let on = problem.on_union();
        if (0..surface.edge_count()).any(|e| on[e] && surface.weight(e) != pinned.weight(e)) {
            return false;
        }
        let ctx = NormContext::new(&surface);
        let signs = problem.sign_vectors();
        self.checks.len() == signs.len()
            && self.checks.iter().zip(&signs).all(|(c, s)| {
                let claim = NormValue {
                    value: c.norm.clone(),
                    minimizer: ChainVector::from_coeffs(c.minimizer.clone()),
                    covector: c.covector.clone(),
                    potential: c.potential.clone(),
                };
                c.signs == *s
                    && c.class == problem.combination(s)
                    && c.gap.is_zero()
                    && c.norm == c.union_length
                    && problem.union_length(&c.class).as_ref() == Some(&c.union_length)
                    && ctx.certifies(&c.class, &claim)
            })
    }
}

/// Surface with every weight off the pinned cycles multiplied by `factor`.
pub fn escalate(pinned: &SurfaceComplex, problem: &PrescriptionProblem, factor: &Rational) -> SurfaceComplex {
    let on = problem.on_union();
    let weights =
        pinned.weights().iter().enumerate().map(|(e, w)| if on[e] { w.clone() } else { w * factor }).collect();
    pinned.with_weights(weights).expect("positive factor")
}

/// Runs every sign-vector check on `surface`.
pub fn check_signs(surface: &SurfaceComplex, problem: &PrescriptionProblem) -> Result<Vec<SignCheck>> {
    let ctx = NormContext::new(surface);
    let on = problem.on_union();
    problem
        .sign_vectors()
        .into_iter()
        .map(|signs| {
            let class = problem.combination(&signs);
            let n = ctx.stable_norm(&class)?;
            let union_length = problem.union_length(&class).ok_or(Error::LpFailed("class outside span"))?;
            let outside_time = n
                .minimizer
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(e, _)| !on[*e])
                .map(|(e, x)| x.abs() * surface.weight(e))
                .sum();
            Ok(SignCheck {
                gap: &union_length - &n.value,
                signs,
                class,
                norm: n.value,
                union_length,
                outside_time,
                minimizer: n.minimizer.into_coeffs(),
                covector: n.covector,
                potential: n.potential,
            })
        })
        .collect()
}

/// Doubles the outside weights of the pinned surface until every sign
/// vector is certified; `max_escalations` doublings are tried at most.
pub fn penalize_outside(
    pinned: &SurfaceComplex,
    problem: &PrescriptionProblem,
    max_escalations: usize,
) -> Result<(SurfaceComplex, Certificate)> {
    let mut factor = Rational::one();
    let mut history = Vec::new();
    for round in 0..=max_escalations {
        let surface = escalate(pinned, problem, &factor);
        let checks = check_signs(&surface, problem)?;
        let failures = checks.iter().filter(|c| !c.gap.is_zero()).count();
        let max_gap = checks.iter().map(|c| c.gap.clone()).max().unwrap_or_default();
        history.push(Round { factor: factor.clone(), failures, max_gap });
        if failures == 0 {
            let certificate = Certificate {
                factor,
                rounds: round,
                labels: surface.labels().to_vec(),
                weights: surface.weights().to_vec(),
                checks,
                history,
            };
            return Ok((surface, certificate));
        }
        factor *= Rational::from_integer(2.into());
    }
    Err(Error::NoSpanProgress(max_escalations))
}

/// Pins lengths and escalates with the default schedule.
pub fn construct(problem: &PrescriptionProblem) -> Result<(SurfaceComplex, Certificate)> {
    penalize_outside(&normalize_lengths(problem), problem, DEFAULT_MAX_ESCALATIONS)
}

/// The unit ball of `surface` restricted to the span of the `[c_i]` next to
/// `Conv_s([c_i]/r_i)`, both in coordinates of a basis of the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanComparison {
    pub span_dim: usize,
    pub ball_vertices: Vec<Vec<Rational>>,
    pub target_vertices: Vec<Vec<Rational>>,
    /// Whether each `[c_i]/r_i` is a vertex of the restricted ball.
    pub exposed: Vec<bool>,
}

pub fn compare_on_span(surface: &SurfaceComplex, problem: &PrescriptionProblem) -> Result<SpanComparison> {
    let ctx = NormContext::new(surface);
    let ball = unit_ball_with_cap(&ctx, DEFAULT_CIRCUIT_CAP)?;
    let dim = ctx.rank();
    // Basis of the span from an independent subset of the classes.
    let as_columns: Matrix = (0..dim).map(|k| problem.classes.iter().map(|c| c[k].clone()).collect()).collect();
    let mut reduced = as_columns.clone();
    let pivots = linalg::rref(&mut reduced, problem.classes.len());
    let basis: Vec<&Vec<Rational>> = pivots.iter().map(|&p| &problem.classes[p]).collect();
    let span_dim = basis.len();
    let basis_matrix: Matrix = (0..dim).map(|k| basis.iter().map(|b| b[k].clone()).collect()).collect();

    let restricted: Vec<Vec<Rational>> =
        ball.polytope.facets.iter().map(|f| basis.iter().map(|b| rational::dot(f, b)).collect()).collect();
    let ball_vertices = polar_vertices(&restricted, span_dim)?;

    let mut points = Vec::new();
    for (class, r) in problem.classes.iter().zip(&problem.targets) {
        let z = linalg::solve(&basis_matrix, span_dim, class).expect("class lies in its own span");
        let z: Vec<Rational> = z.iter().map(|x| x / r).collect();
        points.push(z.iter().map(|x| -x).collect());
        points.push(z);
    }
    let target_vertices = Polytope::from_points(&points, span_dim)?.vertices;
    let exposed = points.iter().skip(1).step_by(2).map(|p| ball_vertices.contains(p)).collect();
    Ok(SpanComparison { span_dim, ball_vertices, target_vertices, exposed })
}

/// True when the ball of `surface` restricted to the span of the cycles is
/// exactly `Conv_s([c_i]/r_i)`.
pub fn verify_prescription(surface: &SurfaceComplex, problem: &PrescriptionProblem) -> Result<bool> {
    let cmp = compare_on_span(surface, problem)?;
    Ok(cmp.ball_vertices == cmp.target_vertices)
}

/// A largest system of pairwise disjoint simple cycles with pairwise
/// non-proportional classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSystem {
    pub cycles: Vec<ChainVector>,
    /// Simple cycles with nonzero class considered, one per sign pair.
    pub candidates: usize,
    pub nodes: usize,
}

/// Exhaustive search over `±1` cycles. Disjointness means edge-disjoint and
/// simultaneously resolvable without crossings at shared vertices.
pub fn max_disjoint_systems(surface: &SurfaceComplex) -> Result<usize> {
    Ok(max_disjoint_system(surface, DEFAULT_SEARCH_EDGE_CAP)?.cycles.len())
}

pub fn max_disjoint_system(surface: &SurfaceComplex, edge_cap: usize) -> Result<CurveSystem> {
    let edges = surface.edge_count();
    if edges > edge_cap {
        return Err(Error::SearchBudgetExceeded(format!("{edges} edges exceed the cap of {edge_cap}")));
    }
    let ctx = NormContext::new(surface);
    let mut candidates: Vec<(ChainVector, Vec<Rational>)> = Vec::new();
    // Enumerate {−1,0,1}^E with a leading +1 to pick one of each sign pair.
    let mut coeffs = vec![0i64; edges];
    loop {
        let mut k = 0;
        while k < edges && coeffs[k] == 1 {
            coeffs[k] = -1;
            k += 1;
        }
        if k == edges {
            break;
        }
        coeffs[k] += 1;
        let lead = coeffs.iter().find(|&&c| c != 0);
        if lead != Some(&1) {
            continue;
        }
        let chain = ChainVector::from_ints(&coeffs);
        if !surface.is_cycle(&chain) {
            continue;
        }
        let class = ctx.class_of(&chain);
        if rational::is_zero_vector(&class) || !is_simple_on_surface(surface, &chain)? {
            continue;
        }
        candidates.push((chain, class));
    }

    let n = candidates.len();
    let dim = ctx.rank();
    let mut compatible = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..i {
            let (ci, hi) = &candidates[i];
            let (cj, hj) = &candidates[j];
            let ok = ci.support().iter().all(|e| cj.get(*e).is_zero())
                && linalg::rank_of_vectors(&[hi.clone(), hj.clone()], dim) == 2
                && resolve_multicurve(surface, &[ci.clone(), cj.clone()])?.is_some();
            compatible[i][j] = ok;
            compatible[j][i] = ok;
        }
    }

    struct Search<'a> {
        surface: &'a SurfaceComplex,
        candidates: &'a [(ChainVector, Vec<Rational>)],
        compatible: &'a [Vec<bool>],
        best: Vec<usize>,
        nodes: usize,
    }
    impl Search<'_> {
        fn grow(&mut self, chosen: &mut Vec<usize>, pool: &[usize]) -> Result<()> {
            self.nodes += 1;
            if self.nodes > SEARCH_NODE_BUDGET {
                return Err(Error::SearchBudgetExceeded(format!("{SEARCH_NODE_BUDGET} search nodes")));
            }
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
            }
            for (k, &c) in pool.iter().enumerate() {
                if chosen.len() + pool.len() - k <= self.best.len() {
                    break;
                }
                chosen.push(c);
                let curves: Vec<ChainVector> = chosen.iter().map(|&i| self.candidates[i].0.clone()).collect();
                if chosen.len() <= 2 || resolve_multicurve(self.surface, &curves)?.is_some() {
                    let next: Vec<usize> = pool[k + 1..].iter().copied().filter(|&d| self.compatible[c][d]).collect();
                    self.grow(chosen, &next)?;
                }
                chosen.pop();
            }
            Ok(())
        }
    }
    let mut search = Search { surface, candidates: &candidates, compatible: &compatible, best: Vec::new(), nodes: 0 };
    let pool: Vec<usize> = (0..n).collect();
    search.grow(&mut Vec::new(), &pool)?;
    Ok(CurveSystem {
        cycles: search.best.iter().map(|&i| candidates[i].0.clone()).collect(),
        candidates: n,
        nodes: search.nodes,
    })
}
