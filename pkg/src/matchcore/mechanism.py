"""The profit-sharing mechanism: scale the cover by per-vertex factors.

Pipeline: double the graph, solve it with a certified bipartite
matching, fold back to a half-integral matching x and optimal cover v,
normalize the half-edges to odd cycles, then pay each agent

    c_i = f(i) * v_i,   f(i) = 2k/(2k+1) if i lies on a half cycle of
                        length 2k+1, and 1 otherwise.

Vertices outside odd cycles keep their full cover value, so only the
most constrained agents are scaled down, and never below 2/3. The
payout is backed by a concrete integral matching T: the edges with
x = 1 plus, per odd cycle, the heaviest of the 2k+1 alternating
matchings obtained by deleting one cycle vertex. Exact identities tie
the pieces together:

- deleting vertex i_j from a cycle leaves a matching M_j with
  v_{i_j} = v_C - w(M_j);
- summed over the cycle, sum_j w(M_j) = 2k * v_C, hence the heaviest
  satisfies (2k+1) * w(M') >= 2k * v_C;
- therefore sum of c over a cycle is at most w(M'), and globally
  sum(c) <= w(T) <= worth of the grand coalition.

Every identity is asserted exactly on every run; a failure would mean
the upstream solution was not optimal and raises InvariantViolation.
All quantities from here on are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipartite import DoubledGraph, PrimalDualCertificate, check_certificate, double_graph, solve_bipartite
from .errors import InvariantViolation
from .halfint import (
    FractionalComponents,
    HalfIntegralSolution,
    OddCycle,
    decompose_components,
    fold_solution,
    normalize,
    solution_weight,
)
from .instances import GameInstance
from .rationals import format_fraction


@dataclass(frozen=True)
class CycleMatching:
    """One alternating matching of an odd cycle: the k alternate edges
    left after removing `removed_vertex` and its two incident edges."""

    removed_vertex: int
    edges: tuple[tuple[int, int], ...]
    weight: int


@dataclass(frozen=True)
class CycleAnalysis:
    """All 2k+1 alternating matchings of one cycle and the heaviest."""

    cycle: OddCycle
    matchings: tuple[CycleMatching, ...]
    heaviest_index: int
    heaviest_weight: int


@dataclass(frozen=True)
class ScalingProfile:
    """Per-vertex payout multipliers, each in [2/3, 1]."""

    factors: tuple[Fraction, ...]


@dataclass(frozen=True)
class ImputationResult:
    """The mechanism's output: payouts plus the matching backing them."""

    c: tuple[Fraction, ...]
    matching: tuple[tuple[int, int], ...]
    factors: ScalingProfile
    worth_fractional: Fraction
    matching_weight: int
    allocated: Fraction
    factor_guarantee: Fraction

    def to_json_dict(self) -> dict:
        return {
            "values": [format_fraction(x) for x in self.c],
            "matching": [[u + 1, v + 1] for (u, v) in self.matching],
            "factors": [format_fraction(x) for x in self.factors.factors],
            "allocated": format_fraction(self.allocated),
            "matching_weight": format_fraction(self.matching_weight),
            "fractional_optimum": format_fraction(self.worth_fractional),
            "factor_guarantee": format_fraction(self.factor_guarantee),
        }


@dataclass(frozen=True)
class PipelineTrace:
    """Every intermediate artifact of one mechanism run."""

    instance: GameInstance
    doubled: DoubledGraph
    certificate: PrimalDualCertificate
    folded: HalfIntegralSolution
    normalized: HalfIntegralSolution
    components: FractionalComponents
    analyses: tuple[CycleAnalysis, ...]
    profile: ScalingProfile
    result: ImputationResult


def heaviest_tiebreak(matchings) -> int:
    """Index of the heaviest matching; ties go to the smallest removed id."""
    if not matchings:
        raise ValueError("no matchings to choose from")
    best = 0
    for idx in range(1, len(matchings)):
        m = matchings[idx]
        b = matchings[best]
        if m.weight > b.weight or (m.weight == b.weight
                                   and m.removed_vertex < b.removed_vertex):
            best = idx
    return best


def analyze_cycle(g: GameInstance, cycle: OddCycle, v) -> CycleAnalysis:
    """Build the 2k+1 alternating matchings of a cycle and check them.

    Checks, exactly: every M_j has k edges and misses exactly vertex
    i_j; v_{i_j} = v_C - w(M_j); the matching weights sum to 2k * v_C;
    the heaviest reaches the (2k)/(2k+1) share of v_C.
    """
    verts = cycle.vertices
    length = len(verts)
    k = cycle.k
    wmap = {}
    for (a, b, w) in g.edges:
        wmap[(a, b)] = w
        wmap[(b, a)] = w

    matchings = []
    total = 0
    for j in range(length):
        edges = []
        weight = 0
        for t in range(k):
            a = verts[(j + 1 + 2 * t) % length]
            b = verts[(j + 2 + 2 * t) % length]
            edges.append((a, b))
            weight += wmap[(a, b)]
        if v[verts[j]] != cycle.v_C - weight:
            raise InvariantViolation(
                f"cycle cover at vertex {verts[j]}: {v[verts[j]]} != "
                f"{cycle.v_C} - {weight}")
        matchings.append(CycleMatching(verts[j], tuple(edges), weight))
        total += weight
    if total != 2 * k * cycle.v_C:
        raise InvariantViolation(
            f"cycle matching weights sum to {total}, expected {2 * k * cycle.v_C}")

    heaviest = heaviest_tiebreak(matchings)
    hw = matchings[heaviest].weight
    if (2 * k + 1) * hw < 2 * k * cycle.v_C:
        raise InvariantViolation(
            f"heaviest cycle matching too light: {(2 * k + 1) * hw} < "
            f"{2 * k * cycle.v_C}")
    return CycleAnalysis(cycle, tuple(matchings), heaviest, hw)


def scaling_profile(g: GameInstance, comps: FractionalComponents) -> ScalingProfile:
    """Multiplier 2k/(2k+1) on each odd cycle, 1 everywhere else."""
    factors = [Fraction(1)] * g.vertex_count
    for cycle in comps.odd_cycles:
        f = Fraction(2 * cycle.k, 2 * cycle.k + 1)
        for i in cycle.vertices:
            factors[i] = f
    return ScalingProfile(tuple(factors))


def run_pipeline(g: GameInstance, backend: str | None = None) -> PipelineTrace:
    """Run the full mechanism and retain every intermediate artifact."""
    d = double_graph(g)
    cert = solve_bipartite(d, backend=backend)
    folded = fold_solution(g, d, cert)
    norm = normalize(g, folded)
    comps = decompose_components(g, norm)
    analyses = tuple(analyze_cycle(g, cyc, norm.v) for cyc in comps.odd_cycles)
    profile = scaling_profile(g, comps)

    c = tuple(profile.factors[i] * norm.v[i] for i in range(g.vertex_count))

    matching = [tuple(sorted(g.edges[e][:2])) for e in comps.integral_edges]
    for analysis in analyses:
        for (a, b) in analysis.matchings[analysis.heaviest_index].edges:
            matching.append((min(a, b), max(a, b)))
    matching.sort()

    wmap = {(a, b): w for (a, b, w) in g.edges}
    used = set()
    matching_weight = 0
    for (a, b) in matching:
        if a in used or b in used:
            raise InvariantViolation(f"output edges are not a matching at ({a}, {b})")
        used.add(a)
        used.add(b)
        matching_weight += wmap[(a, b)]

    allocated = sum(c, Fraction(0))
    if allocated > matching_weight:
        raise InvariantViolation(
            f"allocation {allocated} exceeds its matching weight {matching_weight}")

    factor_guarantee = min(profile.factors, default=Fraction(1))
    for (i, j, w) in g.edges:
        if 3 * (c[i] + c[j]) < 2 * w:
            raise InvariantViolation(f"payout covers edge ({i}, {j}) below 2/3")
        if c[i] + c[j] < min(profile.factors[i], profile.factors[j]) * w:
            raise InvariantViolation(f"payout under the factor bound on ({i}, {j})")

    result = ImputationResult(
        c=c,
        matching=tuple(matching),
        factors=profile,
        worth_fractional=solution_weight(g, norm),
        matching_weight=matching_weight,
        allocated=allocated,
        factor_guarantee=factor_guarantee,
    )
    return PipelineTrace(g, d, cert, folded, norm, comps, analyses, profile, result)


def run_mechanism(g: GameInstance, backend: str | None = None) -> ImputationResult:
    """Compute the scaled-cover payout and its backing matching."""
    return run_pipeline(g, backend=backend).result


def audit_pipeline(trace: PipelineTrace) -> list[str]:
    """Re-verify a finished run from its artifacts; [] means all good.

    Defence in depth for `solve --check`: everything here was already
    asserted while the pipeline ran, but this pass re-derives the facts
    from the outputs alone (certificate check, strong duality, cover
    feasibility, scaled-cover bounds, budget order) without trusting
    any intermediate bookkeeping.
    """
    problems = []
    g = trace.instance
    problems += check_certificate(trace.doubled, trace.certificate)

    norm = trace.normalized
    weight = solution_weight(g, norm)
    cover_total = sum(norm.v, Fraction(0))
    if weight != cover_total:
        problems.append(f"weight(x) {weight} != cover total {cover_total}")
    for (i, j, w) in g.edges:
        if norm.v[i] + norm.v[j] < w:
            problems.append(f"cover misses edge ({i}, {j})")

    res = trace.result
    for i in range(g.vertex_count):
        if res.c[i] != trace.profile.factors[i] * norm.v[i]:
            problems.append(f"payout at vertex {i} is not factor * cover")
    edge_set = {(a, b) for (a, b, _) in g.edges}
    used = set()
    for (a, b) in res.matching:
        if (a, b) not in edge_set:
            problems.append(f"output edge ({a}, {b}) not in the instance")
        if a in used or b in used:
            problems.append(f"output edges clash at ({a}, {b})")
        used.update((a, b))
    if res.allocated > res.matching_weight:
        problems.append("allocation exceeds the backing matching weight")
    for (i, j, w) in g.edges:
        if 3 * (res.c[i] + res.c[j]) < 2 * w:
            problems.append(f"payout covers edge ({i}, {j}) below 2/3")
    return problems
