"""Edge-weight measures on cylinders, invariance/consistency checks, samplers.

A measure is given by exact rational weights on the edges leaving each
vertex, summing to one. The measure of a root cylinder is the product of the
weights along it. Floats appear only in the chi-square statistics.
"""

from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from .codec import Permutation, path_to_perm
from .graph import (
    ROOT,
    Cylinder,
    Edge,
    Orientation,
    Turn,
    Vertex,
    bundle_size,
    incoming_edges,
    outgoing_edges,
)

WeightRule = Callable[[Vertex], Sequence[Fraction]]


class WeightError(ValueError):
    pass


def _validate(v: Vertex, weights: Sequence[Fraction], orientation: Orientation) -> tuple[Fraction, ...]:
    w = tuple(Fraction(x) for x in weights)
    if len(w) != v.level + 2:
        raise WeightError(f"{v}: expected {v.level + 2} weights, got {len(w)}")
    if any(x < 0 or x > 1 for x in w):
        raise WeightError(f"{v}: weights must lie in [0, 1]")
    if sum(w) != 1:
        raise WeightError(f"{v}: outgoing weights sum to {sum(w)}, not 1")
    return w


class EdgeWeighting:
    """Per-vertex outgoing weights, in outgoing_edges order (left bundle, then right).

    `rule` is called lazily and every result is validated; a finite `table`
    is validated when the weighting is built.
    """

    def __init__(
        self,
        rule: WeightRule | None = None,
        orientation: Orientation = Orientation.STANDARD,
        table: Mapping[Vertex, Sequence[Fraction]] | None = None,
    ):
        if (rule is None) == (table is None):
            raise ValueError("give exactly one of rule or table")
        self.orientation = orientation
        self._cache: dict[Vertex, tuple[Fraction, ...]] = {}
        self._rule = rule
        self.depth: int | None = None
        if table is not None:
            for v, w in table.items():
                self._cache[v] = _validate(v, w, orientation)
            self.depth = max((v.level for v in table), default=-1) + 1

    def weights_at(self, v: Vertex) -> tuple[Fraction, ...]:
        w = self._cache.get(v)
        if w is None:
            if self._rule is None:
                raise WeightError(f"no weights defined at {v}")
            w = _validate(v, self._rule(v), self.orientation)
            self._cache[v] = w
        return w

    def weight(self, e: Edge) -> Fraction:
        w = self.weights_at(e.source)
        if e.turn is Turn.LEFT:
            return w[e.index - 1]
        return w[bundle_size(e.source, Turn.LEFT, self.orientation) + e.index - 1]


def symmetric_rule(v: Vertex) -> list[Fraction]:
    return [Fraction(1, v.level + 2)] * (v.level + 2)


class MeasureSpec:
    name = "custom"

    def __init__(self, weighting: EdgeWeighting):
        self.weighting = weighting

    @property
    def orientation(self) -> Orientation:
        return self.weighting.orientation

    def describe(self) -> str:
        return self.name


class Symmetric(MeasureSpec):
    """Every edge leaving level n weighs 1/(n+2); works on either orientation."""

    name = "symmetric"

    def __init__(self, orientation: Orientation = Orientation.STANDARD):
        super().__init__(EdgeWeighting(symmetric_rule, orientation))

    def describe(self) -> str:
        if self.orientation is Orientation.REVERSE:
            return "symmetric-reverse"
        return self.name


class Custom(MeasureSpec):
    name = "custom"


def default_alpha(n: int) -> Fraction:
    return Fraction(1, 2 * (n + 1))


def alpha_from_initial(alpha1: Fraction | Sequence[Fraction]) -> Callable[[int], Fraction]:
    """alpha_1 (or alpha_1..alpha_N as given), continued by alpha_{n+1} = alpha_n / (2 - 2 n alpha_n)."""
    if isinstance(alpha1, (int, Fraction)):
        alpha1 = [alpha1]
    if not alpha1:
        raise ValueError("need at least alpha_1")
    values = [None] + [Fraction(a) for a in alpha1]

    def alpha(n: int) -> Fraction:
        while len(values) <= n:
            m = len(values) - 1
            a = values[m]
            values.append(a / (2 - 2 * m * a))
        return values[n]

    return alpha


def recursion_holds(alpha: Callable[[int], Fraction], n: int) -> bool:
    return alpha(n + 1) == alpha(n) / (2 - 2 * n * alpha(n))


class FiniteRank(MeasureSpec):
    """Measures carried by the paths that stay in columns 0 and 1.

    From (n, 0): the left edge weighs 1 - (n+1) alpha_{n+1} and each of the
    n+1 right edges alpha_{n+1}. From (n, 1): both left edges weigh 1/2 and
    right edges 0. Vertices in columns >= 2 carry zero mass; they get the
    symmetric weights only to keep every vertex normalised.
    """

    name = "finite-rank"

    def __init__(self, alpha: Callable[[int], Fraction] = default_alpha):
        self.alpha = alpha

        def rule(v: Vertex) -> list[Fraction]:
            n, k = v.level, v.column
            if k == 0:
                a = Fraction(alpha(n + 1))
                if not 0 < (n + 1) * a < 1:
                    raise WeightError(f"need 0 < (n+1) alpha_(n+1) < 1 at n={n}, got alpha={a}")
                return [1 - (n + 1) * a] + [a] * (n + 1)
            if k == 1:
                return [Fraction(1, 2)] * 2 + [Fraction(0)] * n
            return symmetric_rule(v)

        super().__init__(EdgeWeighting(rule))


def cylinder_measure(spec: MeasureSpec, F: Cylinder) -> Fraction:
    if F.orientation is not spec.orientation:
        raise ValueError("cylinder and measure use different orientations")
    m = Fraction(1)
    for e in F.edges:
        m *= spec.weighting.weight(e)
        if not m:
            break
    return m


# -- checks ----------------------------------------------------------------

@dataclass
class Violation:
    level: int
    column: int
    measures: list[Fraction]

    def as_dict(self) -> dict:
        return {"level": self.level, "column": self.column, "measures": [str(x) for x in self.measures]}


@dataclass
class CheckReport:
    spec: str
    depth: int
    check: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {
            "spec": self.spec,
            "depth": self.depth,
            "check": self.check,
            "status": self.status,
            "violations": [v.as_dict() for v in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def check_invariance(spec: MeasureSpec, depth: int) -> CheckReport:
    """Every root cylinder into a common vertex must carry the same measure.

    Tracks, level by level, the set of distinct cylinder measures reaching
    each vertex; invariance holds exactly when every set is a singleton.
    """
    orientation = spec.orientation
    report = CheckReport(spec.describe(), depth, "invariance")
    values: dict[Vertex, set[Fraction]] = {ROOT: {Fraction(1)}}
    for n in range(1, depth + 1):
        nxt: dict[Vertex, set[Fraction]] = {}
        for k in range(n + 1):
            v = Vertex(n, k)
            seen: set[Fraction] = set()
            for e in incoming_edges(v, orientation):
                w = spec.weighting.weight(e)
                seen.update(x * w for x in values[e.source])
            nxt[v] = seen
            if len(seen) > 1:
                report.violations.append(Violation(n, k, sorted(seen)))
        values = nxt
    return report


def check_consistency(spec: MeasureSpec, depth: int) -> CheckReport:
    """Each cylinder's measure equals the sum over its one-edge extensions,
    and total mass is 1 at every level.

    Zero-measure cylinders are not expanded (their extensions are all zero).
    Violations use column -1 for a failed level total.
    """
    orientation = spec.orientation
    report = CheckReport(spec.describe(), depth, "consistency")
    frontier: list[tuple[Cylinder, Fraction]] = [(Cylinder((), orientation), Fraction(1))]
    for n in range(depth):
        if len(frontier) > 10 ** 6:
            raise ValueError(f"too many positive cylinders at level {n}; lower the depth")
        nxt = []
        for c, mass in frontier:
            children = []
            for e in outgoing_edges(c.terminal, orientation):
                w = spec.weighting.weight(e)
                if w:
                    children.append((c.extend(e), mass * w))
            if sum(m for _, m in children) != mass:
                v = c.terminal
                report.violations.append(Violation(v.level, v.column, [mass, sum(m for _, m in children)]))
            nxt.extend(children)
        frontier = nxt
        total = sum(m for _, m in frontier)
        if total != 1:
            report.violations.append(Violation(n + 1, -1, [total]))
    return report


# -- sampling --------------------------------------------------------------

def _choose(rng: random.Random, weights: Sequence[Fraction]) -> int:
    """Exact draw of an index with the given rational probabilities."""
    den = math.lcm(*(w.denominator for w in weights))
    u = rng.randrange(den)
    acc = 0
    for i, w in enumerate(weights):
        acc += w.numerator * (den // w.denominator)
        if u < acc:
            return i
    raise AssertionError("weights do not sum to one")


def _sample_with(rng: random.Random, spec: MeasureSpec, length: int) -> Cylinder:
    edges: list[Edge] = []
    v = ROOT
    for _ in range(length):
        out = outgoing_edges(v, spec.orientation)
        e = out[_choose(rng, spec.weighting.weights_at(v))]
        edges.append(e)
        v = e.target
    return Cylinder(tuple(edges), spec.orientation)


def sample_path(spec: MeasureSpec, length: int, seed: int) -> Cylinder:
    return _sample_with(random.Random(seed), spec, length)


def sample_paths(spec: MeasureSpec, length: int, count: int, seed: int) -> Iterator[Cylinder]:
    rng = random.Random(seed)
    for _ in range(count):
        yield _sample_with(rng, spec, length)


def sample_permutation(spec: MeasureSpec, m: int, seed: int) -> Permutation:
    return path_to_perm(sample_path(spec, m - 1, seed))


def sample_permutations(spec: MeasureSpec, m: int, count: int, seed: int) -> Iterator[Permutation]:
    for c in sample_paths(spec, m - 1, count, seed):
        yield path_to_perm(c)


@dataclass
class ChiSquareResult:
    statistic: float
    dof: int
    p_value: float
    counts: dict

    def passed(self, significance: float) -> bool:
        return self.p_value >= significance


def permutation_chi_square(spec: MeasureSpec, m: int, count: int, seed: int) -> ChiSquareResult:
    """Goodness of fit of sampled permutations of {1..m} against the exact cylinder measures."""
    from itertools import permutations

    from scipy.stats import chisquare

    from .codec import perm_to_path

    perms = list(permutations(range(1, m + 1)))
    counts = dict.fromkeys(perms, 0)
    for p in sample_permutations(spec, m, count, seed):
        counts[p] += 1
    exact = {p: cylinder_measure(spec, perm_to_path(p)) for p in perms}
    support = [p for p in perms if exact[p] > 0]
    if any(counts[p] for p in perms if exact[p] == 0):
        return ChiSquareResult(math.inf, len(support) - 1, 0.0, counts)
    if len(support) < 2:
        return ChiSquareResult(0.0, 0, 1.0, counts)
    expected = [float(exact[p]) * count for p in support]
    observed = [counts[p] for p in support]
    res = chisquare(observed, expected)
    return ChiSquareResult(float(res.statistic), len(support) - 1, float(res.pvalue), counts)


# -- reinforced walks ------------------------------------------------------

class WalkMode(enum.Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"


@dataclass
class WalkTrace:
    mode: WalkMode
    seed: int
    choices: list[str]
    columns: list[int]

    @property
    def steps(self) -> int:
        return len(self.choices)

    @property
    def final_fraction(self) -> float:
        return self.columns[-1] / self.steps if self.steps else 0.0

    def summary(self) -> dict:
        a = self.columns[-1] if self.columns else 0
        return {
            "mode": self.mode.value,
            "seed": self.seed,
            "steps": self.steps,
            "loop_A": a,
            "loop_B": self.steps - a,
            "fraction_A": self.final_fraction,
        }

    def to_csv(self) -> str:
        lines = ["step,choice,k_n"]
        for i, (c, k) in enumerate(zip(self.choices, self.columns), start=1):
            lines.append(f"{i},{c},{k}")
        return "\n".join(lines) + "\n"


def step_probabilities(n: int, k: int, mode: WalkMode) -> tuple[Fraction, Fraction]:
    """(P(loop B), P(loop A)) at (n, k); loop A is the right turn, so k counts A choices."""
    orientation = Orientation.STANDARD if mode is WalkMode.NEGATIVE else Orientation.REVERSE
    v = Vertex(n, k)
    left = bundle_size(v, Turn.LEFT, orientation)
    right = bundle_size(v, Turn.RIGHT, orientation)
    return Fraction(left, n + 2), Fraction(right, n + 2)


def reinforced_walk(steps: int, mode: WalkMode, seed: int) -> WalkTrace:
    """Two-loop walk driven by uniform edge choice on the Euler graph.

    NEGATIVE uses the standard graph (a loop gets less likely the more it has
    been used), POSITIVE the reverse graph (more likely).
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = random.Random(seed)
    choices: list[str] = []
    columns: list[int] = []
    k = 0
    for n in range(steps):
        p_b, _ = step_probabilities(n, k, mode)
        # p_b has denominator dividing n+2, so one integer draw decides the step
        if rng.randrange(n + 2) < p_b * (n + 2):
            choices.append("B")
        else:
            choices.append("A")
            k += 1
        columns.append(k)
    return WalkTrace(mode, seed, choices, columns)
