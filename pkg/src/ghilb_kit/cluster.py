"""G-clusters: verification, torus-fixed enumeration, tau, and orbit clusters.

A G-cluster is a finite subscheme of affine n-space whose function algebra
carries every character of the acting abelian group exactly once (the regular
representation).  Three presentations are supported:

* MonomialInS: a monomial ideal in the full polynomial ring, checked through
  its staircase.
* SubspaceOfCoinv: a row span inside the coinvariant algebra, checked through
  linear algebra plus the ideal-closure test.
* OrbitIdeal: the reduced orbit of an explicit point with cyclotomic
  coordinates; a cluster exactly when the orbit is free.

The map tau sends a cluster to the point of the quotient space it sits over,
read off as the scalars the invariant generators reduce to modulo the
cluster ideal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from ghilb_kit.cyclotomic import CyclotomicNumber, character_value, embed_to_conductor
from ghilb_kit.exact_linalg import (
    kernel_basis_rows,
    reduce_vector,
    row_space_contains,
    rref_rows,
)
from ghilb_kit.group_rep import (
    ActionData,
    Character,
    is_regular_representation,
    weight_of_monomial,
)
from ghilb_kit.monomial_algebra import (
    CoinvariantAlgebra,
    Monomial,
    MonomialIdeal,
    coinvariant_algebra,
    invariant_generators,
    quotient_staircase,
)

Scalar = Union[Fraction, CyclotomicNumber]


class IntegrityError(RuntimeError):
    """An internal consistency check failed (signals a non-cluster input)."""


@dataclass(frozen=True)
class ClusterReport:
    """Outcome of verify_cluster."""

    is_cluster: bool
    quotient_dim: Optional[int]
    characters: Optional[tuple[Character, ...]]
    failure_reason: Optional[str]


@dataclass(frozen=True)
class QuotientPoint:
    """Values of the invariant generators at the support of a cluster."""

    generators: tuple[Monomial, ...]
    values: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.generators) != len(self.values):
            raise ValueError("one value per invariant generator is required")


@dataclass(frozen=True)
class FreenessReport:
    """Freeness of an orbit, decided two independent ways."""

    orbit_size: int
    group_order: int
    free_by_orbit_size: bool
    free_by_trace: bool
    criteria_agree: bool
    is_free: bool
    stabilizer: tuple[tuple[int, ...], ...]
    fixed_point_counts: tuple[tuple[tuple[int, ...], int], ...]


@dataclass(frozen=True)
class GCluster:
    """A G-cluster in one of the three supported presentations.

    kind is "monomial", "subspace", or "orbit"; exactly the matching payload
    field is set.  quotient_dim and characters cache the quotient data.
    """

    kind: str
    action: ActionData
    ideal: Optional[MonomialIdeal] = None
    staircase: Optional[tuple[Monomial, ...]] = None
    rows: Optional[tuple[tuple[Scalar, ...], ...]] = None
    conductor: Optional[int] = None
    points: Optional[tuple[tuple[CyclotomicNumber, ...], ...]] = None
    quotient_dim: Optional[int] = None
    characters: Optional[tuple[Character, ...]] = None

    def __post_init__(self) -> None:
        payload = {"monomial": self.ideal, "subspace": self.rows, "orbit": self.points}
        if self.kind not in payload:
            raise ValueError(f"unknown cluster kind {self.kind!r}")
        if payload[self.kind] is None:
            raise ValueError(f"cluster of kind {self.kind!r} is missing its payload")


def _field_context(rows):
    """Common exact field for a row matrix: rationals or one cyclotomic field."""
    conductor = 1
    cyclo = False
    for row in rows:
        for e in row:
            if isinstance(e, CyclotomicNumber):
                cyclo = True
                conductor = math.lcm(conductor, e.conductor)
    if cyclo:
        zero = CyclotomicNumber.zero(conductor)
        one = CyclotomicNumber.one(conductor)

        def coerce(e):
            if isinstance(e, CyclotomicNumber):
                return embed_to_conductor(e, conductor)
            return CyclotomicNumber.from_rational(Fraction(e), conductor)

    else:
        zero, one = Fraction(0), Fraction(1)
        coerce = Fraction
    return zero, one, [[coerce(e) for e in row] for row in rows]


def is_ideal_subspace(coinv: CoinvariantAlgebra, subspace) -> bool:
    """Whether a row span inside the coinvariant algebra is an ideal.

    Returns true iff every product of a basis monomial with a spanning row
    stays inside the span.  Only products by the variables are formed: the
    variables generate the algebra, so closure under them is equivalent to
    closure under every basis monomial.
    """
    rows = [list(r) for r in subspace]
    for r in rows:
        if len(r) != coinv.dim:
            raise ValueError(f"subspace rows must have {coinv.dim} columns")
    zero, one, rows = _field_context(rows)
    rref, pivots = rref_rows(rows, zero, one)
    for var in coinv.variables():
        for row in rref:
            product = coinv.monomial_times_vector(var, row)
            if not row_space_contains(rref, pivots, product):
                return False
    return True


def _monomial_report(action: ActionData, ideal: MonomialIdeal, cap: Optional[int]):
    order = action.group.order
    staircase = quotient_staircase(ideal, cap if cap is not None else 4 * order)
    if staircase is None:
        return ClusterReport(False, None, None, "quotient not finite"), None
    chars = tuple(sorted(weight_of_monomial(action, m.exponents) for m in staircase))
    dim = len(staircase)
    if dim != order:
        return ClusterReport(False, dim, chars, f"dimension {dim} ≠ {order}"), staircase
    if not is_regular_representation(action.group, chars):
        reason = "character multiset is not the regular representation"
        return ClusterReport(False, dim, chars, reason), staircase
    return ClusterReport(True, dim, chars, None), staircase


def _subspace_report(action: ActionData, coinv: CoinvariantAlgebra, rows) -> ClusterReport:
    rows = [list(r) for r in rows]
    for r in rows:
        if len(r) != coinv.dim:
            raise ValueError(f"subspace rows must have {coinv.dim} columns")
    order = action.group.order
    zero, one, rows = _field_context(rows)
    rref, pivots = rref_rows(rows, zero, one)
    dim = coinv.dim - len(rref)
    graded = True
    try:
        for row in rref:
            coinv.vector_weight(row)
    except ValueError:
        graded = False
    chars: Optional[tuple[Character, ...]] = None
    if graded:
        pivot_set = set(pivots)
        chars = tuple(sorted(w for i, w in enumerate(coinv.weights) if i not in pivot_set))
    if dim != order:
        return ClusterReport(False, dim, chars, f"dimension {dim} ≠ {order}")
    if not graded:
        return ClusterReport(False, dim, None, "subspace is not weight-graded")
    if not is_regular_representation(action.group, chars):
        return ClusterReport(False, dim, chars, "character multiset is not the regular representation")
    if not is_ideal_subspace(coinv, rref):
        return ClusterReport(False, dim, chars, "subspace fails the ideal-closure test")
    return ClusterReport(True, dim, chars, None)


def _orbit_report(action: ActionData, points, conductor: int) -> ClusterReport:
    order = action.group.order
    dim = len(points)
    chars = _orbit_characters(action, points, conductor)
    if dim != order:
        return ClusterReport(False, dim, chars, f"dimension {dim} ≠ {order}")
    if not is_regular_representation(action.group, chars):
        return ClusterReport(False, dim, chars, "character multiset is not the regular representation")
    return ClusterReport(True, dim, chars, None)


def verify_cluster(action: ActionData, target, cap: Optional[int] = None,
                   coinv: Optional[CoinvariantAlgebra] = None) -> ClusterReport:
    """Check the G-cluster conditions for an ideal-like input.

    Accepts a MonomialIdeal (checked in the full polynomial ring through its
    staircase), a matrix of rows spanning a subspace of the coinvariant
    algebra, or a GCluster of any kind.  A non-finite quotient is reported as
    a failure, not raised.
    """
    if isinstance(target, GCluster):
        if target.kind == "monomial":
            return _monomial_report(action, target.ideal, cap)[0]
        if target.kind == "subspace":
            return _subspace_report(action, coinv or coinvariant_algebra(action), target.rows)
        return _orbit_report(action, target.points, target.conductor)
    if isinstance(target, MonomialIdeal):
        return _monomial_report(action, target, cap)[0]
    return _subspace_report(action, coinv or coinvariant_algebra(action), target)


def monomial_cluster(action: ActionData, ideal, cap: Optional[int] = None) -> GCluster:
    """Build a verified monomial-ideal cluster; raises when it is not one."""
    if not isinstance(ideal, MonomialIdeal):
        ideal = MonomialIdeal(action.num_variables, tuple(ideal))
    report, staircase = _monomial_report(action, ideal, cap)
    if not report.is_cluster:
        raise ValueError(f"not a G-cluster: {report.failure_reason}")
    return GCluster(
        kind="monomial",
        action=action,
        ideal=ideal,
        staircase=tuple(staircase),
        quotient_dim=report.quotient_dim,
        characters=report.characters,
    )


def subspace_cluster(coinv: CoinvariantAlgebra, rows) -> GCluster:
    """Build a verified subspace cluster from spanning rows; raises otherwise."""
    report = _subspace_report(coinv.action, coinv, rows)
    if not report.is_cluster:
        raise ValueError(f"not a G-cluster: {report.failure_reason}")
    zero, one, coerced = _field_context([list(r) for r in rows])
    rref, _ = rref_rows(coerced, zero, one)
    return GCluster(
        kind="subspace",
        action=coinv.action,
        rows=tuple(tuple(r) for r in rref),
        quotient_dim=report.quotient_dim,
        characters=report.characters,
    )


def enumerate_torus_fixed_clusters(action: ActionData) -> list[GCluster]:
    """All monomial G-clusters supported at the origin, canonically sorted.

    The staircase of such a cluster avoids every invariant monomial, so it is
    a downward-closed subset of the coinvariant basis hitting each character
    exactly once.  The search extends staircases in ascending graded-lex
    order, which visits every staircase exactly once; output is sorted by the
    graded-lex keys of the minimal generator lists.
    """
    coinv = coinvariant_algebra(action)
    basis = coinv.basis
    weights = coinv.weights
    order = action.group.order
    num_vars = action.num_variables

    suffix: list[frozenset] = [frozenset()] * (len(basis) + 1)
    for i in range(len(basis) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | {weights[i]}

    all_chars = frozenset(action.group.characters())
    staircases: list[list[Monomial]] = []
    chosen: list[Monomial] = []
    chosen_set: set[Monomial] = set()
    used: set[Character] = set()

    def closed_under_division(m: Monomial) -> bool:
        for i, a in enumerate(m.exponents):
            if a:
                down = list(m.exponents)
                down[i] -= 1
                if Monomial(tuple(down)) not in chosen_set:
                    return False
        return True

    def extend(start: int) -> None:
        if len(chosen) == order:
            staircases.append(list(chosen))
            return
        if not (all_chars - used) <= suffix[start]:
            return
        for idx in range(start, len(basis)):
            m = basis[idx]
            if weights[idx] in used or not closed_under_division(m):
                continue
            chosen.append(m)
            chosen_set.add(m)
            used.add(weights[idx])
            extend(idx + 1)
            chosen.pop()
            chosen_set.remove(m)
            used.remove(weights[idx])

    extend(0)

    variables = coinv.variables()
    clusters = []
    for stair in staircases:
        stair_set = set(stair)
        gen_cands = set()
        for m in stair:
            for v in variables:
                gen_cands.add(m * v)
        gens = []
        for m in sorted(gen_cands, key=lambda m: m.grlex_key):
            if m in stair_set:
                continue
            ok = True
            for i, a in enumerate(m.exponents):
                if a:
                    down = list(m.exponents)
                    down[i] -= 1
                    if Monomial(tuple(down)) not in stair_set:
                        ok = False
                        break
            if ok:
                gens.append(m)
        ideal = MonomialIdeal(num_vars, tuple(gens))
        clusters.append(
            GCluster(
                kind="monomial",
                action=action,
                ideal=ideal,
                staircase=tuple(stair),
                quotient_dim=order,
                characters=tuple(sorted(weight_of_monomial(action, m.exponents) for m in stair)),
            )
        )
    clusters.sort(key=lambda c: tuple(g.grlex_key for g in c.ideal.min_gens))
    return clusters


def subspace_rows_of_monomial_cluster(coinv: CoinvariantAlgebra, cluster) -> tuple[tuple[Fraction, ...], ...]:
    """Indicator rows of the image of a monomial cluster ideal in S-bar.

    The rows are the unit vectors of the basis monomials lying in the ideal;
    they are already in reduced echelon form.
    """
    ideal = cluster.ideal if isinstance(cluster, GCluster) else cluster
    rows = []
    for i, m in enumerate(coinv.basis):
        if ideal.contains(m):
            row = [Fraction(0)] * coinv.dim
            row[i] = Fraction(1)
            rows.append(tuple(row))
    return tuple(rows)


def invariant_relation_exponents(gens: Sequence[Monomial]) -> list[tuple[int, ...]]:
    """Integer exponent vectors of the multiplicative relations among monomials.

    Each returned vector c satisfies sum_j c_j * exponents(g_j) = 0, so any
    point values of the g_j must satisfy prod v_j^(c_j positive part) =
    prod v_j^(c_j negative part).
    """
    gens = list(gens)
    if not gens:
        return []
    n = gens[0].num_vars
    rows = [[Fraction(g.exponents[i]) for g in gens] for i in range(n)]
    relations = []
    for vec in kernel_basis_rows(rows, len(gens)):
        denom = math.lcm(*(f.denominator for f in vec))
        ints = [int(f * denom) for f in vec]
        g = math.gcd(*ints)
        if g:
            ints = [a // g for a in ints]
        lead = next((a for a in ints if a), 0)
        if lead < 0:
            ints = [-a for a in ints]
        relations.append(tuple(ints))
    return relations


def satisfies_invariant_relations(gens: Sequence[Monomial], values: Sequence[Scalar]) -> bool:
    """Whether candidate tau values satisfy every relation among the generators."""
    for relation in invariant_relation_exponents(gens):
        lhs, rhs = 1, 1
        for value, c in zip(values, relation):
            if c > 0:
                lhs = lhs * value ** c
            elif c < 0:
                rhs = rhs * value ** (-c)
        if lhs != rhs:
            return False
    return True


def _evaluate(m: Monomial, point, one: CyclotomicNumber) -> CyclotomicNumber:
    result = one
    for coord, a in zip(point, m.exponents):
        if a:
            result = result * coord ** a
    return result


def _group_scalars(action: ActionData, g, conductor: int) -> tuple[CyclotomicNumber, ...]:
    return tuple(
        embed_to_conductor(character_value(action.group, g, w), conductor)
        for w in action.weights
    )


def _orbit_characters(action: ActionData, points, conductor: int) -> tuple[Character, ...]:
    """Character multiset of the functions on an orbit, via fixed-point counts."""
    group = action.group
    m = group.exponent
    counts = {}
    for g in group.elements():
        scalars = _group_scalars(action, g, conductor)
        fixed = 0
        for p in points:
            if all(s * c == c for s, c in zip(scalars, p)):
                fixed += 1
        counts[g] = fixed
    chars = []
    for chi in group.characters():
        total = CyclotomicNumber.zero(m)
        for g, fixed in counts.items():
            if fixed:
                neg = tuple((-gi) % d for gi, d in zip(g, group.elementary_divisors))
                total = total + fixed * character_value(group, neg, chi)
        value = total / group.order
        if not value.is_rational() or value.rational_value().denominator != 1:
            raise IntegrityError("orbit character multiplicity is not an integer")
        chars.extend([chi] * int(value.rational_value()))
    if len(chars) != len(points):
        raise IntegrityError("orbit character multiplicities do not sum to the orbit size")
    return tuple(sorted(chars))


def _coerce_point(action: ActionData, point) -> tuple[int, tuple[CyclotomicNumber, ...]]:
    coords = list(point)
    if len(coords) != action.num_variables:
        raise ValueError(f"point must have {action.num_variables} coordinates")
    conductor = action.group.exponent
    for c in coords:
        if isinstance(c, CyclotomicNumber):
            conductor = math.lcm(conductor, c.conductor)
    coerced = tuple(
        embed_to_conductor(c, conductor)
        if isinstance(c, CyclotomicNumber)
        else CyclotomicNumber.from_rational(Fraction(c), conductor)
        for c in coords
    )
    return conductor, coerced


def orbit_cluster(action: ActionData, point) -> tuple[GCluster, FreenessReport]:
    """The orbit of a point as a cluster candidate, plus a freeness report.

    Freeness is decided by orbit cardinality and, independently, by the trace
    criterion (no non-identity element fixes an orbit point); the two must
    agree and both are reported.  The evaluation-kernel rank certifies the
    quotient dimension.
    """
    group = action.group
    order = group.order
    conductor, base = _coerce_point(action, point)
    one = CyclotomicNumber.one(conductor)

    seen = {}
    stabilizer = []
    for g in group.elements():
        scalars = _group_scalars(action, g, conductor)
        image = tuple(s * c for s, c in zip(scalars, base))
        seen[tuple(c.coeffs for c in image)] = image
        if image == base:
            stabilizer.append(g)
    points = tuple(seen[k] for k in sorted(seen))

    counts = []
    for g in group.elements():
        scalars = _group_scalars(action, g, conductor)
        fixed = sum(
            1 for p in points if all(s * c == c for s, c in zip(scalars, p))
        )
        counts.append((g, fixed))

    size = len(points)
    identity = group.identity
    free_by_size = size == order
    free_by_trace = all(fixed == 0 for g, fixed in counts if g != identity)
    report = FreenessReport(
        orbit_size=size,
        group_order=order,
        free_by_orbit_size=free_by_size,
        free_by_trace=free_by_trace,
        criteria_agree=free_by_size == free_by_trace,
        is_free=free_by_size and free_by_trace,
        stabilizer=tuple(stabilizer),
        fixed_point_counts=tuple(counts),
    )

    monomials, kernel = evaluation_kernel(action, points, conductor)
    rank = len(monomials) - len(kernel)
    if rank != size:
        raise IntegrityError("evaluation rank does not match the orbit size")

    cluster = GCluster(
        kind="orbit",
        action=action,
        conductor=conductor,
        points=points,
        quotient_dim=size,
        characters=_orbit_characters(action, points, conductor),
    )
    return cluster, report


def evaluation_kernel(action: ActionData, points_or_cluster, conductor: Optional[int] = None,
                      cap: Optional[int] = None):
    """Monomial list and kernel rows of the evaluation map at orbit points.

    The kernel is the linear span, inside the monomials of per-variable degree
    at most the cap, of the polynomials vanishing on the points.  The cap
    starts at |G|-1 and doubles until the evaluation rank stabilizes across a
    full step, certifying that the kernel cuts out exactly the point set.
    """
    if isinstance(points_or_cluster, GCluster):
        points = points_or_cluster.points
        conductor = points_or_cluster.conductor
    else:
        points = tuple(points_or_cluster)
        if conductor is None:
            conductor = math.lcm(
                action.group.exponent, *(c.conductor for p in points for c in p)
            )
    one = CyclotomicNumber.one(conductor)
    zero = CyclotomicNumber.zero(conductor)
    n = action.num_variables

    cap = cap if cap is not None else max(action.group.order - 1, 0)
    prev_rank = -1
    while True:
        monomials = [
            Monomial(exps)
            for exps in itertools.product(range(cap + 1), repeat=n)
        ]
        monomials.sort(key=lambda m: m.grlex_key)
        rows = [[_evaluate(m, p, one) for m in monomials] for p in points]
        rref, _ = rref_rows(rows, zero, one)
        rank = len(rref)
        if rank == len(points) or rank == prev_rank:
            kernel = kernel_basis_rows(rows, len(monomials), zero, one)
            return monomials, kernel
        prev_rank = rank
        cap = max(2 * cap, 1)


def tau_support(action: ActionData, cluster, coinv: Optional[CoinvariantAlgebra] = None) -> QuotientPoint:
    """The point of the quotient space supporting a verified cluster.

    Each invariant generator must reduce to a scalar modulo the cluster ideal
    (the trivial character appears once in the quotient, so its graded piece
    is the constants); anything else raises IntegrityError.
    """
    gens = tuple(coinv.invariant_gens) if coinv is not None else tuple(invariant_generators(action))

    if isinstance(cluster, GCluster) and cluster.kind == "orbit":
        one = CyclotomicNumber.one(cluster.conductor)
        values = []
        for g in gens:
            vals = [_evaluate(g, p, one) for p in cluster.points]
            if any(v != vals[0] for v in vals[1:]):
                raise IntegrityError(
                    f"invariant generator {g.to_text()} is not constant on the orbit"
                )
            values.append(vals[0])
    elif isinstance(cluster, GCluster) and cluster.kind == "subspace":
        # invariant generators already vanish in the coinvariant algebra
        values = [Fraction(0)] * len(gens)
    else:
        ideal = cluster.ideal if isinstance(cluster, GCluster) else cluster
        if not isinstance(ideal, MonomialIdeal):
            raise TypeError("tau_support expects a GCluster or a MonomialIdeal")
        values = []
        for g in gens:
            if not ideal.contains(g):
                raise IntegrityError(
                    f"invariant generator {g.to_text()} does not reduce to a scalar"
                )
            values.append(Fraction(0))

    if not satisfies_invariant_relations(gens, values):
        raise IntegrityError("tau values violate a relation among the invariant generators")
    return QuotientPoint(gens, tuple(values))
