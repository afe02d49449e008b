"""Monomials, monomial ideals, and the coinvariant algebra of a diagonal action.

For a finite abelian group acting diagonally on S = K[x_1,...,x_n], the ideal
generated by all invariant monomials of positive degree is a monomial ideal,
so the quotient (the coinvariant algebra S-bar) has a canonical monomial basis
and an exact multiplication table: a product of basis monomials is either
again a basis monomial or zero.  Everything here is finite combinatorics; no
Groebner machinery is used anywhere.

The canonical monomial order throughout is graded lexicographic with
x_1 > ... > x_n; sorted sequences are ascending in that order.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from ghilb_kit.group_rep import ActionData, Character, weight_of_monomial

_ALIAS_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True, order=True)
class Monomial:
    """A monomial x_1^a_1 ... x_n^a_n, stored as its exponent tuple."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(int(a) for a in self.exponents)
        if any(a < 0 for a in exps):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "exponents", exps)

    @property
    def num_vars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_one(self) -> bool:
        return not any(self.exponents)

    @property
    def grlex_key(self) -> tuple[int, tuple[int, ...]]:
        """Sort key: ascending by total degree, then by exponent tuple."""
        return (self.degree, self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if len(other.exponents) != len(self.exponents):
            raise ValueError("variable counts differ")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divide(self, other: "Monomial") -> "Monomial":
        """Exact quotient self / other; raises when other does not divide."""
        if not other.divides(self):
            raise ValueError(f"{other.to_text()} does not divide {self.to_text()}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: "Monomial") -> "Monomial":
        if len(other.exponents) != len(self.exponents):
            raise ValueError("variable counts differ")
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def to_text(self) -> str:
        """Canonical text form `x1^a1*x2^a2*...`; the unit monomial is `1`."""
        parts = []
        for i, a in enumerate(self.exponents):
            if a == 0:
                continue
            name = f"x{i + 1}"
            parts.append(name if a == 1 else f"{name}^{a}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({self.to_text()!r})"


_FACTOR_RE = re.compile(r"^(?:x(?P<idx>\d+)|(?P<alias>[xyzw]))(?:\^(?P<exp>\d+))?$")


def parse_monomial(text: str, num_vars: int) -> Monomial:
    """Parse the text form; `x`, `y`, `z`, `w` alias `x1`..`x4` when in range."""
    body = text.strip()
    if not body:
        raise ValueError("empty monomial")
    exps = [0] * num_vars
    for raw in body.split("*"):
        factor = raw.strip()
        if factor == "1":
            continue
        match = _FACTOR_RE.match(factor)
        if not match:
            raise ValueError(f"cannot parse monomial factor {factor!r}")
        if match.group("idx") is not None:
            idx = int(match.group("idx")) - 1
        else:
            idx = _ALIAS_NAMES.index(match.group("alias"))
        if not 0 <= idx < num_vars:
            raise ValueError(f"variable {factor!r} is out of range for {num_vars} variables")
        exps[idx] += int(match.group("exp") or 1)
    return Monomial(tuple(exps))


def monomials_of_degree(num_vars: int, degree: int) -> Iterator[Monomial]:
    """All monomials of the given total degree, ascending by exponent tuple."""
    if num_vars == 1:
        yield Monomial((degree,))
        return

    def rec(prefix: tuple[int, ...], vars_left: int, deg_left: int):
        if vars_left == 1:
            yield prefix + (deg_left,)
            return
        for a in range(deg_left + 1):
            yield from rec(prefix + (a,), vars_left - 1, deg_left - a)

    for exps in rec((), num_vars, degree):
        yield Monomial(exps)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators (an antichain)."""

    num_vars: int
    min_gens: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        gens = []
        for g in self.min_gens:
            m = g if isinstance(g, Monomial) else Monomial(tuple(g))
            if m.num_vars != self.num_vars:
                raise ValueError("generator has the wrong number of variables")
            gens.append(m)
        gens = sorted(set(gens), key=lambda m: m.grlex_key)
        minimal = []
        for m in gens:
            if not any(k.divides(m) for k in minimal):
                minimal.append(m)
        object.__setattr__(self, "min_gens", tuple(minimal))

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.min_gens)

    def __repr__(self) -> str:
        gens = ", ".join(g.to_text() for g in self.min_gens)
        return f"MonomialIdeal({self.num_vars}, ({gens}))"


def quotient_staircase(ideal: MonomialIdeal, cap: int) -> Optional[list[Monomial]]:
    """Monomials outside the ideal in graded-lex order, or None past the cap.

    The staircase is enumerated degree by degree; it is downward closed, so an
    empty degree level means it is exhausted.  When more than `cap` monomials
    accumulate the staircase is reported as infinite (None) without deciding
    finiteness exactly.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    found: list[Monomial] = []
    degree = 0
    while True:
        level = [m for m in monomials_of_degree(ideal.num_vars, degree) if not ideal.contains(m)]
        if not level:
            return found
        found.extend(level)
        if len(found) > cap:
            return None
        degree += 1


def invariant_generators(action: ActionData) -> list[Monomial]:
    """Minimal monomial generators of the ideal of positive-degree invariants.

    Any invariant monomial of degree > |G| contains a proper invariant
    submonomial (pigeonhole on partial weight sums along its exponent word),
    so searching total degrees 1..|G| and discarding multiples is exhaustive.
    """
    order = action.group.order
    gens: list[Monomial] = []
    for degree in range(1, order + 1):
        for m in monomials_of_degree(action.num_variables, degree):
            if any(g.divides(m) for g in gens):
                continue
            if weight_of_monomial(action, m.exponents).is_trivial:
                gens.append(m)
    return gens


def taylor_syzygies(ideal: MonomialIdeal) -> list[dict[int, tuple[int, Monomial]]]:
    """Pairwise lcm relations among the minimal generators.

    Each relation is a sparse row {i: (+1, lcm/g_i), j: (-1, lcm/g_j)} meaning
    (lcm/g_i)*e_i - (lcm/g_j)*e_j maps to zero; a module homomorphism out of
    the ideal is exactly a generator assignment annihilating every row.  The
    rows are redundant but complete.
    """
    gens = ideal.min_gens
    if not gens:
        raise ValueError("ideal has no generators")
    rows = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            l = gens[i].lcm(gens[j])
            rows.append({i: (1, l.divide(gens[i])), j: (-1, l.divide(gens[j]))})
    return rows


class CoinvariantAlgebra:
    """The quotient of S by the ideal of positive-degree invariant monomials.

    The basis consists of the monomials outside that ideal; it is finite
    because x_i^(order of weight_i) is invariant, so basis exponents live in a
    box.  Products of basis monomials multiply exactly: the product monomial
    when it stays in the basis, zero when it falls into the ideal.
    """

    def __init__(self, action: ActionData) -> None:
        if not action.is_faithful():
            raise ValueError(
                "the weights do not generate the full character group; "
                "the action is not faithful and the basis cannot carry every character"
            )
        self.action = action
        self.invariant_gens: tuple[Monomial, ...] = tuple(invariant_generators(action))
        self.ideal = MonomialIdeal(action.num_variables, self.invariant_gens)

        box = [weight_of_monomial(action, m.exponents).order() for m in _unit_monomials(action.num_variables)]
        basis = []
        for m in _box_monomials(box):
            if not self.ideal.contains(m):
                basis.append(m)
        basis.sort(key=lambda m: m.grlex_key)
        self.basis: tuple[Monomial, ...] = tuple(basis)
        self._index = {m: i for i, m in enumerate(self.basis)}
        self.weights: tuple[Character, ...] = tuple(
            weight_of_monomial(action, m.exponents) for m in self.basis
        )

        if not self.basis or not self.basis[0].is_one:
            raise AssertionError("coinvariant basis must contain the unit monomial")
        missing = [c for c in action.group.characters() if c not in set(self.weights)]
        if missing:
            raise AssertionError(f"characters missing from the basis: {missing}")

        self.mult_table: dict[tuple[int, int], Optional[int]] = {}
        for i, a in enumerate(self.basis):
            for j in range(i, len(self.basis)):
                k = self._index.get(a * self.basis[j])
                self.mult_table[(i, j)] = k
                self.mult_table[(j, i)] = k

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index_of(self, m: Monomial) -> int:
        try:
            return self._index[m]
        except KeyError:
            raise ValueError(f"{m.to_text()} is not a basis monomial") from None

    def contains_basis(self, m: Monomial) -> bool:
        return m in self._index

    def mult_index(self, i: int, j: int) -> Optional[int]:
        """Basis index of basis[i]*basis[j], or None when the product is zero."""
        return self.mult_table[(i, j)]

    def variables(self) -> list[Monomial]:
        return _unit_monomials(self.action.num_variables)

    def monomial_times_vector(self, m: Monomial, vec: list) -> list:
        """Multiply a coefficient vector over the basis by a monomial."""
        zero = vec[0] - vec[0] if vec else 0
        out = [zero] * self.dim
        for i, c in enumerate(vec):
            if c:
                k = self._index.get(m * self.basis[i])
                if k is not None:
                    out[k] = out[k] + c
        return out

    def vector_weight(self, vec: list) -> Character:
        """The common weight of the nonzero coordinates; errors if mixed or zero."""
        weight: Optional[Character] = None
        for i, c in enumerate(vec):
            if not c:
                continue
            if weight is None:
                weight = self.weights[i]
            elif weight != self.weights[i]:
                raise ValueError("vector is not weight-homogeneous")
        if weight is None:
            raise ValueError("zero vector has no weight")
        return weight

    def character_multiplicities(self) -> Counter:
        return Counter(self.weights)

    def multiplicity(self, chi: Character) -> int:
        return self.character_multiplicities()[chi]


def _unit_monomials(num_vars: int) -> list[Monomial]:
    return [
        Monomial(tuple(1 if j == i else 0 for j in range(num_vars)))
        for i in range(num_vars)
    ]


def _box_monomials(box: list[int]) -> Iterator[Monomial]:
    def rec(prefix: tuple[int, ...], i: int):
        if i == len(box):
            yield prefix
            return
        for a in range(box[i]):
            yield from rec(prefix + (a,), i + 1)

    for exps in rec((), 0):
        yield Monomial(exps)


def coinvariant_algebra(action: ActionData) -> CoinvariantAlgebra:
    """Build the coinvariant algebra of the action; see CoinvariantAlgebra."""
    return CoinvariantAlgebra(action)
