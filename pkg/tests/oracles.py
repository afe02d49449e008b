"""Independent reference implementations used to cross-check the library.

Everything here is written from scratch against the definitions: plain
Gaussian elimination, exhaustive staircase search, and dense brute-force
linear systems for the Hom spaces.  Only data containers are imported from
the package; no computational routine is shared.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from ghilb_kit.group_rep import weight_of_monomial
from ghilb_kit.monomial_algebra import Monomial


# --- dense rational elimination ----------------------------------------


def oracle_rref(rows):
    """Textbook forward elimination + back substitution over Fraction."""
    mat = [[Fraction(e) for e in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = Fraction(1) / mat[r][c]
        mat[r] = [e * inv for e in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def oracle_rank(rows) -> int:
    return len(oracle_rref(rows)[0])


def oracle_contains(rows, vec) -> bool:
    """Membership of vec in the row space, by rank comparison."""
    base = oracle_rank(rows)
    return oracle_rank(list(rows) + [list(vec)]) == base


def oracle_same_rowspace(rows_a, rows_b) -> bool:
    return all(oracle_contains(rows_b, v) for v in rows_a) and \
        all(oracle_contains(rows_a, v) for v in rows_b)


def oracle_solve(rows, rhs):
    """Any solution of rows*x = rhs, or None; augmented elimination."""
    if not rows:
        return None if any(rhs) else []
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = oracle_rref(aug)
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
        x[p] = row[ncols]
    return x


# --- exhaustive staircase search ----------------------------------------


def oracle_staircases(action, basis):
    """All G-cluster staircases inside the coinvariant basis, by brute force.

    Checks every |G|-subset of the basis for downward closure (division by
    one variable stays inside) and the one-monomial-per-character property.
    """
    order = action.group.order
    basis_set = set(basis)
    results = set()
    for combo in itertools.combinations(basis, order):
        chars = [weight_of_monomial(action, m.exponents) for m in combo]
        if len(set(chars)) != order:
            continue
        chosen = set(combo)
        ok = True
        for m in combo:
            for i, e in enumerate(m.exponents):
                if e:
                    down = list(m.exponents)
                    down[i] -= 1
                    if Monomial(tuple(down)) not in chosen:
                        ok = False
                        break
            if not ok:
                break
        if ok and chosen <= basis_set:
            results.add(frozenset(combo))
    return results


# --- brute-force Hom spaces ----------------------------------------------


def oracle_tangent_dim(action, ideal, staircase) -> int:
    """dim Hom^G_S(I, S/I) by solving over all generator assignments.

    Unknowns: one per (generator, staircase monomial) pair with no weight
    filtering.  Equations: weight mismatches forced to zero, plus every
    pairwise lcm relation expanded against the staircase with products
    reduced through the ideal.
    """
    gens = list(ideal.min_gens)
    stair = list(staircase)
    stair_pos = {m: t for t, m in enumerate(stair)}
    nunk = len(gens) * len(stair)

    def unk(k: int, t: int) -> int:
        return k * len(stair) + t

    equations = []
    for k, g in enumerate(gens):
        wg = weight_of_monomial(action, g.exponents)
        for t, m in enumerate(stair):
            if weight_of_monomial(action, m.exponents) != wg:
                row = [Fraction(0)] * nunk
                row[unk(k, t)] = Fraction(1)
                equations.append(row)

    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            lcm_ij = gens[i].lcm(gens[j])
            u_i = lcm_ij.divide(gens[i])
            u_j = lcm_ij.divide(gens[j])
            per_target = {}
            for (k, u, sign) in ((i, u_i, Fraction(1)), (j, u_j, Fraction(-1))):
                for t, m in enumerate(stair):
                    prod = u * m
                    if ideal.contains(prod):
                        continue
                    target = stair_pos[prod]
                    row = per_target.setdefault(target, [Fraction(0)] * nunk)
                    row[unk(k, t)] += sign
            equations.extend(per_target.values())

    return nunk - oracle_rank(equations)


def _mult_monomial_vector(coinv, m, vec):
    """Independent multiplication in the coinvariant algebra basis."""
    pos = {b: i for i, b in enumerate(coinv.basis)}
    out = [Fraction(0)] * coinv.dim
    for i, c in enumerate(vec):
        if c:
            k = pos.get(m * coinv.basis[i])
            if k is not None:
                out[k] += c
    return out


def oracle_relative_tangent_dim(coinv, rows) -> int:
    """dim Hom^G_Sbar(Ibar, Sbar/Ibar) with all images as unknowns.

    Uses its own elimination to present the quotient, forces weight
    compatibility by equations, and imposes phi(x*v) = x*phi(v) for every
    variable and every spanning row, solving the coefficients of x*v in the
    row basis by an augmented solve.
    """
    red, pivots = oracle_rref(rows)
    qcols = [i for i in range(coinv.dim) if i not in set(pivots)]
    nrows, nq = len(red), len(qcols)
    nunk = nrows * nq

    def unk(j: int, c: int) -> int:
        return j * nq + c

    def decompose(vec):
        """Unique (lam, rho) with vec = sum lam_l*red[l] + sum rho_c*e_qcols[c]."""
        columns = [list(r) for r in red]
        for q in qcols:
            e = [Fraction(0)] * coinv.dim
            e[q] = Fraction(1)
            columns.append(e)
        matrix = [[col[i] for col in columns] for i in range(coinv.dim)]
        sol = oracle_solve(matrix, vec)
        assert sol is not None
        return sol[:nrows], sol[nrows:]

    equations = []
    row_weights = [coinv.vector_weight(r) for r in red]
    for j in range(nrows):
        for c in range(nq):
            if row_weights[j] != coinv.weights[qcols[c]]:
                row = [Fraction(0)] * nunk
                row[unk(j, c)] = Fraction(1)
                equations.append(row)

    for var in coinv.variables():
        # residues of var * (each quotient coordinate lift)
        rho_of = []
        for c in range(nq):
            lift = [Fraction(0)] * coinv.dim
            lift[qcols[c]] = Fraction(1)
            rho_of.append(decompose(_mult_monomial_vector(coinv, var, lift))[1])
        for j, r in enumerate(red):
            w = _mult_monomial_vector(coinv, var, r)
            lam, residue = decompose(w)
            assert not any(residue), "input must be an ideal"
            for c2 in range(nq):
                eq = [Fraction(0)] * nunk
                for l, coeff in enumerate(lam):
                    if coeff:
                        eq[unk(l, c2)] += coeff
                for c in range(nq):
                    if rho_of[c][c2]:
                        eq[unk(j, c)] -= rho_of[c][c2]
                if any(eq):
                    equations.append(eq)

    return nunk - oracle_rank(equations)


def oracle_strat(coinv, rows):
    """(dimension, character multiset) of Ibar/(mbar Ibar), by isotypic ranks."""
    red, _ = oracle_rref(rows)
    products = []
    for b in coinv.basis:
        if b.is_one:
            continue
        for r in red:
            p = _mult_monomial_vector(coinv, b, r)
            if any(p):
                products.append(p)
    chars = Counter()
    for chi in set(coinv.weights):
        cols = [i for i, w in enumerate(coinv.weights) if w == chi]
        upper = oracle_rank([[r[i] for i in cols] for r in red])
        lower = oracle_rank([[p[i] for i in cols] for p in products])
        if upper > lower:
            chars[chi] = upper - lower
    return sum(chars.values()), chars


def oracle_eval(m, point):
    """Evaluate a monomial at a point with plain repeated multiplication."""
    one = None
    for c in point:
        one = c - c + 1 if one is None else one
    acc = one
    for e, c in zip(m.exponents, point):
        for _ in range(e):
            acc = acc * c
    return acc
