"""Command-line front end.

Parses textual action specifications, dispatches the library computations,
and prints deterministic JSON or TSV reports.  Exit status: 0 on success,
1 on a domain failure (the input is well-formed but is not a cluster, not a
free orbit, and so on), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from ghilb_kit.cluster import (
    GCluster,
    IntegrityError,
    enumerate_torus_fixed_clusters,
    monomial_cluster,
    orbit_cluster,
    subspace_rows_of_monomial_cluster,
    tau_support,
    verify_cluster,
)
from ghilb_kit.cyclotomic import CyclotomicNumber, parse_cyclotomic, to_text as cyclo_text
from ghilb_kit.group_rep import ActionData, Character, FiniteAbelianGroup
from ghilb_kit.monomial_algebra import (
    MonomialIdeal,
    coinvariant_algebra,
    parse_monomial,
    quotient_staircase,
)
from ghilb_kit.tangent import eq8_map, mckay_table, relative_tangent_space, \
    stratification_rep, tangent_space


class SpecParseError(ValueError):
    """Malformed action specification, with the offending position."""

    def __init__(self, message: str, text: str, pos: int) -> None:
        super().__init__(f"bad action spec {text!r}: {message} at position {pos}")
        self.pos = pos


class UsageError(ValueError):
    """Well-formed argv with semantically unusable flag values."""


def _parse_int(token: str, text: str, pos: int, what: str) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise SpecParseError(f"expected an integer {what}, got {token.strip()!r}",
                             text, pos) from None


def parse_action_spec(text: str) -> ActionData:
    """Parse 'cyclic:r:a1,...,an' or 'd1x...xdk ; w1 | ... | wn'.

    cyclic:1:... gives the trivial group.  In the general form every divisor
    must be at least 2 and every weight lists one component per divisor.
    """
    s = text.strip()
    if not s:
        raise SpecParseError("empty spec", text, 0)
    if s.startswith("cyclic:"):
        body = s[len("cyclic:"):]
        head, sep, tail = body.partition(":")
        if not sep:
            raise SpecParseError("expected cyclic:<order>:<weights>", text, len(s))
        base = text.find(s) + len("cyclic:")
        r = _parse_int(head, text, base, "group order")
        if r < 1:
            raise SpecParseError("group order must be positive", text, base)
        group = FiniteAbelianGroup(() if r == 1 else (r,))
        weights = []
        pos = base + len(head) + 1
        for token in tail.split(","):
            a = _parse_int(token, text, pos, "weight")
            weights.append(group.character(() if r == 1 else (a,)))
            pos += len(token) + 1
        return ActionData(group, len(weights), tuple(weights))

    left, sep, right = s.partition(";")
    if not sep:
        raise SpecParseError("expected ';' between divisors and weights "
                             "(or the cyclic:<order>:<weights> form)", text, 0)
    base = text.find(s)
    divisors = []
    pos = base
    for token in left.split("x"):
        d = _parse_int(token, text, pos, "divisor")
        if d < 2:
            raise SpecParseError("every divisor must be at least 2 "
                                 "(use cyclic:1:... for the trivial group)", text, pos)
        divisors.append(d)
        pos += len(token) + 1
    group = FiniteAbelianGroup(tuple(divisors))
    weights = []
    pos = base + len(left) + 1
    for token in right.split("|"):
        comps = []
        cpos = pos
        parts = token.split(",")
        if len(parts) != len(divisors):
            raise SpecParseError(f"weight needs {len(divisors)} components, got {len(parts)}",
                                 text, pos)
        for part in parts:
            comps.append(_parse_int(part, text, cpos, "weight component"))
            cpos += len(part) + 1
        weights.append(group.character(tuple(comps)))
        pos += len(token) + 1
    return ActionData(group, len(weights), tuple(weights))


def canonical_action_text(action: ActionData) -> str:
    """Inverse of parse_action_spec on canonical output."""
    divisors = action.group.elementary_divisors
    if not divisors:
        return "cyclic:1:" + ",".join("0" for _ in action.weights)
    if len(divisors) == 1:
        return f"cyclic:{divisors[0]}:" + ",".join(str(w.components[0]) for w in action.weights)
    left = "x".join(str(d) for d in divisors)
    right = " | ".join(",".join(str(c) for c in w.components) for w in action.weights)
    return f"{left} ; {right}"


# --- report serialization ---------------------------------------------


def _scalar_json(v):
    if isinstance(v, CyclotomicNumber):
        if v.is_rational():
            return str(v.rational_value())
        return cyclo_text(v)
    return str(v)


def _character_json(chi: Character):
    if len(chi.divisors) == 1:
        return chi.components[0]
    return list(chi.components)


def _characters_json(chars) -> list:
    return [_character_json(c) for c in chars]


def render_json(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_tsv(report) -> str:
    """Flatten a JSON-style report to tab-separated key/value lines."""
    lines: list[str] = []

    def cell(value) -> str:
        if isinstance(value, list):
            return ",".join(cell(v) for v in value)
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)

    def emit(prefix: str, value) -> None:
        if isinstance(value, dict):
            for key, sub in value.items():
                emit(f"{prefix}.{key}" if prefix else key, sub)
        elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
            for i, sub in enumerate(value):
                emit(f"{prefix}[{i}]", sub)
        else:
            lines.append(f"{prefix}\t{cell(value)}")

    if isinstance(report, list):
        for i, item in enumerate(report):
            emit(str(i), item)
    else:
        emit("", report)
    return "\n".join(lines) + "\n"


def _write_report(report, args) -> None:
    text = render_json(report) if args.format == "json" else render_tsv(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- per-command report builders ---------------------------------------


def _cluster_json(action: ActionData, ideal: MonomialIdeal, report, cap: Optional[int],
                  staircase=None) -> dict:
    if staircase is None:
        staircase = quotient_staircase(ideal, cap if cap is not None else 4 * action.group.order)
    tau = None
    if report.is_cluster:
        point = tau_support(action, ideal)
        tau = [_scalar_json(v) for v in point.values]
    return {
        "generators": [g.to_text() for g in ideal.min_gens],
        "staircase": [m.to_text() for m in staircase] if staircase is not None else None,
        "characters": _characters_json(report.characters) if report.characters is not None else None,
        "tau": tau,
        "is_cluster": report.is_cluster,
        "reason": report.failure_reason,
    }


def _parse_ideal(action: ActionData, text: str) -> MonomialIdeal:
    try:
        gens = [parse_monomial(tok.strip(), action.num_variables) for tok in text.split(",")]
        return MonomialIdeal(action.num_variables, tuple(gens))
    except ValueError as exc:
        raise UsageError(f"bad --ideal value: {exc}") from None


def _parse_point(action: ActionData, text: str) -> list:
    try:
        coords = [parse_cyclotomic(tok.strip()) for tok in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --point value: {exc}") from None
    if len(coords) != action.num_variables:
        raise UsageError(f"point needs {action.num_variables} coordinates, got {len(coords)}")
    return coords


def cmd_coinv(action: ActionData, args) -> int:
    coinv = coinvariant_algebra(action)
    report = {
        "action": canonical_action_text(action),
        "group_order": action.group.order,
        "num_variables": action.num_variables,
        "invariant_generators": [g.to_text() for g in coinv.invariant_gens],
        "dimension": coinv.dim,
        "staircase": [m.to_text() for m in coinv.basis],
        "characters": _characters_json(coinv.weights),
    }
    _write_report(report, args)
    return 0


def cmd_clusters(action: ActionData, args) -> int:
    clusters = enumerate_torus_fixed_clusters(action)
    report = [
        _cluster_json(action, c.ideal, verify_cluster(action, c.ideal, args.cap),
                      args.cap, staircase=c.staircase)
        for c in clusters
    ]
    _write_report(report, args)
    return 0


def cmd_verify(action: ActionData, args) -> int:
    ideal = _parse_ideal(action, args.ideal)
    report = verify_cluster(action, ideal, args.cap)
    _write_report(_cluster_json(action, ideal, report, args.cap), args)
    return 0 if report.is_cluster else 1


def cmd_tau(action: ActionData, args) -> int:
    if (args.ideal is None) == (args.point is None):
        raise UsageError("tau needs exactly one of --ideal or --point")
    if args.ideal is not None:
        ideal = _parse_ideal(action, args.ideal)
        report = verify_cluster(action, ideal, args.cap)
        if not report.is_cluster:
            _write_report(_cluster_json(action, ideal, report, args.cap), args)
            return 1
        point = tau_support(action, ideal)
        source = {"ideal": [g.to_text() for g in ideal.min_gens]}
    else:
        coords = _parse_point(action, args.point)
        cluster, freeness = orbit_cluster(action, coords)
        if not freeness.is_free:
            report = verify_cluster(action, cluster)
            _write_report({
                "point": [_scalar_json(c) for c in coords],
                "orbit_size": freeness.orbit_size,
                "is_cluster": False,
                "reason": report.failure_reason,
            }, args)
            return 1
        point = tau_support(action, cluster)
        source = {"point": [_scalar_json(c) for c in coords]}
    report = {
        "action": canonical_action_text(action),
        **source,
        "invariant_generators": [g.to_text() for g in point.generators],
        "tau": [_scalar_json(v) for v in point.values],
    }
    _write_report(report, args)
    return 0


def cmd_orbit(action: ActionData, args) -> int:
    coords = _parse_point(action, args.point)
    cluster, freeness = orbit_cluster(action, coords)
    report_check = verify_cluster(action, cluster)
    tau = None
    if report_check.is_cluster:
        tau = [_scalar_json(v) for v in tau_support(action, cluster).values]
    report = {
        "action": canonical_action_text(action),
        "point": [_scalar_json(c) for c in coords],
        "orbit": [[_scalar_json(c) for c in p] for p in cluster.points],
        "orbit_size": freeness.orbit_size,
        "group_order": freeness.group_order,
        "free_by_orbit_size": freeness.free_by_orbit_size,
        "free_by_trace": freeness.free_by_trace,
        "criteria_agree": freeness.criteria_agree,
        "is_free": freeness.is_free,
        "stabilizer": [list(g) for g in freeness.stabilizer],
        "characters": _characters_json(report_check.characters),
        "is_cluster": report_check.is_cluster,
        "reason": report_check.failure_reason,
        "tau": tau,
    }
    _write_report(report, args)
    return 0 if freeness.is_free else 1


def cmd_tangent_report(action: ActionData, args) -> int:
    ideal = _parse_ideal(action, args.ideal)
    report = verify_cluster(action, ideal, args.cap)
    if not report.is_cluster:
        _write_report(_cluster_json(action, ideal, report, args.cap), args)
        return 1
    cluster = monomial_cluster(action, ideal, args.cap)
    coinv = coinvariant_algebra(action)
    rows = subspace_rows_of_monomial_cluster(coinv, cluster)
    tangent = tangent_space(action, cluster, args.cap)
    relative = relative_tangent_space(coinv, rows)
    strat = stratification_rep(coinv, rows)
    eq8 = eq8_map(coinv, rows)
    combined = {
        "action": canonical_action_text(action),
        "ideal": [g.to_text() for g in ideal.min_gens],
        "tangent_dim": tangent.dimension,
        "relative_tangent_dim": relative.dimension,
        "strat_characters": _characters_json(strat.characters),
        "eq8": {
            "injective": eq8.injective,
            "isomorphism": eq8.isomorphism,
            "source_dim": eq8.source_dim,
            "target_dim": eq8.target_dim,
        },
    }
    _write_report(combined, args)
    return 0


def cmd_mckay(action: ActionData, args) -> int:
    table = mckay_table(action)
    report = {
        "action": canonical_action_text(action),
        "cluster_count": len(table.clusters),
        "clusters": [
            {
                "index": i,
                "generators": [g.to_text() for g in c.ideal.min_gens],
                "strat_characters": _characters_json(table.strat_characters[i]),
            }
            for i, c in enumerate(table.clusters)
        ],
        "incidence": [
            {"character": _character_json(chi), "clusters": list(idxs)}
            for chi, idxs in table.incidence
        ],
        "all_nontrivial_covered": table.all_nontrivial_covered,
        "missing": _characters_json(table.missing),
    }
    _write_report(report, args)
    return 0


_COMMANDS = {
    "coinv": cmd_coinv,
    "clusters": cmd_clusters,
    "verify": cmd_verify,
    "tau": cmd_tau,
    "orbit": cmd_orbit,
    "tangent": cmd_tangent_report,
    "fiber-tangent": cmd_tangent_report,
    "stratify": cmd_tangent_report,
    "eq8-check": cmd_tangent_report,
    "mckay": cmd_mckay,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghilb",
        description="Exact cluster data for finite abelian diagonal actions on affine space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    helps = {
        "coinv": "invariant generators and the coinvariant-algebra staircase",
        "clusters": "enumerate all torus-fixed clusters",
        "verify": "check the cluster conditions for a monomial ideal",
        "tau": "quotient-space support of a cluster (from --ideal or --point)",
        "orbit": "orbit cluster and freeness report of a point",
        "tangent": "tangent report of a monomial cluster",
        "fiber-tangent": "tangent report of a monomial cluster",
        "stratify": "tangent report of a monomial cluster",
        "eq8-check": "tangent report of a monomial cluster",
        "mckay": "stratification characters across all torus-fixed clusters",
    }
    needs_ideal = {"verify", "tau", "tangent", "fiber-tangent", "stratify", "eq8-check"}
    ideal_required = needs_ideal - {"tau"}
    needs_point = {"tau", "orbit"}

    for name, help_text in helps.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("action",
                        help="action spec: cyclic:r:a1,...,an or 'd1x...xdk ; w1 | ... | wn'")
        sp.add_argument("--format", choices=("json", "tsv"), default="json",
                        help="output format (default json)")
        sp.add_argument("--out", default=None, help="write the report to this path")
        sp.add_argument("--cap", type=int, default=None,
                        help="staircase size cap (default 4*|G|); orbit evaluation degree seed")
        if name in needs_ideal:
            sp.add_argument("--ideal", default=None, required=name in ideal_required,
                            help='comma-separated monomial generators, e.g. "y,x^2"')
        if name in needs_point:
            sp.add_argument("--point", default=None, required=name == "orbit",
                            help='comma-separated coordinates, e.g. "1,1" or "cyclo(3): z, 2"')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.cap is not None and args.cap < 1:
        print("ghilb: error: --cap must be positive", file=sys.stderr)
        return 2
    try:
        action = parse_action_spec(args.action)
    except (SpecParseError, ValueError) as exc:
        print(f"ghilb: error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](action, args)
    except UsageError as exc:
        print(f"ghilb: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IntegrityError) as exc:
        print(f"ghilb: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
