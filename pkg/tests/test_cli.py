"""Command line interface: action text parsing, exit codes, schemas, formats."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import ABELIAN_N2_CORPUS
from ghilb_kit.cli import (
    SpecParseError,
    canonical_action_text,
    main,
    parse_action_spec,
)
from ghilb_kit.group_rep import ActionData


def run(*args, capsys=None):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


class TestParseActionSpec:
    def test_cyclic_form(self):
        a = parse_action_spec("cyclic:3:1,2")
        assert a.group.elementary_divisors == (3,)
        assert a.num_variables == 2
        assert tuple(w.components for w in a.weights) == ((1,), (2,))

    def test_weights_reduce_mod_order(self):
        a = parse_action_spec("cyclic:3:4,-1")
        assert tuple(w.components for w in a.weights) == ((1,), (2,))

    def test_trivial_group(self):
        a = parse_action_spec("cyclic:1:0,0,0")
        assert a.group.order == 1
        assert a.num_variables == 3

    def test_product_form(self):
        a = parse_action_spec("2x6 ; 1,1 | 0,5")
        assert a.group.elementary_divisors == (2, 6)
        assert tuple(w.components for w in a.weights) == ((1, 1), (0, 5))

    def test_whitespace_tolerated(self):
        assert parse_action_spec(" 2x2 ;  1,0 | 0,1 ") == \
            parse_action_spec("2x2 ; 1,0 | 0,1")

    @pytest.mark.parametrize("text,pos,fragment", [
        ("", 0, "empty"),
        ("cyclic:2", 8, "expected cyclic:<order>:<weights>"),
        ("cyclic:x:1", 7, "integer group order"),
        ("cyclic:0:1", 7, "must be positive"),
        ("cyclic:-3:1", 7, "must be positive"),
        ("cyclic:2:", 9, "integer weight"),
        ("2x1 ; 1 | 0", 2, "at least 2"),
        ("2x2 ; 1 | 0", 5, "needs 2 components"),
        ("2x2 ; a,b | 1,0", 5, "integer weight component"),
        ("2x2", 0, "expected ';'"),
    ])
    def test_errors_carry_positions(self, text, pos, fragment):
        with pytest.raises(SpecParseError) as exc:
            parse_action_spec(text)
        assert exc.value.pos == pos
        assert fragment in str(exc.value)
        assert f"position {pos}" in str(exc.value)

    def test_canonical_round_trip(self):
        for action in ABELIAN_N2_CORPUS:
            assert parse_action_spec(canonical_action_text(action)) == action

    def test_canonical_forms(self):
        assert canonical_action_text(parse_action_spec("cyclic:5:1,2")) == "cyclic:5:1,2"
        assert canonical_action_text(parse_action_spec("cyclic:1:0,0")) == "cyclic:1:0,0"
        assert canonical_action_text(parse_action_spec("2x6 ; 1,1 | 0,5")) == \
            "2x6 ; 1,1 | 0,5"


class TestExitCodes:
    def test_success(self, capsys):
        code, out, _ = run("verify", "cyclic:2:1,1", "--ideal", "x2,x1^2", capsys=capsys)
        assert code == 0
        assert json.loads(out)["is_cluster"] is True

    def test_domain_failure_not_a_cluster(self, capsys):
        code, out, _ = run("verify", "cyclic:2:1,1", "--ideal", "x,y", capsys=capsys)
        assert code == 1
        report = json.loads(out)
        assert report["is_cluster"] is False
        assert report["reason"] == "dimension 1 ≠ 2"
        assert report["tau"] is None

    def test_domain_failure_non_faithful(self, capsys):
        code, _, err = run("coinv", "cyclic:4:2,2", capsys=capsys)
        assert code == 1
        assert "faithful" in err

    def test_usage_bad_action_text(self, capsys):
        code, _, err = run("verify", "cyclic:0:1", "--ideal", "x", capsys=capsys)
        assert code == 2
        assert "position 7" in err

    def test_usage_bad_ideal(self, capsys):
        code, _, err = run("verify", "cyclic:2:1,1", "--ideal", "garbage+", capsys=capsys)
        assert code == 2
        assert "--ideal" in err

    def test_usage_bad_point(self, capsys):
        code, _, err = run("orbit", "cyclic:2:1,1", "--point", "1,oops", capsys=capsys)
        assert code == 2
        assert "--point" in err

    def test_usage_point_arity(self, capsys):
        code, _, err = run("orbit", "cyclic:2:1,1", "--point", "1,2,3", capsys=capsys)
        assert code == 2

    def test_tau_needs_exactly_one_input(self, capsys):
        code, _, err = run("tau", "cyclic:2:1,1", capsys=capsys)
        assert code == 2
        assert "exactly one" in err
        code, _, err = run("tau", "cyclic:2:1,1", "--ideal", "x2,x1^2",
                           "--point", "1,1", capsys=capsys)
        assert code == 2

    def test_bad_cap(self, capsys):
        code, _, err = run("clusters", "cyclic:2:1,1", "--cap", "0", capsys=capsys)
        assert code == 2
        assert "--cap" in err

    def test_unknown_subcommand(self, capsys):
        assert main(["nosuch", "cyclic:2:1,1"]) == 2
        capsys.readouterr()

    def test_missing_required_flag(self, capsys):
        assert main(["verify", "cyclic:2:1,1"]) == 2
        capsys.readouterr()

    def test_non_free_orbit_exits_one(self, capsys):
        code, out, _ = run("orbit", "cyclic:3:1,2", "--point", "0,0", capsys=capsys)
        assert code == 1
        report = json.loads(out)
        assert report["is_free"] is False
        assert report["reason"] == "dimension 1 ≠ 3"

    def test_tau_on_non_cluster_exits_one(self, capsys):
        code, out, _ = run("tau", "cyclic:2:1,1", "--ideal", "x1^3,x2", capsys=capsys)
        assert code == 1
        assert json.loads(out)["is_cluster"] is False


class TestReportSchemas:
    def test_cluster_report_keys(self, capsys):
        _, out, _ = run("verify", "cyclic:3:1,2", "--ideal", "x2,x1^3", capsys=capsys)
        report = json.loads(out)
        assert sorted(report) == ["characters", "generators", "is_cluster",
                                  "reason", "staircase", "tau"]
        assert report["generators"] == ["x2", "x1^3"]
        assert report["staircase"] == ["1", "x1", "x1^2"]
        assert report["characters"] == [0, 1, 2]
        assert report["tau"] == ["0", "0", "0"]
        assert report["reason"] is None

    def test_coinv_report(self, capsys):
        _, out, _ = run("coinv", "cyclic:2:1,1", capsys=capsys)
        report = json.loads(out)
        assert sorted(report) == ["action", "characters", "dimension", "group_order",
                                  "invariant_generators", "num_variables", "staircase"]
        assert report["dimension"] == 3
        assert report["staircase"] == ["1", "x2", "x1"]
        assert report["invariant_generators"] == ["x2^2", "x1*x2", "x1^2"]

    def test_clusters_is_array(self, capsys):
        _, out, _ = run("clusters", "cyclic:3:1,2", capsys=capsys)
        reports = json.loads(out)
        assert isinstance(reports, list) and len(reports) == 3
        assert [r["generators"] for r in reports] == \
            [["x2", "x1^3"], ["x1", "x2^3"], ["x2^2", "x1*x2", "x1^2"]]
        assert all(r["is_cluster"] for r in reports)

    def test_tangent_report(self, capsys):
        code, out, _ = run("tangent", "cyclic:3:1,2", "--ideal", "x1^2,x1*x2,x2^2",
                           capsys=capsys)
        assert code == 0
        report = json.loads(out)
        assert sorted(report) == ["action", "eq8", "ideal", "relative_tangent_dim",
                                  "strat_characters", "tangent_dim"]
        assert report["tangent_dim"] == 2
        assert report["relative_tangent_dim"] == 2
        assert report["strat_characters"] == [1, 2]
        assert report["eq8"] == {"injective": True, "isomorphism": True,
                                 "source_dim": 2, "target_dim": 2}

    def test_tangent_aliases_emit_same_report(self, capsys):
        outputs = []
        for sub in ("tangent", "fiber-tangent", "stratify", "eq8-check"):
            code, out, _ = run(sub, "cyclic:3:1,2", "--ideal", "x2,x1^3", capsys=capsys)
            assert code == 0
            outputs.append(out)
        assert len(set(outputs)) == 1

    def test_tangent_on_non_cluster_reports_verify(self, capsys):
        code, out, _ = run("tangent", "cyclic:3:1,2", "--ideal", "x1,x2", capsys=capsys)
        assert code == 1
        report = json.loads(out)
        assert report["is_cluster"] is False

    def test_orbit_report(self, capsys):
        code, out, _ = run("orbit", "cyclic:2:1,1", "--point", "1,1", capsys=capsys)
        assert code == 0
        report = json.loads(out)
        assert report["is_free"] and report["is_cluster"]
        assert report["free_by_orbit_size"] and report["free_by_trace"]
        assert report["criteria_agree"] is True
        assert report["orbit_size"] == 2
        assert report["stabilizer"] == [[0]]
        assert report["tau"] == ["1", "1", "1"]

    def test_tau_point_report(self, capsys):
        code, out, _ = run("tau", "cyclic:2:1,1", "--point", "2,3", capsys=capsys)
        assert code == 0
        report = json.loads(out)
        assert report["invariant_generators"] == ["x2^2", "x1*x2", "x1^2"]
        assert report["tau"] == ["9", "6", "4"]

    def test_mckay_report(self, capsys):
        code, out, _ = run("mckay", "cyclic:2:1,1", capsys=capsys)
        assert code == 0
        report = json.loads(out)
        assert report["cluster_count"] == 2
        assert report["incidence"] == [{"character": 1, "clusters": [0, 1]}]
        assert report["all_nontrivial_covered"] is True
        assert report["missing"] == []

    def test_mckay_z3(self, capsys):
        _, out, _ = run("mckay", "cyclic:3:1,2", capsys=capsys)
        report = json.loads(out)
        incidence = {e["character"]: e["clusters"] for e in report["incidence"]}
        assert incidence == {1: [1, 2], 2: [0, 2]}
        assert [c["strat_characters"] for c in report["clusters"]] == \
            [[2], [1], [1, 2]]

    def test_product_group_characters_are_lists(self, capsys):
        _, out, _ = run("coinv", "2x2 ; 1,0 | 0,1", capsys=capsys)
        report = json.loads(out)
        assert report["characters"] == [[0, 0], [0, 1], [1, 0], [1, 1]]


class TestOutputFormats:
    def test_json_deterministic(self, capsys):
        _, first, _ = run("mckay", "cyclic:4:1,3", capsys=capsys)
        _, second, _ = run("mckay", "cyclic:4:1,3", capsys=capsys)
        assert first == second

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        _, piped, _ = run("coinv", "cyclic:3:1,2", capsys=capsys)
        target = tmp_path / "report.json"
        code, out, _ = run("coinv", "cyclic:3:1,2", "--out", str(target), capsys=capsys)
        assert code == 0 and out == ""
        assert target.read_text(encoding="utf-8") == piped

    def test_tsv_flat_report(self, capsys):
        _, out, _ = run("tangent", "cyclic:3:1,2", "--ideal", "x2,x1^3",
                        "--format", "tsv", capsys=capsys)
        lines = dict(line.split("\t", 1) for line in out.splitlines())
        assert lines["tangent_dim"] == "2"
        assert lines["eq8.isomorphism"] == "true"
        assert lines["strat_characters"] == "2"

    def test_tsv_nested_report(self, capsys):
        _, out, _ = run("mckay", "cyclic:3:1,2", "--format", "tsv", capsys=capsys)
        lines = dict(line.split("\t", 1) for line in out.splitlines())
        assert lines["cluster_count"] == "3"
        assert lines["clusters[0].generators"] == "x2,x1^3"
        assert lines["incidence[0].character"] == "1"
        assert lines["incidence[0].clusters"] == "1,2"
        assert lines["missing"] == ""

    def test_tsv_array_report(self, capsys):
        _, out, _ = run("clusters", "cyclic:2:1,1", "--format", "tsv", capsys=capsys)
        lines = dict(line.split("\t", 1) for line in out.splitlines())
        assert lines["0.generators"] == "x2,x1^2"
        assert lines["1.generators"] == "x1,x2^2"


class TestModuleInvocation:
    def test_python_dash_m(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ghilb_kit", "verify", "cyclic:2:1,1",
             "--ideal", "x2,x1^2"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["is_cluster"] is True
