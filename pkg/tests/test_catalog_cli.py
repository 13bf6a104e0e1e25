import dataclasses
import json
import subprocess
import sys

import pytest

from semigroup_ends.catalog import (CATALOG, Expectation, RunConfig, case_names, get_case,
                                    verify_case)
from semigroup_ends.cayley import ball_from_json, build_ball
from semigroup_ends.cli import parse_spec, run_command
from semigroup_ends.models import IntegerTupleSemigroup

NXN = '{"kind":"commutative_monoid","k":2,"generators":[[1,0],[0,1]]}'


def run(argv, capsys):
    status = run_command(argv)
    out, err = capsys.readouterr()
    return status, out, err


def test_catalog_ships_the_named_cases():
    assert set(case_names()) == {"aba_monoid", "z", "nxn", "zz01", "rees", "zzn", "change_gen", "rees_index",
                                 "menger-suite", "lemma-suite"}
    for case in CATALOG.values():
        assert case.expectations
        for e in case.expectations:
            assert e.provenance in ("stated", "derived") and e.note


def test_unknown_case_and_bad_provenance():
    with pytest.raises(KeyError):
        get_case("nope")
    with pytest.raises(ValueError):
        Expectation("x", 1, "guessed")


@pytest.mark.parametrize("kwargs", [dict(horizons=(8, 8, 12)), dict(ball_cap=0), dict(radii=(4, 3)), dict(k=0)])
def test_run_config_validation(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_wrong_expectation_fails_with_diff():
    case = get_case("z")
    wrong = dataclasses.replace(case, expectations=[Expectation("classes", 3, "derived", "deliberately wrong")]
                                + case.expectations[:1])
    rep = verify_case(wrong)
    assert not rep.passed
    lines = rep.lines()
    assert lines[0] == "case z: FAIL"
    assert "DIFF classes: expected 3, observed 2" in lines[1]
    assert "ok" in lines[2]
    missing = dataclasses.replace(case, expectations=[Expectation("nonsense", 1, "derived", "x")])
    assert not verify_case(missing).passed


def test_parse_spec_examples():
    assert parse_spec(NXN) == IntegerTupleSemigroup(2, [(1, 0), (0, 1)], names="ab")
    kos = parse_spec('{"kind":"presented","rules":[["aba","b"],["bba","abb"]],"monoid":true}')
    assert kos.system.is_locally_confluent()
    with pytest.raises(ValueError, match="shortlex"):
        parse_spec('{"kind":"presented","rules":[["a","ab"]]}')
    with pytest.raises(ValueError, match="JSON"):
        parse_spec("{not json")


def test_ball_command_json(tmp_path, capsys):
    spec_file = tmp_path / "nxn.json"
    spec_file.write_text(NXN)
    status, out, _ = run(["ball", "--spec", str(spec_file), "--radius", "2", "--format", "json"], capsys)
    assert status == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 6
    assert ball_from_json(out) == build_ball(parse_spec(NXN), 2)


def test_compare_ray_with_itself(capsys):
    status, out, _ = run(["compare", "--case", "z", "period=a", "period=a"], capsys)
    assert status == 0 and out.startswith("verdict: Equivalent")


def test_usage_and_spec_errors_exit_2(capsys):
    assert run(["ball", "--radius", "2"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["ball", "--spec", '{"kind":"nope"}', "--radius", "2"], capsys)[0] == 2
    assert run(["ball", "--case", "z", "--spec", NXN, "--radius", "2"], capsys)[0] == 2
    assert run(["compare", "--case", "z", "period=q", "period=a"], capsys)[0] == 2
    assert run(["rees-index", "--case", "nxn"], capsys)[0] == 2
    assert run(["poset", "--case", "nxn", "--horizons", "8,4,12"], capsys)[0] == 2
    status, _, err = run(["ball", "--spec", '{"kind":"presented","rules":[["a","ab"]]}', "--radius", "2"], capsys)
    assert status == 2 and "rules[0]" in err


def test_every_subcommand_runs(capsys, tmp_path):
    cmds = [
        ["ball", "--case", "aba_monoid", "--radius", "3", "--format", "dot"],
        ["ball", "--case", "rees", "--radius", "2"],
        ["scc", "--case", "z", "--radius", "2", "--format", "json"],
        ["green", "--case", "zz01", "--radius", "3", "--sub", '{"coordinate":2,"values":[1]}'],
        ["rees-index", "--case", "nxn", "--sub", '{"complement":["(0,0)"]}', "--format", "json"],
        ["green-index", "--case", "zz01", "--sub", '{"coordinate":2,"values":[1]}'],
        ["rays", "--case", "z", "--max-period", "2"],
        ["rays", "--case", "aba_monoid", "--kind", "antiray", "--format", "json"],
        ["poset", "--case", "nxn", "period=a", "base=b;period=a", "period=b", "period=ab"],
        ["translate", "--case", "nxn", "--extra", "(1,1)", "--ray", "base=a;period=s", "--format", "json"],
        ["free-pair", "--case", "nxn", "--s", "(1,0)", "--t", "(0,1)"],
        ["free-pair", "--spec", '{"kind":"presented","alphabet":["a","b"],"rules":[]}', "--s", "a", "--t", "b"],
    ]
    for argv in cmds:
        status, out, err = run(argv, capsys)
        assert status == 0, (argv, err)
        assert out
    _, out, _ = run(cmds[4], capsys)
    assert json.loads(out)["index"] == 2
    _, out, _ = run(cmds[11], capsys)
    assert "distinct" in out


def test_rays_file_and_poset_json(tmp_path, capsys):
    rays = tmp_path / "rays.txt"
    rays.write_text("# rows\nperiod=a\nbase=b;period=a\n")
    status, out, _ = run(["poset", "--case", "nxn", "--rays-file", str(rays), "--format", "json"], capsys)
    assert status == 0
    doc = json.loads(out)
    assert doc["matrix"][0][1] == "FirstBelowSecond" and doc["shape"] == "chain"


def test_output_is_byte_deterministic(tmp_path, capsys):
    outs = []
    for i in range(2):
        path = tmp_path / f"poset{i}.json"
        argv = ["poset", "--case", "nxn", "--enumerate", "1", "--format", "json", "--output", str(path)]
        assert run_command(argv) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    # a fresh interpreter gives the same bytes too
    proc = subprocess.run([sys.executable, "-m", "semigroup_ends"] + argv[:-2], capture_output=True, check=True)
    assert proc.stdout == outs[0]


def test_verify_single_case_echoes_provenance(capsys):
    status, out, _ = run(["verify", "zz01"], capsys)
    assert status == 0
    assert "[stated:" in out and "[derived:" in out
    assert out.rstrip().endswith("1/1 cases passed")


def test_verify_json(capsys):
    status, out, _ = run(["verify", "menger-suite", "--format", "json", "--seed", "7"], capsys)
    assert status == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["cases"][0]["expectations"][0]["provenance"] == "derived"


@pytest.mark.slow
def test_verify_all(capsys):
    status, out, _ = run(["verify", "all"], capsys)
    assert status == 0, out
    assert f"{len(CATALOG)}/{len(CATALOG)} cases passed" in out
