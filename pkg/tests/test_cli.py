import json

import pytest

from maxcurves.cli import InvalidParams, RunConfig, main, parse_poly, render, run


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# -- polynomial grammar ---------------------------------------------------------

def test_parse_poly_basic():
    assert parse_poly("x^2+x+1", 5) == (1, 1, 1)
    assert parse_poly("x^2 - 1", 5) == (4, 0, 1)
    assert parse_poly("2*x^3 + x + 4", 7) == (4, 1, 0, 2)
    assert parse_poly("3x^2+2", 5) == (2, 0, 3)
    assert parse_poly("x**2+x+1", 5) == (1, 1, 1)
    assert parse_poly("7", 5) == (2,)


def test_parse_poly_rejects_garbage():
    for bad in ("", "y^2+1", "x^", "1++x", "x^2+*3"):
        with pytest.raises(InvalidParams):
            parse_poly(bad, 5)


# -- commands --------------------------------------------------------------------

def test_count_fermat(capsys):
    code, out, _ = run_cli(capsys, ["count", "--curve", "fermat", "--d", "3", "--q", "5"])
    assert code == 0
    report = json.loads(out)
    assert report["results"][0]["data"]["count"] == 36
    assert set(report) == {"config", "field", "results", "failures", "timings"}


def test_count_embeds_modulus(capsys):
    code, out, _ = run_cli(
        capsys,
        ["count", "--curve", "line", "--q", "5", "--modulus", "x^2+x+1"],
    )
    assert code == 0
    report = json.loads(out)
    assert report["field"]["modulus"] == [1, 1, 1]
    assert report["field"]["modulus_str"] == "x^2+x+1"
    assert report["results"][0]["data"]["count"] == 26


def test_maximal_negative_control_exits_one(capsys):
    code, out, _ = run_cli(capsys, ["maximal", "--curve", "fermat", "--d", "4", "--q", "5"])
    assert code == 1
    report = json.loads(out)
    assert report["results"][0]["data"]["maximal"] is False
    assert report["failures"] == ["maximal"]


def test_maximal_hermitian(capsys):
    code, out, _ = run_cli(capsys, ["maximal", "--curve", "hermitian", "--q", "5"])
    assert code == 0
    assert json.loads(out)["results"][0]["data"]["count"] == 126


def test_build_s(capsys):
    code, out, _ = run_cli(
        capsys, ["build-s", "--n", "2", "--q", "5", "--modulus", "x^2+x+1"])
    assert code == 0
    data = json.loads(out)["results"][0]["data"]
    assert data["size"] == 12 and data["t"] == 3
    assert len(data["points"]) == 12
    assert all(len(pt) == 3 and len(pt[0]) == 2 for pt in data["points"])


def test_subgroup(capsys):
    code, out, _ = run_cli(
        capsys, ["subgroup", "--n", "2", "--q", "5", "--modulus", "x^2+x+1"])
    assert code == 0
    data = json.loads(out)["results"][0]["data"]
    assert data["order"] == 12 and data["d_s"] == 3
    assert data["torsion"]["order"] == 36


def test_covering_with_cross_check(capsys):
    code, out, _ = run_cli(
        capsys, ["covering", "--n", "3", "--q", "13", "--cross-check"])
    assert code == 0
    data = json.loads(out)["results"][0]["data"]
    assert data["split_points"] == 80
    assert data["cross_check_ok"] is True


def test_verify_all_q5(capsys):
    code, out, _ = run_cli(
        capsys, ["verify-all", "--n", "2", "--q", "5", "--modulus", "x^2+x+1"])
    assert code == 0
    report = json.loads(out)
    assert report["failures"] == []
    by_name = {r["name"]: r for r in report["results"]}
    assert by_name["claim1"]["data"]["s_count"] == 12
    assert by_name["index_d_s"]["data"]["d_s"] == 3
    assert by_name["theorem"]["status"] == "pass"
    assert by_name["theorem"]["data"]["covering"]["fermat_count"] == 36
    assert by_name["triples_q11"]["status"] == "skip"
    assert by_name["negative_control"]["status"] == "pass"


def test_verify_all_q11_includes_triples(capsys):
    code, out, _ = run_cli(
        capsys, ["verify-all", "--n", "2", "--q", "11", "--modulus", "x^2+x+1"])
    assert code == 0
    report = json.loads(out)
    by_name = {r["name"]: r for r in report["results"]}
    assert by_name["triples_q11"]["status"] == "pass"
    assert by_name["claim1"]["data"]["t_count"] == 15
    assert by_name["claim2_closure"]["data"]["closure_order"] == 48


def test_verify_all_skips_group_law_for_higher_genus(capsys):
    code, out, _ = run_cli(capsys, ["verify-all", "--n", "3", "--q", "13"])
    assert code == 0
    report = json.loads(out)
    by_name = {r["name"]: r for r in report["results"]}
    for name in ("claim2_closure", "index_d_s", "torsion"):
        assert by_name[name]["status"] == "skip"
    assert by_name["theorem"]["status"] == "pass"


def test_verify_all_invalid_params_exit_two(capsys):
    code, out, err = run_cli(capsys, ["verify-all", "--n", "3", "--q", "5"])
    assert code == 2
    assert "divide" in err
    assert out == ""


def test_nonprime_power_q_exits_two(capsys):
    code, _, err = run_cli(capsys, ["count", "--curve", "line", "--q", "12"])
    assert code == 2
    assert "prime power" in err


def test_bad_modulus_exits_two(capsys):
    code, _, err = run_cli(
        capsys, ["count", "--curve", "line", "--q", "5", "--modulus", "x^2-1"])
    assert code == 2


def test_reports_are_byte_identical(capsys):
    argv = ["verify-all", "--n", "2", "--q", "5", "--modulus", "x^2+x+1"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    assert first == second


def test_threads_do_not_change_report(capsys):
    argv = ["verify-all", "--n", "2", "--q", "5", "--modulus", "x^2+x+1"]
    _, sequential, _ = run_cli(capsys, argv)
    _, threaded, _ = run_cli(capsys, argv + ["--threads", "4"])
    a, b = json.loads(sequential), json.loads(threaded)
    assert a["results"] == b["results"]
    assert a["failures"] == b["failures"]
    assert a["field"] == b["field"]


def test_timings_flag_populates_integer_milliseconds(capsys):
    code, out, _ = run_cli(
        capsys,
        ["verify-all", "--n", "2", "--q", "5", "--modulus", "x^2+x+1", "--timings"],
    )
    assert code == 0
    timings = json.loads(out)["timings"]
    assert timings and all(isinstance(v, int) for v in timings.values())


def test_text_format(capsys):
    code, out, _ = run_cli(
        capsys,
        ["verify-all", "--n", "2", "--q", "5", "--modulus", "x^2+x+1",
         "--format", "text"],
    )
    assert code == 0
    assert "all checks passed" in out
    assert "alpha^2 = -alpha - 1" in out


def test_csv_format(capsys):
    code, out, _ = run_cli(
        capsys, ["count", "--curve", "fermat", "--d", "3", "--q", "5",
                 "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "key,value"
    assert "count.count,36" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys,
        ["count", "--curve", "fermat", "--d", "3", "--q", "5",
         "--output", str(target)],
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["results"][0]["data"]["count"] == 36


def test_run_config_api():
    code, report = run(RunConfig(command="count", q=5, curve="hermitian"))
    assert code == 0
    assert report["results"][0]["data"]["count"] == 126
    with pytest.raises(InvalidParams):
        run(RunConfig(command="count", q=5, curve="unknown"))
    with pytest.raises(InvalidParams):
        run(RunConfig(command="nope", q=5))
    with pytest.raises(InvalidParams):
        render({}, "yaml")
