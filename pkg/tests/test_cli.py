import json

from airycheck import cli


def run_capture(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_roots(capsys):
    code, out, _ = run_capture(capsys, ["roots", "--series", "A", "--rank", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["coxeter_number"] == 3
    assert doc["num_roots"] == 6


def test_roots_invalid_series(capsys):
    code, _, _ = run_capture(capsys, ["roots", "--series", "Z", "--rank", "1"])
    assert code == 2


def test_grading(capsys):
    code, out, _ = run_capture(capsys, ["grading", "--series", "G", "--rank", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["dim_g"] == 14
    assert doc["h"] == 6
    assert sum(doc["dim_z"].values()) == 2  # the two exponents 1, 5


def test_verify_dim(capsys):
    code, out, _ = run_capture(capsys, ["verify", "dim"])
    assert code == 0
    doc = json.loads(out)
    names = {v["check"] for v in doc["checks"]}
    assert names == {"dim-and-components", "swan-identity"}
    assert all(v["pass"] for v in doc["checks"])
    assert all("runtime_ms" in v for v in doc["checks"])


def test_verify_stab(capsys):
    code, out, _ = run_capture(capsys, ["verify", "stab"])
    assert code == 0
    assert all(v["pass"] for v in json.loads(out)["checks"])


def test_emit_report_empty():
    doc = json.loads(cli.emit_report([]))
    assert doc["checks"] == []
    assert "version" in doc


def test_chi(capsys):
    code, out, _ = run_capture(
        capsys,
        ["chi", "--n", "2", "--prime", "7", "--lambda", "1", "--m1", "3"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["q"] == 7
    assert len(doc["f"]) == 4


def test_chi_bad_params(capsys):
    code, _, err = run_capture(
        capsys, ["chi", "--n", "3", "--prime", "7", "--lambda", "1"]
    )
    assert code == 2
    assert "error" in err


def test_trace_airy(capsys):
    code, out, _ = run_capture(
        capsys, ["trace", "airy", "--n", "2", "--prime", "5", "--lambda", "0"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["provenance"] == "airy"
    assert len(doc["entries"]) == 5


def test_trace_hecke_brute(capsys):
    code, out, _ = run_capture(
        capsys,
        ["trace", "hecke", "--n", "2", "--prime", "5", "--lambda", "1", "--brute"],
    )
    assert code == 0
    assert json.loads(out)["provenance"] == "hecke-brute"


def test_compare(capsys):
    code, out, _ = run_capture(
        capsys, ["compare", "--n", "2", "--prime", "5", "--lambda", "2"]
    )
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_compare_odd_n(capsys):
    code, _, err = run_capture(
        capsys, ["compare", "--n", "3", "--prime", "7", "--lambda", "1"]
    )
    assert code == 2
    assert "odd n unsupported" in err


def test_acceptance_names():
    names = [n for n, _ in cli.ACCEPTANCE]
    assert len(names) == 12 and len(set(names)) == 12
