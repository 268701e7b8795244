import json

from click.testing import CliRunner

from triquad.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_sieve_outputs():
    res = run("sieve", "1,4,5", "--bound", "100000")
    assert res.exit_code == 0
    assert res.output.strip() == "{2}"
    res = run("sieve", "1,2,3", "--bound", "1000")
    assert res.output.strip() == "{}"


def test_sieve_json():
    res = run("sieve", "1,4,5", "--bound", "1000", "--format", "json")
    data = json.loads(res.output)
    assert data["schema"] == 1
    assert data["missing"] == [2]


def test_sieve_sorts_with_warning():
    res = run("sieve", "5,1,4", "--bound", "100")
    assert res.exit_code == 0
    assert "warning" in res.output
    assert "{2}" in res.output


def test_sieve_usage_error():
    res = run("sieve", "1,x", "--bound", "10")
    assert res.exit_code == 2


def test_truants_output():
    res = run("truants", "2,2,3")
    assert res.output.strip() == "1 10"


def test_escalate_summaries():
    res = run("escalate", "--exception", "1", "--bound", "10000")
    assert res.exit_code == 0
    assert "proper=29 (quaternary=11, quinary=18)" in res.output
    res = run("escalate", "--exception", "2", "--bound", "10000")
    assert "proper=72 (ternary=1 conditional, quaternary=34, quinary=37)" \
        in res.output


def test_escalate_json_deterministic():
    a = run("escalate", "--exception", "1", "--bound", "10000",
            "--format", "json")
    b = run("escalate", "--exception", "1", "--bound", "10000",
            "--format", "json")
    assert a.output == b.output
    data = json.loads(a.output)
    assert data["summary"]["counts"]["proper"] == 29


def test_escalate_bad_exception():
    res = run("escalate", "--exception", "3")
    assert res.exit_code == 2


def test_classify_output():
    res = run("classify", "2,2,2,3", "--exception", "1")
    assert res.output.strip().startswith("proper")


def test_genus_output():
    res = run("genus", "3,4,16")
    assert res.exit_code == 0
    assert res.output.splitlines()[0] == "h=2"


def test_bset_output():
    res = run("bset", "2,3,4", "1,2,12", "5", "1")
    lines = res.output.splitlines()
    assert lines[0] == "size=2"
    assert "(1,0,0)" in lines[1]


def test_pme_output():
    res = run("pme", "[[5,0,0],[0,1,-12],[0,2,1]]", "1,2,12", "5", "1",
              "--f-form", "2,3,4")
    assert res.exit_code == 0
    assert "ok=True" in res.output


def test_verify_candidate():
    res = run("verify", "candidate:2,3,4,5", "--bound", "10000")
    assert res.exit_code == 0
    assert "exceptions={1} PASS" in res.output
    res = run("verify", "candidate:1,1,8,30", "--bound", "10000")
    assert res.exit_code == 1
    assert "exceptions={5,71} FAIL" in res.output


def test_verify_table_scope():
    res = run("verify", "table:m1-2-3-4-8", "--bound", "3000")
    assert res.exit_code == 0
    assert "PASS" in res.output


def test_verify_bad_scope():
    res = run("verify", "nonsense:scope")
    assert res.exit_code == 2


def test_conjecture_command():
    res = run("conjecture", "--bound", "100000")
    assert res.exit_code == 0
    assert res.output.startswith("{2}")
