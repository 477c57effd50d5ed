import io
import json
import subprocess
import sys


from qptori import __version__
from qptori.cli import main, run_document


def run(doc, *args, stdin=None):
    text = json.dumps(doc) if stdin is None else stdin
    proc = subprocess.run(
        [sys.executable, "-m", "qptori.cli", *args],
        input=text, capture_output=True, text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_radical_job():
    report = run_document({"command": "radical", "L": [[0, 1], [-1, 0]]})
    assert report["result"]["rank"] == 0 and report["result"]["basis"] == []
    assert report["version"] == __version__ and report["truncation"] == 12


def test_schubert_job():
    report = run_document({"command": "schubert", "payload": {"type": "A2"}})
    assert report["result"]["verdict"] is True
    assert report["result"]["radical"] == [[1, 1, 0]]


def test_rigidity_job():
    doc = {"command": "rigidity", "payload": {
        "L": [[0, 1], [-1, 0]], "D": [1, 1], "exponentials": [{"a": "1", "alpha": [1, 0]}]}}
    result = run_document(doc)["result"]
    assert result == {"central": False, "witness": [1, 0]}


def test_truncation_override_and_batch():
    doc = {"jobs": [
        {"command": "factorize", "L": [[0, 1], [-1, 0]], "D": [1, 1], "N": 6, "ray": [1, 0],
         "exponentials": [{"a": "3", "alpha": [1, 0]}, {"a": "1/2", "alpha": [2, 0]}]},
        {"command": "toric", "B": [[0, 1], [-1, 0], [1, 1]]},
    ]}
    reports = run_document(doc, truncation=3)["reports"]
    assert reports[0]["result"]["coefficients"] == ["3", "1/2", "0"]
    assert all(r["truncation"] == 3 for r in reports)
    assert reports[1]["result"]["rank"] == 1


def test_multiplier_round_trip():
    doc = {"command": "exp-aut", "L": [[0, 1], [-1, 0]], "D": [1, 1], "N": 4,
           "exponentials": [{"a": "1", "alpha": [1, 0]}]}
    first = run_document(doc)["result"]["automorphism"]
    again = run_document({"command": "exp-aut", **{k: first[k] for k in ("L", "D", "N", "multipliers")}})
    assert again["result"]["automorphism"] == first
    assert again["result"]["poisson"] is True


def test_exit_codes():
    assert run({"command": "radical", "L": [[0, 1], [-1, 0]]})[0] == 0
    assert run(None, stdin="{not json")[0] == 1
    assert run({"command": "radical"}, "--truncation", "0")[0] == 2
    assert run({"command": "radical", "L": "oops"})[0] == 3
    assert run({"command": "nope"})[0] == 3
    code, _, err = run({"command": "rigidity", "L": [[0, 1], [-1, 0]], "D": [1, 1],
                        "exponentials": [{"a": 1, "alpha": [-1, 0]}]})
    assert code == 4
    assert json.loads(err)["location"] == "job/rigidity"
    code, _, err = run({"jobs": [{"command": "radical", "L": [[0, 1], [-1, 0]]},
                                 {"command": "mutate", "B": [[0, 1], [-1, 0]], "k": 5}]})
    assert code == 4 and json.loads(err)["location"].startswith("jobs[1]")


def test_identical_output_for_identical_jobs(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"command": "rootsys", "type": "B3"}))
    outs = []
    for t in range(2):
        out = tmp_path / f"out{t}.json"
        assert main(["--job", str(job), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_text_format(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps({"command": "toric", "B": [[0, 1], [-1, 0]]})))
    assert main(["--format", "text"]) == 0
    assert "[toric]" in capsys.readouterr().out
