"""
命令行：退出码、表格/JSON 输出与报告的确定性
"""

import csv
import json

import pytest
from typer.testing import CliRunner

from fibtree.cli.main import app, load_spec_document, spec_from_document
from fibtree.core import LN_GOLDEN, RouteDisagreement, gamma_sequence
from fibtree.schemas import SpecDocument

from tests.utils import get_current_test_logger

log = get_current_test_logger()

runner = CliRunner()

FULL_DOC = {"alphabet": ["1", "2"], "A1": [[1, 1], [1, 1]], "A2": [[1, 1], [1, 1]]}
IDENTITY_DOC = {"alphabet": ["1", "2"], "A1": [[1, 0], [0, 1]], "A2": [[1, 0], [0, 1]]}
TRIPLE_DOC = {"alphabet": ["a", "b"], "triples": [["a", "a", "b"], ["b", "a", "a"], ["a", "a", "a"]]}


@pytest.fixture(autouse=True)
def quiet_logs(monkeypatch, tmp_path):
    monkeypatch.setenv("FIBTREE_LOG_LEVEL", "WARNING")
    monkeypatch.setenv("FIBTREE_LOG_DIR", str(tmp_path / "logs"))


def invoke(*args):
    result = runner.invoke(app, [str(a) for a in args])
    log.debug(f"fibtree {' '.join(map(str, args))} -> {result.exit_code}")
    return result


def invoke_json(*args):
    result = invoke("--json", *args)
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def _without_wall_time(text):
    return [line for line in text.splitlines() if not line.startswith("wall time:")]


# ==========================================
# count
# ==========================================


def test_count_golden_table(write_spec, golden_doc):
    result = invoke("count", write_spec(golden_doc), "--depth", 4)
    assert result.exit_code == 0, result.output
    for value in ("207", "75", "15"):
        assert value in result.stdout
    assert result.stdout.startswith("spec digest: ")
    assert result.stdout.rstrip().splitlines()[-1].startswith("wall time: ")


def test_count_golden_json(write_spec, golden_doc):
    report = invoke_json("count", write_spec(golden_doc), "-n", 4)
    rows = report["results"]["rows"]
    assert [r["gamma"] for r in rows] == [[1, 1], [4, 1], [15, 8], [207, 75]]
    assert rows[1]["estimators"] is None
    assert rows[2]["estimators"] is not None
    assert list(report)[-1] == "wall_time"


def test_count_two_rooted(write_spec, golden_doc):
    report = invoke_json("count", write_spec(golden_doc), "-n", 3, "--root", "two")
    assert [r["gamma"] for r in report["results"]["rows"]] == [[1, 1], [2, 1], [5, 4]]


def test_count_identity_has_no_estimators(write_spec):
    result = invoke("count", write_spec(IDENTITY_DOC), "-n", 5)
    assert result.exit_code == 0, result.output
    assert " - " in result.stdout


def test_count_prints_huge_integers_in_full(write_spec, golden_doc):
    report = invoke_json("count", write_spec(golden_doc), "-n", 20)
    exact = gamma_sequence(spec_from_document(SpecDocument(**golden_doc)), 20)
    assert report["results"]["rows"][-1]["gamma"][0] == exact.value("eps", 0, 20)


def test_count_is_deterministic(write_spec, golden_doc):
    path = write_spec(golden_doc)
    first, second = invoke("count", path, "-n", 6), invoke("count", path, "-n", 6)
    assert _without_wall_time(first.stdout) == _without_wall_time(second.stdout)


# ==========================================
# entropy
# ==========================================


def test_entropy_golden(write_spec, golden_doc):
    result = invoke("entropy", write_spec(golden_doc))
    assert result.exit_code == 0, result.output
    assert "entropy: 0.4812118251 nats" in result.stdout
    assert "simple subsystems: 8" in result.stdout


def test_entropy_list_subsystems(write_spec):
    report = invoke_json("entropy", write_spec(FULL_DOC), "--list-subsystems")
    subs = report["results"]["subsystems"]
    assert len(subs) == 16
    assert all(s["spectral_radius"] == pytest.approx(1.6180339887, abs=1e-9) for s in subs)


def test_entropy_identity_is_zero(write_spec):
    result = invoke("entropy", write_spec(IDENTITY_DOC))
    assert result.exit_code == 0, result.output
    assert "entropy: 0.0000000000 nats" in result.stdout


def test_entropy_in_bits(write_spec, golden_doc):
    report = invoke_json("--log2", "entropy", write_spec(golden_doc))
    assert report["results"]["unit"] == "bits"
    assert report["results"]["value"] == pytest.approx(0.6942419136, abs=1e-9)


def test_enumeration_cap_exit_code(write_spec, monkeypatch):
    monkeypatch.setenv("FIBTREE_MAX_SUBSYSTEMS", "5")
    result = invoke("entropy", write_spec(FULL_DOC))
    assert result.exit_code == 4
    assert "FIBTREE_MAX_SUBSYSTEMS" in result.output


# ==========================================
# verify
# ==========================================


def test_verify_golden_passes(write_spec, golden_doc):
    result = invoke("verify", write_spec(golden_doc))
    assert result.exit_code == 0, result.output
    assert "FAIL 0" in result.stdout


def test_verify_reports_first_mismatch(write_spec, golden_doc, mocker):
    def corrupted(spec, n):
        real = gamma_sequence(spec, n)
        fake = mocker.Mock()
        fake.value.side_effect = lambda root, i, m: real.value(root, i, m) + (m == 3)
        return fake

    mocker.patch("fibtree.cli.main.gamma_sequence", side_effect=corrupted)
    result = invoke("verify", write_spec(golden_doc), "--naive-depth", 3, "--dp-depth", 4)
    assert result.exit_code == 3
    assert "first mismatch: naive eps symbol 1 n=3: recursion 16 != oracle 15" in result.stdout


def test_verify_work_cap_is_skipped(write_spec, golden_doc, monkeypatch):
    monkeypatch.setenv("FIBTREE_WORK_CAP", "100")
    report = invoke_json("verify", write_spec(golden_doc), "--naive-depth", 4, "--dp-depth", 4)
    assert report["results"]["failed"] == 0
    assert report["results"]["skipped"] > 0


def test_verify_empty_shift(write_spec):
    result = invoke("verify", write_spec({"alphabet": ["a", "b"], "triples": [["a", "a", "b"]]}))
    assert result.exit_code == 0, result.output
    assert "empty shift: nothing to verify (PASS)" in result.stdout


# ==========================================
# CNN 命令
# ==========================================


def test_cnn_classify_example():
    result = invoke("cnn-classify", "--a", 2, "--a1=-1", "--a2", 2, "--z", 1)
    assert result.exit_code == 0, result.output
    assert "region: [3, 2]" in result.stdout
    assert "B_[3, 2] = {(+; +, +), (+; -, +), (+; -, -), (-; +, -), (-; -, -)}" in result.stdout
    assert "realizable: yes (Inv2)" in result.stdout
    assert "entropy: 0.4812118251 nats" in result.stdout


def test_cnn_classify_json():
    report = invoke_json("cnn-classify", "--a", 2, "--a1=-1", "--a2", 2, "--z", 1)
    res = report["results"]
    assert res["region"] == [3, 2]
    assert res["entropy_formula"] == pytest.approx(LN_GOLDEN)
    assert res["critical_a"] == pytest.approx(-1.0)
    assert report["spec_digest"] is None


def test_cnn_classify_on_boundary():
    result = invoke("cnn-classify", "--a", 0, "--a1=-1", "--a2", 2, "--z", 0)
    assert result.exit_code == 2
    assert "a-1+z = -a1-a2" in result.output


def test_phase_diagram_writes_csv(tmp_path):
    out = tmp_path / "phase" / "grid.csv"
    report = invoke_json("phase-diagram", "--a1=-1", "--a2", 2, "--out", out)
    res = report["results"]
    assert len(res["regions"]) == 25
    assert res["dichotomy"] is True
    assert set(res["entropy_census"]) == {"0.0000000000", f"{LN_GOLDEN:.10f}"}
    with open(out, encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert len(rows) == res["rows"] + 1


def test_phase_diagram_table_mode(tmp_path):
    result = invoke("phase-diagram", "--a1=-1", "--a2", 2, "--step", 0.5, "-o", tmp_path / "g.csv")
    assert result.exit_code == 0, result.output
    assert "dichotomy holds: yes" in result.stdout


def test_phase_diagram_unwritable_output(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    result = invoke("phase-diagram", "--a1=-1", "--a2", 2, "--step", 1, "-o", blocker / "g.csv")
    assert result.exit_code == 2


def test_phase_diagram_bad_step(tmp_path):
    result = invoke("phase-diagram", "--a1=-1", "--a2", 2, "--step", 0, "-o", tmp_path / "g.csv")
    assert result.exit_code == 2


def test_cnn_classify_empty_region():
    report = invoke_json("cnn-classify", "--a=-10", "--a1=-1", "--a2", 2, "--z", 0)
    assert report["results"]["region"] == [0, 0]
    assert report["results"]["entropy"] == 0.0
    assert report["results"]["patterns"] == []


@pytest.mark.parametrize(
    ("target", "args"),
    [
        ("cnn_entropy", ["cnn-classify", "--a", 2, "--a1=-1", "--a2", 2, "--z", 1]),
        ("phase_diagram", ["phase-diagram", "--a1=-1", "--a2", 2, "--step", 1]),
    ],
)
def test_route_disagreement_exits_as_verification_failure(mocker, tmp_path, target, args):
    mocker.patch(
        f"fibtree.cli.main.{target}",
        side_effect=RouteDisagreement(0.0, LN_GOLDEN, (2.0, -1.0, 2.0, 1.0)),
    )
    result = invoke(*args, "-o", tmp_path / "g.csv") if target == "phase_diagram" else invoke(*args)
    assert result.exit_code == 3
    assert "entropy routes disagree" in result.output


def test_phase_diagram_step_larger_than_range(tmp_path):
    out = tmp_path / "tiny.csv"
    result = invoke(
        "phase-diagram", "--a1=-1", "--a2", 2, "--a-min", 0.1, "--a-max", 0.2,
        "--z-min", 0.3, "--z-max", 0.4, "--step", 5, "-o", out,
    )
    assert result.exit_code == 0, result.output
    assert len(out.read_text(encoding="utf-8").splitlines()) == 2


# ==========================================
# 约束文件
# ==========================================


def test_spec_digest_is_stable(write_spec, golden_doc):
    path = write_spec(golden_doc)
    first, second = invoke("spec-digest", path), invoke("spec-digest", path)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    assert len(first.stdout.strip()) == 32


@pytest.mark.parametrize("doc_name", ["golden", "triples"])
def test_spec_document_round_trip(write_spec, golden_doc, doc_name):
    doc = golden_doc if doc_name == "golden" else TRIPLE_DOC
    loaded = load_spec_document(write_spec(doc))
    again = SpecDocument.from_spec(spec_from_document(loaded))
    assert again.digest() == loaded.digest()


def test_triple_order_does_not_change_digest(write_spec):
    shuffled = dict(TRIPLE_DOC, triples=list(reversed(TRIPLE_DOC["triples"])))
    a = invoke("spec-digest", write_spec(TRIPLE_DOC, "a.json")).stdout
    b = invoke("spec-digest", write_spec(shuffled, "b.json")).stdout
    assert a == b


def test_bad_json_reports_location(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"alphabet": ["1", "2"],\n  "A1": [[1, 1]', encoding="utf-8")
    result = invoke("entropy", path)
    assert result.exit_code == 2
    assert "broken.json:2:" in result.output


@pytest.mark.parametrize(
    ("doc", "fragment"),
    [
        ({"alphabet": ["1", "2"], "A1": [[1, 1], [1, 0]]}, "A2"),
        ({"alphabet": ["1"], "A1": [[2]], "A2": [[1]]}, "0 or 1"),
        ({"alphabet": ["a"], "triples": [["a", "a", "x"]]}, "outside the alphabet"),
        ({"alphabet": ["a"], "triples": [["a", "a", "a"]], "colour": "red"}, "colour"),
    ],
)
def test_invalid_documents(write_spec, doc, fragment):
    result = invoke("count", write_spec(doc))
    assert result.exit_code == 2
    assert fragment in result.output


def test_missing_file(tmp_path):
    result = invoke("spec-digest", tmp_path / "nope.json")
    assert result.exit_code == 2
    assert "cannot read spec file" in result.output
