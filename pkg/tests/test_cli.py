"""CLI stage orchestration: file plumbing, manifests, exit codes."""

import json

import pytest

from econevents.cli import main

from conftest import DATA_DIR

CORPUS = str(DATA_DIR / "corpus.jsonl")
N_DOCS = 90
N_EVENTS = 21  # 18 ground-truth + 3 decoy
TRUTH = str(DATA_DIR / "ground_truth.jsonl")


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    """One annotate -> extract -> train chain shared by the read-only tests."""
    root = tmp_path_factory.mktemp("cli")
    annotated = root / "annotated.jsonl"
    assert main([
        "annotate", "--corpus", CORPUS, "--noun-predicates", "--enforce-roles",
        "--require-description", "-o", str(annotated),
    ]) == 0
    candidates = root / "candidates.jsonl"
    assert main(["extract", "--annotated", str(annotated), "-o", str(candidates)]) == 0
    model = root / "model.json"
    assert main([
        "train", "--candidates", str(candidates), "--truth", TRUTH,
        "--seed", "0", "-o", str(model),
    ]) == 0
    return root


def test_pipeline_artifacts_and_manifests(workdir):
    manifest = json.loads((workdir / "candidates.jsonl.manifest.json").read_text())
    assert manifest["stage"] == "extract"
    assert manifest["counts"]["events"] == N_EVENTS
    assert manifest["counts"]["quintuples"] >= manifest["counts"]["events"]
    annotated_manifest = json.loads((workdir / "annotated.jsonl.manifest.json").read_text())
    assert annotated_manifest["counts"]["documents"] == N_DOCS
    assert annotated_manifest["config"]["noun_predicates"] is True


def test_select_earliest_stage(workdir, tmp_path):
    out = tmp_path / "selected.jsonl"
    code = main([
        "select", "--candidates", str(workdir / "candidates.jsonl"),
        "--method", "earliest", "-o", str(out),
    ])
    assert code == 0
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    assert len(lines) == N_EVENTS
    assert all(l["method"] == "earliest" and l["chosen"] for l in lines)


def test_select_supervised_requires_model(workdir, tmp_path):
    code = main([
        "select", "--candidates", str(workdir / "candidates.jsonl"),
        "--method", "supervised", "-o", str(tmp_path / "x.jsonl"),
    ])
    assert code == 1


def test_select_supervised_with_model(workdir, tmp_path):
    out = tmp_path / "supervised.jsonl"
    code = main([
        "select", "--candidates", str(workdir / "candidates.jsonl"),
        "--method", "supervised", "--model", str(workdir / "model.json"),
        "--gamma", "0.3", "-o", str(out),
    ])
    assert code == 0
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    returned = [l for l in lines if l["chosen"]]
    assert 0 < len(returned) <= len(lines)
    assert all(0.0 <= l["confidence"] <= 1.0 for l in lines)


def test_evaluate_stage(workdir, tmp_path, capsys):
    out = tmp_path / "selected.jsonl"
    main(["select", "--candidates", str(workdir / "candidates.jsonl"),
          "--method", "earliest", "-o", str(out)])
    code = main(["evaluate", "--selections", str(out), "--truth", TRUTH,
                 "--mode", "relaxed"])
    assert code == 0
    captured = capsys.readouterr().out
    assert "P=" in captured and "F1=" in captured


def test_importance_stage(workdir, capsys):
    assert main(["importance", "--model", str(workdir / "model.json")]) == 0
    out = capsys.readouterr().out
    assert "dates_count" in out


def test_stage_rerun_is_byte_identical(workdir, tmp_path):
    first = tmp_path / "a.jsonl"
    second = tmp_path / "b.jsonl"
    for out in (first, second):
        assert main([
            "annotate", "--corpus", CORPUS, "--noun-predicates", "--enforce-roles",
            "--require-description", "-o", str(out),
        ]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_missing_input_exits_2(tmp_path):
    code = main(["annotate", "--corpus", str(tmp_path / "missing.jsonl"),
                 "-o", str(tmp_path / "out.jsonl")])
    assert code == 2


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["select", "--method", "bogus", "--candidates", "x", "-o", "y"])
    assert excinfo.value.code == 1


def test_ontology_build_and_export(tmp_path, workdir):
    out = tmp_path / "ontology.jsonl"
    code = main([
        "ontology", "build",
        "--seeds", str(DATA_DIR / "ontology_seeds.tsv"),
        "--lexres", str(DATA_DIR / "lexical_resource.txt"),
        "--overlay", str(DATA_DIR / "ontology_overlay.txt"),
        "--noun-lexicon", str(DATA_DIR / "noun_lexicon.tsv"),
        "-o", str(out),
    ])
    assert code == 0
    assert out.read_text() == (DATA_DIR / "ontology.jsonl").read_text()

    selections = tmp_path / "sel.jsonl"
    main(["select", "--candidates", str(workdir / "candidates.jsonl"),
          "--method", "earliest", "-o", str(selections)])
    triples = tmp_path / "triples.tsv"
    assert main(["ontology", "export-triples", "--selections", str(selections),
                 "-o", str(triples)]) == 0
    lines = triples.read_text().splitlines()
    assert len(lines) == 3 * N_EVENTS
    assert all(len(l.split("\t")) == 3 for l in lines)
    relations = {l.split("\t")[1] for l in lines}
    assert "participates" in relations and "isClassified" in relations
    assert relations & {"inflow", "outflow"}


def test_entities_build_and_lookup(tmp_path, capsys):
    out = tmp_path / "entities.jsonl"
    assert main(["entities", "build", "-o", str(out)]) == 0
    assert main(["entities", "lookup", "Skype Limited", "--entities", str(out)]) == 0
    assert '"skype"' in capsys.readouterr().out


def test_stats_stage(capsys):
    assert main(["stats", "--corpus", CORPUS]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["documents"] == N_DOCS
    assert payload["counts"]["acquire"] >= 1


def test_loocv_stage(capsys):
    assert main(["loocv", "--corpus", CORPUS, "--truth", TRUTH, "--seed", "0"]) == 0
    out = capsys.readouterr().out
    assert "aggregate:" in out
