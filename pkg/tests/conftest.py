import json
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    path = DATA / "corpus.jsonl"
    if not path.exists():
        pytest.fail("bundled corpus missing; regenerate with `flowrank corpus`")
    return path


@pytest.fixture(scope="session")
def golden() -> dict:
    return json.loads((DATA / "golden.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def artifacts_dir(tmp_path_factory, corpus_path) -> Path:
    """One full pipeline run over the bundled corpus, shared by the suite."""
    from flowrank import cli

    out = tmp_path_factory.mktemp("artifacts")
    for argv in (
        ["ingest", str(corpus_path), "--out", str(out), "--quiet"],
        ["build", "--out", str(out), "--quiet"],
        ["filter", "--out", str(out), "--quiet"],
        ["centrality", "--out", str(out), "--quiet"],
    ):
        code = cli.main(argv)
        assert code == 0, f"pipeline stage {argv[0]} exited {code}"
    return out


@pytest.fixture(scope="session")
def snapshot(artifacts_dir):
    from flowrank.service import Snapshot

    return Snapshot.load(artifacts_dir)
