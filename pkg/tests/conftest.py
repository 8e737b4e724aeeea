from __future__ import annotations

import io
import json
import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))


@pytest.fixture(scope="session")
def corpus_docs():
    docs = {}
    for path in sorted(CORPUS.glob("*.json")):
        try:
            docs[path.stem] = json.loads(path.read_text())
        except json.JSONDecodeError:
            docs[path.stem] = None
    return docs


class CliResult:
    def __init__(self, code: int, stdout: str):
        self.code = code
        self.stdout = stdout

    @property
    def json(self):
        return json.loads(self.stdout)


@pytest.fixture()
def run_cli(monkeypatch, capsys):
    from almin import cli

    def run(*argv) -> CliResult:
        code = cli.main(list(argv))
        out = capsys.readouterr().out
        return CliResult(code, out)

    return run
