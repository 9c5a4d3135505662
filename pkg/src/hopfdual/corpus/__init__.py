"""The shipped example corpus: seven quantum groups with module algebras and expected pair counts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..hopf import FiniteQuantumGroup
from ..io import InputError, algebra_from_json, group_from_json
from ..modular import ModularPair


@dataclass
class CorpusEntry:
    name: str
    group: FiniteQuantumGroup
    algebras: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)

    def expected_pairs(self) -> list[ModularPair]:
        h = self.group
        return [ModularPair(dict(h.grouplike_candidates[i]), dict(h.character_candidates[j]))
                for i, j in self.expected.get("pairs", [])]


def corpus_dir() -> Path:
    return Path(str(resources.files(__name__)))


def _read(path: Path):
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read corpus file: {e}", "", str(path)) from e


def load_entry(name: str, root: Path | None = None) -> CorpusEntry:
    root = Path(root) if root is not None else corpus_dir()
    index = {e["name"]: e for e in _read(root / "index.json")}
    if name not in index:
        raise InputError(f"no corpus entry {name!r}", "", str(root / "index.json"))
    return _build(index[name], root)


def _build(item: dict, root: Path) -> CorpusEntry:
    path = root / item["group"]
    h = group_from_json(_read(path), str(path))
    algebras = {}
    for fname in item.get("algebras", []):
        apath = root / fname
        key = fname.split(".")[1]
        algebras[key] = algebra_from_json(_read(apath), h, str(apath))
    return CorpusEntry(item["name"], h, algebras, h.expected)


def load_corpus(root: Path | None = None) -> list[CorpusEntry]:
    """Every entry of the index, validated on load."""
    root = Path(root) if root is not None else corpus_dir()
    return [_build(item, root) for item in _read(root / "index.json")]


NAMES = ("cz2", "cz3", "cz4", "cs3", "fz2", "fs3", "h4")
