"""Regenerate the JSON corpus shipped in ``hopfdual/corpus``.

Structure tensors come from the package constructors; expected pair counts
come from the dense oracle in ``oracle.py``. Run from the repository root::

    python3 tools/build_corpus.py
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracle  # noqa: E402
from hopfdual.groups import cyclic, sign_characters, symmetric3  # noqa: E402
from hopfdual.halgebra import (graded_swap_algebra, swap_algebra, translation_algebra,  # noqa: E402
                               trivial_algebra)
from hopfdual.hopf import FiniteQuantumGroup, function_algebra, group_algebra, sweedler_h4  # noqa: E402
from hopfdual.io import algebra_to_json, group_to_json  # noqa: E402

OUT = Path(__file__).resolve().parent.parent / "src" / "hopfdual" / "corpus"


def restricted(h, gl, ch):
    return FiniteQuantumGroup(h.name, h.basis, [h.unit_vec.get(i, 0) for i in range(h.dim)], h.mult,
                              h.comult, h.counit, h.antipode, grouplike_candidates=gl, character_candidates=ch)


def sign_swap(h, chi):
    return swap_algebra(h, [(1, 0) if c == 1 else (0, 1) for c in chi])


def entries():
    z2, z3, z4, s3 = cyclic(2), cyclic(3), cyclic(4), symmetric3()
    cz2 = group_algebra(z2)
    # the two-pair example: group-likes 1, g against the counit only
    cz2 = restricted(cz2, [[1, 0], [0, 1]], [[1, 1]])
    cz3, cz4, cs3 = group_algebra(z3), group_algebra(z4), group_algebra(s3)
    fz2, fs3, h4 = function_algebra(z2), function_algebra(s3), sweedler_h4()
    return [
        ("cz2", cz2, {"trivial": trivial_algebra(cz2), "translation": translation_algebra(cz2)}),
        ("cz3", cz3, {"trivial": trivial_algebra(cz3), "translation": translation_algebra(cz3)}),
        ("cz4", cz4, {"trivial": trivial_algebra(cz4), "swap": sign_swap(cz4, sign_characters(z4)[1]),
                      "translation": translation_algebra(cz4)}),
        ("cs3", cs3, {"trivial": trivial_algebra(cs3), "swap": sign_swap(cs3, sign_characters(s3)[1])}),
        ("fz2", fz2, {"trivial": trivial_algebra(fz2), "graded": graded_swap_algebra(fz2, 1)}),
        ("fs3", fs3, {"trivial": trivial_algebra(fs3), "graded": graded_swap_algebra(fs3, 1)}),
        ("h4", h4, {"trivial": trivial_algebra(h4), "swap": swap_algebra(h4, [(1, 0), (0, 1), (0, 0), (0, 0)])}),
    ]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    index = []
    for key, h, algebras in entries():
        obj = group_to_json(h)
        found = oracle.pairs(obj)
        obj["expected"] = {"pair_count": len(found), "pairs": [list(p) for p in found]}
        (OUT / f"{key}.qg.json").write_text(json.dumps(obj, indent=1) + "\n")
        alg_files = []
        for akey, A in algebras.items():
            name = f"{key}.{akey}.alg.json"
            (OUT / name).write_text(json.dumps(algebra_to_json(A, key), indent=1) + "\n")
            alg_files.append(name)
        index.append({"name": key, "group": f"{key}.qg.json", "algebras": alg_files})
        print(key, h.name, "pairs:", found)
    (OUT / "index.json").write_text(json.dumps(index, indent=1) + "\n")


if __name__ == "__main__":
    main()
