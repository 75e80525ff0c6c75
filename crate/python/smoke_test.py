#!/usr/bin/env python3
"""Build the fdtopo_py extension module and smoke-test it end to end.

Runs `cargo build -p fdtopo-py`, copies the resulting shared library next to
this script as an importable module, and then drives the bindings through the
shipped fixtures: closures, dependency-complex homology, lossless tests,
nerve obstructions, GYO, join trees, plan execution, and the audits.

Usage: python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent
FIXTURES = ROOT / "fixtures"


def build_extension():
    subprocess.run(["cargo", "build", "-p", "fdtopo-py"], cwd=ROOT, check=True)
    for name in ("libfdtopo_py.so", "libfdtopo_py.dylib"):
        built = ROOT / "target" / "debug" / name
        if built.exists():
            dest = HERE / "fdtopo_py.so"
            shutil.copy2(built, dest)
            return
    raise SystemExit("could not find the built fdtopo_py shared library")


def fixture(name):
    return json.loads((FIXTURES / name).read_text())


def schema_from(ft, doc):
    return ft.Schema(doc["attributes"], [(fd["lhs"], fd["rhs"]) for fd in doc["fds"]])


def read_relation(path):
    lines = [line for line in path.read_text().splitlines() if line.strip()]
    header = [h.strip() for h in lines[0].split(",")]
    return [
        dict(zip(header, [v.strip() for v in line.split(",")]))
        for line in lines[1:]
    ]


def main():
    build_extension()
    sys.path.insert(0, str(HERE))
    import fdtopo_py as ft

    # Chain schema: closure and complex shape.
    chain = schema_from(ft, fixture("chain.json"))
    assert chain.closure(["A"]) == ["A", "B", "C", "D"]
    assert chain.closure(["B"]) == ["B", "C"]
    assert chain.is_key(["A"])
    assert chain.maximal_faces() == [["A", "B"], ["A", "C", "D"], ["B", "C"]]
    assert chain.betti() == [0, 1, 0], chain.betti()

    # Filled vs hollow triangle: the higher-arity FD fills the cycle.
    filled = schema_from(ft, fixture("filled_triangle.json"))
    assert filled.maximal_faces() == [["A", "B", "C"]]
    assert filled.is_snf()
    assert filled.h1_cycles() == []
    # Minimization erases the filling FD (its extraneous attribute goes away).
    assert filled.canonical_cover() == [(["A"], "B"), (["B"], "C"), (["C"], "A")]
    assert not filled.is_snf(minimize=True)

    hollow = schema_from(ft, fixture("hollow_triangle.json"))
    assert not hollow.is_snf()
    assert hollow.betti() == [0, 1]
    cycles = hollow.h1_cycles()
    assert len(cycles) == 1 and sorted(cycles[0]) == [("A", "B"), ("A", "C"), ("B", "C")]

    # Binary decomposition: criterion and chase agree.
    binary = fixture("binary_split.json")
    split = schema_from(ft, binary)
    verdict = split.binary_lossless(*binary["decomposition"])
    assert verdict["lossless"] and verdict["keyed_side"] == "left"
    chased = split.chase_lossless(binary["decomposition"])
    assert chased["lossless"] and chased["steps"] == 1
    assert split.dependency_preserving(binary["decomposition"])

    # Pairwise-overlapping cover: nerve obstruction blocks any join tree.
    cyclic = fixture("cyclic_cover.json")
    cover_schema = schema_from(ft, cyclic)
    nerve = cover_schema.nerve(cyclic["decomposition"])
    assert nerve["b1"] == 1 and nerve["cycles"] == [[1, 2, 3]]
    assert not cover_schema.gyo_acyclic(cyclic["decomposition"])
    assert cover_schema.join_tree(cyclic["decomposition"]) is None

    # The six-relation ring query is cyclic too, despite pairwise overlaps.
    ring = fixture("ring_query.json")
    ring_schema = schema_from(ft, ring)
    assert not ring_schema.gyo_acyclic(ring["decomposition"])
    assert ring_schema.join_tree(ring["decomposition"]) is None

    # Acyclic query: join tree, plan execution, exact agreement with the
    # naive join.
    tree = fixture("tree_query.json")
    tree_schema = schema_from(ft, tree)
    assert tree_schema.gyo_acyclic(tree["decomposition"])
    edges = tree_schema.join_tree(tree["decomposition"])
    assert edges is not None and len(edges) == 4
    relations = [
        read_relation(FIXTURES / tree["relations"][f"R{i + 1}"])
        for i in range(len(tree["decomposition"]))
    ]
    outcome = ft.run_plan(
        tree["attributes"], tree["decomposition"], relations, root=2, passes="full"
    )
    assert outcome["reduced"] and outcome["matches_naive"]
    assert outcome["cardinality"] == 2
    values = {tuple(sorted(row.items())) for row in outcome["result"]}
    assert (
        tuple(sorted({"A": "a1", "B": "b1", "C": "c1", "D": "d1", "E": "e1", "F": "f1"}.items()))
        in values
    )

    # Audits: the theorem-backed ones are clean, the collapse claim is not.
    assert not ft.run_audit("binary", seed=7, trials=200)["falsified"]
    assert not ft.run_audit("mv", seed=11, trials=50)["falsified"]
    assert not ft.run_audit("nerve-gyo")["falsified"]
    keyed = ft.run_audit("keyed-collapse", seed=7, trials=20)
    assert keyed["falsified"] and keyed["violations"] >= 1

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
