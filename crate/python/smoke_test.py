"""Smoke test for the Python extension.

Build it first:

    cargo build -p arimat-py --release --features extension-module

then run `python3 python/smoke_test.py` from the repository root.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libarimat_py.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("arimat", str(lib))
            spec = importlib.util.spec_from_file_location("arimat", lib, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("extension not built; see the docstring")


def main():
    arimat = load()

    x = arimat.Input.representation([[2, 2], [-2, 2]])
    assert x.arithmetic_tutte() == "x^2 + 2*x + 5"
    assert x.multiplicity([1, 2]) == 8
    layer = x.poset("layer")
    assert layer.f_vector() == [1, 4, 8]
    assert layer.h_vector() == [1, 2, 5]
    assert layer.hilbert(3) == [1, 4, 12, 20]
    assert layer.verify_hilbert(5)
    assert x.validate("layer") == []

    u = arimat.Input.from_matroid(
        2, [[], [1], [2], [1, 2]], [([], 1), ([1], 2), ([2], 2), ([1, 2], 2)]
    )
    ok, report = u.check_axioms()
    assert not ok and "(P): VIOLATED" in report
    p = u.poset("cyclic")
    assert p.hilbert(4) == [1, 4, 6, 8, 10]
    assert p.hilbert_series(4) == [1, 4, 6, 8, 10]
    assert "a0*b0 - C0" in p.ideal()
    assert sorted(p.covers("C0")) == ["a0", "b0"]

    r = arimat.Input.representation([[2, 0], [3, 0]], torsion=[3])
    assert r.arithmetic_tutte() == "3*x + 3*y + 9"
    assert len(r.poset("cyclic").components()) == 3
    reduced = r.poset("cyclic", torsion_free=True)
    assert reduced.f_vector() == [1, 5]
    assert reduced.dot().startswith("digraph {")

    try:
        u.poset("layer")
    except ValueError as e:
        assert "representation" in str(e)
    else:
        raise AssertionError("layer structure on abstract input")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
