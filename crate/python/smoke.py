"""Smoke test for the finlocale_py extension.

Build and install first:

    cd crates/py && maturin build --release -o dist && pip install dist/*.whl

then run `python python/smoke.py`.
"""

from pathlib import Path

import finlocale_py as fl

CORPUS = Path(__file__).resolve().parent.parent / "crates" / "core" / "corpus"


def main():
    m2 = fl.Lattice.parse((CORPUS / "lattices" / "m2.lat").read_text())
    assert m2.size() == 4 and m2.validate() == []
    assert fl.spectrum(m2).isomorphic(fl.Lattice.boolean(2))
    assert fl.spectrum(fl.Lattice.chain(3)).isomorphic(fl.Lattice.chain(3))
    fl.duality_check(m2)

    c3 = fl.Lattice.chain(3)
    assert c3.heyting(2, 1) == 1 and c3.heyting(1, 0) == 0
    assert c3.points() == [[2], [1, 2]]
    assert len(fl.nuclei(c3)) == 4
    assert fl.nucleus_join(c3, [[1, 1, 2], [0, 2, 2]]) == [2, 2, 2]

    sierpinski = fl.Lattice.parse((CORPUS / "named" / "sierpinski.lat").read_text())
    p = fl.patch(sierpinski)
    assert p.size() == 4
    assert sorted(p.base_labels()) == ["c_true", "c_⊥", "o_true", "o_⊥"]
    assert p.frame().isomorphic(fl.Lattice.boolean(2))
    cert = fl.verify_patch_up(c3, fl.Lattice.boolean(2))
    assert cert["uniqueness_checked"]

    d = fl.Domain.parse((CORPUS / "domains" / "flat3.dom").read_text())
    pts = d.points_certificate()
    assert pts["scott_points"] == pts["patch_points"] == d.size() == 4
    assert d.sharp() == [0, 1, 2, 3]

    try:
        fl.Lattice.parse((CORPUS / "invalid" / "n5.lat").read_text())
    except ValueError as e:
        assert "distributivity" in str(e)
    else:
        raise AssertionError("N5 accepted")

    results = fl.run_suite("all")
    assert [r["status"] for r in results] == ["pass"] * 12
    print("smoke ok:", ", ".join(f'{r["id"]} {r["elapsed_ms"]:.1f}ms' for r in results))


if __name__ == "__main__":
    main()
