#!/usr/bin/env python3
"""Smoke test for the sbo_py extension module.

Builds the cdylib if needed, copies it next to this script under the import
name, and exercises the main entry points against known exact values.
"""
import pathlib
import shutil
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def ensure_module():
    target = HERE / "sbo_py.so"
    candidates = [
        ROOT / "target" / "release" / "libsbo_py.so",
        ROOT / "target" / "debug" / "libsbo_py.so",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None or any(
        c.exists() and c.stat().st_mtime > built.stat().st_mtime for c in candidates
    ):
        subprocess.run(
            ["cargo", "build", "-p", "sbo-py", "--release"], cwd=ROOT, check=True
        )
        built = candidates[0]
    if not target.exists() or built.stat().st_mtime > target.stat().st_mtime:
        shutil.copy2(built, target)
    sys.path.insert(0, str(HERE))


def main():
    ensure_module()
    import sbo_py

    # exact scalar plumbing
    assert sbo_py.pochhammer("1/2", 2) == "3/4"
    assert sbo_py.gegenbauer_coeffs(2, "1") == ["-1", "0", "4"]
    assert sbo_py.gegenbauer_at_zero(2, "3/2") == "15/8"
    assert sbo_py.harmonic_dim(3, 2) == 5
    assert sbo_py.sphere_monomial_integral([0, 0, 0]) == ("4", 2)
    assert sbo_py.prop_const(3, 0, 0, 1, 1) == "8/9"

    # classification across the branches
    p = sbo_py.Params(3, "0", "0", "0", "0")
    assert '"dim":1' in p.classify() and '"A"' in p.classify()
    assert ("omega", "8/9") in p.derived()

    p_l = sbo_py.Params(2, "-7/2", "0", "-1", "0")
    assert '"dim":2' in p_l.classify()
    assert p_l.solve_dim(6) == 2

    p_b = sbo_py.Params(3, "5", "0", "-3/2", "1")
    assert '"B"' in p_b.classify()

    # exact sequences and the dual route
    p = sbo_py.Params(3, "1/2", "1/3", "1/5", "1/3")
    tri = dict(((a, ap), v) for a, ap, v in p.scalars("A", 4))
    assert tri[(0, 0)] == "1"
    assert tri[(1, 0)] == "-7/25"
    assert p.verify("A", 8) == 0
    assert p.solve_dim(8) == 1
    basis = p.solve(8)
    assert len(basis) == 1 and basis[0][0] == (0, 0, "1")

    # residue identity at a nu1-lattice point
    p_r = sbo_py.Params(3, "1/2", "0", "-7/2", "0")
    idents = dict(p_r.residues(8))
    assert idents["AViaA1 { j: 1 }"] == "-2/5"

    # quadrature against the exact prediction
    p_q = sbo_py.Params(3, "1/2", "0", "1/5", "0")
    for (alpha, alphap) in [(0, 0), (1, 0), (2, 1), (3, 3)]:
        rel = p_q.quad_rel_error_a(alpha, alphap)
        assert rel < 1e-10, (alpha, alphap, rel)

    # error mapping
    try:
        sbo_py.Params(1, "0", "0", "0", "0")
        raise AssertionError("n = 1 must be rejected")
    except ValueError:
        pass
    try:
        p_q.scalars("B", 4)
        raise AssertionError("B off its locus must be rejected")
    except RuntimeError:
        pass

    print("sbo_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
