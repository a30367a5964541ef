#!/usr/bin/env python3
"""Smoke test for the lonesum_py extension module.

Builds are not triggered here; run `cargo build -p lonesum-py` first. The
script locates the cdylib under target/, imports it, and checks a handful of
known values.
"""

import importlib.util
import pathlib
import sys
from fractions import Fraction


def load_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("liblonesum_py.so", "liblonesum_py.dylib", "lonesum_py.dll")
    ]
    for path in candidates:
        if path.exists():
            spec = importlib.util.spec_from_file_location("lonesum_py", path)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module
    sys.exit("lonesum_py cdylib not found; run `cargo build -p lonesum-py` first")


def main():
    m = load_module()

    assert m.poly_bernoulli(2, 2) == 14
    assert m.poly_bernoulli(3, 3) == 230
    assert m.poly_bernoulli(6, 6) == 22934774
    assert m.stirling2(4, 2) == 7

    assert dict(m.longest_path_counts(2, 2)) == {1: 2, 2: 4, 3: 8}
    pgf = [Fraction(a, b) for a, b in m.pgf_coefficients(2, 2)]
    assert pgf == [Fraction(1, 7), Fraction(2, 7), Fraction(4, 7)]
    assert Fraction(*m.mean_exact(2, 2)) == Fraction(17, 7)
    assert Fraction(*m.variance_exact(2, 2)) == Fraction(26, 49)

    lengths = m.sample_lengths(2, 2, 2000, 7)
    assert m.sample_lengths(2, 2, 2000, 7) == lengths, "sampling must be reproducible"
    assert set(lengths) <= {1, 2, 3}
    assert abs(lengths.count(3) / len(lengths) - 4 / 7) < 0.05

    text = m.sample_matrix(3, 4, 123)
    assert text.splitlines()[0] == "3 4"
    assert m.is_lonesum(text)
    assert 1 <= m.longest_path(text) <= 6

    assert not m.is_lonesum("2 2\n10\n01\n")

    assert abs(m.asymptotic_mean(100) - (100 / 0.6931471805599453 - 0.46392964)) < 1e-6
    assert m.asymptotic_variance(100) > 0
    assert m.gaussian_distance(10) < m.gaussian_distance(5)

    print("smoke test passed")


if __name__ == "__main__":
    main()
