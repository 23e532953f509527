"""Property-suite tests: clean pass, and detection of a seeded fault."""

import math

from qwalk.verify import run_suite


def test_all_properties_pass_clean():
    results = run_suite()
    failed = [r.name for r in results if not r.passed]
    assert not failed, f"properties failed: {failed}"


def test_result_records_are_sane():
    results = run_suite()
    names = [r.name for r in results]
    assert len(names) == len(set(names))
    assert len(results) >= 20
    for r in results:
        assert r.name
        assert math.isfinite(r.measured)
        assert r.tolerance >= 0.0


def test_perturbed_kernel_is_caught():
    results = run_suite(perturb=True)
    failed = [r.name for r in results if not r.passed]
    # a 1e-3 error in one Bessel order must break unitarity, among others
    assert any("unitarity" in name for name in failed)
    assert len(failed) >= 3


def test_perturbation_does_not_leak():
    run_suite(perturb=True)
    results = run_suite()
    assert all(r.passed for r in results)
