"""Numbered acceptance criteria, each checked at its stated tolerance.

Every test records one ``criterion N PASS/FAIL`` line (printed in the
terminal summary) before asserting.
"""

import subprocess
import sys
import time

from conftest import ACCEPTANCE_LINES

from hylab import suite


def _record(n, title, ok, detail):
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _check(n, title, fn, limit=None):
    t0 = time.perf_counter()
    rows = fn(42)
    elapsed = time.perf_counter() - t0
    bad = [r for r in rows if not r.passed]
    ok = not bad and (limit is None or elapsed < limit)
    detail = f"{len(rows) - len(bad)}/{len(rows)} rows pass, {elapsed:.1f} s"
    if limit is not None:
        detail += f" (limit {limit:g} s)"
    if bad:
        detail += "; failing: " + ", ".join(f"{r.theorem}[{r.seed}] lhs={r.lhs:.6g} rhs={r.rhs:.6g}" for r in bad[:6])
    _record(n, title, ok, detail)
    assert not bad, detail
    if limit is not None:
        assert elapsed < limit, detail


def test_criterion_01_eigenvalue_formula():
    _check(1, "eigenvalue formula vs integral", suite.check_eigenvalues, limit=10)


def test_criterion_02_exact_l2_norm():
    _check(2, "K1 endpoints, monotonicity, maximizer", suite.check_k1)


def test_criterion_03_discretized_operator_norm():
    _check(3, "discretized operator norm", suite.check_opnorm, limit=60)


def test_criterion_04_mellin_plancherel():
    _check(4, "Mellin Plancherel and diagonalization", suite.check_mellin)


def test_criterion_05_comparison_ratios():
    _check(5, "comparison ratios", suite.check_ratios)


def test_criterion_06_p_gt_2_counterexample():
    _check(6, "p > 2 counterexample slopes", suite.check_counterexample, limit=5)


def test_criterion_07_well_projectedness():
    _check(7, "class certificates and Cantor square", suite.check_wp, limit=120)


def test_criterion_08_poisson_cauchy():
    _check(8, "Poisson weak type, maximal function, envelope", suite.check_poisson)


def test_criterion_09_master_theorem():
    _check(9, "constant ladder on 500-run corpora", suite.check_master)


def test_criterion_10_vertical_comb():
    _check(10, "vertical comb identity and Hilbert sections", suite.check_vertical_comb)


def test_criterion_11_determinism(tmp_path):
    outs, times = [], []
    for k in range(2):
        dest = tmp_path / f"run{k}.csv"
        t0 = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "hylab", "verify", "--suite", "all", "--seed", "42", "-o", str(dest)],
                              capture_output=True, text=True, check=False)
        times.append(time.perf_counter() - t0)
        assert proc.returncode in (0, 1), proc.stderr
        outs.append(dest.read_bytes())
    same = outs[0] == outs[1]
    ok = same and max(times) < 600
    _record(11, "byte-identical verify CSV", ok,
            f"identical={same}, {len(outs[0])} bytes, runs {times[0]:.1f} s / {times[1]:.1f} s (limit 600 s)")
    assert same
    assert max(times) < 600
