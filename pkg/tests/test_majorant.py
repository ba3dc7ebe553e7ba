import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from yoshida.errors import ValidationError
from yoshida.hecke import NewformCoeffs
from yoshida.majorant import (
    REFERENCE_PARAMS,
    MajorantParams,
    feasible_numeric,
    feasible_sufficient,
    lemma_sum_bound,
    lipschitz_bound,
    optimize_delta,
    q_eval,
    r_eval,
)
from yoshida.primes import primes_up_to

# Optimum of the 1e-5-grid LP oracle (dense linprog over 200001 points),
# frozen at first build; re-derived live in test_optimize_against_dense_oracle.
DENSE_ORACLE_DELTA = 0.9348468421529819


def dense_lp_oracle(step):
    """Independent dense-grid LP: minimize delta s.t. the majorant dominates
    t at every grid point."""
    n = round(2.0 / step)
    t = np.linspace(0.0, 2.0, n + 1)
    P = t**4 - 3 * t**2 + 1
    Q = t**2 - 1
    A = np.column_stack([-np.ones_like(t), -P, -Q])
    res = linprog(c=[1.0, 0.0, 0.0], A_ub=A, b_ub=-t,
                  bounds=[(None, None)] * 3, method="highs")
    assert res.success
    return res.x


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_q_eval_reference_point():
    assert q_eval(REFERENCE_PARAMS, Fraction(0)) == Fraction(644, 1000)
    assert q_eval(REFERENCE_PARAMS, Fraction(2)) == Fraction(2012, 1000)
    assert r_eval(REFERENCE_PARAMS, Fraction(2)) == Fraction(12, 1000)


def test_q_eval_alpha_zero():
    p = MajorantParams(1.0, 0.0, 5.0)
    assert q_eval(p, 1.0) == 1.0
    assert r_eval(p, 1.0) == 0.0


def test_beta_is_derived():
    p = MajorantParams(Fraction(11, 10), Fraction(-57, 1000), Fraction(-7))
    assert p.beta == Fraction(399, 1000)
    q = MajorantParams(1.0, -0.05, -8.0)
    assert q.beta == pytest.approx(0.4)


def test_scale_coherence_exact():
    # r(0) and r(2) reproduce the two endpoint expressions exactly
    for params in (REFERENCE_PARAMS, MajorantParams(Fraction(2), Fraction(-1, 50), Fraction(1))):
        d, a, u = params.delta, params.alpha, params.upsilon
        assert r_eval(params, Fraction(0)) == d + (1 - u) * a
        assert r_eval(params, Fraction(2)) == d + (5 + 3 * u) * a - 2


# ---------------------------------------------------------------------------
# sufficient conditions
# ---------------------------------------------------------------------------

def test_feasible_sufficient_reference_slacks():
    fc = feasible_sufficient(REFERENCE_PARAMS)
    assert fc.ok
    der = fc.checks["derivative"]
    assert der.lhs == Fraction(207936, 1000)  # (0.456)^2 * 10^3
    assert der.rhs == 216
    assert fc.checks["endpoint_0"].rhs == Fraction(644, 1000)
    assert fc.checks["endpoint_2"].rhs == Fraction(2012, 1000)
    assert fc.checks["endpoint_2"].slack == Fraction(12, 1000)


def test_feasible_sufficient_sign_flip():
    fc = feasible_sufficient(MajorantParams(Fraction(11, 10), Fraction(57, 1000), Fraction(-7)))
    assert not fc.ok
    assert not fc.checks["alpha_negative"].ok


def test_feasible_sufficient_endpoint2_fails():
    fc = feasible_sufficient(MajorantParams(Fraction(1), Fraction(-57, 1000), Fraction(-7)))
    assert not fc.ok
    assert not fc.checks["endpoint_2"].ok  # 1 + 0.912 = 1.912 <= 2


# ---------------------------------------------------------------------------
# numeric certificate
# ---------------------------------------------------------------------------

def test_feasible_numeric_reference():
    cert = feasible_numeric(REFERENCE_PARAMS, 1e-4)
    assert cert.ok
    assert cert.min_r == pytest.approx(0.012, abs=1e-6)
    assert cert.argmin == 2.0


def test_feasible_numeric_near_linear():
    cert = feasible_numeric(MajorantParams(2.001, -1e-9, 0.0), 1e-4)
    assert cert.ok


def test_feasible_numeric_infeasible_point():
    cert = feasible_numeric(MajorantParams(1.0, 0.0, 0.0), 1e-4)
    assert not cert.ok
    assert cert.min_r == pytest.approx(-1.0)  # r(2) = 1 - 2


def test_feasible_numeric_rejects_coarse_grid():
    with pytest.raises(ValidationError):
        feasible_numeric(REFERENCE_PARAMS, 1.0)
    with pytest.raises(ValidationError):
        feasible_numeric(REFERENCE_PARAMS, 0.0)


def test_sufficient_implies_grid_positive():
    """Soundness: triples passing the sufficient conditions have r > 0 on the
    whole grid, and the certificate passes whenever the endpoint slack clears
    the certificate margin (min r = r(2) since r is decreasing)."""
    rng = np.random.default_rng(2024)
    ts = np.linspace(0.0, 2.0, 20001)
    t2 = ts * ts
    kept = 0
    cert_checked = 0
    while kept < 10**4:
        d = rng.uniform(0.3, 3.2, size=4096)
        a = rng.uniform(-0.25, -1e-4, size=4096)
        u = rng.uniform(-12.0, 2.95, size=4096)
        ok = (
            (64 * a * a * (3 - u) ** 3 < 216)
            & (d + (1 - u) * a > 0)
            & (d + (5 + 3 * u) * a > 2)
        )
        d, a, u = d[ok], a[ok], u[ok]
        if d.size == 0:
            continue
        take = min(d.size, 10**4 - kept)
        d, a, u = d[:take], a[:take], u[:take]
        kept += take
        # r on the grid for the whole batch (batch x grid)
        r = (d[:, None] + a[:, None] * (t2 * t2 + (u[:, None] - 3.0) * t2 + (1.0 - u[:, None]))
             - ts)
        min_r = r.min(axis=1)
        assert (min_r > 0.0).all()
        # grid minimum sits at t = 2 (r decreasing under the conditions)
        assert (np.argmin(r, axis=1) == len(ts) - 1).all()
        lip = 1.0 + np.abs(a) * (32.0 + 4.0 * np.abs(u - 3.0))
        strong = min_r > lip * 1e-4  # clears the margin with room
        for i in np.flatnonzero(strong)[:50]:
            cert_checked += 1
            assert feasible_numeric(MajorantParams(d[i], a[i], u[i]), 1e-4).ok
    assert cert_checked > 0


# ---------------------------------------------------------------------------
# optimizer
# ---------------------------------------------------------------------------

def test_optimize_beats_reference_delta():
    opt = optimize_delta(1e-4)
    assert float(opt.params.delta) <= 11 / 10 - 1e-3
    assert opt.certificate.ok
    assert opt.grid_delta == pytest.approx(DENSE_ORACLE_DELTA, abs=1e-5)
    assert float(opt.params.alpha) < 0


def test_optimize_reproducible():
    a = optimize_delta(1e-4)
    b = optimize_delta(1e-4)
    assert abs(float(a.params.delta) - float(b.params.delta)) <= 1e-6
    assert a.grid_delta == b.grid_delta


def test_optimize_against_dense_oracle():
    x = dense_lp_oracle(1e-5)
    assert x[0] == pytest.approx(DENSE_ORACLE_DELTA, abs=1e-7)
    opt = optimize_delta(1e-4)
    assert opt.grid_delta <= x[0] + 1e-6  # coarser grid can only relax


def test_optimize_monotone_in_grid():
    coarse = optimize_delta(1e-3)
    fine = optimize_delta(1e-4)
    lip = lipschitz_bound(coarse.params)
    assert fine.grid_delta <= coarse.grid_delta + lip * 1e-3


def test_optimize_refine_tightens():
    base = optimize_delta(1e-3)
    ref = optimize_delta(1e-3, refine=True)
    assert ref.grid_delta >= base.grid_delta - 1e-12
    assert ref.certificate.ok


def test_optimize_degenerate_constant_majorant():
    opt = optimize_delta(1e-3, alpha_fixed=0.0, beta_fixed=0.0)
    # best constant majorant of t on [0, 2] is 2, plus the certificate lift
    assert opt.grid_delta == pytest.approx(2.0, abs=1e-9)
    assert float(opt.params.delta) == pytest.approx(2.0 + opt.lift, abs=1e-12)
    assert opt.certificate.ok


def test_optimize_rejects_coarse_grid():
    with pytest.raises(ValidationError):
        optimize_delta(1e-2)


# ---------------------------------------------------------------------------
# lemma_sum_bound
# ---------------------------------------------------------------------------

def _flat_table(level, pmax, lam):
    coeffs = {int(p): float(lam) for p in primes_up_to(pmax)}
    return NewformCoeffs(level=level, weight=2, coeffs=coeffs, normalized=True)


def test_lemma_sum_all_zero_table():
    t = _flat_table(1, 100, 0.0)
    out = lemma_sum_bound(t, 10, REFERENCE_PARAMS)
    # per-prime majorant value at lambda = 0: 1.1 - 0.057 - 0.399 = 0.644
    assert out.rhs == pytest.approx(0.644 * 4, abs=1e-12)
    assert out.lhs == 0.0
    assert out.pointwise_ok


def test_lemma_sum_edge_table():
    t = _flat_table(1, 100, 2.0)
    out = lemma_sum_bound(t, 10, REFERENCE_PARAMS)
    # at the Ramanujan edge: 1.1 - 0.057*5 + 0.399*3 = 2.012 >= 2
    assert out.rhs == pytest.approx(2.012 * 4, abs=1e-12)
    assert out.lhs == pytest.approx(2.0 * 4)
    assert out.pointwise_ok


def test_lemma_sum_fixture_table(table_11a):
    out = lemma_sum_bound(table_11a, 10**4, REFERENCE_PARAMS)
    assert out.pointwise_ok
    assert out.lhs <= out.rhs
