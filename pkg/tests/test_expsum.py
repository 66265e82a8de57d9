import os

import pytest

from airycheck.arith import GF, CyclotomicValue, FqField, psi
from airycheck.expsum import (
    airy_trace_table,
    cached_airy_table,
    compare_traces,
    hecke_trace_bruteforce,
    hecke_trace_closed,
    hecke_trace_table,
    weil_check,
)
from airycheck.gln_airy import f_poly, make_params, poly_eval


def test_trace_identity_n2():
    # Hecke eigenvalue trace = Airy trace for GL_2 (trivial Tate twist)
    for p in (5, 7):
        for lam1 in (0, 1, 2):
            v = compare_traces(2, p, 1, (lam1,))
            assert v.ok, v.detail


def test_trace_identity_n2_ext():
    v = compare_traces(2, 5, 2, (1,))
    assert v.ok, v.detail


def test_trace_identity_n4():
    v = compare_traces(4, 7, 1, (1, 0))
    assert v.ok, v.detail
    # twist really is by q^{n/2-1} = q here
    params = make_params(4, GF(7), (1, 0))
    closed = hecke_trace_table(params)
    airy = airy_trace_table(f_poly(params), 7, 1)
    for a in GF(7).elements():
        assert closed.entries[a] == airy.entries[a] * 7


def test_closed_matches_bruteforce():
    params = make_params(2, GF(7), (3,))
    brute = hecke_trace_table(params, brute=True)
    closed = hecke_trace_table(params)
    assert brute == closed
    # the per-fiber enumeration agrees entry by entry
    for a in GF(7).elements():
        assert hecke_trace_bruteforce(params, a) == closed.entries[a]


def test_airy_constant_shift():
    # replacing f by f + c multiplies each entry by psi(c)
    p = 7
    F = GF(p)
    f = [F(0), F(2), F(0), F(1)]
    g = [F(3), F(2), F(0), F(1)]
    t1 = airy_trace_table(f, p, 1)
    t2 = airy_trace_table(g, p, 1)
    factor = psi(p, 3)
    for t in F.elements():
        assert t2.entries[t] == factor * t1.entries[t]


def test_airy_column_sum_orthogonality():
    # sum over t of entries is -q psi(f(0)): only x = 0 survives
    p, e = 5, 1
    F = GF(p)
    f = [F(1), F(2), F(1), F(3)]
    table = airy_trace_table(f, p, e)
    acc = CyclotomicValue.zero(p)
    for t in F.elements():
        acc = acc + table.entries[t]
    assert acc == psi(p, poly_eval(F, f, F(0))) * (-p)


def test_airy_extension_field():
    p, e = 5, 2
    F = FqField(p, e)
    f = [F(0), F(1), F(0), F(1)]
    table = airy_trace_table(f, p, e)
    assert table.q == 25 and len(table.entries) == 25
    assert weil_check(table).ok


def test_airy_rejects_bad_degree():
    F = GF(5)
    with pytest.raises(ValueError):
        airy_trace_table([F(0), F(1)], 5, 1)  # degree 1
    with pytest.raises(ValueError):
        airy_trace_table([F(0)] * 5 + [F(1)], 5, 1)  # p | deg f


def test_weil_bound_values():
    params = make_params(2, GF(11), (2,))
    airy = airy_trace_table(f_poly(params), 11, 1)
    v = weil_check(airy)
    assert v.ok
    assert v.detail["bound"] == pytest.approx(2 * 11 ** 0.5)
    assert v.detail["worst"] <= v.detail["bound"] + 1e-6
    # the scaled bound applies to the Hecke table
    closed = hecke_trace_table(make_params(4, GF(7), (1, 2)))
    v = weil_check(closed)
    assert v.ok
    assert v.detail["bound"] == pytest.approx(4 * 7 ** 0.5 * 7)


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("AIRY_CACHE_DIR", str(tmp_path))
    params = make_params(2, GF(7), (1,))
    f = f_poly(params)
    t1 = cached_airy_table(f, 7, 1)
    files = os.listdir(tmp_path)
    assert len(files) == 1 and files[0].startswith("airy-")
    t2 = cached_airy_table(f, 7, 1)
    assert t1 == t2
    assert t2 == airy_trace_table(f, 7, 1)


def test_brute_budget():
    params = make_params(4, GF(223), (1, 0))  # 223^3 exceeds the budget
    with pytest.raises(ValueError):
        hecke_trace_table(params, brute=True)
