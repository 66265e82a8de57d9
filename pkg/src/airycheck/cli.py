"""Command-line entry point: every verification as a subcommand.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .arith import GF, FqField, complex_embed
from .chevalley import (
    QQ,
    build_algebra,
    centralizer_z,
    decomposition_check,
    p_minus_bijective,
    relevance_linear_kernel,
    relevance_quadratic_bruteforce,
    s1_graph,
    s1_graph_check,
    wP_representative,
)
from .expsum import (
    cached_airy_table,
    compare_traces,
    hecke_trace_table,
    weil_check,
)
from .gln_airy import (
    chi_eval,
    chi_geometric,
    exp_section,
    f_poly,
    geometric_section,
    log_section,
    make_params,
    phi_z_values,
    section_mul,
)
from .loopmodel import GLnModel, factorize_I1, stab_affine_roots
from .rootdata import (
    Coweight,
    alpha_mu,
    check_wP_heights,
    coxeter_number,
    dim_bunJ_defect,
    exponents,
    get_root_datum,
    minuscule_bijection_check,
    minuscule_coweights,
    stab_dimension,
    swan_identity_check,
    u_mu_roots,
    weyl_wP0,
)

SUITE_TYPES = (
    [("A", r) for r in range(1, 7)]
    + [("B", r) for r in (2, 3, 4)]
    + [("C", r) for r in (2, 3, 4)]
    + [("D", 4), ("G", 2), ("F", 4)]
)


def _suite_datum(series, rank):
    # the adjoint form carries the full coweight lattice, hence every
    # minuscule class
    return get_root_datum(series, rank, "adjoint")


# ---------------------------------------------------------------------------
# Acceptance checks.  Each returns (ok, params, witness).

def check_trace_gl2():
    failures = []
    grid = {"p": [5, 7, 11], "e": [1, 2], "lambda1": [0, 1, 2]}
    for p in grid["p"]:
        for e in grid["e"]:
            for l1 in grid["lambda1"]:
                v = compare_traces(2, p, e, (l1,), brute=True)
                if not v.ok:
                    failures.append(v.detail)
    return not failures, grid, failures or None


def check_trace_gl4():
    failures = []
    grid = {"p": [7, 11], "e": [1], "lambda": [(0, 0), (1, 0), (2, 3)]}
    for p in grid["p"]:
        for lam in grid["lambda"]:
            v = compare_traces(4, p, 1, lam, brute=True)
            if not v.ok:
                failures.append(v.detail)
    return not failures, grid, failures or None


def _airy_grid():
    for p in (5, 7, 11):
        for e in (1, 2):
            for l1 in (0, 1, 2):
                yield 2, p, e, (l1,)
    for p in (7, 11):
        for lam in ((0, 0), (1, 0), (2, 3)):
            yield 4, p, 1, lam


def check_weil():
    failures = []
    for n, p, e, lam in _airy_grid():
        field = GF(p) if e == 1 else FqField(p, e)
        params = make_params(n, field, lam)
        table = cached_airy_table(f_poly(params), p, e, lam=params.lam)
        v = weil_check(table)
        if not v.ok:
            failures.append({"n": n, "p": p, "e": e, "lambda": lam, **v.detail})
    return not failures, {"tables": "all Airy tables of criteria 1-2"}, failures or None


def check_decomposition():
    failures = []
    for series, rank in SUITE_TYPES:
        rd = _suite_datum(series, rank)
        alg = build_algebra(rd, QQ)
        h = alg.h
        exp_counts = {}
        for ex in exponents(rd):
            exp_counts[ex] = exp_counts.get(ex, 0) + 1
        zs = centralizer_z(alg)
        for r in range(1, h):
            if len(zs[r].basis) != exp_counts.get(r, 0):
                failures.append({"type": f"{series}{rank}", "r": r, "what": "dim z_r"})
            if not p_minus_bijective(alg, r):
                failures.append({"type": f"{series}{rank}", "r": r, "what": "p_minus"})
        for mu in minuscule_coweights(rd):
            for r in range(1, h):
                if not decomposition_check(alg, mu, r):
                    failures.append(
                        {"type": f"{series}{rank}", "mu": mu.coords, "r": r}
                    )
    return not failures, {"types": [f"{s}{r}" for s, r in SUITE_TYPES]}, failures or None


def check_rigidity_kernel():
    failures = []
    for series, rank in SUITE_TYPES:
        alg = build_algebra(_suite_datum(series, rank), QQ)
        for r in range(2, (alg.h + 1) // 2 + 1):
            if not relevance_linear_kernel(alg, r):
                failures.append({"type": f"{series}{rank}", "r": r, "what": "linear"})
    for series, rank, form in (("GL", 2, "gl"), ("GL", 4, "gl"), ("C", 2, "sc")):
        alg = build_algebra(get_root_datum(series, rank, form), GF(5))
        sols = relevance_quadratic_bruteforce(alg)
        nonzero = [s for s in sols if any(s)]
        if nonzero:
            failures.append({"type": f"{series}{rank}", "what": "quadratic", "sols": len(nonzero)})
    return not failures, {"quadratic_over": "F_5: GL_2, GL_4, Sp_4"}, failures or None


def check_factorization(seed=20240817, samples=100):
    failures = []
    for n in (2, 3, 4):
        model = GLnModel(n, 7)
        rng = random.Random(seed + n)
        for mu in minuscule_coweights(model.rd, degree_window=(0, 0)):
            for _ in range(samples):
                g = model.random_I1(rng)
                try:
                    u, a, s, res = factorize_I1(model, g, mu)
                except AssertionError:
                    failures.append({"n": n, "mu": mu.coords})
                    continue
                rec = model.mul(model.mul(model.mul(u, a), s), res)
                if not model.eq(rec, g):
                    failures.append({"n": n, "mu": mu.coords, "what": "reconstruction"})
    return not failures, {"n": [2, 3, 4], "p": 7, "samples": samples}, failures or None


def check_dim_components():
    failures = []
    for series, rank in SUITE_TYPES:
        rd = _suite_datum(series, rank)
        if dim_bunJ_defect(rd) != 0:
            failures.append({"type": f"{series}{rank}", "what": "defect"})
        if not minuscule_bijection_check(rd):
            failures.append({"type": f"{series}{rank}", "what": "bijection"})
    gl = get_root_datum("GL", 4, "gl")
    if not minuscule_bijection_check(gl, degree_window=(-2, 2)):
        failures.append({"type": "GL4", "what": "bijection"})
    return not failures, {"types": [f"{s}{r}" for s, r in SUITE_TYPES]}, failures or None


def check_stab_dichotomy():
    failures = []
    small = [(s, r) for s, r in SUITE_TYPES if r <= 3]
    for series, rank in small:
        rd = _suite_datum(series, rank)
        dim_b = rd.dim_b

        def scan(coords):
            if len(coords) == rank:
                mu = Coweight(tuple(coords))
                d = stab_dimension(rd, mu)
                if d < dim_b:
                    failures.append({"type": f"{series}{rank}", "mu": tuple(coords)})
                minuscule = rd.is_dominant(mu) and rd.is_minuscule(mu)
                if (d == dim_b) != minuscule:
                    failures.append(
                        {"type": f"{series}{rank}", "mu": tuple(coords), "what": "equality"}
                    )
                return
            for c in range(-2, 3):
                scan(coords + [c])

        scan([])
    return not failures, {"types": [f"{s}{r}" for s, r in small], "box": [-2, 2]}, failures or None


def check_weyl_appendix():
    failures = []
    for series, rank in SUITE_TYPES:
        rd = _suite_datum(series, rank)
        alg = build_algebra(rd, QQ)
        for mu in minuscule_coweights(rd):
            tag = {"type": f"{series}{rank}", "mu": mu.coords}
            if not check_wP_heights(rd, mu):
                failures.append({**tag, "what": "heights mod h"})
            try:
                u_mu_roots(rd, mu)  # asserts w_P Phi+ = Phi(u_mu)
                wP_representative(alg, mu)  # asserts Ad fixes X_{-1}
                stab_affine_roots(alg, mu)  # asserts the affine line set
            except AssertionError as exc:
                failures.append({**tag, "what": str(exc)})
                continue
            i = alpha_mu(rd, mu)
            if i is not None:
                simple = tuple(1 if j == i else 0 for j in range(rd.n))
                if weyl_wP0(rd, mu).apply_root(rd.theta) != simple:
                    failures.append({**tag, "what": "w_P0 theta"})
    return not failures, {"types": [f"{s}{r}" for s, r in SUITE_TYPES]}, failures or None


def check_character(seed=20240817):
    failures = []
    rng = random.Random(seed)
    F11 = GF(11)
    for n in (2, 4):
        for _ in range(500):
            y = [F11(rng.randrange(11)) for _ in range(n + 1)]
            if log_section(n, F11, exp_section(n, F11, y)) != y:
                failures.append({"n": n, "what": "roundtrip"})
                break
    params = make_params(4, GF(7), (1, 2))
    F7 = GF(7)
    for _ in range(1000):
        a = [F7(rng.randrange(7)) for _ in range(5)]
        b = [F7(rng.randrange(7)) for _ in range(5)]
        if chi_eval(params, section_mul(4, F7, a, b)) != chi_eval(params, a) + chi_eval(params, b):
            failures.append({"what": "additivity"})
            break
    for field, n, lam in (
        (GF(7), 2, (3,)),
        (GF(11), 4, (2, 3)),
        (FqField(7, 2), 2, (1,)),
        (FqField(11, 2), 4, (1, 0)),
    ):
        prm = make_params(n, field, lam)
        for m1 in field.elements():
            if chi_geometric(prm, m1) != chi_eval(prm, geometric_section(prm, m1)):
                failures.append({"n": n, "q": field.p ** getattr(field, "e", 1), "what": "geometric"})
                break
    for n, p in ((2, 7), (4, 7), (4, 11)):
        vals = phi_z_values(GLnModel(n, p))
        if any(vals[:-1]) or vals[-1] != GF(p)(n):
            failures.append({"n": n, "p": p, "what": "phi(Z)"})
    return not failures, {"n": [2, 4]}, failures or None


def check_s1_graph(seed=20240817):
    failures = []
    for n in (4, 6):
        alg = build_algebra(get_root_datum("GL", n, "gl"), GF(7))
        try:
            graph = s1_graph(alg)
        except (AssertionError, ValueError) as exc:
            failures.append({"n": n, "what": str(exc)})
            continue
        if not s1_graph_check(alg, graph, random.Random(seed + n), 200):
            failures.append({"n": n, "what": "sample relations"})
    return not failures, {"n": [4, 6], "p": 7, "samples": 200}, failures or None


def check_swan():
    failures = []
    for series, rank in SUITE_TYPES:
        if not swan_identity_check(_suite_datum(series, rank)):
            failures.append({"type": f"{series}{rank}"})
    return not failures, {"types": [f"{s}{r}" for s, r in SUITE_TYPES]}, failures or None


ACCEPTANCE = [
    ("trace-identity-gl2", check_trace_gl2),
    ("trace-identity-gl4", check_trace_gl4),
    ("weil-bound", check_weil),
    ("decomposition", check_decomposition),
    ("rigidity-kernel", check_rigidity_kernel),
    ("factorization", check_factorization),
    ("dim-and-components", check_dim_components),
    ("stab-dichotomy", check_stab_dichotomy),
    ("weyl-appendix", check_weyl_appendix),
    ("character-machinery", check_character),
    ("s1-graph", check_s1_graph),
    ("swan-identity", check_swan),
]


def run_check(name, fn):
    t0 = time.time()
    ok, params, witness = fn()
    verdict = {
        "check": name,
        "params": params,
        "pass": ok,
        "runtime_ms": int((time.time() - t0) * 1000),
    }
    if not ok:
        verdict["witness"] = witness
    return verdict


def emit_report(verdicts, seed=None):
    from . import __version__

    doc = {"checks": verdicts, "version": __version__}
    if seed is not None:
        doc["seed"] = seed
    return json.dumps(doc, indent=2, default=str)


# ---------------------------------------------------------------------------
# Subcommands.

def _parse_lambda(s):
    return tuple(int(x) for x in s.split(",")) if s else ()


def cmd_roots(args):
    rd = get_root_datum(args.series, args.rank, args.form)
    out = {
        "series": args.series,
        "rank": args.rank,
        "form": args.form,
        "num_roots": rd.num_roots,
        "coxeter_number": coxeter_number(rd),
        "exponents": list(exponents(rd)),
        "theta": list(rd.theta),
        "minuscule": [list(m.coords) for m in minuscule_coweights(
            rd, degree_window=(0, 0) if args.series == "GL" else None
        )],
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_grading(args):
    rd = get_root_datum(args.series, args.rank, args.form)
    alg = build_algebra(rd, QQ)
    zs = centralizer_z(alg)
    out = {
        "type": f"{args.series}{args.rank}",
        "h": alg.h,
        "dim_g": rd.dim_g,
        "dim_z": {r: len(zs[r].basis) for r in range(alg.h) if zs[r].basis},
        "heights": {str(k): v for k, v in sorted(rd.heights_count().items())},
    }
    print(json.dumps(out, indent=2))
    return 0


VERIFY_MAP = {
    "decomposition": ["decomposition"],
    "rigidity-kernel": ["rigidity-kernel"],
    "s1-graph": ["s1-graph"],
    "factorization": ["factorization"],
    "stab": ["stab-dichotomy"],
    "dim": ["dim-and-components", "swan-identity"],
    "all": [name for name, _ in ACCEPTANCE],
}


def cmd_verify(args):
    wanted = VERIFY_MAP[args.what]
    verdicts = [run_check(n, fn) for n, fn in ACCEPTANCE if n in wanted]
    print(emit_report(verdicts, seed=args.seed))
    return 0 if all(v["pass"] for v in verdicts) else 1


def cmd_chi(args):
    field = GF(args.prime) if args.ext == 1 else FqField(args.prime, args.ext)
    try:
        params = make_params(args.n, field, _parse_lambda(args.lam))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = {
        "n": args.n,
        "q": args.prime ** args.ext,
        "lambda": [str(x) for x in params.lam],
        "chi_geometric": str(chi_geometric(params, field(args.m1))),
        "f": [str(c) for c in f_poly(params)],
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_trace(args):
    field = GF(args.prime) if args.ext == 1 else FqField(args.prime, args.ext)
    try:
        params = make_params(args.n, field, _parse_lambda(args.lam))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.kind == "airy":
        table = cached_airy_table(f_poly(params), args.prime, args.ext, lam=params.lam)
    else:
        table = hecke_trace_table(params, brute=args.brute)
    out = {
        "kind": args.kind,
        "provenance": table.provenance,
        "q": table.q,
        "entries": {str(a): str(v) for a, v in table.entries.items()},
        "entries_abs": {str(a): abs(complex_embed(v)) for a, v in table.entries.items()},
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_compare(args):
    if args.n % 2 != 0:
        print("error: odd n unsupported", file=sys.stderr)
        return 2
    try:
        v = compare_traces(args.n, args.prime, args.ext, _parse_lambda(args.lam))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps({"pass": v.ok, **v.detail}, indent=2))
    return 0 if v.ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="airycheck")
    ap.add_argument("--seed", type=int, default=20240817)
    sub = ap.add_subparsers(dest="cmd", required=True)

    series_kw = dict(choices=["A", "B", "C", "D", "E", "F", "G", "GL"], required=True)
    p_roots = sub.add_parser("roots")
    p_roots.add_argument("--series", **series_kw)
    p_roots.add_argument("--rank", type=int, required=True)
    p_roots.add_argument("--form", default="adjoint")
    p_roots.set_defaults(fn=cmd_roots)

    p_gr = sub.add_parser("grading")
    p_gr.add_argument("--series", **series_kw)
    p_gr.add_argument("--rank", type=int, required=True)
    p_gr.add_argument("--form", default="adjoint")
    p_gr.set_defaults(fn=cmd_grading)

    p_ver = sub.add_parser("verify")
    p_ver.add_argument("what", choices=sorted(VERIFY_MAP))
    p_ver.add_argument("--suite", default="desk", choices=["desk"])
    p_ver.set_defaults(fn=cmd_verify)

    def scalar_args(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--prime", type=int, required=True)
        p.add_argument("--ext", type=int, default=1)
        p.add_argument("--lambda", dest="lam", default="")

    p_chi = sub.add_parser("chi")
    scalar_args(p_chi)
    p_chi.add_argument("--m1", type=int, default=0)
    p_chi.set_defaults(fn=cmd_chi)

    p_tr = sub.add_parser("trace")
    p_tr.add_argument("kind", choices=["airy", "hecke"])
    scalar_args(p_tr)
    p_tr.add_argument("--brute", action="store_true")
    p_tr.set_defaults(fn=cmd_trace)

    p_cmp = sub.add_parser("compare")
    scalar_args(p_cmp)
    p_cmp.set_defaults(fn=cmd_compare)
    return ap


def run(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
