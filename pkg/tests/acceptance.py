"""The twelve acceptance criteria as plain functions.

Each returns ``(ok, detail)``.  ``python3 tests/acceptance.py`` runs them all
and prints one line per criterion; test_acceptance.py wraps them for pytest.
"""
import contextlib
import io
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from exprgen import corpus  # noqa: E402
from qheisenberg.cli import main  # noqa: E402
from qheisenberg.expr import parse_expression, to_text  # noqa: E402
from qheisenberg.ncalg import (  # noqa: E402
    AlgebraPreset,
    NCElement,
    a_closed_form,
    a_coefficients,
    c_coefficients,
    d_coefficients,
    f_from_recursion,
    is_central,
    multiply,
    normal_order,
    omega,
    poisson_from_commutator,
    power,
    young_area_sum,
)
from qheisenberg.coeff import LaurentPoly, limit_bracket  # noqa: E402
from qheisenberg.poisson import PointData, leaf_dimension, rank, structure_data  # noqa: E402
from qheisenberg.reps import (  # noqa: E402
    commutant_dimension,
    dkp_check,
    frt_representation,
    verify_relations,
)
from qheisenberg.skewnf import (  # noqa: E402
    AlgebraSpec,
    bareiss_det,
    build_matrix,
    canonical_form,
    degree,
    mat_mul,
    transpose,
)

GOLDEN = Path(__file__).parent / "golden"


def random_skew(rnd, max_n=8, bound=9):
    n = rnd.randint(1, max_n)
    H = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rnd.randint(-bound, bound)
            H[i][j], H[j][i] = v, -v
    return H


def criterion_1():
    rnd = random.Random(1)
    for k in range(500):
        H = random_skew(rnd)
        cf = canonical_form(H)
        if bareiss_det(cf.W) != 1 or mat_mul(mat_mul(cf.W, H), transpose(cf.W)) != cf.matrix():
            return False, f"matrix #{k}: {H}"
    return True, "500 matrices"


def criterion_2():
    bad = []
    for T in range(1, 7):
        for arrow in ("down", "up"):
            cf = canonical_form(build_matrix(AlgebraSpec.L_T(T, arrow)))
            fours = max((T - 2) // 2, 0) if arrow == "down" else T // 2
            want = sorted([4] * fours + [1] * (T // 2) + [2] * (T % 2))
            want_rank = 2 * T - 2 if arrow == "down" else 2 * T
            if sorted(cf.blocks) != want or cf.rank != want_rank:
                bad.append(f"L^{T}_{arrow}: blocks {sorted(cf.blocks)} rank {cf.rank}, stated {want} rank {want_rank}")
    return not bad, "; ".join(bad) or "T = 1..6"


def criterion_3():
    for m in (3, 5, 7):
        for N in range(2, 7):
            if degree(build_matrix(AlgebraSpec.frtbar(N)), m) != m ** (N - 1):
                return False, f"FRTbar({N}) at m={m}"
            if degree(build_matrix(AlgebraSpec.oh_localized(N)), m) != m ** N:
                return False, f"Oh localized ({N}) at m={m}"
    return True, "m in 3,5,7; N in 2..6"


def criterion_4():
    A = AlgebraPreset.frt(3)
    rnd = random.Random(4)
    names = A.names

    def word():
        return [rnd.choice(names) for _ in range(rnd.randint(1, 3))]

    for k in range(1000):
        words = [word() for _ in range(3)]
        a, b, c = (normal_order(w, A) for w in words)
        forms = [
            multiply(multiply(a, b), c),
            multiply(a, multiply(b, c)),
            normal_order(words[0] + words[1] + words[2], A),
            multiply(normal_order(words[0] + words[1], A), c),
            multiply(a, normal_order(words[1] + words[2], A)),
        ]
        if any(f != forms[0] for f in forms[1:]):
            return False, f"triple #{k}: {words}"
    return True, "1000 triples, 5 evaluation orders each"


def criterion_5():
    for m in (3, 5):
        for N in (2, 3):
            A = AlgebraPreset.frt(N)
            cands = [power(NCElement.gen(A, k, m), m) for k in range(2 * N)]
            cands.append(omega(A, 0, m))
            top, top_s = NCElement.gen(A, N - 1, m), NCElement.gen(A, 2 * N - 1, m)
            cands += [power(top, a) * power(top_s, m - a) for a in range(m + 1)]
            for x in cands:
                if not is_central(x):
                    return False, f"m={m}, N={N}: {x}"
    return True, "m in 3,5; N in 2,3"


def criterion_6():
    for N, m in ((2, 3), (3, 3), (2, 5)):
        A = AlgebraPreset.frt(N)
        for i in range(N):
            want = NCElement(A, {}, m)
            for k in range(i, N):
                mono = [0] * (2 * N)
                mono[k] = mono[N + k] = m
                want = want + NCElement.monomial(A, mono, 1, m)
            if power(omega(A, i, m), m) != want:
                return False, f"Omega_{i}^{m} in N={N}"
    return True, "(N,m) in (2,3),(3,3),(2,5)"


def _expected_bracket(N, u, v):
    """The stated brackets, written out independently: indices < N are z_k,
    the rest z_{k-N}^*.  Returns {exponent tuple: coefficient}."""
    def mono(*idx):
        e = [0] * (2 * N)
        for i in idx:
            e[i] += 1
        return tuple(e)

    star = lambda k: N + k
    tu, iu = (u >= N, u % N)
    tv, iv = (v >= N, v % N)
    if not tu and not tv:
        sign = -1 if iu < iv else 1
        return {mono(u, v): sign}
    if tu and tv:
        sign = 1 if iu < iv else -1
        return {mono(u, v): sign}
    if tu:
        return {k: -c for k, c in _expected_bracket(N, v, u).items()}
    if iu != iv:
        return {mono(u, v): -1}
    return {mono(k, star(k)): 2 for k in range(iu + 1, N)}


def criterion_7():
    for N in (2, 3):
        for u in range(2 * N):
            for v in range(2 * N):
                if u == v:
                    continue
                got = poisson_from_commutator(u, v, N, 3).as_dict()
                want = _expected_bracket(N, u, v)
                if got != want:
                    return False, f"N={N}: {{{u},{v}}} = {got}, stated {want}"
    return True, "all pairs, N in 2,3, m=3"


def criterion_8():
    for n in range(1, 7):
        row = a_coefficients(n)
        if any(row[t] != a_closed_form(t, n) for t in range(1, n + 1)):
            return False, f"a-recursion vs closed form at n={n}"
    for t in range(2, 8):
        if any(not a_closed_form(t, s).is_zero() for s in range(1, t)):
            return False, f"a_{t}(s) nonzero below t"
    q = LaurentPoly.q()
    for i in range(0, 7):
        c = c_coefficients(i)
        for j in range(i + 1):
            if young_area_sum(i, j) != f_from_recursion(i, j) or f_from_recursion(i, j) != q ** (2 * (i - 1) * j) * c[j]:
                return False, f"Young oracle at i={i}, j={j}"
    for m in (3, 5):
        lims = [limit_bracket(d, m) for d in d_coefficients(m, m)]
        if not all(x.is_zero() for x in lims[:-1]) or lims[-1].to_rational() != 2:
            return False, f"[d_{m},j({m})] = {[x.format() for x in lims]}"
    return True, "a, Young, d at m in 3,5"


def sweep_points(N, count=1000, seed=9):
    """Coordinates in -2..2, with zeros over-represented so the degenerate
    strata get sampled densely."""
    rnd = random.Random(seed * 100 + N)
    pts = []
    for _ in range(count):
        p0 = rnd.choice([0.2, 0.5, 0.8])
        pts.append(PointData(N, [0 if rnd.random() < p0 else rnd.choice([-2, -1, 1, 2]) for _ in range(2 * N)]))
    return pts


def criterion_9():
    total = 0
    for N in range(1, 6):
        for p in sweep_points(N):
            total += 1
            if leaf_dimension(structure_data(p)) != rank(p):
                return False, f"point {p}"
    return True, f"{total} points, N = 1..5"


def criterion_10():
    structures = set()
    for N in range(1, 6):
        for p in sweep_points(N):
            structures.add(structure_data(p))
    for ls in structures:
        for m in (3, 5):
            r = dkp_check(ls, m)
            if not r.ok:
                return False, f"{ls} at m={m}: {r.to_json()}"
    return True, f"{len(structures)} structures, m in 3,5"


def criterion_11():
    for N, m in ((2, 3), (3, 3), (2, 5)):
        rep = frt_representation(N, m)
        report = verify_relations(rep, AlgebraPreset.frtbar(N))
        if rep.dim != m ** (N - 1) or not report.ok or commutant_dimension(rep) != 1:
            return False, f"(N,m)=({N},{m}): {report.failures[:2]}"
    return True, "(2,3), (3,3), (2,5)"


def criterion_12():
    texts = corpus(200)
    for s in texts:
        node = parse_expression(s)
        if parse_expression(to_text(node)) != node:
            return False, f"round trip: {s!r}"
    from test_cli import CASES

    for name, (argv, _) in CASES.items():
        for fmt, extra in (("json", ["--json"]), ("txt", [])):
            outs = []
            for _ in range(2):
                buf = io.StringIO()
                with contextlib.redirect_stdout(buf):
                    main(argv + extra)
                outs.append(buf.getvalue())
            if outs[0] != outs[1] or outs[0] != (GOLDEN / f"{name}.{fmt}").read_text():
                return False, f"golden {name}.{fmt}"
    return True, f"200 expressions, {2 * len(CASES)} goldens"


CRITERIA = [
    (1, "canonical form soundness", criterion_1),
    (2, "L^T block tables", criterion_2),
    (3, "degree formulas", criterion_3),
    (4, "rewriting confluence", criterion_4),
    (5, "centrality at roots of unity", criterion_5),
    (6, "m-th power of Omega", criterion_6),
    (7, "Poisson oracle", criterion_7),
    (8, "coefficient identities", criterion_8),
    (9, "leaf dimension vs rank", criterion_9),
    (10, "DKP identity", criterion_10),
    (11, "explicit representation", criterion_11),
    (12, "parser and goldens", criterion_12),
]


def line(num, title, ok, detail, secs):
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail} ({secs:.1f}s)"


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        t0 = time.time()
        ok, detail = fn()
        failed += not ok
        print(line(num, title, ok, detail, time.time() - t0), flush=True)
    sys.exit(1 if failed else 0)
