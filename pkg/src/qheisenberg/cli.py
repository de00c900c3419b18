"""Command-line front end: ``qheis <command> [options]``.

Exit status: 0 success, 1 usage or parse error, 2 computation error,
3 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import ncalg, poisson, reps, skewnf
from .coeff import limit_bracket, parse_rational
from .errors import ComputationError, ParseError, QHeisError, VerificationMismatch
from .expr import evaluate, parse_expression
from .ncalg import AlgebraPreset, format_element
from .poisson import PointData
from .skewnf import AlgebraSpec, SkewMatrix

PRESETS = ("frt", "frtbar", "oh", "ohloc", "torus")


class UsageError(QHeisError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which we reserve for computation errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument helpers


def _load_matrix(path: str) -> SkewMatrix:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read matrix file {path}: {exc}") from exc
    if isinstance(obj, dict):
        return SkewMatrix.from_json(obj)
    return SkewMatrix(tuple(tuple(int(x) for x in row) for row in obj))


def _parse_spec(text: str) -> AlgebraSpec:
    """``L_up:1,1``, ``L_down:0,1``, ``M:3``."""
    kind, _, rest = text.partition(":")
    nums = [int(x) for x in rest.split(",") if x.strip()] if rest else []
    if kind == "L_up":
        return AlgebraSpec.L_up(*nums)
    if kind == "L_down":
        return AlgebraSpec.L_down(*nums)
    if kind == "M" and len(nums) == 1:
        return AlgebraSpec.M(nums[0])
    raise UsageError(f"bad --spec {text!r}; expected L_up:s1,..  L_down:s1,..  or M:x")


def _need(args, name: str):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required for {args.command}")
    return v


def _preset(args) -> AlgebraPreset:
    p = args.preset or "frt"
    if p == "torus":
        return AlgebraPreset.torus(_load_matrix(_need(args, "matrix")))
    N = _need(args, "N")
    if p == "frt":
        return AlgebraPreset.frt(N)
    if p == "frtbar":
        return AlgebraPreset.frtbar(N)
    if p == "oh":
        return AlgebraPreset.oh(N)
    return AlgebraPreset.oh_localized(N)


def _skew(args) -> SkewMatrix:
    if args.spec:
        if args.preset or args.matrix:
            raise UsageError("give exactly one of --spec, --matrix, --preset")
        return skewnf.build_matrix(_parse_spec(args.spec))
    if args.matrix and args.preset not in (None, "torus"):
        raise UsageError("--matrix goes with --preset torus")
    if args.matrix:
        return _load_matrix(args.matrix)
    p = args.preset or "frtbar"
    N = _need(args, "N")
    if p in ("frt", "frtbar"):
        return skewnf.build_matrix(AlgebraSpec.frtbar(N))
    if p == "oh":
        return skewnf.build_matrix(AlgebraSpec.oh(N))
    if p == "ohloc":
        return skewnf.build_matrix(AlgebraSpec.oh_localized(N))
    raise UsageError("--preset torus needs --matrix")


def _point(args) -> PointData:
    return PointData.parse(_need(args, "point"), args.N)


def _coord_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"bad --coord-range {text!r}; expected LO..HI")
    return range(int(lo), int(hi) + 1)


def _rows(M) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in M)


# ---------------------------------------------------------------------------
# commands; each returns (text, json_obj, exit_code)


def cmd_canon(args):
    cf = skewnf.canonical_form(_skew(args))
    text = (
        f"blocks: {' '.join(map(str, cf.blocks)) or '-'}\n"
        f"zero_count: {cf.zero_count}\n"
        f"orientation: {cf.orientation}\n"
        f"W:\n{_rows(cf.W)}"
    )
    return text, cf.to_json(), 0


def cmd_degree(args):
    m = _need(args, "m")
    d = skewnf.degree(_skew(args), m)
    return str(d), {"degree": d, "m": m}, 0


def cmd_center(args):
    m = _need(args, "m")
    basis = skewnf.center_lattice(_skew(args), m)
    return _rows(basis) or "(trivial)", {"m": m, "basis": basis}, 0


def _element(args):
    alg = _preset(args)
    return evaluate(parse_expression(args.expr), alg, args.m)


def cmd_normal_order(args):
    x = _element(args)
    return format_element(x), {"element": x.to_json(), "text": format_element(x)}, 0


def cmd_central(args):
    res = ncalg.is_central(_element(args))
    if res.central:
        return "central", {"central": True}, 0
    comm = format_element(res.commutator)
    text = f"not central: [x, {res.witness}] = {comm}"
    return text, {"central": False, "witness": res.witness, "commutator": comm}, 0


def cmd_poisson_oracle(args):
    N, m = _need(args, "N"), _need(args, "m")
    alg = _preset(args)
    if alg.kind == "torus":
        raise UsageError("poisson-oracle needs an N-indexed preset")
    b = ncalg.poisson_from_commutator(args.g1, args.g2, N, m, alg)
    return str(b), {"bracket": str(b), "terms": b.to_json()}, 0


def cmd_leaf_dim(args):
    p = _point(args)
    ls = poisson.structure_data(p)
    formula = poisson.leaf_dimension(ls)
    oracle = poisson.rank(p)
    obj = {"point": p.to_json(), "structure": ls.to_json(), "formula": formula, "oracle": oracle, "ok": formula == oracle}
    if formula != oracle:
        return f"MISMATCH: formula {formula}, Poisson rank {oracle}", obj, 3
    return f"leaf_dim {formula}", obj, 0


def cmd_good_point(args):
    q = poisson.good_point(_point(args), literal=args.literal)
    return str(q), {"point": q.to_json()}, 0


def cmd_flow(args):
    p = _point(args)
    lam = parse_rational(args.lam)
    q = poisson.flow_step(p, args.k, lam)
    return str(q), {"point": q.to_json()}, 0


def _rep(args):
    m = _need(args, "m")
    if (args.preset or "frt") == "torus":
        return reps.torus_representation(_load_matrix(_need(args, "matrix")), m)
    if args.preset not in (None, "frt"):
        raise UsageError("explicit representations exist for --preset frt and torus")
    return reps.frt_representation(_need(args, "N"), m)


def _rep_preset(args):
    if (args.preset or "frt") == "torus":
        return AlgebraPreset.torus(_load_matrix(args.matrix))
    # the explicit module is one of the quasipolynomial algebra
    return AlgebraPreset.frtbar(args.N)


def cmd_rep_build(args):
    rep = _rep(args)
    lines = [f"dim {rep.dim}"]
    for name, M in rep.mats.items():
        lines.append(f"{name}:")
        lines.extend("  " + " ".join(x.format() for x in row) for row in M)
    return "\n".join(lines), rep.to_json(), 0


def cmd_rep_verify(args):
    rep = _rep(args)
    report = reps.verify_relations(rep, _rep_preset(args))
    if not report.ok:
        return "FAIL: " + "; ".join(report.failures), report.to_json(), 3
    return f"ok ({len(report.checks)} relations)", report.to_json(), 0


def cmd_rep_commutant(args):
    rep = _rep(args)
    d = reps.commutant_dimension(rep)
    return str(d), {"dim": rep.dim, "commutant_dimension": d}, 0


def cmd_dkp_check(args):
    m = _need(args, "m")
    p = _point(args)
    if args.preset == "oh":
        rep = reps.oh_dkp_check(p, m)
    else:
        rep = reps.dkp_check(poisson.structure_data(p), m)
    text = f"{'ok' if rep.ok else 'FAIL'}, rep_dim {rep.rep_dim}, leaf_dim {rep.leaf_dim}"
    return text, rep.to_json(), 0 if rep.ok else 3


def cmd_dkp_sweep(args):
    N, m = _need(args, "N"), _need(args, "m")
    rng = _coord_range(args.coord_range)
    if args.preset == "oh":
        res = reps.oh_dkp_sweep(N, m, rng)
    else:
        res = reps.dkp_sweep(N, m, rng, oracle=args.oracle)
    text = (
        f"{'ok' if res.ok else 'FAIL'}: {res.points} points, {res.structures} structures, "
        f"{len(res.failures)} failures, {len(res.oracle_mismatches)} oracle mismatches"
    )
    return text, res.to_json(), 0 if res.ok else 3


def cmd_coeffs_a(args):
    row = ncalg.a_coefficients(args.n)
    text = "\n".join(f"a_{t}({args.n}) = {p.format()}" for t, p in enumerate(row))
    return text, {"n": args.n, "a": [p.to_json() for p in row]}, 0


def cmd_coeffs_d(args):
    row = ncalg.d_coefficients(args.i, args.s)
    lines = [f"d_{args.i},{j}({args.s}) = {p.format()}" for j, p in enumerate(row, 1)]
    obj = {"i": args.i, "s": args.s, "d": [p.to_json() for p in row]}
    if args.m is not None:
        lims = [limit_bracket(p, args.m) for p in row]
        lines += [f"[d_{args.i},{j}({args.s})] = {v.format()}" for j, v in enumerate(lims, 1)]
        obj["limits"] = [v.to_json() for v in lims]
        obj["m"] = args.m
    return "\n".join(lines), obj, 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=PRESETS)
    common.add_argument("--N", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--matrix", metavar="FILE", help="skew matrix as JSON (list of rows or {n, entries})")
    common.add_argument("--spec", help="L_up:s1,..  L_down:s1,..  or M:x")
    common.add_argument("--point", help="comma-separated a_0..a_{N-1}, a*_{N-1}..a*_0")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE")

    ap = _Parser(prog="qheis", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=fn)
        return p

    add("canon", cmd_canon, help="skew normal form")
    add("degree", cmd_degree, help="PI degree at an m-th root of unity")
    add("center", cmd_center, help="exponent lattice of the center mod m")
    add("normal-order", cmd_normal_order, help="normal form of an expression").add_argument("expr")
    add("central", cmd_central, help="centrality test").add_argument("expr")
    p = add("poisson-oracle", cmd_poisson_oracle, help="Poisson bracket via commutator limits")
    p.add_argument("g1")
    p.add_argument("g2")
    add("leaf-dim", cmd_leaf_dim, help="symplectic leaf dimension, formula vs rank")
    add("good-point", cmd_good_point, help="move a point to a good point").add_argument(
        "--literal", action="store_true", help="uncompensated variant"
    )
    p = add("flow", cmd_flow, help="one Hamiltonian flow step")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lam", required=True)

    rep = sub.add_parser("rep", help="explicit representations")
    rsub = rep.add_subparsers(dest="action", parser_class=_Parser)
    rsub.required = True
    for name, fn in (("build", cmd_rep_build), ("verify", cmd_rep_verify), ("commutant", cmd_rep_commutant)):
        rsub.add_parser(name, parents=[common]).set_defaults(func=fn)

    dkp = sub.add_parser("dkp", help="DKP dimension identity")
    dsub = dkp.add_subparsers(dest="action", parser_class=_Parser)
    dsub.required = True
    dsub.add_parser("check", parents=[common]).set_defaults(func=cmd_dkp_check)
    p = dsub.add_parser("sweep", parents=[common])
    p.set_defaults(func=cmd_dkp_sweep)
    p.add_argument("--coord-range", default="-1..2")
    p.add_argument("--oracle", action="store_true", help="also compare with the Poisson rank")

    co = sub.add_parser("coeffs", help="coefficient recursions")
    csub = co.add_subparsers(dest="action", parser_class=_Parser)
    csub.required = True
    p = csub.add_parser("a", parents=[common])
    p.set_defaults(func=cmd_coeffs_a)
    p.add_argument("--n", type=int, required=True)
    p = csub.add_parser("d", parents=[common])
    p.set_defaults(func=cmd_coeffs_d)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    return ap


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    want_json = args.json
    try:
        text, obj, code = args.func(args)
    except VerificationMismatch as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ParseError) as exc:
        print(f"qheis: error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    out = _dump(obj) if want_json else text + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
