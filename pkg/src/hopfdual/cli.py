"""Command-line driver: ``hopfdual <verb> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
Group arguments accept a file path or a corpus name such as ``cz2``; algebra
arguments accept a path or, with a corpus group, the algebra key (``swap``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import corpus_dir
from .dsl.compiler import DslEnv, DslTypeError, check_identity, compile_expr
from .dsl.syntax import DslSyntaxError, parse_identity_line
from .exact import NoSolution, ShapeError, format_scalar
from .hopf import NoIntegral, ValidationReport, bidual_check, dual_normalization_checks, validate
from .io import InputError, ValidationFailure, group_to_json, load_algebra, load_group
from .modular import dualize_pair, enumerate_pairs, verify_pair

PASS, FAIL, INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


def _group_path(arg: str) -> Path:
    p = Path(arg)
    if p.exists():
        return p
    q = corpus_dir() / f"{arg}.qg.json"
    if q.exists():
        return q
    raise InputError(f"no such file or corpus entry: {arg}")


def _algebra_path(arg: str, group_arg: str) -> Path:
    p = Path(arg)
    if p.exists():
        return p
    q = corpus_dir() / f"{Path(group_arg).name.split('.')[0]}.{arg}.alg.json"
    if q.exists():
        return q
    raise InputError(f"no such file or corpus algebra: {arg}")


def _load(args, need_algebra=False, check=True):
    h = load_group(_group_path(args.group), check=check)
    A = None
    if getattr(args, "algebra", None):
        A = load_algebra(_algebra_path(args.algebra, args.group), h)
    elif need_algebra:
        raise UsageError("this verb needs --algebra")
    return h, A


def _pair(h, index):
    pairs = enumerate_pairs(h)
    if index is None:
        return None, pairs
    if not 0 <= index < len(pairs):
        raise UsageError(f"{h.name} has {len(pairs)} modular pairs among its candidates; no pair {index}")
    return pairs[index], pairs


def _vec(v, n):
    return [format_scalar(v.get(i, 0)) for i in range(n)]


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(text)


def _report_payload(rep: ValidationReport) -> dict:
    return {"name": rep.name, "ok": rep.ok,
            "checks": [{"name": c.name, "ok": c.ok, "witness": None if c.witness is None else list(c.witness)
                        if isinstance(c.witness, tuple) else c.witness} for c in rep.checks]}


# ---------------------------------------------------------------------------
# verbs

def cmd_validate(args) -> int:
    h, _ = _load(args, check=False)
    rep = validate(h)
    rep.checks.extend(dual_normalization_checks(h) if rep.ok else [])
    if rep.ok:
        rep.checks.append(bidual_check(h))
    reports = [rep]
    if args.algebra:
        if not rep.ok:
            raise InputError("the quantum group is invalid; cannot check the algebra")
        A = load_algebra(_algebra_path(args.algebra, args.group), h, check=False)
        reports.append(A.validate())
    ok = all(r.ok for r in reports)
    _emit(args, {"ok": ok, "reports": [_report_payload(r) for r in reports]},
          "\n".join(str(r) for r in reports))
    return PASS if ok else FAIL


def cmd_dual(args) -> int:
    h, _ = _load(args)
    obj = group_to_json(h.dual())
    text = json.dumps(obj, indent=1)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return PASS


def cmd_modpairs(args) -> int:
    h, _ = _load(args)
    pairs = enumerate_pairs(h)
    hd = h.dual()
    rows, ok = [], True
    for i, p in enumerate(pairs):
        dp = dualize_pair(p)
        dual_ok = verify_pair(hd, dp.sigma, dp.delta).ok
        ok &= dual_ok
        rows.append({"index": i, "sigma": _vec(p.sigma, h.dim), "delta": _vec(p.delta, h.dim),
                     "dual_verifies": dual_ok})
    expected = getattr(h, "expected", {}).get("pair_count")
    if expected is not None and expected != len(pairs):
        ok = False
    lines = [f"{h.name}: {len(pairs)} modular pairs among {len(h.grouplike_candidates)} x "
             f"{len(h.character_candidates)} candidates"]
    for r in rows:
        lines.append(f"  [{r['index']}] sigma={r['sigma']} delta={r['delta']} dual pair verifies: {r['dual_verifies']}")
    if expected is not None:
        lines.append(f"  recorded count: {expected}")
    _emit(args, {"group": h.name, "pairs": rows, "expected_count": expected, "ok": ok}, "\n".join(lines))
    return PASS if ok else FAIL


def cmd_forms(args) -> int:
    from .forms import AydForms, FormSpaces, YdForms, lambda_checks
    h, A = _load(args, need_algebra=True)
    p, _ = _pair(h, args.pair)
    N = max(1, args.max_degree)
    sp = FormSpaces(h, A, N)
    reps = [AydForms(sp).paramixed_check()]
    if p is not None:
        yd = YdForms(sp, p.sigma, p.delta)
        reps += [yd.paramixed_check(), lambda_checks(AydForms(sp), yd, N)]
    dims = [sp.dim(n) for n in range(N + 1)]
    ok = all(r.ok for r in reps)
    _emit(args, {"dims": dims, "ok": ok, "reports": [_report_payload(r) for r in reps]},
          f"dims {dims}\n" + "\n".join(str(r) for r in reps))
    return PASS if ok else FAIL


def cmd_xcomplex(args) -> int:
    from .exact import SparseMatrix
    from .forms import AydForms, FormSpaces, YdForms
    from .xcomplex import build_x
    h, A = _load(args, need_algebra=True)
    p, _ = _pair(h, args.pair)
    sp = FormSpaces(h, A, 2)
    forms = YdForms(sp, p.sigma, p.delta) if p is not None else AydForms(sp)
    x = build_x(forms)
    rep = x.paracomplex_check()
    t_id = x.T0 == SparseMatrix.identity(x.dims[0]) and x.T1 == SparseMatrix.identity(x.dims[1])
    _emit(args, {"dims": list(x.dims), "T_is_identity": t_id, **_report_payload(rep)},
          f"X^0, X^1 dims {x.dims}; T = id: {t_id}\n{rep}")
    return PASS if rep.ok else FAIL


def cmd_duality(args) -> int:
    from .duality import DualityComparison
    h, A = _load(args, need_algebra=True)
    if args.pair is None:
        raise UsageError("duality needs --pair")
    p, _ = _pair(h, args.pair)
    degrees = [args.degree] if args.degree is not None else list(range(min(args.max_degree, 1) + 1))
    cmp = DualityComparison(h, p.sigma, p.delta, A, max(degrees))
    results = []
    for n in degrees:
        v = cmp.check(n)
        results.append({"degree": n, "equal": v.equal, "witness": None if v.witness is None else list(v.witness)})
        if args.dump_ops:
            lhs = cmp.lhs(n)
            print(f"# degree {n}: {lhs.nrows} x {lhs.ncols}, {lhs.nnz()} nonzeros")
            for j, col in enumerate(lhs.cols):
                for i, c in sorted(col.items()):
                    print(f"{i} {j} {format_scalar(c)}")
    ok = all(r["equal"] for r in results)
    lines = [f"degree {r['degree']}: {'Equal' if r['equal'] else 'NotEqual at ' + str(r['witness'])}" for r in results]
    _emit(args, {"group": h.name, "algebra": A.name, "pair": args.pair, "results": results, "ok": ok},
          "\n".join(lines))
    return PASS if ok else FAIL


def cmd_suite(args) -> int:
    from .suite import run_suite
    report = run_suite(args.filter, Path(args.corpus) if args.corpus else None, args.max_degree, args.jobs)
    if args.json:
        print(report.dumps(timing=not args.no_timing))
    else:
        print(report.render())
    return report.exit_code


def _describe(plan) -> str:
    lines = [f"inputs: {plan.inputs}", f"outputs: {plan.outputs}", f"monomials: {len(plan.terms)}"]
    for k, net in enumerate(plan.terms):
        lines.append(f"term {k}: coefficient {format_scalar(net.coef)}, {len(net.nodes)} nodes, "
                     f"free edges in={net.inputs} out={[e for e, _ in net.outputs]}")
        for i, (t, edges) in enumerate(net.nodes):
            lines.append(f"  node {i}: shape {t.shape} nnz {t.nnz} edges {edges}")
    return "\n".join(lines)


def cmd_dsl(args) -> int:
    h, A = _load(args)
    p, _ = _pair(h, args.pair)
    env = DslEnv(h, p.sigma if p else None, p.delta if p else None, A)
    if "==" in args.expr:
        lhs, rhs = parse_identity_line(args.expr)
        v = check_identity(lhs, rhs, env, args.order)
        _emit(args, {"equal": v.equal, "witness": v.witness,
                     "lhs": None if v.lhs is None else format_scalar(v.lhs),
                     "rhs": None if v.rhs is None else format_scalar(v.rhs)}, str(v))
        return PASS if v.equal else FAIL
    plan = compile_expr(args.expr, env)
    if args.dump_ops:
        print(_describe(plan))
    t = plan.evaluate(args.order)
    entries = [[*k, format_scalar(v)] for k, v in sorted(t.entries.items())]
    _emit(args, {"inputs": plan.inputs, "outputs": plan.outputs, "shape": list(t.shape), "entries": entries},
          f"shape {t.shape}\n" + "\n".join(" ".join(map(str, e)) for e in entries))
    return PASS


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-degree", type=int, default=2, help="highest form degree (default 2)")
    common.add_argument("--dump-ops", action="store_true", help="print compiled operations or matrices")

    parser = argparse.ArgumentParser(prog="hopfdual", description="Exact checks for finite quantum groups.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_, group=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if group:
            sp.add_argument("group", help="quantum group JSON file or corpus name")
        sp.set_defaults(fn=fn)
        return sp

    v = verb("validate", cmd_validate, "check every axiom")
    v.add_argument("--algebra")
    v = verb("dual", cmd_dual, "print the dual quantum group as JSON")
    v.add_argument("--output", "-o")
    verb("modpairs", cmd_modpairs, "enumerate modular pairs among the candidates")
    for name, fn, help_ in (("forms", cmd_forms, "paramixed relations of the form complexes"),
                            ("xcomplex", cmd_xcomplex, "the X-complex and its paracomplex law")):
        v = verb(name, fn, help_)
        v.add_argument("--algebra", required=True)
        v.add_argument("--pair", type=int)
    v = verb("duality", cmd_duality, "compare the double duality composite with the trace")
    v.add_argument("--algebra", required=True)
    v.add_argument("--pair", type=int, required=True)
    v.add_argument("--degree", type=int, choices=(0, 1, 2))
    v = verb("suite", cmd_suite, "run the corpus regression suite", group=False)
    v.add_argument("--filter", default="", help="tags or id globs, comma separated")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--corpus", help="alternative corpus directory")
    v.add_argument("--no-timing", action="store_true", help="omit wall times from the JSON report")
    v = verb("dsl", cmd_dsl, "compile and evaluate a Sweedler expression or identity", group=False)
    v.add_argument("expr")
    v.add_argument("--group", dest="group", default="cz2")
    v.add_argument("--algebra")
    v.add_argument("--pair", type=int)
    v.add_argument("--order", choices=("greedy", "reverse"), default="greedy")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationFailure as e:
        print(f"error: invalid input: {e}", file=sys.stderr)
        return INPUT
    except (InputError, ShapeError, UsageError, DslSyntaxError, DslTypeError, NoIntegral, NoSolution) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
