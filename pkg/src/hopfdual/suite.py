"""The regression suite over the shipped corpus.

Every check has an id such as ``duality/cz2/p1/translation/degree1``, a set
of tags, a one-line topic, and a gating flag. Gating checks decide the exit
code; report-only checks are computed and recorded but never fail a run.
"""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .corpus import CorpusEntry, corpus_dir, load_corpus
from .dsl.compiler import DslEnv
from .dsl.golden import run_golden
from .duality import DualityComparison, tau_checks, twisted_fourier
from .exact import SparseMatrix
from .forms import AydForms, FormSpaces, YdForms, lambda_checks
from .halgebra import crossed_product, takesaki_takai_checks
from .hopf import (ValidationReport, bidual_check, dual_normalization_checks, fourier_checks,
                   validate)
from .modular import ModularPair, derived_identity_suite, dualize_pair, enumerate_pairs, verify_pair
from .xcomplex import build_plain_x, build_x, green_julg_coinvariants, green_julg_invariants
from .yd import character_module, check_ayd, check_yd, conversion_checks

# columns of the degree-two comparison above which it is skipped
DEGREE2_CAP = 40_000


@dataclass
class Outcome:
    ok: bool | None            # None: skipped
    witness: object = None
    detail: str = ""
    info: dict = field(default_factory=dict)


@dataclass
class SuiteCheck:
    id: str
    tags: tuple
    topic: str
    gating: bool
    run: Callable[["Context"], Outcome] = field(repr=False)


@dataclass
class CheckResult:
    id: str
    tags: tuple
    topic: str
    gating: bool
    verdict: str               # pass | fail | skip
    witness: object
    detail: str
    info: dict
    wall_time: float

    def to_json(self, timing: bool = True) -> dict:
        out = {"id": self.id, "tags": list(self.tags), "topic": self.topic, "gating": self.gating,
               "verdict": self.verdict, "witness": _jsonable(self.witness), "detail": self.detail,
               "info": _jsonable(self.info)}
        if timing:
            out["wall_time"] = round(self.wall_time, 4)
        return out

    def line(self) -> str:
        mark = self.verdict.upper() if self.gating else f"{self.verdict.upper()} (report)"
        s = f"{mark:16} {self.id}"
        if self.verdict == "fail" and self.witness is not None:
            s += f"  witness={_jsonable(self.witness)}"
        if self.detail:
            s += f"  [{self.detail}]"
        return s


@dataclass
class SuiteReport:
    results: list

    @property
    def ok(self) -> bool:
        return all(r.verdict != "fail" for r in self.results if r.gating)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0, "report_fail": 0}
        for r in self.results:
            if r.verdict == "fail" and not r.gating:
                out["report_fail"] += 1
            else:
                out[r.verdict] += 1
        return out

    def to_json(self, timing: bool = True) -> dict:
        return {"ok": self.ok, "counts": self.counts(),
                "checks": [r.to_json(timing) for r in self.results]}

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=1, sort_keys=True)

    def render(self) -> str:
        lines = [r.line() for r in self.results]
        c = self.counts()
        lines.append(f"{c['pass']} passed, {c['fail']} failed, {c['skip']} skipped, "
                     f"{c['report_fail']} report-only failures")
        return "\n".join(lines)


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _from_report(rep: ValidationReport, **info) -> Outcome:
    bad = rep.failures()
    if not bad:
        return Outcome(True, info=info)
    return Outcome(False, bad[0].witness, bad[0].name, info)


def _from_checks(checks, **info) -> Outcome:
    rep = ValidationReport("", list(checks))
    return _from_report(rep, **info)


# ---------------------------------------------------------------------------
# shared state

class Context:
    """Corpus plus memoised form complexes and comparisons, per process."""

    def __init__(self, root: Path | None = None, max_degree: int = 2):
        self.entries = {e.name: e for e in load_corpus(root)}
        self.max_degree = max_degree
        self._memo: dict = {}

    def memo(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def pairs(self, e: CorpusEntry) -> list[ModularPair]:
        return self.memo(("pairs", e.name), lambda: enumerate_pairs(e.group))

    def forms(self, e, akey, N, pair_index=None):
        def build():
            sp = FormSpaces(e.group, e.algebras[akey], N)
            if pair_index is None:
                return AydForms(sp)
            p = self.pairs(e)[pair_index]
            return AydForms(sp), YdForms(sp, p.sigma, p.delta)
        return self.memo(("forms", e.name, akey, N, pair_index), build)

    def comparison(self, e, akey, pi, N):
        p = self.pairs(e)[pi]
        return self.memo(("cmp", e.name, akey, pi, N),
                         lambda: DualityComparison(e.group, p.sigma, p.delta, e.algebras[akey], N))

    def dual_setting(self, e, akey):
        """``K = H^`` and ``B = A >| H`` (a K-algebra) with the plain X-complex of ``B``."""
        def build():
            k = e.group.dual()
            B = crossed_product(e.algebras[akey])
            return k, B, build_plain_x(B)
        return self.memo(("dual", e.name, akey), build)


# ---------------------------------------------------------------------------
# check definitions

def _hopf_checks(e):
    k = e.name
    yield SuiteCheck(f"hopf/{k}/axioms", ("hopf",), "quantum group axioms", True,
                     lambda c: _from_report(validate(e.group)))
    yield SuiteCheck(f"hopf/{k}/dual-axioms", ("hopf",), "axioms of the dual", True,
                     lambda c: _from_report(validate(e.group.dual())))
    yield SuiteCheck(f"hopf/{k}/biduality", ("hopf",), "double dual reproduces every tensor", True,
                     lambda c: _from_checks([bidual_check(e.group)]))
    yield SuiteCheck(f"hopf/{k}/fourier", ("hopf",), "four Fourier maps invertible", True,
                     lambda c: _from_checks(fourier_checks(e.group)))
    yield SuiteCheck(f"integrals/{k}/normalisation", ("hopf", "integrals"), "dual integral normalisation",
                     True, lambda c: _from_checks(dual_normalization_checks(e.group)))


def _enumeration(c, e):
    found = [p.key() for p in c.pairs(e)]
    want = [p.key() for p in e.expected_pairs()]
    info = {"pair_count": len(found)}
    if found != want or len(found) != e.expected.get("pair_count"):
        return Outcome(False, {"found": len(found), "expected": e.expected.get("pair_count")},
                       "enumeration differs from the recorded oracle", info)
    return Outcome(True, info=info)


def _identities(c, e, pi):
    res = derived_identity_suite(e.group, c.pairs(e)[pi])
    bad = [(name, v) for name, _, v in res if not v.equal]
    if bad:
        return Outcome(False, bad[0][1].witness, bad[0][0], {"identities": len(res)})
    return Outcome(True, info={"identities": len(res)})


def _pair_checks(e, pi):
    k = e.name
    tag = f"p{pi}"

    def pair(c):
        return c.pairs(e)[pi]
    yield SuiteCheck(f"modular/{k}/{tag}/axioms", ("modular",), "modular pair axioms", True,
                     lambda c: _from_report(verify_pair(e.group, pair(c).sigma, pair(c).delta)))
    yield SuiteCheck(f"modular/{k}/{tag}/dual", ("modular",), "dual pair on the dual quantum group", True,
                     lambda c: _from_report(verify_pair(e.group.dual(), dualize_pair(pair(c)).sigma,
                                                        dualize_pair(pair(c)).delta)))
    yield SuiteCheck(f"identities/{k}/{tag}", ("modular", "identities", "dsl"),
                     "identities derived from the pair axioms", True, lambda c: _identities(c, e, pi))
    yield SuiteCheck(f"yd/{k}/{tag}/character", ("yd",), "character module is AYD and converts", True,
                     lambda c: _character(e, pair(c)))
    yield SuiteCheck(f"fourier/{k}/{tag}", ("fourier", "duality"), "twisted Fourier inversion and product rule",
                     True, lambda c: _from_report(twisted_fourier(e.group, pair(c).sigma, pair(c).delta).checks()))


def _character(e, p):
    m = character_module(e.group, p.sigma, p.delta)
    rep = check_ayd(m)
    rep.checks.extend(conversion_checks(m, p.sigma, p.delta).checks)
    return _from_report(rep)


def _ayd_forms(c, e, akey):
    ayd = c.forms(e, akey, 3)
    rep = ayd.paramixed_check()
    for n in range(2):
        M = ayd.module(n)
        r = check_ayd(M)
        if not r.ok:
            return Outcome(False, r.failures()[0].witness, f"degree {n} is not AYD")
        inv = ayd.T(n) @ ayd.T_inverse(n)
        if inv != SparseMatrix.identity(ayd.dim(n)):
            return Outcome(False, inv.first_difference(SparseMatrix.identity(ayd.dim(n))), "T T^-1 != id")
    T1_trivial = ayd.T(1) == SparseMatrix.identity(ayd.dim(1))
    out = _from_report(rep, T_is_identity_on_degree1=T1_trivial)
    # a counit action makes T the identity whatever S^2 is
    if out.ok and not e.group.is_involutive and not _counit_action(e.algebras[akey]) and T1_trivial:
        return Outcome(False, None, "T = id on degree 1 although S^2 != id", out.info)
    return out


def _counit_action(A) -> bool:
    h = A.host
    return all(A.act_basis(x, a) == ({a: h.counit[x]} if h.counit[x] else {})
               for x in range(h.dim) for a in range(A.dim))


def _yd_forms(c, e, akey, pi):
    _, yd = c.forms(e, akey, 3, pi)
    return _from_report(yd.paramixed_check())


def _conversion(c, e, akey, pi):
    ayd, yd = c.forms(e, akey, 2, pi)
    p = c.pairs(e)[pi]
    for n in range(2):
        rep = conversion_checks(ayd.module(n), p.sigma, p.delta)
        if not rep.ok:
            return Outcome(False, rep.failures()[0].witness, f"degree {n}: {rep.failures()[0].name}")
        M = yd.module(n)
        for label, mod in (("YD", M), ("flipped YD", M.flipped())):
            r = check_yd(mod)
            if not r.ok:
                return Outcome(False, r.failures()[0].witness, f"degree {n}: {label} check fails")
    return Outcome(True)


def _ayd_flip_search(c, e, akey):
    ayd = c.forms(e, akey, 2)
    found = []
    for n in range(2):
        if not check_ayd(ayd.module(n).flipped()).ok:
            found.append(n)
    # a hit is the expected counterexample; none found is recorded, not an error
    return Outcome(True, info={"flipped AYD fails in degrees": found})


def _lambda(c, e, akey, pi):
    ayd, yd = c.forms(e, akey, 2, pi)
    return _from_report(lambda_checks(ayd, yd, min(2, c.max_degree)))


def _takesaki(c, e, akey, pi):
    p = c.pairs(e)[pi]
    return _from_report(takesaki_takai_checks(e.algebras[akey], p.sigma, p.delta))


def _tau(c, e, akey, pi):
    cmp = c.comparison(e, akey, pi, 1)
    rep = tau_checks(cmp.tau_h)
    rep.checks.extend(tau_checks(cmp.tau_hd).checks)
    return _from_report(rep)


def _duality(c, e, akey, pi, n):
    if n == 2:
        cmp0 = c.comparison(e, akey, pi, 1)
        cols = cmp0.yd_B.sp.dim(2)
        if cols > DEGREE2_CAP:
            return Outcome(None, detail=f"{cols} columns exceed the cap of {DEGREE2_CAP}")
        cmp = DualityComparison(e.group, c.pairs(e)[pi].sigma, c.pairs(e)[pi].delta, e.algebras[akey], 2)
    else:
        cmp = c.comparison(e, akey, pi, 1)
    v = cmp.check(n)
    return Outcome(v.equal, v.witness, v.detail, {"columns": cmp.yd_B.sp.dim(n)})


def _xcomplex(c, e, akey, pi):
    if pi is None:
        forms = c.forms(e, akey, 2)
    else:
        forms = c.forms(e, akey, 2, pi)[1]
    x = build_x(forms)
    rep = x.paracomplex_check()
    return _from_report(rep, dims=list(x.dims), T_is_identity=x.T0 == SparseMatrix.identity(x.dims[0]))


def _invariants(c, e, akey, pi):
    k, B, plain = c.dual_setting(e, akey)
    p = enumerate_pairs(k)[pi]
    yd = YdForms(FormSpaces(k, B, 2), p.sigma, p.delta)
    rep = green_julg_invariants(yd, plain)
    return _from_report(rep, **{key.replace(" ", "_"): list(v) for key, v in rep.extra.items()})


def _coinvariants(c, e, akey, pi):
    k, B, plain = c.dual_setting(e, akey)
    p = c.pairs(e)[pi]
    dp = dualize_pair(p)
    yd = YdForms(FormSpaces(k, B, 2), dp.sigma, dp.delta)
    rep = green_julg_coinvariants(yd, e.group.dual_vec_compose_S(p.delta), plain)
    return _from_report(rep, **{key.replace(" ", "_"): list(v) for key, v in rep.extra.items()})


def _golden(c, e, akey, pi):
    p = c.pairs(e)[pi] if pi is not None else None
    env = DslEnv(e.group, p.sigma if p else None, p.delta if p else None, e.algebras[akey])
    res = run_golden(env)
    bad = [r for r in res if not r.ok]
    if bad:
        return Outcome(False, bad[0].witness, bad[0].name, {"cases": len(res)})
    return Outcome(True, info={"cases": len(res)})


def plan(ctx: Context) -> list[SuiteCheck]:
    """All checks in a fixed order."""
    out: list[SuiteCheck] = []
    for e in ctx.entries.values():
        k = e.name
        out.extend(_hopf_checks(e))
        out.append(SuiteCheck(f"modular/{k}/enumeration", ("modular",), "pair enumeration against the oracle",
                              True, lambda c, e=e: _enumeration(c, e)))
        pairs = ctx.pairs(e)
        for pi in range(len(pairs)):
            out.extend(_pair_checks(e, pi))
        is_one = [p.sigma == e.group.one for p in pairs]
        kpairs = enumerate_pairs(e.group.dual())
        for akey in e.algebras:
            base = f"{k}/{akey}"
            out.append(SuiteCheck(f"paramixed/{base}/ayd", ("paramixed", "forms"),
                                  "paramixed relations, AYD picture", True,
                                  lambda c, e=e, a=akey: _ayd_forms(c, e, a)))
            out.append(SuiteCheck(f"xcomplex/{base}/ayd", ("xcomplex",), "X-complex paracomplex law", True,
                                  lambda c, e=e, a=akey: _xcomplex(c, e, a, None)))
            out.append(SuiteCheck(f"yd/{base}/ayd-flip-search", ("yd",),
                                  "search for an AYD module whose flip is not AYD", False,
                                  lambda c, e=e, a=akey: _ayd_flip_search(c, e, a)))
            if not pairs:
                out.append(SuiteCheck(f"golden/{base}", ("dsl", "golden"), "DSL golden formulas", True,
                                      lambda c, e=e, a=akey: _golden(c, e, a, None)))
            for pi in range(len(pairs)):
                pb = f"{k}/p{pi}/{akey}"
                out += [
                    SuiteCheck(f"paramixed/{pb}/yd", ("paramixed", "forms"), "paramixed relations, YD picture",
                               True, lambda c, e=e, a=akey, i=pi: _yd_forms(c, e, a, i)),
                    SuiteCheck(f"yd/{pb}/conversion", ("yd",), "AYD/YD conversion of the form modules", True,
                               lambda c, e=e, a=akey, i=pi: _conversion(c, e, a, i)),
                    SuiteCheck(f"lambda/{pb}", ("lambda", "forms"), "lambda is an isomorphism of complexes",
                               True, lambda c, e=e, a=akey, i=pi: _lambda(c, e, a, i)),
                    SuiteCheck(f"takesaki/{pb}", ("takesaki",), "Takesaki-Takai isomorphism", True,
                               lambda c, e=e, a=akey, i=pi: _takesaki(c, e, a, i)),
                    SuiteCheck(f"tau/{pb}", ("tau", "duality"), "duality map is a YD chain map", True,
                               lambda c, e=e, a=akey, i=pi: _tau(c, e, a, i)),
                    SuiteCheck(f"xcomplex/{pb}/yd", ("xcomplex",), "X-complex paracomplex law, YD picture", True,
                               lambda c, e=e, a=akey, i=pi: _xcomplex(c, e, a, i)),
                    SuiteCheck(f"golden/{pb}", ("dsl", "golden"), "DSL golden formulas", True,
                               lambda c, e=e, a=akey, i=pi: _golden(c, e, a, i)),
                ]
                for n in range(3):
                    if n > ctx.max_degree:
                        break
                    out.append(SuiteCheck(f"duality/{pb}/degree{n}", ("duality",),
                                          "double duality composite equals trace after gamma", n < 2,
                                          lambda c, e=e, a=akey, i=pi, n=n: _duality(c, e, a, i, n)))
                if is_one[pi]:
                    out.append(SuiteCheck(f"coinvariants/{pb}", ("greenjulg", "xcomplex"),
                                          "twisted coinvariants against the plain X-complex", True,
                                          lambda c, e=e, a=akey, i=pi: _coinvariants(c, e, a, i)))
            k1 = e.group.dual().one
            for qi, q in enumerate(kpairs):
                out.append(SuiteCheck(f"invariants/{k}/q{qi}/{akey}", ("greenjulg", "xcomplex"),
                                      "invariants are the integral times plain forms", q.sigma == k1,
                                      lambda c, e=e, a=akey, i=qi: _invariants(c, e, a, i)))
    return out


def select(checks: list[SuiteCheck], pattern: str | None) -> list[SuiteCheck]:
    """Comma-separated patterns; each matches a tag exactly or an id by glob or prefix."""
    if not pattern:
        return list(checks)
    pats = [p.strip() for p in pattern.split(",") if p.strip()]

    def hit(ch):
        for p in pats:
            if p in ch.tags or fnmatch.fnmatchcase(ch.id, p) or ch.id.startswith(p + "/") or ch.id == p:
                return True
        return False
    return [ch for ch in checks if hit(ch)]


def _execute(ctx: Context, ch: SuiteCheck) -> CheckResult:
    t0 = time.perf_counter()
    try:
        out = ch.run(ctx)
    except Exception as exc:  # a crashing check is a failing check
        out = Outcome(False, None, f"{type(exc).__name__}: {exc}")
    dt = time.perf_counter() - t0
    verdict = "skip" if out.ok is None else ("pass" if out.ok else "fail")
    return CheckResult(ch.id, ch.tags, ch.topic, ch.gating, verdict, out.witness, out.detail, out.info, dt)


def _worker(args) -> list[CheckResult]:
    root, max_degree, ids = args
    ctx = Context(root, max_degree)
    by_id = {ch.id: ch for ch in plan(ctx)}
    return [_execute(ctx, by_id[i]) for i in ids]


def run_suite(pattern: str | None = None, root: Path | None = None, max_degree: int = 2,
              jobs: int = 1) -> SuiteReport:
    """Run every check matching ``pattern``; results come back in plan order whatever ``jobs`` is."""
    ctx = Context(root, max_degree)
    chosen = select(plan(ctx), pattern)
    if jobs <= 1:
        return SuiteReport([_execute(ctx, ch) for ch in chosen])
    # one batch per corpus entry keeps the memoised complexes local to a worker
    batches: dict = {}
    for ch in chosen:
        batches.setdefault(ch.id.split("/")[1], []).append(ch.id)
    root = Path(root) if root is not None else corpus_dir()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        done = pool.map(_worker, [(root, max_degree, ids) for ids in batches.values()])
        by_id = {r.id: r for rs in done for r in rs}
    return SuiteReport([by_id[ch.id] for ch in chosen])
