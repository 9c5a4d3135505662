import pytest

from hopfdual.dsl.compiler import DslEnv, DslTypeError, check_identity, compile_expr
from hopfdual.dsl.golden import CASES, run_golden
from hopfdual.dsl.syntax import DslSyntaxError, parse, parse_identity_line, to_source
from hopfdual.exact import ONE, SparseTensor
from hopfdual.hopf import sweedler_h4
from hopfdual.modular import DERIVED_IDENTITIES, derived_identity_suite


@pytest.fixture(scope="module")
def h4():
    return sweedler_h4()


@pytest.mark.parametrize("src", ["S(t(1)) t(2)", "delta .> t <. delta^-1", "t(1) @ 3/2 * t(2)",
                                 "psi(t r) - psi(r t)"])
def test_print_parse_round_trip(src):
    node = parse(src)
    assert parse(to_source(node)) == node


def test_syntax_error_position():
    with pytest.raises(DslSyntaxError) as e:
        parse("S(t(1) t(2)")
    assert e.value.line == 1 and e.value.col == 12


def test_identity_line():
    lhs, rhs = parse_identity_line("S2(t) == t")
    assert lhs == parse("S2(t)") and rhs == parse("t")


def test_counit_from_antipode(h4):
    env = DslEnv(h4)
    out = compile_expr("S(t(1)) t(2)", env).evaluate()
    assert out == SparseTensor((4, 4), {(0, 0): 1, (1, 0): 1})


def test_greedy_and_reverse_agree(h4):
    env = DslEnv(h4)
    plan = compile_expr("t(1) S(t(3)) @ t(2)", env)
    assert plan.evaluate("greedy") == plan.evaluate("reverse")


def test_s_squared_on_sweedler(h4):
    env = DslEnv(h4, {1: ONE}, {0: ONE, 1: ONE})
    assert check_identity("S2(t)", "sigma t sigma^-1", env)


def test_wrong_sign_is_caught(h4):
    # S^2 is conjugation by g, not the identity: x maps to -x
    v = check_identity("S2(t)", "t", DslEnv(h4))
    assert not v.equal
    assert v.witness["t"] == "x" and v.lhs == -v.rhs


def test_type_mismatch(h4):
    with pytest.raises(DslTypeError):
        check_identity("t", "r", DslEnv(h4))


def test_derived_identities_on_a_pair(pairs, corpus):
    e = corpus["cz4"]
    for p in pairs["cz4"]:
        res = derived_identity_suite(e.group, p)
        assert len(res) == len(DERIVED_IDENTITIES)
        assert all(v.equal for _, _, v in res)


def test_derived_identities_reject_a_non_pair(corpus):
    # sigma = g is group-like but (g, eps) violates the involutivity formula on C^S3
    e = corpus["fs3"]
    from hopfdual.modular import ModularPair, verify_pair
    h = e.group
    bad = next(ModularPair(s, d) for s in h.grouplike_candidates for d in h.character_candidates
               if not verify_pair(h, s, d).ok)
    res = derived_identity_suite(h, bad)
    assert not all(v.equal for _, _, v in res)


def test_golden_cases_all_pass(corpus, pairs):
    assert len(CASES) >= 12
    e = corpus["cz3"]
    p = pairs["cz3"][0]
    res = run_golden(DslEnv(e.group, p.sigma, p.delta, e.algebras["translation"]))
    assert len(res) == len(CASES)
    assert all(r.ok for r in res), [r.name for r in res if not r.ok]


def test_golden_on_sweedler_without_pair(corpus):
    e = corpus["h4"]
    res = run_golden(DslEnv(e.group, algebra=e.algebras["swap"]))
    assert res and all(r.ok for r in res)
