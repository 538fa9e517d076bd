import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfo.cfk import (
    Arrow,
    CFKInfinityWindow,
    CFKMinusData,
    build_cfa_knot_exterior,
    compute_epsilon,
    compute_nu,
    compute_nu_prime,
    compute_tau,
    invariants,
    window_from_arrows,
)
from hfo.errors import InvariantError, SchemaError, WindowTooSmall
from hfo.structures import is_bounded_type_a
from oracles import nu_from_hat, tau_bruteforce


def staircase(k):
    """(1, 1, ..., 1) staircase of a (2, 2k+1) torus knot, in one basis."""
    n = 2 * k + 1
    alex = {f"s{i}": k - i for i in range(n)}
    vert, horiz = [], []
    for i in range(0, n - 1, 2):
        vert.append(Arrow(f"s{i}", f"s{i + 1}", 1))
    for i in range(1, n - 1, 2):
        horiz.append(Arrow(f"s{i + 1}", f"s{i}", 1))
    # w0 is the last generator and w0' the first
    return alex, vert, horiz


def test_fixture_shapes(knots):
    lh = knots["trefoil_lh"]
    assert lh.tau == -1 and lh.epsilon == -1 and lh.w0 == "c" and lh.w0prime == "a"
    assert knots["figure_eight"].epsilon == 0
    assert knots["trefoil_rh"].epsilon == 1


def test_unknot_cfa_r0(knots):
    A = build_cfa_knot_exterior(knots["unknot"], 0)
    assert A.generators == {"x": 1}
    assert A.edges == {("x", "32", "x")}
    assert not is_bounded_type_a(A)


def test_trefoil_cfa_r0(knots):
    A = build_cfa_knot_exterior(knots["trefoil_lh"], 0)
    hollow = {g for g, i in A.generators.items() if i == 2}
    assert hollow == {"k1_1", "l1_1", "g1", "g2"}
    assert A.edges == {
        ("a", "3", "k1_1"), ("b", "321", "k1_1"),
        ("c", "1", "l1_1"), ("l1_1", "2", "b"),
        ("c", "321", "g1"), ("g1", "21", "g2"), ("g2", "2", "a"),
    }
    assert is_bounded_type_a(A)
    from hfo.structures import eval_mk
    assert eval_mk(A, "g2", ["r23"]) == {"k1_1"}


def test_unstable_chain_cases(knots):
    lh = knots["trefoil_lh"]  # 2 tau = -2
    A = build_cfa_knot_exterior(lh, -5)
    assert {e for e in A.edges if e[0].startswith("g") or e[2].startswith("g")} == {
        ("c", "3", "g1"), ("g2", "21", "g1"), ("g3", "21", "g2"), ("a", "1", "g3")}
    A = build_cfa_knot_exterior(lh, -2)
    assert ("c", "32", "a") in A.edges


@pytest.mark.parametrize("name", ["unknot", "trefoil_lh", "trefoil_rh", "figure_eight"])
@pytest.mark.parametrize("r", range(-3, 4))
def test_cfa_counts_and_boundedness(knots, name, r):
    cfk = knots[name]
    A = build_cfa_knot_exterior(cfk, r)
    filled = [g for g, i in A.generators.items() if i == 1]
    hollow = [g for g, i in A.generators.items() if i == 2]
    assert len(filled) == len(cfk.generators)
    lengths = sum(a.length for a in cfk.vertical_arrows + cfk.horizontal_arrows)
    assert len(hollow) == lengths + abs(2 * cfk.tau - r)
    cycle = A.find_cycle()
    if cfk.epsilon != 0:
        assert cycle is None
    elif r == 0:
        assert cycle == [cfk.w0]
    elif r < 2 * cfk.tau:
        assert cycle is None


def test_window_invariants(windows):
    assert compute_tau(windows["unknot"]) == 0
    assert compute_tau(windows["figure_eight"]) == 0
    assert compute_tau(windows["trefoil_lh"]) == -1
    assert compute_epsilon(windows["trefoil_lh"]) == -1
    assert compute_epsilon(windows["trefoil_lh"].mirror()) == 1
    assert compute_epsilon(windows["unknot"]) == 0
    assert compute_epsilon(windows["figure_eight"]) == 0


@pytest.mark.parametrize("name", ["unknot", "trefoil_lh", "trefoil_rh", "figure_eight"])
def test_against_bruteforce_and_definition(windows, name):
    W = windows[name]
    assert compute_tau(W) == tau_bruteforce(W.alexander, W.differential)
    assert compute_nu(W) == nu_from_hat(W.alexander, W.differential)
    inv = invariants(W)
    assert inv["epsilon"] == 2 * compute_tau(W) - compute_nu(W) - compute_nu_prime(W)
    m = invariants(W.mirror())
    assert m["tau"] == -inv["tau"] and m["epsilon"] == -inv["epsilon"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_torus_knot_staircases(k):
    alex, vert, horiz = staircase(k)
    diff = [(a.src, a.dst, 0) for a in vert] + [(a.src, a.dst, a.length) for a in horiz]
    W = CFKInfinityWindow(alex, diff)
    assert tau_bruteforce(alex, diff) == compute_tau(W)
    # negative torus knots T(2, -(2k+1)) have tau = -k and epsilon = -1
    assert compute_tau(W) == -k
    assert compute_epsilon(W) == -1
    assert compute_epsilon(W.mirror()) == 1


def test_window_from_arrows_matches_fixture(knots, windows):
    for name, cfk in knots.items():
        W = window_from_arrows(cfk)
        assert sorted(W.differential) == sorted(windows[name].differential)


def test_window_too_small(windows):
    W = windows["trefoil_lh"]
    small = CFKInfinityWindow(W.alexander, W.differential, 0, 0)
    with pytest.raises(WindowTooSmall):
        invariants(small)


def test_window_errors():
    with pytest.raises(InvariantError):
        CFKInfinityWindow({"a": 0, "b": 0, "c": 0}, [("a", "b", 0), ("b", "c", 0)])
    with pytest.raises(SchemaError):
        CFKInfinityWindow({"a": 0, "b": 1}, [("a", "b", 0)])
    with pytest.raises(SchemaError):
        CFKInfinityWindow({"a": 0}, [("a", "z", 0)])


def base_lh():
    return dict(
        generators=[("a", 1, 0), ("b", 0, 1), ("c", -1, 0)],
        vertical_arrows=[Arrow("a", "b", 1)],
        horizontal_arrows=[Arrow("c", "b", 1)],
        w0="c", w0prime="a",
    )


def test_schema_checks():
    CFKMinusData(**base_lh())
    for change in (
        dict(tau=0),
        dict(epsilon=1),
        dict(vertical_arrows=[Arrow("a", "b", 2)]),
        dict(horizontal_arrows=[Arrow("b", "c", 1)]),
        dict(w0="a"),
        dict(w0prime="c"),
        dict(generators=[("a", 1, 0), ("b", 0, 1)]),
        dict(vertical_arrows=[Arrow("a", "z", 1)]),
    ):
        with pytest.raises(SchemaError):
            CFKMinusData(**{**base_lh(), **change})


def test_window_cross_check(windows):
    ok = CFKMinusData(**base_lh(), cfkinf=windows["trefoil_lh"])
    assert ok.tau == -1
    with pytest.raises(SchemaError):
        CFKMinusData(**base_lh(), cfkinf=windows["trefoil_rh"].mirror().mirror())


@given(st.integers(-6, 6))
def test_hollow_count_formula(r):
    alex, vert, horiz = staircase(2)
    cfk = CFKMinusData([(x, a, None) for x, a in alex.items()], vert, horiz, "s4", "s0")
    A = build_cfa_knot_exterior(cfk, r)
    hollow = sum(1 for i in A.generators.values() if i == 2)
    assert hollow == len(vert) + len(horiz) + abs(2 * cfk.tau - r)
    assert A.find_cycle() is None
