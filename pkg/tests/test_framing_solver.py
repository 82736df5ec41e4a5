"""Coefficient equations of the reduced two-strand relation."""
from fractions import Fraction

import pytest

from framedkv.errors import InvariantError
from framedkv.framing import (S, expand_reduced_Dg, expected_equations, framing_value, lam, mu, nu,
                              solve_genus1)
from framedkv.scalars import normalize_monic


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("case", ["A", "B"])
def test_equations_match_the_reference_families(g, case):
    sysm = expand_reduced_Dg(g, 1, case)
    assert not sysm.mismatches()
    assert sysm.exact_match()
    assert not sysm.extra
    assert sysm.pi_free()


def test_genus_one_equations_by_hand():
    eqs = expected_equations(1)
    half = Fraction(1, 2)
    assert eqs[("t",)] == 2 * S + 2 * nu("xy", 1, 1) - 1
    assert eqs[("x", 1)] == lam(1) * nu("xy", 1, 1) - half * lam(1)
    assert eqs[("y", 1)] == -mu(1) * nu("xy", 1, 1) + half * mu(1)


def test_equations_do_not_depend_on_the_handle_index():
    a = expand_reduced_Dg(2, 1).equations
    b = expand_reduced_Dg(2, 2).equations
    assert a == b


def test_monic_comparison_ignores_scale():
    assert normalize_monic(-2 * S + 4) == normalize_monic(S - 2)


def test_framing_value():
    assert framing_value() == -2 * S
    assert framing_value(reduced=True, g=2) == 2 * nu("xy", 1, 1) + 2 * nu("xy", 2, 2) - 1
    # substituting s from the t-equation gives the reduced value
    s_sol = Fraction(1, 2) - nu("xy", 1, 1)
    assert framing_value().substitute({"s": s_sol}) == framing_value(reduced=True, g=1)


@pytest.mark.parametrize("case", ["A", "B"])
def test_genus_one_solution(case):
    rep = solve_genus1(case)
    assert rep.ok
    assert rep.solution == {"nuxy[1,1]": Fraction(1, 2), "s": Fraction(0)}
    assert rep.back_substitution == [0, 0, 0]


def test_degenerate_genus_one():
    rep = solve_genus1(nondegenerate=False)
    assert rep.degenerate and rep.ok and rep.solution is None
    assert rep.to_json()["solution"] is None


def test_bad_input():
    with pytest.raises(InvariantError):
        expand_reduced_Dg(0)
    with pytest.raises(InvariantError):
        expand_reduced_Dg(2, 3)
    with pytest.raises(ValueError):
        expand_reduced_Dg(1, 1, "C")
