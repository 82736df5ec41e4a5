"""Fox pairings, quasi-derivations and the Goldman-Turaev operations."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from framedkv.errors import InvariantError
from framedkv.goldman import GtContext, PhiConstant
from framedkv.lie import LieElement
from framedkv.series import s_series, series_substitute
from framedkv.tensor import PairTensor

CTX = GtContext(1, 1, 6)
HALF = Fraction(1, 2)


def plain_words(ctx, max_weight):
    out = []
    for d in range(1, max_weight + 1):
        out += [w for w in ctx.alphabet.words_of_weight(d) if ctx.center not in w]
    return out


def elements(ctx=CTX, max_weight=3, with_center=False):
    if with_center:
        pool = [w for d in range(1, max_weight + 1) for w in ctx.alphabet.words_of_weight(d)]
    else:
        pool = plain_words(ctx, max_weight)
    coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.dictionaries(st.sampled_from(pool), coeffs, max_size=3).map(
        lambda terms: sum((ctx.word(w, c) for w, c in terms.items()), ctx.zero()))


def test_letter_table():
    X, Y, T = CTX.letter(CTX.x[0]), CTX.letter(CTX.y[0]), CTX.letter(CTX.t[0])
    assert CTX.diamond(X, Y) == CTX.one()
    assert CTX.diamond(Y, X) == -CTX.one()
    assert CTX.diamond(T, T) == -T
    assert not CTX.diamond(X, X) and not CTX.diamond(X, T)


def test_E_on_letters():
    X, Y = CTX.letter(CTX.x[0]), CTX.letter(CTX.y[0])
    assert CTX.E(X, Y) == CTX.one() + X * CTX.s_omega * Y


@given(elements(), elements(), elements())
def test_fox_rules(a, b, c):
    eps = b.epsilon()
    assert CTX.diamond(a * b, c) == a * CTX.diamond(b, c) + CTX.diamond(a, c).scale(eps)
    assert CTX.diamond(a, b * c) == CTX.diamond(a, b) * c + CTX.diamond(a, c).scale(eps)


@given(elements(max_weight=2, with_center=True), elements(max_weight=2, with_center=True))
def test_quasi_derivation_law(a, b):
    ctx = CTX
    lhs = ctx.N(a * b)
    rhs = ctx.N(a) * ctx.project(b) + ctx.project(a) * ctx.N(b) + ctx.E(ctx.project(a), ctx.project(b))
    assert lhs == rhs


def test_N_on_the_center():
    assert CTX.N(CTX.letter(CTX.center)) == CTX.one(-2)


def test_phi_constraint():
    phi = CTX.phi0()
    assert phi.value - phi.value.antipode() == CTX.one(HALF) + CTX.s_omega
    assert phi.bar == phi.value + CTX.one(HALF)
    with pytest.raises(InvariantError):
        PhiConstant(CTX, CTX.one())


def test_phi_choice_is_free_up_to_symmetric_terms():
    # adding an S-invariant element keeps the constraint
    X, Y = CTX.letter(CTX.x[0]), CTX.letter(CTX.y[0])
    sym = X * Y + Y * X  # S(xy + yx) = yx + xy
    phi = PhiConstant(CTX, CTX.phi0().value + sym)
    a = CTX.letter(CTX.center)
    assert CTX.N(a, phi) == CTX.N(a)


@pytest.mark.parametrize("g,n", [(0, 1), (0, 2), (1, 0), (1, 2), (2, 1)])
def test_antipode_pair_identity(g, n):
    ctx = GtContext(g, n, 6)
    one = ctx.one()
    assert ctx.antipode_pair_identity() == -PairTensor.outer(one, one)


def test_antipode_identity_depends_on_the_series():
    e = series_substitute(s_series(6), CTX.omega) + CTX.omega.power(2)
    one = CTX.one()
    assert CTX.antipode_pair_identity(e) != -PairTensor.outer(one, one)


@given(elements(max_weight=4))
def test_delta_q_incl_identity(X):
    assert CTX.delta_q_incl(CTX.s_omega, X) == CTX.one_wedge(X)


def lie_elements(ctx=CTX, max_weight=2):
    pool = [w for d, group in ctx.alphabet.lyndon_words(max_weight).items() for w in group
            if ctx.center not in w]
    coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.dictionaries(st.sampled_from(pool), coeffs, max_size=3).map(
        lambda terms: LieElement(ctx.alphabet, ctx.D, terms).to_tensor())


SMALL = GtContext(1, 1, 4)


@given(lie_elements(SMALL), lie_elements(SMALL))
def test_goldman_bracket_antisymmetric(u, v):
    a, b = u.exp(), v.exp()
    for pairing in (SMALL.diamond, SMALL.E):
        assert not SMALL.goldman(pairing, a, b) + SMALL.goldman(pairing, b, a)


def test_kappa_needs_grouplike_arguments():
    X = CTX.letter(CTX.x[0])
    with pytest.raises(InvariantError):
        CTX.kappa(CTX.diamond, X, X.exp())
    with pytest.raises(InvariantError):
        CTX.cobracket(X)


def test_kappa_of_letters():
    X, Y = CTX.letter(CTX.x[0]), CTX.letter(CTX.y[0])
    k = CTX.kappa(CTX.diamond, X.exp(), Y.exp())
    # the weight-0 part is 1 ⊗ 1 from x ⊙ y = 1
    assert k.terms.get(((), ())) == 1


def test_cobracket_of_unit_vanishes_and_result_is_truncated():
    assert not CTX.cobracket(CTX.one())
    X, Y = CTX.letter(CTX.x[0]), CTX.letter(CTX.y[0])
    d = CTX.cobracket(X.bracket(Y).exp())
    assert d
    ws = CTX.alphabet.weights
    assert all(sum(ws[i] for i in l + r) <= CTX.D - 2 for l, r in d.terms)
