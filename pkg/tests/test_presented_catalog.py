"""Presented Lie algebras and the Drinfeld-Kohno catalog."""
from fractions import Fraction

import pytest

from framedkv.alphabet import Alphabet
from framedkv.catalog import (StrandSet, apply_symplectic, check_symplectic, direct, insert_k,
                              insertion_images, make_tf, rescale, rescale_images, symplectic_images,
                              tf_alphabet, tower, uf_presentation, strands, verify_action_table,
                              verify_split)
from framedkv.errors import DegreeError, InvariantError, UnknownSymbolError
from framedkv.lie import LieElement, witt_dimensions
from framedkv.presented import (GradedBasis, Presentation, free_presentation, presentation_from_json,
                                presentation_to_json, verify_morphism)


def gens(alphabet, D):
    return [LieElement.generator(alphabet, D, i) for i in range(len(alphabet))]


# --- generic presented algebras ----------------------------------------------------------

def test_free_algebra_dims_are_witt_dims():
    A = Alphabet.plain(["a", "b", "c"], [1, 1, 2])
    assert GradedBasis(free_presentation(A), 6).dims() == witt_dimensions(A.weights, 6)


def test_abelian_algebra():
    A = Alphabet.plain(["a", "b", "c"], [1, 1, 2])
    a, b, c = gens(A, 4)
    alg = GradedBasis(Presentation(A, [a.bracket(b), a.bracket(c), b.bracket(c)]), 4)
    assert alg.dims() == [2, 1, 0, 0]


def test_heisenberg_algebra():
    A = Alphabet.plain(["a", "b"])
    a, b = gens(A, 5)
    ab = a.bracket(b)
    alg = GradedBasis(Presentation(A, [a.bracket(ab), b.bracket(ab)]), 5)
    assert alg.dims() == [2, 1, 0, 0, 0]
    assert not alg.check_structure()


def test_central_generators():
    A = Alphabet.plain(["a", "b", "c"])
    alg = GradedBasis(Presentation(A, [], central=(2,)), 3)
    # c commutes with everything: free on a, b plus the line of c
    assert alg.dims() == [3, 1, 2]


def test_degree_guard(monkeypatch):
    A = Alphabet.plain(["a"])
    monkeypatch.setenv("FRAMEDKV_MAX_DEGREE", "3")
    with pytest.raises(DegreeError):
        GradedBasis(free_presentation(A), 4)
    monkeypatch.setenv("FRAMEDKV_MAX_DEGREE", "nope")
    with pytest.raises(DegreeError):
        GradedBasis(free_presentation(A), 2)


def test_presentation_json_round_trip():
    p = make_tf(StrandSet(("1", "2"), 1))
    q = presentation_from_json(presentation_to_json(p), 4)
    assert GradedBasis(q, 4).dims() == GradedBasis(p, 4).dims()
    assert q.relators == [r.truncate(4) for r in p.relators]


# --- Drinfeld-Kohno algebras --------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("framed", [False, True])
def test_disk_algebra_dims_follow_the_semidirect_decomposition(n, framed):
    # unframed t_n is an iterated semidirect product of free Lie algebras on
    # 1, 2, ..., n-1 generators (chord degree = weight / 2)
    labels = tuple(str(i) for i in range(1, n + 1))
    alg = GradedBasis(make_tf(StrandSet(labels, None, framed)), 8)
    by_chords = [sum(witt_dimensions([1] * m, 4)[k] for m in range(1, n)) for k in range(4)]
    if framed:
        by_chords[0] += n
    assert alg.dims() == [0, by_chords[0], 0, by_chords[1], 0, by_chords[2], 0, by_chords[3]]


@pytest.mark.parametrize("g,labels", [(1, ("1",)), (1, ("1", "2")), (2, ("1",))])
def test_genus_algebra_is_a_lie_algebra(g, labels):
    alg = GradedBasis(make_tf(StrandSet(labels, g)), 4)
    assert not alg.check_structure()


@pytest.mark.parametrize("g,n", [(0, 2), (1, 1), (2, 0)])
def test_framing_generators_are_central(g, n):
    s = StrandSet(tuple(strands(n, "0")), g)
    alg = GradedBasis(make_tf(s), 4)
    A = alg.alphabet
    for i in s.labels:
        tii = alg.gen_vector(A.index(f"t[{i},{i}]"))
        for k in range(len(A)):
            if A.weights[k] <= 2:
                assert not alg.bracket(tii, alg.gen_vector(k))


def test_tower_and_direct_agree():
    labels = strands(1, "*", "0")
    assert direct(1, labels, 4).dims() == tower(1, labels, 4).dims()


# --- operadic insertion --------------------------------------------------------------------

@pytest.mark.parametrize("g,labels,k,J", [
    (None, ("1", "2", "3"), "2", ("a", "b")),
    (1, ("1", "2"), "1", ("a", "b")),
    (2, ("1",), "1", ("a", "b", "c")),
    (1, ("1", "2"), "2", ()),
])
def test_insertion_is_a_morphism(g, labels, k, J):
    s = StrandSet(labels, g)
    target, images = insertion_images(s, k, J, 4)
    dst = GradedBasis(make_tf(target), 4)
    assert verify_morphism(make_tf(s), dst, images, 4).ok


def test_insertion_is_coassociative():
    s = StrandSet(("1", "2"), 1)
    A = tf_alphabet(s)
    D = 4
    e = LieElement.generator(A, D, "x[1,1]").bracket(LieElement.generator(A, D, "t[1,2]"))
    e = e + LieElement.generator(A, D, "t[1,1]")
    s1, e1 = insert_k(s, "1", ("p", "q"), e)
    _, left = insert_k(s1, "p", ("u", "v"), e1)
    _, right = insert_k(s, "1", ("u", "v", "q"), e)
    assert left == right


def test_insertion_errors():
    s = StrandSet(("1", "2"), 0)
    with pytest.raises(UnknownSymbolError):
        insertion_images(s, "9", ("a",))
    with pytest.raises(InvariantError):
        insertion_images(s, "1", ("2",))


# --- automorphisms ---------------------------------------------------------------------------

def test_symplectic_matrices_act_by_morphisms():
    s = StrandSet(("1", "2"), 1)
    sigma = [[1, 1], [0, 1]]
    dst = GradedBasis(make_tf(s), 4)
    assert verify_morphism(make_tf(s), dst, symplectic_images(s, sigma, 4), 4).ok
    A = tf_alphabet(s)
    x = LieElement.generator(A, 4, "x[1,1]")
    y = LieElement.generator(A, 4, "y[1,1]")
    assert apply_symplectic(s, sigma, y) == x + y
    with pytest.raises(InvariantError):
        check_symplectic([[2, 0], [0, 1]], 1)


def test_genus_two_symplectic():
    s = StrandSet(("1",), 2)
    sigma = [[0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]]
    dst = GradedBasis(make_tf(s), 4)
    assert verify_morphism(make_tf(s), dst, symplectic_images(s, sigma, 4), 4).ok


def test_rescaling():
    s = StrandSet(("1", "2"), 1)
    dst = GradedBasis(make_tf(s), 4)
    lam = Fraction(3, 2)
    assert verify_morphism(make_tf(s), dst, rescale_images(s, lam, 4), 4).ok
    A = tf_alphabet(s)
    t = LieElement.generator(A, 4, "t[1,2]")
    assert rescale(s, lam, t) == t.scale(lam * lam)
    with pytest.raises(InvariantError):
        rescale_images(s, 0)


# --- the splitting ---------------------------------------------------------------------------

def test_uf_is_free_plus_center():
    # u^f is free on x_*, y_*, t_{j*} with t_** central
    p = uf_presentation(1, ["1"], "*")
    alg = GradedBasis(p, 5)
    free = witt_dimensions([1, 1, 2], 5)
    assert alg.dims() == [free[0], free[1] + 1] + free[2:]


def test_action_table_and_split_small():
    assert verify_action_table(1, 0, 3).ok
    rep = verify_split(0, 1, 4)
    assert rep.ok
    assert rep.to_json()["checked"] == len(rep.entries)


def test_mutation_is_detected():
    assert not verify_action_table(1, 1, 4, mutate=True).ok
    assert not verify_split(0, 0, 4, mutate=True).ok
