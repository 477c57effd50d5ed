import itertools
import json
import random
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qptori.errors import PreconditionError
from qptori.rootsys import (
    CartanData,
    act_weight,
    bilinear_form,
    coweight_grading,
    height,
    is_reduced_w0_word,
    m_coefficients,
    positive_roots_convex,
    random_reduced_word,
    simple_reflect,
    tau_involution,
    validate_word,
    w0_reduced_word,
)
from qptori.suites import ROOT_TYPES, known_positive_root_count

GOLDEN = json.loads((Path(__file__).parent / "golden" / "tau.json").read_text())
A2 = CartanData.from_type("A2")


def test_conventions():
    assert CartanData.from_type("B2").C == ((2, -1), (-2, 2))
    assert CartanData.from_type("C2").C == ((2, -2), (-1, 2))
    G2 = CartanData.from_type("G2")
    assert G2.C == ((2, -3), (-1, 2)) and G2.d == (1, 3)
    assert CartanData.from_type("B3").d == (2, 2, 1)


def test_simple_reflection_examples():
    assert simple_reflect(A2, 1, (1, 0)) == (-1, 1)
    assert simple_reflect(A2, 2, (1, 0)) == (1, 0)


def test_w0_words():
    assert w0_reduced_word(CartanData.from_type("A1")) == (1,)
    assert w0_reduced_word(A2) == (1, 2, 1)
    assert len(w0_reduced_word(CartanData.from_type("B2"))) == 4
    with pytest.raises(PreconditionError):
        validate_word(A2, (1, 2))
    assert not is_reduced_w0_word(A2, (1, 1, 2))


def test_convex_order_a2():
    assert positive_roots_convex(A2, (1, 2, 1)).roots == ((1, 0), (1, 1), (0, 1))


def test_tau_examples():
    assert tau_involution(A2) == ((2, 1), (), (1,))
    assert tau_involution(CartanData.from_type("B2")) == ((1, 2), (1, 2), ())
    assert tau_involution(CartanData.from_type("A3"))[0] == (3, 2, 1)


@pytest.mark.parametrize("name", ROOT_TYPES)
def test_tau_matches_golden(name):
    tau, fixed, reps = tau_involution(CartanData.from_type(name))
    assert list(tau) == GOLDEN[name]
    assert sorted(fixed + reps + tuple(tau[i - 1] for i in reps)) == list(range(1, len(tau) + 1))


@pytest.mark.parametrize("name", ROOT_TYPES)
def test_root_counts_and_tau_symmetry(name):
    cartan = CartanData.from_type(name)
    assert cartan.num_positive_roots == known_positive_root_count(name)
    tau = tau_involution(cartan)[0]
    r = cartan.rank
    assert all(tau[tau[i] - 1] == i + 1 for i in range(r))
    assert all(cartan.C[tau[i] - 1][tau[j] - 1] == cartan.C[i][j] for i in range(r) for j in range(r))


def test_m_coefficients_examples():
    assert m_coefficients(A2)[0] == (1, 1)
    assert m_coefficients(CartanData.from_type("A1")) == ((1,),)


@pytest.mark.parametrize("name", ROOT_TYPES)
def test_m_coefficients_nonnegative(name):
    M = m_coefficients(CartanData.from_type(name))
    assert all(x >= 0 for row in M for x in row)
    assert all(any(row[j] for row in M) for j in range(len(M)))


def test_coweight_grading():
    order = positive_roots_convex(A2, (1, 2, 1))
    assert coweight_grading(A2, (1, 1), order) == (1, 2, 1)
    with pytest.raises(PreconditionError):
        coweight_grading(A2, (1, 0), order)
    # principal grading is the height
    D4 = CartanData.from_type("D4")
    order = positive_roots_convex(D4, w0_reduced_word(D4))
    assert coweight_grading(D4, (1, 1, 1, 1), order) == tuple(height(D4, b) for b in order.roots)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2"])
def test_convex_order_properties(name):
    cartan = CartanData.from_type(name)
    rng = random.Random(name)
    for word in (w0_reduced_word(cartan), random_reduced_word(cartan, rng)):
        roots = positive_roots_convex(cartan, word).roots
        assert sorted(roots) == sorted(cartan.positive_roots)
        assert all(height(cartan, b) >= 1 for b in roots)
        index = {b: t for t, b in enumerate(roots)}
        for a, b in itertools.combinations(range(len(roots)), 2):
            s = tuple(x + y for x, y in zip(roots[a], roots[b]))
            if s in index:
                assert a < index[s] < b


@given(st.sampled_from(["A2", "B2", "G2", "A3", "C3"]), st.data())
def test_form_is_weyl_invariant(name, data):
    cartan = CartanData.from_type(name)
    r = cartan.rank
    lam = data.draw(st.tuples(*[st.integers(-3, 3)] * r))
    mu = data.draw(st.tuples(*[st.integers(-3, 3)] * r))
    word = data.draw(st.lists(st.integers(1, r), max_size=8))
    assert bilinear_form(cartan, lam, mu, basis="weights") == bilinear_form(cartan, mu, lam, basis="weights")
    w_lam, w_mu = act_weight(cartan, word, lam), act_weight(cartan, word, mu)
    assert bilinear_form(cartan, w_lam, w_mu, basis="weights") == bilinear_form(cartan, lam, mu, basis="weights")
    for i in range(1, r + 1):
        assert simple_reflect(cartan, i, simple_reflect(cartan, i, lam)) == lam


@given(st.sampled_from(["A3", "B3", "D4", "A1xA2"]), st.integers(0, 10 ** 6))
def test_random_words_are_reduced(name, seed):
    cartan = CartanData.from_type(name)
    word = random_reduced_word(cartan, random.Random(seed))
    assert is_reduced_w0_word(cartan, word)
    assert len(word) == cartan.num_positive_roots
