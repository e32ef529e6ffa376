import itertools
import random

import pytest

from oracles import suzuki_irreducible_words
from ydforge.catalog import build_en, build_slq2, build_suzuki
from ydforge.errors import DegreeCapExceeded, NonConfluent, NonTerminating
from ydforge.hopf_core import check_hopf
from ydforge.presentations import (
    NormalFormAlgebra,
    enumerate_basis,
    normal_form,
    presentation_from_dict,
    structure_constants,
)

H4_PRESENTATION = {
    "params": [],
    "generators": [["x", 1], ["g", 1]],
    "degree_cap": "none",
    "rules": [
        {"lhs": "g*g", "rhs": [["1", "1"]]},
        {"lhs": "x*x", "rhs": []},
        {"lhs": "g*x", "rhs": [["x*g", "-1"]]},
    ],
    "comul": {"x": [["x", "1"], ["g", "x"]], "g": [["g", "g"]]},
    "counit": {"x": "0", "g": "1"},
    "antipode": {"x": "x*g", "g": "g"},
}


@pytest.fixture(scope="module")
def h4_algebra():
    return presentation_from_dict(H4_PRESENTATION)


def word(A, text):
    return A.presentation.parse_word(text)


def test_h4_relations(h4_algebra):
    A = h4_algebra
    P = A.presentation
    assert normal_form(P, word(A, "x*x")) == {}
    assert normal_form(P, word(A, "g*x")) == {word(A, "x*g"): -P.field.one}


def test_h4_basis(h4_algebra):
    assert sorted(h4_algebra.labels) == sorted(["1", "g", "x", "xg"])
    assert len(h4_algebra.labels) == 4


def test_h4_structure_constants_pass_hopf(h4_algebra):
    assert check_hopf(structure_constants(h4_algebra)).passed


def test_en_dimension():
    for n in (1, 2, 3):
        assert build_en(n).hopf.dim == 2 ** (n + 1)
    assert sorted(build_en(2).hopf.basis) == sorted(["1", "g", "x1", "x2", "x1g", "x2g", "x1x2", "x1x2g"])


def test_slq2_commutation_rule():
    entry = build_slq2(4)
    P = entry.algebra.presentation
    q = P.field.gen("s") ** 2
    assert normal_form(P, word(entry.algebra, "b*a")) == {word(entry.algebra, "a*b"): q}


def test_slq2_quantum_determinant():
    entry = build_slq2(4)
    # da - q bc = 1 and ad - q^-1 bc = 1
    assert entry.element("d*a - q*b*c") == entry.element("1")
    assert entry.element("a*d - q^(-1)*b*c") == entry.element("1")


def test_slq2_cap_two_basis_is_closed_under_subwords():
    entry = build_slq2(4)
    P = entry.algebra.presentation
    small = type(P)(P.generators, P.degrees, P.rules, P.field, 2, P.aliases)
    words = enumerate_basis(small)
    labels = {small.word_label(w) for w in words}
    assert labels == {"1", "a", "b", "c", "d", "a^2", "ab", "ac", "ad", "b^2", "bd", "c^2", "cd", "d^2"}
    found = set(words)
    for w in words:
        for i, j in itertools.combinations(range(len(w) + 1), 2):
            assert w[i:j] in found


def test_degree_cap_is_enforced():
    entry = build_slq2(3)
    with pytest.raises(DegreeCapExceeded):
        entry.element("a^2*d^2")


def test_suzuki_dimension_matches_rewriting_oracle():
    entry = build_suzuki(1, 1, 1, 1)
    assert entry.hopf.dim == 8
    assert len(suzuki_irreducible_words(8)) == 8


def test_suzuki_antipode_is_transpose_cubed():
    entry = build_suzuki(1, 1, "alpha", "beta")
    H = entry.hopf
    for t, u in [("a", "a"), ("b", "c"), ("c", "b"), ("d", "d")]:
        assert H.T_vec(entry.element(t)) == entry.element(f"{u}^3")
    assert check_hopf(H).passed


def test_non_confluent_rules_are_rejected():
    data = dict(H4_PRESENTATION)
    data["rules"] = [
        {"lhs": "g*g", "rhs": [["1", "1"]]},
        {"lhs": "x*x", "rhs": [["g", "1"]]},
        {"lhs": "g*x", "rhs": [["x*g", "-1"]]},
    ]
    with pytest.raises(NonConfluent):
        presentation_from_dict(data)


def test_infinite_presentation_hits_enumeration_bound():
    data = {"params": [], "generators": [["a", 1], ["b", 1]], "degree_cap": "none", "rules": [{"lhs": "b*a", "rhs": [["a*b", "1"]]}]}
    A = presentation_from_dict(dict(data, degree_cap=3))
    assert len(A.labels) == 10
    with pytest.raises(NonTerminating):
        NormalFormAlgebra(presentation_from_dict(dict(data, degree_cap=3)).presentation.__class__(
            ("a", "b"), (1, 1), A.presentation.rules, A.presentation.field, None
        ), bound=64)


def test_normal_form_is_idempotent_on_random_words():
    entry = build_slq2(4)
    P = entry.algebra.presentation
    rng = random.Random(3)
    for _ in range(50):
        w = tuple(rng.randrange(4) for _ in range(rng.randint(0, 4)))
        once = normal_form(P, w)
        assert normal_form(P, once) == once


def test_slq2_truncated_hopf_checks_carry_qualifier():
    entry = build_slq2(4)
    report = check_hopf(entry.hopf)
    assert report.passed
    assert report.qualifier == "verified up to degree 4"
