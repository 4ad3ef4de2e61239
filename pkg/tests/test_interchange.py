import random

import pytest
from hypothesis import given, settings, strategies as st

from polyverse.finset import FinFamily, FinMap, FinSet
from polyverse import interchange as io
from polyverse.generators import rand_morphism, rand_polynomial, rand_universe
from polyverse.naturalmodel import mk_bool_universe, mk_skewed_universe, validate_universe


labels = st.recursive(
    st.text(alphabet="abcxyz01", min_size=1, max_size=4),
    lambda children: st.lists(children, min_size=0, max_size=3).map(tuple),
    max_leaves=6,
)


@settings(max_examples=50, deadline=None)
@given(st.lists(labels, max_size=5, unique=True))
def test_finset_roundtrip(elems):
    X = FinSet(elems)
    assert io.finset_from_json(io.finset_to_json(X)) == X


@settings(max_examples=50, deadline=None)
@given(st.lists(labels, max_size=4, unique=True), st.lists(labels, min_size=1, max_size=3, unique=True), st.randoms())
def test_finmap_roundtrip(dom_elems, cod_elems, rng):
    dom, cod = FinSet(dom_elems), FinSet(cod_elems)
    f = FinMap(dom, cod, {x: rng.choice(cod.elements) for x in dom})
    assert io.finmap_from_json(io.finmap_to_json(f)) == f


def test_family_roundtrip():
    I = FinSet(["i0", "i1"])
    X = FinFamily(I, {"i0": FinSet(["x", ("p", "q")]), "i1": FinSet()})
    assert io.family_from_json(io.family_to_json(X)) == X


def test_polynomial_roundtrip():
    rng = random.Random(1)
    for _ in range(10):
        P = rand_polynomial(rng, 3)
        assert io.polynomial_from_json(io.polynomial_to_json(P)) == P


def test_morphism_roundtrip():
    rng = random.Random(2)
    for _ in range(10):
        phi = rand_morphism(rng, 3)
        assert io.morphism_from_json(io.morphism_to_json(phi)) == phi


def test_universe_roundtrip_without_pairing_data():
    for u in (mk_bool_universe(), mk_skewed_universe(), rand_universe(random.Random(3), 4)):
        back = io.universe_from_json(io.universe_to_json(u))
        assert back == u
        assert validate_universe(back) == []


def test_parse_errors_are_parse_errors():
    with pytest.raises(io.ParseError):
        io.finset_from_json({"not": "a list"})
    with pytest.raises(io.ParseError):
        io.finset_from_json([1])
    with pytest.raises(io.ParseError):
        io.finmap_from_json({"dom": [], "cod": []})
    with pytest.raises(io.ParseError):
        io.polynomial_from_json({"I": []})
    with pytest.raises(io.ParseError):
        io.loads("{ not json")


def test_duplicate_elements_rejected_on_parse():
    with pytest.raises(io.ParseError):
        io.finset_from_json(["a", "a"])


def test_dumps_is_canonical():
    u = mk_bool_universe()
    a = io.dumps(io.universe_to_json(u))
    b = io.dumps(io.universe_to_json(mk_bool_universe()))
    assert a == b
