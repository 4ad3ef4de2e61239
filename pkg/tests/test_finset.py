import math

import pytest
from hypothesis import given, settings, strategies as st

from polyverse.finset import (
    EnumerationCapExceeded,
    FamilyMorphism,
    FinFamily,
    FinMap,
    FinSet,
    FinSetError,
    Square,
    base_change,
    dep_prod,
    dep_sum,
    enumerate_family_morphisms,
    is_pullback_cone,
    label_key,
    prod_transpose,
    prod_untranspose,
    pullback,
    slice_exponential,
    sum_transpose,
    sum_untranspose,
)


def fam(index, **fibres):
    return FinFamily(index, {i: FinSet(fibres.get(str(i), ())) for i in index})


class TestFinSet:
    def test_canonical_order(self):
        assert FinSet(["b", "a"]) == FinSet(["a", "b"])
        assert FinSet(["b", "a"]).elements == ("a", "b")

    def test_duplicates_rejected(self):
        with pytest.raises(FinSetError):
            FinSet(["a", "a"])

    def test_tuples_sort_after_strings(self):
        X = FinSet([("a", "b"), "z"])
        assert X.elements == ("z", ("a", "b"))

    def test_bad_label_rejected(self):
        with pytest.raises(FinSetError):
            FinSet([3])

    def test_label_key_total_order(self):
        labels = ["a", ("a",), ("a", "b"), ("a", ("b", "c")), "zz"]
        keys = [label_key(x) for x in labels]
        assert len(set(keys)) == len(keys)
        assert sorted(keys) == sorted(keys)


class TestFinMap:
    def test_totality_checked(self):
        with pytest.raises(FinSetError):
            FinMap(FinSet(["a", "b"]), FinSet(["c"]), {"a": "c"})

    def test_codomain_checked(self):
        with pytest.raises(FinSetError):
            FinMap(FinSet(["a"]), FinSet(["c"]), {"a": "d"})

    def test_compose_and_inverse(self):
        X = FinSet(["a", "b"])
        f = FinMap(X, X, {"a": "b", "b": "a"})
        assert f.after(f) == FinMap.identity(X)
        assert f.inverse() == f


class TestPullback:
    def test_identity_diagonal(self):
        A = FinSet(["a0", "a1"])
        i = FinMap.identity(A)
        P, p1, p2 = pullback(i, i)
        assert len(P) == len(A)
        assert all(p1(e) == p2(e) for e in P)

    def test_point_gives_fibre(self):
        B = FinSet(["b0", "b1", "b2"])
        A = FinSet(["a0", "a1"])
        f = FinMap(B, A, {"b0": "a0", "b1": "a0", "b2": "a1"})
        pt = FinMap(FinSet(["*"]), A, {"*": "a0"})
        P, p1, _ = pullback(f, pt)
        assert sorted(p1(e) for e in P) == ["b0", "b1"]

    def test_matching_pairs_count(self):
        # frozen from enumerating all pairs: fibre sizes (2,1) against (1,3)
        A = FinSet(["a0", "a1"])
        B = FinSet(["b0", "b1", "b2"])
        C = FinSet(["c0", "c1", "c2", "c3"])
        f = FinMap(B, A, {"b0": "a0", "b1": "a0", "b2": "a1"})
        g = FinMap(C, A, {"c0": "a0", "c1": "a1", "c2": "a1", "c3": "a1"})
        P, _, _ = pullback(f, g)
        brute = sum(1 for b in B for c in C if f(b) == g(c))
        assert brute == 5
        assert len(P) == 5

    def test_universal_property(self):
        A = FinSet(["a0", "a1"])
        B = FinSet(["b0", "b1"])
        f = FinMap(B, A, {"b0": "a0", "b1": "a1"})
        g = FinMap(B, A, {"b0": "a0", "b1": "a0"})
        P, p1, p2 = pullback(f, g)
        assert is_pullback_cone(f, g, p1, p2)

    def test_symmetry_up_to_swap(self):
        A = FinSet(["a0", "a1"])
        B = FinSet(["b0", "b1"])
        C = FinSet(["c0"])
        f = FinMap(B, A, {"b0": "a0", "b1": "a1"})
        g = FinMap(C, A, {"c0": "a0"})
        P, p1, p2 = pullback(f, g)
        Q, q1, q2 = pullback(g, f)
        swap = {e: (e[1], e[0]) for e in P}
        assert FinSet(swap.values()) == Q
        assert all(q1((e[1], e[0])) == p2(e) and q2((e[1], e[0])) == p1(e) for e in P)


class TestDepSum:
    def _f(self):
        B = FinSet(["b0", "b1"])
        A = FinSet(["a0", "a1"])
        return FinMap(B, A, {"b0": "a0", "b1": "a0"})

    def test_identity_wraps_pairs(self):
        B = FinSet(["b0", "b1"])
        X = fam(B, b0=["x"], b1=["y", "z"])
        S = dep_sum(FinMap.identity(B), X)
        assert S.fibre("b0") == FinSet([("b0", "x")])

    def test_empty_fibre_of_f(self):
        f = self._f()
        X = fam(f.dom, b0=["x"], b1=["y"])
        S = dep_sum(f, X)
        assert len(S.fibre("a1")) == 0

    def test_counted_pairs(self):
        # frozen by enumerating pairs: fibres of sizes 2 and 3 over one point
        f = self._f()
        X = fam(f.dom, b0=["x0", "x1"], b1=["y0", "y1", "y2"])
        S = dep_sum(f, X)
        assert len(S.fibre("a0")) == 5


class TestDepProd:
    def _f(self):
        B = FinSet(["b0", "b1"])
        A = FinSet(["a0", "a1"])
        return FinMap(B, A, {"b0": "a0", "b1": "a0"})

    def test_empty_fibre_gives_singleton(self):
        f = self._f()
        X = fam(f.dom, b0=["x"], b1=["y"])
        P = dep_prod(f, X)
        assert P.fibre("a1") == FinSet([()])

    def test_section_count(self):
        # frozen by enumerating all assignments: 2 * 3 sections
        f = self._f()
        X = fam(f.dom, b0=["x0", "x1"], b1=["y0", "y1", "y2"])
        P = dep_prod(f, X)
        assert len(P.fibre("a0")) == 6

    def test_singletons_give_singletons(self):
        f = self._f()
        X = fam(f.dom, b0=["x"], b1=["y"])
        P = dep_prod(f, X)
        assert all(len(P.fibre(a)) == 1 for a in f.cod)

    def test_cap(self):
        B = FinSet([f"b{i}" for i in range(8)])
        A = FinSet(["a"])
        f = FinMap(B, A, {b: "a" for b in B})
        X = FinFamily(B, {b: FinSet([f"x{i}" for i in range(6)]) for b in B})
        with pytest.raises(EnumerationCapExceeded):
            dep_prod(f, X, cap=1000)


class TestBaseChange:
    def test_identity(self):
        A = FinSet(["a0", "a1"])
        X = fam(A, a0=["x"], a1=["y"])
        assert base_change(FinMap.identity(A), X) == X

    def test_constant(self):
        A = FinSet(["a0", "a1"])
        B = FinSet(["b0", "b1", "b2"])
        X = fam(A, a0=["x", "y"], a1=["z"])
        f = FinMap.constant(B, A, "a0")
        Y = base_change(f, X)
        assert all(Y.fibre(b) == X.fibre("a0") for b in B)

    def test_reindex_sizes(self):
        A = FinSet(["a0", "a1"])
        X = fam(A, a0=["x", "y"], a1=["u", "v", "w"])
        B = FinSet(["b0", "b1"])
        f = FinMap.constant(B, A, "a0")
        Y = base_change(f, X)
        assert [len(Y.fibre(b)) for b in B] == [2, 2]


class TestSliceExponential:
    def test_empty_source_fibre(self):
        Z = FinSet(["z"])
        f1 = FinMap(FinSet(), Z, {})
        f2 = FinMap(FinSet(["y"]), Z, {"y": "z"})
        e = slice_exponential(f1, f2)
        assert len(e.dom) == 1

    def test_function_count(self):
        # frozen by enumerating functions: 3^2 = 9
        Z = FinSet(["z"])
        f1 = FinMap(FinSet(["x0", "x1"]), Z, {"x0": "z", "x1": "z"})
        f2 = FinMap(FinSet(["y0", "y1", "y2"]), Z, {y: "z" for y in ["y0", "y1", "y2"]})
        e = slice_exponential(f1, f2)
        assert len(e.dom) == 9

    def test_contains_identity(self):
        Z = FinSet(["z"])
        f = FinMap(FinSet(["x0", "x1"]), Z, {"x0": "z", "x1": "z"})
        e = slice_exponential(f, f)
        ident = ("z", (("x0", "x0"), ("x1", "x1")))
        assert ident in e.dom


class TestTotalSpace:
    def test_roundtrip(self):
        A = FinSet(["a0", "a1"])
        X = fam(A, a0=["x", "y"], a1=[])
        total, proj = X.total()
        assert FinFamily.from_total(proj) == X

    def test_of_map_keeps_elements(self):
        B = FinSet(["b0", "b1"])
        A = FinSet(["a"])
        f = FinMap(B, A, {"b0": "a", "b1": "a"})
        F = FinFamily.of_map(f)
        assert F.fibre("a") == B


small_sets = st.integers(min_value=0, max_value=3)


@st.composite
def map_with_family(draw):
    nb = draw(small_sets)
    na = draw(st.integers(min_value=1, max_value=3))
    B = FinSet([f"b{i}" for i in range(nb)])
    A = FinSet([f"a{i}" for i in range(na)])
    f = FinMap(B, A, {b: f"a{draw(st.integers(0, na - 1))}" for b in B})
    X = FinFamily(
        B, {b: FinSet([f"x{b}_{k}" for k in range(draw(small_sets))]) for b in B}
    )
    return f, X


@settings(max_examples=40, deadline=None)
@given(map_with_family())
def test_dep_prod_cardinality_matches_product(fx):
    f, X = fx
    P = dep_prod(f, X)
    for a in f.cod:
        expected = math.prod(len(X.fibre(b)) for b in f.preimage(a))
        assert len(P.fibre(a)) == expected


@settings(max_examples=40, deadline=None)
@given(map_with_family())
def test_operations_are_deterministic(fx):
    f, X = fx
    assert dep_prod(f, X) == dep_prod(f, X)
    assert dep_sum(f, X) == dep_sum(f, X)
    P1 = pullback(f, f)
    P2 = pullback(f, f)
    assert P1 == P2


@settings(max_examples=25, deadline=None)
@given(map_with_family(), st.integers(0, 2))
def test_product_adjunction_roundtrip(fx, seed):
    """Hom(pullback of Y, X) and Hom(Y, dependent product of X) transpose
    into each other bijectively."""
    f, X = fx
    import random

    rng = random.Random(seed)
    Y = FinFamily(
        f.cod, {a: FinSet([f"y{a}_{k}" for k in range(rng.randint(0, 2))]) for a in f.cod}
    )
    dY = base_change(f, Y)
    count = 0
    for h in enumerate_family_morphisms(dY, X, cap=2000):
        k = prod_transpose(f, h, X, Y)
        back = prod_untranspose(f, k, X)
        assert back == h
        count += 1
    pk = dep_prod(f, X)
    expected = 1
    for a in f.cod:
        expected *= len(pk.fibre(a)) ** len(Y.fibre(a))
    assert count == expected


@settings(max_examples=25, deadline=None)
@given(map_with_family(), st.integers(0, 2))
def test_sum_adjunction_roundtrip(fx, seed):
    f, X = fx
    import random

    rng = random.Random(seed)
    Y = FinFamily(
        f.cod, {a: FinSet([f"y{a}_{k}" for k in range(rng.randint(1, 2))]) for a in f.cod}
    )
    sX = dep_sum(f, X)
    for h in enumerate_family_morphisms(sX, Y, cap=2000):
        k = sum_transpose(f, h, Y)
        back = sum_untranspose(f, k, Y)
        assert back == h


class TestSquare:
    def test_identity_square_is_pullback(self):
        B = FinSet(["b"])
        A = FinSet(["a0", "a1"])
        f = FinMap(B, A, {"b": "a0"})
        assert Square.identity(f).is_pullback()

    def test_non_commuting_rejected(self):
        A = FinSet(["a0", "a1"])
        i = FinMap.identity(A)
        twist = FinMap(A, A, {"a0": "a1", "a1": "a0"})
        with pytest.raises(FinSetError):
            Square(i, i, twist, i)

    def test_composition(self):
        A = FinSet(["a0", "a1"])
        i = FinMap.identity(A)
        s = Square.identity(i)
        assert s.after(s) == s
