"""Polynomials over finite sets: bridge diagrams, extension, composition.

A polynomial from I to J is a diagram  I <-s- B -f-> A -t-> J.  Its
extension sends a family X over I to the family over J whose fibre at j
is  Sigma_{a in A_j} Pi_{b in B_a} X_{s(b)},  computed literally as
``dep_sum(t, dep_prod(f, base_change(s, X)))``; elements are pairs
``(a, section)``.

Composition follows the pullback / dependent-product / counit recipe and
records every intermediate object in a ``CompositionTrace`` so that the
construction can be re-validated and unpacked element by element.
``compose_direct`` rebuilds the same composite straight from the
element-level description and must agree exactly; the two code paths share
nothing but the encoding conventions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .finset import (
    DEFAULT_CAP,
    FamilyMorphism,
    FinFamily,
    FinMap,
    FinSet,
    FinSetError,
    TERMINAL,
    base_change,
    dep_prod,
    dep_sum,
    is_pullback_cone,
    label_key,
    pullback,
    section_lookup,
    section_tuple,
    _guard,
)


class PolyError(FinSetError):
    """Malformed polynomial data."""


@dataclass(frozen=True)
class Polynomial:
    """A bridge diagram I <- B -> A -> J."""

    I: FinSet
    B: FinSet
    A: FinSet
    J: FinSet
    s: FinMap
    f: FinMap
    t: FinMap

    def __post_init__(self):
        if self.s.dom != self.B or self.s.cod != self.I:
            raise PolyError("s must map B to I")
        if self.f.dom != self.B or self.f.cod != self.A:
            raise PolyError("f must map B to A")
        if self.t.dom != self.A or self.t.cod != self.J:
            raise PolyError("t must map A to J")

    def is_one_to_one(self) -> bool:
        return self.I == TERMINAL and self.J == TERMINAL


def from_map(f: FinMap) -> Polynomial:
    """A map B -> A seen as a polynomial from the point to the point."""
    return Polynomial(
        TERMINAL, f.dom, f.cod, TERMINAL,
        FinMap.to_terminal(f.dom), f, FinMap.to_terminal(f.cod),
    )


def identity_poly(I: FinSet) -> Polynomial:
    i = FinMap.identity(I)
    return Polynomial(I, I, I, I, i, i, i)


def linear_poly(s: FinMap, t: FinMap) -> Polynomial:
    """The polynomial induced by a span I <-s- A -t-> J."""
    if s.dom != t.dom:
        raise PolyError("a span needs a common domain")
    A = s.dom
    return Polynomial(s.cod, A, A, t.cod, s, FinMap.identity(A), t)


def extend(F: Polynomial, X: FinFamily, cap: int = DEFAULT_CAP) -> FinFamily:
    """Evaluate the extension of F on a family over I."""
    if X.index != F.I:
        raise PolyError("family must be indexed by the source of the polynomial")
    return dep_sum(F.t, dep_prod(F.f, base_change(F.s, X), cap))


def extend_map(F: Polynomial, h: FamilyMorphism, cap: int = DEFAULT_CAP) -> FamilyMorphism:
    """Functor action of the extension on a fibrewise map of families."""
    src = extend(F, h.src, cap)
    dst = extend(F, h.dst, cap)
    maps = {}
    for j in F.J:
        comp = {}
        for (a, sect) in src.fibre(j):
            out = {b: h(F.s(b), x) for b, x in sect}
            comp[(a, sect)] = (a, section_tuple(out))
        maps[j] = FinMap(src.fibre(j), dst.fibre(j), comp)
    return FamilyMorphism(src, dst, maps)


def identity_extension_iso(X: FinFamily) -> tuple[FamilyMorphism, FamilyMorphism]:
    """The recorded bijection between extend(identity_poly(I), X) and X."""
    F = identity_poly(X.index)
    E = extend(F, X)
    fwd, bwd = {}, {}
    for i in X.index:
        fw = {e: section_lookup(e[1], i) for e in E.fibre(i)}
        fwd[i] = FinMap(E.fibre(i), X.fibre(i), fw)
        bwd[i] = FinMap(X.fibre(i), E.fibre(i), {x: (i, ((i, x),)) for x in X.fibre(i)})
    return (
        FamilyMorphism(E, X, fwd),
        FamilyMorphism(X, E, bwd),
    )


# ---------------------------------------------------------------------------
# Composition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompositionTrace:
    """Every intermediate object of the composite construction.

    ``Q`` is the chosen pullback of ``t`` against ``u`` (pairs ``(a, d)``),
    ``h`` its projection to the middle of the outer polynomial, ``w`` the
    dependent product of ``h``, ``e`` the recorded counit component at
    ``h``, ``N`` and ``M`` the middle objects of the composite, and
    ``n, p, q`` the structure maps.
    """

    Q: FinSet
    qa: FinMap            # Q -> A  (inner operations)
    h: FinMap             # Q -> D  (outer arities)
    M: FinSet
    w: FinMap             # M -> C
    Qp: FinSet            # pullback of w against g (pairs (m, d))
    q: FinMap             # Qp -> M
    qp_d: FinMap          # Qp -> D
    e: FinMap             # Qp -> Q, counit of base change -| dependent product
    N: FinSet
    n: FinMap             # N -> B
    p: FinMap             # N -> Qp

    def validate(self, G: Polynomial, F: Polynomial) -> None:
        """Re-check every recorded square and the counit, by enumeration."""
        if not is_pullback_cone(F.t, G.s, self.qa, self.h):
            raise PolyError("square (1) fails the pullback property")
        if not is_pullback_cone(self.w, G.f, self.q, self.qp_d):
            raise PolyError("square (2) fails the pullback property")
        ae = self.qa.after(self.e)
        if not is_pullback_cone(F.f, ae, self.n, self.p):
            raise PolyError("square (3) fails the pullback property")
        for x in self.Qp:
            m, d = self.q(x), self.qp_d(x)
            if self.e(x) != section_lookup(m[1], d):
                raise PolyError("recorded counit disagrees with section evaluation")


def compose(G: Polynomial, F: Polynomial, cap: int = DEFAULT_CAP) -> tuple[Polynomial, CompositionTrace]:
    """Composite polynomial G . F for F : I -|-> J and G : J -|-> K."""
    if F.J != G.I:
        raise PolyError("polynomials do not share a boundary")
    Q, qa, qd = pullback(F.t, G.s)
    fam_q = FinFamily(G.B, {d: FinSet(x for x in Q if x[1] == d) for d in G.B})
    m_fam = dep_prod(G.f, fam_q, cap)
    M, w = m_fam.total()
    Qp, q, qp_d = pullback(w, G.f)
    e = FinMap(Qp, Q, {x: section_lookup(x[0][1], x[1]) for x in Qp})
    ae = qa.after(e)
    N, n, p = pullback(F.f, ae)
    trace = CompositionTrace(Q, qa, qd, M, w, Qp, q, qp_d, e, N, n, p)
    composite = Polynomial(
        F.I, N, M, G.J,
        F.s.after(n), q.after(p), G.t.after(w),
    )
    return composite, trace


def compose_direct(G: Polynomial, F: Polynomial, cap: int = DEFAULT_CAP) -> Polynomial:
    """The composite built straight from its element-level description.

    Used as the independent cross-check for ``compose``: the middle object
    collects pairs of an outer operation with an assignment of inner
    operations to its arities, the arity object collects inner arities on
    top of those, and the encodings are forced by the conventions of
    ``pullback`` and ``dep_prod``.
    """
    if F.J != G.I:
        raise PolyError("polynomials do not share a boundary")
    m_elems = []
    for c in G.A:
        ds = G.f.preimage(c)
        candidates = [[a for a in F.A if F.t(a) == G.s(d)] for d in ds]
        count = 1
        for cand in candidates:
            count *= len(cand)
        _guard(count, cap, f"composite operations over {c!r}")
        for choice in itertools.product(*candidates):
            sect = section_tuple({d: (a, d) for d, a in zip(ds, choice)})
            m_elems.append((c, sect))
    M = FinSet(m_elems)
    n_elems = []
    for (c, sect) in m_elems:
        for d, (a, _) in sect:
            for b in F.f.preimage(a):
                n_elems.append((b, ((c, sect), d)))
    N = FinSet(n_elems)
    s = FinMap(N, F.I, {x: F.s(x[0]) for x in n_elems})
    mid = FinMap(N, M, {x: x[1][0] for x in n_elems})
    t = FinMap(M, G.J, {m: G.t(m[0]) for m in m_elems})
    return Polynomial(F.I, N, M, G.J, s, mid, t)


def decode_operation(melt) -> tuple:
    """Unpack a composite operation ``(c, section)`` into ``(c, {d: a})``."""
    c, sect = melt
    return c, {d: q[0] for d, q in sect}


def decode_arity(nelt) -> tuple:
    """Unpack a composite arity into ``(b, melt, d)``."""
    b, (melt, d) = nelt
    return b, melt, d


def encode_operation(c, assignment: dict) -> tuple:
    """Inverse of ``decode_operation`` under the composite's conventions."""
    return (c, section_tuple({d: (a, d) for d, a in assignment.items()}))


def encode_arity(b, melt, d) -> tuple:
    return (b, (melt, d))


# ---------------------------------------------------------------------------
# Extension preserves composition: the explicit bijection
# ---------------------------------------------------------------------------


def extension_composition_iso(
    G: Polynomial, F: Polynomial, X: FinFamily, cap: int = DEFAULT_CAP
) -> tuple[FamilyMorphism, FamilyMorphism]:
    """Fibrewise bijections between the extension of the composite at X and
    the composite of the extensions, in both directions."""
    GF, trace = compose(G, F, cap)
    lhs = extend(GF, X, cap)
    inner = extend(F, X, cap)
    rhs = extend(G, inner, cap)
    fwd_maps, bwd_maps = {}, {}
    for k in G.J:
        fw = {}
        for (melt, big) in lhs.fibre(k):
            c, assign = decode_operation(melt)
            outer = {}
            for d, a in assign.items():
                inner_sect = section_tuple({
                    b: section_lookup(big, encode_arity(b, melt, d))
                    for b in F.f.preimage(a)
                })
                outer[d] = (a, inner_sect)
            fw[(melt, big)] = (c, section_tuple(outer))
        fwd_maps[k] = FinMap(lhs.fibre(k), rhs.fibre(k), fw)
        bw = {}
        for (c, outer) in rhs.fibre(k):
            assign = {d: pf[0] for d, pf in outer}
            melt = encode_operation(c, assign)
            big = {}
            for d, (a, inner_sect) in outer:
                for b, x in inner_sect:
                    big[encode_arity(b, melt, d)] = x
            bw[(c, outer)] = (melt, section_tuple(big))
        bwd_maps[k] = FinMap(rhs.fibre(k), lhs.fibre(k), bw)
    return FamilyMorphism(lhs, rhs, fwd_maps), FamilyMorphism(rhs, lhs, bwd_maps)


# ---------------------------------------------------------------------------
# Reduction to polynomials from the point to the point over a product base
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlicePolynomial:
    """A one-to-one polynomial in the slice over ``base``: a fibrewise map.

    The covariant direction of the reduction sends I <- B -> A -> J to the
    map <s, f> : B -> I x A over I x J; the codomain object is represented
    by the family whose fibre over ``(i, j)`` is the t-fibre of ``j``,
    constant in the first coordinate.
    """

    base: FinSet
    dom: FinFamily
    cod: FinFamily
    maps: tuple

    def __init__(self, base: FinSet, dom: FinFamily, cod: FinFamily, maps):
        morphism = FamilyMorphism(dom, cod, maps)
        if dom.index != base:
            raise PolyError("slice polynomial families must be indexed by the base")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "maps", morphism.maps)

    @cached_property
    def as_family_morphism(self) -> FamilyMorphism:
        return FamilyMorphism(self.dom, self.cod, dict(self.maps))

    def at(self, z) -> FinMap:
        return self.as_family_morphism.at(z)


def product_set(I: FinSet, J: FinSet) -> FinSet:
    return FinSet((i, j) for i in I for j in J)


def slice_reduce(F: Polynomial) -> SlicePolynomial:
    """Reduce a polynomial with general endpoints to a fibrewise map over I x J."""
    base = product_set(F.I, F.J)
    dom_fibres = {z: [] for z in base}
    for b in F.B:
        dom_fibres[(F.s(b), F.t(F.f(b)))].append(b)
    dom = FinFamily(base, {z: FinSet(xs) for z, xs in dom_fibres.items()})
    cod = FinFamily(base, {(i, j): FinSet(F.t.preimage(j)) for (i, j) in base})
    maps = {
        z: FinMap(dom.fibre(z), cod.fibre(z), {b: F.f(b) for b in dom.fibre(z)})
        for z in base
    }
    return SlicePolynomial(base, dom, cod, maps)


def slice_unreduce(S: SlicePolynomial) -> Polynomial:
    """Inverse of ``slice_reduce`` on its image; rejects anything else."""
    base_pairs = list(S.base)
    if not all(isinstance(z, tuple) and len(z) == 2 for z in base_pairs):
        raise PolyError("base is not a binary product")
    I = FinSet({z[0] for z in base_pairs})
    J = FinSet({z[1] for z in base_pairs})
    if S.base != product_set(I, J):
        raise PolyError("base is not the full product")
    a_to_j = {}
    for (i, j) in S.base:
        for a in S.cod.fibre((i, j)):
            if a_to_j.setdefault(a, j) != j:
                raise PolyError(f"operation {a!r} appears over two different targets")
    A = FinSet(a_to_j)
    for (i, j) in S.base:
        expect = FinSet(a for a, jj in a_to_j.items() if jj == j)
        if S.cod.fibre((i, j)) != expect:
            raise PolyError("codomain fibres are not uniform in the first coordinate")
    b_data = {}
    for (i, j) in S.base:
        for b in S.dom.fibre((i, j)):
            if b in b_data:
                raise PolyError(f"arity {b!r} appears over two base points")
            a = S.at((i, j))(b)
            b_data[b] = (i, a)
            if a_to_j[a] != j:
                raise PolyError("fibrewise map is incompatible with the targets")
    B = FinSet(b_data)
    s = FinMap(B, I, {b: ia[0] for b, ia in b_data.items()})
    f = FinMap(B, A, {b: ia[1] for b, ia in b_data.items()})
    t = FinMap(A, J, a_to_j)
    return Polynomial(I, B, A, J, s, f, t)


def slice_extension(S: SlicePolynomial, Y: FinFamily, cap: int = DEFAULT_CAP) -> FinFamily:
    """Extension of a sliced one-to-one polynomial, computed fibre by fibre."""
    if Y.index != S.base:
        raise PolyError("family must be indexed by the slice base")
    fibres = {}
    for z in S.base:
        fz = S.at(z)
        fam = FinFamily.constant(fz.dom, Y.fibre(z))
        ext = dep_sum(FinMap.to_terminal(fz.cod), dep_prod(fz, fam, cap))
        fibres[z] = ext.fibre("*")
    return FinFamily(S.base, fibres)
