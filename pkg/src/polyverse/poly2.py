"""Morphisms of polynomials (2-cells), adjustments (3-cells), and the
coherence machinery built on them.

A morphism from F = (I <-s- B -f-> A -t-> J) to G = (I <-u- D -g-> C -v-> J)
is a vertex ``dphi`` with maps ``phi0 : A -> C``, ``phi1 : dphi -> D`` and
``phi2 : dphi -> B`` such that the evident diagram commutes and the lower
square (with horizontal edge ``f . phi2``) is a pullback of ``g`` along
``phi0``.  The morphism is cartesian when ``phi2`` is a bijection; every
cartesian morphism has a canonical square presentation
``(phi1 . phi2^-1, phi0)`` and conversely every pullback square induces a
cartesian morphism with the chosen pullback as vertex.

An adjustment between parallel morphisms is a map of vertices over B.
Between any parallel pair with cartesian target there is exactly one, with
closed form ``psi2^-1 . phi2``; the exhaustive search agreeing with that
closed form is one of the standing test obligations.
"""

from __future__ import annotations

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
    is_pullback_cone,
    pullback,
    section_lookup,
    section_tuple,
    _guard,
)
from .poly import (
    Polynomial,
    PolyError,
    SlicePolynomial,
    compose,
    decode_arity,
    decode_operation,
    encode_arity,
    encode_operation,
    extend,
    identity_poly,
    slice_reduce,
    slice_unreduce,
)


class CellShapeError(PolyError):
    """Morphism data with mismatched objects or maps."""


class CellCommutationError(PolyError):
    """Morphism data whose triangles or square fail to commute."""


class CellPullbackError(PolyError):
    """Morphism data whose lower square is not a pullback."""


class AdjustmentError(PolyError):
    """Adjustment data that is not a map over B."""


@dataclass(frozen=True)
class PolyMorphism:
    src: Polynomial
    dst: Polynomial
    dphi: FinSet
    phi0: FinMap
    phi1: FinMap
    phi2: FinMap

    def __post_init__(self):
        F, G = self.src, self.dst
        if F.I != G.I or F.J != G.J:
            raise CellShapeError("morphism endpoints must agree")
        if self.phi0.dom != F.A or self.phi0.cod != G.A:
            raise CellShapeError("phi0 must map operations to operations")
        if self.phi1.dom != self.dphi or self.phi1.cod != G.B:
            raise CellShapeError("phi1 must map the vertex into the target arities")
        if self.phi2.dom != self.dphi or self.phi2.cod != F.B:
            raise CellShapeError("phi2 must map the vertex into the source arities")
        if F.t != G.t.after(self.phi0):
            raise CellCommutationError("target triangle does not commute")
        if F.s.after(self.phi2) != G.s.after(self.phi1):
            raise CellCommutationError("source triangle does not commute")
        r = F.f.after(self.phi2)
        if G.f.after(self.phi1) != self.phi0.after(r):
            raise CellCommutationError("lower square does not commute")
        if not is_pullback_cone(self.phi0, G.f, r, self.phi1):
            raise CellPullbackError("lower square is not a pullback")

    @cached_property
    def r(self) -> FinMap:
        """The horizontal edge of the lower square, ``f . phi2``."""
        return self.src.f.after(self.phi2)

    @cached_property
    def _fill(self) -> dict:
        return {(self.r(e), self.phi1(e)): e for e in self.dphi}

    def fill(self, a, d):
        """The unique vertex element over ``a`` mapping to ``d``."""
        try:
            return self._fill[(a, d)]
        except KeyError:
            raise PolyError(f"no vertex element over ({a!r}, {d!r})") from None

    def is_cartesian(self) -> bool:
        return self.phi2.is_bijection()

    def square_top(self) -> FinMap:
        """Canonical square presentation's top edge, for cartesian morphisms."""
        return self.phi1.after(self.phi2.inverse())


def identity_cell(F: Polynomial) -> PolyMorphism:
    i = FinMap.identity(F.B)
    return PolyMorphism(F, F, F.B, FinMap.identity(F.A), i, i)


def cell_from_square(F: Polynomial, G: Polynomial, top: FinMap, bot: FinMap) -> PolyMorphism:
    """The cartesian morphism induced by a pullback square from the middle
    map of F to the middle map of G; the vertex is the chosen pullback."""
    if top.dom != F.B or top.cod != G.B or bot.dom != F.A or bot.cod != G.A:
        raise CellShapeError("square edges have the wrong signatures")
    for b in F.B:
        if G.f(top(b)) != bot(F.f(b)):
            raise CellCommutationError(f"square does not commute at {b!r}")
    if not is_pullback_cone(bot, G.f, F.f, top):
        raise CellPullbackError("square is not a pullback")
    if F.s != G.s.after(top):
        raise CellCommutationError("square is incompatible with the sources")
    if F.t != G.t.after(bot):
        raise CellCommutationError("square is incompatible with the targets")
    dphi, proj_a, proj_d = pullback(bot, G.f)
    comparison = {(F.f(b), top(b)): b for b in F.B}
    phi2 = FinMap(dphi, F.B, {e: comparison[e] for e in dphi})
    return PolyMorphism(F, G, dphi, bot, proj_d, phi2)


def cartesian_from_square(f: FinMap, g: FinMap, top: FinMap, bot: FinMap) -> PolyMorphism:
    """Square-to-morphism for maps considered as one-to-one polynomials."""
    from .poly import from_map

    return cell_from_square(from_map(f), from_map(g), top, bot)


def canon(phi: PolyMorphism) -> PolyMorphism:
    """Normalise a cartesian morphism to its chosen-pullback representative."""
    if not phi.is_cartesian():
        raise PolyError("only cartesian morphisms have a canonical square form")
    return cell_from_square(phi.src, phi.dst, phi.square_top(), phi.phi0)


def cells_square_equal(x: PolyMorphism, y: PolyMorphism) -> bool:
    """Equality of cartesian morphisms in square presentation."""
    return (
        x.src == y.src
        and x.dst == y.dst
        and x.phi0 == y.phi0
        and x.square_top() == y.square_top()
    )


def invert_cell(phi: PolyMorphism) -> PolyMorphism:
    """Inverse of an invertible morphism (cartesian with bijective phi0)."""
    if not phi.is_cartesian():
        raise PolyError("only cartesian morphisms can be inverted")
    if not phi.phi0.is_bijection():
        raise PolyError("morphism is not invertible: phi0 is not a bijection")
    return cell_from_square(
        phi.dst, phi.src, phi.square_top().inverse(), phi.phi0.inverse()
    )


# ---------------------------------------------------------------------------
# Vertical composition
# ---------------------------------------------------------------------------


def v_comp(psi: PolyMorphism, phi: PolyMorphism) -> PolyMorphism:
    """Composite of phi : F => G and psi : G => H; the vertex is the chosen
    pullback of the middle map of H along the composite of the bottom maps,
    and the comparison into the arities of F is induced by the universal
    property of the two lower squares."""
    if phi.dst != psi.src:
        raise CellShapeError("vertical composition boundary mismatch")
    F, H = phi.src, psi.dst
    phi0 = psi.phi0.after(phi.phi0)
    vertex, proj_a, proj_l = pullback(phi0, H.f)
    phi2_table = {}
    for x in vertex:
        a, l = x
        e_psi = psi.fill(phi.phi0(a), l)
        e_phi = phi.fill(a, psi.phi2(e_psi))
        phi2_table[x] = phi.phi2(e_phi)
    return PolyMorphism(F, H, vertex, phi0, proj_l, FinMap(vertex, F.B, phi2_table))


def vcomp_chain(*cells: PolyMorphism) -> PolyMorphism:
    """Left-nested vertical composite; arguments ordered outermost first."""
    result = cells[0]
    for cell in cells[1:]:
        result = v_comp(result, cell)
    return result


# ---------------------------------------------------------------------------
# Horizontal composition of cartesian morphisms
# ---------------------------------------------------------------------------


def h_comp(psi: PolyMorphism, phi: PolyMorphism, cap: int = DEFAULT_CAP) -> PolyMorphism:
    """Horizontal composite of cartesian phi : F => F2 (over I -|-> J) and
    cartesian psi : G => G2 (over J -|-> K), as a cartesian morphism
    G.F => G2.F2 computed on the square presentations."""
    if not (phi.is_cartesian() and psi.is_cartesian()):
        raise PolyError("horizontal composition is only provided for cartesian morphisms")
    if phi.src.J != psi.src.I:
        raise CellShapeError("horizontal composition boundary mismatch")
    GF, _ = compose(psi.src, phi.src, cap)
    G2F2, _ = compose(psi.dst, phi.dst, cap)
    psi_top = psi.square_top()
    phi_top = phi.square_top()
    bot_table = {}
    for melt in GF.A:
        c, assign = decode_operation(melt)
        assign2 = {psi_top(d): phi.phi0(a) for d, a in assign.items()}
        bot_table[melt] = encode_operation(psi.phi0(c), assign2)
    bot = FinMap(GF.A, G2F2.A, bot_table)
    top_table = {}
    for nelt in GF.B:
        b, melt, d = decode_arity(nelt)
        top_table[nelt] = encode_arity(phi_top(b), bot(melt), psi_top(d))
    top = FinMap(GF.B, G2F2.B, top_table)
    return cell_from_square(GF, G2F2, top, bot)


def whisker_left(G: Polynomial, phi: PolyMorphism, cap: int = DEFAULT_CAP) -> PolyMorphism:
    """G . phi : G.F => G.F2."""
    return h_comp(identity_cell(G), phi, cap)


def whisker_right(psi: PolyMorphism, F: Polynomial, cap: int = DEFAULT_CAP) -> PolyMorphism:
    """psi . F : G.F => G2.F."""
    return h_comp(psi, identity_cell(F), cap)


# ---------------------------------------------------------------------------
# Unitors
# ---------------------------------------------------------------------------


def runitor_inv(F: Polynomial, cap: int = DEFAULT_CAP) -> PolyMorphism:
    """The canonical iso F => F . i_I."""
    FI, tr = compose(F, identity_poly(F.I), cap)
    bot = tr.w.inverse()
    top = tr.qp_d.after(tr.p).inverse()
    return cell_from_square(F, FI, top, bot)


def lunitor_inv(F: Polynomial, cap: int = DEFAULT_CAP) -> PolyMorphism:
    """The canonical iso F => i_J . F."""
    IF, tr = compose(identity_poly(F.J), F, cap)
    m_to_a = tr.qa.after(tr.e).after(tr.q.inverse())
    bot = m_to_a.inverse()
    top = tr.n.inverse()
    return cell_from_square(F, IF, top, bot)


def runitor(F: Polynomial, cap: int = DEFAULT_CAP) -> PolyMorphism:
    """F . i_I => F."""
    return invert_cell(runitor_inv(F, cap))


def lunitor(F: Polynomial, cap: int = DEFAULT_CAP) -> PolyMorphism:
    """i_J . F => F."""
    return invert_cell(lunitor_inv(F, cap))


# ---------------------------------------------------------------------------
# The induced natural transformation between extensions
# ---------------------------------------------------------------------------


def extend_cell(phi: PolyMorphism, X: FinFamily, cap: int = DEFAULT_CAP) -> FamilyMorphism:
    """Component maps of the transformation induced by a morphism: an
    element ``(a, section)`` goes to ``phi0(a)`` paired with the section
    carried backwards through the vertex."""
    src_ext = extend(phi.src, X, cap)
    dst_ext = extend(phi.dst, X, cap)
    G = phi.dst
    maps = {}
    for j in phi.src.J:
        comp = {}
        for (a, sect) in src_ext.fibre(j):
            c = phi.phi0(a)
            out = {}
            for d in G.f.preimage(c):
                e = phi.fill(a, d)
                out[d] = section_lookup(sect, phi.phi2(e))
            comp[(a, sect)] = (c, section_tuple(out))
        maps[j] = FinMap(src_ext.fibre(j), dst_ext.fibre(j), comp)
    return FamilyMorphism(src_ext, dst_ext, maps)


# ---------------------------------------------------------------------------
# Adjustments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Adjustment:
    src: PolyMorphism
    dst: PolyMorphism
    alpha: FinMap

    def __post_init__(self):
        if self.src.src != self.dst.src or self.src.dst != self.dst.dst:
            raise AdjustmentError("adjustments require parallel morphisms")
        if self.alpha.dom != self.src.dphi or self.alpha.cod != self.dst.dphi:
            raise AdjustmentError("adjustment map has the wrong signature")
        if self.dst.phi2.after(self.alpha) != self.src.phi2:
            raise AdjustmentError("adjustment triangle over B does not commute")

    def is_identity(self) -> bool:
        return self.src == self.dst and self.alpha == FinMap.identity(self.src.dphi)

    def is_invertible(self) -> bool:
        return self.alpha.is_bijection()

    def inverse(self) -> "Adjustment":
        return Adjustment(self.dst, self.src, self.alpha.inverse())


def identity_adjustment(phi: PolyMorphism) -> Adjustment:
    return Adjustment(phi, phi, FinMap.identity(phi.dphi))


def unique_adjustment(phi: PolyMorphism, psi: PolyMorphism) -> Adjustment:
    """The only adjustment into a cartesian morphism: psi2^-1 . phi2."""
    if not psi.is_cartesian():
        raise PolyError("unique adjustment requires a cartesian target")
    return Adjustment(phi, psi, psi.phi2.inverse().after(phi.phi2))


def all_adjustments(phi: PolyMorphism, psi: PolyMorphism, cap: int = DEFAULT_CAP):
    """Every valid adjustment, found by exhaustive search over all maps."""
    import itertools

    _guard(max(1, len(psi.dphi)) ** len(phi.dphi), cap, "adjustment search")
    if len(phi.dphi) > 0 and len(psi.dphi) == 0:
        return
    for choice in itertools.product(psi.dphi.elements, repeat=len(phi.dphi)):
        table = dict(zip(phi.dphi.elements, choice))
        candidate = FinMap(phi.dphi, psi.dphi, table)
        if psi.phi2.after(candidate) == phi.phi2:
            yield Adjustment(phi, psi, candidate)


def adj_vcomp(beta: Adjustment, alpha: Adjustment) -> Adjustment:
    """Composition within a hom category of morphisms: beta . alpha."""
    if alpha.dst != beta.src:
        raise AdjustmentError("adjustment composition mismatch")
    return Adjustment(alpha.src, beta.dst, beta.alpha.after(alpha.alpha))


def adj_whisker(beta: Adjustment, alpha: Adjustment) -> Adjustment:
    """Action of vertical composition on adjustments: from alpha : phi => phi'
    and beta : psi => psi' the pullback-induced map between the composite
    vertices.  Requires a cartesian psi', which covers every use the
    pseudomonad results need; the fully general case belongs to the open
    bookkeeping around non-cartesian horizontal structure."""
    phi, phi2c = alpha.src, alpha.dst
    psi, psi2c = beta.src, beta.dst
    if phi.dst != psi.src or phi2c.dst != psi2c.src:
        raise AdjustmentError("whisker boundary mismatch")
    if not psi2c.is_cartesian():
        raise PolyError("adjustment whiskering requires a cartesian outer target")
    comp_src = v_comp(psi, phi)
    comp_dst = v_comp(psi2c, phi2c)
    table = {}
    for x in comp_src.dphi:
        a, l = x
        e_psi = psi.fill(phi.phi0(a), l)
        e_phi = phi.fill(a, psi.phi2(e_psi))
        e_phi2 = alpha.alpha(e_phi)
        e_psi2 = psi2c.phi2.inverse()(phi2c.phi1(e_phi2))
        table[x] = (a, psi2c.phi1(e_psi2))
    return Adjustment(comp_src, comp_dst, FinMap(comp_src.dphi, comp_dst.dphi, table))


# ---------------------------------------------------------------------------
# The associator and the coherence laws
# ---------------------------------------------------------------------------


def _require_one_to_one(*polys: Polynomial) -> None:
    for P in polys:
        if not P.is_one_to_one():
            raise PolyError("this construction expects polynomials from the point to the point")


def associator(f: Polynomial, g: Polynomial, h: Polynomial, cap: int = DEFAULT_CAP) -> PolyMorphism:
    """The invertible exchange (h.g).f => h.(g.f) for one-to-one polynomials.

    On operations it regroups an outer operation, an assignment of middle
    operations, and an assignment of inner operations into an outer
    operation paired with a combined assignment; on arities it carries the
    underlying data across unchanged.
    """
    _require_one_to_one(f, g, h)
    hg, _ = compose(h, g, cap)
    hg_f, _ = compose(hg, f, cap)
    gf, _ = compose(g, f, cap)
    h_gf, _ = compose(h, gf, cap)

    bot_table = {}
    inner_ops = {}
    for melt in hg_f.A:
        mhg, assign3 = decode_operation(melt)
        c, assign1 = decode_operation(mhg)
        per_d = {}
        for d, ag in assign1.items():
            per_d[d] = encode_operation(
                ag,
                {bg: assign3[encode_arity(bg, mhg, d)] for bg in g.f.preimage(ag)},
            )
        inner_ops[melt] = per_d
        bot_table[melt] = encode_operation(c, per_d)
    bot = FinMap(hg_f.A, h_gf.A, bot_table)

    top_table = {}
    for nelt in hg_f.B:
        bf, melt, nhg = decode_arity(nelt)
        bg, _, d = decode_arity(nhg)
        mgf = inner_ops[melt][d]
        top_table[nelt] = encode_arity(encode_arity(bf, mgf, bg), bot(melt), d)
    top = FinMap(hg_f.B, h_gf.B, top_table)
    return cell_from_square(hg_f, h_gf, top, bot)


def pentagon_check(
    f: Polynomial, g: Polynomial, h: Polynomial, k: Polynomial, cap: int = DEFAULT_CAP
) -> dict:
    """Both composite reassociations of a fourfold composite, compared as
    literal maps, together with the unique-adjustment diagnostics."""
    _require_one_to_one(f, g, h, k)
    kh, _ = compose(k, h, cap)
    hg, _ = compose(h, g, cap)
    gf, _ = compose(g, f, cap)
    direct = vcomp_chain(associator(gf, h, k, cap), associator(f, g, kh, cap))
    stepwise = vcomp_chain(
        h_comp(identity_cell(k), associator(f, g, h, cap), cap),
        associator(f, hg, k, cap),
        h_comp(associator(g, h, k, cap), identity_cell(f), cap),
    )
    equal = cells_square_equal(direct, stepwise)
    witness = unique_adjustment(direct, canon(stepwise))
    return {
        "ok": equal and witness.is_invertible(),
        "square_equality": equal,
        "adjustment_invertible": witness.is_invertible(),
    }


def triangle_check(f: Polynomial, g: Polynomial, cap: int = DEFAULT_CAP) -> dict:
    """The unitor triangle for a composable pair of one-to-one polynomials."""
    _require_one_to_one(f, g)
    i1 = identity_poly(TERMINAL)
    mediator = associator(f, i1, g, cap)
    left = h_comp(runitor(g, cap), identity_cell(f), cap)
    right = v_comp(h_comp(identity_cell(g), lunitor(f, cap), cap), mediator)
    equal = cells_square_equal(left, right)
    return {"ok": equal, "square_equality": equal}


def codiscreteness_check(phi: PolyMorphism, psi: PolyMorphism, cap: int = DEFAULT_CAP) -> dict:
    """Between a parallel pair with cartesian target there is exactly one
    adjustment, and it is the closed form."""
    found = list(all_adjustments(phi, psi, cap))
    closed = unique_adjustment(phi, psi)
    return {
        "ok": len(found) == 1 and found[0].alpha == closed.alpha,
        "count": len(found),
    }


# ---------------------------------------------------------------------------
# Reduction of 2-cells to the slice
# ---------------------------------------------------------------------------


def flat_union(X: FinFamily, disjoint: bool = True) -> FinSet:
    """The union of the fibres of a family; ``disjoint`` asserts no overlap."""
    if disjoint:
        return FinSet(x for _, F in X.fibres for x in F)
    return FinSet({x for _, F in X.fibres for x in F})


@dataclass(frozen=True)
class SliceMorphism:
    """A morphism of sliced one-to-one polynomials over a product base.

    The reduction keeps the vertex, both vertex maps, and the operation map
    of the original morphism; adjustments are untouched by it.  Composing
    fibrewise and then reducing agrees with reducing and then restricting,
    on the nose.
    """

    src: SlicePolynomial
    dst: SlicePolynomial
    dphi: FinSet
    phi0: FinMap
    phi1: FinMap
    phi2: FinMap

    def __post_init__(self):
        if self.src.base != self.dst.base:
            raise CellShapeError("sliced morphisms require a common base")
        if self.phi0.dom != flat_union(self.src.cod, disjoint=False):
            raise CellShapeError("phi0 must be defined on the operations")
        if self.phi0.cod != flat_union(self.dst.cod, disjoint=False):
            raise CellShapeError("phi0 must land in the target operations")
        if self.phi1.cod != flat_union(self.dst.dom) or self.phi2.cod != flat_union(self.src.dom):
            raise CellShapeError("vertex maps land in the wrong totals")
        for z in self.src.base:
            self.fibre_cell(z)

    def fibre_cell(self, z) -> PolyMorphism:
        """The restriction to one base point, as an ordinary morphism of
        one-to-one polynomials; the single validation code path."""
        from .poly import from_map

        src_map = self.src.at(z)
        dst_map = self.dst.at(z)
        base_of_src = {b: zz for zz in self.src.base for b in self.src.dom.fibre(zz)}
        vertex = FinSet(e for e in self.dphi if base_of_src[self.phi2(e)] == z)
        phi0 = FinMap(src_map.cod, dst_map.cod, {x: self.phi0(x) for x in src_map.cod})
        phi1 = FinMap(vertex, dst_map.dom, {e: self.phi1(e) for e in vertex})
        phi2 = FinMap(vertex, src_map.dom, {e: self.phi2(e) for e in vertex})
        return PolyMorphism(from_map(src_map), from_map(dst_map), vertex, phi0, phi1, phi2)

    def is_cartesian(self) -> bool:
        return self.phi2.is_bijection()


def slice_reduce_cell(phi: PolyMorphism) -> SliceMorphism:
    """Reduce a morphism with general endpoints to the slice over I x J."""
    return SliceMorphism(
        slice_reduce(phi.src), slice_reduce(phi.dst),
        phi.dphi, phi.phi0, phi.phi1, phi.phi2,
    )


def slice_unreduce_cell(sm: SliceMorphism) -> PolyMorphism:
    """Inverse of ``slice_reduce_cell`` on its image."""
    F = slice_unreduce(sm.src)
    G = slice_unreduce(sm.dst)
    return PolyMorphism(F, G, sm.dphi, sm.phi0, sm.phi1, sm.phi2)
