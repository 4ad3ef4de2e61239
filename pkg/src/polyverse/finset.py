"""Finite sets, maps and families: a locally cartesian closed category at desk scale.

Everything is immutable and canonically encoded.  Labels are strings or
(nested) tuples of labels; elements of a ``FinSet`` are kept sorted by a
fixed total order on labels, so two values built from equal inputs are
equal Python objects, not merely isomorphic.  All constructed elements
record their derivation:

* ``pullback(f, g)`` elements are pairs ``(b, c)`` with ``f(b) == g(c)``;
* ``dep_sum`` elements are pairs ``(b, x)``;
* ``dep_prod`` elements are sections: tuples of ``(b, x)`` pairs sorted by
  the key of ``b``;
* ``slice_exponential`` elements are pairs ``(z, table)`` where ``table``
  is a section-style graph of a function.

Operations that would enumerate more than ``DEFAULT_CAP`` elements raise
``EnumerationCapExceeded`` instead of thrashing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Union

Label = Union[str, tuple]

DEFAULT_CAP = 100_000


class FinSetError(Exception):
    """Malformed finite-set data."""


class EnumerationCapExceeded(FinSetError):
    """An operation would enumerate more elements than the configured cap."""


def check_label(label: Label) -> None:
    if isinstance(label, str):
        return
    if isinstance(label, tuple):
        for part in label:
            check_label(part)
        return
    raise FinSetError(f"label must be a string or tuple of labels, got {label!r}")


_KEY_CACHE: dict = {}


def label_key(label: Label):
    """Total order on labels: strings before tuples, then lexicographic."""
    if isinstance(label, str):
        return (0, label)
    cached = _KEY_CACHE.get(label)
    if cached is None:
        cached = (1, tuple(label_key(part) for part in label))
        if len(_KEY_CACHE) < 1_000_000:
            _KEY_CACHE[label] = cached
    return cached


def _guard(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise EnumerationCapExceeded(f"{what} would have {count} elements (cap {cap})")


@dataclass(frozen=True)
class FinSet:
    """An ordered finite set of distinct labels."""

    elements: tuple

    def __init__(self, elements: Iterable[Label] = ()):
        elems = list(elements)
        for e in elems:
            check_label(e)
        ordered = tuple(sorted(elems, key=label_key))
        for a, b in zip(ordered, ordered[1:]):
            if a == b:
                raise FinSetError(f"duplicate element {a!r}")
        object.__setattr__(self, "elements", ordered)

    @cached_property
    def _index(self) -> frozenset:
        return frozenset(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, label: Label) -> bool:
        return label in self._index

    def is_singleton(self) -> bool:
        return len(self.elements) == 1

    def the_element(self) -> Label:
        if len(self.elements) != 1:
            raise FinSetError(f"expected a singleton, got {len(self.elements)} elements")
        return self.elements[0]


TERMINAL = FinSet(("*",))


@dataclass(frozen=True)
class FinMap:
    """A total function between finite sets, stored as a sorted graph."""

    dom: FinSet
    cod: FinSet
    pairs: tuple

    def __init__(self, dom: FinSet, cod: FinSet, assignment):
        if isinstance(assignment, Mapping):
            items = list(assignment.items())
        else:
            items = [(x, y) for x, y in assignment]
        table = {}
        for x, y in items:
            if x in table and table[x] != y:
                raise FinSetError(f"conflicting values for {x!r}")
            table[x] = y
        missing = [x for x in dom if x not in table]
        if missing:
            raise FinSetError(f"no value assigned to {missing[0]!r}")
        extra = [x for x in table if x not in dom]
        if extra:
            raise FinSetError(f"assignment for {extra[0]!r} outside the domain")
        for x, y in table.items():
            if y not in cod:
                raise FinSetError(f"value {y!r} of {x!r} outside the codomain")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(
            self, "pairs", tuple(sorted(table.items(), key=lambda p: label_key(p[0])))
        )

    @cached_property
    def _table(self) -> dict:
        return dict(self.pairs)

    def __call__(self, x: Label) -> Label:
        try:
            return self._table[x]
        except KeyError:
            raise FinSetError(f"{x!r} not in the domain") from None

    def after(self, other: "FinMap") -> "FinMap":
        """Composite self∘other."""
        if other.cod != self.dom:
            raise FinSetError("composition mismatch")
        return FinMap(other.dom, self.cod, {x: self(y) for x, y in other.pairs})

    def preimage(self, y: Label) -> tuple:
        return tuple(x for x, fy in self.pairs if fy == y)

    def is_bijection(self) -> bool:
        return len(self.dom) == len(self.cod) == len({y for _, y in self.pairs})

    def inverse(self) -> "FinMap":
        if not self.is_bijection():
            raise FinSetError("map is not a bijection")
        return FinMap(self.cod, self.dom, {y: x for x, y in self.pairs})

    @staticmethod
    def identity(X: FinSet) -> "FinMap":
        return FinMap(X, X, {x: x for x in X})

    @staticmethod
    def constant(dom: FinSet, cod: FinSet, value: Label) -> "FinMap":
        return FinMap(dom, cod, {x: value for x in dom})

    @staticmethod
    def to_terminal(X: FinSet) -> "FinMap":
        return FinMap(X, TERMINAL, {x: "*" for x in X})


@dataclass(frozen=True)
class FinFamily:
    """A finite set of finite sets, indexed by a finite set."""

    index: FinSet
    fibres: tuple

    def __init__(self, index: FinSet, fibres):
        if isinstance(fibres, Mapping):
            items = list(fibres.items())
        else:
            items = [(i, X) for i, X in fibres]
        table = {}
        for i, X in items:
            if not isinstance(X, FinSet):
                X = FinSet(X)
            if i in table:
                raise FinSetError(f"duplicate fibre for {i!r}")
            table[i] = X
        if set(table) != set(index):
            raise FinSetError("fibres must be defined for exactly the index elements")
        object.__setattr__(self, "index", index)
        object.__setattr__(
            self, "fibres", tuple(sorted(table.items(), key=lambda p: label_key(p[0])))
        )

    @cached_property
    def _table(self) -> dict:
        return dict(self.fibres)

    def fibre(self, i: Label) -> FinSet:
        try:
            return self._table[i]
        except KeyError:
            raise FinSetError(f"{i!r} not in the index") from None

    def sizes(self) -> dict:
        return {i: len(X) for i, X in self.fibres}

    def total(self) -> tuple[FinSet, FinMap]:
        """Total space of pairs ``(i, x)`` with its projection to the index."""
        elems = [(i, x) for i, X in self.fibres for x in X]
        total = FinSet(elems)
        proj = FinMap(total, self.index, {e: e[0] for e in elems})
        return total, proj

    @staticmethod
    def from_total(proj: FinMap) -> "FinFamily":
        """Inverse of ``total``: requires pair-encoded elements over the index."""
        fibres = {i: [] for i in proj.cod}
        for e, i in proj.pairs:
            if not (isinstance(e, tuple) and len(e) == 2 and e[0] == i):
                raise FinSetError(f"element {e!r} is not a pair over its index point")
            fibres[i].append(e[1])
        return FinFamily(proj.cod, {i: FinSet(xs) for i, xs in fibres.items()})

    @staticmethod
    def of_map(p: FinMap) -> "FinFamily":
        """The fibre family of an arbitrary map, keeping raw elements."""
        return FinFamily(p.cod, {i: FinSet(p.preimage(i)) for i in p.cod})

    @staticmethod
    def constant(index: FinSet, X: FinSet) -> "FinFamily":
        return FinFamily(index, {i: X for i in index})


@dataclass(frozen=True)
class FamilyMorphism:
    """A fibrewise map between two families over the same index."""

    src: FinFamily
    dst: FinFamily
    maps: tuple

    def __init__(self, src: FinFamily, dst: FinFamily, maps):
        if src.index != dst.index:
            raise FinSetError("family morphism requires a common index")
        if isinstance(maps, Mapping):
            items = list(maps.items())
        else:
            items = [(i, m) for i, m in maps]
        table = dict(items)
        if set(table) != set(src.index):
            raise FinSetError("component maps must cover exactly the index")
        for i, m in table.items():
            if m.dom != src.fibre(i) or m.cod != dst.fibre(i):
                raise FinSetError(f"component at {i!r} has the wrong signature")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(
            self, "maps", tuple(sorted(table.items(), key=lambda p: label_key(p[0])))
        )

    @cached_property
    def _table(self) -> dict:
        return dict(self.maps)

    def at(self, i: Label) -> FinMap:
        return self._table[i]

    def __call__(self, i: Label, x: Label) -> Label:
        return self._table[i](x)

    def after(self, other: "FamilyMorphism") -> "FamilyMorphism":
        if other.dst != self.src:
            raise FinSetError("family morphism composition mismatch")
        return FamilyMorphism(
            other.src, self.dst, {i: self.at(i).after(other.at(i)) for i in self.src.index}
        )

    def is_bijection(self) -> bool:
        return all(m.is_bijection() for _, m in self.maps)

    def inverse(self) -> "FamilyMorphism":
        return FamilyMorphism(self.dst, self.src, {i: m.inverse() for i, m in self.maps})

    @staticmethod
    def identity(X: FinFamily) -> "FamilyMorphism":
        return FamilyMorphism(X, X, {i: FinMap.identity(X.fibre(i)) for i in X.index})


# ---------------------------------------------------------------------------
# Chosen limits and the adjoint triple
# ---------------------------------------------------------------------------


def _bucket(f: FinMap) -> dict:
    out: dict = {}
    for x, y in f.pairs:
        out.setdefault(y, []).append(x)
    return out


def pullback(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    """Chosen pullback of a cospan: pairs ``(b, c)`` with ``f(b) == g(c)``."""
    if f.cod != g.cod:
        raise FinSetError("pullback requires a common codomain")
    right = _bucket(g)
    elems = [(b, c) for b in f.dom for c in right.get(f(b), ())]
    P = FinSet(elems)
    p1 = FinMap(P, f.dom, {e: e[0] for e in elems})
    p2 = FinMap(P, g.dom, {e: e[1] for e in elems})
    return P, p1, p2


def is_pullback_cone(f: FinMap, g: FinMap, p1: FinMap, p2: FinMap) -> bool:
    """Universal property of a commuting cone over the cospan ``f, g``,
    checked by full enumeration: each matching pair is hit exactly once."""
    if f.cod != g.cod or p1.dom != p2.dom:
        return False
    if p1.cod != f.dom or p2.cod != g.dom:
        return False
    seen = {}
    for e in p1.dom:
        if f(p1(e)) != g(p2(e)):
            return False
        key = (p1(e), p2(e))
        if key in seen:
            return False
        seen[key] = e
    right = _bucket(g)
    want = sum(len(right.get(f(b), ())) for b in f.dom)
    return len(seen) == want


def base_change(f: FinMap, X: FinFamily) -> FinFamily:
    """Reindex a family over the codomain of ``f`` along ``f``."""
    if X.index != f.cod:
        raise FinSetError("base change: family must be indexed by the codomain")
    return FinFamily(f.dom, {b: X.fibre(f(b)) for b in f.dom})


def dep_sum(f: FinMap, X: FinFamily) -> FinFamily:
    """Dependent sum along ``f``: fibre over ``a`` is pairs ``(b, x)``."""
    if X.index != f.dom:
        raise FinSetError("dependent sum: family must be indexed by the domain")
    fibres = {a: [] for a in f.cod}
    for b in f.dom:
        for x in X.fibre(b):
            fibres[f(b)].append((b, x))
    return FinFamily(f.cod, {a: FinSet(xs) for a, xs in fibres.items()})


def section_tuple(assignment: Mapping) -> tuple:
    """Canonical encoding of a section: pairs sorted by the key of the input."""
    return tuple(sorted(assignment.items(), key=lambda p: label_key(p[0])))


def section_lookup(section: tuple, b: Label) -> Label:
    for k, v in section:
        if k == b:
            return v
    raise FinSetError(f"{b!r} not assigned by section {section!r}")


def dep_prod(f: FinMap, X: FinFamily, cap: int = DEFAULT_CAP) -> FinFamily:
    """Dependent product along ``f``: fibre over ``a`` is the set of sections
    of ``X`` over the ``f``-fibre of ``a``."""
    if X.index != f.dom:
        raise FinSetError("dependent product: family must be indexed by the domain")
    fibres = {}
    for a in f.cod:
        bs = f.preimage(a)
        count = 1
        for b in bs:
            count *= len(X.fibre(b))
        _guard(count, cap, f"dependent product fibre over {a!r}")
        sections = []
        for choice in itertools.product(*(X.fibre(b).elements for b in bs)):
            sections.append(section_tuple(dict(zip(bs, choice))))
        fibres[a] = FinSet(sections)
    return FinFamily(f.cod, fibres)


def slice_exponential(f1: FinMap, f2: FinMap, cap: int = DEFAULT_CAP) -> FinMap:
    """Fibrewise full function set: over ``z`` all maps fibre(f1, z) → fibre(f2, z).

    Elements of the result's domain are pairs ``(z, table)``.
    """
    if f1.cod != f2.cod:
        raise FinSetError("slice exponential requires a common base")
    Z = f1.cod
    elems = []
    for z in Z:
        src = f1.preimage(z)
        tgt = f2.preimage(z)
        _guard(len(tgt) ** len(src) if src else 1, cap, f"function set over {z!r}")
        for choice in itertools.product(tgt, repeat=len(src)):
            elems.append((z, section_tuple(dict(zip(src, choice)))))
    E = FinSet(elems)
    return FinMap(E, Z, {e: e[0] for e in elems})


# ---------------------------------------------------------------------------
# Adjunction transposes, used both by tests and by the 2-cell machinery
# ---------------------------------------------------------------------------


def prod_transpose(f: FinMap, h: FamilyMorphism, X: FinFamily, Y: FinFamily) -> FamilyMorphism:
    """Transpose Hom(Δ_f Y, X) → Hom(Y, Π_f X) for ``h : Δ_f Y → X``."""
    if h.src != base_change(f, Y):
        raise FinSetError("transpose source must be the base change of Y")
    target = dep_prod(f, X)
    maps = {}
    for a in f.cod:
        bs = f.preimage(a)
        comp = {}
        for y in Y.fibre(a):
            comp[y] = section_tuple({b: h(b, y) for b in bs})
        maps[a] = FinMap(Y.fibre(a), target.fibre(a), comp)
    return FamilyMorphism(Y, target, maps)


def prod_untranspose(f: FinMap, k: FamilyMorphism, X: FinFamily) -> FamilyMorphism:
    """Inverse transpose: from ``k : Y → Π_f X`` recover ``Δ_f Y → X``."""
    Y = k.src
    src = base_change(f, Y)
    maps = {}
    for b in f.dom:
        a = f(b)
        comp = {y: section_lookup(k(a, y), b) for y in Y.fibre(a)}
        maps[b] = FinMap(src.fibre(b), X.fibre(b), comp)
    return FamilyMorphism(src, X, maps)


def sum_transpose(f: FinMap, h: FamilyMorphism, Y: FinFamily) -> FamilyMorphism:
    """Transpose Hom(Σ_f X, Y) → Hom(X, Δ_f Y) for ``h : Σ_f X → Y`` over cod f."""
    X = FinFamily(f.dom, {b: FinSet(x for bb, x in h.src.fibre(f(b)) if bb == b) for b in f.dom})
    target = base_change(f, Y)
    maps = {}
    for b in f.dom:
        comp = {x: h(f(b), (b, x)) for x in X.fibre(b)}
        maps[b] = FinMap(X.fibre(b), target.fibre(b), comp)
    return FamilyMorphism(X, target, maps)


def sum_untranspose(f: FinMap, k: FamilyMorphism, Y: FinFamily) -> FamilyMorphism:
    """Inverse transpose: from ``k : X → Δ_f Y`` recover ``Σ_f X → Y``."""
    X = k.src
    src = dep_sum(f, X)
    maps = {}
    for a in f.cod:
        comp = {(b, x): k(b, x) for (b, x) in src.fibre(a)}
        maps[a] = FinMap(src.fibre(a), Y.fibre(a), comp)
    return FamilyMorphism(src, Y, maps)


def enumerate_family_morphisms(X: FinFamily, Y: FinFamily, cap: int = DEFAULT_CAP):
    """All fibrewise maps X → Y, in canonical order."""
    if X.index != Y.index:
        raise FinSetError("families must share an index")
    count = 1
    for i in X.index:
        count *= max(1, len(Y.fibre(i))) ** len(X.fibre(i))
        _guard(count, cap, "family morphism enumeration")
    per_index = []
    for i in X.index:
        src, tgt = X.fibre(i), Y.fibre(i)
        if len(src) > 0 and len(tgt) == 0:
            return
        per_index.append([
            FinMap(src, tgt, dict(zip(src, choice)))
            for choice in itertools.product(tgt, repeat=len(src))
        ])
    for combo in itertools.product(*per_index):
        yield FamilyMorphism(X, Y, dict(zip(X.index, combo)))


# ---------------------------------------------------------------------------
# Commuting squares in the arrow category
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Square:
    """A commuting square from ``src : B → A`` to ``dst : D → C`` given by
    ``top : B → D`` and ``bot : A → C``."""

    src: FinMap
    dst: FinMap
    top: FinMap
    bot: FinMap

    def __post_init__(self):
        if self.top.dom != self.src.dom or self.top.cod != self.dst.dom:
            raise FinSetError("square top map has the wrong signature")
        if self.bot.dom != self.src.cod or self.bot.cod != self.dst.cod:
            raise FinSetError("square bottom map has the wrong signature")
        for b in self.src.dom:
            if self.dst(self.top(b)) != self.bot(self.src(b)):
                raise FinSetError(f"square does not commute at {b!r}")

    def is_pullback(self) -> bool:
        return is_pullback_cone(self.bot, self.dst, self.src, self.top)

    def after(self, other: "Square") -> "Square":
        if other.dst != self.src:
            raise FinSetError("square composition mismatch")
        return Square(other.src, self.dst, self.top.after(other.top), self.bot.after(other.bot))

    @staticmethod
    def identity(f: FinMap) -> "Square":
        return Square(f, f, FinMap.identity(f.dom), FinMap.identity(f.cod))
