"""Seeded verification suites.

Each suite runs a family of law checks over generated instances and
returns a ``Report``: one record per check carrying the law identifier,
an instance descriptor, and a pass/fail/skip status.  Reports are a pure
function of (suite, config), so rerunning with the same seed yields a
byte-identical serialisation.  Instances whose enumeration would exceed
the configured cap are recorded as skips and the suite continues.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .finset import (
    EnumerationCapExceeded,
    FamilyMorphism,
    FinMap,
    FinSet,
    Square,
    FinFamily,
)
from .poly import (
    compose,
    compose_direct,
    extend,
    extend_map,
    extension_composition_iso,
    slice_reduce,
    slice_unreduce,
)
from .poly2 import (
    Adjustment,
    AdjustmentError,
    PolyMorphism,
    all_adjustments,
    canon,
    cells_square_equal,
    codiscreteness_check,
    extend_cell,
    identity_cell,
    pentagon_check,
    slice_reduce_cell,
    slice_unreduce_cell,
    triangle_check,
    unique_adjustment,
    v_comp,
    h_comp,
)
from .internalcat import (
    adjustment_to_nat,
    equivalence_sets,
    internal_full_subcat,
    internal_functor,
    nat_to_adjustment,
    InternalNatTrans,
    InternalCatError,
)
from .naturalmodel import (
    Universe,
    UniverseError,
    cell_of_square,
    lift_apply,
    lift_apply_square,
    lift_unit_mult,
    mk_bool_universe,
    mk_skewed_universe,
    pi_structure,
    pseudoalgebra_from,
    pseudoalgebra_pasting_report,
    pseudomonad_from,
    pseudomonad_pasting_report,
    sigma_structure,
    unit_structure,
    validate_universe,
    verify_type_isos,
)
from . import generators as gen


LAWS = {
    "extension-composite-bijection": "the composite's extension and the composed extensions are in bijection, round-tripping to the identity on every fibre",
    "extension-composite-naturality": "the composite bijection commutes with every fibrewise map of families",
    "composite-matches-direct": "the pullback-and-product composite equals the element-level composite exactly",
    "trace-revalidates": "every square recorded by composition satisfies the pullback universal property",
    "unique-adjustment": "exhaustive search finds exactly one adjustment into a cartesian morphism, equal to the closed form",
    "pentagon": "both reassociation composites of a fourfold composite agree as maps",
    "triangle": "the unitor triangle commutes as maps",
    "local-codiscreteness": "between a parallel pair with cartesian target there is exactly one adjustment",
    "corrupted-adjustment-rejected": "an adjustment with a broken triangle over the arities is refused",
    "internal-category-laws": "unit and associativity laws of the internal full subcategory hold by enumeration",
    "internal-functor-composition": "the internal functor of a composite is the composite of the internal functors",
    "internal-fully-faithful": "induced internal functors are bijective on hom fibres",
    "adjustment-nat-roundtrip": "transposes between adjustments and internal natural transformations invert each other",
    "internal-nt-unique": "exhaustive search finds exactly one internal natural transformation between induced functors",
    "four-way-equivalence": "the four descriptions of an adjustment select the same candidate maps",
    "universe-validates": "unit, sum and product squares of the universe are pullbacks",
    "monad-structure-cartesian": "the unit, sum and product structure cells validate and are cartesian",
    "strictness-profile": "the universe's monad laws are strict or pseudo exactly as expected",
    "pseudomonad-pasting": "both pasting composites of the pseudomonad coherence equations agree as maps",
    "pseudoalgebra-pasting": "both pasting composites of the pseudoalgebra coherence equations agree as maps",
    "corrupted-universe-rejected": "a universe with a broken sum fibre is refused",
    "type-isomorphisms": "all five type isomorphism rows hold as explicit bijections",
    "lift-identity": "the lifted endofunctor preserves identity squares",
    "lift-composition": "the lifted endofunctor preserves composition of squares",
    "lift-preserves-pullbacks": "the lifted endofunctor sends pullback squares to pullback squares",
    "lift-unit-mult-squares": "the unit and multiplication components are pullback squares",
    "lift-naturality": "unit and multiplication components are natural in cartesian squares",
    "lift-monad-laws": "the lifted unit and multiplication satisfy the monad laws up to unique invertible adjustments",
    "slice-roundtrip": "reduction to the slice and back is the identity on polynomials and morphisms",
    "slice-cartesian-iff": "reduction preserves and reflects cartesianness",
    "slice-functorial": "reduction commutes with vertical composition, fibre by fibre",
    "slice-adjustment-identity": "reduction leaves adjustment data unchanged",
    "extension-functorial": "extensions of composites of morphisms are composites of extensions",
    "extension-identity": "the extension of an identity morphism is the identity",
    "hcomp-extension": "the extension of a horizontal composite matches the horizontal composite of extensions",
    "cartesian-naturality-pullback": "naturality squares of cartesian morphisms' extensions are pullbacks",
}


class UnknownSuiteError(Exception):
    pass


@dataclass(frozen=True)
class InstanceGenConfig:
    seed: int = 0
    count: int = 20
    max_set_size: int = 3
    enumeration_cap: int = 100_000

    def __post_init__(self):
        if self.count <= 0 or self.max_set_size <= 0 or self.enumeration_cap <= 0:
            raise ValueError("configuration bounds must be positive")

    def to_jsonable(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "max_set_size": self.max_set_size,
            "enumeration_cap": self.enumeration_cap,
        }


@dataclass
class Report:
    suite: str
    config: InstanceGenConfig
    records: list = field(default_factory=list)

    def check(self, law: str, instance: str, ok: bool, detail: str = ""):
        assert law in LAWS, f"unregistered law {law!r}"
        self.records.append(
            {"law": law, "instance": instance, "status": "pass" if ok else "fail", "detail": detail}
        )

    def skip(self, law: str, instance: str, detail: str):
        assert law in LAWS, f"unregistered law {law!r}"
        self.records.append(
            {"law": law, "instance": instance, "status": "skip", "detail": detail}
        )

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r["status"] == "pass")

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if r["status"] == "fail")

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.records if r["status"] == "skip")

    @property
    def all_passed(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def exit_code(self) -> int:
        if self.records and all(r["status"] == "skip" for r in self.records):
            return 3
        return 0 if self.failed == 0 else 1

    def to_jsonable(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config.to_jsonable(),
            "records": self.records,
            "summary": {
                "passed": self.passed,
                "failed": self.failed,
                "skipped": self.skipped,
                "total": len(self.records),
            },
        }


def _estimate_extension(F, X) -> int:
    total = 0
    for a in F.A:
        prod = 1
        for b in F.f.preimage(a):
            prod *= len(X.fibre(F.s(b)))
        total += prod
    return total


def _estimate_composite(G, F) -> int:
    total = 0
    for c in G.A:
        prod = 1
        for d in G.f.preimage(c):
            prod *= sum(1 for a in F.A if F.t(a) == G.s(d))
        total += prod
    return total


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_extension_composition(cfg: InstanceGenConfig) -> Report:
    rep = Report("extension-composition", cfg)
    rng = random.Random(cfg.seed)
    budget = min(cfg.enumeration_cap, 4000)
    made, attempts = 0, 0
    while made < cfg.count and attempts < cfg.count * 60:
        attempts += 1
        F, G = gen.rand_composable_pair(rng, cfg.max_set_size)
        if _estimate_composite(G, F) > budget:
            rep.skip("extension-composite-bijection", f"attempt{attempts}", "estimated size over budget")
            continue
        families = [gen.rand_family(rng, F.I, cfg.max_set_size, prefix=f"x{k}") for k in range(3)]
        inst = f"pair{made}"
        try:
            GF, trace = compose(G, F, cfg.enumeration_cap)
            trace.validate(G, F)
            rep.check("trace-revalidates", inst, True)
            rep.check("composite-matches-direct", inst, GF == compose_direct(G, F, cfg.enumeration_cap))
            ok_bij, ok_nat = True, True
            for X in families:
                if any(
                    _estimate_extension(P, Y) > budget
                    for P, Y in ((F, X), (GF, X))
                ):
                    raise EnumerationCapExceeded("estimated extension over budget")
                fwd, bwd = extension_composition_iso(G, F, X, cfg.enumeration_cap)
                for k in G.J:
                    ident = FinMap.identity(fwd.src.fibre(k))
                    if bwd.at(k).after(fwd.at(k)) != ident:
                        ok_bij = False
                    ident2 = FinMap.identity(fwd.dst.fibre(k))
                    if fwd.at(k).after(bwd.at(k)) != ident2:
                        ok_bij = False
                for _ in range(2):
                    h = gen.rand_family_morphism(rng, X, cfg.max_set_size)
                    fwd2, _ = extension_composition_iso(G, F, h.dst, cfg.enumeration_cap)
                    lhs = fwd2.after(extend_map(GF, h, cfg.enumeration_cap))
                    rhs = extend_map(G, extend_map(F, h, cfg.enumeration_cap), cfg.enumeration_cap).after(fwd)
                    if lhs != rhs:
                        ok_nat = False
            rep.check("extension-composite-bijection", inst, ok_bij)
            rep.check("extension-composite-naturality", inst, ok_nat)
            made += 1
        except EnumerationCapExceeded as exc:
            rep.skip("extension-composite-bijection", inst, str(exc))
    return rep


def suite_unique_adjustment(cfg: InstanceGenConfig) -> Report:
    rep = Report("unique-adjustment", cfg)
    rng = random.Random(cfg.seed)
    for n in range(cfg.count):
        phi, psi = gen.rand_parallel_pair(rng, cfg.max_set_size, max_vertex=4)
        found = list(all_adjustments(phi, psi, cfg.enumeration_cap))
        closed = unique_adjustment(phi, psi)
        ok = len(found) == 1 and found[0].alpha == closed.alpha
        rep.check("unique-adjustment", f"pair{n}", ok, f"found={len(found)}")
    return rep


def suite_coherence(cfg: InstanceGenConfig) -> Report:
    rep = Report("coherence", cfg)
    rng = random.Random(cfg.seed)
    budget = min(cfg.enumeration_cap, 3000)
    made, attempts = 0, 0
    quad_size = min(cfg.max_set_size, 2)
    while made < cfg.count and attempts < cfg.count * 60:
        attempts += 1
        quad = [gen.rand_polynomial(rng, quad_size, one_to_one=True) for _ in range(4)]
        f, g, h, k = quad
        gf_est = _estimate_composite(g, f)
        if gf_est > 50 or _estimate_composite(h, g) > 50 or _estimate_composite(k, h) > 50:
            rep.skip("pentagon", f"attempt{attempts}", "estimated size over budget")
            continue
        inst = f"quad{made}"
        try:
            pc = pentagon_check(f, g, h, k, budget)
            rep.check("pentagon", inst, pc["ok"])
            tc = triangle_check(f, g, budget)
            rep.check("triangle", inst, tc["ok"])
            phi, psi = gen.rand_parallel_pair(rng, cfg.max_set_size, max_vertex=4)
            cd = codiscreteness_check(phi, psi, cfg.enumeration_cap)
            rep.check("local-codiscreteness", inst, cd["ok"], f"count={cd['count']}")
            made += 1
        except EnumerationCapExceeded as exc:
            rep.skip("pentagon", inst, str(exc))
    # negative control: break an adjustment triangle and expect rejection
    phi, psi = gen.rand_parallel_pair(random.Random(cfg.seed + 1), cfg.max_set_size, max_vertex=4)
    good = unique_adjustment(phi, psi)
    rejected = False
    if len(psi.dphi) >= 2:
        elems = list(psi.dphi)
        swap = {elems[0]: elems[1], elems[1]: elems[0]}
        bad = FinMap(
            phi.dphi, psi.dphi,
            {e: swap.get(good.alpha(e), good.alpha(e)) for e in phi.dphi},
        )
        try:
            Adjustment(phi, psi, bad)
        except AdjustmentError:
            rejected = True
        rep.check("corrupted-adjustment-rejected", "control", rejected)
    else:
        rep.check("corrupted-adjustment-rejected", "control", True, "vertex too small to corrupt")
    return rep


def suite_internal_equiv(cfg: InstanceGenConfig) -> Report:
    rep = Report("internal-equiv", cfg)
    rng = random.Random(cfg.seed)
    made, attempts = 0, 0
    while made < cfg.count and attempts < cfg.count * 80:
        attempts += 1
        try:
            phi, psi = gen.rand_parallel_cartesian_pair(rng, min(cfg.max_set_size, 2))
        except RuntimeError:
            continue
        if len(phi.src.B) > 4 or len(phi.dst.B) > 4:
            continue
        inst = f"inst{made}"
        try:
            cat = internal_full_subcat(phi.src.f, cfg.enumeration_cap)
            rep.check("internal-category-laws", inst, True, f"morphisms={len(cat.mor)}")
            F = internal_functor(phi, cfg.enumeration_cap)
            Gf = internal_functor(psi, cfg.enumeration_cap)
            rep.check("internal-fully-faithful", inst, F.is_fully_faithful() and Gf.is_fully_faithful())
            chi = gen.rand_morphism(
                rng, min(cfg.max_set_size, 2), cartesian=True,
                target=gen.rand_polynomial(rng, min(cfg.max_set_size, 2), one_to_one=True),
            )
            outer = gen.rand_morphism(rng, min(cfg.max_set_size, 2), cartesian=True, target=chi.src)
            comp_ok = True
            if len(outer.src.B) <= 4:
                lhs = internal_functor(v_comp(chi, outer), cfg.enumeration_cap)
                rhs = internal_functor(chi, cfg.enumeration_cap).after(
                    internal_functor(outer, cfg.enumeration_cap)
                )
                comp_ok = lhs == rhs
            rep.check("internal-functor-composition", inst, comp_ok)
            alpha = unique_adjustment(phi, psi)
            nat = adjustment_to_nat(alpha, cfg.enumeration_cap)
            back = nat_to_adjustment(nat, phi, psi)
            rep.check("adjustment-nat-roundtrip", inst, back.alpha == alpha.alpha)
            count = 0
            import itertools as it

            D = nat.dst.dst
            obj = nat.src.src.obj
            pools = [
                [m for m in D.mor if D.dom(m) == F.on_obj(a) and D.cod(m) == Gf.on_obj(a)]
                for a in obj
            ]
            for choice in it.product(*pools):
                comps = FinMap(obj, D.mor, dict(zip(obj, choice)))
                try:
                    InternalNatTrans(F, Gf, comps)
                    count += 1
                except InternalCatError:
                    pass
            rep.check("internal-nt-unique", inst, count == 1, f"count={count}")
            sets = equivalence_sets(phi, psi, cfg.enumeration_cap)
            same = sets["natural"] == sets["component"] == sets["conjugate"] == sets["over_b"]
            rep.check("four-way-equivalence", inst, same and len(sets["over_b"]) == 1)
            made += 1
        except EnumerationCapExceeded as exc:
            rep.skip("internal-category-laws", inst, str(exc))
    return rep


def _universe_instances(cfg: InstanceGenConfig) -> list[tuple[str, Universe, str]]:
    rng = random.Random(cfg.seed)
    out = [
        ("bool", mk_bool_universe(), "strict"),
        ("skewed", mk_skewed_universe(), "right-unit-broken"),
    ]
    for n in range(max(0, cfg.count - 2)):
        out.append((f"random{n}", gen.rand_universe(rng, cfg.max_set_size + 1), "any"))
    return out


def suite_pseudomonad(cfg: InstanceGenConfig) -> Report:
    rep = Report("pseudomonad", cfg)
    for name, u, profile in _universe_instances(cfg):
        rep.check("universe-validates", name, validate_universe(u) == [])
        eta = unit_structure(u)
        mu = sigma_structure(u)
        zeta = pi_structure(u)
        rep.check(
            "monad-structure-cartesian", name,
            eta.is_cartesian() and mu.is_cartesian() and zeta.is_cartesian(),
        )
        pm = pseudomonad_from(u, cfg.enumeration_cap)
        invertible = (
            pm.assoc.is_invertible()
            and pm.left_unit.is_invertible()
            and pm.right_unit.is_invertible()
        )
        if profile == "strict":
            ok = invertible and pm.is_strict_monad() and pm.right_unit.is_identity()
        elif profile == "right-unit-broken":
            ok = invertible and not pm.strict_right and not pm.right_unit.is_identity()
        else:
            ok = invertible
        rep.check("strictness-profile", name, ok, f"strict={pm.is_strict_monad()}")
        pasting = pseudomonad_pasting_report(u, cfg.enumeration_cap)
        rep.check("pseudomonad-pasting", name, pasting["ok"])
    # negative control: corrupt the sum table of the two-code universe
    u = mk_bool_universe()
    broken_sigma = {k: ("code0" if v == "code1" else v) for k, v in u.sigma}
    rejected = False
    try:
        bad = Universe(u.codes, u.el, u.unit_code, broken_sigma, dict(u.pi))
        sigma_structure(bad)
    except UniverseError:
        rejected = True
    rep.check("corrupted-universe-rejected", "control", rejected)
    return rep


def suite_pseudoalgebra(cfg: InstanceGenConfig) -> Report:
    rep = Report("pseudoalgebra", cfg)
    for name, u, profile in _universe_instances(cfg):
        alg = pseudoalgebra_from(u, cfg.enumeration_cap)
        invertible = alg.sigma_adj.is_invertible() and alg.tau_adj.is_invertible()
        if profile == "strict":
            ok = invertible and alg.is_strict()
        elif profile == "right-unit-broken":
            ok = invertible and not alg.strict_tau and not alg.tau_adj.is_identity()
        else:
            ok = invertible
        rep.check("strictness-profile", name, ok, f"strict={alg.is_strict()}")
        pasting = pseudoalgebra_pasting_report(u, cfg.enumeration_cap)
        rep.check("pseudoalgebra-pasting", name, pasting["ok"])
    return rep


def suite_type_isos(cfg: InstanceGenConfig) -> Report:
    rep = Report("type-isos", cfg)
    for name, u, profile in _universe_instances(cfg):
        try:
            summary = verify_type_isos(u, cfg.enumeration_cap)
        except EnumerationCapExceeded as exc:
            rep.skip("type-isomorphisms", name, str(exc))
            continue
        ok = summary["ok"]
        if profile == "strict":
            ok = ok and all(
                v["nonidentity"] == 0 for k, v in summary.items() if isinstance(v, dict)
            )
        if profile == "right-unit-broken":
            ok = ok and any(
                v["nonidentity"] > 0 for k, v in summary.items() if isinstance(v, dict)
            )
        rep.check("type-isomorphisms", name, ok, f"checked={summary['total_checked']}")
    return rep


def suite_lift(cfg: InstanceGenConfig) -> Report:
    rep = Report("lift", cfg)
    rng = random.Random(cfg.seed)
    universes = [mk_bool_universe(), mk_skewed_universe()]
    for n in range(cfg.count):
        u = universes[n % 2]
        eta = unit_structure(u)
        mu = sigma_structure(u)
        p = u.p
        inst = f"sq{n}"
        sq = gen.rand_cartesian_square(rng, cfg.max_set_size)
        try:
            f = sq.src
            Pid = lift_apply_square(p, Square.identity(f), cfg.enumeration_cap)
            rep.check("lift-identity", inst, Pid == Square.identity(lift_apply(p, f, cfg.enumeration_cap)))
            sq2 = gen.rand_cartesian_square(rng, cfg.max_set_size, dst=sq.src)
            lhs = lift_apply_square(p, sq.after(sq2), cfg.enumeration_cap)
            rhs = lift_apply_square(p, sq, cfg.enumeration_cap).after(
                lift_apply_square(p, sq2, cfg.enumeration_cap)
            )
            rep.check("lift-composition", inst, lhs == rhs)
            Psq = lift_apply_square(p, sq, cfg.enumeration_cap)
            rep.check("lift-preserves-pullbacks", inst, Psq.is_pullback())
            h_f, m_f = lift_unit_mult(p, eta, mu, f, cfg.enumeration_cap)
            rep.check("lift-unit-mult-squares", inst, h_f.is_pullback() and m_f.is_pullback())
            h_g, m_g = lift_unit_mult(p, eta, mu, sq.dst, cfg.enumeration_cap)
            nat_h = h_g.after(sq) == Psq.after(h_f)
            PPsq = lift_apply_square(p, Psq, cfg.enumeration_cap)
            nat_m = m_g.after(PPsq) == Psq.after(m_f)
            rep.check("lift-naturality", inst, nat_h and nat_m)
            Pf = lift_apply(p, f, cfg.enumeration_cap)
            h_Pf, m_Pf = lift_unit_mult(p, eta, mu, Pf, cfg.enumeration_cap)
            Pm_f = lift_apply_square(p, m_f, cfg.enumeration_cap)
            Ph_f = lift_apply_square(p, h_f, cfg.enumeration_cap)
            laws = []
            for lhs_sq, rhs_sq in (
                (m_f.after(Pm_f), m_f.after(m_Pf)),
                (m_f.after(h_Pf), Square.identity(Pf)),
                (m_f.after(Ph_f), Square.identity(Pf)),
            ):
                adj = unique_adjustment(cell_of_square(lhs_sq), cell_of_square(rhs_sq))
                laws.append(adj.is_invertible())
            rep.check("lift-monad-laws", inst, all(laws))
        except EnumerationCapExceeded as exc:
            rep.skip("lift-preserves-pullbacks", inst, str(exc))
    return rep


def suite_slice_reduction(cfg: InstanceGenConfig) -> Report:
    rep = Report("slice-reduction", cfg)
    rng = random.Random(cfg.seed)
    for n in range(cfg.count):
        inst = f"inst{n}"
        F = gen.rand_polynomial(rng, cfg.max_set_size)
        S = slice_reduce(F)
        rep.check("slice-roundtrip", inst, slice_unreduce(S) == F)
        phi, psi = gen.rand_parallel_pair(rng, cfg.max_set_size, max_vertex=6)
        sm_phi = slice_reduce_cell(phi)
        sm_psi = slice_reduce_cell(psi)
        back = slice_unreduce_cell(sm_phi)
        rep.check(
            "slice-roundtrip", inst + "-cell", back == phi and slice_unreduce_cell(sm_psi) == psi
        )
        rep.check(
            "slice-cartesian-iff", inst,
            sm_phi.is_cartesian() == phi.is_cartesian()
            and sm_psi.is_cartesian() == psi.is_cartesian(),
        )
        alpha = unique_adjustment(phi, psi)
        ok_adj = True
        for z in sm_phi.src.base:
            fc_phi = sm_phi.fibre_cell(z)
            fc_psi = sm_psi.fibre_cell(z)
            restricted = FinMap(
                fc_phi.dphi, fc_psi.dphi, {e: alpha.alpha(e) for e in fc_phi.dphi}
            )
            try:
                Adjustment(fc_phi, fc_psi, restricted)
            except AdjustmentError:
                ok_adj = False
        rep.check("slice-adjustment-identity", inst, ok_adj)
        outer = gen.rand_morphism(rng, cfg.max_set_size, target=None)
        inner = gen.rand_morphism(rng, cfg.max_set_size, target=outer.src)
        comp = v_comp(outer, inner)
        sm_comp = slice_reduce_cell(comp)
        ok_fun = True
        for z in sm_comp.src.base:
            lhs = sm_comp.fibre_cell(z)
            rhs = v_comp(
                slice_reduce_cell(outer).fibre_cell(z),
                slice_reduce_cell(inner).fibre_cell(z),
            )
            if lhs != rhs:
                ok_fun = False
        rep.check("slice-functorial", inst, ok_fun)
    return rep


def suite_bicategory_laws(cfg: InstanceGenConfig) -> Report:
    rep = Report("bicategory-laws", cfg)
    rng = random.Random(cfg.seed)
    budget = min(cfg.enumeration_cap, 4000)
    made, attempts = 0, 0
    while made < cfg.count and attempts < cfg.count * 60:
        attempts += 1
        inst = f"inst{made}"
        try:
            outer = gen.rand_morphism(rng, cfg.max_set_size)
            inner = gen.rand_morphism(rng, cfg.max_set_size, target=outer.src)
            X = gen.rand_family(rng, inner.src.I, cfg.max_set_size)
            if _estimate_extension(inner.src, X) > budget or _estimate_extension(outer.dst, X) > budget:
                rep.skip("extension-functorial", f"attempt{attempts}", "estimated size over budget")
                continue
            comp = v_comp(outer, inner)
            lhs = extend_cell(comp, X, cfg.enumeration_cap)
            rhs = extend_cell(outer, X, cfg.enumeration_cap).after(
                extend_cell(inner, X, cfg.enumeration_cap)
            )
            rep.check("extension-functorial", inst, lhs == rhs)
            third = gen.rand_morphism(rng, cfg.max_set_size, target=inner.src)
            assoc_lhs = extend_cell(v_comp(v_comp(outer, inner), third), X, cfg.enumeration_cap)
            assoc_rhs = extend_cell(v_comp(outer, v_comp(inner, third)), X, cfg.enumeration_cap)
            rep.check("vcomp-associative", inst, assoc_lhs == assoc_rhs)
            ident = extend_cell(identity_cell(inner.src), X, cfg.enumeration_cap)
            rep.check(
                "extension-identity", inst,
                ident == FamilyMorphism.identity(extend(inner.src, X, cfg.enumeration_cap)),
            )
            phi = gen.rand_morphism(rng, min(cfg.max_set_size, 2), cartesian=True)
            psi = gen.rand_morphism(
                rng, min(cfg.max_set_size, 2), cartesian=True,
                target=gen.rand_polynomial(rng, min(cfg.max_set_size, 2), I=phi.src.J),
            )
            Y = gen.rand_family(rng, phi.src.I, min(cfg.max_set_size, 2))
            if (
                _estimate_composite(psi.src, phi.src) > 60
                or _estimate_composite(psi.dst, phi.dst) > 60
                or _estimate_extension(phi.src, Y) > 60
            ):
                rep.skip("hcomp-extension", inst, "estimated size over budget")
            else:
                hc = h_comp(psi, phi, cfg.enumeration_cap)
                fwd_src, _ = extension_composition_iso(psi.src, phi.src, Y, cfg.enumeration_cap)
                _, bwd_dst = extension_composition_iso(psi.dst, phi.dst, Y, cfg.enumeration_cap)
                inner_nat = extend_map(psi.src, extend_cell(phi, Y, cfg.enumeration_cap), cfg.enumeration_cap)
                outer_nat = extend_cell(psi, extend(phi.dst, Y, cfg.enumeration_cap), cfg.enumeration_cap)
                composite = bwd_dst.after(outer_nat.after(inner_nat)).after(fwd_src)
                rep.check("hcomp-extension", inst, extend_cell(hc, Y, cfg.enumeration_cap) == composite)
                hmorph = gen.rand_family_morphism(rng, Y, min(cfg.max_set_size, 2))
                cells = extend_cell(phi, Y, cfg.enumeration_cap)
                cells2 = extend_cell(phi, hmorph.dst, cfg.enumeration_cap)
                ok_pb = True
                for j in phi.src.J:
                    sq = Square(
                        extend_map(phi.src, hmorph, cfg.enumeration_cap).at(j),
                        extend_map(phi.dst, hmorph, cfg.enumeration_cap).at(j),
                        cells.at(j),
                        cells2.at(j),
                    )
                    if not sq.is_pullback():
                        ok_pb = False
                rep.check("cartesian-naturality-pullback", inst, ok_pb)
            made += 1
        except EnumerationCapExceeded as exc:
            rep.skip("extension-functorial", inst, str(exc))
    return rep


SUITES = {
    "extension-composition": suite_extension_composition,
    "unique-adjustment": suite_unique_adjustment,
    "coherence": suite_coherence,
    "internal-equiv": suite_internal_equiv,
    "pseudomonad": suite_pseudomonad,
    "pseudoalgebra": suite_pseudoalgebra,
    "type-isos": suite_type_isos,
    "lift": suite_lift,
    "slice-reduction": suite_slice_reduction,
    "bicategory-laws": suite_bicategory_laws,
}


def run_suite(name: str, cfg: InstanceGenConfig) -> Report:
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuiteError(
            f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}"
        ) from None
    return fn(cfg)
