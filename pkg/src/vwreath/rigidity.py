"""Decomposition witnesses for isomorphisms between the split extensions.

An isomorphism is a black box evaluated on group elements.  The toolkit
recovers its canonical data: the boundary bijection phi on dyadic points,
the pointwise group isomorphisms kappa_x, the tree-part cocycle c, and the
central correction zeta, and checks the structural identities on probe
points.  A desk-scale artifact verifies on samples; nothing here proves
theorems about arbitrary black boxes, it falsifies or agrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import base, semidirect
from .base import KElement, TwistContext
from .gamma import GroupHom, _is_hom_values
from .sampling import Sampler, probe_points
from .semidirect import GElement, center_values
from .thompson import VElement
from .words import Cylinder, DyadicPoint, SupportSet


class ExtractionError(ValueError):
    """The evaluated map does not have the structure of an isomorphism."""


def model_ctx(model) -> TwistContext:
    return model if isinstance(model, TwistContext) else model.ctx


@dataclass
class Isomorphism:
    """Mutually inverse multiplicative maps between two extension models."""

    source: object
    target: object
    forward: Callable[[GElement], GElement]
    backward: Callable[[GElement], GElement]
    provenance: dict = field(default_factory=dict)
    caches: dict = field(default_factory=dict, repr=False)

    def __call__(self, g: GElement) -> GElement:
        return self.forward(g)

    def inverse(self) -> "Isomorphism":
        prov = {}
        if "phi" in self.provenance:
            prov["phi"] = self.provenance["phi"].inv()
        return Isomorphism(self.target, self.source, self.backward, self.forward, prov)

    def compose(self, other: "Isomorphism") -> "Isomorphism":
        """self after other."""
        prov = {}
        if "phi" in self.provenance and "phi" in other.provenance:
            prov["phi"] = self.provenance["phi"].mul(other.provenance["phi"])
        return Isomorphism(
            other.source,
            self.target,
            lambda g: self.forward(other.forward(g)),
            lambda g: other.backward(self.backward(g)),
            prov,
        )

    def validate(self, seed: int = 0, samples: int = 25, depth: int = 3) -> None:
        """Sampled contract check: inverse round trips, multiplicativity,
        and that the base subgroup maps into the base subgroup."""
        smp = Sampler(seed)
        for _ in range(samples):
            g = smp.gelement(self.source, depth)
            h = smp.gelement(self.source, depth)
            if self.backward(self.forward(g)) != g:
                raise ExtractionError(f"forward/backward round trip fails at {g}")
            if self.forward(g.mul(h)) != self.forward(g).mul(self.forward(h)):
                raise ExtractionError(f"multiplicativity fails at ({g}, {h})")
            a = GElement.from_k(self.source, smp.kelement(model_ctx(self.source), depth))
            if not self.forward(a).in_k():
                raise ExtractionError(f"base subgroup not preserved at {a}")
            bt = GElement.from_k(self.target, smp.kelement(model_ctx(self.target), depth))
            if not self.backward(bt).in_k():
                raise ExtractionError(f"base subgroup not preserved backward at {bt}")


def identity_iso(model) -> Isomorphism:
    return Isomorphism(
        model, model, lambda g: g, lambda g: g, {"phi": VElement.identity()}
    )


def _first_nontrivial(ctx: TwistContext) -> int:
    if ctx.group.order == 1:
        raise ExtractionError("the bottom group is trivial; no point masses exist")
    return next(a for a in ctx.group.elements() if a != ctx.group.identity)


def _strip_point_mass(theta: Isomorphism, out: GElement) -> tuple[DyadicPoint, int, int]:
    """Split the image of a point mass as (location, value, central constant)."""
    tgt = model_ctx(theta.target)
    if not out.v.is_identity():
        raise ExtractionError("image of a base element has a nontrivial tree part")
    k = out.k
    if len(k.cells) != 1 or len(k.exceptions) != 1:
        raise ExtractionError(
            f"image is not a point mass times a central constant: {k}"
        )
    z = k.cells[0][1]
    if z not in center_values(tgt):
        raise ExtractionError(f"constant part {z} is not central")
    p, w = k.exceptions[0]
    return p, tgt.group.mul(w, tgt.group.inv(z)), z


def extract_phi(theta: Isomorphism, x: DyadicPoint, probe: int | None = None) -> DyadicPoint:
    """Where the boundary homeomorphism sends x, read off a point mass.

    Independent of the probe element by the uniqueness of the pointwise
    family; that independence is a tested invariant, not assumed here.
    """
    cache = theta.caches.setdefault("phi", {})
    if probe is None and x in cache:
        return cache[x]
    ctx = model_ctx(theta.source)
    g = probe if probe is not None else _first_nontrivial(ctx)
    out = theta.forward(GElement.from_k(theta.source, KElement.point_mass(ctx, g, x)))
    p, _, _ = _strip_point_mass(theta, out)
    if probe is None:
        cache[x] = p
    return p


def extract_kappa_x(theta: Isomorphism, x: DyadicPoint) -> GroupHom:
    """The pointwise isomorphism at x, verified multiplicative and bijective."""
    src = model_ctx(theta.source)
    tgt = model_ctx(theta.target)
    values = [tgt.group.identity] * src.group.order
    location = None
    for g in src.group.elements():
        if g == src.group.identity:
            continue
        out = theta.forward(GElement.from_k(theta.source, KElement.point_mass(src, g, x)))
        p, val, _ = _strip_point_mass(theta, out)
        if location is None:
            location = p
        elif p != location:
            raise ExtractionError(f"point masses at {x} land at both {location} and {p}")
        values[g] = val
    vals = tuple(values)
    if not _is_hom_values(src.group, tgt.group, vals):
        raise ExtractionError(f"pointwise map at {x} is not multiplicative: {vals}")
    hom = GroupHom(src.group, tgt.group, vals)
    if not hom.is_bijective():
        raise ExtractionError(f"pointwise map at {x} is not bijective: {vals}")
    return hom


def extract_cocycle(
    theta: Isomorphism, v: VElement, check_depth: int = 3
) -> tuple[KElement, VElement]:
    """Split theta(v) into base part c_v and tree part, checking the tree
    part is the phi-conjugate of v on probe points."""
    out = theta.forward(GElement.from_v(theta.source, v))
    c, w = out.k, out.v
    if model_ctx(theta.source).group.order > 1:
        for x in probe_points(check_depth):
            if w.act_point(extract_phi(theta, x)) != extract_phi(theta, v.act_point(x)):
                raise ExtractionError(
                    f"tree part of theta({v}) does not conjugate by phi at {x}"
                )
    return c, w


def zeta_value(theta: Isomorphism, a: KElement) -> int:
    """The central correction constant at a, via the halves decomposition.

    Each half is supported in one half of the space, so the image of the
    half equals its support-preserving part times a constant; the constant
    is read at the phi-image of a probe point in the other half.
    """
    tgt = model_ctx(theta.target)
    out_z = tgt.group.identity
    for digit, probe_stem in (("0", "1"), ("1", "")):
        half = base.restrict(a, Cylinder(digit))
        out = theta.forward(GElement.from_k(theta.source, half))
        if not out.v.is_identity():
            raise ExtractionError("image of a base element has a nontrivial tree part")
        spot = extract_phi(theta, DyadicPoint(probe_stem))
        out_z = tgt.group.mul(out_z, out.k.eval(spot))
    return out_z


def kappa0(theta: Isomorphism, a: KElement) -> KElement:
    """The support-preserving part of theta on the base group."""
    tgt = model_ctx(theta.target)
    out = theta.forward(GElement.from_k(theta.source, a))
    if not out.v.is_identity():
        raise ExtractionError("image of a base element has a nontrivial tree part")
    z = zeta_value(theta, a)
    return out.k.mul(KElement.constant(tgt, tgt.group.inv(z)))


def kappa1_eval(theta: Isomorphism, a: KElement, x: DyadicPoint) -> int:
    """kappa^1(a) evaluated at phi(x): the pointwise image of a(x)."""
    return extract_kappa_x(theta, x)(a.eval(x))


def eta_eval(theta: Isomorphism, a: KElement, x: DyadicPoint) -> int:
    """(kappa^1)^{-1} kappa^0 discrepancy at phi(x); must be central."""
    from .gamma import center as group_center

    tgt = model_ctx(theta.target)
    k0 = kappa0(theta, a)
    val = tgt.group.mul(
        tgt.group.inv(kappa1_eval(theta, a, x)), k0.eval(extract_phi(theta, x))
    )
    if val not in group_center(tgt.group):
        raise ExtractionError(f"eta value {val} at {x} is not central")
    return val


@dataclass
class SpatialReport:
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _support_probes(s: SupportSet) -> list[DyadicPoint]:
    pts = list(s.points)
    for c in s.cylinders:
        u = c.prefix
        pts.extend(DyadicPoint.from_word(u + tail) for tail in ("", "1", "01", "11"))
    return sorted(set(pts))


def verify_spatial(theta: Isomorphism, a: KElement) -> SpatialReport:
    """Check supp(kappa^0(a)) = phi(supp(a)).

    Exact when the boundary map is known to come from a V element
    (provenance); sampled through probe points otherwise.
    """
    mismatches: list[str] = []
    supp_a = a.support()
    supp_image = kappa0(theta, a).support()
    phi_v = theta.provenance.get("phi")
    if phi_v is not None:
        expected = SupportSet.make()
        for c in supp_a.cylinders:
            expected = expected.union(phi_v.act_cylinder(c))
        expected = expected.union(
            SupportSet.make((), [phi_v.act_point(p) for p in supp_a.points])
        )
        if expected != supp_image:
            mismatches.append(f"exact: {supp_image} != phi-image {expected}")
        return SpatialReport(mismatches)
    for p in _support_probes(supp_a):
        if not supp_image.contains_point(extract_phi(theta, p)):
            mismatches.append(f"phi({p}) escapes the image support")
    back = theta.inverse()
    for q in _support_probes(supp_image):
        if not supp_a.contains_point(extract_phi(back, q)):
            mismatches.append(f"phi^-1({q}) escapes the source support")
    return SpatialReport(mismatches)


def theta_times_zeta(
    theta: Isomorphism,
    zeta: Callable[[GElement], int],
    seed: int = 0,
    samples: int = 20,
) -> Isomorphism:
    """The isomorphism g -> theta(g) . zeta(g) for a central-valued morphism.

    zeta is validated on samples: central values, multiplicativity, and
    triviality on commutators.
    """
    src, tgt = theta.source, theta.target
    tctx = model_ctx(tgt)
    allowed = set(center_values(tctx))
    smp = Sampler(seed)
    for _ in range(samples):
        g = smp.gelement(src, 3)
        h = smp.gelement(src, 3)
        zg, zh, zgh = zeta(g), zeta(h), zeta(g.mul(h))
        if not {zg, zh, zgh} <= allowed:
            raise ExtractionError("zeta takes a non-central value")
        if zgh != tctx.group.mul(zg, zh):
            raise ExtractionError("zeta is not multiplicative on samples")
        if zeta(g.commutator(h)) != tctx.group.identity:
            raise ExtractionError("zeta does not kill sampled commutators")

    def forward(g: GElement) -> GElement:
        out = theta.forward(g)
        return out.mul(semidirect.central_element(tgt, zeta(g)))

    def backward(gt: GElement) -> GElement:
        main = theta.backward(gt)
        corr = theta.backward(
            semidirect.central_element(tgt, zeta(theta.backward(gt.inv())))
        )
        return main.mul(corr)

    prov = dict(theta.provenance)
    return Isomorphism(src, tgt, forward, backward, prov)


def velement_from_point_map(
    fn: Callable[[DyadicPoint], DyadicPoint], max_depth: int = 6
) -> VElement:
    """Reconstruct the V element acting as the sampled point map.

    Recursively finds cells on which fn is prefix replacement, checking
    agreement on all tails up to the remaining depth budget; raises when
    the map is not realized by a table of depth <= max_depth.
    """
    pairs: list[tuple[str, str]] = []

    def tails(budget: int) -> list[str]:
        out = [""]
        frontier = [""]
        for _ in range(budget):
            frontier = [t + d for t in frontier for d in "01"]
            out.extend(t for t in frontier if t.endswith("1"))
        return out

    def explore(u: str, budget: int) -> None:
        image = fn(DyadicPoint.from_word(u + "1")).stem
        if image.endswith("1"):
            m = image[:-1]
            if all(
                fn(DyadicPoint.from_word(u + t)) == DyadicPoint.from_word(m + t)
                for t in tails(budget)
            ):
                pairs.append((u, m))
                return
        if budget == 0:
            raise ExtractionError(
                f"point map is not prefix replacement at depth {max_depth} under {u!r}"
            )
        explore(u + "0", budget - 1)
        explore(u + "1", budget - 1)

    explore("", max_depth)
    return VElement.from_pairs(pairs)


def kelement_from_point_fn(
    ctx: TwistContext,
    fn: Callable[[DyadicPoint], int],
    max_depth: int = 6,
    margin: int = 2,
) -> KElement:
    """Reconstruct the simple function with the sampled point values.

    Tries increasing cell depth; a candidate is accepted only when it
    reproduces fn on every probe point margin levels deeper.
    """
    cache: dict[DyadicPoint, int] = {}

    def value(p: DyadicPoint) -> int:
        if p not in cache:
            cache[p] = fn(p)
        return cache[p]

    for depth in range(1, max_depth + 1):
        cells = {}
        frontier = [""]
        for _ in range(depth):
            frontier = [w + d for w in frontier for d in "01"]
        for w in frontier:
            cells[w] = value(DyadicPoint.from_word(w + "1"))
        exc = {
            p: value(p)
            for p in probe_points(depth)
        }
        candidate = KElement.make(ctx, cells, exc)
        if all(
            candidate.eval(p) == value(p) for p in probe_points(depth + margin)
        ):
            return candidate
    raise ExtractionError(f"no simple function of depth <= {max_depth} matches the samples")
