"""The base group of the wreath model: maps Q2 -> Gamma in closed form.

An element is an sdp whose cells carry group decorations, plus finitely
many point exceptions; it denotes the map that is cell-constant away from
the exceptions.  The twisted action of Thompson's group V transports cells
by prefix replacement and twists decorations by powers of a fixed
automorphism according to the local slope:

    act(v, a)(x) = twist^(-log2 v'(v^{-1}x)) (a(v^{-1}x)).

Deleting a caret corresponds in this map model to

    caret(a)[i](x) = twist^{-1}(a(i.x)),   i in {0, 1},

derived by transporting caret deletion of tree decorations through the
coordinate isomorphism u -> twist^{-|u|}(value at u00...); the invariant
test-suite checks this formula against the decoration-level one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forest import Tree
from .gamma import FiniteGroup, GroupHom
from .thompson import VElement
from .words import Cylinder, DyadicPoint, SupportSet, complement_code, refine_codes


@dataclass(frozen=True)
class TwistContext:
    """A finite group together with the automorphism twisting the action."""

    group: FiniteGroup
    twist: GroupHom
    _pow_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.twist.source != self.group or self.twist.target != self.group:
            raise ValueError("twist must be an endomorphism of the group")
        if not self.twist.is_bijective():
            raise ValueError("twist must be an automorphism")

    def twist_order(self) -> int:
        k, f = 1, self.twist
        while not f.is_identity():
            f = self.twist.compose(f)
            k += 1
        return k

    def twist_pow(self, n: int) -> GroupHom:
        if not self._pow_cache:
            order = self.twist_order()
            f = GroupHom(self.group, self.group, tuple(self.group.elements()))
            for k in range(order):
                self._pow_cache[k] = f
                f = self.twist.compose(f)
            self._pow_cache["order"] = order
        return self._pow_cache[n % self._pow_cache["order"]]

    def is_untwisted(self) -> bool:
        return self.twist.is_identity()

    def act(self, v: VElement, a: "KElement") -> "KElement":
        return act(v, a)

    def __str__(self):
        return f"({self.group.label}, twist={list(self.twist.values)})"


@dataclass(frozen=True)
class KElement:
    """Cell-constant map with finite exceptions; always in canonical form.

    Canonical means: no exception value equals its cell decoration, and no
    two sibling cells carry the same decoration.
    """

    ctx: TwistContext
    cells: tuple[tuple[str, int], ...]
    exceptions: tuple[tuple[DyadicPoint, int], ...]

    @classmethod
    def make(cls, ctx: TwistContext, cells, exceptions=()) -> "KElement":
        cell_map = dict(cells)
        merged = _merge_cells(cell_map)
        exc = {}
        for p, g in dict(exceptions).items():
            if g != _cell_value(merged, p):
                exc[p] = g
        return cls(
            ctx,
            tuple(sorted(merged.items())),
            tuple(sorted(exc.items())),
        )

    @classmethod
    def identity(cls, ctx: TwistContext) -> "KElement":
        return cls.make(ctx, {"": ctx.group.identity})

    @classmethod
    def constant(cls, ctx: TwistContext, g: int) -> "KElement":
        return cls.make(ctx, {"": g})

    @classmethod
    def point_mass(cls, ctx: TwistContext, g: int, x: DyadicPoint) -> "KElement":
        return cls.make(ctx, {"": ctx.group.identity}, {x: g})

    def eval(self, x: DyadicPoint) -> int:
        for p, g in self.exceptions:
            if p == x:
                return g
        return _cell_value(dict(self.cells), x)

    def is_identity(self) -> bool:
        e = self.ctx.group.identity
        return self.cells == (("", e),) and not self.exceptions

    def mul(self, other: "KElement") -> "KElement":
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")
        grp = self.ctx.group
        mine, theirs = dict(self.cells), dict(other.cells)
        code = refine_codes(mine.keys(), theirs.keys())
        cells = {
            u: grp.mul(_cell_prefix_value(mine, u), _cell_prefix_value(theirs, u))
            for u in code
        }
        points = {p for p, _ in self.exceptions} | {p for p, _ in other.exceptions}
        exc = {p: grp.mul(self.eval(p), other.eval(p)) for p in points}
        return KElement.make(self.ctx, cells, exc)

    def __mul__(self, other: "KElement") -> "KElement":
        return self.mul(other)

    def inv(self) -> "KElement":
        grp = self.ctx.group
        return KElement.make(
            self.ctx,
            {u: grp.inv(g) for u, g in self.cells},
            {p: grp.inv(g) for p, g in self.exceptions},
        )

    def conj(self, other: "KElement") -> "KElement":
        return self.mul(other).mul(self.inv())

    def map_values(self, f: GroupHom, target_ctx: "TwistContext") -> "KElement":
        """Apply a group morphism to every decoration and exception value."""
        return KElement.make(
            target_ctx,
            {u: f(g) for u, g in self.cells},
            {p: f(g) for p, g in self.exceptions},
        )

    def support(self) -> SupportSet:
        """Closure of the nonidentity locus.

        A cylinder with nonidentity decoration stays whole even when finitely
        many interior exceptions are identity-valued: the remaining
        nonidentity dyadic points are still dense in it.
        """
        e = self.ctx.group.identity
        cyls = [Cylinder(u) for u, g in self.cells if g != e]
        cell_map = dict(self.cells)
        pts = [
            p
            for p, g in self.exceptions
            if g != e and _cell_value(cell_map, p) == e
        ]
        return SupportSet.make(cyls, pts)

    def __str__(self):
        names = self.ctx.group.names
        base = ",".join(f"C:{u or 'e'}={names[g]}" for u, g in self.cells)
        exc = ",".join(f"P:{p}={names[g]}" for p, g in self.exceptions)
        return f"base{{{base}}} exc{{{exc}}}"


def _merge_cells(cells: dict[str, int]) -> dict[str, int]:
    work = dict(cells)
    changed = True
    while changed:
        changed = False
        for u in sorted(work, key=len, reverse=True):
            if u.endswith("0") and work.get(u[:-1] + "1") == work.get(u):
                g = work.pop(u)
                work.pop(u[:-1] + "1")
                work[u[:-1]] = g
                changed = True
                break
    return work


def _cell_value(cells: dict[str, int], x: DyadicPoint) -> int:
    s = x.stem
    for u, g in cells.items():
        if len(u) <= len(s):
            if s.startswith(u):
                return g
        elif u.startswith(s) and set(u[len(s):]) <= {"0"}:
            return g
    raise AssertionError("cells must cover every point")


def _cell_prefix_value(cells: dict[str, int], word: str) -> int:
    """Value on the cylinder at `word`, assuming it refines the cell code."""
    for u, g in cells.items():
        if word.startswith(u):
            return g
    raise AssertionError(f"{word} does not refine {sorted(cells)}")


def mul(a: KElement, b: KElement) -> KElement:
    return a.mul(b)


def inv(a: KElement) -> KElement:
    return a.inv()


def identity(ctx: TwistContext) -> KElement:
    return KElement.identity(ctx)


def eval_at(a: KElement, x: DyadicPoint) -> int:
    return a.eval(x)


def act(v: VElement, a: KElement) -> KElement:
    """The twisted wreath action of V on the base group."""
    ctx = a.ctx
    cells = {}
    for dom, ran in v.table:
        n = len(dom) - len(ran)
        tw = ctx.twist_pow(-n)
        for u, g in a.cells:
            if u.startswith(dom):
                cells[ran + u[len(dom):]] = tw(g)
            elif dom.startswith(u) and dom != u:
                cells[ran] = tw(g)
    exc = {}
    for p, g in a.exceptions:
        n = v.slope_exp(p)
        exc[v.act_point(p)] = ctx.twist_pow(-n)(g)
    return KElement.make(ctx, cells, exc)


def caret(a: KElement) -> tuple[KElement, KElement]:
    """Delete a caret: the two halves, twisted one step down."""
    tw = a.ctx.twist_pow(-1)
    out = []
    for digit in "01":
        cells = {}
        for u, g in a.cells:
            if u.startswith(digit):
                cells[u[1:]] = tw(g)
            elif u == "":
                cells[""] = tw(g)
        exc = {}
        for p, g in a.exceptions:
            if Cylinder(digit).contains(p):
                exc[DyadicPoint.from_word(p.stem[1:])] = tw(g)
        out.append(KElement.make(a.ctx, cells, exc))
    return out[0], out[1]


def caret_inv(a0: KElement, a1: KElement) -> KElement:
    """Two-sided inverse of caret: join halves, twisting one step up."""
    if a0.ctx != a1.ctx:
        raise ValueError("context mismatch")
    tw = a0.ctx.twist_pow(1)
    cells = {}
    exc = {}
    for digit, part in (("0", a0), ("1", a1)):
        for u, g in part.cells:
            cells[digit + u] = tw(g)
        for p, g in part.exceptions:
            exc[DyadicPoint.from_word(digit + p.stem)] = tw(g)
    return KElement.make(a0.ctx, cells, exc)


def r_word(a: KElement, u: str) -> KElement:
    """Iterated caret component along the word u (first letter first)."""
    out = a
    for digit in u:
        out = caret(out)[int(digit)]
    return out


def graft(a: KElement, u: str) -> KElement:
    """Embed a into the cylinder at u (identity outside), undoing the twist.

    graft(r_word(a, u), u) == restrict(a, C_u): this is the well-definedness
    route for cylinder components, tested as an invariant.
    """
    ctx = a.ctx
    e = ctx.group.identity
    tw = ctx.twist_pow(len(u))
    cells = {w: e for w in complement_code(u)}
    for w, g in a.cells:
        cells[u + w] = tw(g)
    exc = {DyadicPoint.from_word(u + p.stem): tw(g) for p, g in a.exceptions}
    return KElement.make(ctx, cells, exc)


def restrict(a: KElement, region: Cylinder) -> KElement:
    """Pointwise restriction: a on the cylinder, identity outside."""
    ctx = a.ctx
    e = ctx.group.identity
    word = region.prefix
    cells = {w: e for w in complement_code(word)}
    cell_map = dict(a.cells)
    inside = [u for u in cell_map if u.startswith(word)]
    if inside:
        for u in inside:
            cells[u] = cell_map[u]
    else:
        cells[word] = _cell_prefix_value(cell_map, word)
    exc = {p: g for p, g in a.exceptions if region.contains(p)}
    return KElement.make(ctx, cells, exc)


def component(a: KElement, u: str) -> KElement:
    return restrict(a, Cylinder(u))


def decompose(a: KElement, t: Tree) -> list[KElement]:
    """Components along the leaves of a tree; their product is a."""
    return [component(a, leaf) for leaf in t.leaves()]


def is_r_invariant(a: KElement) -> bool:
    a0, a1 = caret(a)
    return a0 == a and a1 == a
