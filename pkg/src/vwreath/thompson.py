"""Thompson's group V as reduced prefix-replacement tables.

An element is a bijective pairing between the cells of two standard dyadic
partitions; it acts on Cantor space by replacing the domain prefix of a
sequence with the paired range prefix.  The internal model is the pairing
table; the tree-pair triple (t, sigma, s) is an I/O view.  Multiplication
refines the inner partitions exactly as composition of fractions of
symmetric forests, and reduction merges any pair of sibling domain cells
sent in order to sibling range cells, which makes the reduced table a
unique name for the group element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forest import Permutation, Tree, leaves, tree_from_code
from .words import (
    Cylinder,
    DyadicPoint,
    SupportSet,
    complement_code,
    is_complete_code,
    refine_codes,
)


@dataclass(frozen=True)
class VElement:
    """Reduced pairing {domain prefix -> range prefix} between two sdps."""

    table: tuple[tuple[str, str], ...]

    def __post_init__(self):
        doms = [d for d, _ in self.table]
        rans = [r for _, r in self.table]
        if not (is_complete_code(doms) and is_complete_code(rans)):
            raise ValueError(f"table sides are not both sdps: {self.table}")
        if doms != sorted(doms):
            raise ValueError("table must be sorted by domain prefix")
        if _reducible(dict(self.table)) is not None:
            raise ValueError(f"table is not reduced: {self.table}")

    @classmethod
    def from_pairs(cls, pairs) -> "VElement":
        return cls(_reduce(dict(pairs)))

    @classmethod
    def identity(cls) -> "VElement":
        return cls((("", ""),))

    def is_identity(self) -> bool:
        return self.table == (("", ""),)

    def domain_prefixes(self) -> tuple[str, ...]:
        return tuple(d for d, _ in self.table)

    def range_prefixes(self) -> tuple[str, ...]:
        return tuple(r for _, r in self.table)

    def depth(self) -> int:
        return max(max(len(d), len(r)) for d, r in self.table)

    def lookup(self, x: DyadicPoint) -> tuple[str, str]:
        """The (domain, range) pair whose domain cell contains x."""
        s = x.stem
        for d, r in self.table:
            if len(d) <= len(s):
                if s.startswith(d):
                    return d, r
            elif d.startswith(s) and set(d[len(s):]) <= {"0"}:
                return d, r
        raise AssertionError("complete code must contain every point")

    def act_point(self, x: DyadicPoint) -> DyadicPoint:
        d, r = self.lookup(x)
        if len(d) <= len(x.stem):
            return DyadicPoint.from_word(r + x.stem[len(d):])
        return DyadicPoint.from_word(r)

    def act_cylinder(self, cyl: Cylinder) -> SupportSet:
        """The exact image of a cylinder, as a canonical union of cylinders."""
        u = cyl.prefix
        inside = [(d, r) for d, r in self.table if d.startswith(u)]
        if inside:
            return SupportSet.make(Cylinder(r) for _, r in inside)
        for d, r in self.table:
            if u.startswith(d):
                return SupportSet.make([Cylinder(r + u[len(d):])])
        raise AssertionError("complete code must meet every cylinder")

    def slope_exp(self, x: DyadicPoint) -> int:
        """log2 of the slope at x: |domain cell| - |range cell|."""
        d, r = self.lookup(x)
        return len(d) - len(r)

    def inv(self) -> "VElement":
        return VElement(tuple(sorted((r, d) for d, r in self.table)))

    def mul(self, other: "VElement") -> "VElement":
        """Function composition: (self.mul(other)) acts as self after other."""
        mid = refine_codes(other.range_prefixes(), self.domain_prefixes())
        inv_other = dict((r, d) for d, r in other.table)
        pairs = {}
        for p in mid:
            d = _transport(inv_other, p)
            r = _transport(dict(self.table), p)
            pairs[d] = r
        return VElement.from_pairs(pairs.items())

    def __mul__(self, other: "VElement") -> "VElement":
        return self.mul(other)

    def conj(self, other: "VElement") -> "VElement":
        """self * other * self^{-1}."""
        return self.mul(other).mul(self.inv())

    def is_planar(self) -> bool:
        """Element of F: the induced map on cells is order-preserving."""
        rans = self.range_prefixes()
        return list(rans) == sorted(rans)

    def fixes(self, cyl: Cylinder) -> bool:
        """Pointwise fix test on a cylinder."""
        u = cyl.prefix
        for d, r in self.table:
            if d.startswith(u) or u.startswith(d):
                if d != r:
                    return False
        return True

    def stabilizes(self, s: SupportSet) -> bool:
        """Setwise test: the image of the denoted set equals the set."""
        image = SupportSet.make()
        for c in s.cylinders:
            image = image.union(self.act_cylinder(c))
        image = image.union(SupportSet.make((), [self.act_point(x) for x in s.points]))
        return image == s

    def tree_pair(self) -> tuple[Tree, Permutation, Tree]:
        """The (t, sigma, s) view: domain leaf i maps to range leaf sigma(i)."""
        doms = self.domain_prefixes()
        rans = sorted(self.range_prefixes())
        t = tree_from_code(doms)
        s = tree_from_code(rans)
        images = tuple(rans.index(r) for _, r in self.table)
        return t, Permutation(images), s

    def __str__(self):
        inner = ",".join(f"{d or 'e'}->{r or 'e'}" for d, r in self.table)
        return "{" + inner + "}"


def _transport(table: dict[str, str], word: str) -> str:
    for d, r in table.items():
        if word.startswith(d):
            return r + word[len(d):]
    raise AssertionError(f"no cell of {table} is a prefix of {word}")


def _reducible(table: dict[str, str]) -> str | None:
    for d, r in table.items():
        if d.endswith("0"):
            sib = d[:-1] + "1"
            if r.endswith("0") and table.get(sib) == r[:-1] + "1":
                return d
    return None


def _reduce(table: dict[str, str]) -> tuple[tuple[str, str], ...]:
    work = dict(table)
    while True:
        d = _reducible(work)
        if d is None:
            return tuple(sorted(work.items()))
        r = work.pop(d)
        work.pop(d[:-1] + "1")
        work[d[:-1]] = r[:-1]


def make(t: Tree, sigma: Permutation, s: Tree) -> VElement:
    """The element sending domain leaf i of t to range leaf sigma(i) of s."""
    lt, ls = leaves(t), leaves(s)
    if not (len(lt) == len(ls) == len(sigma)):
        raise ValueError("trees and permutation must have matching sizes")
    return VElement.from_pairs((lt[i], ls[sigma(i)]) for i in range(len(lt)))


def mul(v: VElement, w: VElement) -> VElement:
    return v.mul(w)


def inv(v: VElement) -> VElement:
    return v.inv()


def identity() -> VElement:
    return VElement.identity()


def act_point(v: VElement, x: DyadicPoint) -> DyadicPoint:
    return v.act_point(x)


def act_cylinder(v: VElement, cyl: Cylinder) -> SupportSet:
    return v.act_cylinder(cyl)


def slope(v: VElement, x: DyadicPoint) -> int:
    return v.slope_exp(x)


def from_sdp_bijection(domain, range_, pairing: Permutation) -> VElement:
    """Reduced element mapping domain cell i to range cell pairing(i)."""
    dp = domain.prefixes() if hasattr(domain, "prefixes") else tuple(domain)
    rp = range_.prefixes() if hasattr(range_, "prefixes") else tuple(range_)
    if not (len(dp) == len(rp) == len(pairing)):
        raise ValueError("size mismatch")
    return VElement.from_pairs((dp[i], rp[pairing(i)]) for i in range(len(dp)))


def x0() -> VElement:
    """The standard F-generator: 0 -> 00, 10 -> 01, 11 -> 1."""
    return VElement.from_pairs([("0", "00"), ("10", "01"), ("11", "1")])


def cell_swap() -> VElement:
    """The non-planar involution exchanging the two halves of the space."""
    return VElement.from_pairs([("0", "1"), ("1", "0")])


def _equalize(code: list[str], target: int) -> list[str]:
    """Refine a cell list to the target size by splitting lex-first cells."""
    cells = sorted(code)
    while len(cells) < target:
        w = cells.pop(0)
        cells.extend([w + "0", w + "1"])
        cells.sort()
    return cells


def prefix_transport(u: str, m: str) -> VElement:
    """Some reduced v with v(ux) = mx; the complement is filled canonically.

    Complementary cells on both sides are listed lexicographically and
    paired in order.  Unsatisfiable exactly when one of u, m is the empty
    word and the other is not.
    """
    if (u == "") != (m == ""):
        raise ValueError("exactly one of the prefixes is the whole space")
    if u == m == "":
        return VElement.identity()
    comp_u = list(complement_code(u))
    comp_m = list(complement_code(m))
    n = max(len(comp_u), len(comp_m))
    comp_u = _equalize(comp_u, n)
    comp_m = _equalize(comp_m, n)
    pairs = [(u, m)] + list(zip(comp_u, comp_m))
    return VElement.from_pairs(pairs)


def swap_sdis(j0: Cylinder, j1: Cylinder, fixed=()) -> VElement:
    """An involution v with v(J0 x) = J1 x, v(J1 x) = J0 x, fixing the
    listed cylinders pointwise."""
    cyls = [j0, j1, *fixed]
    for i, a in enumerate(cyls):
        for b in cyls[i + 1:]:
            if a.overlaps(b):
                raise ValueError(f"cylinders overlap: {a} and {b}")
    code = {""}
    for c in cyls:
        code = set(refine_codes(code, set(complement_code(c.prefix)) | {c.prefix}))
    pairs = {}
    for w in code:
        if w == j0.prefix:
            pairs[w] = j1.prefix
        elif w == j1.prefix:
            pairs[w] = j0.prefix
        else:
            pairs[w] = w
    return VElement.from_pairs(pairs.items())


def fixes(v: VElement, cyl: Cylinder) -> bool:
    return v.fixes(cyl)


def stabilizes(v: VElement, s: SupportSet) -> bool:
    return v.stabilizes(s)
