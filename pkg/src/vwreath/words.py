"""Binary words, dyadic points, cylinders, partitions, and support sets.

Everything here is an exact combinatorial value.  A binary word is a str
over {0,1} (the empty string is the empty word).  A dyadic point is the
canonical stem of an eventually-zero sequence: the word with its trailing
zeros stripped, so every point of the orbit of 00... has exactly one name.
A support set is a canonical finite union of cylinders plus finitely many
isolated points, closed in Cantor space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def check_word(word: str) -> str:
    if not set(word) <= {"0", "1"}:
        raise ValueError(f"not a binary word: {word!r}")
    return word


def canonical_stem(word: str) -> str:
    """Strip trailing zeros: the canonical name of the point word00..."""
    return check_word(word).rstrip("0")


def flip(word: str) -> str:
    """Digit-wise bit flip."""
    table = str.maketrans("01", "10")
    return word.translate(table)


@dataclass(frozen=True, order=True)
class DyadicPoint:
    """A dyadic rational, i.e. the sequence stem00... with canonical stem."""

    stem: str = ""

    def __post_init__(self):
        check_word(self.stem)
        if self.stem.endswith("0"):
            raise ValueError(f"stem has trailing zero: {self.stem!r}")

    @classmethod
    def from_word(cls, word: str) -> "DyadicPoint":
        return cls(canonical_stem(word))

    def digit(self, i: int) -> str:
        return self.stem[i] if i < len(self.stem) else "0"

    def __str__(self):
        return self.stem or "e"


BASEPOINT = DyadicPoint("")


def canonicalize(word: str) -> DyadicPoint:
    """Canonical point named by a word (trailing-zero stripping)."""
    return DyadicPoint.from_word(word)


@dataclass(frozen=True, order=True)
class Cylinder:
    """The clopen set of all sequences extending a fixed prefix."""

    prefix: str = ""

    def __post_init__(self):
        check_word(self.prefix)

    def split(self) -> tuple["Cylinder", "Cylinder"]:
        """The two halves (first and second) of this cylinder."""
        return Cylinder(self.prefix + "0"), Cylinder(self.prefix + "1")

    def contains(self, x: DyadicPoint) -> bool:
        """Whether the sequence stem00... extends this cylinder's prefix."""
        p, s = self.prefix, x.stem
        if len(p) <= len(s):
            return s.startswith(p)
        return p.startswith(s) and set(p[len(s):]) <= {"0"}

    def contains_cylinder(self, other: "Cylinder") -> bool:
        return other.prefix.startswith(self.prefix)

    def overlaps(self, other: "Cylinder") -> bool:
        return self.contains_cylinder(other) or other.contains_cylinder(self)

    def basepoint(self) -> DyadicPoint:
        return DyadicPoint.from_word(self.prefix)

    def is_whole_space(self) -> bool:
        return self.prefix == ""

    def __str__(self):
        return f"C:{self.prefix or 'e'}"


WHOLE_SPACE = Cylinder("")


def contains(cyl: Cylinder, x: DyadicPoint) -> bool:
    return cyl.contains(x)


def split(cyl: Cylinder) -> tuple[Cylinder, Cylinder]:
    return cyl.split()


def is_complete_code(prefixes: Iterable[str]) -> bool:
    """Whether the words are prefix-free and their cylinders tile the space."""
    ps = sorted(prefixes)
    if len(set(ps)) != len(ps):
        return False
    for a, b in zip(ps, ps[1:]):
        if b.startswith(a):
            return False
    depth = max((len(p) for p in ps), default=0)
    return sum(2 ** (depth - len(p)) for p in ps) == 2 ** depth


def refine_codes(code1: Iterable[str], code2: Iterable[str]) -> tuple[str, ...]:
    """Common refinement of two complete prefix codes (their union).

    The cells of the result are the nonempty intersections of cells, which
    for cylinders are simply the longer of any two comparable prefixes.
    """
    c1, c2 = tuple(code1), tuple(code2)
    out = set()
    for a in c1:
        if any(a.startswith(b) for b in c2):
            out.add(a)
    for b in c2:
        if any(b.startswith(a) for a in c1):
            out.add(b)
    return tuple(sorted(out))


def complement_code(prefix: str) -> tuple[str, ...]:
    """The sibling cells along the path to ``prefix``: a code for its complement."""
    return tuple(
        sorted(prefix[:i] + ("1" if prefix[i] == "0" else "0") for i in range(len(prefix)))
    )


@dataclass(frozen=True)
class Sdp:
    """A standard dyadic partition: cylinders whose prefixes form a complete code."""

    cells: tuple[Cylinder, ...]

    def __post_init__(self):
        if not is_complete_code(c.prefix for c in self.cells):
            raise ValueError(f"not a standard dyadic partition: {self.cells}")
        if list(self.cells) != sorted(self.cells):
            raise ValueError("sdp cells must be in lexicographic order")

    @classmethod
    def from_prefixes(cls, prefixes: Iterable[str]) -> "Sdp":
        return cls(tuple(Cylinder(p) for p in sorted(prefixes)))

    def prefixes(self) -> tuple[str, ...]:
        return tuple(c.prefix for c in self.cells)

    def __len__(self):
        return len(self.cells)


def _canonical_cylinders(prefixes: Iterable[str]) -> set[str]:
    work = set(prefixes)
    changed = True
    while changed:
        changed = False
        for u in sorted(work, key=len, reverse=True):
            if any(u != w and u.startswith(w) for w in work):
                work.discard(u)
                changed = True
        for u in sorted(work, key=len, reverse=True):
            if u.endswith("1") and u[:-1] + "0" in work:
                work.discard(u)
                work.discard(u[:-1] + "0")
                work.add(u[:-1])
                changed = True
    return work


@dataclass(frozen=True)
class SupportSet:
    """Canonical finite union of cylinders plus isolated dyadic points.

    No point lies in a listed cylinder, no cylinder contains another, and no
    two sibling cylinders are both present.  Structural equality therefore
    coincides with equality of the denoted closed sets.
    """

    cylinders: tuple[Cylinder, ...] = ()
    points: tuple[DyadicPoint, ...] = ()

    @classmethod
    def make(
        cls,
        cylinders: Iterable[Cylinder] = (),
        points: Iterable[DyadicPoint] = (),
    ) -> "SupportSet":
        cyls = _canonical_cylinders(c.prefix for c in cylinders)
        cyl_objs = tuple(Cylinder(p) for p in sorted(cyls))
        pts = tuple(
            sorted(
                {x for x in points if not any(c.contains(x) for c in cyl_objs)}
            )
        )
        return cls(cyl_objs, pts)

    @classmethod
    def empty(cls) -> "SupportSet":
        return cls()

    def is_empty(self) -> bool:
        return not self.cylinders and not self.points

    def contains_point(self, x: DyadicPoint) -> bool:
        return x in self.points or any(c.contains(x) for c in self.cylinders)

    def union(self, other: "SupportSet") -> "SupportSet":
        return SupportSet.make(
            self.cylinders + other.cylinders, self.points + other.points
        )

    def is_disjoint(self, other: "SupportSet") -> bool:
        for c in self.cylinders:
            if any(c.overlaps(d) for d in other.cylinders):
                return False
            if any(c.contains(x) for x in other.points):
                return False
        for d in other.cylinders:
            if any(d.contains(x) for x in self.points):
                return False
        return not set(self.points) & set(other.points)

    def contains_set(self, other: "SupportSet") -> bool:
        for d in other.cylinders:
            if not any(c.contains_cylinder(d) for c in self.cylinders):
                return False
        return all(self.contains_point(x) for x in other.points)

    def __str__(self):
        items = [str(c) for c in self.cylinders] + [f"P:{x}" for x in self.points]
        return "{" + ",".join(items) + "}"


def support_union(s: SupportSet, t: SupportSet) -> SupportSet:
    return s.union(t)


def support_intersect_empty(s: SupportSet, t: SupportSet) -> bool:
    return s.is_disjoint(t)


def support_equal(s: SupportSet, t: SupportSet) -> bool:
    return s == t
