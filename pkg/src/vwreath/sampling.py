"""Seeded random generators for property suites and tests."""

from __future__ import annotations

import random

from . import thompson
from .base import KElement, TwistContext
from .forest import LEAF, Node, Permutation, Tree
from .semidirect import GElement
from .thompson import VElement
from .words import DyadicPoint


class Sampler:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def word(self, max_len: int, min_len: int = 0) -> str:
        n = self.rng.randint(min_len, max_len)
        return "".join(self.rng.choice("01") for _ in range(n))

    def point(self, max_len: int = 5) -> DyadicPoint:
        return DyadicPoint.from_word(self.word(max_len))

    def tree(self, max_depth: int) -> Tree:
        if max_depth == 0 or self.rng.random() < 0.3:
            return LEAF
        return Node(self.tree(max_depth - 1), self.tree(max_depth - 1))

    def tree_with_leaves(self, n: int) -> Tree:
        """A uniform-ish random tree with exactly n leaves."""
        if n == 1:
            return LEAF
        k = self.rng.randint(1, n - 1)
        return Node(self.tree_with_leaves(k), self.tree_with_leaves(n - k))

    def permutation(self, n: int) -> Permutation:
        images = list(range(n))
        self.rng.shuffle(images)
        return Permutation(tuple(images))

    def velement(self, max_depth: int = 4) -> VElement:
        t = self.tree(max_depth)
        n = t.n_leaves()
        s = self.tree_with_leaves(n)
        return thompson.make(t, self.permutation(n), s)

    def kelement(
        self, ctx: TwistContext, max_depth: int = 3, max_exceptions: int = 2
    ) -> KElement:
        t = self.tree(max_depth)
        grp = ctx.group
        cells = {leaf: self.rng.randrange(grp.order) for leaf in t.leaves()}
        exc = {
            self.point(max_depth + 2): self.rng.randrange(grp.order)
            for _ in range(self.rng.randint(0, max_exceptions))
        }
        return KElement.make(ctx, cells, exc)

    def exception_only(self, ctx: TwistContext, max_points: int = 3) -> KElement:
        grp = ctx.group
        exc = {
            self.point(4): self.rng.randrange(grp.order)
            for _ in range(self.rng.randint(0, max_points))
        }
        return KElement.make(ctx, {"": grp.identity}, exc)

    def gelement(self, model, max_depth: int = 3) -> GElement:
        ctx = model if isinstance(model, TwistContext) else model.ctx
        return GElement(model, self.kelement(ctx, max_depth), self.velement(max_depth))

    def group_element(self, ctx: TwistContext) -> int:
        return self.rng.randrange(ctx.group.order)


def probe_points(depth: int = 4, extra=()) -> list[DyadicPoint]:
    """All dyadic points of stem length <= depth, plus the given extras."""
    stems = [""]
    frontier = [""]
    for _ in range(depth):
        frontier = [s + d for s in frontier for d in "01"]
        stems.extend(w for w in frontier if w.endswith("1"))
    pts = {DyadicPoint(s) for s in stems} | set(extra)
    return sorted(pts)
