"""Binary forests and symmetric forests.

A tree is a rooted planar binary tree; its leaves are named by the binary
words tracing the path from the root (0 = left).  A forest is a nonempty
ordered list of trees: a morphism from its number of roots to its number
of leaves, composed by grafting.  Adding permutations of the leaf strands
gives symmetric forests, with the exchange relation that slides a forest
through a permutation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import is_complete_code


class Tree:
    __slots__ = ()

    def leaves(self) -> tuple[str, ...]:
        out: list[str] = []
        _collect_leaves(self, "", out)
        return tuple(out)

    def n_leaves(self) -> int:
        if isinstance(self, Leaf):
            return 1
        assert isinstance(self, Node)
        return self.left.n_leaves() + self.right.n_leaves()

    def depth(self) -> int:
        if isinstance(self, Leaf):
            return 0
        assert isinstance(self, Node)
        return 1 + max(self.left.depth(), self.right.depth())


@dataclass(frozen=True)
class Leaf(Tree):
    __slots__ = ()


@dataclass(frozen=True)
class Node(Tree):
    left: Tree
    right: Tree


LEAF = Leaf()
CARET = Node(LEAF, LEAF)


def _collect_leaves(t: Tree, path: str, out: list[str]) -> None:
    if isinstance(t, Leaf):
        out.append(path)
    else:
        assert isinstance(t, Node)
        _collect_leaves(t.left, path + "0", out)
        _collect_leaves(t.right, path + "1", out)


def leaves(t: Tree) -> tuple[str, ...]:
    return t.leaves()


def tree_from_code(code) -> Tree:
    """The tree whose leaf addresses are the given complete prefix code."""
    words = sorted(code)
    if not is_complete_code(words):
        raise ValueError(f"not a complete prefix code: {words}")
    return _build(words)


def _build(words: list[str]) -> Tree:
    if words == [""]:
        return LEAF
    left = [w[1:] for w in words if w.startswith("0")]
    right = [w[1:] for w in words if w.startswith("1")]
    return Node(_build(left), _build(right))


def full_tree(n: int) -> Tree:
    """The regular tree with 2**n leaves."""
    t: Tree = LEAF
    for _ in range(n):
        t = Node(t, t)
    return t


def min_tree(u: str) -> Tree:
    """The smallest tree having u as a leaf."""
    code = [u] + [u[:i] + ("1" if u[i] == "0" else "0") for i in range(len(u))]
    return tree_from_code(code)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..n-1}; images[i] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(n))
        images[i], images[j] = images[j], images[i]
        return cls(tuple(images))

    @classmethod
    def from_one_line(cls, images_1based) -> "Permutation":
        return cls(tuple(i - 1 for i in images_1based))

    def one_line(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self):
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Function composition: (self * other)(i) = self(other(i))."""
        if len(self) != len(other):
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(len(self.images)))

    def tensor(self, other: "Permutation") -> "Permutation":
        n = len(self)
        return Permutation(self.images + tuple(n + j for j in other.images))


@dataclass(frozen=True)
class Forest:
    """Nonempty ordered list of trees: a morphism roots -> leaves."""

    trees: tuple[Tree, ...]

    def __post_init__(self):
        if not self.trees:
            raise ValueError("forests are nonempty")

    @classmethod
    def identity(cls, n: int) -> "Forest":
        return cls((LEAF,) * n)

    def roots(self) -> int:
        return len(self.trees)

    def n_leaves(self) -> int:
        return sum(t.n_leaves() for t in self.trees)

    def leaf_sizes(self) -> tuple[int, ...]:
        return tuple(t.n_leaves() for t in self.trees)

    def is_identity(self) -> bool:
        return all(isinstance(t, Leaf) for t in self.trees)


def elementary(k: int, n: int) -> Forest:
    """The forest with n roots and a single caret at (1-based) position k."""
    if not 1 <= k <= n:
        raise ValueError(f"caret position {k} out of range 1..{n}")
    return Forest((LEAF,) * (k - 1) + (CARET,) + (LEAF,) * (n - k))


def tensor(f: Forest, g: Forest) -> Forest:
    return Forest(f.trees + g.trees)


def compose(g: Forest, f: Forest) -> Forest:
    """Graft: attach the i-th tree of g to the i-th leaf of f."""
    if f.n_leaves() != g.roots():
        raise ValueError(
            f"composition mismatch: {f.n_leaves()} leaves vs {g.roots()} roots"
        )
    gs = list(g.trees)
    pos = 0
    out = []
    for t in f.trees:
        grafted, pos = _graft(t, gs, pos)
        out.append(grafted)
    return Forest(tuple(out))


def _graft(t: Tree, gs: list[Tree], pos: int) -> tuple[Tree, int]:
    if isinstance(t, Leaf):
        return gs[pos], pos + 1
    assert isinstance(t, Node)
    left, pos = _graft(t.left, gs, pos)
    right, pos = _graft(t.right, gs, pos)
    return Node(left, right), pos


def slide(f: Forest, sigma: Permutation) -> tuple[Permutation, Forest]:
    """Exchange relation: f after sigma equals S(f,sigma) after sigma(f).

    sigma acts on the roots of f; sigma(f) puts tree f_{sigma(i)} at root i,
    and the returned leaf permutation replaces each strand of sigma by the
    corresponding block of parallel strands.
    """
    if sigma and len(sigma) != f.roots():
        raise ValueError("permutation size must equal number of roots")
    permuted = Forest(tuple(f.trees[sigma(i)] for i in range(f.roots())))
    off_f = _offsets(f)
    off_p = _offsets(permuted)
    images = [0] * f.n_leaves()
    for j in range(f.roots()):
        size = permuted.trees[j].n_leaves()
        for i in range(size):
            images[off_p[j] + i] = off_f[sigma(j)] + i
    return Permutation(tuple(images)), permuted


def _offsets(f: Forest) -> list[int]:
    offs = [0]
    for t in f.trees[:-1]:
        offs.append(offs[-1] + t.n_leaves())
    return offs


def common_refinement(t: Tree, s: Tree) -> tuple[Forest, Forest]:
    """Forests p, q with compose(p, t) == compose(q, s), minimal common tree.

    The common tree is the union of the two leaf prefix codes.
    """
    lt, ls = t.leaves(), s.leaves()
    common = set()
    for a in lt:
        if any(a.startswith(b) for b in ls):
            common.add(a)
    for b in ls:
        if any(b.startswith(a) for a in lt):
            common.add(b)
    code = sorted(common)
    p = _forest_between(lt, code)
    q = _forest_between(ls, code)
    return p, q


def _forest_between(coarse, fine) -> Forest:
    """Forest grafting the coarse code up to the fine code refining it."""
    trees = []
    for a in coarse:
        sub = [w[len(a):] for w in fine if w.startswith(a)]
        trees.append(tree_from_code(sub))
    return Forest(tuple(trees))


def decompose_elementary(f: Forest) -> list[tuple[int, int]]:
    """Peel f into elementary forests, bottom caret first.

    Returns pairs (k, n) with f == compose(...compose(identity, e_last)...,
    e_first); recompose_elementary inverts this.
    """
    steps: list[tuple[int, int]] = []
    current = f
    while not current.is_identity():
        for i, t in enumerate(current.trees):
            if isinstance(t, Node):
                steps.append((i + 1, current.roots()))
                current = Forest(
                    current.trees[:i] + (t.left, t.right) + current.trees[i + 1:]
                )
                break
    return steps


def recompose_elementary(steps, width: int) -> Forest:
    """Rebuild a forest from its peel; width is the target leaf count."""
    g = Forest.identity(width)
    for k, n in reversed(steps):
        g = compose(g, elementary(k, n))
    return g


@dataclass(frozen=True)
class SymForest:
    """A forest together with a permutation of its leaves: perm after forest."""

    forest: Forest
    perm: Permutation

    def __post_init__(self):
        if len(self.perm) != self.forest.n_leaves():
            raise ValueError("permutation size must equal leaf count")

    def roots(self) -> int:
        return self.forest.roots()

    def n_leaves(self) -> int:
        return self.forest.n_leaves()
