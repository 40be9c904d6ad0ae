"""Finite groups as multiplication tables, with endomorphism machinery.

Elements are indices 0..n-1.  The table is validated as a group law on
construction.  Homomorphism enumeration goes through generator images and
is exhaustive; the eventual image of an endomorphism realizes the inverse
limit of the repeated-application tower for finite groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    label: str = "group"
    identity: int = field(init=False)

    def __post_init__(self):
        n = len(self.table)
        if len(self.names) != n or any(len(row) != n for row in self.table):
            raise ValueError("table/names size mismatch")
        ident = None
        for e in range(n):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("no identity element")
        object.__setattr__(self, "identity", ident)
        for x in range(n):
            if ident not in self.table[x]:
                raise ValueError(f"element {x} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def conj(self, h: int, a: int) -> int:
        """h a h^{-1}."""
        return self.mul(self.mul(h, a), self.inv(h))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out = self.identity
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def elements(self) -> range:
        return range(self.order)

    def name(self, a: int) -> str:
        return self.names[a]

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def __str__(self):
        return self.label


def cyclic(n: int) -> FiniteGroup:
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(table, tuple(str(a) for a in range(n)), f"cyclic:{n}")


def _perm_name(p: tuple[int, ...]) -> str:
    seen = [False] * len(p)
    cycles = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        cycles.append("(" + "".join(str(k + 1) for k in cyc) + ")")
    return "".join(cycles) or "e"


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms
    )
    return FiniteGroup(table, tuple(_perm_name(p) for p in perms), f"sym:{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; (r, 0) rotations, (r, 1) reflections."""
    elems = [(r, f) for f in (0, 1) for r in range(n)]
    index = {e: i for i, e in enumerate(elems)}

    def op(a, b):
        r1, f1 = a
        r2, f2 = b
        if f1 == 0:
            return ((r1 + r2) % n, f2)
        return ((r1 - r2) % n, 1 - f2)

    table = tuple(tuple(index[op(a, b)] for b in elems) for a in elems)
    names = tuple(("e" if r == 0 and f == 0 else f"r{r}" if f == 0 else f"s{r}") for r, f in elems)
    return FiniteGroup(table, names, f"dihedral:{n}")


def quaternion() -> FiniteGroup:
    names = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    neg = {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4, 6: 7, 7: 6}
    base = {
        (0, 0): 0, (0, 2): 2, (0, 4): 4, (0, 6): 6,
        (2, 0): 2, (2, 2): 1, (2, 4): 6, (2, 6): 5,
        (4, 0): 4, (4, 2): 7, (4, 4): 1, (4, 6): 2,
        (6, 0): 6, (6, 2): 4, (6, 4): 3, (6, 6): 1,
    }

    def op(a, b):
        sign = 0
        if a in (1, 3, 5, 7):
            a, sign = neg[a], sign ^ 1
        if b in (1, 3, 5, 7):
            b, sign = neg[b], sign ^ 1
        c = base[(a, b)]
        if c in (1, 3, 5, 7):
            c, sign = neg[c], sign ^ 1
        return neg[c] if sign else c

    table = tuple(tuple(op(a, b) for b in range(8)) for a in range(8))
    return FiniteGroup(table, names, "quaternion")


def product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elems = [(a, b) for a in g.elements() for b in h.elements()]
    index = {e: i for i, e in enumerate(elems)}
    table = tuple(
        tuple(index[(g.mul(a1, a2), h.mul(b1, b2))] for a2, b2 in elems)
        for a1, b1 in elems
    )
    names = tuple(f"({g.name(a)},{h.name(b)})" for a, b in elems)
    return FiniteGroup(table, names, f"product:{g.label},{h.label}")


def trivial() -> FiniteGroup:
    return FiniteGroup(((0,),), ("e",), "cyclic:1")


def groups_up_to_order(n: int) -> list[FiniteGroup]:
    """One representative per isomorphism class of groups of order <= n."""
    catalog = [
        trivial(), cyclic(2), cyclic(3), cyclic(4), product(cyclic(2), cyclic(2)),
        cyclic(5), cyclic(6), symmetric(3), cyclic(7), cyclic(8),
        product(cyclic(4), cyclic(2)), product(cyclic(2), product(cyclic(2), cyclic(2))),
        dihedral(4), quaternion(),
    ]
    return [g for g in catalog if g.order <= n]


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.source.order:
            raise ValueError("value list has wrong length")
        if not is_hom(self):
            raise ValueError(f"not multiplicative: {self.values}")

    def apply(self, a: int) -> int:
        return self.values[a]

    def __call__(self, a: int) -> int:
        return self.values[a]

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition mismatch")
        return GroupHom(other.source, self.target, tuple(self.values[v] for v in other.values))

    def is_bijective(self) -> bool:
        return sorted(self.values) == list(range(self.source.order))

    def is_endo(self) -> bool:
        return self.source == self.target

    def inverse(self) -> "GroupHom":
        if not self.is_bijective() or self.source.order != self.target.order:
            raise ValueError("not invertible")
        inv = [0] * len(self.values)
        for a, b in enumerate(self.values):
            inv[b] = a
        return GroupHom(self.target, self.source, tuple(inv))

    def is_identity(self) -> bool:
        return self.values == tuple(range(self.source.order))


def _is_hom_values(g: FiniteGroup, h: FiniteGroup, vals) -> bool:
    return all(
        vals[g.mul(a, b)] == h.mul(vals[a], vals[b])
        for a in g.elements()
        for b in g.elements()
    )


def is_hom(f: GroupHom) -> bool:
    return _is_hom_values(f.source, f.target, f.values)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(g.elements()))


def inversion_hom(g: FiniteGroup) -> GroupHom:
    """g -> g^{-1}; a homomorphism exactly when the group is abelian."""
    return GroupHom(g, g, tuple(g.inv(a) for a in g.elements()))


def power_hom(g: FiniteGroup, k: int) -> GroupHom:
    return GroupHom(g, g, tuple(g.power(a, k) for a in g.elements()))


def zero_hom(g: FiniteGroup, h: FiniteGroup | None = None) -> GroupHom:
    h = h or g
    return GroupHom(g, h, (h.identity,) * g.order)


def ad(g: FiniteGroup, h: int) -> GroupHom:
    return GroupHom(g, g, tuple(g.conj(h, a) for a in g.elements()))


def closure(g: FiniteGroup, gens) -> tuple[int, ...]:
    out = {g.identity}
    frontier = list(set(gens) | {g.identity})
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = g.mul(a, s)
                if b not in out:
                    out.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(out))


def generating_set(g: FiniteGroup) -> tuple[int, ...]:
    gens: list[int] = []
    have = {g.identity}
    for a in g.elements():
        if a not in have:
            gens.append(a)
            have = set(closure(g, gens))
            if len(have) == g.order:
                break
    return tuple(gens)


def center(g: FiniteGroup) -> tuple[int, ...]:
    return tuple(
        a for a in g.elements()
        if all(g.mul(a, b) == g.mul(b, a) for b in g.elements())
    )


def commutator_subgroup(g: FiniteGroup) -> tuple[int, ...]:
    comms = {
        g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))
        for a in g.elements()
        for b in g.elements()
    }
    return closure(g, comms)


def fixed_subgroup(f: GroupHom) -> tuple[int, ...]:
    if not f.is_endo():
        raise ValueError("need an endomorphism")
    return tuple(a for a in f.source.elements() if f(a) == a)


def _word_expressions(g: FiniteGroup, gens) -> list[tuple[int, ...]]:
    """For each element, one expression as a product of generators."""
    expr: dict[int, tuple[int, ...]] = {g.identity: ()}
    frontier = [g.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for i, s in enumerate(gens):
                b = g.mul(a, s)
                if b not in expr:
                    expr[b] = expr[a] + (i,)
                    nxt.append(b)
        frontier = nxt
    return [expr[a] for a in g.elements()]


def homs(g: FiniteGroup, h: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms g -> h, by exhaustive generator-image search."""
    gens = generating_set(g)
    if not gens:
        return [GroupHom(g, h, (h.identity,) * g.order)]
    exprs = _word_expressions(g, gens)
    out = []
    for images in itertools.product(h.elements(), repeat=len(gens)):
        vals = []
        for expr in exprs:
            v = h.identity
            for i in expr:
                v = h.mul(v, images[i])
            vals.append(v)
        vals = tuple(vals)
        if _is_hom_values(g, h, vals):
            out.append(GroupHom(g, h, vals))
    return out


def endomorphisms(g: FiniteGroup) -> list[GroupHom]:
    return homs(g, g)


def automorphisms(g: FiniteGroup) -> list[GroupHom]:
    return [f for f in homs(g, g) if f.is_bijective()]


def isomorphisms(g: FiniteGroup, h: FiniteGroup) -> list[GroupHom]:
    if g.order != h.order:
        return []
    return [f for f in homs(g, h) if f.is_bijective()]


def subgroup(g: FiniteGroup, elements) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The subgroup on the given elements, relabeled 0..k-1, with embedding."""
    embed = tuple(sorted(elements))
    index = {a: i for i, a in enumerate(embed)}
    table = tuple(tuple(index[g.mul(a, b)] for b in embed) for a in embed)
    names = tuple(g.name(a) for a in embed)
    return FiniteGroup(table, names, f"{g.label}-sub{len(embed)}"), embed


def eventual_image(beta: GroupHom) -> tuple[FiniteGroup, tuple[int, ...], GroupHom]:
    """The stable image E of iterating beta, and beta restricted to it.

    Returns (E as a group, embedding into the source, automorphism of E).
    For finite groups (E, beta|_E) realizes the inverse limit of the tower
    of repeated applications: projection to coordinate zero is a bijection
    onto E because beta|_E is bijective, so backward lifts are unique.
    """
    if not beta.is_endo():
        raise ValueError("need an endomorphism")
    g = beta.source
    current = frozenset(g.elements())
    while True:
        nxt = frozenset(beta(a) for a in current)
        if nxt == current:
            break
        current = nxt
    sub, embed = subgroup(g, current)
    index = {a: i for i, a in enumerate(embed)}
    restricted = GroupHom(sub, sub, tuple(index[beta(a)] for a in embed))
    if not restricted.is_bijective():
        raise AssertionError("restriction to the eventual image must be bijective")
    return sub, embed, restricted


def backward_reachable(beta: GroupHom, depth: int) -> frozenset[int]:
    """Elements admitting a depth-long chain of successive beta-preimages.

    Independent oracle for the eventual image: computed by backward search
    through preimage fibers, not by iterating forward images.
    """
    g = beta.source
    fibers: dict[int, list[int]] = {a: [] for a in g.elements()}
    for b in g.elements():
        fibers[beta(b)].append(b)
    memo: dict[tuple[int, int], bool] = {}

    def extendable(a: int, d: int) -> bool:
        if d == 0:
            return True
        key = (a, d)
        if key not in memo:
            memo[key] = any(extendable(b, d - 1) for b in fibers[a])
        return memo[key]

    return frozenset(a for a in g.elements() if extendable(a, depth))


def outer_conjugate(
    beta: GroupHom, beta_tilde: GroupHom
) -> tuple[GroupHom, int] | None:
    """First witness (gamma, h) with beta_tilde = ad(h) . gamma beta gamma^{-1}.

    Exhaustive search, isomorphisms in lexicographic value order, h by
    element index; None when no witness exists.
    """
    if not (beta.is_bijective() and beta_tilde.is_bijective()):
        raise ValueError("outer conjugacy needs automorphisms")
    g, h_grp = beta.source, beta_tilde.source
    for gamma in sorted(isomorphisms(g, h_grp), key=lambda f: f.values):
        conjugated = gamma.compose(beta).compose(gamma.inverse())
        for h in h_grp.elements():
            if ad(h_grp, h).compose(conjugated).values == beta_tilde.values:
                return gamma, h
    return None


@dataclass(frozen=True)
class OmegaData:
    """A group morphism Gamma^2 -> Gamma given by its full value table."""

    group: FiniteGroup
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.group
        n = g.order
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("omega table size mismatch")
        w0 = tuple(self.table[a][g.identity] for a in g.elements())
        w1 = tuple(self.table[g.identity][b] for b in g.elements())
        for vals in (w0, w1):
            if not _is_hom_values(g, g, vals):
                raise ValueError("omega coordinate maps are not endomorphisms")
        for a in g.elements():
            for b in g.elements():
                if self.table[a][b] != g.mul(w0[a], w1[b]):
                    raise ValueError("omega is not a homomorphism on the square")
        for a in g.elements():
            for b in g.elements():
                if g.mul(w0[a], w1[b]) != g.mul(w1[b], w0[a]):
                    raise ValueError("omega coordinate images do not commute")

    @classmethod
    def from_maps(cls, group: FiniteGroup, fn) -> "OmegaData":
        table = tuple(
            tuple(fn(a, b) for b in group.elements()) for a in group.elements()
        )
        return cls(group, table)

    @classmethod
    def left_twist(cls, beta: GroupHom) -> "OmegaData":
        """(g, h) -> beta(g), the wreath-product shape."""
        return cls.from_maps(beta.source, lambda a, b: beta(a))

    def apply(self, a: int, b: int) -> int:
        return self.table[a][b]

    def omega0(self) -> GroupHom:
        g = self.group
        return GroupHom(g, g, tuple(self.table[a][g.identity] for a in g.elements()))

    def omega1(self) -> GroupHom:
        g = self.group
        return GroupHom(g, g, tuple(self.table[g.identity][b] for b in g.elements()))

    def swap(self) -> "OmegaData":
        return OmegaData.from_maps(self.group, lambda a, b: self.table[b][a])


def gamma_omega_subgroup(omega: OmegaData) -> tuple[int, ...]:
    """Fixpoint of T -> omega(T, T) starting from the whole group.

    Full trees are cofinal among all trees, so the fixpoint equals the
    intersection of the images over all tree-shaped iterates; omega
    restricts to a surjection on the result.
    """
    g = omega.group
    current = frozenset(g.elements())
    while True:
        nxt = frozenset(omega.apply(a, b) for a in current for b in current)
        if nxt == current:
            return tuple(sorted(current))
        current = nxt


def omega_b_witness(omega: OmegaData, h: int, depth: int) -> dict[str, int] | None:
    """Recursive solution b with omega(b(u0), b(u1)) = h^{-1} b(u), b(e) = e.

    Values at every word of length <= depth, first preimage pair in
    lexicographic order at each node; None when some node has no preimage.
    """
    g = omega.group
    b: dict[str, int] = {"": g.identity}
    frontier = [""]
    for _ in range(depth):
        nxt = []
        for u in frontier:
            target = g.mul(g.inv(h), b[u])
            found = None
            for p in g.elements():
                for q in g.elements():
                    if omega.apply(p, q) == target:
                        found = (p, q)
                        break
                if found:
                    break
            if found is None:
                return None
            b[u + "0"], b[u + "1"] = found
            nxt.extend([u + "0", u + "1"])
        frontier = nxt
    return b
