"""Isomorphism builders and decision procedures for the wreath extensions.

The sufficient-condition builders construct concrete evaluable
isomorphisms (pointwise-pushforward, inner twist, caret-swap).  The
wreath and endomorphism classifications are complete decisions backed by
exhaustive outer-conjugacy search; the omega-data check is explicitly
one-directional.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import base, gamma, thompson
from .base import KElement, TwistContext
from .forest import CARET, Forest, Node, Permutation, SymForest, Tree, slide
from .gamma import GroupHom, OmegaData
from .rigidity import Isomorphism, model_ctx
from .semidirect import GElement
from .thompson import VElement


def iso_from_equivariant(
    gamma_hom: GroupHom, source: TwistContext, target: TwistContext
) -> Isomorphism:
    """Pointwise pushforward along an intertwining group isomorphism."""
    if gamma_hom.source != source.group or gamma_hom.target != target.group:
        raise ValueError("gamma must map the source group onto the target group")
    if not gamma_hom.is_bijective():
        raise ValueError("gamma must be bijective")
    left = gamma_hom.compose(source.twist)
    right = target.twist.compose(gamma_hom)
    if left.values != right.values:
        raise ValueError("gamma does not intertwine the twists")
    inv = gamma_hom.inverse()

    def forward(g: GElement) -> GElement:
        return GElement(target, g.k.map_values(gamma_hom, target), g.v)

    def backward(g: GElement) -> GElement:
        return GElement(source, g.k.map_values(inv, source), g.v)

    return Isomorphism(source, target, forward, backward, {"phi": VElement.identity()})


def sufficient_iso_check(
    data: OmegaData, data_tilde: OmegaData
) -> tuple[GroupHom, bool, int] | None:
    """Search for a witness (gamma, swapped, g) reducing one omega to the other.

    A witness means the groups are isomorphic (sufficient, not necessary):
    omega_tilde equals gamma ad(g) omega (gamma x gamma)^{-1} composed with
    an optional coordinate swap.
    """
    grp, grp_t = data.group, data_tilde.group
    omega_sub = set(gamma.gamma_omega_subgroup(data))
    for iso in sorted(gamma.isomorphisms(grp, grp_t), key=lambda f: f.values):
        inv = iso.inverse()
        for swapped in (False, True):
            for g in sorted(omega_sub):
                ok = True
                for a in grp_t.elements():
                    for b in grp_t.elements():
                        x, y = (b, a) if swapped else (a, b)
                        val = iso(grp.conj(g, data.apply(inv(x), inv(y))))
                        if val != data_tilde.apply(a, b):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return iso, swapped, g
    return None


def classify_wreath(
    beta: GroupHom, beta_tilde: GroupHom
) -> tuple[bool, tuple[GroupHom, int] | None]:
    """Complete decision: the twisted wreath products are isomorphic iff the
    twists are outer conjugate."""
    witness = gamma.outer_conjugate(beta, beta_tilde)
    return witness is not None, witness


def classify_endos(
    beta: GroupHom, beta_tilde: GroupHom
) -> tuple[bool, tuple[GroupHom, int] | None]:
    """Complete decision for endomorphism data via eventual images."""
    _, _, restricted = gamma.eventual_image(beta)
    _, _, restricted_t = gamma.eventual_image(beta_tilde)
    return classify_wreath(restricted, restricted_t)


def _suffix_cocycle(b: KElement, u: str) -> KElement:
    """Product of caret components of b along the suffixes of u, shortest first."""
    out = KElement.identity(b.ctx)
    for i in range(len(u) - 1, -1, -1):
        out = out.mul(base.r_word(b, u[i:]))
    return out


@dataclass(frozen=True)
class TwistedModel:
    """The extension whose caret map is the original one precomposed with
    conjugation by b; the action differs from the wreath one by the inner
    cocycle."""

    ctx: TwistContext
    b: KElement
    _cocycles: dict = field(default_factory=dict, compare=False, repr=False)

    def cocycle(self, v: VElement) -> KElement:
        if v not in self._cocycles:
            out = KElement.identity(self.ctx)
            for dom, ran in v.table:
                piece = _suffix_cocycle(self.b, dom).inv().mul(_suffix_cocycle(self.b, ran))
                out = out.mul(base.graft(piece, ran))
            self._cocycles[v] = out
        return self._cocycles[v]

    def act(self, v: VElement, a: KElement) -> KElement:
        c = self.cocycle(v)
        return c.inv().mul(base.act(v, a)).mul(c)


def inner_twist(b: KElement):
    """The cocycle v -> c_v and the isomorphism onto the inner-twisted model.

    The plain action equals conjugation by c_v after the twisted action, and
    (a, v) -> (a c_v, v) is an isomorphism onto the twisted model.
    """
    model = TwistedModel(b.ctx, b)

    def cocycle(v: VElement) -> KElement:
        return model.cocycle(v)

    def forward(g: GElement) -> GElement:
        return GElement(model, g.k.mul(model.cocycle(g.v)), g.v)

    def backward(g: GElement) -> GElement:
        return GElement(b.ctx, g.k.mul(model.cocycle(g.v).inv()), g.v)

    theta = Isomorphism(b.ctx, model, forward, backward, {"phi": VElement.identity()})
    return cocycle, theta


def _psi_tree(f: SymForest, t: Tree) -> tuple[Permutation, Tree]:
    """Image of a tree under the caret-replacement functor, as perm . tree."""
    if not isinstance(t, Node):
        return Permutation.identity(1), t
    perm_l, tl = _psi_tree(f, t.left)
    perm_r, tr = _psi_tree(f, t.right)
    if f.perm.is_identity():
        return perm_l.tensor(perm_r), Node(tl, tr)
    exchange, _ = slide(Forest((tl, tr)), f.perm)
    return perm_l.tensor(perm_r) * exchange, Node(tr, tl)


def psi_embed(f: SymForest, v: VElement) -> VElement:
    """Apply the endofunctor replacing every caret by the 1 -> 2 symmetric
    forest f to an element of V (structural recursion on the tree pair)."""
    if f.forest.roots() != 1 or f.forest.n_leaves() != 2:
        raise ValueError("f must be a symmetric forest with one root and two leaves")
    if f.forest.trees[0] != CARET:
        raise ValueError("the underlying forest of f must be a single caret")
    t, sigma, s = v.tree_pair()
    rho_t, t2 = _psi_tree(f, t)
    rho_s, s2 = _psi_tree(f, s)
    return thompson.make(t2, rho_s.inverse() * sigma * rho_t, s2)


def embed_check(f: SymForest, conj: VElement, g: GElement) -> GElement:
    """The embedding determined by f and a conjugator in the fraction
    groupoid: base part transported by the conjugator's action, tree part
    conjugated after caret replacement."""
    model = g.model
    moved = model.act(conj.inv(), g.k)
    return GElement(model, moved, conj.inv().mul(psi_embed(f, g.v)).mul(conj))


def swapped_caret() -> SymForest:
    """The 1 -> 2 symmetric forest exchanging the two caret outputs."""
    return SymForest(Forest((CARET,)), Permutation.transposition(2, 0, 1))


def plain_caret() -> SymForest:
    return SymForest(Forest((CARET,)), Permutation.identity(2))
