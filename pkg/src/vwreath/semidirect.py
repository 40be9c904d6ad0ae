"""The split extension G = K x| V with the twisted wreath action.

A group element is a pair (k, v) denoting the product k.v, normalized so
the base part is canonical and the tree part reduced; equality is
structural.  The acting model is pluggable: the plain TwistContext gives
the wreath action, and classify.TwistedModel gives the inner-twisted one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base import KElement, TwistContext
from .gamma import center as group_center
from .gamma import fixed_subgroup
from .thompson import VElement


@dataclass(frozen=True)
class GElement:
    model: object
    k: KElement
    v: VElement

    @classmethod
    def of(cls, model, k: KElement, v: VElement) -> "GElement":
        return cls(model, k, v)

    @classmethod
    def identity(cls, model) -> "GElement":
        return cls(model, KElement.identity(_ctx(model)), VElement.identity())

    @classmethod
    def from_k(cls, model, k: KElement) -> "GElement":
        return cls(model, k, VElement.identity())

    @classmethod
    def from_v(cls, model, v: VElement) -> "GElement":
        return cls(model, KElement.identity(_ctx(model)), v)

    def mul(self, other: "GElement") -> "GElement":
        if self.model != other.model:
            raise ValueError("model mismatch")
        acted = self.model.act(self.v, other.k)
        return GElement(self.model, self.k.mul(acted), self.v.mul(other.v))

    def __mul__(self, other: "GElement") -> "GElement":
        return self.mul(other)

    def inv(self) -> "GElement":
        vinv = self.v.inv()
        return GElement(self.model, self.model.act(vinv, self.k.inv()), vinv)

    def conj(self, other: "GElement") -> "GElement":
        """self * other * self^{-1}."""
        return self.mul(other).mul(self.inv())

    def commutator(self, other: "GElement") -> "GElement":
        """self * other * self^{-1} * other^{-1}."""
        return self.mul(other).mul(self.inv()).mul(other.inv())

    def project_v(self) -> VElement:
        return self.v

    def in_k(self) -> bool:
        return self.v.is_identity()

    def is_identity(self) -> bool:
        return self.k.is_identity() and self.v.is_identity()

    def __str__(self):
        return f"{self.k} ; {self.v}"


def _ctx(model) -> TwistContext:
    return model if isinstance(model, TwistContext) else model.ctx


def mul(a: GElement, b: GElement) -> GElement:
    return a.mul(b)


def inv(a: GElement) -> GElement:
    return a.inv()


def conj(a: GElement, b: GElement) -> GElement:
    return a.conj(b)


def commutator(a: GElement, b: GElement) -> GElement:
    return a.commutator(b)


def project_v(a: GElement) -> VElement:
    return a.project_v()


def in_k(a: GElement) -> bool:
    return a.in_k()


def center_values(ctx: TwistContext) -> tuple[int, ...]:
    """The center of G: constants valued in Z(Gamma) intersected with the
    twist-fixed subgroup; agrees with the R-invariant-central description."""
    zg = set(group_center(ctx.group))
    fixed = set(fixed_subgroup(ctx.twist))
    return tuple(sorted(zg & fixed))


def is_central(g: GElement) -> bool:
    ctx = _ctx(g.model)
    if not g.v.is_identity():
        return False
    allowed = set(center_values(ctx))
    return (
        len(g.k.cells) == 1
        and not g.k.exceptions
        and g.k.cells[0][1] in allowed
    )


def central_element(model, z: int) -> GElement:
    ctx = _ctx(model)
    if z not in center_values(ctx):
        raise ValueError(f"{z} is not a central value")
    return GElement.from_k(model, KElement.constant(ctx, z))
