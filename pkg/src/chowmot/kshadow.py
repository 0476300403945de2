"""Rational K-theory classes represented by their Chern characters.

The Chern character identifies K_0(X) tensor Q with the rational
intersection ring, so a K-class is stored faithfully as a cycle.  Kernel
composition is transported along the correspondence picture: a kernel maps
to the graded correspondence ch(E) * sqrt(td) of the product, composition
happens there, and the result is pulled back through the same dictionary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chern import series_inverse, sqrt_todd, tangent_class, todd_class, variety_todd
from .corr import GradedCorrespondence, compose_graded, diagonal_pushforward
from .errors import DomainMismatchError, InvalidInputError
from .ring import Cycle, Variety


@dataclass(frozen=True)
class KClass:
    """A class in K_0(X) with rational coefficients, recorded by its Chern
    character cycle.  Any cycle is legal; the rank is the constant term."""

    variety: Variety
    ch: Cycle

    def __post_init__(self) -> None:
        if self.ch.variety != self.variety:
            raise InvalidInputError("Chern character lives on the wrong variety")

    @property
    def rank(self) -> Fraction:
        return self.ch.coefficient((0,) * self.variety.num_factors)

    def __add__(self, other: "KClass") -> "KClass":
        if other.variety != self.variety:
            raise DomainMismatchError("K-classes live on different varieties")
        return KClass(self.variety, self.ch + other.ch)

    def __neg__(self) -> "KClass":
        return KClass(self.variety, -self.ch)

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def scale(self, scalar) -> "KClass":
        return KClass(self.variety, self.ch.scale(scalar))

    def tensor(self, other: "KClass") -> "KClass":
        """Tensor product of K-classes: Chern characters multiply."""
        if other.variety != self.variety:
            raise DomainMismatchError("K-classes live on different varieties")
        return KClass(self.variety, self.ch * other.ch)


@dataclass(frozen=True)
class KKernel:
    """A K-class on X x Y regarded as a kernel from X to Y (the K-theoretic
    shadow of a Fourier-Mukai kernel)."""

    source: Variety
    target: Variety
    kclass: KClass

    def __post_init__(self) -> None:
        if self.kclass.variety != self.source * self.target:
            raise InvalidInputError(
                f"kernel class lives on {self.kclass.variety}, expected {self.source * self.target}"
            )

    @classmethod
    def from_ch(cls, source: Variety, target: Variety, ch: Cycle) -> "KKernel":
        return cls(source, target, KClass(source * target, ch))

    @property
    def ch(self) -> Cycle:
        return self.kclass.ch

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "ch": self.ch.to_json(),
        }

    @classmethod
    def from_json(cls, data: object) -> "KKernel":
        if not isinstance(data, dict) or not {"source", "target", "ch"} <= set(data):
            raise InvalidInputError(
                f"kernel must be an object with 'source', 'target', 'ch', got {data!r}"
            )
        return cls.from_ch(
            Variety.from_json(data["source"]),
            Variety.from_json(data["target"]),
            Cycle.from_json(data["ch"]),
        )


def euler_characteristic(kclass: KClass) -> Fraction:
    """chi(X, E) by Riemann-Roch: the degree of ch(E) * td(X)."""
    return (kclass.ch * variety_todd(kclass.variety)).degree()


def chow_image(kernel: KKernel) -> GradedCorrespondence:
    """The graded correspondence attached to a kernel: ch(E) * sqrt(td) of
    the product.  This assignment respects kernel composition."""
    product = kernel.source * kernel.target
    return GradedCorrespondence(
        kernel.source, kernel.target, kernel.ch * sqrt_todd(product)
    )


def k_compose(e: KKernel, f: KKernel) -> KKernel:
    """Composite kernel (e first, then f), defined by transport: its
    correspondence image is the composite of the images."""
    if e.target != f.source:
        raise DomainMismatchError(f"middle variety mismatch: {e.target} vs {f.source}")
    composed = compose_graded(chow_image(e), chow_image(f))
    product = e.source * f.target
    ch = composed.cycle * series_inverse(sqrt_todd(product))
    return KKernel.from_ch(e.source, f.target, ch)


def identity_kernel(variety: Variety) -> KKernel:
    """The kernel of the identity functor: the class of the diagonal's
    structure sheaf, computed by Riemann-Roch for the diagonal embedding."""
    td_x = variety_todd(variety)
    td_square = todd_class(tangent_class(variety * variety))
    ch = diagonal_pushforward(variety, td_x) * series_inverse(td_square)
    return KKernel.from_ch(variety, variety, ch)


def support_codim_floor(cycle: Cycle) -> int | float:
    """Smallest codimension carrying a nonzero component; the zero cycle
    returns infinity (a sentinel larger than any dimension in use)."""
    codims = cycle.codimensions()
    return codims[0] if codims else math.inf
