"""The categorical layer: motives as idempotent-cut varieties with a twist,
their tensor calculus, formal direct sums, the orbit category that forgets
twists, degree-zero rigidification, and the kernel-to-motive pipelines.

A motive is a triple (variety X, twist r, idempotent correspondence a); a
morphism (X, r, a) -> (Y, s, b) is a correspondence of pure degree s - r
sandwiched by the idempotents.  The orbit category keeps the same objects
but allows components at every twist offset; for these concrete objects an
orbit morphism is exactly the degree decomposition of a graded
correspondence, with the twist autoequivalence acting on indices only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chern import sqrt_todd
from .corr import GradedCorrespondence, cartesian, compose_graded, permute_factors
from .errors import (
    DomainMismatchError,
    InvalidInputError,
    PreconditionError,
    SupportConditionError,
)
from .kshadow import KClass, KKernel, chow_image, support_codim_floor
from .ring import Cycle, Variety


@dataclass(frozen=True)
class Motive:
    """A triple (X, twist, idempotent) with the idempotent a degree-zero
    self-correspondence of X satisfying a o a = a; both conditions are
    checked on construction."""

    variety: Variety
    twist: int
    idempotent: GradedCorrespondence

    def __post_init__(self) -> None:
        p = self.idempotent
        if p.source != self.variety or p.target != self.variety:
            raise InvalidInputError("idempotent is not a self-correspondence of the variety")
        if not p.is_pure_degree(0):
            raise InvalidInputError("motive idempotent must have pure degree 0")
        if compose_graded(p, p) != p:
            raise InvalidInputError("motive projector is not idempotent")

    @property
    def dim(self) -> int:
        return self.variety.dim

    @property
    def is_zero(self) -> bool:
        return self.idempotent.is_zero

    def identity_morphism(self) -> "MotiveMorphism":
        return MotiveMorphism(self, self, self.idempotent)

    def __str__(self) -> str:
        return f"({self.variety}, {self.twist}, {self.idempotent.cycle})"

    def to_json(self) -> dict:
        return {
            "variety": self.variety.to_json(),
            "twist": self.twist,
            "idempotent": self.idempotent.cycle.to_json(),
        }

    @classmethod
    def from_json(cls, data: object) -> "Motive":
        if not isinstance(data, dict) or not {"variety", "twist", "idempotent"} <= set(data):
            raise InvalidInputError(
                f"motive must be an object with 'variety', 'twist', 'idempotent', got {data!r}"
            )
        variety = Variety.from_json(data["variety"])
        twist = data["twist"]
        if not isinstance(twist, int) or isinstance(twist, bool):
            raise InvalidInputError(f"twist must be an integer, got {twist!r}")
        cycle = Cycle.from_json(data["idempotent"])
        return cls(variety, twist, GradedCorrespondence(variety, variety, cycle))


@dataclass(frozen=True)
class MotiveMorphism:
    """A correspondence of pure degree (target twist - source twist) that is
    fixed by sandwiching with the two idempotents."""

    source: Motive
    target: Motive
    corr: GradedCorrespondence

    def __post_init__(self) -> None:
        c = self.corr
        if c.source != self.source.variety or c.target != self.target.variety:
            raise InvalidInputError("correspondence does not match the motives' varieties")
        if not c.is_pure_degree(self.target.twist - self.source.twist):
            raise InvalidInputError(
                "morphism correspondence must have pure degree equal to the twist difference"
            )
        sandwiched = compose_graded(
            compose_graded(self.source.idempotent, c), self.target.idempotent
        )
        if sandwiched != c:
            raise InvalidInputError("correspondence is not fixed by the motive idempotents")

    @staticmethod
    def zero(source: Motive, target: Motive) -> "MotiveMorphism":
        return MotiveMorphism(
            source, target, GradedCorrespondence.zero(source.variety, target.variety)
        )

    @property
    def is_zero(self) -> bool:
        return self.corr.is_zero

    def then(self, other: "MotiveMorphism") -> "MotiveMorphism":
        return compose_motive(self, other)

    def __add__(self, other: "MotiveMorphism") -> "MotiveMorphism":
        if self.source != other.source or self.target != other.target:
            raise DomainMismatchError("morphisms have different source or target")
        return MotiveMorphism(self.source, self.target, self.corr + other.corr)

    def __sub__(self, other: "MotiveMorphism") -> "MotiveMorphism":
        if self.source != other.source or self.target != other.target:
            raise DomainMismatchError("morphisms have different source or target")
        return MotiveMorphism(self.source, self.target, self.corr - other.corr)

    def __neg__(self) -> "MotiveMorphism":
        return MotiveMorphism(self.source, self.target, -self.corr)


def compose_motive(f: MotiveMorphism, g: MotiveMorphism) -> MotiveMorphism:
    """Composite f first, then g; the degrees add up to the total twist
    difference automatically."""
    if f.target != g.source:
        raise DomainMismatchError("morphisms are not composable: object mismatch")
    return MotiveMorphism(f.source, g.target, compose_graded(f.corr, g.corr))


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------


def motive_of(variety: Variety) -> Motive:
    """The motive of a variety: twist 0 and the diagonal as idempotent."""
    return Motive(variety, 0, GradedCorrespondence.identity(variety))


def unit_motive() -> Motive:
    return motive_of(Variety(()))


def zero_motive() -> Motive:
    """The zero object, represented concretely on the point with the zero
    projector."""
    point = Variety(())
    return Motive(point, 0, GradedCorrespondence.zero(point, point))


def lefschetz_motive() -> Motive:
    """The summand of the projective line cut out by the projector
    [P^1 x point] = h2."""
    line = Variety((1,))
    square = line * line
    beta = GradedCorrespondence(line, line, Cycle.hyperplane(square, 1))
    return Motive(line, 0, beta)


def tate_motive() -> Motive:
    """The twisting object: the unit motive with twist -1."""
    return tate_twist(unit_motive(), 1)


def tensor(m: Motive, n: Motive) -> Motive:
    """Tensor product: varieties multiply, twists add, and the idempotents
    combine as the external product rearranged onto (X x Y) x (X x Y)."""
    product = m.variety * n.variety
    cycle = _external_product(m.variety, m.variety, n.variety, n.variety,
                              m.idempotent.cycle, n.idempotent.cycle)
    return Motive(product, m.twist + n.twist, GradedCorrespondence(product, product, cycle))


def tensor_morphism(f: MotiveMorphism, g: MotiveMorphism) -> MotiveMorphism:
    """Tensor product of morphisms, on the tensor products of the objects."""
    cycle = _external_product(
        f.source.variety, f.target.variety, g.source.variety, g.target.variety,
        f.corr.cycle, g.corr.cycle,
    )
    source = tensor(f.source, g.source)
    target = tensor(f.target, g.target)
    corr = GradedCorrespondence(source.variety, target.variety, cycle)
    return MotiveMorphism(source, target, corr)


def _external_product(x: Variety, x2: Variety, y: Variety, y2: Variety,
                      alpha: Cycle, beta: Cycle) -> Cycle:
    """Place a cycle on X x X' and a cycle on Y x Y' onto (X x Y) x (X' x Y')."""
    # cartesian gives the X x X' x Y x Y' order; swap the middle blocks
    raw = cartesian(alpha, beta)
    kx, kx2 = x.num_factors, x2.num_factors
    ky, ky2 = y.num_factors, y2.num_factors
    order = (
        tuple(range(kx))
        + tuple(range(kx + kx2, kx + kx2 + ky))
        + tuple(range(kx, kx + kx2))
        + tuple(range(kx + kx2 + ky, kx + kx2 + ky + ky2))
    )
    return permute_factors(raw, order)


def dual(m: Motive) -> Motive:
    """Dual motive: transpose the idempotent and reflect the twist at dim X."""
    return Motive(m.variety, m.variety.dim - m.twist, m.idempotent.transpose())


def tate_twist(m: Motive, i: int) -> Motive:
    """The i-th twist lowers the twist index by i and keeps everything else."""
    return Motive(m.variety, m.twist - i, m.idempotent)


def split_idempotent(m: Motive, p: MotiveMorphism) -> tuple[Motive, MotiveMorphism, MotiveMorphism]:
    """Split a projector p on m: return (image, section, retraction) with
    retraction o section the identity of the image and section o retraction
    equal to p.  The zero projector splits off the zero motive."""
    if p.source != m or p.target != m:
        raise InvalidInputError("projector is not an endomorphism of the given motive")
    if compose_motive(p, p) != p:
        raise InvalidInputError("morphism is not idempotent")
    if p.is_zero:
        image = zero_motive()
        section = MotiveMorphism.zero(image, m)
        retraction = MotiveMorphism.zero(m, image)
        return image, section, retraction
    image = Motive(m.variety, m.twist, p.corr)
    section = MotiveMorphism(image, m, p.corr)
    retraction = MotiveMorphism(m, image, p.corr)
    return image, section, retraction


# ---------------------------------------------------------------------------
# formal direct sums (the additive hull, as a matrix category)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormalSum:
    """A formal direct sum of motives; morphisms between sums are matrices."""

    summands: tuple[Motive, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.summands, tuple):
            object.__setattr__(self, "summands", tuple(self.summands))

    def __len__(self) -> int:
        return len(self.summands)

    def identity_morphism(self) -> "FormalSumMorphism":
        rows = tuple(
            tuple(
                s.identity_morphism() if i == j else MotiveMorphism.zero(s2, s)
                for j, s2 in enumerate(self.summands)
            )
            for i, s in enumerate(self.summands)
        )
        return FormalSumMorphism(self, self, rows)


@dataclass(frozen=True)
class FormalSumMorphism:
    """A matrix of motive morphisms; entry [i][j] maps source summand j to
    target summand i, and composition is matrix composition."""

    source: FormalSum
    target: FormalSum
    matrix: tuple[tuple[MotiveMorphism, ...], ...]

    def __post_init__(self) -> None:
        if len(self.matrix) != len(self.target):
            raise InvalidInputError("matrix has wrong number of rows")
        for i, row in enumerate(self.matrix):
            if len(row) != len(self.source):
                raise InvalidInputError("matrix has wrong number of columns")
            for j, entry in enumerate(row):
                if entry.source != self.source.summands[j] or entry.target != self.target.summands[i]:
                    raise InvalidInputError(f"matrix entry ({i}, {j}) connects the wrong summands")

    def then(self, other: "FormalSumMorphism") -> "FormalSumMorphism":
        if self.target != other.source:
            raise DomainMismatchError("matrix morphisms are not composable")
        rows = []
        for i in range(len(other.target)):
            row = []
            for j in range(len(self.source)):
                acc = MotiveMorphism.zero(self.source.summands[j], other.target.summands[i])
                for k in range(len(self.target)):
                    acc = acc + compose_motive(self.matrix[k][j], other.matrix[i][k])
                row.append(acc)
            rows.append(tuple(row))
        return FormalSumMorphism(self.source, other.target, tuple(rows))


# ---------------------------------------------------------------------------
# the orbit category (twists forgotten)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitMorphism:
    """A morphism in the category of motives with twists forgotten: a finite
    family of components indexed by the twist offset i, the component at i
    being a morphism into the target twisted i steps.  Concretely component
    i is a sandwiched correspondence of pure degree (s - r) + i, so the
    component family is the degree decomposition of a graded correspondence.
    Zero components are not stored."""

    source: Motive
    target: Motive
    components: dict[int, GradedCorrespondence]

    def __post_init__(self) -> None:
        base = self.target.twist - self.source.twist
        clean: dict[int, GradedCorrespondence] = {}
        for i, c in self.components.items():
            if not isinstance(i, int) or isinstance(i, bool):
                raise InvalidInputError(f"component index must be an integer, got {i!r}")
            if c.is_zero:
                continue
            if c.source != self.source.variety or c.target != self.target.variety:
                raise InvalidInputError(f"component {i} does not match the motives' varieties")
            if not c.is_pure_degree(base + i):
                raise InvalidInputError(
                    f"component {i} must have pure degree {base + i}"
                )
            sandwiched = compose_graded(
                compose_graded(self.source.idempotent, c), self.target.idempotent
            )
            if sandwiched != c:
                raise InvalidInputError(f"component {i} is not fixed by the motive idempotents")
            clean[i] = c
        object.__setattr__(self, "components", clean)

    @staticmethod
    def identity(m: Motive) -> "OrbitMorphism":
        return OrbitMorphism(m, m, {0: m.idempotent})

    @staticmethod
    def from_graded(source: Motive, target: Motive, corr: GradedCorrespondence) -> "OrbitMorphism":
        """Decompose a graded correspondence into orbit components: the
        component at offset i is the degree (s - r) + i part."""
        base = target.twist - source.twist
        comps = {d - base: corr.degree_component(d) for d in corr.degrees()}
        return OrbitMorphism(source, target, comps)

    @staticmethod
    def from_morphism(f: MotiveMorphism) -> "OrbitMorphism":
        return OrbitMorphism(f.source, f.target, {0: f.corr})

    def component(self, i: int) -> GradedCorrespondence:
        if i in self.components:
            return self.components[i]
        return GradedCorrespondence.zero(self.source.variety, self.target.variety)

    def indices(self) -> list[int]:
        return sorted(self.components)

    def total_correspondence(self) -> GradedCorrespondence:
        acc = GradedCorrespondence.zero(self.source.variety, self.target.variety)
        for c in self.components.values():
            acc = acc + c
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrbitMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "components": {
                str(i): self.components[i].to_json() for i in self.indices()
            },
        }

    @classmethod
    def from_json(cls, data: object) -> "OrbitMorphism":
        if not isinstance(data, dict) or not {"source", "target", "components"} <= set(data):
            raise InvalidInputError(
                f"orbit morphism must be an object with 'source', 'target', 'components', got {data!r}"
            )
        source = Motive.from_json(data["source"])
        target = Motive.from_json(data["target"])
        raw = data["components"]
        if not isinstance(raw, dict):
            raise InvalidInputError(f"'components' must be an object, got {raw!r}")
        comps = {}
        for key, value in raw.items():
            try:
                i = int(key)
            except ValueError as exc:
                raise InvalidInputError(f"component key {key!r} is not an integer") from exc
            comps[i] = GradedCorrespondence.from_json(value)
        return cls(source, target, comps)


def orbit_compose(f: OrbitMorphism, g: OrbitMorphism) -> OrbitMorphism:
    """Composite in the orbit category (f first, then g): the component at
    offset k sums the composites of components at offsets i and j with
    i + j = k.  Twisting shifts indices only, so each summand is a plain
    composition of the underlying correspondences."""
    if f.target != g.source:
        raise DomainMismatchError("orbit morphisms are not composable: object mismatch")
    acc: dict[int, GradedCorrespondence] = {}
    for i, ci in f.components.items():
        for j, cj in g.components.items():
            k = i + j
            piece = compose_graded(ci, cj)
            acc[k] = acc[k] + piece if k in acc else piece
    return OrbitMorphism(f.source, g.target, acc)


def degree_zero_rigidify(f: OrbitMorphism, g: OrbitMorphism) -> tuple[MotiveMorphism, MotiveMorphism]:
    """Extract mutually inverse twist-preserving morphisms from a mutually
    inverse pair of orbit morphisms supported in nonnegative offsets.

    Raises PreconditionError when the pair is not mutually inverse and
    SupportConditionError when either morphism has a component at a negative
    offset.  Returns the offset-0 components, which are then mutual inverses
    on the nose (verified)."""
    m, n = f.source, f.target
    if g.source != n or g.target != m:
        raise DomainMismatchError("orbit morphisms do not form a round trip")
    if orbit_compose(f, g) != OrbitMorphism.identity(m) or orbit_compose(g, f) != OrbitMorphism.identity(n):
        raise PreconditionError("orbit morphisms are not mutually inverse")
    if any(i < 0 for i in f.components) or any(j < 0 for j in g.components):
        raise SupportConditionError("mutually inverse pair has components at negative offsets")
    f0 = MotiveMorphism(m, n, f.component(0))
    g0 = MotiveMorphism(n, m, g.component(0))
    if compose_motive(f0, g0) != m.identity_morphism() or compose_motive(g0, f0) != n.identity_morphism():
        raise PreconditionError("offset-0 components failed to invert each other")
    return f0, g0


# ---------------------------------------------------------------------------
# kernel pipelines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrlovReport:
    """Outcome of the derived-equivalence pipeline for a kernel pair."""

    mutually_inverse: bool
    isomorphic_modulo_twist: bool
    support_ok: bool
    exact_isomorphism: bool
    verdict: str
    support_floors: tuple[int | float, int | float]
    degree_zero_pair: tuple[MotiveMorphism, MotiveMorphism] | None


def orlov_pipeline(e: KKernel, f: KKernel) -> OrlovReport:
    """Decide what a mutually inverse kernel pair proves about the motives.

    The correspondence images are checked for mutual inversion (which
    already gives an isomorphism of motives with twists forgotten); when
    both images also have no components below codimension n = dim X, the
    degree-zero parts rigidify to an isomorphism of the motives themselves.
    """
    x, y = e.source, e.target
    if f.source != y or f.target != x:
        raise DomainMismatchError("kernels do not form a round trip")
    n = x.dim
    if y.dim != n:
        raise InvalidInputError("kernel pair requires source and target of equal dimension")
    a = chow_image(e)
    b = chow_image(f)
    inverse = (
        compose_graded(a, b) == GradedCorrespondence.identity(x)
        and compose_graded(b, a) == GradedCorrespondence.identity(y)
    )
    floors = (support_codim_floor(a.cycle), support_codim_floor(b.cycle))
    if not inverse:
        return OrlovReport(False, False, False, False, "not-equivalent", floors, None)
    support_ok = floors[0] >= n and floors[1] >= n
    if not support_ok:
        return OrlovReport(True, True, False, False, "tate-twist-only", floors, None)
    mx, my = motive_of(x), motive_of(y)
    pair = degree_zero_rigidify(
        OrbitMorphism.from_graded(mx, my, a), OrbitMorphism.from_graded(my, mx, b)
    )
    return OrlovReport(True, True, True, True, "exact-isomorphism", floors, pair)


def nc_hom(kernel: KKernel) -> KClass:
    """The hom-set representative of a kernel in the noncommutative-motive
    picture: the kernel's own K-class.  Composition there is k_compose."""
    return kernel.kclass


def compatibility_check(kernel: KKernel, chow_side: GradedCorrespondence | None = None) -> bool:
    """Verify that the two routes from kernels to graded correspondences
    agree: the motive-functor route (the correspondence image, overridable
    for negative controls) against the K-class route through the
    ch * sqrt(td) dictionary."""
    if chow_side is None:
        chow_side = chow_image(kernel)
    product = kernel.source * kernel.target
    k_side = GradedCorrespondence(
        kernel.source, kernel.target, nc_hom(kernel).ch * sqrt_todd(product)
    )
    return chow_side == k_side
