"""Simplicial cones and finite windows of the periodic smoothing fans.

Four fan families appear, each an infinite periodic fan presented by a
generator formula:

* ``MumfordNeron``      -- in Z^2, cones <(m,1), (m+1,1)>; smooths the nodal cubic.
* ``HopfSmoothing(e)``  -- in Z^3, cones <(m, e*binom2(m), 1), (m+1, e*binom2(m+1), 1)>.
* ``EllipticSmoothing`` -- in Z^3, cones <(0,n,1), (0,n+1,1)>.
* ``RationalSmoothing(e)`` -- in Z^4, cones spanned by two consecutive Hopf-type
  rays (last coordinate split) and two consecutive elliptic-type rays.

Here binom2(m) = m(m-1)/2 as a polynomial, valid for every integer m.  A
``FanWindow`` is the finite slice of such a fan actually verified; the
constructions are periodic under their lattice group actions, so a window
longer than one period certifies every claim.

Matrices act on row vectors from the right throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Union

from .errors import ArityMismatch, DimMismatch, NotDivisible
from .lattice import IntMatrix, IntVec, extends_to_basis, is_unimodular, rank_of


def binom2(m: int) -> int:
    """m(m-1)/2 for every integer m, negatives included."""
    return m * (m - 1) // 2


@dataclass(frozen=True, slots=True)
class MumfordNeron:
    """The rank-2 chain fan smoothing the Neron 1-gon."""

    AMBIENT_RANK: ClassVar[int] = 2
    ARITY: ClassVar[int] = 1

    def hinge_ray(self, m: int) -> IntVec:
        return IntVec((m, 1))


@dataclass(frozen=True, slots=True)
class HopfSmoothing:
    """The rank-3 chain fan whose central fibre is a degree-e C*-bundle over the infinity-gon."""

    e: int
    AMBIENT_RANK: ClassVar[int] = 3
    ARITY: ClassVar[int] = 1

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("degree e must be a positive integer")

    def hinge_ray(self, m: int) -> IntVec:
        return IntVec((m, self.e * binom2(m), 1))


@dataclass(frozen=True, slots=True)
class EllipticSmoothing:
    """The rank-3 chain fan whose central fibre is a product of the infinity-gon with C*."""

    AMBIENT_RANK: ClassVar[int] = 3
    ARITY: ClassVar[int] = 1

    def hinge_ray(self, n: int) -> IntVec:
        return IntVec((0, n, 1))


@dataclass(frozen=True, slots=True)
class RationalSmoothing:
    """The rank-4 doubly periodic fan: a bundle of infinity-gons over the infinity-gon."""

    e: int
    AMBIENT_RANK: ClassVar[int] = 4
    ARITY: ClassVar[int] = 2

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("degree e must be a positive integer")

    def ray_m(self, m: int) -> IntVec:
        return IntVec((m, self.e * binom2(m), 1, 0))

    def ray_n(self, n: int) -> IntVec:
        return IntVec((0, n, 0, 1))


FanKind = Union[MumfordNeron, HopfSmoothing, EllipticSmoothing, RationalSmoothing]

CHAIN_KINDS = (MumfordNeron, HopfSmoothing, EllipticSmoothing)


@dataclass(frozen=True, slots=True)
class Cone:
    """A simplicial rational cone given by primitive, independent rays.

    The ray tuple is canonicalized to lexicographic order on construction, so
    equal cones compare equal.
    """

    rays: tuple[IntVec, ...]
    rank: int

    def __post_init__(self):
        rays = tuple(sorted(self.rays, key=lambda v: v.entries))
        object.__setattr__(self, "rays", rays)
        if not rays:
            raise ValueError("a cone needs at least one ray")
        if any(v.rank != self.rank for v in rays):
            raise ValueError("all rays must live in the ambient lattice")
        if any(not v.is_primitive() for v in rays):
            raise ValueError("cone rays must be primitive")
        if rank_of([v.entries for v in rays]) != len(rays):
            raise ValueError("cone rays must be linearly independent")


@dataclass(frozen=True, slots=True)
class GroupElement:
    """A lattice automorphism together with bookkeeping torus labels.

    ``torus_part`` records one opaque parameter label per coordinate (such as
    "alpha" or "1"); labels are never evaluated.
    """

    lattice_part: IntMatrix
    torus_part: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "torus_part", tuple(str(s) for s in self.torus_part))
        if not is_unimodular(self.lattice_part):
            raise ValueError("lattice part must be unimodular")
        if len(self.torus_part) != self.lattice_part.dim:
            raise ValueError("one torus label per lattice coordinate")

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "GroupElement":
        return cls(m, ("1",) * m.dim)

    @classmethod
    def translation(cls, labels: tuple[str, ...]) -> "GroupElement":
        return cls(IntMatrix.identity(len(labels)), tuple(labels))


def cone_at(kind: FanKind, index) -> Cone:
    """The cone of the infinite fan at the given index, straight from the generator formula."""
    if isinstance(kind, RationalSmoothing):
        if not (isinstance(index, tuple) and len(index) == 2):
            raise ArityMismatch(f"{type(kind).__name__} indexes cones by a pair (m, n)")
        m, n = index
        rays = (kind.ray_m(m), kind.ray_m(m + 1), kind.ray_n(n), kind.ray_n(n + 1))
        return Cone(rays, kind.AMBIENT_RANK)
    if not isinstance(index, int):
        raise ArityMismatch(f"{type(kind).__name__} indexes cones by a single integer")
    rays = (kind.hinge_ray(index), kind.hinge_ray(index + 1))
    return Cone(rays, kind.AMBIENT_RANK)


def cone_is_smooth(c: Cone) -> bool:
    """Smoothness of the associated toric chart: the rays extend to a lattice basis."""
    return extends_to_basis(c.rays)


def apply(g: GroupElement, c: Cone) -> Cone:
    """Image of a cone under the right action of g's lattice part.

    A matrix of dimension rank+1 acts through the embedding of the ambient
    lattice as the first rank coordinates; the action must preserve that
    sublattice.
    """
    dim = g.lattice_part.dim
    if dim == c.rank:
        return Cone(tuple(v.times(g.lattice_part) for v in c.rays), c.rank)
    if dim == c.rank + 1:
        mapped = []
        for v in c.rays:
            image = IntVec(v.entries + (0,)).times(g.lattice_part)
            if image.entries[-1] != 0:
                raise DimMismatch("action does not preserve the embedded sublattice")
            mapped.append(IntVec(image.entries[:-1]))
        return Cone(tuple(mapped), c.rank)
    raise DimMismatch(f"{dim}x{dim} matrix cannot act on cones of ambient rank {c.rank}")


def share_facet(c1: Cone, c2: Cone) -> bool:
    """True when the common rays of two simplicial cones span a facet of both.

    For simplicial cones with as many rays as their dimension this means the
    cones are distinct and share all but one ray each.
    """
    if len(c1.rays) != len(c2.rays):
        return False
    shared = set(c1.rays) & set(c2.rays)
    return len(shared) == len(c1.rays) - 1


def deflection(kind: FanKind, index, direction: str | None = None) -> IntVec:
    """Second difference v_{i-1} + v_{i+1} - 2 v_i at the hinge ray of an index.

    The hinge ray of index i is the ray shared by the cones at i-1 and i.  The
    result measures the C*-bundle degree of the central fibre over the polygon
    component attached to that hinge: e*(0,1,0) for HopfSmoothing, zero for
    MumfordNeron and EllipticSmoothing, e*(0,1,0,0) in the m-direction and
    zero in the n-direction for RationalSmoothing.
    """
    if isinstance(kind, RationalSmoothing):
        if not (isinstance(index, tuple) and len(index) == 2):
            raise ArityMismatch("RationalSmoothing needs an index pair (m, n)")
        if direction == "m":
            ray, i = kind.ray_m, index[0]
        elif direction == "n":
            ray, i = kind.ray_n, index[1]
        else:
            raise ArityMismatch("direction must be 'm' or 'n' for RationalSmoothing")
    else:
        if direction is not None:
            raise ArityMismatch(f"{type(kind).__name__} has a single index direction")
        if not isinstance(index, int):
            raise ArityMismatch(f"{type(kind).__name__} indexes cones by a single integer")
        ray, i = kind.hinge_ray, index
    return ray(i - 1) + ray(i + 1) - ray(i).scaled(2)


@dataclass(frozen=True)
class FanWindow:
    """A finite, fully materialized slice of one of the infinite fans.

    ``index_range`` holds one inclusive (lo, hi) interval per index axis;
    ``cones`` maps each index in the window to its cone.
    """

    kind: FanKind
    index_range: tuple[tuple[int, int], ...]
    cones: dict

    def indices(self) -> list:
        return sorted(self.cones)


def fan_window(kind: FanKind, bound: int = 16, n_bound: int | None = None) -> FanWindow:
    """Materialize the window of all cone indices with |m| <= bound (and |n| <= n_bound)."""
    if bound < 1:
        raise ValueError("window bound must be at least 1")
    if isinstance(kind, RationalSmoothing):
        nb = bound if n_bound is None else n_bound
        if nb < 1:
            raise ValueError("window bound must be at least 1")
        cones = {
            (m, n): cone_at(kind, (m, n))
            for m in range(-bound, bound + 1)
            for n in range(-nb, nb + 1)
        }
        return FanWindow(kind, ((-bound, bound), (-nb, nb)), cones)
    if n_bound is not None:
        raise ArityMismatch(f"{type(kind).__name__} has a single index axis")
    cones = {m: cone_at(kind, m) for m in range(-bound, bound + 1)}
    return FanWindow(kind, ((-bound, bound),), cones)


# Lattice parts of the group actions attached to each fan family.


def mumford_shift() -> IntMatrix:
    """Moves the Neron infinity-gon cone at m to the one at m+1."""
    return IntMatrix(((1, 0), (1, 1)))


def hopf_shift(e: int) -> IntMatrix:
    """Moves the degree-e Hopf-type cone at m to the one at m+1; lies in SL3(Z)."""
    return IntMatrix(((1, e, 0), (0, 1, 0), (1, 0, 1)))


def elliptic_shift() -> IntMatrix:
    """Moves the elliptic-type cone at n to the one at n+1; lies in SL3(Z)."""
    return IntMatrix(((1, 0, 0), (0, 1, 0), (0, 1, 1)))


def elliptic_twist(e: int, w: int) -> IntMatrix:
    """Lattice part of the base-translation generator; fixes every fan ray.

    Requires w >= 1 and w | e so that the exponent e/w is integral.
    """
    if w < 1 or e % w != 0:
        raise NotDivisible(f"warp {w} must be a positive divisor of degree {e}")
    return IntMatrix(((1, e // w, 0), (0, 1, 0), (0, 0, 1)))


def rational_shift_m(e: int) -> IntMatrix:
    """Moves the rank-4 cone at (m, n) to (m+1, n); acts on Z^4 + Z and lies in SL5(Z)."""
    return IntMatrix(
        (
            (1, e, 0, 0, 0),
            (0, 1, 0, 0, 0),
            (1, 0, 1, 0, 0),
            (0, 0, 0, 1, 0),
            (0, 1, 0, 0, 1),
        )
    )


def rational_shift_n() -> IntMatrix:
    """Moves the rank-4 cone at (m, n) to (m, n+1); acts on Z^4 + Z and lies in SL5(Z)."""
    return IntMatrix(
        (
            (1, 0, 0, 0, 0),
            (0, 1, 0, 0, 0),
            (0, 0, 1, 0, 0),
            (0, 1, 0, 1, 0),
            (0, 0, 0, 0, 1),
        )
    )


def kind_name(kind: FanKind) -> str:
    return {
        MumfordNeron: "mumford_neron",
        HopfSmoothing: "hopf_smoothing",
        EllipticSmoothing: "elliptic_smoothing",
        RationalSmoothing: "rational_smoothing",
    }[type(kind)]


def kind_params(kind: FanKind) -> dict:
    if isinstance(kind, (HopfSmoothing, RationalSmoothing)):
        return {"e": kind.e}
    return {}


def window_payload(window: FanWindow) -> dict:
    """JSON-ready document for a fan window, with byte-stable ordering."""
    if isinstance(window.kind, RationalSmoothing):
        axis_names = ("m", "n")
    elif isinstance(window.kind, EllipticSmoothing):
        axis_names = ("n",)
    else:
        axis_names = ("m",)
    cones = []
    for index in window.indices():
        cone = window.cones[index]
        cones.append(
            {
                "index": list(index) if isinstance(index, tuple) else index,
                "rays": [list(v.entries) for v in cone.rays],
            }
        )
    return {
        "kind": kind_name(window.kind),
        "params": kind_params(window.kind),
        "range": {name: list(span) for name, span in zip(axis_names, window.index_range)},
        "cones": cones,
    }
