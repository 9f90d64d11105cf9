"""Fans of strongly convex rational polyhedral cones.

A ``Fan`` is the combinatorial presentation of a toric variety: a lattice
rank, a list of primitive ray generators and a list of maximal cones given
by ray index sets.  ``validate_fan`` checks the fan axioms exactly (over the
integers/rationals, never floats) and produces a canonicalized fan: rays are
sorted lexicographically and cone index sets follow that order, so equal
fans have equal representations.

Degenerate fans (rays not spanning the ambient lattice) are legal; they
describe varieties with a torus factor, split off by ``split_torus_factor``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from . import polyhedra
from .lattice import (
    IntMatrix,
    ResourceLimitError,
    Vec,
    matrix_rank,
    primitive_vector,
    smith_normal_form,
    vec_dot,
    vec_gcd,
    vec_is_zero,
)

MAX_RANK = 6
MAX_RAYS = 64


class FanValidationError(ValueError):
    """Raised when a candidate fan violates the fan axioms.

    Carries the complete list of violations, not just the first.
    """

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class DegenerateFanError(ValueError):
    """Operation requires rays that span the ambient lattice.

    Callers should split off the torus factor first (``split_torus_factor``)
    and work with the reduced fan.
    """


@dataclass(frozen=True)
class Location:
    """Minimal cone of a fan containing a given lattice point.

    ``face_rays`` are the ray indices generating the face (empty for the
    zero cone); ``max_cone`` is the index of one maximal cone containing it
    (None only for the empty fan of the torus).
    """

    face_rays: tuple[int, ...]
    max_cone: Optional[int]

    @property
    def dim_hint(self) -> int:
        return len(self.face_rays)


@dataclass(frozen=True)
class ConeProfile:
    ray_count: int
    dim: int
    simplicial: bool
    smooth: bool
    index: int  # index of the ray sublattice in the saturation of its span


@dataclass(frozen=True)
class SmoothnessProfile:
    cones: tuple[ConeProfile, ...]
    simplicial: bool
    smooth: bool


class Fan:
    """Validated fan.  Construct via :func:`validate_fan`.

    Immutable; geometric cone data (facet descriptions) is computed on
    demand and cached, which is safe for concurrent readers.
    """

    __slots__ = ("rank", "rays", "max_cones", "_hreps", "_dict")

    def __init__(self, rank: int, rays: tuple[Vec, ...], max_cones: tuple[tuple[int, ...], ...]):
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", max_cones)
        object.__setattr__(self, "_hreps", {})
        object.__setattr__(self, "_dict", {})

    def __setattr__(self, *_):  # pragma: no cover - immutability guard
        raise AttributeError("Fan is immutable")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Fan)
            and self.rank == other.rank
            and self.rays == other.rays
            and self.max_cones == other.max_cones
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.rays, self.max_cones))

    def __repr__(self) -> str:
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"

    # -- basic data ---------------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_rays(self, cone: Sequence[int]) -> tuple[Vec, ...]:
        return tuple(self.rays[i] for i in cone)

    def ray_matrix(self) -> IntMatrix:
        """Rows are the ray generators (n_rays x rank)."""
        return IntMatrix(self.rays, cols=self.rank)

    @property
    def span_rank(self) -> int:
        key = "span_rank"
        if key not in self._dict:
            if self.n_rays == 0:
                self._dict[key] = 0
            else:
                self._dict[key] = matrix_rank(self.ray_matrix())
        return self._dict[key]

    @property
    def is_degenerate(self) -> bool:
        return self.span_rank < self.rank

    # -- cone geometry ------------------------------------------------------

    def cone_hrep(self, cone_index: int) -> polyhedra.HRep:
        if cone_index not in self._hreps:
            gens = self.cone_rays(self.max_cones[cone_index])
            self._hreps[cone_index] = polyhedra.facet_description(gens, self.rank)
        return self._hreps[cone_index]

    def max_cone_contains(self, cone_index: int, v: Sequence[int]) -> bool:
        return self.cone_hrep(cone_index).contains(v)

    def locate(self, v: Sequence[int]) -> Optional[Location]:
        """Minimal cone of the fan containing v, or None if v is outside
        the support."""
        if len(v) != self.rank:
            raise ValueError("point of wrong rank")
        if vec_is_zero(v) and not self.max_cones:
            return Location(face_rays=(), max_cone=None)
        for ci, cone in enumerate(self.max_cones):
            h = self.cone_hrep(ci)
            if not h.contains(v):
                continue
            tight = [u for u in h.inequalities if vec_dot(u, v) == 0]
            face = tuple(
                i
                for i in cone
                if all(vec_dot(u, self.rays[i]) == 0 for u in tight)
            )
            return Location(face_rays=face, max_cone=ci)
        return None

    def minimal_cone_containing(self, v: Sequence[int]) -> Optional[Location]:
        return self.locate(v)

    def max_cones_containing(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            ci for ci in range(len(self.max_cones)) if self.max_cone_contains(ci, v)
        )

    # -- invariants ---------------------------------------------------------

    @property
    def smoothness(self) -> SmoothnessProfile:
        key = "smoothness"
        if key not in self._dict:
            profiles = []
            for cone in self.max_cones:
                profiles.append(cone_profile(self.cone_rays(cone)))
            self._dict[key] = SmoothnessProfile(
                cones=tuple(profiles),
                simplicial=all(p.simplicial for p in profiles),
                smooth=all(p.smooth for p in profiles),
            )
        return self._dict[key]

    def smoothness_profile(self) -> SmoothnessProfile:
        return self.smoothness

    def face_is_smooth(self, ray_indices: Sequence[int]) -> bool:
        if not ray_indices:
            return True  # the zero cone
        return cone_profile(self.cone_rays(ray_indices)).smooth

    def split_torus_factor(self) -> "TorusFactorSplit":
        return split_torus_factor(self)


def cone_profile(rays: Sequence[Vec]) -> ConeProfile:
    """Simpliciality/smoothness/multiplicity of a single cone."""
    if not rays:
        return ConeProfile(ray_count=0, dim=0, simplicial=True, smooth=True, index=1)
    snf = smith_normal_form(IntMatrix(rays))
    dim = snf.rank
    simplicial = dim == len(rays)
    index = 1
    for d in snf.invariant_factors:
        index *= d
    return ConeProfile(
        ray_count=len(rays),
        dim=dim,
        simplicial=simplicial,
        smooth=simplicial and index == 1,
        index=index,
    )


@dataclass(frozen=True)
class TorusFactorSplit:
    """Result of splitting off the torus factor of a (possibly degenerate) fan.

    ``change_of_basis`` is unimodular; applied to an original ray (column
    action) it yields the corresponding reduced ray padded with
    ``torus_rank`` trailing zeros.  ``ray_map[i]`` is the index in
    ``reduced_fan.rays`` of the image of original ray ``i``.
    """

    reduced_fan: Fan
    torus_rank: int
    change_of_basis: IntMatrix
    ray_map: tuple[int, ...]


def split_torus_factor(fan: Fan) -> TorusFactorSplit:
    rank = fan.rank
    if fan.n_rays == 0:
        reduced = validate_fan(0, [], [])
        return TorusFactorSplit(
            reduced_fan=reduced,
            torus_rank=rank,
            change_of_basis=IntMatrix.identity(rank),
            ray_map=(),
        )
    # Columns are rays; U from the Smith reduction maps the ray span onto the
    # first span_rank coordinates.
    R = fan.ray_matrix().T
    snf = smith_normal_form(R)
    s = snf.rank
    U = snf.U
    reduced_rays = []
    for ray in fan.rays:
        img = U.apply(ray)
        assert all(x == 0 for x in img[s:]), "span reduction failed"
        reduced_rays.append(img[:s])
    reduced = validate_fan(s, reduced_rays, fan.max_cones)
    # validate_fan re-sorts rays; recover where each original ray went
    pos = {ray: i for i, ray in enumerate(reduced.rays)}
    ray_map = tuple(pos[tuple(r)] for r in reduced_rays)
    return TorusFactorSplit(
        reduced_fan=reduced,
        torus_rank=rank - s,
        change_of_basis=U,
        ray_map=ray_map,
    )


def validate_fan(
    rank: int,
    rays: Sequence[Sequence[int]],
    max_cones: Sequence[Sequence[int]],
    *,
    max_rank: int = MAX_RANK,
    max_rays: int = MAX_RAYS,
) -> Fan:
    """Check the fan axioms and return the canonicalized fan.

    Raises :class:`FanValidationError` carrying every detected violation, or
    :class:`ResourceLimitError` when the instance exceeds the size guards.

    Checks: primitive distinct nonzero rays; well-formed cone index sets;
    every ray in some maximal cone; each maximal cone strongly convex with
    every listed ray extreme; no maximal cone contained in another; every
    pairwise intersection of maximal cones is a common face of both.
    """
    if rank < 0:
        raise FanValidationError(["rank must be nonnegative"])
    if rank > max_rank:
        raise ResourceLimitError(f"rank {rank} exceeds guard {max_rank}")
    if len(rays) > max_rays:
        raise ResourceLimitError(f"{len(rays)} rays exceed guard {max_rays}")

    problems: list[str] = []
    clean_rays: list[Vec] = []
    for i, ray in enumerate(rays):
        v = tuple(int(x) for x in ray)
        if len(v) != rank:
            problems.append(f"ray {i} has {len(v)} coordinates, expected {rank}")
            continue
        if vec_is_zero(v):
            problems.append(f"ray {i} is zero")
            continue
        if vec_gcd(v) != 1:
            problems.append(f"ray {i} = {list(v)} is not primitive")
            continue
        clean_rays.append(v)
    structural_ok = len(clean_rays) == len(rays)
    if structural_ok:
        seen: dict[Vec, int] = {}
        for i, v in enumerate(clean_rays):
            if v in seen:
                problems.append(f"ray {i} duplicates ray {seen[v]}")
                structural_ok = False
            else:
                seen[v] = i

    cones: list[tuple[int, ...]] = []
    n = len(rays)
    for ci, cone in enumerate(max_cones):
        idx = [int(i) for i in cone]
        if not idx:
            problems.append(f"max cone {ci} is empty")
            structural_ok = False
            continue
        bad = [i for i in idx if not 0 <= i < n]
        if bad:
            problems.append(f"max cone {ci} references unknown rays {bad}")
            structural_ok = False
            continue
        if len(set(idx)) != len(idx):
            problems.append(f"max cone {ci} lists a ray twice")
            structural_ok = False
            continue
        cones.append(tuple(sorted(idx)))

    if not structural_ok:
        raise FanValidationError(problems)

    # canonical order: lex-sorted rays, remapped and sorted cones
    order = sorted(range(n), key=lambda i: clean_rays[i])
    new_index = {old: new for new, old in enumerate(order)}
    canon_rays = tuple(clean_rays[i] for i in order)
    canon_cones = sorted(tuple(sorted(new_index[i] for i in cone)) for cone in cones)
    dup = {c for c in canon_cones if canon_cones.count(c) > 1}
    for c in dup:
        problems.append(f"max cone {list(c)} listed more than once")
    canon_cones = sorted(set(canon_cones))

    covered = {i for cone in canon_cones for i in cone}
    for i in range(n):
        if i not in covered:
            problems.append(f"ray {i} = {list(canon_rays[i])} lies in no max cone")

    # geometric checks
    gens_of = [tuple(canon_rays[i] for i in cone) for cone in canon_cones]
    hreps: list[polyhedra.HRep] = []
    for cone, gens in zip(canon_cones, gens_of):
        lines, extreme = polyhedra.extreme_rays(gens, rank)
        hreps.append(polyhedra.facet_description(gens, rank))
        if lines:
            problems.append(
                f"max cone {list(cone)} is not strongly convex (contains a line)"
            )
            continue
        extreme_set = set(extreme)
        for i, g in zip(cone, gens):
            if g not in extreme_set:
                problems.append(
                    f"ray {i} = {list(g)} is not an extreme ray of max cone {list(cone)}"
                )

    if problems:
        raise FanValidationError(problems)

    for a in range(len(canon_cones)):
        for b in range(a + 1, len(canon_cones)):
            ca, cb = canon_cones[a], canon_cones[b]
            ga, gb = gens_of[a], gens_of[b]
            ha, hb = hreps[a], hreps[b]
            a_in_b = all(hb.contains(g) for g in ga)
            b_in_a = all(ha.contains(g) for g in gb)
            if a_in_b:
                problems.append(f"max cone {list(ca)} is contained in max cone {list(cb)}")
            if b_in_a:
                problems.append(f"max cone {list(cb)} is contained in max cone {list(ca)}")
            if a_in_b or b_in_a:
                continue
            # relative-interior separator for the face-intersection test
            normals = [g for g in ga] + [tuple(-x for x in g) for g in gb]
            _, qrays = polyhedra.dual_description(normals, rank)
            u = tuple(sum(q[j] for q in qrays) for j in range(rank))
            ta = [i for i, g in zip(ca, ga) if vec_dot(u, g) == 0]
            tb = [i for i, g in zip(cb, gb) if vec_dot(u, g) == 0]
            ok = all(hb.contains(canon_rays[i]) for i in ta) and all(
                ha.contains(canon_rays[i]) for i in tb
            )
            if not ok or set(ta) != set(tb):
                problems.append(
                    f"intersection of max cones {list(ca)} and {list(cb)} "
                    f"is not a common face"
                )

    if problems:
        raise FanValidationError(problems)

    return Fan(rank=rank, rays=canon_rays, max_cones=tuple(canon_cones))
