"""Toric isomorphism of fans, with torus-factor cancellation.

Two fans present isomorphic toric varieties exactly when a unimodular lattice
map carries one fan onto the other, matching rays to rays and max cones to
max cones.  The search fixes a maximal independent subset of the first fan's
rays, tries every injective assignment of those rays into the second fan's
rays (lexicographic order, first hit wins), solves for the lattice map over
the rationals, and keeps integral unimodular solutions that induce full ray
and cone bijections.  Cheap invariants (ray/cone counts, class group,
smoothness data) run first, but only ever to reject.

Degenerate fans are never compared directly: both sides are split into a
torus factor and a non-degenerate core, and the cores are compared only when
the torus ranks agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Optional, Sequence

from .divisors import class_group
from .fan import Fan, TorusFactorSplit, split_torus_factor
from .lattice import IntMatrix, ResourceLimitError, Vec, determinant, matrix_rank

MAX_ISO_ASSIGNMENTS = 2_000_000


@dataclass(frozen=True)
class FanIso:
    """Unimodular lattice map carrying one fan onto another.

    ``matrix`` maps the first fan's lattice to the second's (column action);
    ``ray_bijection[i]`` is the index of the image of ray i, and
    ``cone_bijection[c]`` the index of the image of max cone c.
    """

    matrix: IntMatrix
    ray_bijection: tuple[int, ...]
    cone_bijection: tuple[int, ...]


def verify_fan_iso(a: Fan, b: Fan, iso: FanIso) -> list[str]:
    """Independent soundness check of a claimed isomorphism."""
    problems = []
    if abs(determinant(iso.matrix)) != 1:
        problems.append("matrix is not unimodular")
    if sorted(iso.ray_bijection) != list(range(b.n_rays)) or a.n_rays != b.n_rays:
        problems.append("ray map is not a bijection")
    else:
        for i in range(a.n_rays):
            if iso.matrix.apply(a.rays[i]) != b.rays[iso.ray_bijection[i]]:
                problems.append(f"ray {i} does not map to its assigned ray")
    if sorted(iso.cone_bijection) != list(range(len(b.max_cones))) or len(
        a.max_cones
    ) != len(b.max_cones):
        problems.append("cone map is not a bijection")
    elif not problems:
        for c, cone in enumerate(a.max_cones):
            image = tuple(sorted(iso.ray_bijection[i] for i in cone))
            if image != b.max_cones[iso.cone_bijection[c]]:
                problems.append(f"max cone {c} does not map to its assigned cone")
    return problems


def _profile_multiset(fan: Fan):
    return sorted(
        (p.ray_count, p.dim, p.simplicial, p.smooth, p.index)
        for p in fan.smoothness.cones
    )


def _prefilter_reject(a: Fan, b: Fan) -> Optional[str]:
    """Isomorphism-invariant data; mismatches prove non-isomorphism."""
    if a.rank != b.rank:
        return f"lattice ranks differ: {a.rank} != {b.rank}"
    if a.n_rays != b.n_rays:
        return f"ray counts differ: {a.n_rays} != {b.n_rays}"
    if len(a.max_cones) != len(b.max_cones):
        return f"max-cone counts differ: {len(a.max_cones)} != {len(b.max_cones)}"
    if sorted(map(len, a.max_cones)) != sorted(map(len, b.max_cones)):
        return "max-cone size multisets differ"
    pa, pb = _profile_multiset(a), _profile_multiset(b)
    if pa != pb:
        return "cone smoothness/multiplicity profiles differ"
    ca, cb = str(class_group(a).group), str(class_group(b).group)
    if ca != cb:
        return f"class groups differ: {ca} != {cb}"
    return None


def _independent_ray_subset(fan: Fan) -> list[int]:
    """Lex-least maximal independent subset of the rays (size = rank,
    since the fan is non-degenerate)."""
    chosen: list[int] = []
    rows: list[Vec] = []
    for i in range(fan.n_rays):
        candidate = rows + [fan.rays[i]]
        if matrix_rank(IntMatrix(candidate, cols=fan.rank)) == len(candidate):
            chosen.append(i)
            rows.append(fan.rays[i])
        if len(chosen) == fan.rank:
            break
    return chosen


def _adjugate(m: IntMatrix) -> IntMatrix:
    n = m.rows
    if n == 0:
        return IntMatrix((), cols=0)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[r, c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            sign = -1 if (i + j) % 2 else 1
            cof[i][j] = sign * determinant(IntMatrix(minor, cols=n - 1))
    # adjugate = transpose of the cofactor matrix
    return IntMatrix(tuple(zip(*cof)), cols=n)


def fan_isomorphic(a: Fan, b: Fan) -> Optional[FanIso]:
    """Search for a fan isomorphism; None when provably none exists.

    Both fans must be non-degenerate (their rays span); degenerate inputs
    belong to ``toric_isomorphism``, which cancels torus factors first.
    """
    if a.is_degenerate or b.is_degenerate:
        raise ValueError(
            "fan_isomorphic requires non-degenerate fans; "
            "use toric_isomorphism for torus-factor cancellation"
        )
    if _prefilter_reject(a, b) is not None:
        return None
    if a.rank == 0:
        iso = FanIso(
            matrix=IntMatrix((), cols=0),
            ray_bijection=(),
            cone_bijection=tuple(range(len(a.max_cones))),
        )
        return iso if not verify_fan_iso(a, b, iso) else None

    base = _independent_ray_subset(a)
    assert len(base) == a.rank
    r_mat = IntMatrix(tuple(a.rays[i] for i in base), cols=a.rank).T
    det_r = determinant(r_mat)
    assert det_r != 0
    adj_r = _adjugate(r_mat)

    n_assign = factorial(b.n_rays) // factorial(b.n_rays - a.rank)
    if n_assign > MAX_ISO_ASSIGNMENTS:
        raise ResourceLimitError(
            f"isomorphism search would try {n_assign} ray assignments "
            f"(limit {MAX_ISO_ASSIGNMENTS})"
        )

    for assign in permutations(range(b.n_rays), a.rank):
        w_mat = IntMatrix(tuple(b.rays[j] for j in assign), cols=b.rank).T
        # L = W R^{-1} = W adj(R) / det(R); keep only integral candidates
        num = w_mat @ adj_r
        if any(x % det_r for row in num for x in row):
            continue
        L = IntMatrix(
            tuple(tuple(x // det_r for x in row) for row in num), cols=a.rank
        )
        if abs(determinant(L)) != 1:
            continue
        iso = _complete_bijections(a, b, L)
        if iso is not None:
            assert not verify_fan_iso(a, b, iso)
            return iso
    return None


def _complete_bijections(a: Fan, b: Fan, L: IntMatrix) -> Optional[FanIso]:
    ray_index = {ray: j for j, ray in enumerate(b.rays)}
    ray_map = []
    for i in range(a.n_rays):
        j = ray_index.get(L.apply(a.rays[i]))
        if j is None:
            return None
        ray_map.append(j)
    if len(set(ray_map)) != b.n_rays:
        return None
    cone_index = {cone: c for c, cone in enumerate(b.max_cones)}
    cone_map = []
    for cone in a.max_cones:
        image = tuple(sorted(ray_map[i] for i in cone))
        c = cone_index.get(image)
        if c is None:
            return None
        cone_map.append(c)
    if len(set(cone_map)) != len(b.max_cones):
        return None
    return FanIso(
        matrix=L, ray_bijection=tuple(ray_map), cone_bijection=tuple(cone_map)
    )


@dataclass(frozen=True)
class IsoReport:
    """Outcome of the toric isomorphism decision with torus cancellation."""

    isomorphic: bool
    reason: str
    torus_ranks: tuple[int, int]
    splits: tuple[TorusFactorSplit, TorusFactorSplit]
    iso: Optional[FanIso]  # between the reduced (non-degenerate) fans


def toric_isomorphism(a: Fan, b: Fan) -> IsoReport:
    """Decide isomorphism of the presented varieties, degenerate fans allowed.

    Torus factors are split off both sides; the varieties are isomorphic
    exactly when the torus ranks agree and the reduced fans are isomorphic.
    """
    sa = split_torus_factor(a)
    sb = split_torus_factor(b)
    ranks = (sa.torus_rank, sb.torus_rank)
    if sa.torus_rank != sb.torus_rank:
        return IsoReport(
            isomorphic=False,
            reason=f"torus factor ranks differ: {sa.torus_rank} != {sb.torus_rank}",
            torus_ranks=ranks,
            splits=(sa, sb),
            iso=None,
        )
    iso = fan_isomorphic(sa.reduced_fan, sb.reduced_fan)
    if iso is None:
        return IsoReport(
            isomorphic=False,
            reason="reduced fans are not isomorphic",
            torus_ranks=ranks,
            splits=(sa, sb),
            iso=None,
        )
    return IsoReport(
        isomorphic=True,
        reason="reduced fans are isomorphic and torus ranks agree",
        torus_ranks=ranks,
        splits=(sa, sb),
        iso=iso,
    )
