"""Quotient presentations of a toric variety from an admissible divisor
subgroup.

A presentation consists of: one coordinate per minimal generator of the
subgroup's effective semigroup, a grading of those coordinates by the
quotient of the subgroup by the principal divisors, and the exceptional
coordinate collections (minimal sets of coordinates whose common vanishing
locus misses the variety).  The classical constructions are the two built-in
modes: ``cox`` uses the full divisor lattice, ``kajiwara`` the Cartier
divisors; ``custom`` accepts any admissible subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .divisors import (
    DivisorSubgroup,
    EnoughDivisorsReport,
    class_group,
    cox_subgroup,
    divisor_subgroup,
    enough_divisors,
    kajiwara_subgroup,
)
from .fan import DegenerateFanError, Fan
from .lattice import (
    AbHom,
    CokernelData,
    FgAbGroup,
    IntMatrix,
    ResourceLimitError,
    Vec,
    lattice_coefficients,
)

MODES = ("cox", "kajiwara", "custom")

MAX_COLLECTION_COORDINATES = 20


@dataclass(frozen=True)
class Presentation:
    """Quotient presentation data for a fan.

    ``coordinates[i]`` is the divisor of the i-th coordinate (a minimal
    generator of the effective semigroup of the subgroup); ``degrees[i]`` its
    degree in ``grading_group`` coordinates.  ``exceptional_collections``
    lists the minimal coordinate index sets whose common zero locus must be
    removed before taking the quotient.
    """

    fan: Fan
    subgroup: DivisorSubgroup
    mode: str
    coordinates: tuple[Vec, ...]
    grading_group: FgAbGroup
    degrees: tuple[Vec, ...]
    exceptional_collections: tuple[tuple[int, ...], ...]
    enough: EnoughDivisorsReport
    grading_coker: CokernelData = field(compare=False, repr=False)

    @property
    def n_coordinates(self) -> int:
        return len(self.coordinates)

    @property
    def has_size_one_collection(self) -> bool:
        return any(len(c) == 1 for c in self.exceptional_collections)

    def degree_of(self, coeffs: Sequence[int]) -> Vec:
        """Degree of an arbitrary subgroup member."""
        c = self.subgroup.coefficients(coeffs)
        if c is None:
            raise ValueError("divisor does not lie in the subgroup")
        return self.grading_group.reduce(self.grading_coker.project(c))


def _principal_in_subgroup_coords(sub: DivisorSubgroup) -> IntMatrix:
    """Columns are the principal-divisor basis expressed in subgroup
    coordinates (the subgroup contains them by admissibility)."""
    from .divisors import principal_basis

    cols = []
    for p in principal_basis(sub.fan):
        c = lattice_coefficients(sub.basis, p)
        assert c is not None, "admissible subgroup must contain principal divisors"
        cols.append(c)
    k = len(sub.basis)
    return IntMatrix(
        tuple(tuple(col[i] for col in cols) for i in range(k)),
        cols=len(cols),
    )


def build_presentation(
    fan: Fan,
    mode: str = "cox",
    subgroup_rows: Optional[Sequence[Sequence[int]]] = None,
) -> Presentation:
    """Construct the quotient presentation for the chosen divisor subgroup.

    Degenerate fans are rejected: split off the torus factor first and
    present the reduced fan.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if fan.is_degenerate:
        raise DegenerateFanError(
            "fan rays do not span the lattice; split off the torus factor "
            "and present the reduced fan"
        )
    if mode == "cox":
        if subgroup_rows is not None:
            raise ValueError("subgroup_rows only applies to custom mode")
        sub = cox_subgroup(fan)
    elif mode == "kajiwara":
        if subgroup_rows is not None:
            raise ValueError("subgroup_rows only applies to custom mode")
        sub = kajiwara_subgroup(fan)
    else:
        if subgroup_rows is None:
            raise ValueError("custom mode requires subgroup_rows")
        sub = divisor_subgroup(fan, subgroup_rows)
    return presentation_from_subgroup(fan, sub, mode)


def presentation_from_subgroup(
    fan: Fan, sub: DivisorSubgroup, mode: str = "custom"
) -> Presentation:
    coords = sub.effective_generators()
    coker = CokernelData(_principal_in_subgroup_coords(sub))
    grading = coker.group
    degrees = []
    for w in coords:
        c = lattice_coefficients(sub.basis, w)
        assert c is not None
        degrees.append(grading.reduce(coker.project(c)))
    collections = exceptional_collections(fan, coords)
    return Presentation(
        fan=fan,
        subgroup=sub,
        mode=mode,
        coordinates=coords,
        grading_group=grading,
        degrees=tuple(degrees),
        exceptional_collections=collections,
        enough=enough_divisors(sub),
        grading_coker=coker,
    )


def exceptional_collections(
    fan: Fan, coordinates: Sequence[Vec]
) -> tuple[tuple[int, ...], ...]:
    """Minimal coordinate index sets whose divisors have empty common
    intersection on the variety.

    The supports of a set of effective divisors meet on the variety iff some
    max cone touches every one of them, so a set is exceptional iff the
    cones *missed* by its members cover all max cones; we enumerate the
    inclusion-minimal covers.
    """
    n_cones = len(fan.max_cones)
    if n_cones == 0:
        return ()
    supports = [frozenset(j for j, x in enumerate(w) if x > 0) for w in coordinates]
    missed = []
    for supp in supports:
        missed.append(
            frozenset(
                ci
                for ci, cone in enumerate(fan.max_cones)
                if not supp & set(cone)
            )
        )
    useful = [i for i, m in enumerate(missed) if m]
    if len(useful) > MAX_COLLECTION_COORDINATES:
        raise ResourceLimitError(
            f"{len(useful)} coordinates exceed the exceptional-collection "
            f"search guard {MAX_COLLECTION_COORDINATES}"
        )
    everything = frozenset(range(n_cones))
    found: list[tuple[int, ...]] = []
    for size in range(1, len(useful) + 1):
        for combo in combinations(useful, size):
            if any(set(f) <= set(combo) for f in found):
                continue
            covered = frozenset().union(*(missed[i] for i in combo))
            if covered == everything:
                found.append(combo)
    return tuple(sorted(found))


# -- grading factorization -------------------------------------------------------


@dataclass(frozen=True)
class GradingFactorization:
    """The grading group's two-sided fit against the class group.

    ``into_class_group`` maps the presentation's grading group into the
    divisor class group; ``onto_residual`` maps the class group onto the
    classes modulo the subgroup.  Diagnostics: the composite vanishes, free
    ranks are additive, and group orders are multiplicative when finite.
    """

    grading_group: FgAbGroup
    class_group: FgAbGroup
    residual_group: FgAbGroup
    into_class_group: AbHom
    onto_residual: AbHom
    composite_is_zero: bool
    ranks_additive: bool
    orders_multiplicative: Optional[bool]

    @property
    def consistent(self) -> bool:
        checks = [self.composite_is_zero, self.ranks_additive]
        if self.orders_multiplicative is not None:
            checks.append(self.orders_multiplicative)
        return all(checks)


def grading_factorization(pres: Presentation) -> GradingFactorization:
    fan = pres.fan
    sub = pres.subgroup
    n = fan.n_rays
    cl = class_group(fan)
    grading_coker = pres.grading_coker
    grading = pres.grading_group

    # residual: divisors modulo the subgroup
    residual_coker = CokernelData(
        IntMatrix(
            tuple(tuple(row[i] for row in sub.basis) for i in range(n)),
            cols=len(sub.basis),
        )
        if sub.basis
        else IntMatrix.zeros(n, 1)
    )
    residual = residual_coker.group

    # grading generator -> divisor in Z^rays -> class
    rows_in = []
    for lift in grading_coker.generator_lifts:
        divisor = tuple(
            sum(c * row[j] for c, row in zip(lift, sub.basis)) for j in range(n)
        )
        rows_in.append(cl.divisor_class(divisor))
    into = AbHom(
        domain=grading,
        codomain=cl.group,
        matrix=IntMatrix(tuple(rows_in), cols=cl.group.n_generators),
    )

    # class generator -> divisor -> residual class
    rows_onto = []
    for divisor in cl.generator_divisors:
        rows_onto.append(residual.reduce(residual_coker.project(divisor)))
    onto = AbHom(
        domain=cl.group,
        codomain=residual,
        matrix=IntMatrix(tuple(rows_onto), cols=residual.n_generators),
    )

    composite = into.compose(onto)
    ranks_ok = grading.free_rank + residual.free_rank == cl.group.free_rank
    orders = (grading.order(), residual.order(), cl.group.order())
    orders_ok: Optional[bool]
    if all(o is not None for o in orders):
        orders_ok = orders[0] * orders[1] == orders[2]
    else:
        orders_ok = None

    return GradingFactorization(
        grading_group=grading,
        class_group=cl.group,
        residual_group=residual,
        into_class_group=into,
        onto_residual=onto,
        composite_is_zero=composite.is_zero(),
        ranks_additive=ranks_ok,
        orders_multiplicative=orders_ok,
    )
