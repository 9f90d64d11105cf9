"""Torus-invariant divisors on a fan: principal and Cartier divisors, the
divisor class group, and admissible divisor subgroups.

Divisors are integer coefficient vectors indexed by the fan's rays (in the
fan's canonical ray order).  An *admissible divisor subgroup* is a saturated
choice of divisors from which a quotient presentation is built: it must have
independent generators, contain every principal divisor, and be generated by
its effective members together with the principal divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import polyhedra
from .fan import Fan
from .lattice import (
    CokernelData,
    FgAbGroup,
    IntMatrix,
    Vec,
    hermite_row_basis,
    hilbert_basis,
    lattice_coefficients,
    lattice_contains,
    lattice_equal,
    lattice_intersection,
    lattice_sum,
    matrix_rank,
    solve_integer_linear,
    vec_dot,
    vec_is_zero,
)


class SubgroupValidationError(ValueError):
    """A candidate divisor subgroup violates an admissibility condition."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


# -- divisors -----------------------------------------------------------------


def principal_basis(fan: Fan) -> tuple[Vec, ...]:
    """Principal divisors of the character basis: row j is div of the j-th
    coordinate character, i.e. (<e_j, ray>) over the rays."""
    return tuple(
        tuple(ray[j] for ray in fan.rays) for j in range(fan.rank)
    )


def principal_divisor(fan: Fan, character: Sequence[int]) -> Vec:
    if len(character) != fan.rank:
        raise ValueError("character of wrong rank")
    return tuple(vec_dot(character, ray) for ray in fan.rays)


def is_principal(fan: Fan, coeffs: Sequence[int]) -> bool:
    return lattice_contains(principal_basis(fan), coeffs, width=fan.n_rays)


def is_effective(coeffs: Sequence[int]) -> bool:
    return all(c >= 0 for c in coeffs)


@dataclass(frozen=True)
class CartierData:
    """Local trivializations of a Cartier divisor: one character per max
    cone, pairing to the divisor coefficients on that cone's rays."""

    characters: tuple[Vec, ...]

    def character_for(self, cone_index: int) -> Vec:
        return self.characters[cone_index]


def cartier_data(fan: Fan, coeffs: Sequence[int]) -> Optional[CartierData]:
    """Local characters witnessing that the divisor is Cartier, or None."""
    if len(coeffs) != fan.n_rays:
        raise ValueError("coefficient length mismatch")
    chars = []
    for cone in fan.max_cones:
        A = IntMatrix([fan.rays[i] for i in cone], cols=fan.rank)
        sol = solve_integer_linear(A, [coeffs[i] for i in cone])
        if sol is None:
            return None
        chars.append(sol.particular)
    return CartierData(characters=tuple(chars))


def cartier_defect(fan: Fan, coeffs: Sequence[int]) -> tuple[int, ...]:
    """Indices of the max cones on which no local character exists."""
    out = []
    for ci, cone in enumerate(fan.max_cones):
        A = IntMatrix([fan.rays[i] for i in cone], cols=fan.rank)
        if solve_integer_linear(A, [coeffs[i] for i in cone]) is None:
            out.append(ci)
    return tuple(out)


def is_cartier(fan: Fan, coeffs: Sequence[int]) -> bool:
    return cartier_data(fan, coeffs) is not None


def cartier_lattice(fan: Fan) -> tuple[Vec, ...]:
    """Canonical basis of the lattice of Cartier divisors inside Z^rays.

    A divisor is Cartier iff its restriction to each max cone's rays lies in
    the image of the character pairing on that cone; each such condition cuts
    out a sublattice and the Cartier lattice is their intersection.
    """
    n = fan.n_rays
    if not fan.max_cones:
        return hermite_row_basis(
            [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)], width=n
        )
    current: Optional[tuple[Vec, ...]] = None
    for cone in fan.max_cones:
        restricted = [
            tuple(fan.rays[i][j] for i in cone) for j in range(fan.rank)
        ]
        rsub = hermite_row_basis(restricted, width=len(cone))
        gens = []
        pos = {ray_i: k for k, ray_i in enumerate(cone)}
        for r in rsub:
            gens.append(
                tuple(r[pos[i]] if i in pos else 0 for i in range(n))
            )
        for i in range(n):
            if i not in pos:
                gens.append(tuple(1 if j == i else 0 for j in range(n)))
        basis = hermite_row_basis(gens, width=n)
        current = (
            basis
            if current is None
            else lattice_intersection(current, basis, width=n)
        )
    return current if current is not None else ()


# -- class group ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassGroupData:
    """Divisor class group Z^rays / (principal divisors), with coordinates."""

    fan: Fan
    group: FgAbGroup
    _coker: CokernelData

    def divisor_class(self, coeffs: Sequence[int]) -> Vec:
        return self.group.reduce(self._coker.project(coeffs))

    def is_trivial_class(self, coeffs: Sequence[int]) -> bool:
        return self._coker.is_zero(coeffs)

    @property
    def generator_divisors(self) -> tuple[Vec, ...]:
        return self._coker.generator_lifts


def class_group(fan: Fan) -> ClassGroupData:
    n = fan.n_rays
    if n == 0:
        return ClassGroupData(
            fan=fan, group=FgAbGroup(0, ()), _coker=_EmptyCokernel()
        )
    A = fan.ray_matrix()  # n x rank; columns = principal divisors of e_j
    coker = CokernelData(A)
    return ClassGroupData(fan=fan, group=coker.group, _coker=coker)


class _EmptyCokernel:
    """Cokernel of the zero lattice (no rays): the trivial group."""

    group = FgAbGroup(0, ())
    generator_lifts: tuple[Vec, ...] = ()

    def project(self, v: Sequence[int]) -> Vec:
        if len(v) != 0:
            raise ValueError("length mismatch")
        return ()

    def is_zero(self, v: Sequence[int]) -> bool:
        return len(v) == 0


# -- admissible divisor subgroups ------------------------------------------------


@dataclass(frozen=True)
class DivisorSubgroup:
    """Validated admissible subgroup of the divisor lattice Z^rays.

    ``basis`` is the canonical Hermite basis, so equal subgroups compare
    equal regardless of the generators they were built from.
    """

    fan: Fan
    basis: tuple[Vec, ...]

    @property
    def subgroup_rank(self) -> int:
        return len(self.basis)

    def contains(self, coeffs: Sequence[int]) -> bool:
        return lattice_contains(self.basis, coeffs, width=self.fan.n_rays)

    def coefficients(self, coeffs: Sequence[int]) -> Optional[Vec]:
        if len(coeffs) != self.fan.n_rays:
            raise ValueError("coefficient length mismatch")
        return lattice_coefficients(self.basis, coeffs)

    def effective_generators(self) -> tuple[Vec, ...]:
        """Minimal generators of the semigroup of effective members."""
        return hilbert_basis(self.basis, self.fan.n_rays)


def divisor_subgroup(fan: Fan, rows: Sequence[Sequence[int]]) -> DivisorSubgroup:
    """Validate generators and build the admissible subgroup.

    Admissibility: (1) the given generators are linearly independent; (2) the
    subgroup contains all principal divisors; (3) it is generated by its
    effective members together with the principal divisors.  Violations are
    all collected into one :class:`SubgroupValidationError`.
    """
    n = fan.n_rays
    problems: list[str] = []
    clean: list[Vec] = []
    for i, row in enumerate(rows):
        v = tuple(int(x) for x in row)
        if len(v) != n:
            problems.append(
                f"generator {i} has {len(v)} coefficients, expected {n}"
            )
            continue
        clean.append(v)
    if problems:
        raise SubgroupValidationError(problems)

    if clean and matrix_rank(IntMatrix(clean, cols=n)) != len(clean):
        problems.append("generators are linearly dependent")

    basis = hermite_row_basis(clean, width=n)
    for j, p in enumerate(principal_basis(fan)):
        if not lattice_contains(basis, p, width=n):
            problems.append(
                f"principal divisor of character {j} is missing: {list(p)}"
            )
    if problems:
        raise SubgroupValidationError(problems)

    effective = hilbert_basis(basis, n)
    regenerated = lattice_sum(principal_basis(fan), effective, width=n)
    if not lattice_equal(regenerated, basis, width=n):
        problems.append(
            "subgroup is not generated by its effective members together "
            "with the principal divisors"
        )
    if problems:
        raise SubgroupValidationError(problems)
    return DivisorSubgroup(fan=fan, basis=basis)


def cox_subgroup(fan: Fan) -> DivisorSubgroup:
    """The full divisor lattice Z^rays (Cox-style presentation data)."""
    n = fan.n_rays
    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return divisor_subgroup(fan, units)


def kajiwara_subgroup(fan: Fan) -> DivisorSubgroup:
    """The lattice of Cartier divisors (Kajiwara-style presentation data)."""
    return divisor_subgroup(fan, cartier_lattice(fan))


def cartier_subgroup_basis(sub: DivisorSubgroup) -> tuple[Vec, ...]:
    """Canonical basis of the Cartier members of the subgroup."""
    cart = cartier_lattice(sub.fan)
    if not sub.basis or not cart:
        return ()
    return lattice_intersection(sub.basis, cart, width=sub.fan.n_rays)


# -- enough effective divisors ---------------------------------------------------


@dataclass(frozen=True)
class EnoughDivisorsReport:
    """Per-max-cone witnesses for the covering property of a subgroup.

    For each max cone the subgroup must contain an effective divisor whose
    support is exactly the rays outside that cone; ``witnesses[i]`` is such a
    divisor for max cone i, or None, and ``ok`` says all cones have one.
    """

    ok: bool
    witnesses: tuple[Optional[Vec], ...]

    @property
    def failing_cones(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.witnesses) if w is None)


def enough_divisors(sub: DivisorSubgroup) -> EnoughDivisorsReport:
    """Check the subgroup has, for every max cone, an effective member
    supported exactly on the complement of the cone's rays."""
    fan = sub.fan
    n = fan.n_rays
    witnesses: list[Optional[Vec]] = []
    for cone in fan.max_cones:
        inside = set(cone)
        # rational cone in coefficient space: c @ basis >= 0, with equality
        # on coordinates inside the cone
        normals = []
        for j in range(n):
            col = tuple(row[j] for row in sub.basis)
            if j in inside:
                normals.append(col)
                normals.append(tuple(-x for x in col))
            else:
                normals.append(col)
        lines, rays = polyhedra.dual_description(normals, len(sub.basis))
        # sum of extreme rays has maximal support among cone members
        total = [0] * len(sub.basis)
        for r in rays:
            for k, x in enumerate(r):
                total[k] += x
        w = tuple(
            sum(c * row[j] for c, row in zip(total, sub.basis)) for j in range(n)
        )
        if all(w[j] > 0 for j in range(n) if j not in inside) and all(
            w[j] == 0 for j in inside
        ):
            witnesses.append(_integral_witness(sub, w))
        else:
            witnesses.append(None)
    ok = all(w is not None for w in witnesses)
    return EnoughDivisorsReport(ok=ok, witnesses=tuple(witnesses))


def _integral_witness(sub: DivisorSubgroup, w: Vec) -> Vec:
    """Scale a rational-cone witness to a primitive subgroup member."""
    from .lattice import primitive_vector, _minimal_lattice_multiple

    if vec_is_zero(w):
        return w
    return _minimal_lattice_multiple(sub.basis, primitive_vector(w))
