"""Toric morphisms and lifting of morphisms to quotient presentations.

Given a lattice map carrying the source fan into the target fan, this module
decides whether the morphism lifts to chosen quotient presentations on both
sides.  The decision runs in stages: Cartier members of the target subgroup
have forced pullbacks; those values must extend to the whole subgroup; each
extended value must decompose as (member of the source subgroup) + (principal
divisor); and finally the effectivity and support conditions are imposed on
the effective generators — skipped for simplicial targets, where they hold
automatically.  Failures carry machine-checkable certificates, and searches
that exhaust their configured bound report "undecided" rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .divisors import (
    CartierData,
    DivisorSubgroup,
    cartier_data,
    cartier_subgroup_basis,
    principal_basis,
)
from .fan import Fan, Location
from .lattice import (
    AbHom,
    CokernelData,
    IntMatrix,
    Vec,
    extend_homomorphism,
    hermite_row_basis,
    lattice_coefficients,
    solve_integer_linear,
    vec_dot,
    vec_is_zero,
)
from .presentation import _principal_in_subgroup_coords

SCOPE_NOTE = (
    "effectivity and support conditions are enforced on the minimal "
    "effective generators of the target subgroup; non-effective members "
    "are not separately checked"
)

MAX_SEARCH_POINTS = 200_000
MAX_WITNESS_CLASSES = 64


class MorphismValidationError(ValueError):
    """The lattice map does not carry the source fan into the target fan."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class ToricMorphism:
    """Lattice map between fans, with per-cone image locations.

    ``matrix`` is target_rank x source_rank and acts on column vectors;
    ``cone_targets[i]`` locates the image of source max cone i inside the
    target fan (the minimal target cone containing it).
    """

    source: Fan
    target: Fan
    matrix: IntMatrix
    cone_targets: tuple[Location, ...]

    def apply(self, v: Sequence[int]) -> Vec:
        return self.matrix.apply(v)

    def ray_image(self, ray_index: int) -> Vec:
        return self.matrix.apply(self.source.rays[ray_index])


def validate_toric_morphism(
    source: Fan, target: Fan, matrix: IntMatrix
) -> ToricMorphism:
    """Check fan compatibility: every source max cone must map into some
    target cone.  All incompatible cones are reported together."""
    if matrix.rows != target.rank or matrix.cols != source.rank:
        raise MorphismValidationError(
            [
                f"matrix is {matrix.rows}x{matrix.cols}, expected "
                f"{target.rank}x{source.rank} (target rank x source rank)"
            ]
        )
    problems: list[str] = []
    locations: list[Location] = []
    for cone in source.max_cones:
        images = [matrix.apply(source.rays[i]) for i in cone]
        loc = _locate_cone_image(target, images)
        if loc is None:
            problems.append(
                f"image of source max cone {list(cone)} (rays "
                f"{[list(source.rays[i]) for i in cone]}) lies in no target cone"
            )
        else:
            locations.append(loc)
    if problems:
        raise MorphismValidationError(problems)
    return ToricMorphism(
        source=source, target=target, matrix=matrix, cone_targets=tuple(locations)
    )


def _locate_cone_image(target: Fan, images: Sequence[Vec]) -> Optional[Location]:
    """Minimal target cone containing all the given points, or None."""
    if not target.max_cones:
        if all(vec_is_zero(w) for w in images):
            return Location(face_rays=(), max_cone=None)
        return None
    for ci in range(len(target.max_cones)):
        if all(target.max_cone_contains(ci, w) for w in images):
            # minimal face of this cone containing the whole image: the one
            # cut out by the facets tight on the generator sum
            h = target.cone_hrep(ci)
            total = tuple(sum(w[j] for w in images) for j in range(target.rank))
            tight = [u for u in h.inequalities if vec_dot(u, total) == 0]
            face = tuple(
                i
                for i in target.max_cones[ci]
                if all(vec_dot(u, target.rays[i]) == 0 for u in tight)
            )
            return Location(face_rays=face, max_cone=ci)
    return None


def identity_morphism(fan: Fan) -> ToricMorphism:
    return validate_toric_morphism(fan, fan, IntMatrix.identity(fan.rank))


# -- pullback of Cartier divisors -------------------------------------------------


def pullback_cartier(f: ToricMorphism, cd: CartierData) -> Vec:
    """Pullback coefficients: at each source ray, pair the local character of
    a target cone containing the ray's image with that image.

    The value is independent of the chosen cone: local characters of a
    Cartier divisor agree on overlaps, which is asserted here.
    """
    out = []
    for i in range(f.source.n_rays):
        w = f.ray_image(i)
        containing = f.target.max_cones_containing(w)
        assert containing, "morphism invariant: every ray image lies in the target fan"
        values = {vec_dot(cd.character_for(ci), w) for ci in containing}
        assert len(values) == 1, "local characters must agree on the image"
        out.append(values.pop())
    return tuple(out)


def strict_transform(f: ToricMorphism, coeffs: Sequence[int]) -> Optional[Vec]:
    """Divisor transform defined when every source ray's image lands in a
    smooth minimal target cone; None otherwise.

    On a smooth cone any divisor has a local character; pairing it with the
    ray image gives the coefficient.
    """
    if len(coeffs) != f.target.n_rays:
        raise ValueError("coefficient length mismatch")
    out = []
    for i in range(f.source.n_rays):
        w = f.ray_image(i)
        loc = f.target.locate(w)
        assert loc is not None, "morphism invariant: ray image lies in the support"
        if not f.target.face_is_smooth(loc.face_rays):
            return None
        rows = [f.target.rays[j] for j in loc.face_rays]
        sol = solve_integer_linear(
            IntMatrix(rows, cols=f.target.rank),
            [coeffs[j] for j in loc.face_rays],
        )
        assert sol is not None, "smooth cone always has a local character"
        out.append(vec_dot(sol.particular, w))
    return tuple(out)


# -- lifting report types ---------------------------------------------------------


@dataclass(frozen=True)
class ExtensionObstructionCertificate:
    """No additive extension of the forced Cartier pullbacks exists: the
    stated multiple of the stated target-subgroup divisor has a forced
    pullback that the multiplier does not divide."""

    multiplier: int
    divisor: Vec  # element of the target subgroup's ambient divisor lattice
    required: Vec  # forced pullback of multiplier * divisor on the source


@dataclass(frozen=True)
class ContainmentFailureCertificate:
    """Some extended value cannot be written as (source subgroup member) +
    (principal divisor), for any choice of extension."""

    basis_indices: tuple[int, ...]  # target-subgroup basis rows that fail alone
    joint_only: bool  # True when rows fail only in combination


@dataclass(frozen=True)
class EffectivityFailureCertificate:
    """An effective generator of the target subgroup maps to a divisor with
    a negative coefficient (no residual freedom remained), or the residual
    system is rationally infeasible."""

    generator: Optional[Vec]
    coefficient_index: Optional[int]
    rationally_infeasible: bool


@dataclass(frozen=True)
class GeometricPullbackWitness:
    """One lifting: images of the target-subgroup basis plus decompositions.

    ``phi`` row j is the pullback of basis divisor j as a source divisor;
    ``decomposition[j] = (member, character)`` writes that row as a source
    subgroup member plus the principal divisor of the character.
    ``solution_lattice`` spans the remaining directions in which ``phi`` may
    be shifted while preserving every constraint that was checked.
    """

    phi: IntMatrix
    decomposition: tuple[tuple[Vec, Vec], ...]
    solution_lattice: tuple[IntMatrix, ...]


@dataclass(frozen=True)
class LiftingReport:
    """Outcome of the lifting decision.

    ``verdict`` is "yes", "no", or "undecided" (search exhausted its bound
    without an answer).  ``witness_classes`` lists the distinct liftings
    found (first entry belongs to ``witness``); ``scope_note`` states the
    extent of the conditions actually checked.
    """

    verdict: str
    witness: Optional[GeometricPullbackWitness]
    witness_classes: tuple[IntMatrix, ...]
    induced_grading_hom: Optional[AbHom]
    uniqueness_note: str
    obstruction: Optional[object]
    scope_note: str
    conditions_checked: bool
    search_bound: Optional[int]

    @property
    def exists(self) -> Optional[bool]:
        if self.verdict == "yes":
            return True
        if self.verdict == "no":
            return False
        return None


# -- the solver --------------------------------------------------------------------


def solve_geometric_pullback(
    f: ToricMorphism,
    target_subgroup: DivisorSubgroup,
    source_subgroup: DivisorSubgroup,
    *,
    search_bound: Optional[int] = None,
    force_conditions: bool = False,
) -> LiftingReport:
    """Decide whether the morphism lifts to the chosen presentations.

    Stages: forced Cartier pullbacks; additive extension to the whole target
    subgroup; containment of each value in (source subgroup + principal);
    effectivity and support conditions on effective generators (skipped for
    simplicial target fans unless ``force_conditions``).  ``search_bound``
    caps the coefficient box searched when residual freedom survives the
    linear stages; exhausting it yields verdict "undecided".
    """
    if target_subgroup.fan != f.target:
        raise ValueError("target subgroup lives on a different fan")
    if source_subgroup.fan != f.source:
        raise ValueError("source subgroup lives on a different fan")
    n_src = f.source.n_rays
    basis = target_subgroup.basis
    k = len(basis)

    conditions = force_conditions or not f.target.smoothness.simplicial

    # (a) forced values on the Cartier members
    cart = cartier_subgroup_basis(target_subgroup)
    crows = []
    forced = []
    for c in cart:
        coeffs = target_subgroup.coefficients(c)
        assert coeffs is not None, "Cartier members lie in the subgroup"
        crows.append(coeffs)
        cd = cartier_data(f.target, c)
        assert cd is not None, "Cartier lattice members admit local characters"
        forced.append(pullback_cartier(f, cd))

    # (b) extend from the Cartier members to the whole subgroup
    if crows:
        ext, obs = extend_homomorphism(
            IntMatrix(crows, cols=k), IntMatrix(forced, cols=n_src)
        )
    else:
        ext, obs = (
            _free_extension(k, n_src),
            None,
        )
    if obs is not None:
        divisor = tuple(
            sum(c * row[j] for c, row in zip(obs.element, basis))
            for j in range(f.target.n_rays)
        )
        return _no_report(
            ExtensionObstructionCertificate(
                multiplier=obs.multiplier, divisor=divisor, required=obs.required
            ),
            conditions,
            search_bound,
        )
    X = ext.particular  # k x n_src
    kernels = list(ext.kernel)

    # (c) containment in (source subgroup + principal), jointly over all rows,
    # plus the zero-forcing equations of the support condition when active
    lattice_rows = hermite_row_basis(
        list(source_subgroup.basis) + list(principal_basis(f.source)), width=n_src
    )
    zero_cells = _support_zero_cells(f, target_subgroup) if conditions else []

    solved = _solve_joint(X, kernels, lattice_rows, [], k, n_src)
    if solved is None:
        failing = _individually_failing_rows(X, kernels, lattice_rows, k, n_src)
        return _no_report(
            ContainmentFailureCertificate(
                basis_indices=failing, joint_only=not failing
            ),
            conditions,
            search_bound,
        )
    if zero_cells:
        solved_eq = _solve_joint(X, kernels, lattice_rows, zero_cells, k, n_src)
        if solved_eq is None:
            return _no_report(
                EffectivityFailureCertificate(
                    generator=None, coefficient_index=None, rationally_infeasible=False
                ),
                conditions,
                search_bound,
            )
        solved = solved_eq
    t_particular, t_dirs = solved
    phi0 = _phi_from_t(X, kernels, t_particular)
    dirs = [_phi_from_t(IntMatrix.zeros(k, n_src), kernels, t) for t in t_dirs]
    dirs = [d for d in dirs if not d.is_zero()]

    # (d) effectivity inequalities on the effective generators
    bound_used: Optional[int] = None
    if conditions:
        gens = target_subgroup.effective_generators()
        gen_coeffs = []
        for g in gens:
            c = target_subgroup.coefficients(g)
            assert c is not None
            gen_coeffs.append(c)
        if not dirs:
            bad = _first_negative(phi0, gen_coeffs, gens)
            if bad is not None:
                g, idx = bad
                return _no_report(
                    EffectivityFailureCertificate(
                        generator=g, coefficient_index=idx, rationally_infeasible=False
                    ),
                    conditions,
                    search_bound,
                )
            classes = [phi0]
        else:
            ineqs, rhs = _effectivity_system(phi0, dirs, gen_coeffs, n_src)
            if not _rational_feasible(ineqs, rhs):
                return _no_report(
                    EffectivityFailureCertificate(
                        generator=None, coefficient_index=None,
                        rationally_infeasible=True,
                    ),
                    conditions,
                    search_bound,
                )
            entries = [abs(x) for row in phi0 for x in row]
            bound_used = (
                search_bound
                if search_bound is not None
                else 4 * max([1] + entries)
            )
            found = _box_search(ineqs, rhs, len(dirs), bound_used)
            if found is None:
                return LiftingReport(
                    verdict="undecided",
                    witness=None,
                    witness_classes=(),
                    induced_grading_hom=None,
                    uniqueness_note=(
                        f"no integral solution within coefficient bound "
                        f"{bound_used}; the rational relaxation is feasible"
                    ),
                    obstruction=None,
                    scope_note=SCOPE_NOTE,
                    conditions_checked=conditions,
                    search_bound=bound_used,
                )
            classes = [
                _shift_phi(phi0, dirs, tau) for tau in found
            ]
    else:
        classes = [phi0]

    phi = classes[0]
    residual = tuple(dirs) if not conditions else ()
    witness = GeometricPullbackWitness(
        phi=phi,
        decomposition=_decompose_rows(phi, source_subgroup, k),
        solution_lattice=residual,
    )
    problems = verify_pullback_witness(
        f, target_subgroup, source_subgroup, witness, conditions=conditions
    )
    assert not problems, f"witness failed re-verification: {problems}"

    hom = induced_grading_hom(f, target_subgroup, source_subgroup, witness)

    if conditions:
        if len(classes) == 1 and not dirs:
            note = "unique"
        elif len(classes) == 1:
            note = "one witness class found within the search bound"
        else:
            note = (
                f"{len(classes)} witness classes found within coefficient "
                f"bound {bound_used}"
            )
    else:
        if dirs:
            note = (
                f"witness family of free rank {len(dirs)} (conditions hold "
                f"automatically on the simplicial target)"
            )
        else:
            note = "unique"

    return LiftingReport(
        verdict="yes",
        witness=witness,
        witness_classes=tuple(classes[:MAX_WITNESS_CLASSES]),
        induced_grading_hom=hom,
        uniqueness_note=note,
        obstruction=None,
        scope_note=SCOPE_NOTE,
        conditions_checked=conditions,
        search_bound=bound_used,
    )


def _no_report(certificate, conditions: bool, bound) -> LiftingReport:
    return LiftingReport(
        verdict="no",
        witness=None,
        witness_classes=(),
        induced_grading_hom=None,
        uniqueness_note="no lifting exists",
        obstruction=certificate,
        scope_note=SCOPE_NOTE,
        conditions_checked=conditions,
        search_bound=None,
    )


@dataclass(frozen=True)
class _FreeExtension:
    particular: IntMatrix
    kernel: tuple[IntMatrix, ...]


def _free_extension(k: int, n_src: int) -> _FreeExtension:
    """No Cartier constraints at all: every matrix is a valid extension."""
    kernels = []
    for i in range(k):
        for j in range(n_src):
            kernels.append(
                IntMatrix(
                    tuple(
                        tuple(1 if (r, c) == (i, j) else 0 for c in range(n_src))
                        for r in range(k)
                    ),
                    cols=n_src,
                )
            )
    return _FreeExtension(
        particular=IntMatrix.zeros(k, n_src), kernel=tuple(kernels)
    )


def _support_zero_cells(
    f: ToricMorphism, target_subgroup: DivisorSubgroup
) -> list[tuple[Vec, int]]:
    """Support-condition equations: pairs (generator coefficients, source ray)
    whose pullback coefficient is forced to zero.

    A nonzero coefficient of the pullback of an effective generator at a
    source ray is allowed only when the minimal target cone containing that
    ray's image shares a ray with the generator's support.
    """
    cells = []
    ray_faces = []
    for i in range(f.source.n_rays):
        loc = f.target.locate(f.ray_image(i))
        assert loc is not None
        ray_faces.append(set(loc.face_rays))
    for g in target_subgroup.effective_generators():
        coeffs = target_subgroup.coefficients(g)
        assert coeffs is not None
        support = {j for j, x in enumerate(g) if x > 0}
        for i in range(f.source.n_rays):
            if not support & ray_faces[i]:
                cells.append((coeffs, i))
    return cells


def _solve_joint(
    X: IntMatrix,
    kernels: list[IntMatrix],
    lattice_rows: tuple[Vec, ...],
    zero_cells: list[tuple[Vec, int]],
    k: int,
    n_src: int,
) -> Optional[tuple[Vec, list[Vec]]]:
    """Solve the containment (+ zero-forcing) system for the kernel
    coefficients t.  Unknowns: t (one per kernel matrix) and, per subgroup
    basis row, coefficients over the containment lattice.  Returns the
    particular t and a basis of the t-directions of the solution set."""
    A = len(kernels)
    L = len(lattice_rows)
    n_unknowns = A + k * L
    rows: list[list[int]] = []
    rhs: list[int] = []
    for j in range(k):
        for r in range(n_src):
            row = [K[j, r] for K in kernels]
            row += [0] * (k * L)
            for b in range(L):
                row[A + j * L + b] = -lattice_rows[b][r]
            rows.append(row)
            rhs.append(-X[j, r])
    for coeffs, ray_i in zero_cells:
        row = [
            sum(coeffs[j] * K[j, ray_i] for j in range(k)) for K in kernels
        ]
        row += [0] * (k * L)
        rows.append(row)
        rhs.append(-sum(coeffs[j] * X[j, ray_i] for j in range(k)))
    if n_unknowns == 0:
        if all(v == 0 for v in rhs):
            return (), []
        return None
    sol = solve_integer_linear(IntMatrix(rows, cols=n_unknowns), rhs)
    if sol is None:
        return None
    t_part = sol.particular[:A]
    t_dirs = hermite_row_basis(
        [kv[:A] for kv in sol.kernel_basis], width=A
    )
    return t_part, [d for d in t_dirs]


def _individually_failing_rows(
    X: IntMatrix,
    kernels: list[IntMatrix],
    lattice_rows: tuple[Vec, ...],
    k: int,
    n_src: int,
) -> tuple[int, ...]:
    out = []
    for j in range(k):
        Xj = IntMatrix([X.row(j)], cols=n_src)
        Kj = [IntMatrix([K.row(j)], cols=n_src) for K in kernels]
        if _solve_joint(Xj, Kj, lattice_rows, [], 1, n_src) is None:
            out.append(j)
    return tuple(out)


def _phi_from_t(X: IntMatrix, kernels: list[IntMatrix], t: Sequence[int]) -> IntMatrix:
    out = X
    for c, K in zip(t, kernels):
        if c:
            out = out + K * c
    return out


def _shift_phi(phi: IntMatrix, dirs: list[IntMatrix], tau: Sequence[int]) -> IntMatrix:
    out = phi
    for c, D in zip(tau, dirs):
        if c:
            out = out + D * c
    return out


def _first_negative(
    phi: IntMatrix, gen_coeffs: list[Vec], gens: tuple[Vec, ...]
) -> Optional[tuple[Vec, int]]:
    for g, c in zip(gens, gen_coeffs):
        val = phi.left_apply(c)
        for idx, x in enumerate(val):
            if x < 0:
                return g, idx
    return None


def _effectivity_system(
    phi0: IntMatrix, dirs: list[IntMatrix], gen_coeffs: list[Vec], n_src: int
) -> tuple[list[Vec], list[int]]:
    """Inequalities sum_s tau_s * a[s] >= rhs, one per (generator, ray)."""
    ineqs: list[Vec] = []
    rhs: list[int] = []
    for c in gen_coeffs:
        base = phi0.left_apply(c)
        dir_vals = [D.left_apply(c) for D in dirs]
        for r in range(n_src):
            ineqs.append(tuple(dv[r] for dv in dir_vals))
            rhs.append(-base[r])
    return ineqs, rhs


def _rational_feasible(ineqs: list[Vec], rhs: list[int]) -> bool:
    """Fourier-Motzkin over exact rationals: is {tau : a.tau >= b} nonempty?"""
    system = [
        ([Fraction(x) for x in a], Fraction(b)) for a, b in zip(ineqs, rhs)
    ]
    dim = len(ineqs[0]) if ineqs else 0
    for var in range(dim):
        lower, upper, rest = [], [], []
        for a, b in system:
            if a[var] > 0:
                lower.append((a, b))
            elif a[var] < 0:
                upper.append((a, b))
            else:
                rest.append((a, b))
        new_system = rest
        for al, bl in lower:
            for au, bu in upper:
                # eliminate: al scaled + au scaled
                coef_l = -au[var]
                coef_u = al[var]
                a = [coef_l * x + coef_u * y for x, y in zip(al, au)]
                b = coef_l * bl + coef_u * bu
                new_system.append((a, b))
        system = new_system
    return all(b <= 0 for a, b in system)


def _box_search(
    ineqs: list[Vec], rhs: list[int], dim: int, bound: int
) -> Optional[list[Vec]]:
    """All integer points in [-bound, bound]^dim satisfying the system, in
    lexicographic order; None when there are none (a bounded search, so the
    caller reports 'undecided', not 'no')."""
    total = (2 * bound + 1) ** dim
    if total > MAX_SEARCH_POINTS:
        return None
    out = []
    for tau in product(range(-bound, bound + 1), repeat=dim):
        ok = all(
            sum(a_i * t_i for a_i, t_i in zip(a, tau)) >= b
            for a, b in zip(ineqs, rhs)
        )
        if ok:
            out.append(tau)
            if len(out) >= MAX_WITNESS_CLASSES:
                break
    return out or None


def _decompose_rows(
    phi: IntMatrix, source_subgroup: DivisorSubgroup, k: int
) -> tuple[tuple[Vec, Vec], ...]:
    """Write each row as (subgroup member) + principal divisor, preferring a
    zero character when the row already lies in the subgroup."""
    fan = source_subgroup.fan
    psrc = principal_basis(fan)
    out = []
    for j in range(k):
        row = phi.row(j)
        if source_subgroup.contains(row):
            out.append((row, (0,) * fan.rank))
            continue
        stacked = list(source_subgroup.basis) + list(psrc)
        c = lattice_coefficients(stacked, row)
        assert c is not None, "containment stage guarantees a decomposition"
        nb = len(source_subgroup.basis)
        member = tuple(
            sum(ci * b[r] for ci, b in zip(c[:nb], source_subgroup.basis))
            for r in range(fan.n_rays)
        )
        character = tuple(c[nb:])
        out.append((member, character))
    return tuple(out)


def induced_grading_hom(
    f: ToricMorphism,
    target_subgroup: DivisorSubgroup,
    source_subgroup: DivisorSubgroup,
    witness: GeometricPullbackWitness,
) -> AbHom:
    """The homomorphism (target subgroup)/(principal) -> (source subgroup)/
    (principal) induced by the witness: the grading-level shadow of the
    lifting.  Independent of the chosen decompositions, since alternative
    members differ by principal divisors."""
    coker_t = CokernelData(_principal_in_subgroup_coords(target_subgroup))
    coker_s = CokernelData(_principal_in_subgroup_coords(source_subgroup))
    rows = []
    for lift in coker_t.generator_lifts:
        row = witness.phi.left_apply(lift)
        member = _member_part(row, source_subgroup)
        c = source_subgroup.coefficients(member)
        assert c is not None
        rows.append(coker_s.group.reduce(coker_s.project(c)))
    return AbHom(
        domain=coker_t.group,
        codomain=coker_s.group,
        matrix=IntMatrix(tuple(rows), cols=coker_s.group.n_generators),
    )


def _member_part(row: Vec, source_subgroup: DivisorSubgroup) -> Vec:
    fan = source_subgroup.fan
    if source_subgroup.contains(row):
        return row
    stacked = list(source_subgroup.basis) + list(principal_basis(fan))
    c = lattice_coefficients(stacked, row)
    assert c is not None
    nb = len(source_subgroup.basis)
    return tuple(
        sum(ci * b[r] for ci, b in zip(c[:nb], source_subgroup.basis))
        for r in range(fan.n_rays)
    )


def verify_pullback_witness(
    f: ToricMorphism,
    target_subgroup: DivisorSubgroup,
    source_subgroup: DivisorSubgroup,
    witness: GeometricPullbackWitness,
    *,
    conditions: bool,
) -> list[str]:
    """Independent re-check of a witness; returns the list of violations.

    Checks: forced Cartier values, decomposition identities, effectivity and
    support conditions on the effective generators (when ``conditions``).
    """
    problems: list[str] = []
    basis = target_subgroup.basis
    k = len(basis)
    phi = witness.phi
    n_src = f.source.n_rays

    for c in cartier_subgroup_basis(target_subgroup):
        coeffs = target_subgroup.coefficients(c)
        cd = cartier_data(f.target, c)
        assert coeffs is not None and cd is not None
        want = pullback_cartier(f, cd)
        got = phi.left_apply(coeffs)
        if got != want:
            problems.append(
                f"forced Cartier value mismatch on {list(c)}: "
                f"{list(got)} != {list(want)}"
            )

    psrc = principal_basis(f.source)
    for j in range(k):
        member, character = witness.decomposition[j]
        if not source_subgroup.contains(member):
            problems.append(f"decomposition member {j} is not in the source subgroup")
        principal_part = tuple(
            vec_dot(character, tuple(p[r] for p in psrc)) for r in range(n_src)
        )
        rebuilt = tuple(m + p for m, p in zip(member, principal_part))
        if rebuilt != phi.row(j):
            problems.append(f"decomposition of row {j} does not recompose")

    if conditions:
        for g in target_subgroup.effective_generators():
            coeffs = target_subgroup.coefficients(g)
            val = phi.left_apply(coeffs)
            support = {j for j, x in enumerate(g) if x > 0}
            for i in range(n_src):
                if val[i] < 0:
                    problems.append(
                        f"pullback of effective generator {list(g)} is negative "
                        f"at source ray {i}"
                    )
                if val[i] != 0:
                    loc = f.target.locate(f.ray_image(i))
                    if not support & set(loc.face_rays):
                        problems.append(
                            f"support condition fails for generator {list(g)} "
                            f"at source ray {i}"
                        )
    return problems


def classify_liftings(report: LiftingReport) -> str:
    """Human-readable classification of the lifting outcome."""
    lines: list[str] = []
    if report.verdict == "no":
        lines.append("no lifting exists")
        ob = report.obstruction
        if isinstance(ob, ExtensionObstructionCertificate):
            lines.append(
                f"obstruction: {ob.multiplier} * phi({list(ob.divisor)}) = "
                f"{list(ob.required)} has no integral solution"
            )
        elif isinstance(ob, ContainmentFailureCertificate):
            if ob.basis_indices:
                lines.append(
                    "obstruction: pullback of basis divisor(s) "
                    f"{list(ob.basis_indices)} cannot be written as subgroup "
                    "member + principal divisor"
                )
            else:
                lines.append(
                    "obstruction: no simultaneous containment decomposition "
                    "exists across the basis rows"
                )
        elif isinstance(ob, EffectivityFailureCertificate):
            if ob.rationally_infeasible:
                lines.append(
                    "obstruction: effectivity constraints are infeasible "
                    "even over the rationals"
                )
            elif ob.generator is not None:
                lines.append(
                    f"obstruction: pullback of effective generator "
                    f"{list(ob.generator)} acquires a negative coefficient "
                    f"at source ray {ob.coefficient_index}"
                )
            else:
                lines.append(
                    "obstruction: support conditions force an inconsistent "
                    "system of equations"
                )
        lines.append(f"scope: {report.scope_note}")
        return "\n".join(lines)
    if report.verdict == "undecided":
        lines.append("undecided: " + report.uniqueness_note)
        lines.append(f"scope: {report.scope_note}")
        return "\n".join(lines)

    lines.append("lifting exists")
    w = report.witness
    for j, (member, character) in enumerate(w.decomposition):
        lines.append(
            f"basis divisor {j}: maps to monomial with divisor exponent "
            f"{list(w.phi.row(j))} = member {list(member)} + principal of "
            f"character {list(character)}"
        )
    lines.append(f"uniqueness: {report.uniqueness_note}")
    if len(report.witness_classes) > 1:
        lines.append(
            "distinct witness classes (pairwise non-equivalence of the "
            "induced liftings is not asserted):"
        )
        for m in report.witness_classes:
            lines.append("  " + str(m.to_lists()))
    lines.append(f"scope: {report.scope_note}")
    return "\n".join(lines)
