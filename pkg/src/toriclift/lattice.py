"""Exact integer linear algebra over Z.

Everything here works with arbitrary-precision Python ints; no floats ever
enter a computation.  The central primitive is the Smith normal form with
unimodular transforms on both sides, from which integer system solving,
cokernels of maps of free modules, homomorphism extension and lattice
arithmetic (Hermite bases, sums, intersections, membership) are derived.

Pivot selection in the Smith reduction is fixed (smallest nonzero absolute
value, then lowest row, then lowest column) so that all derived data —
transforms, particular solutions, quotient coordinates — are deterministic
and can be pinned in golden tests.

Convention: vectors are tuples of ints.  ``IntMatrix`` rows/columns follow
the usual (row, col) indexing; matrix product via ``@``.  Maps of free
modules appear in two shapes and each call site says which: ``A @ x = b``
(columns act on coordinate columns) or row-vector form ``v @ X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed a configured size guard."""


Vec = tuple[int, ...]


def _as_vec(v: Iterable[int]) -> Vec:
    t = tuple(int(x) for x in v)
    return t


def vec_add(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(k: int, a: Sequence[int]) -> Vec:
    return tuple(k * x for x in a)


def vec_dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


def vec_is_zero(a: Sequence[int]) -> bool:
    return all(x == 0 for x in a)


def vec_gcd(a: Sequence[int]) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def primitive_vector(a: Sequence[int]) -> Vec:
    """Divide out the content; the zero vector stays zero."""
    g = vec_gcd(a)
    if g <= 1:
        return _as_vec(a)
    return tuple(x // g for x in a)


class IntMatrix:
    """Immutable integer matrix.

    Thin wrapper over a tuple of row tuples; supports ``@``, ``+``, ``-``,
    scalar ``*``, transpose and hashing, which is all the engine needs.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0 if cols is None else cols
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_data", rows)

    def __setattr__(self, *_):  # pragma: no cover - immutability guard
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        return cls(rows, cols=cols)

    @classmethod
    def column(cls, v: Sequence[int]) -> "IntMatrix":
        return cls(tuple((int(x),) for x in v), cols=1)

    def row(self, i: int) -> Vec:
        return self._data[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self._data)

    def row_list(self) -> tuple[Vec, ...]:
        return self._data

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._data[i][j]

    def __iter__(self) -> Iterator[Vec]:
        return iter(self._data)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self._data)) if self._data else (), cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        bt = tuple(zip(*other._data)) if other._data else ()
        return IntMatrix(
            tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in self._data),
            cols=other.cols,
        )

    def apply(self, v: Sequence[int]) -> Vec:
        """Column action: self @ v for a coordinate column v."""
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return tuple(vec_dot(r, v) for r in self._data)

    def left_apply(self, v: Sequence[int]) -> Vec:
        """Row action: v @ self for a coordinate row v."""
        if len(v) != self.rows:
            raise ValueError("length mismatch")
        return tuple(
            sum(v[i] * self._data[i][j] for i in range(self.rows)) for j in range(self.cols)
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._data, other._data)),
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-x for x in r) for r in self._data), cols=self.cols)

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(k * x for x in r) for r in self._data), cols=self.cols)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._data]!r})"

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self._data)


@dataclass(frozen=True)
class SNFDecomposition:
    """U @ A @ V = S with U, V unimodular and S in Smith normal form.

    ``U_inv`` and ``V_inv`` are the exact inverses, tracked during the
    reduction so callers never have to invert anything.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> Vec:
        n = min(self.S.rows, self.S.cols)
        return tuple(self.S[i, i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> Vec:
        return tuple(d for d in self.diagonal if d != 0)


def _find_pivot(data: list[list[int]], k: int, m: int, n: int) -> Optional[tuple[int, int]]:
    # Fixed rule: smallest nonzero |entry|, ties by lowest row then lowest column.
    best = None
    best_key = None
    for i in range(k, m):
        row = data[i]
        for j in range(k, n):
            v = row[j]
            if v != 0:
                key = (abs(v), i, j)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
    return best


def smith_normal_form(A: IntMatrix) -> SNFDecomposition:
    """Smith normal form with both transforms and their inverses.

    Returns S with nonnegative diagonal entries satisfying the divisibility
    chain s1 | s2 | ... ; deterministic for a given input by the fixed pivot
    rule.
    """
    m, n = A.rows, A.cols
    data = [list(r) for r in A.row_list()]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Ui = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vi = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        if i == j:
            return
        data[i], data[j] = data[j], data[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:  # inverse gets the inverse op: column swap
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i == j:
            return
        for r in data:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_add(dst, src, c):
        # row_dst += c * row_src
        if c == 0:
            return
        data[dst] = [a + c * b for a, b in zip(data[dst], data[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        for r in Ui:  # inverse: col_src -= c * col_dst
            r[src] -= c * r[dst]

    def col_add(dst, src, c):
        if c == 0:
            return
        for r in data:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]
        Vi[src] = [a - c * b for a, b in zip(Vi[src], Vi[dst])]

    def row_negate(i):
        data[i] = [-a for a in data[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    for k in range(min(m, n)):
        while True:
            piv = _find_pivot(data, k, m, n)
            if piv is None:
                break
            row_swap(k, piv[0])
            col_swap(k, piv[1])
            p = data[k][k]
            # Clear column k below and row k to the right by Euclidean steps.
            dirty = False
            for i in range(k + 1, m):
                if data[i][k] != 0:
                    q = data[i][k] // p
                    row_add(i, k, -q)
                    if data[i][k] != 0:
                        dirty = True
            for j in range(k + 1, n):
                if data[k][j] != 0:
                    q = data[k][j] // p
                    col_add(j, k, -q)
                    if data[k][j] != 0:
                        dirty = True
            if dirty:
                continue
            # Row/col clean; enforce divisibility of the remaining block.
            p = data[k][k]
            offender = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if data[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(k, offender, 1)
        if piv is None:
            break

    for k in range(min(m, n)):
        if data[k][k] < 0:
            row_negate(k)

    return SNFDecomposition(
        U=IntMatrix(U, cols=m),
        S=IntMatrix(data, cols=n),
        V=IntMatrix(V, cols=n),
        U_inv=IntMatrix(Ui, cols=m),
        V_inv=IntMatrix(Vi, cols=n),
    )


def determinant(A: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    a = [list(r) for r in A.row_list()]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matrix_rank(A: IntMatrix) -> int:
    return smith_normal_form(A).rank


def is_unimodular(A: IntMatrix) -> bool:
    return A.rows == A.cols and abs(determinant(A)) == 1


@dataclass(frozen=True)
class IntegerSolution:
    """All integer solutions of A @ x = b: particular + kernel lattice basis."""

    particular: Vec
    kernel_basis: tuple[Vec, ...]


def solve_integer_linear(A: IntMatrix, b: Sequence[int]) -> Optional[IntegerSolution]:
    """Solve A @ x = b over Z.

    Returns None when no integral solution exists.  The particular solution
    and the kernel basis (columns of V past the rank) are deterministic.
    """
    if len(b) != A.rows:
        raise ValueError("rhs length mismatch")
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    n = A.cols
    y = [0] * n
    r = snf.rank
    for i in range(min(A.rows, n)):
        s = snf.S[i, i]
        if s != 0:
            if c[i] % s != 0:
                return None
            y[i] = c[i] // s
    # Rows of S beyond the diagonal / rank must see zero on the rhs.
    for i in range(A.rows):
        if i >= n or snf.S[i, i] == 0:
            if c[i] != 0:
                return None
    x = snf.V.apply(y)
    kernel = tuple(snf.V.col(j) for j in range(r, n))
    return IntegerSolution(particular=x, kernel_basis=kernel)


def kernel_basis(A: IntMatrix) -> tuple[Vec, ...]:
    """Basis of the integer kernel {x : A @ x = 0}."""
    sol = solve_integer_linear(A, (0,) * A.rows)
    assert sol is not None
    return sol.kernel_basis


# ---------------------------------------------------------------------------
# Finitely generated abelian groups and their homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FgAbGroup:
    """Canonical form Z^free_rank + sum of Z/k with k in a divisibility chain.

    Coordinates of an element: first the torsion coordinates (in the order of
    ``torsion``), then the free coordinates.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")
        if any(k < 2 for k in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    @property
    def n_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        out = 1
        for k in self.torsion:
            out *= k
        return out

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def reduce(self, coords: Sequence[int]) -> Vec:
        """Canonical representative: torsion coordinates mod their orders."""
        if len(coords) != self.n_generators:
            raise ValueError("coordinate length mismatch")
        t = len(self.torsion)
        return tuple(c % k for c, k in zip(coords[:t], self.torsion)) + tuple(coords[t:])

    def is_zero_element(self, coords: Sequence[int]) -> bool:
        return vec_is_zero(self.reduce(coords))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{k}" for k in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


class CokernelData:
    """Cokernel of a map of free modules, with explicit coordinates.

    For ``A`` (columns = images of the domain basis) this presents
    Z^rows / columnspace(A) in canonical form and provides:

    * ``group`` — the FgAbGroup;
    * ``project(v)`` — coordinates of the class of ``v``;
    * ``generator_lifts`` — vectors in Z^rows projecting to the standard
      generators, in coordinate order.
    """

    def __init__(self, A: IntMatrix):
        snf = smith_normal_form(A)
        m = A.rows
        diag = list(snf.diagonal) + [0] * (m - min(A.rows, A.cols))
        torsion_idx = [i for i in range(m) if i < len(diag) and diag[i] >= 2]
        free_idx = [i for i in range(m) if i >= len(diag) or diag[i] == 0]
        # Sign-normalize the free functionals so coordinates are canonical.
        signs = {}
        for i in free_idx:
            row = snf.U.row(i)
            lead = next((x for x in row if x != 0), 1)
            signs[i] = 1 if lead > 0 else -1
        self._snf = snf
        self._m = m
        self._torsion_idx = torsion_idx
        self._free_idx = free_idx
        self._signs = signs
        self.group = FgAbGroup(
            free_rank=len(free_idx), torsion=tuple(diag[i] for i in torsion_idx)
        )
        lifts = []
        for i in torsion_idx + free_idx:
            s = signs.get(i, 1)
            lifts.append(tuple(s * x for x in snf.U_inv.col(i)))
        self.generator_lifts: tuple[Vec, ...] = tuple(lifts)

    def project(self, v: Sequence[int]) -> Vec:
        if len(v) != self._m:
            raise ValueError("length mismatch")
        y = self._snf.U.apply(v)
        tor = tuple(
            y[i] % self._snf.S[i, i] for i in self._torsion_idx
        )
        free = tuple(self._signs[i] * y[i] for i in self._free_idx)
        return tor + free

    def is_zero(self, v: Sequence[int]) -> bool:
        return vec_is_zero(self.project(v))


def cokernel_group(A: IntMatrix) -> CokernelData:
    """Z^rows modulo the column space of A, in canonical coordinates."""
    return CokernelData(A)


@dataclass(frozen=True)
class AbHom:
    """Homomorphism between finitely generated abelian groups.

    ``matrix`` rows are images of the domain generators in codomain
    coordinates (row-vector action: coords @ matrix, then reduce).
    Well-definedness on torsion generators is checked at construction.
    """

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.domain.n_generators:
            raise ValueError("matrix rows must match domain generators")
        if self.matrix.cols != self.codomain.n_generators:
            raise ValueError("matrix cols must match codomain generators")
        for i, k in enumerate(self.domain.torsion):
            img = vec_scale(k, self.matrix.row(i))
            if not self.codomain.is_zero_element(img):
                raise ValueError(
                    f"not a homomorphism: order-{k} generator {i} maps to an element "
                    f"whose {k}-multiple is nonzero"
                )

    def apply(self, coords: Sequence[int]) -> Vec:
        return self.codomain.reduce(self.matrix.left_apply(self.domain.reduce(coords)))

    def compose(self, then: "AbHom") -> "AbHom":
        """Returns x -> then(self(x)); codomain must equal then.domain."""
        if self.codomain != then.domain:
            raise ValueError("composition domain mismatch")
        return AbHom(self.domain, then.codomain, self.matrix @ then.matrix)

    def is_zero(self) -> bool:
        return all(
            self.codomain.is_zero_element(self.matrix.row(i))
            for i in range(self.matrix.rows)
        )

    def is_identity(self) -> bool:
        if self.domain != self.codomain:
            return False
        n = self.domain.n_generators
        ident = IntMatrix.identity(n)
        return all(
            self.codomain.is_zero_element(vec_sub(self.matrix.row(i), ident.row(i)))
            for i in range(n)
        )


# ---------------------------------------------------------------------------
# Lattice (subgroup of Z^n) arithmetic via Hermite bases
# ---------------------------------------------------------------------------


def hermite_row_basis(rows: Iterable[Sequence[int]], width: Optional[int] = None) -> tuple[Vec, ...]:
    """Canonical row-echelon (Hermite) basis of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    zero rows are dropped.  The result is the unique canonical basis, so two
    generating sets span the same lattice iff their Hermite bases are equal.
    """
    mat = [list(_as_vec(r)) for r in rows]
    if mat:
        width = len(mat[0])
        if any(len(r) != width for r in mat):
            raise ValueError("ragged rows")
    elif width is None:
        raise ValueError("width required for empty generating set")
    n = width
    basis: list[list[int]] = []
    pivot_cols: list[int] = []
    for row in mat:
        row = list(row)
        # Reduce against existing pivots left to right, inserting new pivots.
        while True:
            # find leftmost nonzero
            lead = next((c for c in range(n) if row[c] != 0), None)
            if lead is None:
                break
            # find insertion point among pivot columns
            pos = 0
            while pos < len(pivot_cols) and pivot_cols[pos] < lead:
                pos += 1
            if pos < len(pivot_cols) and pivot_cols[pos] == lead:
                b = basis[pos]
                g = gcd(row[lead], b[lead])
                # Combine so the pivot row gets gcd, row gets 0 (extended gcd).
                x0, y0 = _exgcd(b[lead], row[lead])
                newpivot = [x0 * bb + y0 * rr for bb, rr in zip(b, row)]
                factor_b = b[lead] // g
                factor_r = row[lead] // g
                row = [rr * factor_b - bb * factor_r for bb, rr in zip(b, row)]
                basis[pos] = newpivot
                continue
            basis.insert(pos, row)
            pivot_cols.insert(pos, lead)
            break
    # Normalize: positive pivots, reduce entries above each pivot.
    for i in range(len(basis)):
        if basis[i][pivot_cols[i]] < 0:
            basis[i] = [-x for x in basis[i]]
    # Ascending pivot order: step i fixes column pivot_cols[i] for good, since
    # later steps only modify strictly larger columns.
    for i in range(len(basis)):
        p = pivot_cols[i]
        pv = basis[i][p]
        for t in range(i):
            q = basis[t][p] // pv
            if q:
                basis[t] = [a - q * b for a, b in zip(basis[t], basis[i])]
    return tuple(tuple(r) for r in basis)


def _exgcd(a: int, b: int) -> tuple[int, int]:
    """x, y with a*x + b*y = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return old_x, old_y


def lattice_contains(basis: Sequence[Sequence[int]], v: Sequence[int], width: Optional[int] = None) -> bool:
    """Membership of v in the lattice spanned by ``basis`` rows."""
    h = hermite_row_basis(basis, width=width if width is not None else len(v))
    r = list(_as_vec(v))
    n = len(r)
    for row in h:
        lead = next((c for c in range(n) if row[c] != 0), None)
        if lead is None:
            continue
        if r[lead] % row[lead] == 0:
            q = r[lead] // row[lead]
            if q:
                r = [a - q * b for a, b in zip(r, row)]
        # leave nonzero remainder in place; caught by final zero test
    return vec_is_zero(r)


def lattice_coefficients(
    basis: Sequence[Sequence[int]], v: Sequence[int]
) -> Optional[Vec]:
    """Integer coefficients c with c @ basis = v, or None."""
    rows = [_as_vec(r) for r in basis]
    if not rows:
        return () if vec_is_zero(v) else None
    A = IntMatrix(rows).T  # columns = basis vectors
    sol = solve_integer_linear(A, v)
    if sol is None:
        return None
    return sol.particular


def lattice_sum(
    a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], width: int
) -> tuple[Vec, ...]:
    return hermite_row_basis(list(a) + list(b), width=width)


def lattice_intersection(
    a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], width: int
) -> tuple[Vec, ...]:
    """Canonical basis of the intersection of two row lattices."""
    ra = [_as_vec(r) for r in a]
    rb = [_as_vec(r) for r in b]
    if not ra or not rb:
        return ()
    stacked = IntMatrix(ra + [vec_scale(-1, r) for r in rb])
    # left kernel: coefficient rows (x | y) with x@ra = y@rb
    ker = kernel_basis(stacked.T)
    vecs = []
    for coeffs in ker:
        x = coeffs[: len(ra)]
        w = [0] * width
        for c, row in zip(x, ra):
            for j in range(width):
                w[j] += c * row[j]
        vecs.append(tuple(w))
    return hermite_row_basis(vecs, width=width)


def lattice_equal(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], width: int) -> bool:
    return hermite_row_basis(a, width=width) == hermite_row_basis(b, width=width)


# ---------------------------------------------------------------------------
# Homomorphism extension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomExtension:
    """Extensions of a homomorphism prescribed on a subgroup of Z^n.

    ``particular`` is one extension (n x k, row-vector action v @ X); the
    full solution set is particular + integer span of ``kernel``.
    """

    particular: IntMatrix
    kernel: tuple[IntMatrix, ...]


@dataclass(frozen=True)
class ExtensionObstruction:
    """Certificate that no extension to the ambient lattice exists.

    ``multiplier * phi(element) = required`` has no integral ``phi(element)``:
    ``element`` lies in the ambient lattice, its ``multiplier``-th multiple in
    the subgroup, and ``required`` (the forced value on that multiple) is not
    divisible by ``multiplier``.
    """

    multiplier: int
    element: Vec
    required: Vec


def extend_homomorphism(
    subgroup_basis: IntMatrix, values: IntMatrix
) -> tuple[Optional[HomExtension], Optional[ExtensionObstruction]]:
    """Extend ``basis row i -> values row i`` to all of Z^ambient.

    Solves B @ X = W for X (ambient x codomain).  Returns (extension, None)
    or (None, obstruction).  Raises ValueError when the prescribed values are
    inconsistent on relations among the given rows.
    """
    B, W = subgroup_basis, values
    if B.rows != W.rows:
        raise ValueError("one value row per basis row required")
    n, k = B.cols, W.cols
    snf = smith_normal_form(B)
    Wp = snf.U @ W  # rows: s_i * Y_i = Wp_i
    Y = [[0] * k for _ in range(n)]
    for i in range(B.rows):
        s = snf.S[i, i] if i < min(B.rows, n) else 0
        row = Wp.row(i)
        if s == 0:
            if not vec_is_zero(row):
                raise ValueError("prescribed values are inconsistent on a relation")
            continue
        if any(x % s for x in row):
            # (U @ B) row i = s * (V_inv row i), so s times this element lies
            # in the subgroup and its prescribed value is Wp row i.
            element = snf.V_inv.row(i)
            return None, ExtensionObstruction(multiplier=s, element=element, required=row)
        Y[i] = [x // s for x in row]
    X = snf.V @ IntMatrix(Y, cols=k)
    rank = snf.rank
    kernel = []
    for i in range(rank, n):
        col = snf.V.col(i)
        for j in range(k):
            kernel.append(
                IntMatrix(
                    tuple(
                        tuple(col[r] if c == j else 0 for c in range(k))
                        for r in range(n)
                    ),
                    cols=k,
                )
            )
    return HomExtension(particular=X, kernel=tuple(kernel)), None


# ---------------------------------------------------------------------------
# Hilbert basis of (row lattice) intersect nonnegative orthant
# ---------------------------------------------------------------------------

MAX_HILBERT_AMBIENT = 16
MAX_HILBERT_POINTS = 500_000
MAX_HILBERT_BOX = 10**6


def _lattice_points_in_box(
    basis: Sequence[Vec], bounds: Sequence[int], limit: int
) -> list[Vec]:
    """All lattice points x with 0 <= x <= bounds, by DFS over the Hermite basis."""
    h = hermite_row_basis(basis, width=len(bounds))
    n = len(bounds)
    if not h:
        return [(0,) * n]
    pivots = []
    for row in h:
        lead = next(c for c in range(n) if row[c] != 0)
        pivots.append(lead)
    out: list[Vec] = []
    current = [0] * n
    visited = [0]

    def dfs(depth: int):
        if depth == len(h):
            visited[0] += 1
            if visited[0] > limit:
                raise ResourceLimitError(
                    f"lattice point enumeration exceeded {limit} points"
                )
            if all(0 <= current[j] <= bounds[j] for j in range(n)):
                out.append(tuple(current))
            return
        row = h[depth]
        p = pivots[depth]
        # columns left of this pivot receive no further contributions
        for j in range(p):
            if not 0 <= current[j] <= bounds[j]:
                return
        pv = row[p]
        base = current[p]
        # c must satisfy 0 <= base + c*pv <= bounds[p], with pv > 0
        lo = _ceil_div(-base, pv)
        hi = _floor_div(bounds[p] - base, pv)
        for c in range(lo, hi + 1):
            if c:
                for j in range(p, n):
                    current[j] += c * row[j]
            dfs(depth + 1)
            if c:
                for j in range(p, n):
                    current[j] -= c * row[j]

    dfs(0)
    return out


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _floor_div(a: int, b: int) -> int:
    return a // b


def hilbert_basis(
    subgroup_basis: Sequence[Sequence[int]],
    ambient_rank: int,
    *,
    max_points: int = MAX_HILBERT_POINTS,
) -> tuple[Vec, ...]:
    """Minimal generating set of (lattice) intersect (nonnegative orthant).

    The semigroup of nonnegative lattice vectors is finitely generated; this
    returns its unique minimal generators sorted by (coordinate sum, lex).
    Uses extreme rays of the rational cone to bound a box enumeration, then a
    reducibility sieve.  Guarded: ambient_rank <= 16 and bounded enumeration.
    """
    from . import polyhedra  # local import to avoid a cycle at module load

    if ambient_rank > MAX_HILBERT_AMBIENT:
        raise ResourceLimitError(
            f"ambient rank {ambient_rank} exceeds Hilbert basis guard {MAX_HILBERT_AMBIENT}"
        )
    rows = [_as_vec(r) for r in subgroup_basis]
    for r in rows:
        if len(r) != ambient_rank:
            raise ValueError("basis width mismatch")
    h = hermite_row_basis(rows, width=ambient_rank)
    if not h:
        return ()
    # Fast path: the full integer lattice — generators are the unit vectors.
    if h == tuple(
        tuple(1 if i == j else 0 for j in range(ambient_rank)) for i in range(ambient_rank)
    ):
        return tuple(
            sorted(
                tuple(1 if i == j else 0 for j in range(ambient_rank))
                for i in range(ambient_rank)
            )
        )
    # Extreme rays of {c : c @ h >= 0} in coefficient space -> ambient rays.
    ineqs = [tuple(row[j] for row in h) for j in range(ambient_rank)]
    lines, rays = polyhedra.dual_description(ineqs, len(h))
    assert not lines, "coefficient cone of an independent basis is pointed"
    gens: list[Vec] = []
    for c in rays:
        x = [0] * ambient_rank
        for ci, row in zip(c, h):
            for j in range(ambient_rank):
                x[j] += ci * row[j]
        xv = primitive_vector(x)
        gens.append(_minimal_lattice_multiple(h, xv))
    if not gens:
        return ()
    bounds = tuple(sum(g[j] for g in gens) for j in range(ambient_rank))
    if any(b > MAX_HILBERT_BOX for b in bounds):
        raise ResourceLimitError(
            f"Hilbert basis enumeration box {bounds} exceeds guard {MAX_HILBERT_BOX}"
        )
    pts = [
        p
        for p in _lattice_points_in_box(h, bounds, max_points)
        if not vec_is_zero(p) and all(x >= 0 for x in p)
    ]
    pts.sort(key=lambda p: (sum(p), p))
    members = set(pts)
    basis_out = []
    for p in pts:
        reducible = False
        for q in pts:
            if sum(q) >= sum(p):  # a proper summand has strictly smaller sum
                break
            if all(a <= b for a, b in zip(q, p)):
                rem = vec_sub(p, q)
                if not vec_is_zero(rem) and rem in members:
                    reducible = True
                    break
        if not reducible:
            basis_out.append(p)
    return tuple(basis_out)


def _minimal_lattice_multiple(basis: Sequence[Vec], direction: Vec) -> Vec:
    """Smallest positive multiple of ``direction`` lying in the row lattice.

    ``direction`` must lie in the rational span of the basis rows.
    """
    rows = [list(r) for r in basis]
    width = len(direction)
    # kernel of (c, k) -> c @ basis - k * direction is one-dimensional
    cols = [[rows[i][j] for i in range(len(rows))] + [-direction[j]] for j in range(width)]
    ker = kernel_basis(IntMatrix(cols, cols=len(rows) + 1))
    assert len(ker) == 1, "direction must lie in the span of the basis"
    v = ker[0]
    k = v[-1]
    assert k != 0
    if k < 0:
        v = vec_scale(-1, v)
        k = -k
    return vec_scale(k, direction)
