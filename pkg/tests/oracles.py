"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written differently from the package code:
brute force enumeration, randomized reduction orders, rational arithmetic
via fractions.  Slow is fine; these only run on small instances.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[int, ...]


# -- Smith normal form, randomized pivot order ------------------------------


def snf_diagonal_randomized(rows: Sequence[Sequence[int]], seed: int) -> list[int]:
    """Invariant factors computed with a randomly seeded pivot strategy.

    No transform bookkeeping; row/column operations applied to a mutable
    matrix until diagonal, then the divisibility chain is fixed up.  The
    pivot at each step is chosen at random among the minimal-absolute-value
    nonzero entries, so agreement with the package's fixed pivot rule is
    evidence the diagonal is a true invariant.
    """
    rng = random.Random(seed)
    a = [[int(x) for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag: list[int] = []
    top = 0
    while top < m and top < n:
        entries = [
            (abs(a[i][j]), i, j)
            for i in range(top, m)
            for j in range(top, n)
            if a[i][j] != 0
        ]
        if not entries:
            break
        best = min(e[0] for e in entries)
        _, pi, pj = rng.choice([e for e in entries if e[0] == best])
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        p = a[top][top]
        dirty = False
        for i in range(top + 1, m):
            q = a[i][top] // p
            if q:
                for j in range(top, n):
                    a[i][j] -= q * a[top][j]
            if a[i][top] != 0:
                dirty = True
        for j in range(top + 1, n):
            q = a[top][j] // p
            if q:
                for i in range(top, m):
                    a[i][j] -= q * a[i][top]
            if a[top][j] != 0:
                dirty = True
        if dirty:
            continue
        # pivot must also divide the remaining block
        bad = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(top, n):
                a[top][j] += a[bad][j]
            continue
        diag.append(abs(p))
        top += 1
    return diag


# -- brute force lattice membership and Hilbert bases ------------------------


def lattice_points_from_basis(
    basis: Sequence[Vec], coeff_bound: int
) -> set[Vec]:
    """All integer combinations with coefficients in [-bound, bound]."""
    if not basis:
        return {()}
    width = len(basis[0])
    pts: set[Vec] = set()
    for coeffs in itertools.product(
        range(-coeff_bound, coeff_bound + 1), repeat=len(basis)
    ):
        v = tuple(
            sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(width)
        )
        pts.add(v)
    return pts


def in_lattice_bruteforce(v: Vec, basis: Sequence[Vec], coeff_bound: int) -> bool:
    return tuple(v) in lattice_points_from_basis(basis, coeff_bound)


def hilbert_basis_bruteforce(
    basis: Sequence[Vec], box: int
) -> list[Vec]:
    """Irreducible nonzero lattice points of (lattice ∩ nonnegative orthant)
    inside the cube [0, box]^width.

    Only correct when the true Hilbert basis fits inside the cube; callers
    pick ``box`` generously for the small cases under test.
    """
    width = len(basis[0]) if basis else 0
    members = {
        p
        for p in lattice_points_from_basis(basis, 4 * box + 4)
        if all(0 <= x <= box for x in p) and any(x != 0 for x in p)
    }
    irreducible = []
    for p in sorted(members, key=lambda q: (sum(q), q)):
        reducible = False
        for q in members:
            if q == p:
                continue
            r = tuple(a - b for a, b in zip(p, q))
            if all(x >= 0 for x in r) and (r in members or all(x == 0 for x in r)):
                reducible = True
                break
        if not reducible:
            irreducible.append(p)
    return irreducible


# -- rational cone geometry ---------------------------------------------------


def solve_rational(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int]
) -> list[Fraction] | None:
    """One rational solution of matrix @ x = rhs by Gaussian elimination."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x


def in_cone_bruteforce(v: Vec, gens: Sequence[Vec], denom_bound: int = 24) -> bool:
    """Is v a nonnegative rational combination of gens?  Decided by checking
    all subsets of generators of size <= dim for a nonnegative solution
    (Carathéodory), exactly over Q."""
    if all(x == 0 for x in v):
        return True
    if not gens:
        return False
    width = len(v)
    for k in range(1, min(len(gens), width) + 1):
        for sub in itertools.combinations(gens, k):
            cols = [[sub[j][i] for j in range(k)] for i in range(width)]
            sol = solve_rational(cols, list(v))
            if sol is not None and all(c >= 0 for c in sol):
                # confirm the residual really vanished (solve is exact)
                return True
    return False


def dual_rays_bruteforce(normals: Sequence[Vec], dim: int, box: int = 3) -> set[Vec]:
    """Primitive generators of {u : <n,u> >= 0 for all n} found by scanning
    an integer box and keeping primitive non-reducible directions.  Returns
    the set of primitive points in the cone within the box (not only extreme
    rays) — used for containment cross-checks, not for exact ray lists."""
    out = set()
    for p in itertools.product(range(-box, box + 1), repeat=dim):
        if all(x == 0 for x in p):
            continue
        if all(sum(a * b for a, b in zip(n, p)) >= 0 for n in normals):
            from math import gcd

            g = 0
            for x in p:
                g = gcd(g, abs(x))
            out.add(tuple(x // g for x in p))
    return out


def hnf_rowspace_bruteforce(rows: Sequence[Vec], coeff_bound: int = 5) -> set[Vec]:
    """Sample of the row lattice, for equality checks between two bases."""
    return lattice_points_from_basis(rows, coeff_bound)
