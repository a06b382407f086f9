"""Exhaustive search for operators, automorphisms and derivations.

One backtracking engine serves all three problems.  A candidate matrix is
built column by column over a prime field; every time a basis pair (i, j)
has both its columns fixed, the defining identity for that pair turns into
a linear equation

    sum_m coeffs[m] * column_m = rhs

whose coefficient vector and right side are known.  Equations whose unknown
support is empty are consistency checks (prune on failure); support of size
one forces the next column instead of enumerating it.  Columns are assigned
in index order and candidate values are tried in lexicographic order, so
the result list is deterministic; a raw enumerator with none of this
machinery double-checks the pruned one on small spaces.

All arithmetic here runs on plain integer residues; matrices only become
FieldElement objects at the leaves, where the full identity is re-verified
through the exact checkers.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

from .algebras import Algebra, check_automorphism
from .errors import SearchSpaceTooLargeError, UnsupportedFieldError
from .fields import PrimeField, QuadraticExtension
from .linalg import Matrix
from .rb import (
    LinearOperator,
    RBOperator,
    check_derivation_weight,
    check_rb,
    coerce_weight,
)

RAW_GUARD = 1 << 26


class IntAlgebra:
    """Structure constants of an algebra reduced to ints modulo p."""

    def __init__(self, a: Algebra):
        field = a.field
        if isinstance(field, QuadraticExtension) or not isinstance(field, PrimeField):
            raise UnsupportedFieldError("search runs over prime fields")
        self.algebra = a
        self.p = field.p
        self.dim = a.dim
        self.table = tuple(
            tuple(tuple((k, c.value) for k, c in a.table[i][j]) for j in range(a.dim))
            for i in range(a.dim)
        )
        self.tvec = tuple(
            tuple(self._table_vector(i, j) for j in range(a.dim)) for i in range(a.dim)
        )
        self.commutative = a.is_commutative()

    def _table_vector(self, i: int, j: int) -> tuple:
        out = [0] * self.dim
        for k, c in self.table[i][j]:
            out[k] = c
        return tuple(out)

    def product(self, x, y) -> list:
        p = self.p
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if xi:
                row = self.table[i]
                for j, yj in enumerate(y):
                    if yj:
                        c = xi * yj
                        for k, s in row[j]:
                            out[k] = (out[k] + c * s) % p
        return out


def _basis_int(dim: int) -> list:
    return [tuple(1 if k == j else 0 for k in range(dim)) for j in range(dim)]


class _RBEmitter:
    """R(b_i) R(b_j) = R( R(b_i) b_j + b_i R(b_j) + w b_i b_j )."""

    def __init__(self, ia: IntAlgebra, w: int):
        self.ia = ia
        self.w = w
        self.basis = _basis_int(ia.dim)

    def pair_equation(self, cols, i, j):
        ia = self.ia
        p = ia.p
        v = ia.product(cols[i], self.basis[j])
        for t, x in enumerate(ia.product(self.basis[i], cols[j])):
            v[t] = (v[t] + x) % p
        if self.w:
            for t, x in enumerate(ia.tvec[i][j]):
                v[t] = (v[t] + self.w * x) % p
        return v, ia.product(cols[i], cols[j])


class _AutoEmitter:
    """psi(b_i) psi(b_j) = psi(b_i b_j)."""

    def __init__(self, ia: IntAlgebra):
        self.ia = ia

    def pair_equation(self, cols, i, j):
        return list(self.ia.tvec[i][j]), self.ia.product(cols[i], cols[j])


class _DerivationEmitter:
    """d(b_i b_j) = d(b_i) b_j + b_i d(b_j) + w d(b_i) d(b_j)."""

    def __init__(self, ia: IntAlgebra, w: int):
        self.ia = ia
        self.w = w
        self.basis = _basis_int(ia.dim)

    def pair_equation(self, cols, i, j):
        ia = self.ia
        p = ia.p
        rhs = ia.product(cols[i], self.basis[j])
        for t, x in enumerate(ia.product(self.basis[i], cols[j])):
            rhs[t] = (rhs[t] + x) % p
        if self.w:
            for t, x in enumerate(ia.product(cols[i], cols[j])):
                rhs[t] = (rhs[t] + self.w * x) % p
        return list(ia.tvec[i][j]), rhs


def _column_pool(p: int, dim: int, positions=None) -> list:
    """All column vectors in lexicographic order, zero outside positions."""
    if positions is None:
        positions = range(dim)
    positions = list(positions)
    pool = []
    for combo in itertools.product(range(p), repeat=len(positions)):
        col = [0] * dim
        for pos, val in zip(positions, combo):
            col[pos] = val
        pool.append(tuple(col))
    return pool


def _new_pairs(dim: int, commutative: bool):
    """For each column c, the basis pairs completed by assigning c."""
    out = []
    for c in range(dim):
        pairs = []
        for i in range(c):
            pairs.append((i, c))
            if not commutative:
                pairs.append((c, i))
        pairs.append((c, c))
        out.append(tuple(pairs))
    return out


def _search(ia: IntAlgebra, emitter, pools, jobs: int = 1) -> list:
    """All full column assignments surviving every pair equation.

    With jobs > 1 the first-column candidates are dealt round-robin to
    worker threads; the final sort makes the job count invisible in the
    output.
    """
    pair_plan = _new_pairs(ia.dim, ia.commutative)
    pool_sets = [frozenset(pool) for pool in pools]
    first = pools[0]
    if jobs <= 1 or len(first) <= 1:
        return _search_chunk(ia, emitter, pools, pool_sets, pair_plan)
    results = []
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(
                _search_chunk,
                ia,
                emitter,
                [list(first[t::jobs])] + [list(q) for q in pools[1:]],
                pool_sets,
                pair_plan,
            )
            for t in range(jobs)
        ]
        for fut in futures:
            results.extend(fut.result())
    return results


def _search_chunk(ia, emitter, pools, pool_sets, pair_plan):
    dim, p = ia.dim, ia.p

    def extend(c, cols, pending, results):
        forced = None
        for sup, res in pending:
            if len(sup) == 1 and c in sup:
                inv = pow(sup[c], p - 2, p)
                forced = tuple(r * inv % p for r in res)
                break
        if forced is not None:
            candidates = (forced,) if forced in pool_sets[c] else ()
        else:
            candidates = pools[c]
        for col in candidates:
            ok = True
            pending2 = []
            for sup, res in pending:
                if c in sup:
                    coeff = sup[c]
                    res2 = tuple((r - coeff * x) % p for r, x in zip(res, col))
                    if len(sup) == 1:
                        if any(res2):
                            ok = False
                            break
                    else:
                        sup2 = dict(sup)
                        del sup2[c]
                        pending2.append((sup2, res2))
                else:
                    pending2.append((sup, res))
            if not ok:
                continue
            cols[c] = col
            for i, j in pair_plan[c]:
                coeffs, rhs = emitter.pair_equation(cols, i, j)
                res = list(rhs)
                sup = {}
                for m, cm in enumerate(coeffs):
                    if not cm:
                        continue
                    if m <= c:
                        colm = cols[m]
                        for t in range(dim):
                            res[t] = (res[t] - cm * colm[t]) % p
                    else:
                        sup[m] = cm
                if not sup:
                    if any(res):
                        ok = False
                        break
                else:
                    pending2.append((sup, tuple(res)))
            if ok:
                if c == dim - 1:
                    results.append(tuple(cols))
                else:
                    extend(c + 1, cols, pending2, results)
            cols[c] = None
        return results

    return extend(0, [None] * dim, [], [])


def pack_columns(cols, dim: int) -> tuple:
    """Row-major integer tuple of a column assignment; the sort key."""
    return tuple(cols[j][i] for i in range(dim) for j in range(dim))


def _columns_to_matrix(field, cols, dim: int) -> Matrix:
    return Matrix(field, [[field.element(cols[j][i]) for j in range(dim)] for i in range(dim)])


def _full_pools(ia: IntAlgebra, graded: bool):
    a = ia.algebra
    pools = []
    for j in range(ia.dim):
        if graded and a.grading is not None:
            positions = [k for k in range(ia.dim) if a.grading[k] == a.grading[j]]
        else:
            positions = None
        pools.append(_column_pool(ia.p, ia.dim, positions))
    return pools


def enumerate_rb(a: Algebra, weight, jobs: int = 1) -> list[RBOperator]:
    """All Rota-Baxter operators of the given weight, sorted row-major."""
    ia = IntAlgebra(a)
    w = coerce_weight(a.field, weight)
    emitter = _RBEmitter(ia, w.value)
    found = _search(ia, emitter, _full_pools(ia, graded=False), jobs)
    found.sort(key=lambda cols: pack_columns(cols, ia.dim))
    out = []
    for cols in found:
        m = _columns_to_matrix(a.field, cols, ia.dim)
        op = LinearOperator(a, m)
        if check_rb(op, w):
            out.append(RBOperator(op, w))
    return out


def enumerate_automorphisms(a: Algebra, jobs: int = 1) -> list[Matrix]:
    """All algebra automorphisms (grading-preserving when graded), sorted."""
    ia = IntAlgebra(a)
    emitter = _AutoEmitter(ia)
    found = _search(ia, emitter, _full_pools(ia, graded=True), jobs)
    found.sort(key=lambda cols: pack_columns(cols, ia.dim))
    out = []
    for cols in found:
        m = _columns_to_matrix(a.field, cols, ia.dim)
        if check_automorphism(a, m):
            out.append(m)
    return out


def enumerate_derivations(a: Algebra, weight, jobs: int = 1) -> list[LinearOperator]:
    """All maps obeying the weighted derivation identity, sorted row-major."""
    ia = IntAlgebra(a)
    w = coerce_weight(a.field, weight)
    emitter = _DerivationEmitter(ia, w.value)
    found = _search(ia, emitter, _full_pools(ia, graded=False), jobs)
    found.sort(key=lambda cols: pack_columns(cols, ia.dim))
    out = []
    for cols in found:
        op = LinearOperator(a, _columns_to_matrix(a.field, cols, ia.dim))
        if check_derivation_weight(op, w):
            out.append(op)
    return out


# ---------------------------------------------------------------------------
# raw enumerators: no pruning machinery, used as an oracle on small spaces
# ---------------------------------------------------------------------------


def _guard(p: int, dim: int):
    if p ** (dim * dim) > RAW_GUARD:
        raise SearchSpaceTooLargeError(
            f"{p}^{dim * dim} exceeds the raw enumeration guard"
        )


def _raw_rb_ok(ia: IntAlgebra, cols, w: int, basis) -> bool:
    p, dim = ia.p, ia.dim
    for i in range(dim):
        jstart = i if ia.commutative else 0
        for j in range(jstart, dim):
            lhs = ia.product(cols[i], cols[j])
            v = ia.product(cols[i], basis[j])
            for t, x in enumerate(ia.product(basis[i], cols[j])):
                v[t] = (v[t] + x) % p
            if w:
                for t, x in enumerate(ia.tvec[i][j]):
                    v[t] = (v[t] + w * x) % p
            for t in range(dim):
                acc = 0
                for m, vm in enumerate(v):
                    if vm:
                        acc += vm * cols[m][t]
                if acc % p != lhs[t]:
                    return False
    return True


def enumerate_rb_raw(a: Algebra, weight) -> list[RBOperator]:
    """Plain full enumeration of operator matrices; small spaces only."""
    ia = IntAlgebra(a)
    _guard(ia.p, ia.dim)
    w = coerce_weight(a.field, weight)
    basis = _basis_int(ia.dim)
    pool = _column_pool(ia.p, ia.dim)
    found = []
    for cols in itertools.product(pool, repeat=ia.dim):
        if _raw_rb_ok(ia, cols, w.value, basis):
            found.append(cols)
    found.sort(key=lambda cols: pack_columns(cols, ia.dim))
    out = []
    for cols in found:
        op = LinearOperator(a, _columns_to_matrix(a.field, cols, ia.dim))
        if check_rb(op, w):
            out.append(RBOperator(op, w))
    return out


def enumerate_automorphisms_raw(a: Algebra) -> list[Matrix]:
    """Filter every matrix through check_automorphism; small spaces only."""
    ia = IntAlgebra(a)
    _guard(ia.p, ia.dim)
    pool = _column_pool(ia.p, ia.dim)
    out = []
    for cols in itertools.product(pool, repeat=ia.dim):
        m = _columns_to_matrix(a.field, cols, ia.dim)
        if check_automorphism(a, m):
            out.append((pack_columns(cols, ia.dim), m))
    out.sort(key=lambda t: t[0])
    return [m for _, m in out]
