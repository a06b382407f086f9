"""Orbit classification of operators and the fixed verification claims.

Three moves preserve the Rota-Baxter property with my conventions:
conjugation by any algebra automorphism, conjugation by a recorded
antiautomorphism (transposition on matrix algebras), and, for weight zero
only, rescaling the whole matrix.  Orbits are computed by closing each
operator under the moves in plain integer arithmetic; the canonical
representative is the row-major smallest member.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebras import Algebra, grassmann2, jordan_form, kaplansky3, matrix_algebra
from .errors import UnsupportedFieldError
from .fields import PrimeField, QuadraticExtension
from .linalg import Matrix, vec_is_zero
from .rb import (
    LinearOperator,
    RBOperator,
    apply_phi,
    coerce_weight,
    diagnostics,
    is_splitting,
    weight0_matrix_ops,
)
from .search import enumerate_automorphisms, enumerate_derivations, enumerate_rb


def _to_int_rows(m: Matrix) -> tuple:
    return tuple(tuple(e.value for e in row) for row in m.data)


def _matmul(p: int, a: tuple, b: tuple) -> tuple:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
        for i in range(n)
    )


def _pack_rows(rows: tuple) -> tuple:
    return tuple(x for row in rows for x in row)


def _unpack_rows(packed: tuple, dim: int) -> tuple:
    return tuple(packed[i * dim : (i + 1) * dim] for i in range(dim))


def matrix_hex(packed: tuple, p: int) -> str:
    """Row-major digits base p folded into one integer, printed in hex."""
    acc = 0
    for d in packed:
        acc = acc * p + d
    return format(acc, "x")


@dataclass(frozen=True)
class OrbitInfo:
    size: int
    rep: tuple
    rep_hex: str
    tags: tuple
    members: frozenset


@dataclass(frozen=True)
class OrbitReport:
    algebra_name: str
    weight: str
    orbits: tuple
    total: int

    def lines(self) -> list[str]:
        out = []
        for k, orb in enumerate(self.orbits):
            tags = ",".join(orb.tags)
            out.append(f"orbit {k}: size={orb.size} rep={orb.rep_hex} tags={tags}")
        out.append(f"total={self.total} orbits={len(self.orbits)}")
        return out

    def orbit_of(self, packed: tuple) -> int | None:
        for k, orb in enumerate(self.orbits):
            if packed in orb.members:
                return k
        return None


def _op_tags(r: RBOperator) -> tuple:
    rep = diagnostics(r.operator, r.weight)
    tags = []
    if rep.splitting:
        tags.append("splitting")
    if rep.square_zero:
        tags.append("sq0")
    if rep.unit_image is not None:
        if vec_is_zero(rep.unit_image):
            tags.append("unit:zero")
        elif rep.unit_image_scalar:
            tags.append("unit:scalar")
        else:
            tags.append("unit:general")
    if rep.unit_case != "not-applicable":
        tags.append(f"case:{rep.unit_case}")
    return tuple(tags)


def pack_operator(r: RBOperator) -> tuple:
    return _pack_rows(_to_int_rows(r.matrix))


def orbit_classify(a: Algebra, ops: list[RBOperator], weight, jobs: int = 1) -> OrbitReport:
    """Partition the operators into orbits under the three moves."""
    field = a.field
    if isinstance(field, QuadraticExtension) or not isinstance(field, PrimeField):
        raise UnsupportedFieldError("orbit classification runs over prime fields")
    p = field.p
    dim = a.dim
    w = coerce_weight(field, weight)
    autos = enumerate_automorphisms(a, jobs=jobs)
    conj_pairs = [
        (_to_int_rows(psi.inverse()), _to_int_rows(psi)) for psi in autos
    ]
    trans_pair = None
    if a.antiauto is not None:
        trans_pair = (_to_int_rows(a.antiauto), _to_int_rows(a.antiauto.inverse()))
    scalings = [s for s in range(2, p)] if w.is_zero() else []

    def neighbors(rows):
        for inv, psi in conj_pairs:
            yield _matmul(p, _matmul(p, inv, rows), psi)
        if trans_pair is not None:
            t, tinv = trans_pair
            yield _matmul(p, _matmul(p, t, rows), tinv)
        for s in scalings:
            yield tuple(tuple(s * x % p for x in row) for row in rows)

    seen: set = set()
    orbits = []
    for r in ops:
        packed = pack_operator(r)
        if packed in seen:
            continue
        frontier = [packed]
        members = {packed}
        while frontier:
            cur = frontier.pop()
            for nb in neighbors(_unpack_rows(cur, dim)):
                key = _pack_rows(nb)
                if key not in members:
                    members.add(key)
                    frontier.append(key)
        seen |= members
        rep = min(members)
        rep_op = RBOperator(
            LinearOperator(
                a, Matrix(field, [[field.element(x) for x in row] for row in _unpack_rows(rep, dim)])
            ),
            w,
        )
        orbits.append(
            OrbitInfo(len(members), rep, matrix_hex(rep, p), _op_tags(rep_op), frozenset(members))
        )
    orbits.sort(key=lambda o: o.rep)
    return OrbitReport(a.name, str(w), tuple(orbits), len(ops))


# ---------------------------------------------------------------------------
# the claim suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    ok: bool
    lines: tuple

    def format(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        body = [f"claim {self.claim}: {status}"]
        body.extend(f"  {ln}" for ln in self.lines)
        return "\n".join(body)


def _claim_even_splitting(jobs: int) -> tuple[bool, list[str]]:
    # even form-space dimension forces splitting for nonzero weight, and the
    # unit is killed by the operator or by its phi image
    ok = True
    lines = []
    for p in (3, 5):
        field = PrimeField(p)
        a = jordan_form(field, [1, 1])
        ops = enumerate_rb(a, 1, jobs=jobs)
        split = all(is_splitting(r) for r in ops)
        unit_killed = all(
            vec_is_zero(r.matrix.apply(a.unit))
            or vec_is_zero(apply_phi(r).matrix.apply(a.unit))
            for r in ops
        )
        ok = ok and split and unit_killed
        lines.append(
            f"J(1,1) over F{p} weight 1: {len(ops)} operators, "
            f"splitting={'all' if split else 'NOT all'}, "
            f"unit killed up to phi={'all' if unit_killed else 'NOT all'}"
        )
    return ok, lines


def _claim_gr2_splitting(jobs: int) -> tuple[bool, list[str]]:
    field = PrimeField(3)
    ops = enumerate_rb(grassmann2(field), 1, jobs=jobs)
    split = all(is_splitting(r) for r in ops)
    return split, [
        f"Gr2 over F3 weight 1: {len(ops)} operators, "
        f"splitting={'all' if split else 'NOT all'}"
    ]


def _claim_k3_splitting(jobs: int) -> tuple[bool, list[str]]:
    ok = True
    lines = []
    for p in (3, 5):
        field = PrimeField(p)
        ops = enumerate_rb(kaplansky3(field), 1, jobs=jobs)
        split = all(is_splitting(r) for r in ops)
        ok = ok and split
        lines.append(
            f"K3 over F{p} weight 1: {len(ops)} operators, "
            f"splitting={'all' if split else 'NOT all'}"
        )
    return ok, lines


def _image_elements(field, basis, dim):
    span = [tuple(field.zero for _ in range(dim))]
    for b in basis:
        span = [
            tuple(x + c * y for x, y in zip(v, b))
            for v in span
            for c in field.elements()
        ]
    return span


def _claim_m2_weight0(jobs: int) -> tuple[bool, list[str]]:
    field = PrimeField(3)
    a = matrix_algebra(field, 2)
    ops = enumerate_rb(a, 0, jobs=jobs)
    ok = True
    lines = [f"M2 over F3 weight 0: {len(ops)} operators"]
    for r in ops:
        image = r.image()
        if image.contains_vector(a.unit):
            ok = False
            lines.append("FAIL: unit found inside an image")
            break
        if r.kernel().dim < 2:
            ok = False
            lines.append("FAIL: kernel dimension below 2")
            break
        for v in _image_elements(field, list(image.basis), a.dim):
            if not (v[0] * v[3] - v[1] * v[2]).is_zero():
                ok = False
                lines.append("FAIL: invertible matrix inside an image")
                break
        if not ok:
            break
    if ok:
        lines.append("every image is unit-free and singular, kernels have dim >= 2")
    report = orbit_classify(a, ops, 0, jobs=jobs)
    lines.extend(report.lines())
    refs = weight0_matrix_ops(field)
    placements = {}
    for name, op in sorted(refs.items()):
        placements[name] = report.orbit_of(pack_operator(op))
    if None in placements.values():
        ok = False
        lines.append("FAIL: a reference operator is missing from the enumeration")
    elif len(set(placements.values())) != len(placements):
        ok = False
        lines.append("FAIL: reference operators share an orbit")
    else:
        placed = " ".join(f"{k}->orbit {v}" for k, v in sorted(placements.items()))
        lines.append(f"reference operators sit in distinct orbits: {placed}")
    return ok, lines


def _closure_of_patterns(a: Algebra, patterns, jobs: int) -> set:
    field = a.field
    p = field.p
    autos = enumerate_automorphisms(a, jobs=jobs)
    conj_pairs = [(_to_int_rows(psi.inverse()), _to_int_rows(psi)) for psi in autos]
    closure = set()
    for rows in patterns:
        for inv, psi in conj_pairs:
            closure.add(_pack_rows(_matmul(p, _matmul(p, inv, rows), psi)))
    return closure


def _claim_gr2_weight0(jobs: int) -> tuple[bool, list[str]]:
    # every weight-zero operator is conjugate to one supported on the
    # radical tail: columns of 1 and e1 inside span{e2, e1e2}, rest zero
    field = PrimeField(3)
    a = grassmann2(field)
    ops = enumerate_rb(a, 0, jobs=jobs)
    patterns = []
    for c0 in range(3):
        for c1 in range(3):
            for c2 in range(3):
                for c3 in range(3):
                    rows = (
                        (0, 0, 0, 0),
                        (0, 0, 0, 0),
                        (c0, c2, 0, 0),
                        (c1, c3, 0, 0),
                    )
                    patterns.append(rows)
    closure = _closure_of_patterns(a, patterns, jobs)
    missing = [r for r in ops if pack_operator(r) not in closure]
    ok = not missing
    lines = [
        f"Gr2 over F3 weight 0: {len(ops)} operators, "
        f"{len(closure)} pattern conjugates, outside the closure: {len(missing)}"
    ]
    return ok, lines


def _claim_k3_weight0(jobs: int) -> tuple[bool, list[str]]:
    # every weight-zero operator is conjugate to: e, x killed, y into
    # the span of e and x
    field = PrimeField(5)
    a = kaplansky3(field)
    ops = enumerate_rb(a, 0, jobs=jobs)
    patterns = []
    for c0 in range(5):
        for c1 in range(5):
            rows = ((0, 0, c0), (0, 0, c1), (0, 0, 0))
            patterns.append(rows)
    closure = _closure_of_patterns(a, patterns, jobs)
    missing = [r for r in ops if pack_operator(r) not in closure]
    ok = not missing
    lines = [
        f"K3 over F5 weight 0: {len(ops)} operators, "
        f"{len(closure)} pattern conjugates, outside the closure: {len(missing)}"
    ]
    return ok, lines


def _claim_gr2_derivations(jobs: int) -> tuple[bool, list[str]]:
    field = PrimeField(3)
    a = grassmann2(field)
    ders = enumerate_derivations(a, 1, jobs=jobs)
    invertible = [d for d in ders if d.matrix.rank() == a.dim]
    neg_id = Matrix.identity(field, a.dim).scale(-1)
    ok = len(invertible) == 1 and invertible[0].matrix == neg_id
    lines = [
        f"Gr2 over F3 weight 1: {len(ders)} derivations, "
        f"{len(invertible)} invertible, minus-identity only: {ok}"
    ]
    return ok, lines


CLAIMS = {
    "T2-even-splitting": _claim_even_splitting,
    "T4-gr2": _claim_gr2_splitting,
    "T5-k3": _claim_k3_splitting,
    "T6-soundness": _claim_m2_weight0,
    "P1-gr2-weight0": _claim_gr2_weight0,
    "P2-k3-weight0": _claim_k3_weight0,
    "C5-no-invertible-derivations": _claim_gr2_derivations,
}


def verify_claim(claim: str, jobs: int = 1) -> ClaimReport:
    if claim not in CLAIMS:
        raise KeyError(f"unknown claim {claim!r}")
    ok, lines = CLAIMS[claim](jobs)
    return ClaimReport(claim, ok, tuple(lines))
