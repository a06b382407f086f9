"""Plain-text file formats for algebras, operators and tensors.

Grammar (one record per file, '#' lines and blank lines ignored):

  algebra file:
    "algebra" NAME "field=" FIELD "dim=" INT
    "basis" NAME*
    ["unit=" ELEM*]
    ["grading=" INT*]
    (INT INT INT ELEM)*          product line: e_i e_j has ELEM on e_k

  operator file:
    "operator" "algebra=" NAME "weight=" ELEM
    ELEM* x dim                  matrix rows; columns are basis images

  tensor file:
    "tensor" "algebra=" NAME "terms=" INT
    ("a=" ELEM* ";" "b=" ELEM*) x terms

FIELD is Q, F<p> or F<p>(s=<a>); ELEM uses the field's element encoding.
Writing then reading is the identity on the textual form.
"""

from __future__ import annotations

import re

from .algebras import Algebra, build_algebra
from .errors import AlgebraMismatchError, InvalidSpecError
from .fields import field_from_text, field_to_text
from .linalg import Matrix, Vector
from .rb import LinearOperator, RBOperator, coerce_weight
from .ybe import Tensor2

_ALGEBRA_HEADER = re.compile(r"algebra\s+(\S+)\s+field=(\S+)\s+dim=(\d+)")
_OPERATOR_HEADER = re.compile(r"operator\s+algebra=(\S+)\s+weight=(\S+)")
_TENSOR_HEADER = re.compile(r"tensor\s+algebra=(\S+)\s+terms=(\d+)")


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _vec_text(vec) -> str:
    return " ".join(str(c) for c in vec)


def _parse_vec(field, parts, dim) -> Vector:
    if len(parts) != dim:
        raise InvalidSpecError(f"expected {dim} entries, got {len(parts)}")
    return tuple(field.parse(t) for t in parts)


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


def algebra_to_text(a: Algebra) -> str:
    lines = [f"algebra {a.name} field={field_to_text(a.field)} dim={a.dim}"]
    lines.append("basis " + " ".join(a.basis))
    if a.unit is not None:
        lines.append("unit= " + _vec_text(a.unit))
    if a.grading is not None:
        lines.append("grading= " + " ".join(str(g) for g in a.grading))
    for i in range(a.dim):
        for j in range(a.dim):
            for k, c in a.table[i][j]:
                lines.append(f"{i} {j} {k} {c}")
    return "\n".join(lines) + "\n"


def algebra_from_text(text: str, allow_char2: bool = False) -> Algebra:
    lines = _content_lines(text)
    if not lines:
        raise InvalidSpecError("empty algebra file")
    m = _ALGEBRA_HEADER.fullmatch(lines[0])
    if not m:
        raise InvalidSpecError(f"bad algebra header {lines[0]!r}")
    name = m.group(1)
    field = field_from_text(m.group(2), allow_char2=allow_char2)
    dim = int(m.group(3))
    basis = None
    unit = None
    grading = None
    cells = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
    for line in lines[1:]:
        if line.startswith("basis"):
            basis = line.split()[1:]
            if len(basis) != dim:
                raise InvalidSpecError("basis line length != dim")
        elif line.startswith("unit="):
            unit = _parse_vec(field, line[len("unit=") :].split(), dim)
        elif line.startswith("grading="):
            parts = line[len("grading=") :].split()
            if len(parts) != dim:
                raise InvalidSpecError("grading line length != dim")
            grading = tuple(int(t) for t in parts)
        else:
            parts = line.split()
            if len(parts) != 4:
                raise InvalidSpecError(f"bad product line {line!r}")
            i, j, k = (int(t) for t in parts[:3])
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise InvalidSpecError(f"index out of range in {line!r}")
            cells[i][j][k] = cells[i][j][k] + field.parse(parts[3])
    if basis is None:
        raise InvalidSpecError("missing basis line")
    parsed = Algebra(field, name, basis, cells, unit=unit, grading=grading)
    try:
        rebuilt = build_algebra(field, name)
    except InvalidSpecError:
        return parsed
    if (
        rebuilt.dim == parsed.dim
        and rebuilt.basis == parsed.basis
        and rebuilt.table == parsed.table
        and rebuilt.unit == parsed.unit
        and rebuilt.grading == parsed.grading
    ):
        # canonical algebra: keep the builder's structural extras
        return rebuilt
    return parsed


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------


def operator_to_text(op, weight=None) -> str:
    if isinstance(op, RBOperator):
        weight = op.weight
        op = op.operator
    if weight is None:
        raise InvalidSpecError("weight required when writing a bare operator")
    w = coerce_weight(op.algebra.field, weight)
    lines = [
        f"operator algebra={op.algebra.name} weight={w}",
        "# columns hold the images of the basis vectors",
    ]
    for row in op.matrix.data:
        lines.append(_vec_text(row))
    return "\n".join(lines) + "\n"


def operator_from_text(text: str, algebra: Algebra):
    """Parse a matrix over the given algebra; returns (operator, weight).

    No Rota-Baxter verification happens here; callers decide what to check.
    """
    lines = _content_lines(text)
    if not lines:
        raise InvalidSpecError("empty operator file")
    m = _OPERATOR_HEADER.fullmatch(lines[0])
    if not m:
        raise InvalidSpecError(f"bad operator header {lines[0]!r}")
    if m.group(1) != algebra.name:
        raise AlgebraMismatchError(
            f"operator file is for {m.group(1)!r}, not {algebra.name!r}"
        )
    field = algebra.field
    weight = field.parse(m.group(2))
    rows = lines[1:]
    if len(rows) != algebra.dim:
        raise InvalidSpecError(f"expected {algebra.dim} matrix rows, got {len(rows)}")
    data = [_parse_vec(field, line.split(), algebra.dim) for line in rows]
    return LinearOperator(algebra, Matrix(field, data)), weight


# ---------------------------------------------------------------------------
# tensors
# ---------------------------------------------------------------------------


def tensor_to_text(t: Tensor2) -> str:
    lines = [f"tensor algebra={t.algebra.name} terms={len(t.terms)}"]
    for a, b in t.terms:
        lines.append(f"a= {_vec_text(a)} ; b= {_vec_text(b)}")
    return "\n".join(lines) + "\n"


def tensor_from_text(text: str, algebra: Algebra) -> Tensor2:
    lines = _content_lines(text)
    if not lines:
        raise InvalidSpecError("empty tensor file")
    m = _TENSOR_HEADER.fullmatch(lines[0])
    if not m:
        raise InvalidSpecError(f"bad tensor header {lines[0]!r}")
    if m.group(1) != algebra.name:
        raise AlgebraMismatchError(
            f"tensor file is for {m.group(1)!r}, not {algebra.name!r}"
        )
    count = int(m.group(2))
    if len(lines) - 1 != count:
        raise InvalidSpecError(f"expected {count} term lines, got {len(lines) - 1}")
    field = algebra.field
    terms = []
    for line in lines[1:]:
        mm = re.fullmatch(r"a=\s*(.*?)\s*;\s*b=\s*(.*)", line)
        if not mm:
            raise InvalidSpecError(f"bad tensor term line {line!r}")
        av = _parse_vec(field, mm.group(1).split(), algebra.dim)
        bv = _parse_vec(field, mm.group(2).split(), algebra.dim)
        terms.append((av, bv))
    return Tensor2(algebra, terms)
