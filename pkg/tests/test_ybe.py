import random

import pytest

from rbx.algebras import cayley_dickson, jordan_form, matrix_algebra, sl2
from rbx.errors import (
    AlgebraMismatchError,
    DegenerateFormError,
    MissingStructureError,
    NotAssociativeError,
)
from rbx.fields import PrimeField, Rationals
from rbx.linalg import Matrix
from rbx.rb import LinearOperator, check_rb, weight0_matrix_ops
from rbx.ybe import (
    AssociativeForm,
    Tensor2,
    check_associative_form,
    check_aybe,
    check_naybe,
    corner_pair_tensor,
    op_from_tensor_form,
    op_from_tensor_sandwich,
    tensor_from_op,
    trace_form,
)

Q = Rationals()
F5 = PrimeField(5)


def mat(field, rows):
    return Matrix(field, [[field.element(x) for x in row] for row in rows])


def test_corner_pair_solves_both_equations():
    t = corner_pair_tensor(Q)
    assert check_aybe(t)
    assert check_naybe(t)


def test_zero_and_single_term_tensors():
    a = matrix_algebra(Q, 2)
    zero = Tensor2(a, [])
    assert check_aybe(zero) and check_naybe(zero)
    # e12 (x) e12 solves both: all triple products vanish
    e12 = a.basis_vector(1)
    t = Tensor2(a, [(e12, e12)])
    assert check_aybe(t) and check_naybe(t)


def test_aybe_of_nonsolution():
    a = matrix_algebra(Q, 2)
    one = a.unit
    t = Tensor2(a, [(one, one)])
    assert not check_aybe(t)
    assert not check_naybe(t)


def test_ybe_requires_associative():
    j = jordan_form(Q, [1, 1])
    t = Tensor2(j, [(j.basis_vector(1), j.basis_vector(2))])
    with pytest.raises(NotAssociativeError):
        check_aybe(t)


def test_sandwich_operator_from_corner_pair():
    t = corner_pair_tensor(Q)
    op = op_from_tensor_sandwich(t)
    assert check_rb(op, Q.zero)
    a = t.algebra
    ker = op.kernel()
    # kernel: a11 = a21 = a33 = a43 = 0 as matrix entries
    killed = {0, 4, 10, 14}  # row-major indices (1,1),(2,1),(3,3),(4,3)
    assert ker.dim == 12
    for v in ker.basis:
        for idx in killed:
            assert v[idx].is_zero()
    from rbx.algebras import check_subalgebra

    assert not check_subalgebra(a, ker)
    assert check_subalgebra(a, op.image())


def test_trace_form_on_matrix_algebra():
    a = matrix_algebra(F5, 2)
    form = trace_form(a)
    assert check_associative_form(a, form.gram)
    assert form.is_nondegenerate()
    # tr(e11 e11) = 1, tr(e12 e21) = 1, tr(e11 e22) = 0
    assert form.pair(a.basis_vector(0), a.basis_vector(0)) == F5.one
    assert form.pair(a.basis_vector(1), a.basis_vector(2)) == F5.one
    assert form.pair(a.basis_vector(0), a.basis_vector(3)).is_zero()


def test_trace_form_on_cayley_dickson():
    h = cayley_dickson(F5, [-1, -1])
    form = trace_form(h)
    assert check_associative_form(h, form.gram)
    assert form.is_nondegenerate()


def test_trace_form_needs_structure():
    with pytest.raises(MissingStructureError):
        trace_form(sl2(PrimeField(7)))


def test_degenerate_form_rejected():
    a = matrix_algebra(F5, 2)
    gram = Matrix.zeros(F5, 4, 4)
    with pytest.raises(DegenerateFormError):
        op_from_tensor_form(Tensor2(a, []), AssociativeForm(a, gram))


def test_algebra_mismatch_rejected():
    a = matrix_algebra(F5, 2)
    b = cayley_dickson(F5, [-1, -1])
    t = Tensor2(a, [])
    with pytest.raises(AlgebraMismatchError):
        op_from_tensor_form(t, trace_form(b))


def test_tensor_operator_round_trips():
    a = matrix_algebra(Q, 2)
    form = trace_form(a)
    for r in weight0_matrix_ops(Q).values():
        t = tensor_from_op(r.operator, form)
        back = op_from_tensor_form(t, form)
        assert back.matrix == r.matrix
    rng = random.Random(17)
    b = cayley_dickson(F5, [-1, -1])
    fb = trace_form(b)
    for _ in range(20):
        terms = [
            (
                tuple(F5.element(rng.randrange(5)) for _ in range(4)),
                tuple(F5.element(rng.randrange(5)) for _ in range(4)),
            )
            for _ in range(2)
        ]
        t = Tensor2(b, terms)
        op = op_from_tensor_form(t, fb)
        t2 = tensor_from_op(op, fb)
        assert t2 == t
        assert op_from_tensor_form(t2, fb).matrix == op.matrix


def test_naybe_matches_rb_weight0_sample():
    rng = random.Random(23)
    for algebra in (matrix_algebra(F5, 2), cayley_dickson(F5, [-1, -1])):
        form = trace_form(algebra)
        agreements = 0
        solutions = 0
        for _ in range(80):
            terms = [
                (
                    tuple(F5.element(rng.randrange(5)) for _ in range(4)),
                    tuple(F5.element(rng.randrange(5)) for _ in range(4)),
                )
                for _ in range(2)
            ]
            t = Tensor2(algebra, terms)
            lhs = check_naybe(t)
            rhs = check_rb(op_from_tensor_form(t, form), F5.zero)
            assert lhs == rhs
            agreements += 1
            solutions += lhs
        assert agreements == 80


def test_rb_ops_give_naybe_solutions():
    # positive direction: known weight-0 operators produce tensor solutions
    form = trace_form(matrix_algebra(Q, 2))
    for r in weight0_matrix_ops(Q).values():
        t = tensor_from_op(r.operator, form)
        assert check_naybe(t)
