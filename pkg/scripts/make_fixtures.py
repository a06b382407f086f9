"""Regenerate the canonical fixture files under tests/fixtures.

Run from the repository root:  python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import pathlib

from rbx.algebras import (
    cayley_dickson,
    grassmann2,
    jordan_form,
    kaplansky3,
    matrix_algebra,
    sl2,
    termwise_power,
)
from rbx.fields import PrimeField, Rationals
from rbx.formats import algebra_to_text, operator_to_text, tensor_to_text
from rbx.jordan import JordanSpec, block_pair_op, nonsplit_dim4_op, rank_one_split_op, split_dim4_op
from rbx.linalg import Matrix
from rbx.rb import LinearOperator, nonsplit_weight1_op, weight0_matrix_ops
from rbx.ybe import corner_pair_tensor

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

Q = Rationals()
F3 = PrimeField(3)
F5 = PrimeField(5)
F7 = PrimeField(7)
F13 = PrimeField(13)


def write(name: str, text: str):
    (OUT / name).write_text(text, encoding="utf-8")
    print("wrote", name)


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    algebras = {
        "m2_q.alg": matrix_algebra(Q, 2),
        "m4_q.alg": matrix_algebra(Q, 4),
        "m2_f3.alg": matrix_algebra(F3, 2),
        "gr2_f3.alg": grassmann2(F3),
        "k3_f3.alg": kaplansky3(F3),
        "k3_f5.alg": kaplansky3(F5),
        "j3_f5.alg": jordan_form(F5, [1, 1]),
        "j4_f5.alg": jordan_form(F5, [1, 1, 1]),
        "j4_f13.alg": jordan_form(F13, [1, 1, 1]),
        "cd_f5.alg": cayley_dickson(F5, [-1, -1]),
        "sl2_f7.alg": sl2(F7),
        "tp4_q.alg": termwise_power(Q, 4),
    }
    for name, a in algebras.items():
        write(name, algebra_to_text(a))

    write("ex10.op", operator_to_text(block_pair_op(JordanSpec.make(F5, [1, 1, 1], 1))))
    write("ex11.op", operator_to_text(nonsplit_dim4_op()))
    write("ex12.op", operator_to_text(split_dim4_op()))
    write(
        "ex13.op",
        operator_to_text(
            rank_one_split_op(
                JordanSpec.make(F5, [1, 1], 1),
                (F5.one, F5.one, F5.zero),
                F5.element(4),
                F5.zero,
            )
        ),
    )
    for name, r in weight0_matrix_ops(Q).items():
        write(f"{name}_q.op", operator_to_text(r))
    write("example14_q.op", operator_to_text(nonsplit_weight1_op(Q)))

    m2q = algebras["m2_q.alg"]
    write(
        "identity_m2q.op",
        operator_to_text(LinearOperator(m2q, Matrix.identity(Q, 4)), Q.zero),
    )
    swap = Matrix(
        Q,
        [
            [Q.element(x) for x in row]
            for row in [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
        ],
    )
    write("swap_auto_m2q.op", operator_to_text(LinearOperator(m2q, swap), Q.zero))

    write("example16_q.tensor", tensor_to_text(corner_pair_tensor(Q)))


if __name__ == "__main__":
    main()
