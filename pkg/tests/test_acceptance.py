"""End-to-end acceptance gate.

Nine criteria, each printing exactly one pass/fail line (run with ``-s`` to
see them).  All arithmetic is exact; every comparison is equality, never a
tolerance.  Time budgets are asserted where a criterion carries one.
"""

import random
import time

from rbx.algebras import (
    cayley_dickson,
    check_subalgebra,
    derived_algebra,
    grassmann2,
    jordan_form,
    kaplansky3,
    matrix_algebra,
    sl2,
    termwise_power,
)
from rbx.fields import PrimeField, Rationals
from rbx.jordan import (
    JordanSpec,
    block_pair_op,
    gen_system,
    nonsplit_dim4_op,
    random_skew_witness,
    rank_one_split_op,
    raw_assignment,
    rb_to_skew,
    skew_to_rb,
    split_dim4_op,
)
from rbx.linalg import Matrix, Subspace
from rbx.orbits import verify_claim
from rbx.rb import (
    Decomposition,
    LinearOperator,
    RBOperator,
    apply_phi,
    check_derivation_weight,
    check_rb,
    is_splitting,
    nonsplit_weight1_op,
    rb_from_inverse_derivation,
    rb_to_triple,
    split_op,
    splitting_witness,
    triple_to_rb,
    weight0_matrix_ops,
)
from rbx.search import enumerate_rb, enumerate_rb_raw


def _packed(m: Matrix) -> tuple:
    return tuple(c.value for row in m.data for c in row)
from rbx.ybe import (
    Tensor2,
    check_aybe,
    check_naybe,
    corner_pair_tensor,
    op_from_tensor_form,
    op_from_tensor_sandwich,
    tensor_from_op,
    trace_form,
)

Q = Rationals()
F3 = PrimeField(3)
F5 = PrimeField(5)
F13 = PrimeField(13)

SEED = 20240


def _run(num, label, body, budget=None):
    start = time.monotonic()
    ok = False
    try:
        body()
        elapsed = time.monotonic() - start
        if budget is not None:
            assert elapsed < budget, (
                f"criterion {num} took {elapsed:.2f}s, budget {budget}s"
            )
        ok = True
    finally:
        elapsed = time.monotonic() - start
        verdict = "PASS" if ok else "FAIL"
        print(f"acceptance {num} ({label}): {verdict} [{elapsed:.2f}s]")


# --- 1: canonical operator fixtures ---------------------------------------


def test_acceptance_1_fixture_verification():
    def body():
        # dim-4 non-splitting operator over F5, weight -1
        r11 = nonsplit_dim4_op()
        assert r11.weight == F5.element(-1)
        assert check_rb(r11.operator, r11.weight)
        assert not is_splitting(r11)

        # dim-4 splitting operator over F13: kernel and image as canonical
        # subspaces (kernel coefficients verified by direct computation)
        r12 = split_dim4_op()
        assert check_rb(r12.operator, r12.weight)
        assert is_splitting(r12)
        assert r12.kernel() == Subspace(F13, 4, [[1, -1, 0, 0], [0, 0, 5, -1]])
        assert r12.image() == Subspace(F13, 4, [[1, 0, 1, 0], [0, 1, 0, 5]])

        # the four weight-0 operators on 2x2 matrices over Q
        ops = weight0_matrix_ops(Q)
        assert sorted(ops) == ["m1", "m2", "m3", "m4"]
        for name, r in ops.items():
            assert check_rb(r.operator, Q.zero)
            square = r.matrix * r.matrix
            if name == "m4":
                assert not square.is_zero()
            else:
                assert square.is_zero()

        # weight-1 operator on 2x2 matrices over Q
        r14 = nonsplit_weight1_op(Q)
        assert check_rb(r14.operator, Q.one)

        # the two-parameter weight-0 family on the 3-dim superalgebra: the
        # last basis vector maps to a*e + b*x, exhaustively over F5 x F5
        k3 = kaplansky3(F5)
        for a in range(5):
            for b in range(5):
                m = Matrix(F5, [[0, 0, a], [0, 0, b], [0, 0, 0]])
                assert check_rb(LinearOperator(k3, m), F5.zero)

    _run(1, "fixture-verification", body, budget=1.0)


# --- 2: corner-pair tensor suite ------------------------------------------


def test_acceptance_2_tensor_suite():
    def body():
        t = corner_pair_tensor(Q)
        assert check_aybe(t)
        op = op_from_tensor_sandwich(t)
        assert check_rb(op, Q.zero)
        r = RBOperator(op, Q.zero)
        m4 = op.algebra
        killed = {0, 4, 10, 14}
        basis_vecs = [
            [1 if i == j else 0 for j in range(16)]
            for i in range(16)
            if i not in killed
        ]
        assert r.kernel() == Subspace(Q, 16, basis_vecs)
        assert not check_subalgebra(m4, r.kernel())
        assert check_subalgebra(m4, r.image())

    _run(2, "tensor-suite", body, budget=1.0)


# --- 3: generated polynomial system vs direct check -----------------------


def test_acceptance_3_system_equivalence():
    def body():
        spec = JordanSpec.make(F5, [1, 1], 1)
        algebra = spec.algebra()
        system = gen_system(spec)
        rng = random.Random(SEED)
        disagreements = 0
        for _ in range(200):
            m = Matrix(
                F5, [[rng.randrange(5) for _ in range(3)] for _ in range(3)]
            )
            by_system = all(
                v.is_zero() for v in system.residuals(raw_assignment(m))
            )
            by_check = check_rb(LinearOperator(algebra, m), F5.one)
            if by_system != by_check:
                disagreements += 1
        assert disagreements == 0

    _run(3, "system-equivalence", body)


# --- 4: skew-matrix correspondence round trip -----------------------------


def test_acceptance_4_skew_round_trip():
    def body():
        for r in (nonsplit_dim4_op(), split_dim4_op()):
            field = r.algebra.field
            witness, case = rb_to_skew(r)
            m = witness.matrix
            assert m.transpose() == -m
            half = r.weight / 2
            assert m * m == Matrix.identity(field, m.nrows).scale(half * half)
            spec = JordanSpec.make(field, [1, 1, 1], r.weight)
            assert skew_to_rb(spec, witness, case) == r

        spec = JordanSpec.make(F13, [1, 1, 1], -1)
        rng = random.Random(SEED)
        for _ in range(50):
            witness = random_skew_witness(spec, rng)
            for case in ("I", "IIa", "IIb"):
                r = skew_to_rb(spec, witness, case)
                assert check_rb(r.operator, spec.weight)
                back, case_back = rb_to_skew(r)
                assert case_back == case
                assert back.matrix == witness.matrix

    _run(4, "skew-round-trip", body)


# --- 5: exhaustive splitting / classification claims ----------------------


def test_acceptance_5_exhaustive_claims():
    def body():
        for claim in (
            "T4-gr2",
            "T5-k3",
            "T2-even-splitting",
            "P1-gr2-weight0",
            "P2-k3-weight0",
        ):
            start = time.monotonic()
            report = verify_claim(claim)
            elapsed = time.monotonic() - start
            assert report.ok, claim
            assert elapsed <= 60.0, f"{claim} took {elapsed:.2f}s"

    _run(5, "exhaustive-claims", body)


# --- 6: weight-0 soundness with orbit report ------------------------------


def test_acceptance_6_weight0_soundness():
    def body():
        start = time.monotonic()
        report = verify_claim("T6-soundness")
        elapsed = time.monotonic() - start
        assert report.ok
        assert elapsed <= 120.0
        assert any(line.startswith("orbit ") for line in report.lines)

        # the four canonical weight-0 operators appear in the enumeration
        ops3 = enumerate_rb(matrix_algebra(F3, 2), 0)
        packed = {_packed(r.matrix) for r in ops3}
        for r in weight0_matrix_ops(Q).values():
            reduced = Matrix(
                F3,
                [
                    [int(c.value) for c in row]
                    for row in r.matrix.data
                ],
            )
            assert _packed(reduced) in packed

    _run(6, "weight0-soundness", body)


# --- 7: tensor-equation / operator correspondence -------------------------


def test_acceptance_7_tensor_correspondence():
    def body():
        rng = random.Random(SEED)
        total = 0
        disagreements = 0
        for algebra in (matrix_algebra(F5, 2), cayley_dickson(F5, [-1, -1])):
            form = trace_form(algebra)
            for _ in range(250):
                terms = [
                    (
                        tuple(F5.element(rng.randrange(5)) for _ in range(4)),
                        tuple(F5.element(rng.randrange(5)) for _ in range(4)),
                    )
                    for _ in range(2)
                ]
                t = Tensor2(algebra, terms)
                op = op_from_tensor_form(t, form)
                if check_naybe(t) != check_rb(op, F5.zero):
                    disagreements += 1
                back = tensor_from_op(op, form)
                assert back == t
                assert op_from_tensor_form(back, form).matrix == op.matrix
                total += 1
        assert total == 500
        assert disagreements == 0

    _run(7, "tensor-correspondence", body)


# --- 8: algebraic-law suite on every fixture ------------------------------


def test_acceptance_8_algebraic_laws():
    def body():
        fixtures = list(weight0_matrix_ops(Q).values())
        fixtures.append(nonsplit_dim4_op())
        fixtures.append(split_dim4_op())
        fixtures.append(nonsplit_weight1_op(Q))
        fixtures.append(block_pair_op(JordanSpec.make(F5, [1, 1, 1], 1)))
        fixtures.append(
            rank_one_split_op(
                JordanSpec.make(F5, [1, 1], 1), [1, 1, 0], 4, 0
            )
        )

        # involution: applying the reflection twice returns the operator,
        # and the reflection is itself Rota-Baxter of the same weight
        for r in fixtures:
            image = apply_phi(r)
            assert check_rb(image.operator, r.weight)
            assert apply_phi(image) == r

        # transport to the plus/minus derived products, same weight
        for r in fixtures:
            for variant in ("plus", "minus"):
                d = derived_algebra(r.algebra, variant)
                assert check_rb(LinearOperator(d, r.matrix), r.weight)

        # splitting operator <-> decomposition inverse pair
        split_fixtures = [
            r for r in fixtures if not r.weight.is_zero() and is_splitting(r)
        ]
        assert len(split_fixtures) >= 2
        for r in split_fixtures:
            dec = splitting_witness(r)
            assert dec is not None
            assert split_op(dec, r.weight) == r
        m2 = matrix_algebra(Q, 2)
        dec = Decomposition(
            m2,
            Subspace(Q, 4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
            Subspace(Q, 4, [[0, 0, 1, 0]]),
        )
        s = split_op(dec, Q.one)
        assert is_splitting(s)
        assert split_op(splitting_witness(s), Q.one) == s

        # weight-0 operator <-> triple round trip
        for r in fixtures:
            if r.weight.is_zero():
                assert triple_to_rb(rb_to_triple(r)) == r

        # inverse of an invertible derivation is Rota-Baxter
        tp = termwise_power(Q, 4)
        ident = LinearOperator(tp, Matrix.identity(Q, 4))
        assert check_derivation_weight(ident, Q.element(-1))
        r = rb_from_inverse_derivation(ident, Q.element(-1))
        assert check_rb(r.operator, Q.element(-1))

    _run(8, "algebraic-laws", body)


# --- 9: pruned search equals raw filtering --------------------------------


def _raw_feasible_configs():
    configs = []
    for p in (2, 3, 5, 7):
        field = PrimeField(p, allow_char2=True) if p == 2 else PrimeField(p)
        family = [termwise_power(field, k) for k in (1, 2, 3, 4)]
        family += [matrix_algebra(field, 2), grassmann2(field), sl2(field)]
        family.append(jordan_form(field, [1, 1]))
        family.append(cayley_dickson(field, [field.one, field.one]))
        if p != 2:
            family.append(kaplansky3(field))
        for algebra in family:
            if p ** (algebra.dim * algebra.dim) <= 2**20:
                configs.append((algebra, 0))
                configs.append((algebra, 1))
    return configs


def test_acceptance_9_oracle_agreement():
    def body():
        configs = _raw_feasible_configs()
        assert len(configs) >= 30
        m2_f2_checked = False
        for algebra, weight in configs:
            pruned = enumerate_rb(algebra, weight)
            raw = enumerate_rb_raw(algebra, weight)
            assert [_packed(r.matrix) for r in pruned] == [
                _packed(r.matrix) for r in raw
            ], (algebra.name, algebra.field.char, weight)
            if (
                algebra.name == "M2"
                and algebra.field.char == 2
                and weight == 0
            ):
                m2_f2_checked = True
                assert len(pruned) == 28
        assert m2_f2_checked

    _run(9, "oracle-agreement", body)
