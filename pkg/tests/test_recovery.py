import numpy as np
import pytest

from corrqec.channels import MODEL_I, ChannelParams, NoiseChannel, model1_channel
from corrqec.codes import bitflip3, concatenate, dfs2, pattern_state
from corrqec.errors import ContractViolationError, ParameterError
from corrqec.pauli import PauliString, apply_to_state, matrix_element
from corrqec.recovery import (
    RecoverySet,
    alternative_maximal_sets,
    build_recovery,
    correctable_set,
    detectable_set,
    is_detectable,
    non_detectable_set,
    operators_to_json,
    trace_preservation_deviation,
    verify_trace_preserving,
)

from _oracles import dense_state

CONCAT = concatenate(dfs2("bit"), bitflip3(), label="concat6")


def channel_for(code, p=0.5, mu=0.5):
    return model1_channel(ChannelParams(p=p, mu=mu, n=code.n, model=MODEL_I))


def test_detectability_examples():
    bits = bitflip3()
    report = is_detectable(bits, PauliString.x_string(3, 0b111))
    assert not report.detectable and report.lam is None

    report = is_detectable(bits, PauliString.identity(3))
    assert report.detectable and report.lam == 1

    report = is_detectable(CONCAT, PauliString.x_string(6, 0b000111))
    assert not report.detectable  # diagonal entries +1 and -1 differ

    report = is_detectable(CONCAT, PauliString.x_string(6, 0b111111))
    assert report.detectable and abs(report.lam - (-1)) < 1e-12


def test_bit3_detectable_set():
    bits = bitflip3()
    det = detectable_set(bits, channel_for(bits))
    assert len(det) == 7
    assert [op.x_mask for op in non_detectable_set(bits, channel_for(bits))] == [0b111]


def test_correctable_bit3():
    bits = bitflip3()
    corr = correctable_set(bits, channel_for(bits))
    assert [op.x_mask for op in corr] == [0b000, 0b001, 0b010, 0b100]
    assert [op.label() for op in corr] == ["I", "X1", "X2", "X3"]


def test_correctable_dfs2():
    code = dfs2("bit")
    corr = correctable_set(code, channel_for(code))
    assert [op.label() for op in corr] == ["I", "X1X2"]
    det = detectable_set(code, channel_for(code))
    assert [op.x_mask for op in det] == [op.x_mask for op in corr]


def test_correctable_concat_operator_lists():
    corr = correctable_set(CONCAT, channel_for(CONCAT))
    assert len(corr) == 32
    by_weight = {}
    for op in corr:
        by_weight.setdefault(op.weight, set()).add(op.label())
    assert {w: len(v) for w, v in by_weight.items()} == {0: 1, 1: 6, 2: 9, 4: 9, 5: 6, 6: 1}
    assert by_weight[0] == {"I"}
    assert by_weight[1] == {"X1", "X2", "X3", "X4", "X5", "X6"}
    assert by_weight[2] == {
        "X1X4", "X1X5", "X1X6", "X2X4", "X2X5", "X2X6", "X3X4", "X3X5", "X3X6",
    }
    assert by_weight[4] == {
        "X1X2X4X5", "X1X2X4X6", "X1X2X5X6",
        "X1X3X4X5", "X1X3X4X6", "X1X3X5X6",
        "X2X3X4X5", "X2X3X4X6", "X2X3X5X6",
    }
    assert by_weight[5] == {
        "X1X2X3X4X5", "X1X2X3X4X6", "X1X2X4X5X6",
        "X1X3X4X5X6", "X1X2X3X5X6", "X2X3X4X5X6",
    }
    assert by_weight[6] == {"X1X2X3X4X5X6"}
    # selection order: ascending weight, then ascending mask
    keys = [(op.weight, op.x_mask) for op in corr]
    assert keys == sorted(keys)


def test_concat_non_detectable_pair():
    nondet = non_detectable_set(CONCAT, channel_for(CONCAT))
    assert [op.label() for op in nondet] == ["X1X2X3", "X4X5X6"]
    assert len(detectable_set(CONCAT, channel_for(CONCAT))) == 62


def test_correctable_set_ignores_parameters():
    bits = bitflip3()
    at_half = [op.x_mask for op in correctable_set(bits, channel_for(bits))]
    at_zero = [op.x_mask for op in correctable_set(bits, channel_for(bits, p=0.0, mu=0.0))]
    at_one = [op.x_mask for op in correctable_set(bits, channel_for(bits, p=1.0, mu=1.0))]
    assert at_half == at_zero == at_one


def test_correctable_set_empty_channel():
    with pytest.raises(ParameterError):
        correctable_set(bitflip3(), NoiseChannel(n=3, terms=()))


def test_build_recovery_bit3():
    bits = bitflip3()
    rs = build_recovery(bits, correctable_set(bits, channel_for(bits)))
    assert len(rs.ops) == 4 and not rs.complement
    # R2 = |0L><100| + |1L><011|; |100> -> index 1, |011> -> index 6
    assert rs.ops[1].v0.amplitudes == {1: 1}
    assert rs.ops[1].v1.amplitudes == {6: 1}
    assert all(len(op.members) == 1 for op in rs.ops)


def test_build_recovery_dfs2_degenerate():
    code = dfs2("bit")
    rs = build_recovery(code, correctable_set(code, channel_for(code)))
    assert len(rs.ops) == 1
    assert [m.label() for m in rs.ops[0].members] == ["I", "X1X2"]
    assert len(rs.complement) == 2
    # complement projector equals |++><++| + |--><--|
    got = sum(
        np.outer(dense_state(r), dense_state(r).conj()) for r in rs.complement
    )
    pp, mm = dense_state(pattern_state("++")), dense_state(pattern_state("--"))
    want = np.outer(pp, pp.conj()) + np.outer(mm, mm.conj())
    assert np.abs(got - want).max() < 1e-12


def test_build_recovery_concat_pairs_complementary_masks():
    # the full flip acts as -1 on the code space, so every correctable S is
    # degenerate with its complement ~S: 32 operators, 16 syndrome subspaces
    rs = build_recovery(CONCAT, correctable_set(CONCAT, channel_for(CONCAT)))
    assert len(rs.ops) == 16
    assert len(rs.complement) == 32
    for rop in rs.ops:
        assert len(rop.members) == 2
        a, b = rop.members
        assert a.x_mask ^ b.x_mask == 0b111111
        y = apply_to_state(b, CONCAT.logical_zero)
        assert abs(rop.v0.inner(y) - (-1)) < 1e-12


@pytest.mark.parametrize("code", [bitflip3(), dfs2("bit"), dfs2("phase"), CONCAT])
def test_trace_preservation(code):
    rs = build_recovery(code, correctable_set(code, channel_for(code)))
    assert verify_trace_preserving(rs)
    assert trace_preservation_deviation(rs) < 1e-10


def test_trace_preservation_fails_with_missing_operator():
    bits = bitflip3()
    rs = build_recovery(bits, correctable_set(bits, channel_for(bits)))
    broken = RecoverySet(rs.code, rs.ops[:-1], rs.complement)
    assert not verify_trace_preserving(broken)
    assert trace_preservation_deviation(broken) > 0.5


def test_syndrome_states_orthonormal():
    for code in (bitflip3(), dfs2("bit"), CONCAT):
        rs = build_recovery(code, correctable_set(code, channel_for(code)))
        states = [s for op in rs.ops for s in (op.v0, op.v1)] + list(rs.complement)
        for i, a in enumerate(states):
            for j, b in enumerate(states):
                want = 1.0 if i == j else 0.0
                assert abs(a.inner(b) - want) < 1e-10


def test_alpha_matrix_structure():
    def alpha(code):
        corr = correctable_set(code, channel_for(code))
        return corr, np.array(
            [
                [
                    matrix_element(code.logical_zero, a.dagger() * b, code.logical_zero)
                    for b in corr
                ]
                for a in corr
            ]
        )

    # three-qubit code: non-degenerate, alpha diagonal with unit entries
    _, a3 = alpha(bitflip3())
    assert np.allclose(a3, np.eye(4))

    # noiseless pair: fully degenerate, rank-1 alpha
    _, a2 = alpha(dfs2("bit"))
    assert np.allclose(a2, np.array([[1, -1], [-1, 1]]))
    assert np.linalg.matrix_rank(a2) == 1

    # six-qubit code: unit diagonal plus -1 exactly at complementary masks
    corr, a6 = alpha(CONCAT)
    want = np.zeros((32, 32))
    for i, a in enumerate(corr):
        for j, b in enumerate(corr):
            if i == j:
                want[i, j] = 1.0
            elif a.x_mask ^ b.x_mask == 0b111111:
                want[i, j] = -1.0
    assert np.allclose(a6, want)
    assert np.linalg.matrix_rank(a6) == 16


def test_recovery_corrects_each_member():
    for code in (bitflip3(), dfs2("bit"), CONCAT):
        rs = build_recovery(code, correctable_set(code, channel_for(code)))
        for k, rop in enumerate(rs.ops):
            for member in rop.members:
                y0 = apply_to_state(member, code.logical_zero)
                y1 = apply_to_state(member, code.logical_one)
                # R_k maps the corrupted codewords back with one +-1 scalar
                lam0, lam1 = rop.v0.inner(y0), rop.v1.inner(y1)
                assert abs(abs(lam0) - 1) < 1e-12
                assert abs(lam0 - lam1) < 1e-12
                # every other recovery operator contributes no restricted trace
                for l, other in enumerate(rs.ops):
                    if l == k:
                        continue
                    t = other.v0.inner(y0) + other.v1.inner(y1)
                    assert abs(t) < 1e-12


def test_build_recovery_rejects_non_correctable_input():
    bits = bitflip3()
    bad = [PauliString.identity(3), PauliString.x_string(3, 0b111)]
    with pytest.raises(ContractViolationError):
        build_recovery(bits, bad)
    with pytest.raises(ParameterError):
        build_recovery(bits, [])


def test_json_exports():
    import json

    bits = bitflip3()
    corr = correctable_set(bits, channel_for(bits))
    rows = operators_to_json(corr)
    assert [r["label"] for r in rows] == ["I", "X1", "X2", "X3"]
    assert rows[1] == {"label": "X1", "weight": 1, "x_mask": 1, "z_mask": 0, "sign": [1, 0]}

    rs = build_recovery(dfs2("bit"), correctable_set(dfs2("bit"), channel_for(dfs2("bit"))))
    doc = json.loads(json.dumps(rs.to_json_dict()))
    assert doc["n"] == 2
    assert doc["recovery_ops"][0]["members"] == ["I", "X1X2"]
    assert len(doc["complement"]) == 2
    v0 = {e["index"]: e["re"] for e in doc["recovery_ops"][0]["v0"]}
    assert abs(v0[0] - 0.5) < 1e-12 and abs(v0[1] - 0.5) < 1e-12


def test_alternative_maximal_sets_diagnostic():
    # equal-size maximal sets exist for bit3 (e.g. I, X1, X1X2, X1X3) but the
    # canonical greedy result never changes
    bits = bitflip3()
    alts = alternative_maximal_sets(bits, channel_for(bits))
    assert len(alts) >= 1
    for alt in alts:
        assert len(alt) == 4
        masks = {op.x_mask for op in alt}
        assert masks != {0b000, 0b001, 0b010, 0b100}
    corr = correctable_set(bits, channel_for(bits))
    assert [op.x_mask for op in corr] == [0b000, 0b001, 0b010, 0b100]
    # the degenerate pair for the noiseless two-qubit code is unique
    code = dfs2("bit")
    assert alternative_maximal_sets(code, channel_for(code)) == []
