"""Quantum codes as explicit codeword pairs, plus basis-substitution concatenation.

Codes in scope encode one logical qubit:

* ``bitflip3``   -- |0L> = |000>,  |1L> = |111>
* ``phaseflip3`` -- |0L> = |+++>,  |1L> = |--->
* ``dfs2``       -- bit flavor |0L> = |+->, |1L> = |-+>; phase flavor
                    |0L> = |01>, |1L> = |10> (a noiseless pair for
                    perfectly correlated flips)
* ``concatenate(top, bottom)`` -- substitute bottom's codewords for the
  physical-qubit basis values in top's codewords.  Top-code qubit j
  occupies the contiguous block of bottom-code qubits
  [j*n_bottom, (j+1)*n_bottom), so with a 2-qubit top code and a 3-qubit
  bottom code the labels X1..X3 address the first top qubit's block.

The 6-qubit code used throughout is ``concatenate(dfs2("bit"), bitflip3())``:

    |0L> = (|000000> - |000111> + |111000> - |111111>) / 2
    |1L> = (|000000> + |000111> - |111000> - |111111>) / 2

written with qubit 1 leftmost (least significant index bit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapacityError, ContractViolationError, ParameterError
from .pauli import NORM_TOL, SparseState, basis_state

MAX_CODE_QUBITS = 20


@dataclass(frozen=True)
class QuantumCode:
    """One logical qubit in n physical qubits, given by its two codewords."""

    n: int
    logical_zero: SparseState
    logical_one: SparseState
    label: str

    def __post_init__(self) -> None:
        if self.logical_zero.n != self.n or self.logical_one.n != self.n:
            raise ContractViolationError("codeword qubit count differs from code n")
        for name, state in (("|0L>", self.logical_zero), ("|1L>", self.logical_one)):
            if abs(state.norm() - 1.0) > NORM_TOL:
                raise ContractViolationError(f"{name} of {self.label!r} is not normalized")
        overlap = self.logical_zero.inner(self.logical_one)
        if abs(overlap) > NORM_TOL:
            raise ContractViolationError(
                f"codewords of {self.label!r} are not orthogonal: <0L|1L> = {overlap}"
            )

    def codewords(self) -> tuple[SparseState, SparseState]:
        return self.logical_zero, self.logical_one

    def to_json_dict(self) -> dict:
        def dump(state: SparseState) -> list[dict]:
            return [
                {"index": i, "re": a.real, "im": a.imag}
                for i, a in sorted(state.amplitudes.items())
            ]

        return {
            "label": self.label,
            "n": self.n,
            "codewords": [dump(self.logical_zero), dump(self.logical_one)],
        }


def code_from_json_dict(doc: dict) -> QuantumCode:
    n = doc["n"]
    states = [
        SparseState(n, {e["index"]: complex(e["re"], e["im"]) for e in cw})
        for cw in doc["codewords"]
    ]
    return QuantumCode(n, states[0], states[1], doc["label"])


def pattern_state(pattern: str) -> SparseState:
    """Product state from a string over '0', '1', '+', '-'; qubit 1 first."""
    n = len(pattern)
    if n == 0:
        raise ParameterError("pattern must not be empty")
    amp = 1.0 / math.sqrt(2.0)
    partial: list[tuple[int, float]] = [(0, 1.0)]
    for q, ch in enumerate(pattern):
        if ch == "0":
            branches = [(0, 1.0)]
        elif ch == "1":
            branches = [(1, 1.0)]
        elif ch == "+":
            branches = [(0, amp), (1, amp)]
        elif ch == "-":
            branches = [(0, amp), (1, -amp)]
        else:
            raise ParameterError(f"pattern character {ch!r} not in '01+-'")
        partial = [
            (idx | (bit << q), a * b) for idx, a in partial for bit, b in branches
        ]
    return SparseState(n, {idx: a for idx, a in partial})


def bitflip3() -> QuantumCode:
    return QuantumCode(3, basis_state(3, 0b000), basis_state(3, 0b111), "bit3")


def phaseflip3() -> QuantumCode:
    return QuantumCode(3, pattern_state("+++"), pattern_state("---"), "phase3")


def dfs2(flavor: str = "bit") -> QuantumCode:
    if flavor == "bit":
        return QuantumCode(2, pattern_state("+-"), pattern_state("-+"), "dfs2")
    if flavor == "phase":
        return QuantumCode(2, pattern_state("01"), pattern_state("10"), "dfs2-phase")
    raise ParameterError(f"flavor must be 'bit' or 'phase', got {flavor!r}")


def trivial_code() -> QuantumCode:
    """Identity encoding |0> -> |0>, |1> -> |1>; neutral for concatenation."""
    return QuantumCode(1, basis_state(1, 0), basis_state(1, 1), "trivial")


def concatenate(top: QuantumCode, bottom: QuantumCode, label: str | None = None) -> QuantumCode:
    """Replace each physical-qubit basis value of ``top`` by a ``bottom`` codeword."""
    n = top.n * bottom.n
    if n > MAX_CODE_QUBITS:
        raise CapacityError(f"concatenated code needs {n} qubits, limit is {MAX_CODE_QUBITS}")

    def substitute(state: SparseState) -> SparseState:
        blocks = (bottom.logical_zero, bottom.logical_one)
        out: dict[int, complex] = {}
        for m, amp in state.amplitudes.items():
            partial: list[tuple[int, complex]] = [(0, amp)]
            for j in range(top.n):
                block = blocks[(m >> j) & 1]
                partial = [
                    (idx | (bi << (j * bottom.n)), a * ba)
                    for idx, a in partial
                    for bi, ba in block.amplitudes.items()
                ]
            for idx, a in partial:
                out[idx] = out.get(idx, 0j) + a
        return SparseState(n, out)

    return QuantumCode(
        n,
        substitute(top.logical_zero),
        substitute(top.logical_one),
        label if label is not None else f"{top.label}*{bottom.label}",
    )


def hadamard_transform(state: SparseState) -> SparseState:
    """Apply H on every qubit: out[m] = 2^(-n/2) * sum_j (-1)^popcount(m&j) in[j]."""
    n = state.n
    scale = 2.0 ** (-n / 2.0)
    out: dict[int, complex] = {}
    for m in range(1 << n):
        acc = 0j
        for j, amp in state.amplitudes.items():
            acc += -amp if (m & j).bit_count() & 1 else amp
        out[m] = scale * acc
    return SparseState(n, out)


def hadamard_conjugate_code(code: QuantumCode, label: str | None = None) -> QuantumCode:
    """The code with both codewords rotated by H on every qubit."""
    return QuantumCode(
        code.n,
        hadamard_transform(code.logical_zero),
        hadamard_transform(code.logical_one),
        label if label is not None else f"H[{code.label}]",
    )


def apply_cnot(state: SparseState, control: int, target: int) -> SparseState:
    """CNOT with 0-based qubit indices, as an explicit sparse-state map."""
    if not (0 <= control < state.n and 0 <= target < state.n) or control == target:
        raise ParameterError(f"invalid CNOT qubits ({control}, {target}) for n={state.n}")
    out: dict[int, complex] = {}
    for idx, amp in state.amplitudes.items():
        if (idx >> control) & 1:
            idx ^= 1 << target
        out[idx] = out.get(idx, 0j) + amp
    return SparseState(state.n, out)
