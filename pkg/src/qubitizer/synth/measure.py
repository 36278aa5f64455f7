"""Measurement programs that estimate ``<psi|H|psi>`` for one reducible term."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..circuit.ir import Circuit, Gate
from ..circuit.lower import apply_circuit
from ..errors import NotQubitized
from .reducer import QUBITIZED, Reducer

SINGLE_QUBIT = "single_qubit"
PARITY = "parity"


@dataclass(frozen=True)
class MeasurementProgram:
    circuit: Circuit
    mode: str
    reducer: Reducer
    pre_gate: Gate | None = None

    @property
    def n_qubits(self) -> int:
        return self.circuit.num_qubits

    def _bit(self, outcomes: np.ndarray, q: int) -> np.ndarray:
        return outcomes >> (self.n_qubits - 1 - q) & 1

    def contributions(self) -> np.ndarray:
        """Classical value (+1, -1 or 0) assigned to every outcome bitstring."""
        r = self.reducer
        outcomes = np.arange(2**self.n_qubits)
        ok = np.ones(outcomes.size, dtype=bool)
        for q, v in r.perp_flags:
            ok &= self._bit(outcomes, q) == v
        if self.mode == SINGLE_QUBIT:
            parity = self._bit(outcomes, r.reduct)
        else:
            parity = np.zeros(outcomes.size, dtype=np.int64)
            for q in r.parity_qubits:
                parity ^= self._bit(outcomes, q)
        return np.where(ok, 1 - 2 * parity, 0).astype(float)

    def probabilities(self, psi) -> np.ndarray:
        out = apply_circuit(self.circuit, np.asarray(psi, dtype=complex))
        return np.abs(out) ** 2

    def expectation(self, psi) -> tuple[float, float]:
        """(mean, per-shot variance) from exact outcome probabilities."""
        prob = self.probabilities(psi)
        vals = self.contributions()
        mean = float(prob @ vals)
        return mean, float(prob @ vals**2 - mean**2)

    def sample(self, psi, shots: int, rng: np.random.Generator) -> np.ndarray:
        """Outcome counts for ``shots`` draws."""
        prob = self.probabilities(psi)
        prob = prob / prob.sum()
        return rng.multinomial(shots, prob)


def measurement_program(
    r: Reducer, mode: str = SINGLE_QUBIT, pre_gate: Gate | None = None
) -> MeasurementProgram:
    """Basis change followed by a computational-basis measurement.

    ``single_qubit`` applies the full reducer and reads the reduct qubit.
    ``parity`` skips the CX merges and reads the parity of all partial reducts.
    An optional one-qubit ``pre_gate`` is applied to the reduct before reading it.
    """
    if r.kind != QUBITIZED:
        raise NotQubitized("measurement programs need a qubitized reducer")
    if mode == SINGLE_QUBIT:
        circ = r.basis_change
    elif mode == PARITY:
        circ = r.local_circuit
        if pre_gate is not None:
            raise ValueError("pre_gate is only meaningful in single_qubit mode")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if pre_gate is not None:
        circ = circ.then(Gate(pre_gate.kind, (r.reduct,), (), pre_gate.theta))
    return MeasurementProgram(circ, mode, r, pre_gate)
