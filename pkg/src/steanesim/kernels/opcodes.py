"""Instruction set shared by the compiled programs and both runners.

A program is an ``(n, 4)`` int64 array of rows ``(op, a, b, c)``:

========== ============================ ===================================
op         a, b                         c
========== ============================ ===================================
OP_H..OP_Z a = qubit                    unused
OP_CNOT    a = control, b = target      unused
OP_NOISE1  a = qubit                    fault-location index
OP_NOISE2  a, b = qubit pair            fault-location index
OP_MEASURE a = qubit, b = result slot   unused
OP_RESET   a = qubit                    unused
OP_CORR_X  a = qubit                    unused (classically applied Pauli)
OP_CORR_Z  a = qubit                    unused
OP_READOUT a = first qubit, b = first    qubit count; measures qubits a..a+c-1
           result slot                  into consecutive slots, then resets them
========== ============================ ===================================

``OP_X``/``OP_Z`` are gates of the ideal circuit and leave a Pauli frame alone;
``OP_CORR_*`` are recovery operations absent from the ideal reference, so the
frame runner multiplies them into the frame.
"""

OP_H = 0
OP_X = 1
OP_Y = 2
OP_Z = 3
OP_CNOT = 4
OP_NOISE1 = 5
OP_NOISE2 = 6
OP_MEASURE = 7
OP_RESET = 8
OP_CORR_X = 9
OP_CORR_Z = 10
OP_READOUT = 11

# fault-location classes: one-qubit gate / idle step (epsilon), two-qubit gate (gamma)
LOC_ONE = 0
LOC_TWO = 1

# single-qubit Pauli codes; a two-qubit code is 4 * first + second, range 1..15
PAULI_I = 0
PAULI_X = 1
PAULI_Y = 2
PAULI_Z = 3
