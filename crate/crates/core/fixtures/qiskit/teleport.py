q = QuantumRegister(3)
c0 = ClassicalRegister(1)
c1 = ClassicalRegister(1)
circuit = QuantumCircuit(q, c0, c1)
circuit.ry(0.7, q[0])
circuit.h(q[1])
circuit.cx(q[1], q[2])
circuit.cx(q[0], q[1])
circuit.h(q[0])
circuit.measure(q[0], c0[0])
circuit.measure(q[1], c1[0])
if c1 == 1:
    circuit.x(q[2])
if c0 == 1:
    circuit.z(q[2])
