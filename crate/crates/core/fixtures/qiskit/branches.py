q = QuantumRegister(2)
c = ClassicalRegister(2)
circuit = QuantumCircuit(q, c)
flip = True
circuit.h(q[0])
if flip:
    circuit.x(q[1])
circuit.measure(q[0], c[0])
if c == 1:
    circuit.z(q[1])
    circuit.h(q[1])
circuit.measure(q[1], c[1])
