theta = 3.14159 / 4
q = QuantumRegister(1)
c = ClassicalRegister(1)
circuit = QuantumCircuit(q, c)
circuit.rx(theta, q[0])
circuit.ry(-theta, q[0])
circuit.rz(2 * theta + 1, q[0])
circuit.u(theta, 0, 0, q[0])
circuit.measure(q[0], c[0])
label = 'rotations'
print(label)
