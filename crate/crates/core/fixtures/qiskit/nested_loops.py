q = QuantumRegister(3)
c = ClassicalRegister(3)
circuit = QuantumCircuit(q, c)
for layer in range(2):
    for i in range(3):
        circuit.ry(0.1 * layer, q[i])
    circuit.cx(q[0], q[1])
    circuit.cx(q[1], q[2])
circuit.measure_all()
