# GHZ preparation with a loop over the ladder
n = 4
q = QuantumRegister(4)
c = ClassicalRegister(4)
circuit = QuantumCircuit(q, c)
circuit.h(q[0])
for i in range(3):
    circuit.cx(q[i], q[i + 1])
circuit.barrier(q)
for i in range(4):
    circuit.measure(q[i], c[i])
print(circuit)
