def entangle(circ, a, b):
    circ.h(a)
    circ.cx(a, b)

def read_out(circ):
    circ.measure(q[0], c[0])
    circ.measure(q[1], c[1])

q = QuantumRegister(2)
c = ClassicalRegister(2)
qc = QuantumCircuit(q, c)
entangle(qc, q[0], q[1])
read_out(qc)
entangle(qc, q[1], q[0])
