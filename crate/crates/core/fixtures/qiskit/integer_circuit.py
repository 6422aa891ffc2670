qc = QuantumCircuit(3, 3)
qc.h(0)
qc.cx(0, 1)
qc.cx(1, 2)
qc.rz(0.25, 2)
qc.measure(0, 0)
qc.measure(1, 1)
qc.measure(2, 2)
backend = Aer.get_backend('qasm_simulator')
job = execute(qc, backend, shots=1024)
