"""Brute-force dense oracle used to freeze expected values in the C++ tests.

Everything here is built from explicit Kronecker products and an explicitly
materialized rotation unitary. Qubit 0 is the least-significant index bit.
Run: python3 tests/oracles/oracle.py
"""
import itertools
import numpy as np

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
XZ = X @ Z
PAULIS = [I2.astype(complex), X, XZ, Z]
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
T = np.diag([1, np.exp(1j * np.pi / 4)])
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)


def bell(p):
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return np.kron(I2, PAULIS[p]) @ v


BELL = np.stack([bell(p) for p in range(4)], axis=1)


def q_map(d):
    return BELL @ np.diag([1, d, d, d]) @ BELL.conj().T


def lam_map(d):
    return BELL @ np.diag([d, 1, 1, 1]) @ BELL.conj().T


def phi0(d):
    return (bell(0) + d * (bell(1) + bell(2) + bell(3))) / np.sqrt(1 + 3 * d * d)


def op_on(op, qubits, N):
    """Full 2^N matrix of `op` acting on `qubits` (qubits[0] is the op's MSB)."""
    k = len(qubits)
    dim = 2 ** N
    M = np.zeros((dim, dim), dtype=complex)
    mask = sum(1 << q for q in qubits)
    for col in range(dim):
        j = 0
        for i, q in enumerate(qubits):
            j |= ((col >> q) & 1) << (k - 1 - i)
        base = col & ~mask
        for jp in range(2 ** k):
            amp = op[jp, j]
            if amp == 0:
                continue
            row = base
            for i, q in enumerate(qubits):
                row |= ((jp >> (k - 1 - i)) & 1) << q
            M[row, col] += amp
    return M


def vec_on(factors, N):
    """Product state; factors = [(vec, qubits)], unlisted qubits are |0>."""
    dim = 2 ** N
    out = np.zeros(dim, dtype=complex)
    for idx in range(dim):
        amp = 1.0 + 0j
        covered = 0
        for v, qs in factors:
            j = 0
            for i, q in enumerate(qs):
                j |= ((idx >> q) & 1) << (len(qs) - 1 - i)
                covered |= 1 << q
            amp *= v[j]
        if idx & ~covered & (dim - 1):
            amp = 0
        out[idx] = amp
    return out


class Grid:
    def __init__(self, n, D):
        self.n, self.D = n, D
        self.cols = 2 * D + 1
        self.N = n * self.cols

    def q(self, r, c):
        return r * self.cols + c

    def site(self, layer, r):
        return [self.q(r, 2 * layer), self.q(r, 2 * layer + 1)]

    def out_reg(self):
        # register vectors: wire w is bit w -> MSB-first list is wires n-1..0
        return [self.q(w, 2 * self.D) for w in reversed(range(self.n))]


def reg_apply(U, wires, n):
    # register index bit w == wire w; gate's wires[0] is its MSB
    return op_on(U, list(wires), n)


def circuit_unitaries(layers, n):
    Ws = []
    for layer in layers:
        W = np.eye(2 ** n, dtype=complex)
        for U, wires in layer:
            W = reg_apply(U, wires, n) @ W
        Ws.append(W)
    return Ws


def choi(U, k):
    v = np.zeros(4 ** k, dtype=complex)
    for x in range(2 ** k):
        v[x * 2 ** k + x] = 1
    v /= np.sqrt(2 ** k)
    return np.kron(np.eye(2 ** k), U) @ v


def peps(layers, n, a, xi, deltas):
    D = len(layers)
    g = Grid(n, D)
    inp = np.zeros(2 ** n, dtype=complex)
    for j in range(len(xi)):
        inp[j << a] = xi[j]
    factors = [(inp, [g.q(w, 0) for w in reversed(range(n))])]
    for l, layer in enumerate(layers):
        for U, wires in layer:
            k = len(wires)
            qs = [g.q(w, 2 * l + 1) for w in wires] + [g.q(w, 2 * l + 2) for w in wires]
            factors.append((choi(U, k), qs))
    psi = vec_on(factors, g.N)
    for l in range(D):
        for r in range(n):
            psi = op_on(q_map(deltas[l]), g.site(l, r), g.N) @ psi
    raw = np.linalg.norm(psi)
    return g, psi / raw, raw


def rotation(layers, n):
    """Explicit dense V = sum_P |Phi_P><Phi_P| (x) W_D P_D ... W_1 P_1."""
    D = len(layers)
    g = Grid(n, D)
    Ws = circuit_unitaries(layers, n)
    V = np.zeros((2 ** g.N, 2 ** g.N), dtype=complex)
    sites = [(l, r) for l in range(D) for r in range(n)]
    for word in itertools.product(range(4), repeat=len(sites)):
        proj = np.eye(2 ** g.N, dtype=complex)
        for (l, r), p in zip(sites, word):
            proj = proj @ op_on(np.outer(bell(p), bell(p).conj()), g.site(l, r), g.N)
        Wp = np.eye(2 ** n, dtype=complex)
        for l in range(D):
            Pl = np.eye(2 ** n, dtype=complex)
            for r in range(n):
                Pl = reg_apply(PAULIS[word[l * n + r]], [r], n) @ Pl
            Wp = Ws[l] @ Pl @ Wp
        V += proj @ op_on(Wp, g.out_reg(), g.N)
    return g, V


def prop_term_full(g, U, wires, l, deltas):
    D = g.D
    k = len(wires)
    N = g.N
    choi_q = [g.q(w, 2 * l + 1) for w in wires] + [g.q(w, 2 * l + 2) for w in wires]
    P = op_on(np.outer(choi(U, k), choi(U, k).conj()), choi_q, N)
    L = np.eye(2 ** N, dtype=complex)
    for w in wires:
        L = L @ op_on(lam_map(deltas[l]), g.site(l, w), N)
        if l + 1 < D:
            L = L @ op_on(lam_map(deltas[l + 1]), g.site(l + 1, w), N)
    return L @ (np.eye(2 ** N) - P) @ L


def input_term_full(g, w, d):
    return op_on(lam_map(d), g.site(0, w), g.N) @ op_on(np.diag([0, 1]).astype(complex), [g.q(w, 0)], g.N) @ op_on(lam_map(d), g.site(0, w), g.N)


def parent(layers, n, a, deltas):
    D = len(layers)
    g = Grid(n, D)
    Hm = np.zeros((2 ** g.N, 2 ** g.N), dtype=complex)
    for w in range(a):
        Hm += input_term_full(g, w, deltas[0])
    for l, layer in enumerate(layers):
        for U, wires in layer:
            Hm += prop_term_full(g, U, wires, l, deltas)
    return g, Hm


def main():
    np.set_printoptions(precision=17)
    # peps_state: n=1, D=1, I, delta=0.5 output marginal
    g, psi, raw = peps([[(I2, [0])]], 1, 1, [1.0], [0.5])
    print("raw norm^2 (n1D1 I d.5):", repr(raw ** 2), "expansion norm^2:", 1.75)
    rho = np.outer(psi, psi.conj())
    # reduce to output qubit (qubit 2)
    r = psi.reshape([2, 2, 2])  # index bits q2 q1 q0
    rout = np.einsum('abc,dbc->ad', r, r.conj())
    print("rho_out:", rout.real.diagonal(), "5/7=", 5 / 7)

    # spectral fixture H_parent (n=1, D=1, U=I, delta=0.5)
    g, Hp = parent([[(I2, [0])]], 1, 1, [0.5])
    ev = np.linalg.eigvalsh(Hp)
    print("Hparent n1D1 I d.5 eigenvalues:", repr(ev))
    for d in [1.0]:
        g, Hp = parent([[(I2, [0])]], 1, 1, [d])
        print("Hparent n1D1 I d=1 eigenvalues:", repr(np.linalg.eigvalsh(Hp)))

    # gaps on identity circuits
    for (n, D) in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        gaps = []
        for d in [0.2, 0.3, 0.5, 0.6, 0.8, 1.0]:
            layers = [[(I2, [w]) for w in range(n)] for _ in range(D)]
            g, Hp = parent(layers, n, n, [d] * D)
            ev = np.linalg.eigvalsh(Hp)
            gaps.append(ev[1] - ev[0])
        print(f"identity gaps n={n} D={D}:", ["%.6e" % x for x in gaps])

    # last-layer rotated term, n=1, D=2, layers (H),(I)
    for d in [0.2, 0.5]:
        layers = [[(H, [0])], [(I2, [0])]]
        g, V = rotation(layers, 1)
        h = prop_term_full(g, I2, [0], 1, [d, d])
        R = V.conj().T @ h @ V
        s = BELL @ np.full(4, 0.5)
        L = lam_map(d)
        closed = L @ (np.eye(4) - np.outer(s, s.conj())) @ L
        full_closed = op_on(closed, g.site(1, 0), g.N)
        print("last-layer residual d=", d, np.linalg.norm(R - full_closed, 2))

    # Clifford bulk closed form, 1-qubit H at layer 0 of D=2, n=1
    for d in [0.2, 0.5]:
        for name, U in [("H", H), ("T", T), ("I", I2.astype(complex))]:
            layers = [[(U, [0])], [(I2, [0])]]
            g, V = rotation(layers, 1)
            h = prop_term_full(g, U, [0], 0, [d, d])
            R = V.conj().T @ h @ V
            # closed form: Lambda^{(x)2} (I - 1/4 sum_{p~q} |p><q|) Lambda^{(x)2}
            M = np.zeros((16, 16), dtype=complex)
            for pL, pR, qL, qR in itertools.product(range(4), repeat=4):
                A = U.conj().T @ (PAULIS[qR] @ PAULIS[pR]) @ U
                B = PAULIS[pL] @ PAULIS[qL]
                c = np.trace(B.conj().T @ A) / 2
                if abs(abs(c) - 1) < 1e-9:
                    M[pL * 4 + pR, qL * 4 + qR] = 1
            BB = np.kron(BELL, BELL)
            closed = np.kron(lam_map(d), lam_map(d)) @ BB @ (np.eye(16) - M / 4) @ BB.conj().T @ np.kron(lam_map(d), lam_map(d))
            full_closed = op_on(closed, g.site(0, 0) + g.site(1, 0), g.N)
            print(f"clifford {name} d={d} residual:", np.linalg.norm(R - full_closed, 2))
            # projected term
            ph = phi0(d)
            Pr = np.kron(np.eye(2 ** 3), ph.reshape(4, 1))  # not used
    # local indistinguishability
    for d in [0.1, 0.2]:
        def kern(U):
            ch = choi(U, 1)
            Xp = np.eye(16) - op_on(np.outer(ch, ch.conj()), [1, 2], 4)
            L2 = np.kron(lam_map(d), lam_map(d))
            h = L2 @ Xp @ L2
            w, v = np.linalg.eigh(h)
            return v[:, w < 1e-12]
        KI, KZ = kern(I2.astype(complex)), kern(Z)
        s = np.linalg.svd(KZ.conj().T @ KI, compute_uv=False)
        print(f"||pi_Z pi_I|| d={d}:", repr(s[0]), "bound", 1 - d ** 6 / 2, "dims", KI.shape[1])


if __name__ == "__main__":
    main()
