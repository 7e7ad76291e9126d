"""Naive reference implementation used only to produce and cross-check test values.

Shares no code with the package: operators are built from explicit index
definitions, Bob's state comes from an index-loop partial trace, the
corrections are written down analytically, and the sphere average uses
Gauss-Legendre nodes in theta itself (weight sin theta) instead of cos theta.
"""

import itertools

import numpy as np

W = np.exp(2j * np.pi / 3)
I3 = np.eye(3, dtype=complex)


def up():
    # |k> -> |k+1>
    m = np.zeros((3, 3), dtype=complex)
    for k in range(3):
        m[(k + 1) % 3, k] = 1
    return m


def clock():
    return np.diag([W ** k for k in range(3)])


def kraus(kind, p, p2=None):
    if kind == "non" or p == 0 and p2 in (None, 0):
        return [I3]
    if kind == "BF":
        return [np.sqrt(1 - p) * I3, np.sqrt(p / 2) * up(), np.sqrt(p / 2) * up().T]
    if kind == "PF":
        return [np.sqrt(1 - p) * I3,
                np.sqrt(p / 2) * np.diag([1, -1, 1]).astype(complex),
                np.sqrt(p / 2) * np.diag([1, 1, -1]).astype(complex)]
    if kind == "DP":
        ops = [np.sqrt(1 - p) * I3]
        for m, n in itertools.product(range(3), repeat=2):
            if (m, n) != (0, 0):
                ops.append(np.sqrt(p / 8) * np.linalg.matrix_power(clock(), m)
                           @ np.linalg.matrix_power(up().T, n))
        return ops
    if kind == "AD":
        q = p if p2 is None else p2
        k0 = np.diag([1, np.sqrt(1 - p), np.sqrt(1 - q)]).astype(complex)
        k1 = np.zeros((3, 3), dtype=complex)
        k1[0, 1] = np.sqrt(p)
        k2 = np.zeros((3, 3), dtype=complex)
        k2[0, 2] = np.sqrt(q)
        return [k0, k1, k2]
    raise ValueError(kind)


def ket(*digits):
    v = np.zeros(3 ** len(digits), dtype=complex)
    v[int("".join(map(str, digits)), 3)] = 1
    return v


def bell(s, m):
    return sum(W ** (m * k) * ket(k, (k + s) % 3) for k in range(3)) / np.sqrt(3)


def correction(s, m):
    # Bob holds X^s Z^-m |psi>; undo it
    zm = np.linalg.matrix_power(clock(), m)
    xs = np.linalg.matrix_power(up(), s)
    return zm @ xs.conj().T


def bob_partial_trace(rho):
    out = np.zeros((3, 3), dtype=complex)
    r = rho.reshape(3, 3, 3, 3, 3, 3)
    for a in range(3):
        for b in range(3):
            for x in range(3):
                for y in range(3):
                    out[a, b] += r[x, y, a, x, y, b]
    return out


def channel_pair(cad=None):
    phi = sum(ket(k, k) for k in range(3)) / np.sqrt(3)
    rho = np.outer(phi, phi.conj())
    if cad is None:
        return rho
    eta, p = cad
    ind = kraus("AD", p)
    independent = sum(np.kron(a, b) @ rho @ np.kron(a, b).conj().T for a in ind for b in ind)
    a0 = np.eye(9, dtype=complex)
    a0[4, 4] = a0[8, 8] = np.sqrt(1 - p)
    a1 = np.zeros((9, 9), dtype=complex)
    a1[0, 4] = np.sqrt(p)
    a2 = np.zeros((9, 9), dtype=complex)
    a2[0, 8] = np.sqrt(p)
    joint = sum(a @ rho @ a.conj().T for a in (a0, a1, a2))
    return (1 - eta) * independent + eta * joint


def protocol(psi, noise=(("non", 0), ("non", 0), ("non", 0)), cad=None):
    """Return ``[(P_j, F_j)]`` for the nine outcomes."""
    psi = np.asarray(psi, dtype=complex)
    rho = np.kron(np.outer(psi, psi.conj()), channel_pair(cad))
    ops = [kraus(*spec) for spec in noise]
    full = [np.kron(np.kron(a, b), c) for a in ops[0] for b in ops[1] for c in ops[2]]
    rho = sum(k @ rho @ k.conj().T for k in full)
    out = []
    for s in range(3):
        for m in range(3):
            proj = np.kron(np.outer(bell(s, m), bell(s, m).conj()), I3)
            bob = bob_partial_trace(proj @ rho @ proj)
            prob = np.trace(bob).real
            if prob < 1e-14:
                out.append((0.0, None))
                continue
            c = correction(s, m)
            fixed = c @ (bob / prob) @ c.conj().T
            out.append((prob, np.vdot(psi, fixed @ psi).real))
    return out


def weighted_fidelity(psi, noise, cad=None):
    return sum(p * f for p, f in protocol(psi, noise, cad) if f is not None)


def average(noise, cad=None, n_theta=20, n_phi=16):
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = (x + 1) * np.pi / 2
    wt = w * np.pi / 2 * np.sin(theta) / 2
    total = 0.0
    for t, wtt in zip(theta, wt):
        for k in range(n_phi):
            f = 2 * np.pi * k / n_phi
            psi = [np.sin(t) * np.cos(f), np.sin(t) * np.sin(f), np.cos(t)]
            total += wtt / n_phi * weighted_fidelity(psi, noise, cad)
    return total
