#!/usr/bin/env python3
"""High-precision rank oracle for block-circuit Jacobians.

Independent of the Rust implementation: its own Haar sampler, qubit
embedding, Gell-Mann basis and Jacobian assembly, all carried out in
mpmath at 128-bit mantissa precision. Prints the generic Jacobian rank per
block count for the requested architecture.

usage: jacobian_rank_mp.py N K_MAX POINTS [brickwork|single]
"""
import random
import sys

import mpmath as mp

mp.mp.prec = 128


def gell_mann(d):
    out = []
    for j in range(d):
        for k in range(j + 1, d):
            s = mp.zeros(d, d)
            s[j, k] = 1
            s[k, j] = 1
            a = mp.zeros(d, d)
            a[j, k] = mp.mpc(0, -1)
            a[k, j] = mp.mpc(0, 1)
            out += [s, a]
    for l in range(1, d):
        m = mp.zeros(d, d)
        c = mp.sqrt(mp.mpf(2) / (l * (l + 1)))
        for j in range(l):
            m[j, j] = c
        m[l, l] = -l * c
        out.append(m)
    # Hilbert-Schmidt norm of every element above is sqrt(2)
    return [m / mp.sqrt(2) for m in out]


def haar(d, rng):
    z = mp.matrix(d, d)
    for i in range(d):
        for j in range(d):
            z[i, j] = mp.mpc(rng.gauss(0, 1), rng.gauss(0, 1))
    cols = []
    for j in range(d):
        v = z[:, j]
        for q in cols:
            ip = sum(mp.conj(q[i]) * v[i] for i in range(d))
            v = v - q * ip
        nrm = mp.sqrt(sum(abs(v[i]) ** 2 for i in range(d)))
        cols.append(v / nrm)
    u = mp.matrix(d, d)
    for j in range(d):
        for i in range(d):
            u[i, j] = cols[j][i]
    det = mp.det(u)
    return u / mp.root(det, d)


def embed(u, i, j, n):
    dim = 2 ** n
    out = mp.zeros(dim, dim)
    bit = lambda x, q: (x >> (n - 1 - q)) & 1
    mask = (1 << (n - 1 - i)) | (1 << (n - 1 - j))
    for y in range(dim):
        for x in range(dim):
            if (x & ~mask) != (y & ~mask):
                continue
            out[y, x] = u[2 * bit(y, i) + bit(y, j), 2 * bit(x, i) + bit(x, j)]
    return out


def slots(n, kind):
    if kind == "single":
        return [(0, 1)]
    return [(i, i + 1) for i in range(0, n - 1, 2)] + [(i, i + 1) for i in range(1, n - 1, 2)]


def jacobian(n, gates):
    basis = gell_mann(2 ** n)
    local = gell_mann(4)
    embedded = [embed(g, i, j, n) for (g, (i, j)) in gates]
    cols = []
    for m in range(len(embedded)):
        after = mp.eye(2 ** n)
        for g in embedded[m + 1:]:
            after = g * after
        i, j = gates[m][1]
        for h in local:
            t = after * embed(h, i, j, n) * after.H
            dim = 2 ** n
            cols.append([
                mp.re(mp.fsum(e[a, b] * t[b, a] for a in range(dim) for b in range(dim) if e[a, b] != 0))
                for e in basis
            ])
    return mp.matrix(cols).T


def rank(j):
    s = mp.svd_r(j, compute_uv=False)
    smax = max(s)
    return sum(1 for x in s if x > smax * mp.mpf(10) ** -20), s


def main():
    n, k_max, points = int(sys.argv[1]), int(sys.argv[2]), int(sys.argv[3])
    kind = sys.argv[4] if len(sys.argv) > 4 else "brickwork"
    rng = random.Random(20211)
    sl = slots(n, kind)
    for k in range(1, k_max + 1):
        ranks = []
        gap = None
        for _ in range(points):
            gates = [(haar(4, rng), s) for _ in range(k) for s in sl]
            r, s = rank(jacobian(n, gates))
            ranks.append(r)
            ordered = sorted(s, reverse=True)
            if r < len(ordered):
                g = ordered[r - 1] / max(ordered[r], mp.mpf(10) ** -120)
                gap = g if gap is None else min(gap, g)
        print(f"k={k} ranks={ranks} min_gap={mp.nstr(gap, 5) if gap else 'full'}", flush=True)


if __name__ == "__main__":
    main()
