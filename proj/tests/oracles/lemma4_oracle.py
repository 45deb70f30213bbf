#!/usr/bin/env python3
"""Independent discrete Frechet profile for the zigzag pair along the radius.

Rebuilds the routing in band coordinates w = s + i*beta (z = tanh(w/2)) and
evaluates pseudo-hyperbolic distances directly in the band:

    d_ph = |sinh((w1 - w2)/2)| / |cosh((w1 - conj(w2))/2)|

at 50 significant digits, so no disk point is ever formed.  The coupled
traversal recursion is the textbook one, written out cell by cell.

Usage: lemma4_oracle.py [r] [max_zigzags] [mesh]
"""
import math
import sys

import mpmath as mp

mp.mp.dps = 50

SCALE = mp.mpf(1) / 3
W_OFFSET = mp.mpf("0.25")
RAMP = mp.mpf("0.1")
REJOIN = mp.mpf(1)


def vertices(r, n):
    inner = 2 * mp.atan(mp.mpf(r) / 4)
    outer = 2 * mp.atan(3 * mp.mpf(r) / 8)
    z = [SCALE * k * k for k in range(1, n + 2)]
    w = [zk + W_OFFSET for zk in z[:n]]
    rejoin = z[-1] + REJOIN
    v = [mp.mpc(0, 0)]
    if n == 0:
        v.append(mp.mpc(rejoin, 0))
        return v, rejoin
    v += [mp.mpc(z[0], 0), mp.mpc(z[0], outer), mp.mpc(z[1], outer), mp.mpc(z[1], 0)]
    for k in range(1, n + 1):
        v += [mp.mpc(z[k] - RAMP, -inner), mp.mpc(w[k - 1] + RAMP, -inner), mp.mpc(w[k - 1], 0)]
        side = 1 if (k + 1) % 2 == 1 else -1
        end = z[k + 1] if k < n else rejoin
        v += [mp.mpc(w[k - 1], side * outer), mp.mpc(end, side * outer), mp.mpc(end, 0)]
    return v, rejoin


def densify(v, mesh):
    # Piece counts are decided in double precision, matching how a float
    # implementation chooses them; positions are then exact.
    out = [v[0]]
    for a, b in zip(v[:-1], v[1:]):
        beta_max = max(abs(float(a.imag)), abs(float(b.imag)))
        step = 0.9 * mesh * math.cos(beta_max)
        length = abs(complex(b) - complex(a))
        pieces = max(1, math.ceil(length / step))
        for i in range(1, pieces + 1):
            out.append(a + (b - a) * mp.mpf(i) / pieces)
    return out


def radius_samples(rejoin, mesh):
    steps = math.ceil(float(rejoin) / mesh)
    return [mp.mpc(min(rejoin, mp.mpf(i) * mp.mpf(mesh)), 0) for i in range(steps + 1)]


def half_sinh(w1, w2):
    # sinh(d_h/2) = d_ph / sqrt(1 - d_ph^2), a monotone proxy for d_h.
    d = abs(mp.sinh((w1 - w2) / 2)) / abs(mp.cosh((w1 - mp.conj(w2)) / 2))
    return float(d / mp.sqrt(1 - d * d))


def frechet(a, b):
    n, m = len(a), len(b)
    ca = [[half_sinh(x, y) for y in b] for x in a]
    prev = [0.0] * m
    prev[0] = ca[0][0]
    for j in range(1, m):
        prev[j] = max(prev[j - 1], ca[0][j])
    for i in range(1, n):
        cur = [0.0] * m
        cur[0] = max(prev[0], ca[i][0])
        for j in range(1, m):
            cur[j] = max(min(prev[j], prev[j - 1], cur[j - 1]), ca[i][j])
        prev = cur
    return 2 * math.asinh(prev[-1])


def main():
    r = float(sys.argv[1]) if len(sys.argv) > 1 else 0.5
    max_n = int(sys.argv[2]) if len(sys.argv) > 2 else 8
    mesh = float(sys.argv[3]) if len(sys.argv) > 3 else 0.05
    for n in range(0, max_n + 1):
        v, rejoin = vertices(r, n)
        gamma1 = radius_samples(rejoin, mesh)
        gamma2 = gamma1 if n == 0 else densify(v, mesh)
        print(f"{n} {frechet(gamma1, gamma2):.15f} {len(gamma1)} {len(gamma2)}", flush=True)


if __name__ == "__main__":
    main()
