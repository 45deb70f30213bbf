#!/usr/bin/env python3
"""Violation thresholds for h(z) = exp(-1/(1-z)) along the radius.

On the radius -log|h(1-t)| = 1/t, so the margin 1/t - p(t)/t changes sign
where p(t) = 1.  The threshold is the largest t in (0, b) below which the
margin is negative; when p(t) > 1 on all of (0, b) it is b itself.

Usage: decay_oracle.py
"""
import mpmath as mp

mp.mp.dps = 40

PROFILES = {
    "log_e_plus_inverse": lambda t: mp.log(mp.e + 1 / t),
    "log_one_plus_inverse": lambda t: mp.log(1 + 1 / t),
}


def threshold(p, b=mp.mpf(1)):
    g = lambda t: 1 - p(t)
    if g(b) < 0:
        return b
    return mp.findroot(g, (mp.mpf("1e-30"), b), solver="bisect")


def main():
    for name, p in PROFILES.items():
        print(name, mp.nstr(threshold(p), 20))


if __name__ == "__main__":
    main()
