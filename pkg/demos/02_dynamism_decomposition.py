#!/usr/bin/env python3
"""Decompose a load curve into its dynamism coordinates.

Takes the first bundled load, reads off its Fourier coefficients, checks
Parseval, then repeats the whole exercise from a finite sample of the same
curve to show the sampled path lands on the same numbers.
"""
from __future__ import annotations

from loadspace import (
    analyze,
    builtin_loads,
    inner_product,
    parseval_energy,
    sample,
    synthesize,
    distance,
    to_mu_vector,
)


def describe(spec, title):
    iv = spec.interval
    print(title)
    print(f"  a0 = {spec.a0:.10g}   (mean power {0.5 * spec.a0:.10g})")
    for h in spec.harmonics:
        f = h.order * iv.f0
        print(f"  order {h.order:>3}  f = {f:>5.1f}  a = {h.cos_amp:>12.6g}  b = {h.sin_amp:>12.6g}")


def main():
    l1, _ = builtin_loads()

    spec = analyze(l1, 100)
    describe(spec, "analytic decomposition of load 1")

    # Parseval: the coordinate energies account for the whole norm
    pe = parseval_energy(spec)
    nsq = inner_product(l1, l1)
    print(f"  parseval energy {pe}  vs  ||l||^2 {nsq}")

    # the orthonormal coordinates themselves
    mu = to_mu_vector(spec)
    print("  mu coordinates:", [(k, round(v, 6)) for k, v in mu.coords if v != 0.0])

    # synthesize reverses analyze
    print("  reconstruction error:", distance(l1, synthesize(spec)))
    print()

    # now pretend we only ever saw 2001 evenly spaced meter readings
    metered = sample(l1, 2001)
    spec_m = analyze(metered, 100)
    describe(spec_m, "the same curve from 2001 samples")
    worst = max(
        max(abs(a - b) for a, b in zip(h1[1:], h2[1:]))
        for h1, h2 in zip(spec.harmonics, spec_m.harmonics)
    )
    print("  worst coefficient error vs analytic:", f"{worst:.3e}")


if __name__ == "__main__":
    main()
