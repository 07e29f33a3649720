#!/usr/bin/env python3
"""Fit a supply-cost characteristic from billing observations.

Simulates a fleet of customers with known loads, generates the supplier's
true cost for each from a hidden characteristic, recovers that
characteristic by least squares, and turns it into a rate vector with a
markup. Ends with the incentive view: which coordinate a customer should
shave first.
"""
from __future__ import annotations

import numpy as np

from loadspace import (
    AnalyticCurve,
    CostCharacteristic,
    CostObservation,
    Harmonic,
    Interval,
    analyze,
    builtin_loads,
    calibrate_iota,
    payment_gradient,
    pricing_from_cost,
    rates_payment,
    supply_cost,
    to_mu_vector,
)

N_MAX = 3
K = 1 + 2 * N_MAX


def random_fleet(rng, count, interval):
    fleet = []
    for _ in range(count):
        harmonics = tuple(
            Harmonic(n, rng.uniform(-8, 8), rng.uniform(-8, 8))
            for n in range(1, N_MAX + 1)
        )
        fleet.append(AnalyticCurve(interval, rng.uniform(10, 60), harmonics))
    return fleet


def main():
    rng = np.random.default_rng(1234)
    interval = Interval(0.0, 1.0)

    # the supplier's hidden cost per unit of each dynamism coordinate
    hidden = CostCharacteristic(interval, rng.uniform(0.5, 4.0, size=K), N_MAX)
    print("hidden characteristic: ", np.round(hidden.iota, 4))

    fleet = random_fleet(rng, 12, interval)
    observations = tuple(
        CostObservation(c, supply_cost(hidden, to_mu_vector(analyze(c, N_MAX))))
        for c in fleet
    )

    fitted = calibrate_iota(observations, N_MAX)
    print("fitted characteristic: ", np.round(fitted.iota, 4))
    print("worst entry error:     ", np.abs(fitted.iota - hidden.iota).max())
    print()

    # publish rates at a 25% markup and bill a real load with them
    rates = pricing_from_cost(fitted, 1.25)
    l1, _ = builtin_loads()
    mu = to_mu_vector(analyze(l1, N_MAX))
    payment = rates_payment(rates, mu)
    cost = supply_cost(fitted, mu)
    print("load 1 payment under the derived rates:", round(payment, 4))
    print("supplier cost for load 1:              ", round(cost, 4))
    print("margin:                                ", round(payment - cost, 4))
    print()

    # the gradient of the payment tells the customer where relief is largest
    g = payment_gradient(rates)
    dense = g.dense()
    k_star = int(np.argmax(dense))
    print("payment gradient over coordinates:", np.round(dense, 4))
    print(f"steepest coordinate is k = {k_star}; shaving it first saves the most")


if __name__ == "__main__":
    main()
