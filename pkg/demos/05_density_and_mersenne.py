# How often does the criterion hold?  Squarefree counts, the set C' and Mersenne numbers

import math

import numpy as np

from aflt.density import (count_class, density_report, enumerate_cprime, landau_estimate,
                          mersenne_stats, sieve_squarefree)

X = 10**6
table = sieve_squarefree(X)
print("squarefree d <= 10^6:", count_class(0, 1, X, table), " 6X/pi^2 =", round(6 * X / math.pi**2))

# Counts in progressions against the asymptotic formula.

errs = np.array([count_class(r, 8, X, table) / landau_estimate(r, 8, X) - 1
                 for r in range(8) if r % 4])
print("relative errors mod 8:", np.round(errs, 5))

# C' holds the squarefree kernels of 2^(r+2) - 1 below X.

cp = enumerate_cprime(X, 64)
print("C'(10^6) =", cp.members())
print(cp.to_csv().splitlines()[:5])

rep = density_report(X, 64, table=table)
print("delta_C =", round(rep.delta_C, 6), " delta_D =", round(rep.delta_D, 6), " reference 5/6 =", round(5 / 6, 6))

# omega(2^m - 1) grows with the divisors of m.

for st in mersenne_stats(36):
    if st.m % 6 == 0:
        print(f"m = {st.m:2d}  omega(M_m) = {st.omega}  factors = {[p for p, _ in st.factors]}")
