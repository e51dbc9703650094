# Frey curves Y^2 = X (X - A a^p) (X + B b^p)

import random

from aflt.frey import (frey_invariants, j_of_lambda, random_solution, semistability_report,
                       valuation_identity_U)
from aflt.quad_field import make_field, primes_above_2, primes_above_odd

# 1 + 1 - 2 = 0 gives the curve with j = 1728 (the coefficient C = -2 is even).

fd = frey_invariants(1, 1, -2, 1, 1, 1, 5, field=make_field(7), require_odd=False)
print("c4 =", fd.c4, " delta =", fd.delta, " j =", fd.j)
print("j(-1) =", j_of_lambda(-1))

# In Q(sqrt(-7)) take b = (1 + sqrt(-7)) / 2 and its conjugate a: each lies in one prime above 2.

K = make_field(7)
b, a = K(1, 1, 2), K(1, -1, 2)
for p in (5, 7, 11):
    fd = frey_invariants(1, 1, -(a**p + b**p), a, b, 1, p)
    for P in primes_above_2(K):
        rep = valuation_identity_U(fd, P)
        print(f"p = {p:2d}  {P}  v(j) = {rep.v_j}  = 8 v(2) - 2p v(b) = {rep.predicted}")

# Random solutions: away from 2 and the coefficients the curve is semistable.

rng = random.Random(1)
fd = random_solution(K, 5, rng)
print("A, B, C =", fd.A, fd.B, fd.C)
for q in (3, 5, 11, 13):
    for Q in primes_above_odd(K, q):
        try:
            r = semistability_report(fd, Q)
        except Exception as e:
            print(Q, "skipped:", e)
            continue
        print(Q, r.reduction, "v(delta) =", r.v_delta, "v(c4) =", r.v_c4)
