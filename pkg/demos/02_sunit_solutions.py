# Solutions of lambda + mu = 1 in S-units
#
# With 2 split and S the two primes above 2, the relevant solutions come from
# 2^(r+2) - 1 = d v^2 (lambda = (1 + v sqrt(-d)) / 2) and three exceptional exponent pairs.
# Solutions are grouped into orbits under the six maps lambda -> 1/lambda, 1 - lambda, ...

from aflt.quad_field import make_field
from aflt.sunit import brute_force, param_split2, rational_solutions, s3_orbit

print(sorted(s3_orbit(2)))                      # the irrelevant orbit

for d in (7, 15, 31, 127):
    sols = param_split2(d, 64)
    print(f"d = {d}: {len(sols)} relevant orbits")
    for s in sols:
        print("   lambda =", s.lam, " (r1, r2, v) =", (s.params.r1, s.params.r2, s.params.v))

# An exhaustive scan of a coordinate box finds the same orbits.

K = make_field(7)
found = brute_force(K, (), 64, 1, 0).relevant()
print("brute force agrees for d = 7:", found.orbit_ids() == param_split2(7, 64).orbit_ids())

# With an odd prime q in S, rational solutions n + 1 = m with n, m smooth over {2, q}
# are relevant too: 127 + 1 = 128 for q = 127.

for s in rational_solutions(make_field(13), [127], 16):
    print("rational solution in Q(sqrt(-13)), S = {2, 127}:", s.lam, "+", s.mu, "= 1")
