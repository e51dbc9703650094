# Fields, 2-adic square roots and valuations above 2
#
# Q(sqrt(-d)) is built by make_field.  Elements are exact: (x + y sqrt(-d)) / den.

from aflt.quad_field import hensel_sqrt, make_field, primes_above_2, val_above_2, val2_norm

K = make_field(7)
print(K, K.two_splitting.value)

z = K(1, 3, 2)                 # (1 + 3 sqrt(-7)) / 2
print("z =", z, " norm =", z.norm(), " 1 - z =", 1 - z)

# When -d = 1 (mod 8) the prime 2 splits.  The two primes above 2 are told apart by
# the 2-adic square root s of -d, chosen with s = 1 (mod 4) so that the roots
# modulo 2^N are compatible as N grows.

for N in (3, 8, 32, 64):
    r = hensel_sqrt(7, N)
    print(f"N = {N:3d}  s = {r.s}  (s^2 + 7) / 2^N = {(r.s * r.s + 7) // 2**N}")

P1, P2 = primes_above_2(K)
print(P1, P2)
print("v_P1(z), v_P2(z) =", val_above_2(z, P1), val_above_2(z, P2), " v_2(norm) =", val2_norm(z))

# In the ramified case there is one prime above 2, and v_P(2) = 2.

(P,) = primes_above_2(make_field(5))
print(P, "v_P(2) =", P.v_of_2)
