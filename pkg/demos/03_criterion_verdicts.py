# Verdicts for the asymptotic Fermat criterion
#
# The criterion asks for a prime P above 2 of residue degree one with
# max(|v_P(lambda)|, |v_P(mu)|) <= 4 v_P(2) for every solution.

from aflt.criterion import SearchBounds, check_criterion, scan

for d in (7, 23, 127, 3, 10):
    v = check_criterion(d)
    print(f"d = {d:4d}  {v.outcome.value:20s} method = {v.method:20s} t = {v.t_value}  bound = {v.threshold}")

# For d = 23 the congruence chain closes: d is prime, so the factor-pair stage has no pairs.

v = check_criterion(23)
for s in v.certificate.steps:
    print(f"   [{'ok' if s.outcome else '--'}] mod {s.modulus}: {s.assertion}")

# The chain is not a proof for every eligible d.  The squarefree kernel of 2^84 - 1
# satisfies all its congruence hypotheses and has a solution with r = 82.

d0 = (2**84 - 1) // 21**2
print("d0 =", d0, " d0 mod 8, 6, 14 =", d0 % 8, d0 % 6, d0 % 14)
print(" r_max = 64:", check_criterion(d0).outcome.value)
v = check_criterion(d0, bounds=SearchBounds(r_max=90))
print(" r_max = 90:", v.outcome.value, " t =", v.t_value)
print(" surviving exponents r mod", v.certificate.residual_modulus, ":", v.certificate.residual_classes)

# S = {P, q}: q = 29 satisfies the no-relevant-solution hypotheses, q = 127 gives 127 + 1 = 128.

for d, q in ((21, 29), (13, 127)):
    v = check_criterion(d, q)
    print(f"(d, q) = ({d}, {q}): {v.outcome.value}  t = {v.t_value}")

# A small scan.

for row in scan(range(2, 40), jobs=1):
    r = row.to_row()
    print(r["d"], r["outcome"], r["t"], r["certificate_kind"])
