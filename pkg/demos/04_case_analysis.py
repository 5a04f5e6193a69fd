"""
Why nothing else works: the five cases, replayed exactly
========================================================

For a surface of revolution A must be diag(lambda, lambda, mu), and the
two component equations split into five sign patterns of (lambda, mu).
Each trace below is exact rational algebra; every step carries a
certificate that is re-checked at random high-precision points.
"""
from secondform.elim import CASES, run_case, verify_certificates

for tag in CASES[:4]:
    trace = run_case(tag)
    print(trace.to_text())
    certs = verify_certificates(trace, n_points=20)
    print("certificates: %d/%d passed, worst residual %.1e\n"
          % (sum(c.passed for c in certs), len(certs), max(c.max_residual for c in certs)))

# Case V is the long one: eliminate p step by step until a polynomial in
# sin(phi) alone remains.
trace = run_case("V")
for step in trace.steps:
    eq = step.equation
    print("%-18s deg_P %d  deg_S %2d  terms %4d" % (step.name, eq.degree("P"), eq.degree("S"), len(eq)))
print(trace.conclusion)
