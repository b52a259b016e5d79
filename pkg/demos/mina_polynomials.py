"""Mina polynomials: the coefficients of f_n(u) for three exponent terms.

Run with ``python demos/mina_polynomials.py``.
"""
from bellinv import chi_recursion, mina_via_matrices, verify_convolutions
from bellinv.mina import check_published_table, f_symbolic_via_mina

for n in range(1, 6):
    print(f"n={n}:", "; ".join(f"C({n},{k}) = {mina_via_matrices(n, k)}" for k in range(n)))

# chi_n(k) = C(n,k) / c1^(n-1-k) comes out of a short back-substitution as well.
print("chi_4:", [str(e) for e in chi_recursion(4)])

# f_4(u) with symbolic moments c1, c2, ... (written x1, x2, ...).
print("f_4 coefficients:", [str(e) for e in f_symbolic_via_mina(4)])

# The small printed table, including the single entry that disagrees with the definition.
for case in check_published_table():
    if "note" in case:
        print(f"C({case['n']},{case['k']}):", case["note"])

cases = verify_convolutions(7)
print("convolution identities checked:", len(cases),
      "failures:", sum(c["status"] == "fail" for c in cases))
