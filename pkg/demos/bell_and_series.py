"""Ordinary Bell polynomials and the power-series toolkit behind them.

Run with ``python demos/bell_and_series.py``.
"""
from fractions import Fraction

from bellinv import Series, bell_gf, bell_partition, bell_row, lagrange_coeffs, series_comp_inverse
from bellinv.algebra import MultiPoly

# B(n, k) is the coefficient of t^n in (x1 t + x2 t^2 + ...)^k.
for n in range(1, 6):
    print(f"n={n}:", " | ".join(str(bell_partition(n, k)) for k in range(1, n + 1)))

# Two unrelated computations of the same number.
x = [Fraction(1, 2), -3, Fraction(2, 7), 5, 1, -1]
print("B(6,3) by partitions:", bell_partition(6, 3).eval(x))
print("B(6,3) by powers:    ", bell_gf(6, 3, x))

# With every x_j = 1 the row counts compositions of n.
print("row 7 at all ones:", bell_row(7, [1] * 7))

# The generating-function route also runs with polynomial entries.
xs = [MultiPoly.var(i) for i in range(1, 5)]
print("B(4,2) symbolically:", bell_gf(4, 2, xs))

# Reverting t - t^2 gives the Catalan numbers.
g = series_comp_inverse(Series([0, 1, -1], 9))
print("inverse of t - t^2:", [str(c) for c in g])

# Lagrange inversion: expand t in powers of t/phi(t) for phi = 1/(1 - t).
phi = Series([1, -1], 9).reciprocal()
print("Lagrange coefficients:", [str(c) for c in lagrange_coeffs(Series.t(9), phi)])
