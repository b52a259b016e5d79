"""Nonlinear inverse pairs: push a sequence forward, pull it back, compare.

Run with ``python demos/inverse_pairs.py``.
"""
import random
from fractions import Fraction

from bellinv import (
    ProblemSpec,
    general_backward,
    general_forward,
    lambda_recurrence,
    mina_backward,
    scaled_binomial_backward,
    scaled_binomial_forward,
    two_term_backward,
    two_term_forward,
)

rng = random.Random(1)
x = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)]
print("x =", [str(v) for v in x])

y = scaled_binomial_forward(Fraction(1, 3), 2, x)
print("scaled binomial forward:", [str(v) for v in y])
print("and back equals x:", scaled_binomial_backward(Fraction(1, 3), 2, y) == x)

p, q, r = Fraction(1, 2), 2, -5
x2 = two_term_forward(p, q, r, x)
print("two-term pair round trip:", two_term_backward(p, q, r, x2) == x)

# The same two-term pair through the general machinery.
spec = ProblemSpec.two_term(p, q, r)
print("general forward agrees:", general_forward(spec, x) == x2)
for n, poly in enumerate(lambda_recurrence(spec, 4)):
    print(f"  lambda_{n}(u) = {poly}")

# Three exponent terms: the backward map can go through Mina polynomials instead.
spec3 = ProblemSpec(Fraction(2, 5), ((1, 1), (2, -1), (-3, Fraction(1, 2))))
z = general_forward(spec3, x)
print("three-term backward via lambda:", general_backward(spec3, z) == x)
print("three-term backward via Mina:  ", mina_backward(spec3, z) == x)
