"""Exact arithmetic in F_p and the incremental span machinery.

Everything downstream (braid images, protocols, the attack) runs on the
primitives shown here: canonical residues, counted operations, and a row
echelon state that can absorb vectors one at a time.
"""

import random

import braidbreak as bb

field = bb.PrimeField()
print(f"working in F_p with p = {field.p} (default, smallest prime > 2^31)")

a = field.element(123456789)
b = a.inverse()
print(f"a = {a}, a^-1 = {b}, a * a^-1 = {a * b}")

rng = random.Random(1)
x, y, z = (field.random_nonzero(rng) for _ in range(3))
assert x * (y + z) == x * y + x * z
print("distributivity holds exactly on random elements")

m = bb.SquareMatrix.from_rows(field, [[1, 2, 0], [0, 1, 5], [7, 0, 1]])
m_inv = m.inverse()
print(f"3x3 matrix inverse check: M @ M^-1 == I -> {m @ m_inv == bb.SquareMatrix.identity(field, 3)}")

print(f"\nflattening embeds 3x3 matrices into a vector space of dim {3 * 3}")
state = bb.EchelonState(field, 9)
inserted = 0
for k in range(12):
    vec = field.asarray([rng.randrange(field.p) for _ in range(9)])
    inserted += state.try_extend(vec)
print(f"fed 12 random vectors, kept {inserted} independent ones (ambient dim 9)")

snap = field.ops.snapshot()
basis = [
    bb.FlatVector(field, field.asarray([rng.randrange(field.p) for _ in range(16)]))
    for _ in range(6)
]
coeffs = [rng.randrange(field.p) for _ in range(6)]
target_v = field.zeros(16)
for c, vec in zip(coeffs, basis):
    target_v = (target_v + c * vec.v) % field.p
got = bb.solve_coordinates(basis, bb.FlatVector(field, target_v))
mul, add, inv = field.ops.delta(snap)
print(f"solve_coordinates recovered the construction coefficients exactly: "
      f"{list(got) == coeffs}")
print(f"counted work for that solve: {mul} mul, {add} add, {inv} inv")
