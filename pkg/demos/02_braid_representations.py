"""Matrix images of braid groups: Lawrence-Krammer and unreduced Burau.

Both constructors validate every braid relation exactly before returning,
so a wrong coefficient in the action formulas cannot survive construction.
"""

import random

import braidbreak as bb

field = bb.PrimeField()
rng = random.Random(7)
q = rng.randrange(2, field.p)
t = rng.randrange(1, field.p)

print("dimension table:")
print(" n | lk dim n(n-1)/2 | burau dim n")
for n in (4, 6, 8, 12):
    lk = bb.lk_representation(field, n, q, t)
    burau = bb.burau_representation(field, n, t)
    print(f"{n:2d} | {lk.dim:15d} | {burau.dim:11d}")

rep = bb.lk_representation(field, 5, q, t)
s = [g[0] for g in rep.gen_images]
print(f"\nlk at n=5: s1 s2 s1 == s2 s1 s2 -> {s[0] @ s[1] @ s[0] == s[1] @ s[0] @ s[1]}")
print(f"lk at n=5: s1 s3 == s3 s1 (distant indices) -> {s[0] @ s[2] == s[2] @ s[0]}")

word = bb.BraidWord.from_text(5, "2 -3 2 1 1 -4")
image = bb.evaluate(rep, word)
back = bb.evaluate(rep, word.inverse())
print(f"word '{word.to_text()}' evaluated; image * image(inverse word) == I -> "
      f"{image @ back == bb.SquareMatrix.identity(field, rep.dim)}")

pair = bb.commuting_subgroups(rep, 2)
print(f"\nsubgroup split at 2: A uses {[g.index for g in pair.a_gens]}, "
      f"B uses {[g.index for g in pair.b_gens]}")
ga, gb = pair.a_gens[0], pair.b_gens[0]
print(f"cross commutation holds exactly: {ga.mat @ gb.mat == gb.mat @ ga.mat}")

print("\nperturbing one matrix entry (with a matching inverse) and rebuilding:")
images = list(rep.gen_images)
bad = images[0][0].a.copy()
bad[0, 0] = (int(bad[0, 0]) + 1) % field.p
bad_mat = bb.SquareMatrix(field, bad)
images[0] = (bad_mat, bad_mat.inverse())
try:
    bb.Representation(field, 5, images, rep.params)
except bb.RelationValidationError as e:
    print(f"rejected as expected: {e}")
