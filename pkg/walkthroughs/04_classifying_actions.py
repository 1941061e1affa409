"""
Type I, II and III actions
==========================

The classifier looks for a global fixed point, then an invariant lattice or
additive translation numbers, then a common period, and finally a ladder of
expansion witnesses.  Every positive answer comes with exact data.
"""

from fractions import Fraction

from lineorders import MarkedAction, classify, evaluate_word_at, word
from lineorders.actions import NAMED_ACTIONS

for name, make in NAMED_ACTIONS.items():
    res = classify(MarkedAction(make()))
    print(f"{name:>16}: {res.verdict:<16} {res.witness if res.verdict != 'TypeIII' else ''}")

# replay the type III witness for x -> x + 1, x -> 2x by hand
res = classify(MarkedAction(NAMED_ACTIONS["bs12"]()))
gens = NAMED_ACTIONS["bs12"]()
for rung in res.witness["ladder"]:
    w = word(rung["word"])
    a, b = Fraction(res.witness["a"]), Fraction(res.witness["b"])
    print(f"j = {rung['j']}: {w} sends [{a}, {b}] to "
          f"[{evaluate_word_at(w, gens, a)}, {evaluate_word_at(w, gens, b)}]")

# a shallow search gives up honestly
print(classify(MarkedAction(gens, depth=1)).verdict)
