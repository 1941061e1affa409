"""
Breaking a verbal order with two PL maps
========================================

For a mixed-sign word W we build f, g moving 0 to the right while
W(f, g) moves 0 to the left.  The order read off at 0 then has f, g
positive and W(f, g) negative.
"""

from lineorders import DynOrder, construct_violation, is_W_order_on_ball, word

for text in ["a^-1 b a", "a^-1 b a^2", "a b^-2 a^-1 b"]:
    w = word(text)
    v = construct_violation(w)
    print(f"{text:>16}:  f(0) = {v.f0},  g(0) = {v.g0},  W(f,g)(0) = {v.w0}")

# the maps are ordinary PL homeomorphisms with rational breakpoints
v = construct_violation(word("a^-1 b a"))
print("f breakpoints:", [str(x) for x in v.f.breakpoints])
print("g breakpoints:", [str(x) for x in v.g.breakpoints])

# the order they induce already fails on the ball of radius 1
o = v.order()
print("counterexample pair:", is_W_order_on_ball(o, v.word, 1))

# words without both signs cannot be broken this way
try:
    construct_violation(word("a b^2"))
except ValueError as exc:
    print("a b^2:", exc)
