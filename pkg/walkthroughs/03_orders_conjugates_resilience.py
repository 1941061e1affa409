"""
Orders from actions, their conjugates, and resilient pairs
==========================================================

An action plus reference points orders a free group.  Conjugating the
order moves it around the space of orders; the distance between two
orders is read off from the largest ball on which they agree.
"""

from lineorders import (
    ConjugatedOrder,
    DynOrder,
    certified_free_pair,
    enumerate_ball,
    find_resilient_pair,
    order_distance,
    word,
)
from lineorders.actions import abelian_pair, thompson_pair

o = DynOrder(certified_free_pair())
ball = enumerate_ball(2)
print("ball 2 in increasing order:")
print("  ", " < ".join(str(w) for w in o.sorted(ball)))

# conjugates agree with o near the identity only up to some radius
for h in ["a", "b a", "a^-1 b^2"]:
    c = ConjugatedOrder(o, word(h))
    print(f"d(o, o conjugated by {h}) = {order_distance(o, c, 4)}")

# an order on Thompson's group is not Conradian: it has a resilient pair
th = DynOrder(thompson_pair())
wit = find_resilient_pair(th, 3, n_max=5)
print("resilient pair:", wit.f, "|", wit.g, "|", wit.h1, "|", wit.h2)
print("  powers n = 2..5 fail at:", wit.failures() or "none")

# a bi-invariant order has none
print("abelian, radius 3:", find_resilient_pair(DynOrder(abelian_pair()), 3))
