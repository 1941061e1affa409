"""
No law holds: ping-pong on intertwined zigzags
==============================================

Two maps whose fixed points alternate play ping-pong between small
neighbourhoods of those points.  A certificate for depth k shows that no
word with at most k a-syllables is a law.
"""

from lineorders import (
    certificate_for,
    engel,
    gen_intertwined_pair,
    no_law_witness,
    syllable_normal_form,
    verify_certificate,
    word,
    word_image,
)

pair = gen_intertwined_pair(2)
print("fixed points of g:", [str(x) for x in pair.p])
print("fixed points of f:", [str(x) for x in pair.q])
print("problems:", pair.problems() or "none")

# smallest power N that makes the inclusions hold
c = certificate_for(2)
print(f"k = 2 needs N = {c.power}:", verify_certificate(c))

# an Engel word has five a-syllables after conjugation, so it needs depth 5
w = engel(word("a"), word("b"), 2)
print(w, "-> k =", syllable_normal_form(w).k)
img = word_image(certificate_for(5), w)
for step in img.chain:
    print(f"  {step.label} -> {step.target}: {'ok' if step.ok else 'fails'}")
print(f"W moves {img.x_original} to {img.image_original}")

# any word, in any number of letters, goes through the same pipeline
for text in ["a b a^-1 b^-1", "a^10", "b^3"]:
    r = no_law_witness(word(text)).report()
    print(text, "->", r["two_letter_word"], "k =", r["k"], "moves", r["x"], "to", r["W(x)"])
