"""The expression DSL and the ordered-monomial rewriter.

Expressions in the presentation generators are parsed from text, rewritten
to the normal form X1^a X2^b X3^c * (central puncture monomial), and
evaluated in representations.  The rewriter applies the oriented
q-commutation rules of the surface presentation; this script shows the
rules in action and checks order-independence on a random word.
"""

import random

from skeinrep import (SPHERE4, TORUS1, evaluate, evaluate_normal_form, make_root_system,
                      normalize, parse, puncture_element, random_word_expression,
                      torus_params_exact, build_torus_rep)
from skeinrep import matrices

rs = make_root_system(3)

# ---------------------------------------------------------------------------
# the commutation rule of the punctured torus
# ---------------------------------------------------------------------------

expr = parse("A X1 X2 - A^-1 X2 X1", TORUS1, rs)
print(f"normalize(A X1 X2 - A^-1 X2 X1) = {normalize(expr)}")
print("(the coefficient is A^2 - A^-2 reduced in the canonical basis)")

expr = parse("X2 X1 X2 X1", TORUS1, rs)
print(f"\nnormalize(X2 X1 X2 X1) = {normalize(expr)}")

# on the sphere the rules pick up central puncture terms
expr = parse("X2 X1", SPHERE4, rs)
print(f"\nnormalize(X2 X1) on the 4-puncture sphere =\n  {normalize(expr)}")

# ---------------------------------------------------------------------------
# confluence: the normal form does not depend on the rewrite order
# ---------------------------------------------------------------------------

rng = random.Random(42)
text = random_word_expression(TORUS1, rng, max_word_len=7)
print(f"\nrandom expression: {text}")
expr = parse(text, TORUS1, rs)
left = normalize(expr, order="leftmost")
right = normalize(expr, order="rightmost")
print(f"leftmost-first  == rightmost-first: {left == right}")

# ---------------------------------------------------------------------------
# soundness: rewriting commutes with evaluation in a representation
# ---------------------------------------------------------------------------

rsf = make_root_system(3, "bigfloat", 192)
rep = build_torus_rep(torus_params_exact(
    rsf.scalar(complex(1.3, 0.4)), rsf.scalar(complex(0.7, -0.2)), rsf.scalar(complex(0.9, 0.5))))
expr_f = parse(text, TORUS1, rsf)
direct = evaluate(expr_f, rep)
via_nf = evaluate_normal_form(normalize(expr_f), rep)
_, mag = matrices.residual_report(direct - via_nf)
print(f"evaluate(expr) vs evaluate(normalize(expr)): max deviation {mag:.2e}")

# ---------------------------------------------------------------------------
# the distinguished puncture element of the torus
# ---------------------------------------------------------------------------

pe = puncture_element(TORUS1, rsf)
out = evaluate(pe, rep)
p = rep.puncture_scalars["P"]
_, mag = matrices.residual_report(out - matrices.scalar_matrix(p, rep.dim))
print(f"\npuncture polynomial acts as p * Id: deviation {mag:.2e}")
print(f"p = {p}")
