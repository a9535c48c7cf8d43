"""Round trip through the symmetric PBW maps.

A polynomial in the free associative algebra is split into symmetrized
products of primitive Lie elements, then multiplied back out.
"""
from pbwlie.expr import evaluate_text
from pbwlie.freeassoc import to_text
from pbwlie.magnus import mu_closed
from pbwlie.pbwmaps import TensorPolynomial, bold_mu_sigma, m_eval, tensor_text

u = evaluate_text("X1*X2*X1 + 2*X2*X2 - 1/3*X1")
t = bold_mu_sigma(u)
print("u            =", to_text(u))
print("mu_sigma(u)  =", tensor_text(t))
print("m(mu_sigma u) == u:", m_eval(t) == u)

# the one-factor part of the inverse map on X1*X2*...*Xn expands to mu_n
for n in (2, 3, 4):
    word = evaluate_text("*".join(f"X{i}" for i in range(1, n + 1)))
    one_factor = TensorPolynomial({tw: c for tw, c in bold_mu_sigma(word).items() if len(tw) == 1})
    print(f"n={n}: one-factor part = {tensor_text(one_factor)}")
    print(f"     expands to mu_{n}: {m_eval(one_factor) == mu_closed(n)}")
