"""Split-complex arithmetic: j*j = 1, the indefinite modulus and hyperbolic polar form."""
import math

from hyperprob import HyperNumber, conj, hexp, invert, polar, sq_modulus

j = HyperNumber(0, 1)
print("j * j =", j * j)

z = HyperNumber(3, 1)
w = HyperNumber(2, -0.5)
print("z =", z, " w =", w)
print("|z|^2 =", sq_modulus(z), " |w|^2 =", sq_modulus(w))
print("|zw|^2 =", sq_modulus(z * w), "(product of the two)")
print("z * conj(z) =", z * conj(z))
print("z * invert(z) =", z * invert(z))

p = polar(z)
print(f"polar form: sign={p.sign} modulus={p.modulus:.6f} theta={p.theta:.6f}")
print("reconstructed:", p.reconstruct())

t = 0.7
e = hexp(t)
print(f"e^(j {t}) = {e}; cosh^2 - sinh^2 = {sq_modulus(e):.15f}")
print("exponent law error:", abs((hexp(0.3) * hexp(0.4) - e).x))

# the light cone: nonzero numbers with zero square modulus have no inverse
cone = HyperNumber(1, 1)
print("|1 + j|^2 =", sq_modulus(cone))
try:
    invert(cone)
except Exception as exc:
    print("invert(1 + j) ->", type(exc).__name__)

print("overflow guard at theta=800:", end=" ")
try:
    hexp(800.0)
except OverflowError:
    print("OverflowError")
print("cosh(2) check:", math.isclose(hexp(2.0).x, math.cosh(2.0)))
