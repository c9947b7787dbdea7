"""Forward direction: a-coefficients through a G-unitary matrix give b-probabilities.

Also shows a decomposable input whose image is not decomposable.
"""
import math

from hyperprob import HyperState, context_stats, hexp, hyp8, represent, sq_modulus
from hyperprob.errors import NotDecomposableOutput
from hyperprob.forward import forward_probabilities, interference_terms
from hyperprob.hyperspace import apply

rep = represent(context_stats(hyp8(), "C"))
v = (math.sqrt(0.5), math.sqrt(0.5))
print("forward probabilities:", forward_probabilities(v, rep.V))
terms = interference_terms(v, rep.V)
print("closed form:", terms.probabilities, " epsilon:", terms.epsilon, " theta:", [round(t, 6) for t in terms.theta])

V = rep.V
# unit-modulus coefficients, but the relative hyperbolic phase pushes one output off the cone interior
bad = HyperState((math.sqrt(0.5), -math.sqrt(0.5) * hexp(1.0)), "a")
print("\ninput square moduli: ", [round(sq_modulus(c), 6) for c in bad])
print("output square moduli:", [round(sq_modulus(c), 6) for c in apply(V, bad)])
try:
    forward_probabilities(tuple(bad), V)
except NotDecomposableOutput as exc:
    print("rejected:", exc)
