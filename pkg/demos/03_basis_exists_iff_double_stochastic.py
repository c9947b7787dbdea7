"""The a-basis is G-orthonormal exactly when the transition matrix is double stochastic.

Scans random spaces of both kinds and reports the worst unitarity defect in each group.
"""
from hyperprob import classify, context_stats, lambda_coefficients
from hyperprob.errors import DegenerateContext, ZeroConditioningContext
from hyperprob.generators import random_corpus
from hyperprob.hyperspace import GMatrix2, unitarity_defects
from hyperprob.qlra import a_basis_vectors, represent


def hyperbolic_contexts(spaces):
    for space in spaces:
        for name in space.contexts:
            try:
                s = context_stats(space, name)
            except (DegenerateContext, ZeroConditioningContext):
                continue
            if classify(lambda_coefficients(s)) == "hyperbolic":
                yield s


def worst_defect(stats):
    rep = represent(stats)
    e1, e2 = a_basis_vectors(stats, rep.profile.epsilon, rep.thetas)
    V = GMatrix2((tuple(e1), tuple(e2)), "a", "b")
    return max(abs(d) for d in unitarity_defects(V))


for label, flag, seed in (("double stochastic", True, 1), ("not double stochastic", False, 2)):
    defects = [worst_defect(s) for s in hyperbolic_contexts(random_corpus(seed, 300, double_stochastic=flag))]
    print(f"{label:22} contexts={len(defects):4d}  max defect={max(defects):.3e}  min defect={min(defects):.3e}")

print("\ndefects near 1e-16 mean a genuine orthonormal basis; order-0.1 defects mean none exists")
