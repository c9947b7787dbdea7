"""Classify every context of the bundled eight-atom space, then represent the hyperbolic one."""
from hyperprob import classify, context_stats, hyp8, lambda_coefficients, phases, represent
from hyperprob.errors import DegenerateContext, ZeroConditioningContext
from hyperprob.qlra import born_residual_a, born_residual_b, expectation

space = hyp8()
print(f"{'context':8} {'lambda_1':>10} {'lambda_2':>10}  class")
for name in ("OMEGA", "B1", "B2", *space.contexts):
    try:
        stats = context_stats(space, name)
    except (DegenerateContext, ZeroConditioningContext) as exc:
        print(f"{name:8} skipped ({type(exc).__name__})")
        continue
    lam = lambda_coefficients(stats)
    print(f"{name:8} {lam[0]:10.5f} {lam[1]:10.5f}  {classify(lam)}")

stats = context_stats(space, "C")
profile = phases(lambda_coefficients(stats))
print("\ncontext C: epsilon =", profile.epsilon, " theta =", [round(t, 6) for t in profile.theta])

rep = represent(stats)
print("amplitude:", rep.amplitude)
print("P(b | C)        =", stats.p_b)
print("Born residual b =", f"{born_residual_b(rep):.2e}")
print("Born residual a =", f"{born_residual_a(rep):.2e}")
print("a-basis:")
for e in rep.a_basis:
    print("  ", e)
print("<b> with values (+1, -1):", round(expectation(rep, (1, -1)), 12))
