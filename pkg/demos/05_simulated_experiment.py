"""Estimate the disturbance coefficients from simulated trials and watch the spread shrink."""
from hyperprob import hyp8
from hyperprob.expsim import convergence_report, detect_regime, exact_counts, sample, spread_slope

space = hyp8()
exact = detect_regime(exact_counts(space, "C"))
print("exact lambda:", exact.lambdas, "->", exact.verdict)

for n in (100, 10_000, 1_000_000):
    rep = detect_regime(sample(space, "C", n, seed=7))
    lam = ", ".join(f"{l:.4f}" for l in rep.lambdas)
    se = ", ".join(f"{s:.4f}" for s in rep.stderr)
    print(f"n={n:>9}: lambda=({lam}) stderr=({se}) verdict={rep.verdict}")

rows = convergence_report(space, "C", [10_000, 100_000, 1_000_000], range(10))
for row in rows:
    print(f"n={row['n']:>9}: spread across seeds {row['spread'][0]:.4f}")
print("log-log slope of spread:", round(spread_slope(rows), 3), "(about -1/2 expected)")
