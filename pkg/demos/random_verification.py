"""Run the randomized inequality suite and print the per-check summary.

Same engine as `superquad verify`; everything is reproducible from the
master seed. The paper-variant sandwich check is expected to collect
counterexamples; every other check must be failure-free.
"""

from superquad.harness import SuiteConfig, run_suite

config = SuiteConfig(master_seed=42, trials=120, dims=(1, 2, 3, 4), spread=10.0)
report = run_suite(config)

print(f"{'check':30s} {'run':>5} {'pass':>5} {'fail':>5} {'skip':>5}  worst margin")
for name, rec in report.records.items():
    print(f"{name:30s} {rec.trials_run:5d} {rec.pass_count:5d} "
          f"{rec.fail_count:5d} {rec.skip_count:5d}  {rec.worst_margin: .3e}")

print()
print("asserted checks all pass:", report.all_asserted_pass)
print("wall time: %.2fs" % report.wall_time)

paper = report.records["sandwich_upper_paper"]
if paper.counterexamples:
    ce = paper.counterexamples[0]
    print()
    print("first recorded counterexample to the published sandwich correction:")
    print("  q =", ce["q"], " x =", ce["x"], " y =", ce["y"])
    print("  normalized margin =", ce["margin"])
