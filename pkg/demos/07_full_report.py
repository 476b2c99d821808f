"""Run every verification suite and render the combined report.

This is what the ``hessym verify all`` command does.  Suites that pass
under a documented corrected reading come back "flagged" rather than
"pass" or "fail"; the overall status is only "fail" if some check
actually failed.
"""

import time

from hessym import SUITE_NAMES, overall_status, render_markdown, run_suites

t0 = time.perf_counter()
reports = run_suites(SUITE_NAMES)
elapsed = time.perf_counter() - t0

for rep in reports:
    c = rep.counts
    print(f"{rep.suite:<16} {rep.status:<8} "
          f"({c['pass']} pass, {c['flagged']} flagged, {c['fail']} fail) "
          f"[{rep.wall_time:.2f}s]")

print(f"\noverall: {overall_status(reports)}  ({elapsed:.1f}s total)")

# Full detail for one suite, in the same markdown the CLI emits.
print("\n" + render_markdown([r for r in reports if r.suite == "invariants"]))
