"""
Sweeping parameter ranges
=========================

Sweeps classify every tuple in a box of genera, ranks, degrees and k.
The output is CSV text, deterministic, in lexicographic order.
"""

import csv
import io
from collections import Counter

from nodalkernel.oracle import SweepRange, sweep_claim, sweep_classify, tally_csv

S = SweepRange(g1=(2, 3), g2=(2, 3), d1=(4, 12), d2=(4, 12), k=(1, 4))
text = sweep_classify(S, "complete_restrictions")
print(tally_csv(text))

###############################################################################
# Rows where the completeness route applies carry a window; pick out a few.

rows = [row for row in csv.DictReader(io.StringIO(text)) if row["window_lo"]]
for row in rows[:6]:
    print(row["g1"], row["g2"], row["d1"], row["d2"], row["k"], row["verdict"],
          f"[{row['window_lo']}, {row['window_hi']}]")

###############################################################################
# Complete pairs: every row should be strongly unstable.

complete = sweep_classify(SweepRange(g1=(2, 4), g2=(2, 4), r=(1, 2), d1=(0, 20), d2=(0, 20)), "complete")
print(tally_csv(complete))

###############################################################################
# The section-count bound behind that: k stays below d1 + d2 + r for every
# k up to the h^0 bound of semistable restrictions.

report = sweep_claim(SweepRange.claim_default())
print(report.summary())
print(Counter({f"case {c}": n for c, n in report.case_tally.items()}))
