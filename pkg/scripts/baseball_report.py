"""Print the full decoherence report for the 100 mph baseball preset.

Usage: python scripts/baseball_report.py [csv|json|text]
"""

import sys

from decogauss.scenarios import baseball_scenario, emit, run

fmt = sys.argv[1] if len(sys.argv) > 1 else "text"
report = run(baseball_scenario(), samples=8)
sys.stdout.buffer.write(emit(report, fmt))
