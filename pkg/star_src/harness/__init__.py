from star_src.harness.checks import REGISTRY, available_checks
from star_src.harness.suite import format_summary, run_suite, summary_table
