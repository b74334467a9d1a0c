"""Seeded run of the identity suite, the same one behind `horoboundary verify`."""

import sys

from horoboundary.experiments import ExperimentConfig, run_identity_suite

table = run_identity_suite(ExperimentConfig(seed=42), trials=200, n_params=5)
sys.stdout.write(table.to_csv())
print("all passed:", table.passed)
