"""Run a two-parameter sweep from a config file and print the resulting surface."""

import os

from qutrit_teleport.sweep import format_rows, load_config, run_sweep

here = os.path.dirname(os.path.abspath(__file__))
cfg = load_config(os.path.join(here, "configs", "bf_input_ad_bob.toml"))
rows = run_sweep(cfg)
print(format_rows(cfg, rows), end="")
