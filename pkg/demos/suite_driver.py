"""Drive verification suites from Python instead of the command line.

Every suite the CLI exposes is available programmatically: build a
SuiteConfig, call run_suite, and inspect the report dict.  The report
is exactly what `qhankel verify` writes to disk, so this is the way to
embed the certification in other tooling.  The script runs two small
configurations and prints their summary lines plus one full record.
"""

import json

from qhankel import SuiteConfig, run_suite
from qhankel.suites import summarize


def main():
    cfg = SuiteConfig(suite="kernel-contraction",
                      grid={"p": ["-1:1"], "N": ["40"]})
    report = run_suite(cfg)
    print(summarize(report))
    print("first record:")
    print(json.dumps(report["cases"][0], indent=2, sort_keys=True))

    cfg = SuiteConfig(suite="erdelyi", q_values=["0.6"],
                      grid={"n": ["0:1"], "m": ["0:1"], "nu": ["1"],
                            "sigma": ["0.3"], "z": ["0.7", "q^2"]})
    report = run_suite(cfg)
    print(summarize(report))


if __name__ == "__main__":
    main()
