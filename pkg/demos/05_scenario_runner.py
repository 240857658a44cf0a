"""Drive the scenario runner programmatically.

Scenario files are plain JSON: a theorem id, a seed, a repetition
count, and an instance description (generator parameters or fully
inline operators).  The same runner backs the ``gframes`` command-line
entry point; exit code 0 means no repetition violated its theorem.
"""

import json
import tempfile
from pathlib import Path

from gframes.cli import main

scenario = {
    "schema": 1,
    "name": "demo_tight_sum",
    "theorem": "TIGHT_SUM",
    "seed": 2024,
    "repetitions": 8,
    "instance": {"alpha1": 2.0, "alpha2": 3.0},
}

with tempfile.TemporaryDirectory() as tmp:
    scenario_path = Path(tmp) / "demo.json"
    scenario_path.write_text(json.dumps(scenario, indent=2))
    report_path = Path(tmp) / "report.json"

    code = main(
        ["run", str(scenario_path), "--no-timestamp", "--report", str(report_path)]
    )
    print("exit code:", code)

    payload = json.loads(report_path.read_text())
    run = payload["runs"][0]
    print("aggregate:", run["aggregate"])
    for i, rep in enumerate(run["reports"]):
        print(
            f"rep {i}: {rep['verdict']}, tight constant"
            f" {rep['details']['achieved_tight_constant']:.9f}"
        )

    print()
    print("CSV flavor of the same run:")
    csv_path = Path(tmp) / "report.csv"
    main(
        [
            "run",
            str(scenario_path),
            "--format",
            "csv",
            "--report",
            str(csv_path),
        ]
    )
    print(csv_path.read_text())
