"""Validate verify --json reports against the shipped schema and check they are reproducible."""

import json
import subprocess
import sys

import jsonschema

adiff, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)

runs = [
    ["--suite", "lucas", "--p", "3", "--m", "1"],
    ["--suite", "kaneda", "--p", "3"],
    ["--suite", "descent", "--p", "2"],
    ["--suite", "simpson", "--p", "2", "--r", "2"],
    ["--suite", "all", "--p", "2", "--m", "1", "--r", "1"],
    ["--suite", "glue", "--p", "3", "--timing"],
]

problems = []
for args in runs:
    outputs = [subprocess.run([adiff, "verify", "--json", *args], capture_output=True, text=True) for _ in range(2)]
    report = json.loads(outputs[0].stdout)
    try:
        jsonschema.validate(report, schema)
    except jsonschema.ValidationError as e:
        problems.append(f"{args}: {e.message}")
        continue
    names = [c["name"] for c in report["cases"]]
    if names != sorted(names):
        problems.append(f"{args}: cases not sorted")
    counts = {s: sum(c["status"] == s for c in report["cases"]) for s in ("pass", "fail", "skipped")}
    if counts != report["summary"]:
        problems.append(f"{args}: summary {report['summary']} disagrees with cases {counts}")
    if (report["status"] == "fail") != (counts["fail"] > 0) or (outputs[0].returncode != 0) != (counts["fail"] > 0):
        problems.append(f"{args}: status or exit code inconsistent")
    if "--timing" in args:
        if "wallTime" not in report:
            problems.append(f"{args}: --timing without wallTime")
    elif outputs[0].stdout != outputs[1].stdout:
        problems.append(f"{args}: repeated runs differ")

for p in problems:
    print(p)
print("ok" if not problems else f"{len(problems)} problem(s)")
sys.exit(1 if problems else 0)
