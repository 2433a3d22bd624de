"""Runs the sgof CLI and validates its JSON output against the shipped schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def run(*args):
    return subprocess.run([SGOF, *args], check=True, capture_output=True, text=True).stdout


SGOF, SCHEMA = sys.argv[1], Path(sys.argv[2])
schema = json.loads(SCHEMA.read_text())
validator = jsonschema.Draft202012Validator(schema)

with tempfile.TemporaryDirectory() as tmp:
    pop, sample = Path(tmp, "pop.txt"), Path(tmp, "sample.txt")
    run("generate", "--theta", "3", "-N", "2000", "--seed", "3", "-o", str(pop))
    run("sample", "--in", str(pop), "-n", "200", "--seed", "4", "-o", str(sample))
    documents = [
        json.loads(run("test", "--in", str(sample), "-N", "2000", "-n", "200", "-B", "19")),
        json.loads(run("test", "--in", str(sample), "-N", "2000", "-n", "200", "-B", "39",
                       "--family", "scale-free", "--bootstrap-statistics")),
        json.loads(run("test", "--in", str(sample), "-N", "2000", "-p", "0.1", "-r", "0.8",
                       "--zero-truncated", "-B", "9")),
    ]
    documents += json.loads(run("pin", "--in", str(sample), "-N", "2000", "--fn-rates", "0.8",
                                "--families", "exponential", "-B", "19", "--format", "json"))

failures = 0
for i, doc in enumerate(documents):
    for error in validator.iter_errors(doc):
        failures += 1
        print(f"document {i}: {error.message}")
print(f"{len(documents)} documents checked, {failures} schema violations")
sys.exit(1 if failures else 0)
