"""Runs the CLI for every experiment and validates each JSON report against the schema."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def run(cli, args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        traj = pathlib.Path(tmp) / "qubit.csv"
        run(cli, ["qubit", "--steps", "100000", "--seed", "3", "--format", "csv", "--out", str(traj)])
        cases = [
            ["qubit", "--steps", "20000", "--seed", "7"],
            ["nor", "--steps", "20000", "--seed", "7"],
            ["spekkens", "--steps", "20000", "--seed", "7"],
            ["agent", "--mode", "memoryless", "--cycles", "2000", "--seed", "7"],
            ["agent", "--mode", "memory_assisted", "--system", "quantum", "--cycles", "2000", "--seed", "7"],
            ["audit", "--steps", "100", "--seed", "7"],
            ["infer", "--trajectory", str(traj), "--reference", "qubit"],
            ["infer", "--trajectory", str(traj)],
        ]
        for args in cases:
            code, out = run(cli, args)
            try:
                validator.validate(json.loads(out))
                print(f"ok   {' '.join(args[:1])} (exit {code})")
            except (json.JSONDecodeError, jsonschema.ValidationError) as err:
                failures += 1
                print(f"FAIL {' '.join(args)}: {err}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
