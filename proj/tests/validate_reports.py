"""Validate every JSON report the CLI can emit against the shipped schema."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def is_chain(path: pathlib.Path) -> bool:
    for line in path.read_text().splitlines():
        words = line.split("#", 1)[0].split()
        if words:
            return words[0] == "chain"
    return False


def main() -> int:
    cli, schema_path, data_dir = sys.argv[1:4]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    runs = [["demo", "hardy"], ["demo", "fr"], ["demo", "wigner"], ["demo", "cycle", "4"]]
    for f in sorted(pathlib.Path(data_dir).glob("*.scn")):
        runs.append(["analyze", str(f)])
        if not is_chain(f):
            runs.append(["ncf", str(f)])
            runs.append(["cycles", str(f)])
    failures = 0
    for args in runs:
        proc = subprocess.run([cli, *args, "--format", "json"], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=str)
        for e in errors:
            print(f"FAIL {' '.join(args)}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += bool(errors)
    print(f"{len(runs) - failures}/{len(runs)} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
