"""Validate btr inputs and outputs against docs/schemas."""
import argparse
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--btr", required=True)
    ap.add_argument("--schemas", required=True, type=pathlib.Path)
    ap.add_argument("--data", required=True, type=pathlib.Path)
    a = ap.parse_args()

    resources = []
    for p in sorted(a.schemas.glob("*.schema.json")):
        doc = json.loads(p.read_text())
        jsonschema.Draft202012Validator.check_schema(doc)
        resources.append((p.name, Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)

    def validate(schema, instance, what):
        v = jsonschema.Draft202012Validator({"$ref": schema}, registry=registry)
        errors = sorted(v.iter_errors(instance), key=lambda e: list(e.path))
        for e in errors:
            print(f"{what}: {list(e.path)}: {e.message}")
        return not errors

    d = a.data
    ok = True
    for name in ["airy.json", "two_branch.json", "low_order.json"]:
        ok &= validate("curve_spec.schema.json", json.loads((d / name).read_text()), name)
    ok &= validate("potential.schema.json", json.loads((d / "quartic_cell.json").read_text()), "quartic_cell.json")

    runs = [
        ("psi_output.schema.json", ["psi", "--g", "2", "--degrees", "4"]),
        ("psi_output.schema.json", ["psi", "--g", "1", "--degrees", "0", "--kappas", "1"]),
        ("free_energy_output.schema.json", ["free-energy", "--curve", d / "two_branch.json", "--g", "2", "--method", "both"]),
        ("free_energy_output.schema.json", ["--negated-bernoulli", "free-energy", "--curve", d / "airy.json", "--g", "2"]),
        ("local_form.schema.json", ["compute", "--curve", d / "two_branch.json", "--g", "1", "--n", "2", "--truncation", "2"]),
        ("check_output.schema.json", ["check", "--curve", d / "two_branch.json", "--suite", "all", "--max-chi", "2"]),
        ("maps_output.schema.json", ["maps", "--potential", d / "quartic_cell.json", "--lmax", "4"]),
        ("curve_spec.schema.json", ["convert-blobs", "--curve", d / "two_branch.json", "--to", "standard", "--max-chi", "2"]),
        ("self_test_output.schema.json", ["self-test"]),
    ]
    for schema, args in runs:
        args = [str(x) for x in args]
        p = subprocess.run([a.btr, *args], capture_output=True, text=True)
        what = " ".join(args)
        if p.returncode != 0:
            print(f"{what}: exit {p.returncode}\n{p.stderr}")
            ok = False
            continue
        ok &= validate(schema, json.loads(p.stdout), what)
    print("schemas ok" if ok else "schema violations")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
