"""Command-line frontend: parse group specifications, run the pipeline,
emit machine-readable or tabular reports, and run the bundled self-test.

Input specification (JSON, UTF-8)::

    {
      "name": "kummer",                 # optional display name
      "rank": 4,                        # lattice rank n
      "generators": [[[-1,0,0,0], ...]],# list of rank x rank integer matrices
      "generator_labels": ["x"],        # optional, same length as generators
      "caps": {"order_cap": 512, "h1_cap": 1000000}   # optional
    }

Exit codes: 0 success, 1 computational error, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .assemble import (
    AssemblyError,
    SPECIALIZATIONS,
    conjugacy_buckets,
    equivariant_euler_class,
    grouped_by_point_class,
    specialize,
)
from .classify import Classification, classify_finite_subgroups
from .cohom1 import CohomologyError, DEFAULT_H1_CAP, first_cohomology, normalizer_orbits
from .crystal import Crystal, NonIntegralAverageError
from .intlinalg import Mat
from .matgroup import DEFAULT_ORDER_CAP, GroupError, close_group
from .orderposet import (
    PosetError,
    build_branch_poset,
    is_directed,
    reduced_euler_characteristic,
)

COMMANDS = ("classify", "euler", "specialize", "h1", "fixed-lattice",
            "poset", "subgroups", "selftest")

COMPUTATIONAL_ERRORS = (GroupError, CohomologyError, AssemblyError,
                        PosetError, NonIntegralAverageError)


class InputError(Exception):
    """Schema or file problem; reported with the offending field path."""


@dataclass(frozen=True)
class GroupSpec:
    name: str
    rank: int
    generators: tuple[Mat, ...]
    generator_labels: tuple[str, ...] | None
    order_cap: int
    h1_cap: int


def parse_group_spec(text: str) -> GroupSpec:
    """Validate and load a group specification document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"schema violation: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise InputError("schema violation: top-level value must be an object")
    known = {"name", "rank", "generators", "generator_labels", "caps"}
    for key in doc:
        if key not in known:
            raise InputError(f"schema violation at {key!r}: unknown field")
    rank = doc.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise InputError("schema violation at 'rank': need a positive integer")
    gens_doc = doc.get("generators")
    if not isinstance(gens_doc, list):
        raise InputError("schema violation at 'generators': need a list of matrices")
    gens = []
    for gi, g in enumerate(gens_doc):
        path = f"generators[{gi}]"
        if not isinstance(g, list) or not all(isinstance(r, list) for r in g):
            raise InputError(f"schema violation at {path}: need a nested array")
        if any(len(r) != len(g) for r in g):
            raise InputError(f"non-square matrix at {path}")
        if len(g) != rank:
            raise InputError(f"rank mismatch at {path}: got {len(g)}, expected {rank}")
        for ri, row in enumerate(g):
            for ci, x in enumerate(row):
                if not isinstance(x, int) or isinstance(x, bool):
                    raise InputError(
                        f"schema violation at {path}[{ri}][{ci}]: entries must be integers")
        gens.append(tuple(tuple(row) for row in g))
    labels = doc.get("generator_labels")
    if labels is not None:
        if (not isinstance(labels, list)
                or not all(isinstance(s, str) for s in labels)
                or len(labels) != len(gens)):
            raise InputError(
                "schema violation at 'generator_labels': need one string per generator")
        labels = tuple(labels)
    caps = doc.get("caps", {})
    if not isinstance(caps, dict):
        raise InputError("schema violation at 'caps': need an object")
    for key in caps:
        if key not in ("order_cap", "h1_cap"):
            raise InputError(f"schema violation at caps.{key}: unknown field")
        v = caps[key]
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InputError(f"schema violation at caps.{key}: need a positive integer")
    name = doc.get("name", "unnamed")
    if not isinstance(name, str):
        raise InputError("schema violation at 'name': need a string")
    return GroupSpec(
        name=name,
        rank=rank,
        generators=tuple(gens),
        generator_labels=labels,
        order_cap=caps.get("order_cap", DEFAULT_ORDER_CAP),
        h1_cap=caps.get("h1_cap", DEFAULT_H1_CAP),
    )


BUNDLED_EXAMPLES = ("kummer", "c4_t6", "c2c2_t6", "s3_z2", "a5_t4")


def bundled_text(filename: str) -> str:
    return resources.files("orbichi.data").joinpath(filename).read_text("utf-8")


def load_bundled_spec(name: str) -> GroupSpec:
    return parse_group_spec(bundled_text(f"{name}.json"))


def load_spec(path: str) -> GroupSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read input file: {exc}") from None
    return parse_group_spec(text)


# -- report builders -----------------------------------------------------


def _frac(x: Fraction) -> str | int:
    return int(x) if x.denominator == 1 else str(x)


def _build(spec: GroupSpec):
    group = close_group(spec.rank, list(spec.generators), spec.order_cap)
    return group, Crystal(group)


def report_subgroups(spec: GroupSpec) -> dict:
    group, _ = _build(spec)
    cl = Classification(group, spec.h1_cap)
    return {
        "command": "subgroups",
        "name": spec.name,
        "rank": spec.rank,
        "point_group_order": group.order,
        "subgroup_classes": [
            {
                "class_id": sc.class_id,
                "order": sc.order,
                "conjugates_count": sc.conjugates_count,
                "normalizer_order": len(sc.normalizer),
                "element_class_count": sc.element_class_count,
            }
            for sc in cl.lattice.classes
        ],
    }


def report_fixed_lattice(spec: GroupSpec) -> dict:
    group, crystal = _build(spec)
    cl = Classification(group, spec.h1_cap)
    rows = []
    for sc in cl.lattice.classes:
        lattice = crystal.fixed_lattice(sc.representative)
        rows.append({
            "class_id": sc.class_id,
            "order": sc.order,
            "fixed_rank": lattice.rank,
            "character_rank": crystal.character_fixed_rank(sc.representative),
            "basis": [list(row) for row in lattice.basis],
        })
    return {
        "command": "fixed-lattice",
        "name": spec.name,
        "rank": spec.rank,
        "point_group_order": group.order,
        "fixed_lattices": rows,
    }


def report_h1(spec: GroupSpec) -> dict:
    group, crystal = _build(spec)
    cl = Classification(group, spec.h1_cap)
    rows = []
    for sc in cl.lattice.classes:
        data = cl.h1[sc.class_id]
        orbits = normalizer_orbits(crystal, data, sc.normalizer)
        rows.append({
            "class_id": sc.class_id,
            "order": sc.order,
            "h1_order": data.order,
            "invariants": list(data.invariants.torsion_factors),
            "orbit_count": len(orbits),
            "orbits": [list(o) for o in orbits],
        })
    return {
        "command": "h1",
        "name": spec.name,
        "rank": spec.rank,
        "point_group_order": group.order,
        "h1": rows,
    }


def _class_row(cl: Classification, c) -> dict:
    return {
        "label": c.label,
        "order": c.order,
        "point_class": c.point_class,
        "point_order": cl.lattice.classes[c.point_class].order,
        "fixed_rank": c.fixed_rank,
        "zero_orbit": c.has_zero_orbit,
        "orbit_size": len(c.cocycle_orbit),
        "maximal": c.is_maximal,
        "in_omega": c.in_omega,
        "contractible": c.flag_contractible,
        "contained_in": [cl.classes[j].label for j in c.covers],
    }


def report_classify(spec: GroupSpec) -> dict:
    group, _ = _build(spec)
    cl = classify_finite_subgroups(group, spec.h1_cap)
    return {
        "command": "classify",
        "name": spec.name,
        "rank": spec.rank,
        "point_group_order": group.order,
        "vcd": cl.vcd,
        "class_count": len(cl.classes),
        "classes": [_class_row(cl, c) for c in cl.classes],
    }


def report_poset(spec: GroupSpec) -> dict:
    group, crystal = _build(spec)
    cl = Classification(group, spec.h1_cap)
    rows = []
    for sc in cl.lattice.classes:
        if crystal.fixed_rank(sc.representative) != 0 or sc.order == 1:
            continue
        for sub in conjugacy_buckets(cl, sc.representative):
            if crystal.fixed_rank(sub) < 1:
                continue
            poset = build_branch_poset(crystal, sub, sc.representative,
                                       cl.lattice.subgroups)
            rows.append({
                "ambient_point_class": sc.class_id,
                "ambient_order": sc.order,
                "lower_point_class": cl.lattice.class_of(sub)[0],
                "lower_order": len(sub),
                "vertex_count": poset.size,
                "reduced_euler": reduced_euler_characteristic(poset),
                "directed": is_directed(poset),
            })
    return {
        "command": "poset",
        "name": spec.name,
        "rank": spec.rank,
        "point_group_order": group.order,
        "branch_posets": rows,
    }


def euler_data(spec: GroupSpec) -> tuple[Classification, dict]:
    group, _ = _build(spec)
    cl = classify_finite_subgroups(group, spec.h1_cap)
    chi = equivariant_euler_class(cl)
    grouped = grouped_by_point_class(chi, cl)
    specs = {kind: specialize(chi, kind, cl) for kind in SPECIALIZATIONS}
    if specs["orbifold"] != 0:
        raise AssemblyError("orbifold specialization is nonzero")
    omega_points = sorted({c.point_class for c in cl.omega_classes()})
    report = {
        "command": "euler",
        "name": spec.name,
        "rank": spec.rank,
        "point_group_order": group.order,
        "vcd": cl.vcd,
        "class_count": len(cl.classes),
        "classes": [_class_row(cl, c) for c in cl.classes],
        "euler_class": [
            {"label": c.label,
             "coefficient": _frac(chi.coefficients.get(c.class_id, Fraction(0)))}
            for c in cl.classes
        ],
        "grouped_euler_class": [
            {"point_class": pc,
             "point_order": cl.lattice.classes[pc].order,
             "coefficient": _frac(w)}
            for pc, w in grouped.items()
        ],
        "maximal_blocks": [
            {"point_class": pc,
             "point_order": cl.lattice.classes[pc].order,
             "a_count": cl.a_count(pc)}
            for pc in omega_points
        ],
        "specializations": {k: _frac(v) for k, v in specs.items()},
    }
    return cl, report


def report_euler(spec: GroupSpec) -> dict:
    return euler_data(spec)[1]


def report_specialize(spec: GroupSpec, kind: str) -> dict:
    _, data = euler_data(spec)
    return {
        "command": "specialize",
        "name": spec.name,
        "map": kind,
        "value": data["specializations"][kind],
    }


# -- self-test against the bundled corpus --------------------------------


def _selftest_one(name: str) -> dict:
    golden = json.loads(bundled_text("goldens.json"))[name]
    spec = load_bundled_spec(name)
    cl, data = euler_data(spec)
    checks = []

    def check(label: str, expected, actual) -> None:
        checks.append({
            "check": label,
            "expected": expected,
            "actual": actual,
            "pass": expected == actual,
        })

    if "class_count" in golden:
        check("class_count", golden["class_count"], data["class_count"])
    grouped = sorted(
        [e["point_order"], e["coefficient"]] for e in data["grouped_euler_class"]
    )
    check("euler_class_grouped", sorted(map(list, golden["grouped"])), grouped)
    for kind in SPECIALIZATIONS:
        check(f"specialization_{kind}", golden["specializations"][kind],
              str(data["specializations"][kind]))
    if "classes" in golden:
        actual_classes = sorted(
            [row["order"], row["fixed_rank"], row["zero_orbit"],
             coeff["coefficient"]]
            for row, coeff in zip(data["classes"], data["euler_class"])
        )
        check("euler_class_by_class", sorted(map(list, golden["classes"])),
              actual_classes)
    if "h1_orders" in golden:
        actual_h1 = {
            str(sc.order): list(cl.h1[sc.class_id].invariants.torsion_factors)
            for sc in cl.lattice.classes if str(sc.order) in golden["h1_orders"]
        }
        check("h1_invariants", golden["h1_orders"], actual_h1)
    if "a_counts" in golden:
        actual_a = {
            str(b["point_order"]): b["a_count"] for b in data["maximal_blocks"]
        }
        check("a_counts", golden["a_counts"], actual_a)
    if "branch_euler" in golden:
        poset_rows = report_poset(spec)["branch_posets"]
        actual_be: dict[str, dict[str, int]] = {}
        for row in poset_rows:
            amb = str(row["ambient_order"])
            if amb in golden["branch_euler"]:
                actual_be.setdefault(amb, {})[str(row["lower_order"])] = \
                    row["reduced_euler"]
        check("branch_euler", golden["branch_euler"], actual_be)
    return {
        "example": name,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def report_selftest(parallel: bool = False) -> dict:
    if parallel:
        with ThreadPoolExecutor(max_workers=len(BUNDLED_EXAMPLES)) as pool:
            results = list(pool.map(_selftest_one, BUNDLED_EXAMPLES))
    else:
        results = [_selftest_one(name) for name in BUNDLED_EXAMPLES]
    return {
        "command": "selftest",
        "results": results,
        "passed": sum(1 for r in results if r["pass"]),
        "total": len(results),
        "pass": all(r["pass"] for r in results),
    }


# -- rendering -----------------------------------------------------------


def _render_rows(rows: list[dict]) -> list[str]:
    if not rows:
        return ["(none)"]
    headers = list(rows[0])
    cells = [[str(r[h]) for h in headers] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells))
              for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*headers)]
    out.extend(fmt.format(*row) for row in cells)
    return out


def render_table(report: dict) -> str:
    lines: list[str] = []
    table_keys = ("subgroup_classes", "fixed_lattices", "h1", "classes",
                  "branch_posets", "euler_class", "grouped_euler_class",
                  "maximal_blocks")
    for key, value in report.items():
        if key in table_keys and isinstance(value, list):
            lines.append(f"[{key}]")
            simple = [
                {k: v for k, v in row.items() if not isinstance(v, (list, dict))}
                for row in value
            ]
            lines.extend(_render_rows(simple))
            lines.append("")
        elif key == "results":
            for r in value:
                for c in r["checks"]:
                    status = "PASS" if c["pass"] else "FAIL"
                    lines.append(f"{status}  {r['example']}.{c['check']}")
            lines.append("")
        elif isinstance(value, dict):
            lines.append(f"{key}: " + ", ".join(f"{k}={v}" for k, v in value.items()))
        elif not isinstance(value, list):
            lines.append(f"{key}: {value}")
    return "\n".join(lines).rstrip() + "\n"


def execute_command(command: str, spec: GroupSpec | None,
                    map_kind: str | None = None,
                    parallel: bool = False) -> dict:
    if command == "selftest":
        return report_selftest(parallel)
    assert spec is not None
    if command == "subgroups":
        return report_subgroups(spec)
    if command == "fixed-lattice":
        return report_fixed_lattice(spec)
    if command == "h1":
        return report_h1(spec)
    if command == "classify":
        return report_classify(spec)
    if command == "poset":
        return report_poset(spec)
    if command == "euler":
        return report_euler(spec)
    if command == "specialize":
        return report_specialize(spec, map_kind or "orbifold")
    raise InputError(f"unknown command {command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="orbichi",
        description="Finite-subgroup classification and equivariant Euler "
                    "classes of crystallographic groups K acting on Z^n.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", help="path to a group spec JSON file, or "
                        "the name of a bundled example "
                        f"({', '.join(BUNDLED_EXAMPLES)})")
    parser.add_argument("--format", choices=("json", "table"), default="json")
    parser.add_argument("--order-cap", type=int, default=None,
                        help="override the group closure size cap")
    parser.add_argument("--h1-cap", type=int, default=None,
                        help="override the cohomology enumeration cap")
    parser.add_argument("--map", choices=SPECIALIZATIONS, default="orbifold",
                        help="which specialization the specialize command emits")
    parser.add_argument("--parallel", action="store_true",
                        help="run the selftest examples in a thread pool "
                        "(results are identical to the sequential run)")
    args = parser.parse_args(argv)

    try:
        spec = None
        if args.command != "selftest":
            if not args.input:
                raise InputError("--input is required for this command")
            if args.input in BUNDLED_EXAMPLES:
                spec = load_bundled_spec(args.input)
            else:
                spec = load_spec(args.input)
            if args.order_cap or args.h1_cap:
                spec = GroupSpec(
                    name=spec.name,
                    rank=spec.rank,
                    generators=spec.generators,
                    generator_labels=spec.generator_labels,
                    order_cap=args.order_cap or spec.order_cap,
                    h1_cap=args.h1_cap or spec.h1_cap,
                )
        report = execute_command(args.command, spec, args.map, args.parallel)
    except InputError as exc:
        print(json.dumps({"error": "input", "message": str(exc)}),
              file=sys.stderr)
        return 2
    except COMPUTATIONAL_ERRORS as exc:
        print(json.dumps({"error": "computational",
                          "type": type(exc).__name__,
                          "message": str(exc)}), file=sys.stderr)
        return 1

    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render_table(report), end="")
    if args.command == "selftest" and not report["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
