"""Batch front end: mask tables, run risk analyses, combine evidence.

Subcommands: ``mask``, ``risk``, ``combine``, ``demo-n3``, ``validate``.
Exit codes: 0 success, 1 configuration or parse error, 2 internal
consistency failure (a compatibility check or validation that should
hold did not).

The run configuration is a single JSON document::

    {
      "table": "people.csv",
      "scheme": {
        "age":  {"kind": "intervals", "intervals": [[15, 19], [20, 25]]},
        "city": {"kind": "groups", "groups": {"north": ["porto"],
                                              "south": ["faro"]}},
        "id":   {"kind": "identity"}
      },
      "attribute_subsets": [["age"], ["age", "city"]],
      "measures": ["nonspecificity_bits", "pignistic_entropy_nats"],
      "output": "report.json",
      "seed": 7
    }

``attribute_subsets`` defaults to every single attribute plus the full
set; ``measures`` defaults to both; ``--output`` overrides the config.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .belief import belief_from_mass, pignistic, validate_belief, validate_mass
from .combination import (
    RULES,
    AcceptabilityError,
    CombinationError,
    ConflictError,
    IncompatibleEvidenceError,
    fold_combine,
)
from .compatibility import TrueProbability, is_compatible
from .frames import MAX_FRAME
from .io import (
    dump_json,
    load_json,
    mass_from_dict,
    mass_to_dict,
    masked_csv_text,
    probability_from_dict,
    probability_to_dict,
    read_table_csv,
    set_function_from_dict,
    write_masked_csv,
)
from .measures import nonspecificity
from .reident import (
    GeneralizationScheme,
    GroupGeneralizer,
    IdentityGeneralizer,
    IntervalGeneralizer,
    Table,
    mask_generalize,
    n3_masking_posterior,
    n3_proposition_probability,
    n3_reident_belief,
    n3_scenario,
    noise_mask_n3_random,
)
from .risk import MEASURE_NAMES, analyze_table


class ConfigError(ValueError):
    """A run configuration that cannot be used."""


@dataclass(frozen=True)
class RunConfig:
    table_path: str
    scheme_spec: dict
    subset_names: Optional[tuple[tuple[str, ...], ...]]
    measures: tuple[str, ...]
    output: Optional[str]
    seed: Optional[int]


def parse_config(data: dict) -> RunConfig:
    if "table" not in data or not isinstance(data["table"], str):
        raise ConfigError("config needs a 'table' path")
    scheme_spec = data.get("scheme")
    if not isinstance(scheme_spec, dict) or not scheme_spec:
        raise ConfigError("config needs a non-empty 'scheme' object")
    subsets = data.get("attribute_subsets")
    subset_names = None
    if subsets is not None:
        if not isinstance(subsets, list) or not subsets:
            raise ConfigError("'attribute_subsets' must be a non-empty list")
        subset_names = tuple(tuple(map(str, names)) for names in subsets)
    measures = tuple(data.get("measures", MEASURE_NAMES))
    unknown = set(measures) - set(MEASURE_NAMES)
    if unknown:
        raise ConfigError(
            f"unknown measures {sorted(unknown)}; "
            f"choose from {list(MEASURE_NAMES)}"
        )
    output = data.get("output")
    seed = data.get("seed")
    return RunConfig(
        table_path=data["table"],
        scheme_spec=scheme_spec,
        subset_names=subset_names,
        measures=measures,
        output=output if output is None else str(output),
        seed=seed if seed is None else int(seed),
    )


def scheme_from_spec(spec: dict, table: Table) -> GeneralizationScheme:
    by_attribute = {}
    for attr, entry in spec.items():
        if attr not in table.attributes:
            raise ConfigError(
                f"scheme references unknown attribute {attr!r}"
            )
        if not isinstance(entry, dict):
            raise ConfigError(f"scheme entry for {attr!r} must be an object")
        kind = entry.get("kind")
        try:
            if kind == "intervals":
                spans = entry.get("intervals")
                if not spans:
                    raise ConfigError(
                        f"attribute {attr!r}: empty interval list"
                    )
                gen = IntervalGeneralizer(
                    tuple((lo, hi) for lo, hi in spans)
                )
            elif kind == "groups":
                groups = entry.get("groups")
                if not isinstance(groups, dict) or not groups:
                    raise ConfigError(f"attribute {attr!r}: empty groups")
                gen = GroupGeneralizer(
                    tuple(
                        (name, tuple(members))
                        for name, members in groups.items()
                    )
                )
            elif kind == "identity":
                gen = IdentityGeneralizer()
            else:
                raise ConfigError(
                    f"attribute {attr!r}: unknown generalizer kind "
                    f"{kind!r}"
                )
        except (ValueError, TypeError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"attribute {attr!r}: {exc}") from None
        by_attribute[attr] = gen
    missing = [a for a in table.attributes if a not in by_attribute]
    if missing:
        raise ConfigError(f"no generalizer for attributes {missing!r}")
    return GeneralizationScheme(by_attribute)


def _load_run(args) -> tuple[RunConfig, Table, GeneralizationScheme]:
    config = parse_config(load_json(args.config))
    table = read_table_csv(config.table_path)
    scheme = scheme_from_spec(config.scheme_spec, table)
    return config, table, scheme


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)


def cmd_mask(args) -> int:
    config, table, scheme = _load_run(args)
    masked = mask_generalize(table, scheme)
    output = args.output or config.output
    if output is not None:
        write_masked_csv(masked, output)
    else:
        sys.stdout.write(masked_csv_text(masked))
    return 0


def cmd_risk(args) -> int:
    config, table, scheme = _load_run(args)
    subsets = None
    if config.subset_names is not None:
        try:
            subsets = tuple(
                table.attrs_mask(names) for names in config.subset_names
            )
        except KeyError as exc:
            raise ConfigError(f"attribute subset: {exc.args[0]}") from None
    if args.threads is not None and args.threads < 1:
        raise ConfigError("--threads must be a positive integer")
    threads = args.threads if args.threads else os.cpu_count()
    report = analyze_table(
        table, scheme, subsets, config.measures, threads=threads
    )
    output = args.output or config.output
    text = dump_json(report.to_dict(), output)
    _emit(text, output)
    if not report.all_compatible:
        print(
            "internal consistency failure: a re-identification belief "
            "was not compatible with the true probability",
            file=sys.stderr,
        )
        return 2
    return 0


def cmd_combine(args) -> int:
    rule = RULES[args.rule]()
    prob = probability_from_dict(load_json(args.true))
    p = TrueProbability(prob)
    masses = []
    for path in args.masses:
        mass = mass_from_dict(load_json(path))
        if mass.frame != prob.frame:
            raise ConfigError(
                f"{path}: frame does not match the true-probability frame"
            )
        masses.append(mass)
    if len(masses) < 2:
        raise ConfigError("combine needs at least two mass files")
    trace = [nonspecificity(masses[0])]
    try:
        combined = masses[0]
        for combined in fold_combine(rule, masses, p):
            trace.append(nonspecificity(combined))
    except CombinationError as exc:
        if isinstance(exc, ConflictError):
            kind = "conflict"
        elif isinstance(exc, IncompatibleEvidenceError):
            kind = "incompatible-evidence"
        elif isinstance(exc, AcceptabilityError):
            kind = "acceptability"
        else:
            kind = "combination"
        failure = {
            "error": kind,
            "clause": getattr(exc, "clause", None),
            "step": exc.step,
            "message": str(exc),
        }
        text = dump_json(failure, args.output)
        _emit(text, args.output)
        return 2
    result = {
        "rule": rule.name,
        "nonspecificity_trace": trace,
        "combined": mass_to_dict(combined),
    }
    text = dump_json(result, args.output)
    _emit(text, args.output)
    return 0


_CANONICAL_N3 = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))


def cmd_demo_n3(args) -> int:
    size = args.table_size
    if size < 4 or size > MAX_FRAME:
        raise ConfigError(
            f"--table-size must lie in [4, {MAX_FRAME}], got {size}"
        )
    rng = np.random.default_rng(args.seed)
    records = list(_CANONICAL_N3)
    if args.omit_preimage:
        records.remove((0, 0, 0))
    while len(records) < size:
        # Filler coordinates start at 2 so no filler record collides
        # with y = (0,0,0) or its unit-vector preimages.
        records.append(tuple(int(v) for v in rng.integers(2, 10, size=3)))
    table = Table(("v1", "v2", "v3"), tuple(records))
    samples = []
    for row in table.records:
        y, alpha, beta = noise_mask_n3_random(row, rng)
        samples.append(
            {"x": list(row), "alpha": alpha, "beta": beta, "y": list(y)}
        )
    y_row = (0, 0, 0)
    scenario = n3_scenario(y_row, table)
    mass = n3_reident_belief(y_row, table)
    prop_p = n3_proposition_probability(y_row, table)
    posterior = n3_masking_posterior(y_row, table)
    pig = pignistic(mass)
    labels = table.record_labels
    argmax_index = int(np.argmax(pig.p))
    argmax = labels[argmax_index]
    verdict = is_compatible(belief_from_mass(mass), prop_p)
    report = {
        "seed": args.seed,
        "table": {
            "attributes": list(table.attributes),
            "records": [list(r) for r in table.records],
        },
        "noise_samples": samples,
        "analysis": {
            "y": list(y_row),
            "x0": labels[scenario.x0_index],
            "a": [labels[i] for i in scenario.a_indices],
            "k": scenario.k,
            "proposition_probability": probability_to_dict(prop_p.dist),
            "masking_posterior": probability_to_dict(posterior),
            "belief": mass_to_dict(mass),
            "pignistic": probability_to_dict(pig),
            "argmax": argmax,
            "argmax_in_a": argmax_index in scenario.a_indices,
            "compatible_with_proposition": bool(verdict),
            "alpha_reveal": {
                "alpha_0": (
                    "with alpha revealed as 0 the original record is "
                    "y itself, so x0 is the only candidate"
                ),
                "alpha_1": (
                    "with alpha revealed as 1 the original record lies "
                    "in A, so x0 - the pignistic argmax - is impossible"
                ),
            },
        },
    }
    text = dump_json(report, args.output)
    _emit(text, args.output)
    return 0


def cmd_validate(args) -> int:
    frame, values = set_function_from_dict(load_json(args.file))
    if args.kind == "mass":
        report = validate_mass(frame, values)
    else:
        order = 1
        if args.deep:
            if frame.size <= 7:
                order = 3
            elif frame.size <= 10:
                order = 2
            else:
                raise ConfigError(
                    "--deep cross-checks need a frame of size <= 10"
                )
        report = validate_belief(frame, values, superadditivity_order=order)
    print(report.describe())
    if args.output:
        dump_json(
            {
                "subject": report.subject,
                "valid": report.valid,
                "problems": list(report.problems),
            },
            args.output,
        )
    return 0 if report.valid else 2


class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit with code 1 per our contract."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="reidrisk",
        description=(
            "Belief-function analysis of re-identification risk for "
            "masked microdata."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    mask = sub.add_parser("mask", help="generalize a table to CSV")
    mask.add_argument("--config", required=True)
    mask.add_argument("--output")
    mask.set_defaults(func=cmd_mask)

    risk = sub.add_parser("risk", help="per-record risk report as JSON")
    risk.add_argument("--config", required=True)
    risk.add_argument("--output")
    risk.add_argument("--threads", type=int)
    risk.set_defaults(func=cmd_risk)

    combine = sub.add_parser(
        "combine", help="fold mass files with a checked combination rule"
    )
    combine.add_argument("masses", nargs="+", metavar="MASS_FILE")
    combine.add_argument("--true", required=True,
                         help="true-probability JSON file")
    combine.add_argument("--rule", choices=sorted(RULES),
                         default="conjunctive")
    combine.add_argument("--output")
    combine.set_defaults(func=cmd_combine)

    demo = sub.add_parser(
        "demo-n3", help="unit-noise masking demo on triples of naturals"
    )
    demo.add_argument("--seed", type=int, default=0)
    demo.add_argument("--table-size", type=int, default=8)
    demo.add_argument("--omit-preimage", action="store_true",
                      help="drop the exact preimage to show the error path")
    demo.add_argument("--output")
    demo.set_defaults(func=cmd_demo_n3)

    validate = sub.add_parser(
        "validate", help="audit a serialized mass or belief file"
    )
    validate.add_argument("file")
    validate.add_argument("--kind", choices=("mass", "belief"),
                          default="mass")
    validate.add_argument("--deep", action="store_true",
                          help="inclusion-exclusion cross-checks (belief)")
    validate.add_argument("--output")
    validate.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"reidrisk: error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
