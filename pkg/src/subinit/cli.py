"""Command-line front end.

One binary, one subcommand per operation.  Everything reads and writes JSON:

* ideal files:      {"labels": ["1","2",...], "generators": ["x1*x2 - x3*x4"]}
* config files:     {"labels": [...], "points": [["0","1/2",...], ...]}
* weight arguments: --w 1,0,5/2  or  --w @weights.json  (a list, or {"entries": [...]})
* tree files:       {"n": 4, "edges": [[1,5,"2"], [2,5,"-1"], ...]}
* matroid files:    {"n": 4, "k": 2, "bases": [[1,3],[1,4],...]}

Exit status: 0 on success, 1 for anything wrong with the input, 2 if an
internal consistency assertion fires (which would be a bug worth reporting).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .bounds import configuration, sandwich
from .configspace import PointConfiguration, format_rational
from .errors import InternalInvariantError, ParseError, SubinitError
from .fixtures import (
    MatroidBases,
    Tree,
    census,
    corank_weight,
    hypersimplex_config,
    pair_labels,
    plucker_ideal,
    random_tree,
    toric_ideal,
    tree_weight,
)
from .groebner import Ideal, initial_ideal
from .polycore import format_polynomial
from .subdivision import regular_subdivision


class _Parser(argparse.ArgumentParser):
    """argparse's default exit code for usage errors is 2; reserve that for
    invariant violations and surface usage problems as ordinary user errors."""

    def error(self, message: str):
        raise ParseError(message)


def _read_json(path: str) -> object:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None


def _load_ideal(path: str) -> Ideal:
    data = _read_json(path)
    if not isinstance(data, dict) or "labels" not in data or "generators" not in data:
        raise ParseError(f"{path}: expected an object with 'labels' and 'generators'")
    labels = [str(x) for x in data["labels"]]
    gens = [str(g) for g in data["generators"]]
    return Ideal.from_strings(gens, labels)


def _load_config(path: str) -> PointConfiguration:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a configuration object")
    return PointConfiguration.from_json_dict(data)


def _parse_weight(spec: str, nvars: int) -> tuple[Fraction, ...]:
    if spec.startswith("@"):
        data = _read_json(spec[1:])
        if isinstance(data, dict):
            data = data.get("entries")
        if not isinstance(data, list):
            raise ParseError(f"{spec[1:]}: expected a list of entries")
        raw = [str(x) for x in data]
    else:
        raw = [part.strip() for part in spec.split(",")]
    try:
        w = tuple(Fraction(x) for x in raw)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight entry in {spec!r}") from None
    if len(w) != nvars:
        raise ParseError(f"weight has {len(w)} entries, expected {nvars}")
    return w


def _ideal_json(ideal: Ideal) -> dict:
    return {
        "labels": list(ideal.labels),
        "generators": [format_polynomial(g, ideal.labels) for g in ideal.generators],
    }


def _weight_json(labels: Sequence[str], w: Sequence[Fraction]) -> dict:
    return {"labels": list(labels), "entries": [format_rational(x) for x in w]}


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _build_parser() -> _Parser:
    top = _Parser(prog="subinit", description=__doc__.split("\n\n")[0])
    top.add_argument("--out", metavar="FILE", help="write JSON here instead of stdout")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, where=sub):
        p = where.add_parser(name, help=help_)
        # SUPPRESS keeps a subcommand without --out from clobbering a value
        # parsed at the top level (subparser defaults overwrite the namespace).
        p.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS,
                       help="write JSON here instead of stdout")
        return p

    def with_ideal_and_w(name: str, help_: str):
        p = add(name, help_)
        p.add_argument("ideal", metavar="IDEAL_FILE")
        p.add_argument("--w", required=True, metavar="CSV|@FILE")
        return p

    p = add("config", "point configuration A(I) of an ideal")
    p.add_argument("ideal", metavar="IDEAL_FILE")

    with_ideal_and_w("initial", "generators of the initial ideal in_w I")
    with_ideal_and_w("bounds", "lower/initial/upper sandwich report")
    with_ideal_and_w("omega", "is the lower bound exact at w?")
    with_ideal_and_w("omega-star", "is the upper bound exact at w?")

    p = add("subdivide", "regular subdivision of a configuration")
    p.add_argument("config", nargs="?", metavar="CONFIG_FILE")
    p.add_argument("--ideal", metavar="IDEAL_FILE", help="use A(I) of this ideal")
    p.add_argument("--w", required=True, metavar="CSV|@FILE")

    p = add("census", "sample weights, classify subdivisions")
    p.add_argument("ideal", metavar="IDEAL_FILE")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--range", type=int, required=True, dest="rng_range")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--nongeneric", action="store_true",
                   help="add a low-range pass that lands on cone boundaries")

    fix = add("fixture", "generate example inputs").add_subparsers(
        dest="fixture", required=True)
    p = add("plucker", "Plücker ideal of Gr(2,n)", fix)
    p.add_argument("--n", type=int, required=True)
    p = add("hypersimplex", "vertex configuration of Δ(k,n)", fix)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = add("toric", "toric ideal of an integer configuration", fix)
    p.add_argument("config", metavar="CONFIG_FILE")
    p = add("tree-weight", "path-sum weight of a phylogenetic tree", fix)
    p.add_argument("tree", nargs="?", metavar="TREE_FILE")
    p.add_argument("--random", type=int, metavar="N", help="random tree on N leaves")
    p.add_argument("--seed", type=int, default=0)
    p = add("corank", "corank weight of a matroid", fix)
    p.add_argument("matroid", metavar="MATROID_FILE")

    return top


def _run(args) -> dict:
    if args.command == "config":
        return configuration(_load_ideal(args.ideal)).to_json_dict()

    if args.command == "initial":
        ideal = _load_ideal(args.ideal)
        return _ideal_json(initial_ideal(ideal, _parse_weight(args.w, ideal.nvars)))

    if args.command == "subdivide":
        if (args.config is None) == (args.ideal is None):
            raise ParseError("give exactly one of CONFIG_FILE or --ideal")
        cfg = (_load_config(args.config) if args.config
               else configuration(_load_ideal(args.ideal)))
        w = _parse_weight(args.w, cfg.npoints)
        return regular_subdivision(cfg, w).to_json_dict()

    if args.command == "bounds":
        ideal = _load_ideal(args.ideal)
        return sandwich(ideal, _parse_weight(args.w, ideal.nvars)).to_json_dict()

    if args.command in ("omega", "omega-star"):
        ideal = _load_ideal(args.ideal)
        report = sandwich(ideal, _parse_weight(args.w, ideal.nvars))
        member = report.lower_exact if args.command == "omega" else report.upper_exact
        return {"member": member, "report": report.to_json_dict()}

    if args.command == "census":
        ideal = _load_ideal(args.ideal)
        result = census(ideal, args.samples, args.rng_range, args.seed,
                        include_nongeneric=args.nongeneric)
        return result.to_json_dict(ideal.labels)

    if args.command == "fixture":
        if args.fixture == "plucker":
            return _ideal_json(plucker_ideal(2, args.n))
        if args.fixture == "hypersimplex":
            return hypersimplex_config(args.k, args.n).to_json_dict()
        if args.fixture == "toric":
            return _ideal_json(toric_ideal(_load_config(args.config)))
        if args.fixture == "tree-weight":
            if (args.tree is None) == (args.random is None):
                raise ParseError("give exactly one of TREE_FILE or --random N")
            if args.tree:
                tree = Tree.from_json_dict(_read_json(args.tree))
            else:
                tree = random_tree(args.random, random.Random(args.seed))
            w = tree_weight(tree, tree.n)
            payload = _weight_json(pair_labels(tree.n), w)
            payload["tree"] = tree.to_json_dict()
            return payload
        if args.fixture == "corank":
            m = MatroidBases.from_json_dict(_read_json(args.matroid))
            labels = [",".join(map(str, b))
                      for b in combinations(range(1, m.n + 1), m.k)]
            return _weight_json(labels, corank_weight(m))

    raise InternalInvariantError(f"unhandled command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        _emit(_run(args), args.out)
        return 0
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except SubinitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
