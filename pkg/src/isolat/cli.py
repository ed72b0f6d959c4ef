"""Command line interface.

Problem specs are JSON documents:

    {
      "group": {"kind": "SO3"}
               | {"kind": "circle"}
               | {"kind": "finite", "generators": [{"axis": [0,0,1], "angle_deg": 90}, ...]},
      "base_lattice": ["SO2", "SO3"],
      "order": [["SO2", "SO3"]],        // optional, must list every strict pair
      "action": "SO3_on_R3"             // optional, default for the check command
    }

Subcommands: lift, mu, requilibria, check, adjoint, catalog.  Results go to
stdout as JSON (check prints a plain-text report); errors go to stderr as a
single {"error": {code, path, message}} record.  Exit codes: 0 success,
1 usage, 2 invalid input, 3 semantic failure (unclassifiable group, witness
recheck failure, or a check mismatch).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .adjoint import AnnIsotropy, Full3, Plane, Zero, isotropy_on_ann
from .catalog import (
    CIRCLE,
    FULL,
    ICOSA,
    N_CAP,
    OCTA,
    ORTH_CIRCLE,
    TETRA,
    TRIVIAL,
    CircleSub,
    ClassTag,
    ConcreteSubgroup,
    FiniteSub,
    OrthCircleSub,
    canonical_rep,
    cyclic,
    dihedral,
    is_subconjugate,
    parse_tag,
    tag_sort_key,
)
from .errors import IsolatError, SchemaError, ValidationError
from .lift import (
    AMBIENT_CIRCLE,
    AMBIENT_SO3,
    AmbientGroup,
    CircleAmbient,
    FiniteAmbient,
    LiftWitness,
    ambient_class,
    cotangent_lifted_lattice,
    lift_witness_check,
    lifted_lattice,
)
from .momentum import mu_closure, mu_lattice, relative_equilibria_lattice, zero_level_lattice
from .oracle import (
    empirical_base_lattice,
    empirical_lifted_lattice,
    empirical_requilibria_lattice,
    empirical_zero_momentum_lattice,
    make_action,
)
from .poset import IsotropyLattice, build_lattice
from .rotation import Rotation, close_group, rotation_from_json, rotation_to_json, round12

_USAGE = """usage: isolat COMMAND ...

commands:
  lift SPECFILE [--cotangent] [--dot FILE] [--no-witnesses]
  mu SPECFILE --mu VALUE [--closure TAG]
  requilibria SPECFILE [--dot FILE]
  check SPECFILE [--action NAME] [--seed N] [--samples N]
  adjoint TAG
  catalog [--max-n N]

run 'isolat COMMAND --help' for details on one command
"""


@dataclass(frozen=True)
class ProblemSpec:
    ambient: AmbientGroup
    generators: tuple[Rotation, ...]
    base_tags: tuple[ClassTag, ...]
    declared_order: tuple | None
    action: str | None

    def to_json_dict(self) -> dict:
        if isinstance(self.ambient, FiniteAmbient):
            group = {
                "kind": "finite",
                "generators": [rotation_to_json(r) for r in self.generators],
            }
        elif isinstance(self.ambient, CircleAmbient):
            group = {"kind": "circle"}
        else:
            group = {"kind": "SO3"}
        out = {"group": group, "base_lattice": [t.short() for t in self.base_tags]}
        if self.declared_order is not None:
            out["order"] = [[a.short(), b.short()] for a, b in self.declared_order]
        if self.action is not None:
            out["action"] = self.action
        return out


_TOP_KEYS = {"group", "base_lattice", "order", "action"}


def parse_spec(text: str) -> ProblemSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"input is not valid JSON: {e}", "") from None
    if not isinstance(doc, dict):
        raise SchemaError("the top level must be an object", "")
    for key in doc:
        if key not in _TOP_KEYS:
            raise SchemaError(f"unknown field {key!r}", key)

    group = doc.get("group")
    if not isinstance(group, dict):
        raise SchemaError("a 'group' object is required", "group")
    kind = group.get("kind")
    if kind not in ("SO3", "circle", "finite"):
        raise SchemaError("group.kind must be 'SO3', 'circle' or 'finite'", "group.kind")
    generators: tuple[Rotation, ...] = ()
    if kind == "finite":
        raw = group.get("generators")
        if not isinstance(raw, list) or not raw:
            raise SchemaError(
                "a finite group needs a non-empty 'generators' list", "group.generators"
            )
        gens = []
        for i, rec in enumerate(raw):
            try:
                gens.append(rotation_from_json(rec))
            except ValueError as e:
                raise SchemaError(str(e), f"group.generators[{i}]") from None
        generators = tuple(gens)
        ambient: AmbientGroup = FiniteAmbient(close_group(generators))
    elif kind == "circle":
        ambient = AMBIENT_CIRCLE
    else:
        ambient = AMBIENT_SO3
    extra = set(group) - {"kind", "generators"}
    if extra:
        raise SchemaError(f"unknown group field {sorted(extra)[0]!r}", "group")
    if kind != "finite" and "generators" in group:
        raise SchemaError("only finite groups take generators", "group.generators")

    raw_tags = doc.get("base_lattice")
    if not isinstance(raw_tags, list) or not raw_tags:
        raise SchemaError("a non-empty 'base_lattice' list is required", "base_lattice")
    amb = ambient_class(ambient)
    tags: list[ClassTag] = []
    for i, s in enumerate(raw_tags):
        if not isinstance(s, str):
            raise SchemaError("class tags are strings", f"base_lattice[{i}]")
        try:
            t = parse_tag(s)
        except ValueError as e:
            raise ValidationError(str(e), f"base_lattice[{i}]") from None
        if t in tags:
            raise ValidationError(f"duplicate class {t.short()}", f"base_lattice[{i}]")
        if not is_subconjugate(t, amb):
            raise ValidationError(
                f"{t.short()} is not a subgroup class of the ambient {amb.short()}",
                f"base_lattice[{i}]",
            )
        tags.append(t)

    declared = None
    if "order" in doc:
        raw_order = doc["order"]
        if not isinstance(raw_order, list):
            raise SchemaError("'order' must be a list of [low, high] pairs", "order")
        pairs = []
        for i, item in enumerate(raw_order):
            if (
                not isinstance(item, list)
                or len(item) != 2
                or not all(isinstance(s, str) for s in item)
            ):
                raise SchemaError("each order entry is a [low, high] pair", f"order[{i}]")
            try:
                a, b = parse_tag(item[0]), parse_tag(item[1])
            except ValueError as e:
                raise ValidationError(str(e), f"order[{i}]") from None
            for t in (a, b):
                if t not in tags:
                    raise ValidationError(
                        f"{t.short()} does not appear in base_lattice", f"order[{i}]"
                    )
            pairs.append((a, b))
        derived = {
            (a, b)
            for a in tags
            for b in tags
            if a != b and is_subconjugate(a, b)
        }
        if set(pairs) != derived:
            missing = derived - set(pairs)
            bogus = set(pairs) - derived
            if missing:
                a, b = sorted(missing, key=lambda p: (tag_sort_key(p[0]), tag_sort_key(p[1])))[0]
                raise ValidationError(
                    f"declared order is missing the pair {a.short()} < {b.short()}",
                    "order",
                )
            a, b = sorted(bogus, key=lambda p: (tag_sort_key(p[0]), tag_sort_key(p[1])))[0]
            raise ValidationError(
                f"declared pair {a.short()} < {b.short()} does not hold", "order"
            )
        declared = tuple(pairs)

    action = doc.get("action")
    if action is not None:
        if not isinstance(action, str):
            raise SchemaError("'action' must be a string", "action")
        try:
            act = make_action(action)
        except ValueError as e:
            raise ValidationError(str(e), "action") from None
        if ambient_class(act.ambient) != amb:
            raise ValidationError(
                f"action {action} has ambient {ambient_class(act.ambient).short()}, "
                f"the spec group is {amb.short()}",
                "action",
            )

    return ProblemSpec(ambient, generators, tuple(tags), declared, action)


# ---------------------------------------------------------------------------
# Serialization


def subgroup_to_json(S: ConcreteSubgroup) -> dict:
    if isinstance(S, FiniteSub):
        return {
            "type": "finite",
            "order": len(S.group),
            "elements": [rotation_to_json(r) for r in S.group],
        }
    if isinstance(S, CircleSub):
        return {"type": "so2", "axis": [round12(c) for c in S.axis]}
    if isinstance(S, OrthCircleSub):
        return {
            "type": "o2",
            "axis": [round12(c) for c in S.axis],
            "flip_phase_deg": round12(math.degrees(S.flip_phase)),
        }
    return {"type": "so3"}


def lattice_to_json(L: IsotropyLattice) -> dict:
    return {
        "classes": [t.short() for t in L.classes],
        "hasse": [[i, j] for (i, j) in L.hasse],
    }


def lattice_to_dot(L: IsotropyLattice) -> str:
    lines = ["digraph isotropy {", "  rankdir=BT;"]
    for i, t in enumerate(L.classes):
        lines.append(f'  n{i} [label="{t.display()}"];')
    for i, j in L.hasse:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def witness_to_json(w: LiftWitness) -> dict:
    return {
        "class": w.lifted_class.short(),
        "h1": w.h1.short(),
        "h2": w.h2.short(),
        "k": w.k.short(),
        "embedding": subgroup_to_json(w.embedding),
        "k_rep": subgroup_to_json(w.k_rep),
    }


def _subspace_to_json(sub) -> dict:
    if isinstance(sub, Zero):
        return {"type": "zero"}
    if isinstance(sub, Plane):
        return {"type": "plane", "normal": [round12(c) for c in sub.axis]}
    return {"type": "all"}


def adjoint_to_json(t: ClassTag, ai: AnnIsotropy) -> dict:
    return {
        "class": t.short(),
        "subspace": _subspace_to_json(ai.subspace),
        "entries": [
            {"class": e.label.short(), "subgroup": subgroup_to_json(e.representative)}
            for e in ai.classes
        ],
    }


# ---------------------------------------------------------------------------
# Commands


def _read_spec_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ValidationError(f"cannot read spec file: {e}", "specfile") from None


def _write_dot(path: str, L: IsotropyLattice) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(lattice_to_dot(L))
    except OSError as e:
        raise ValidationError(f"cannot write DOT file: {e}", "dot") from None


def _cmd_lift(argv) -> int:
    p = argparse.ArgumentParser(
        prog="isolat lift",
        description="Isotropy lattice of the tangent or cotangent lifted action.",
    )
    p.add_argument("specfile")
    p.add_argument(
        "--cotangent",
        action="store_true",
        help="label the result as the cotangent bundle (the lattice is the same)",
    )
    p.add_argument("--dot", metavar="FILE", help="write a DOT rendering as well")
    p.add_argument(
        "--no-witnesses", action="store_true", help="omit witnesses from the output"
    )
    a = p.parse_args(argv)
    spec = parse_spec(_read_spec_file(a.specfile))
    base = build_lattice(spec.base_tags)
    compute = cotangent_lifted_lattice if a.cotangent else lifted_lattice
    result = compute(spec.ambient, base)
    if not lift_witness_check(spec.ambient, base, result):
        _emit_error("witness-check", "", "internal witness recheck failed")
        return 3
    out = {"bundle": "T*M" if a.cotangent else "TM"}
    out.update(lattice_to_json(result.lifted))
    if not a.no_witnesses:
        out["witnesses"] = [witness_to_json(w) for w in result.witnesses]
    print(json.dumps(out, indent=2))
    if a.dot:
        _write_dot(a.dot, result.lifted)
    return 0


def _parse_mu(raw: str):
    try:
        mu = json.loads(raw)
    except json.JSONDecodeError:
        raise ValidationError(
            "mu must be a JSON number or a list of three numbers", "mu"
        ) from None
    if isinstance(mu, (int, float)) and not isinstance(mu, bool):
        return mu
    if (
        isinstance(mu, list)
        and len(mu) == 3
        and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in mu)
    ):
        return tuple(float(c) for c in mu)
    raise ValidationError("mu must be a JSON number or a list of three numbers", "mu")


def _cmd_mu(argv) -> int:
    p = argparse.ArgumentParser(
        prog="isolat mu",
        description="Isotropy classes on a totally isotropic momentum level set.",
    )
    p.add_argument("specfile")
    p.add_argument("--mu", required=True, help="momentum value, e.g. '0' or '[0,0,0]'")
    p.add_argument(
        "--closure", metavar="TAG", help="also report the level-set closure of TAG"
    )
    a = p.parse_args(argv)
    mu = _parse_mu(a.mu)
    spec = parse_spec(_read_spec_file(a.specfile))
    base = build_lattice(spec.base_tags)
    ML = mu_lattice(spec.ambient, base, mu)
    out = {"mu": mu if isinstance(mu, (int, float)) else list(mu)}
    out.update(lattice_to_json(ML.restricted))
    if a.closure:
        try:
            t = parse_tag(a.closure)
        except ValueError as e:
            raise ValidationError(str(e), "closure") from None
        out["closure"] = {
            "class": t.short(),
            "classes": [x.short() for x in mu_closure(ML, t)],
        }
    print(json.dumps(out, indent=2))
    return 0


def _cmd_requilibria(argv) -> int:
    p = argparse.ArgumentParser(
        prog="isolat requilibria",
        description="Isotropy classes realized by relative equilibria.",
    )
    p.add_argument("specfile")
    p.add_argument("--dot", metavar="FILE", help="write a DOT rendering as well")
    a = p.parse_args(argv)
    spec = parse_spec(_read_spec_file(a.specfile))
    base = build_lattice(spec.base_tags)
    L = relative_equilibria_lattice(spec.ambient, base)
    print(json.dumps(lattice_to_json(L), indent=2))
    if a.dot:
        _write_dot(a.dot, L)
    return 0


def _fmt_tags(tags) -> str:
    return ",".join(t.short() for t in sorted(tags, key=tag_sort_key))


def _cmd_check(argv) -> int:
    p = argparse.ArgumentParser(
        prog="isolat check",
        description="Compare predicted lattices against brute-force sampling of a concrete action.",
    )
    p.add_argument("specfile")
    p.add_argument("--action", help="action name; defaults to the spec's 'action' field")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=4000)
    a = p.parse_args(argv)
    spec = parse_spec(_read_spec_file(a.specfile))
    name = a.action or spec.action
    if name is None:
        raise ValidationError(
            "no action given on the command line or in the spec", "action"
        )
    try:
        action = make_action(name)
    except ValueError as e:
        raise ValidationError(str(e), "action") from None
    if ambient_class(action.ambient) != ambient_class(spec.ambient):
        raise ValidationError(
            f"action {name} has ambient {ambient_class(action.ambient).short()}, "
            f"the spec group is {ambient_class(spec.ambient).short()}",
            "action",
        )
    base = build_lattice(spec.base_tags)
    rows = []
    rows.append(
        ("base", set(base.classes), empirical_base_lattice(action, a.seed, a.samples))
    )
    lifted = lifted_lattice(spec.ambient, base).lifted
    rows.append(
        (
            "lifted",
            set(lifted.classes),
            empirical_lifted_lattice(action, a.seed, a.samples),
        )
    )
    zero = zero_level_lattice(spec.ambient, base)
    rows.append(
        (
            "zero-level",
            set(zero.classes),
            empirical_zero_momentum_lattice(action, a.seed, a.samples),
        )
    )
    if not isinstance(spec.ambient, FiniteAmbient):
        re_l = relative_equilibria_lattice(spec.ambient, base)
        rows.append(
            (
                "requilibria",
                set(re_l.classes),
                empirical_requilibria_lattice(action, a.seed, min(a.samples, 2000)),
            )
        )
    ok = True
    for label, predicted, empirical in rows:
        good = predicted == empirical
        ok = ok and good
        print(
            f"{label:<12} predicted={_fmt_tags(predicted):<24} "
            f"empirical={_fmt_tags(empirical):<24} {'ok' if good else 'MISMATCH'}"
        )
    print("MATCH" if ok else "MISMATCH")
    return 0 if ok else 3


def _cmd_adjoint(argv) -> int:
    p = argparse.ArgumentParser(
        prog="isolat adjoint",
        description="Isotropy classes of a catalog subgroup on the annihilator of its algebra.",
    )
    p.add_argument("tag")
    a = p.parse_args(argv)
    try:
        t = parse_tag(a.tag)
    except ValueError as e:
        raise ValidationError(str(e), "tag") from None
    ai = isotropy_on_ann(canonical_rep(t))
    print(json.dumps(adjoint_to_json(t, ai), indent=2))
    return 0


def _cmd_catalog(argv) -> int:
    p = argparse.ArgumentParser(
        prog="isolat catalog",
        description="Subconjugation table over the catalog classes.",
    )
    p.add_argument(
        "--max-n", type=int, default=6, help="largest cyclic/dihedral index to include"
    )
    a = p.parse_args(argv)
    if a.max_n < 2 or a.max_n > N_CAP:
        raise ValidationError(f"--max-n must lie in 2..{N_CAP}", "max-n")
    tags = [TRIVIAL]
    tags += [cyclic(n) for n in range(2, a.max_n + 1)]
    tags += [dihedral(n) for n in range(2, a.max_n + 1)]
    tags += [TETRA, OCTA, ICOSA, CIRCLE, ORTH_CIRCLE, FULL]
    tags.sort(key=tag_sort_key)
    out = {
        "classes": [t.short() for t in tags],
        "orders": {t.short(): t.min_order() for t in tags},
        "subconjugate": [
            [s.short(), b.short()]
            for s in tags
            for b in tags
            if s != b and is_subconjugate(s, b)
        ],
    }
    print(json.dumps(out, indent=2))
    return 0


# ---------------------------------------------------------------------------
# Dispatch


def _emit_error(code: str, path: str, message: str) -> None:
    rec = {"error": {"code": code, "path": path, "message": message}}
    print(json.dumps(rec, indent=2), file=sys.stderr)


_COMMANDS = {
    "lift": _cmd_lift,
    "mu": _cmd_mu,
    "requilibria": _cmd_requilibria,
    "check": _cmd_check,
    "adjoint": _cmd_adjoint,
    "catalog": _cmd_catalog,
}

# errors that mean the computation itself failed rather than the input
_SEMANTIC_CODES = {"unclassifiable-group"}


def run_command(argv) -> int:
    if not argv:
        print(_USAGE, file=sys.stderr)
        return 1
    if argv[0] in ("-h", "--help"):
        print(_USAGE)
        return 0
    handler = _COMMANDS.get(argv[0])
    if handler is None:
        print(f"unknown command {argv[0]!r}", file=sys.stderr)
        print(_USAGE, file=sys.stderr)
        return 1
    try:
        return handler(argv[1:])
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 0
        return 0 if code == 0 else 2
    except IsolatError as e:
        _emit_error(e.code, e.path, str(e))
        return 3 if e.code in _SEMANTIC_CODES else 2
    except ValueError as e:
        _emit_error("validation", "", str(e))
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
