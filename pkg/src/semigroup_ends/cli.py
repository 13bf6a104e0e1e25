"""Command-line front end.

Usage: ``semigroup-ends <command> [options]`` (or ``python -m semigroup_ends``).

Every command except ``verify`` needs a semigroup, given either as
``--case NAME`` (a catalog case) or ``--spec DOC`` where ``DOC`` is a path
to a JSON file or an inline JSON object.  Spec documents select a variant
with ``"kind"``; all kinds accept an optional ``"names"`` list of generator
names.

``commutative_monoid``
    ``{"k": 2, "generators": [[1,0],[0,1]], "monoid": true}``; for ``k = 1``
    generators and elements are plain integers.
``grid_flag``
    ``{"k": 2, "generators": [[1,0,1],[0,0,0]], "monoid": false}``; the last
    coordinate is a 0/1 flag that multiplies, the others add.
``presented``
    ``{"alphabet": ["a","b"], "rules": [["aba","b"]], "monoid": true}``; every
    rule must be shortlex-reducing and the system is trusted to be complete.
    Optional ``"generators"`` lists words to use instead of the letters.
``rees_matrix``
    ``{"group": <spec>, "n": 2, "m": 1, "P": [[0, 0]], "X": [0, 1, -1]}``;
    ``P`` is ``m`` rows of ``n`` group elements.  Give ``"generators"`` as
    ``[i, g, lam]`` triples instead of ``X`` to choose them directly.
``product``
    ``{"left": <spec>, "right": <spec>, "generators": [[x, y], ...]}``.
``dual``
    ``{"base": <spec>}``: same elements, reversed multiplication.
``finite_table``
    ``{"table": [[...], ...], "generators": [0, 1], "monoid": false}``.

Words are strings of generator names, separated by ``.`` when some name
is longer than one character.  Rays are written
``base=<word>;prefix=<word>;period=<word>;kind=ray|antiray``.

A subsemigroup (``--sub``) is a JSON object: ``{"all": true}``,
``{"complement": ["<element>", ...]}`` or
``{"coordinate": i, "values": [...]}`` / ``{"coordinate": i, "not_values": [...]}``.

Exit status: 0 on success, 1 when ``verify`` finds a diff, 2 on usage or
spec errors.  Outputs contain no timings, so equal inputs give equal bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cayley import BallCapExceeded, build_ball, export_graph, strongly_connected_components
from .catalog import CATALOG, RunConfig, case_names, get_case, verify_case
from .ends import (ANTI_RAY, DEFAULT_HORIZONS, DEFAULT_K, RAY, FreeEvidence, _fresh_name, end_compare,
                   end_poset, enumerate_periodic_rays, format_ray, free_pair_witness, parse_ray,
                   translate_ray)
from .green import (SubsemigroupPredicate, green_index_evidence, green_report,
                    rees_index_evidence)
from .models import Semigroup, spec_from_dict

__all__ = ["main", "run_command", "parse_spec", "UsageError"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_spec(document: str) -> Semigroup:
    """Build a semigroup from a JSON spec document; errors name the offending field."""
    try:
        d = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ValueError(f"spec is not valid JSON: {exc}") from None
    return spec_from_dict(d)


def _load_json_arg(text: str):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not a JSON document or readable file: {exc}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _spec(args) -> Semigroup:
    if args.case and args.spec:
        raise UsageError("give only one of --case and --spec")
    if args.case:
        return get_case(args.case).spec()
    if args.spec:
        return spec_from_dict(_load_json_arg(args.spec))
    raise UsageError("this command needs --spec or --case")


def _config(args) -> RunConfig:
    return RunConfig(horizons=getattr(args, "horizons", DEFAULT_HORIZONS), k=getattr(args, "k", DEFAULT_K),
                     radii=getattr(args, "radii", (3, 4, 5, 6)), output_format=args.format,
                     output_path=args.output, seed=args.seed)


def _sub(spec, args):
    if args.sub is None:
        raise UsageError("this command needs --sub")
    return SubsemigroupPredicate.from_dict(spec, _load_json_arg(args.sub))


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _table(labels, matrix) -> str:
    width = max(len(v.value) for row in matrix for v in row)
    head = "    " + " ".join(f"{j:>{width}}" for j in range(len(matrix)))
    lines = [f"{i:>2}  {lab}" for i, lab in enumerate(labels)] + ["", head]
    for i, row in enumerate(matrix):
        lines.append(f"{i:>2}  " + " ".join(f"{v.value:>{width}}" for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands; each returns (exit status, output text)


def cmd_ball(args):
    spec = _spec(args)
    ball = build_ball(spec, args.radius, args.cap)
    if args.format in ("json", "dot"):
        return 0, export_graph(ball, args.format)
    lines = [f"radius {ball.radius}: {ball.size} vertices, {len(ball.edges)} edges, "
             f"{len(ball.interior)} interior"]
    lines += [f"  {ball.label(s)} -{spec.names[a]}-> {ball.label(t)}" for s, t, a in ball.edges]
    return 0, "\n".join(lines) + "\n"


def cmd_scc(args):
    spec = _spec(args)
    ball = build_ball(spec, args.radius, args.cap)
    comps = [[ball.label(v) for v in c] for c in strongly_connected_components(ball)]
    if args.format == "json":
        return 0, _dump({"radius": ball.radius, "components": comps})
    lines = [f"{len(comps)} strongly connected components in the radius-{ball.radius} ball"]
    lines += ["  {" + ", ".join(c) + "}" for c in comps]
    return 0, "\n".join(lines) + "\n"


def cmd_green(args):
    spec = _spec(args)
    ball = build_ball(spec, args.radius, args.cap)
    T = _sub(spec, args) if args.sub else None
    doc = green_report(ball, T).to_dict()
    if args.format == "json":
        return 0, _dump(doc)
    lines = [f"radius {doc['radius']}"]
    for rel in ("r", "l", "h"):
        cls, cert = doc[f"{rel}_classes"], doc[f"{rel}_certified"]
        big = [c for c, ok in zip(cls, cert) if ok]
        lines.append(f"{rel.upper()}-classes: {len(cls)} ({len(big)} with several elements)")
        lines += ["  {" + ", ".join(c) + "}" for c in big]
    lines.append("idempotents: " + ", ".join(doc["idempotents"]))
    lines.append(f"regular elements: {len(doc['regular'])}")
    return 0, "\n".join(lines) + "\n"


def cmd_rees_index(args):
    spec = _spec(args)
    ev = rees_index_evidence(spec, _sub(spec, args), args.radii)
    doc = {"radii": list(ev.radii), "complement_sizes": list(ev.counts), "stable": ev.stable, "index": ev.index}
    if args.format == "json":
        return 0, _dump(doc)
    return 0, (f"complement sizes {list(ev.counts)} at radii {list(ev.radii)}\n"
               f"Rees index: {ev.verdict}\n")


def cmd_green_index(args):
    spec = _spec(args)
    ev = green_index_evidence(spec, _sub(spec, args), args.radii)
    doc = {"radii": list(ev.radii), "h_counts": list(ev.h_counts), "r_counts": list(ev.r_counts),
           "stable": ev.stable, "count": ev.count}
    if args.format == "json":
        return 0, _dump(doc)
    return 0, (f"complement H^T-classes {list(ev.h_counts)} (R^T {list(ev.r_counts)}) at radii {list(ev.radii)}\n"
               f"H^T-classes in the complement: {ev.verdict}\n")


def cmd_rays(args):
    spec = _spec(args)
    kind = ANTI_RAY if args.kind == "antiray" else RAY
    rays = enumerate_periodic_rays(spec, args.max_period, args.horizon, kind, args.base_bound)
    lits = [format_ray(spec, r) for r in rays]
    if args.format == "json":
        return 0, _dump({"rays": lits})
    return 0, "".join(line + "\n" for line in lits)


def _parse_rays(spec, texts):
    return [parse_ray(spec, t) for t in texts]


def _evidence_doc(spec, ev):
    def direction(d):
        return {"counts": list(d.counts), "horizons": list(d.horizons), "status": d.status,
                "separator": [spec.format(x) for x in d.separator] if d.separator is not None else None}
    return {"verdict": ev.verdict.value, "forward": direction(ev.forward), "backward": direction(ev.backward)}


def cmd_compare(args):
    spec = _spec(args)
    r1, r2 = _parse_rays(spec, [args.first, args.second])
    cfg = _config(args)
    ev = end_compare(spec, r1, r2, cfg.horizons, cfg.k)
    doc = _evidence_doc(spec, ev)
    if args.format == "json":
        return 0, _dump(doc)
    lines = [f"verdict: {doc['verdict']}"]
    for name in ("forward", "backward"):
        d = doc[name]
        sep = "" if d["separator"] is None else " separator {" + ", ".join(d["separator"]) + "}"
        lines.append(f"{name}: {d['status']} counts {d['counts']} at horizons {d['horizons']}{sep}")
    return 0, "\n".join(lines) + "\n"


def cmd_poset(args):
    spec = _spec(args)
    texts = list(args.rays)
    if args.rays_file:
        with open(args.rays_file, encoding="utf-8") as fh:
            texts += [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if args.enumerate:
        texts += [format_ray(spec, r) for r in enumerate_periodic_rays(spec, args.enumerate, 16)]
    if not texts:
        raise UsageError("poset needs rays (positional, --rays-file or --enumerate)")
    cfg = _config(args)
    rep = end_poset(spec, _parse_rays(spec, texts), cfg.horizons, cfg.k)
    s = rep.summary
    doc = {
        "rays": [format_ray(spec, r) for r in rep.rays],
        "matrix": [[v.value for v in row] for row in rep.matrix],
        "classes": s.classes,
        "kinds": s.kinds,
        "below": [list(p) for p in s.below],
        "hasse": [list(p) for p in s.hasse],
        "unknown": [list(p) for p in s.unknown],
        "width": s.width,
        "height": s.height,
        "shape": s.shape,
        "consistent": s.consistent,
    }
    if args.format == "json":
        return 0, _dump(doc)
    out = _table(doc["rays"], rep.matrix)
    out += (f"\n{len(s.classes)} classes, shape {s.shape}, width {s.width}, height {s.height}, "
            f"{len(s.unknown)} unknown pairs\n")
    out += "".join(f"  class {c}: rays {cl} ({s.kinds[c]})\n" for c, cl in enumerate(s.classes))
    out += "".join(f"  class {lo} < class {hi}\n" for lo, hi in s.hasse)
    return 0, out


def cmd_translate(args):
    spec = _spec(args)
    s = spec.parse(args.extra)
    tr = translate_ray(spec, s, _ext_ray(spec, s, args.ray), args.horizon, args.max_budget)
    doc = {
        "ray": format_ray(spec, tr.ray) if tr.ray is not None else None,
        "vertices": [spec.format(v) for v in tr.vertices],
        "labels": spec.alphabet.format(tr.labels),
        "budget": tr.budget,
        "replaced_segments": tr.replaced,
        "shared_vertices": len(tr.shared),
    }
    if args.format == "json":
        return 0, _dump(doc)
    return 0, (f"periodic form: {doc['ray'] or 'none found'}\n"
               f"replacement budget {tr.budget}, {tr.replaced} segments replaced, "
               f"{len(tr.shared)} vertices shared with the original ray\n")


def _ext_ray(spec, s, text):
    name = _fresh_name(spec)
    ext = spec.with_generators(list(spec.generators) + [s], list(spec.names) + [name])
    return parse_ray(ext, text)


def cmd_free_pair(args):
    spec = _spec(args)
    s, t = spec.parse(args.s), spec.parse(args.t)
    res = _free_pair(spec, s, t, args.depth)
    if args.format == "json":
        return 0, _dump(res)
    if res["intersect"]:
        return 0, f"s*{res['u']} = t*{res['v']} = {res['product']}: the right ideals meet\n"
    verdict = "distinct" if res["distinct"] else f"collision {res['collision']}"
    return 0, f"no common right multiple within depth {args.depth}; {res['words_checked']} words in s,t: {verdict}\n"


def _free_pair(spec, s, t, depth):
    w = free_pair_witness(spec, s, t, depth)
    if isinstance(w, FreeEvidence):
        col = None
        if w.collision is not None:
            col = ["".join("st"[c] for c in word) for word in w.collision]
        return {"intersect": False, "depth": depth, "words_checked": w.words_checked,
                "distinct": w.distinct, "collision": col}
    return {"intersect": True, "u": spec.format(w.u), "v": spec.format(w.v), "product": spec.format(w.product)}


def cmd_verify(args):
    names = case_names() if args.target == "all" else [args.target]
    for n in names:
        get_case(n)
    cfg = _config(args)
    reports = [verify_case(CATALOG[n], cfg) for n in names]
    ok = all(r.passed for r in reports)
    if args.format == "json":
        out = _dump({"passed": ok, "cases": [r.to_dict() for r in reports]})
    else:
        out = "".join(line + "\n" for r in reports for line in r.lines())
        out += f"{sum(r.passed for r in reports)}/{len(reports)} cases passed\n"
    return (0 if ok else 1), out


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--spec", help="spec document: JSON file path or inline JSON")
    common.add_argument("--case", choices=case_names(), help="use a catalog case's semigroup")
    common.add_argument("--format", default="text", choices=("text", "json", "dot"))
    common.add_argument("--output", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--cap", type=int, default=None, help="ball size cap")

    compare_opts = _Parser(add_help=False)
    compare_opts.add_argument("--horizons", type=_int_list, default=DEFAULT_HORIZONS)
    compare_opts.add_argument("--k", type=int, default=DEFAULT_K)

    radii_opts = _Parser(add_help=False)
    radii_opts.add_argument("--radii", type=_int_list, default=(3, 4, 5, 6))
    radii_opts.add_argument("--sub", help="subsemigroup JSON (file or inline)")

    p = _Parser(prog="semigroup-ends", description="Ends of directed Cayley graphs of semigroups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("ball", parents=[common], help="build and export a Cayley ball")
    c.add_argument("--radius", type=int, required=True)
    c.set_defaults(func=cmd_ball)
    c = sub.add_parser("scc", parents=[common], help="strongly connected components of a ball")
    c.add_argument("--radius", type=int, required=True)
    c.set_defaults(func=cmd_scc)
    c = sub.add_parser("green", parents=[common], help="Green's relations in a ball")
    c.add_argument("--radius", type=int, required=True)
    c.add_argument("--sub", help="subsemigroup JSON for relative classes")
    c.set_defaults(func=cmd_green)
    c = sub.add_parser("rees-index", parents=[common, radii_opts], help="Rees index evidence")
    c.set_defaults(func=cmd_rees_index)
    c = sub.add_parser("green-index", parents=[common, radii_opts], help="Green index evidence")
    c.set_defaults(func=cmd_green_index)
    c = sub.add_parser("rays", parents=[common], help="enumerate eventually periodic rays")
    c.add_argument("--max-period", type=int, default=2)
    c.add_argument("--horizon", type=int, default=16)
    c.add_argument("--base-bound", type=int, default=2)
    c.add_argument("--kind", choices=("ray", "antiray"), default="ray")
    c.set_defaults(func=cmd_rays)
    c = sub.add_parser("compare", parents=[common, compare_opts], help="compare two rays")
    c.add_argument("first")
    c.add_argument("second")
    c.set_defaults(func=cmd_compare)
    c = sub.add_parser("poset", parents=[common, compare_opts], help="end poset of sampled rays")
    c.add_argument("rays", nargs="*")
    c.add_argument("--rays-file")
    c.add_argument("--enumerate", type=int, metavar="MAX_PERIOD")
    c.set_defaults(func=cmd_poset)
    c = sub.add_parser("translate", parents=[common], help="remove an extra generator from a ray")
    c.add_argument("--extra", required=True, help="the extra generator, as an element")
    c.add_argument("--ray", required=True, help="ray literal; the extra generator is named by the first free "
                                                "letter among s, t, u, v, w")
    c.add_argument("--horizon", type=int, default=64)
    c.add_argument("--max-budget", type=int, default=12)
    c.set_defaults(func=cmd_translate)
    c = sub.add_parser("free-pair", parents=[common], help="common right multiples or free-pair evidence")
    c.add_argument("--s", required=True)
    c.add_argument("--t", required=True)
    c.add_argument("--depth", type=int, default=6)
    c.set_defaults(func=cmd_free_pair)
    c = sub.add_parser("verify", parents=[common, compare_opts, radii_opts], help="check catalog cases")
    c.add_argument("target", choices=case_names() + ["all"])
    c.set_defaults(func=cmd_verify)
    return p


def run_command(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
        status, out = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except (ValueError, KeyError, BallCapExceeded, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
