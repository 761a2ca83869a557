"""Command-line surface: every computation as a scriptable command.

Each subcommand builds a CommandResult with a status (ok, mismatch,
error), a JSON-ready payload, and the list of adopted-assumption
strings relevant to it.  Text output is deterministic; JSON output is
the serialized CommandResult and survives a parse/re-dump round trip
byte for byte.  Exit code 0 means ok, 1 mismatch, 2 error.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import generators, genus, ring, spectral
from .lattice import FPAbelianGroup
from .series import SeriesError, render_text, render_json_dict
from .spectral import DEVIATIONS, UnsupportedDegree


@dataclass
class CommandResult:
    status: str
    payload: dict
    deviations: list = field(default_factory=list)

    def to_json(self):
        return {"status": self.status,
                "payload": self.payload,
                "deviations": list(self.deviations)}


def _guarded(value, what):
    cap = spectral.max_degree_guard()
    if value > cap:
        raise UnsupportedDegree(
            "%s %d exceeds guard %d (set JFL_MAX_DEGREE_GUARD to raise)"
            % (what, value, cap))
    return value


# -- subcommand implementations -----------------------------------------

def cmd_expand(args):
    qmax = _guarded(args.qmax, "qmax")
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    table = generators.generator_table(qmax)
    s = table.series_of(args.gen)
    text = render_text(s)
    payload = {"generator": args.gen, "qmax": qmax,
               "series": render_json_dict(s), "text": text}
    return CommandResult("ok", payload), text


def cmd_verify(args):
    qmax = _guarded(args.qmax, "qmax")
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    checks = {}
    if args.which in ("relation", "all"):
        checks["relation"] = generators.verify_relation(qmax)
    if args.which in ("mf-embed", "all"):
        checks.update(generators.mf_embedding_report(qmax))
    ok = all(checks.values())
    lines = ["%s: %s" % (k, "ok" if v else "mismatch")
             for k, v in checks.items()]
    payload = {"which": args.which, "qmax": qmax, "checks": checks}
    return CommandResult("ok" if ok else "mismatch", payload), "\n".join(lines)


def _parse_chern(text):
    values = {}
    if text:
        for item in text.split(","):
            key, _, raw = item.partition("=")
            if not _:
                raise ValueError("expected key=value in --chern, got %r" % item)
            values[key.strip()] = int(raw)
    return values


def cmd_genus(args):
    data = genus.chern_data(args.dim // 2, **_parse_chern(args.chern))
    element = genus.elliptic_genus(data)
    chi = genus.euler_characteristic(data)
    text = ring.render_element_text(element)
    payload = {"dim": args.dim,
               "chern": genus.chern_to_json(data),
               "element": ring.render_element_json(element),
               "text": text,
               "chi": chi}
    return CommandResult("ok", payload), "%s\nchi = %d" % (text, chi)


def _group_str(rank, torsion):
    return str(FPAbelianGroup(rank, tuple(torsion)))


def cmd_homotopy(args):
    max_degree = _guarded(args.max_degree, "max degree")
    if args.target == "tjf":
        page = spectral.tjf_page(max_degree)
        expected_of = spectral.expected_tjf_group
    else:
        page = spectral.msu_page(max_degree)
        expected_of = lambda n: (
            FPAbelianGroup(*spectral.MSU_EXPECTED_TABLE[n])
            if n in spectral.MSU_EXPECTED_TABLE else None)
    groups = spectral.homotopy_groups(page, max_degree)
    rows = []
    ok = True
    lines = []
    for n in range(max_degree + 1):
        g = groups[n]
        expected = expected_of(n)
        row = {"n": n, "rank": g.rank, "torsion": list(g.torsion)}
        if expected is None:
            row["expected"] = None
            row["match"] = None
            lines.append("n=%-2d  %-12s" % (n, str(g)))
        else:
            match = g == expected
            ok = ok and match
            row["expected"] = spectral.group_to_json(expected)
            row["match"] = match
            lines.append("n=%-2d  %-12s expected %-12s %s"
                         % (n, str(g), str(expected),
                            "ok" if match else "MISMATCH"))
        rows.append(row)
    payload = {"target": args.target, "max_degree": max_degree, "rows": rows}
    return (CommandResult("ok" if ok else "mismatch", payload, list(DEVIATIONS)),
            "\n".join(lines))


def cmd_surjectivity(args):
    max_degree = _guarded(args.max_degree, "max degree")
    report = spectral.surjectivity_check(args.n_param, max_degree)
    if report["status"] == "ok":
        text = ("ok: %d bidegrees match at parameter %d through degree %d"
                % (report["bidegrees_checked"], args.n_param, max_degree))
    else:
        f = report["first_failure"]
        text = ("mismatch at degree %d filtration %d: %s"
                % (f["degree"], f["filtration"], f["reason"]))
    deviations = report.pop("deviations_adopted")
    return CommandResult(report["status"], report, deviations), text


def cmd_image(args):
    degree = _guarded(args.degree, "degree")
    if degree < 0 or degree % 2:
        raise ValueError("degree must be even and nonnegative")
    coker = ring.cokernel(degree)
    reps = [ring.render_element_text(ring.normal_form({mono: 1}))
            for mono in ring.cokernel_representatives(degree)]
    expected_rank = ring.expected_cokernel_rank(degree)
    match = coker.rank == 0 and coker.torsion == (2,) * expected_rank
    payload = {"degree": degree,
               "cokernel": spectral.group_to_json(coker),
               "representatives": reps,
               "expected_torsion_rank": expected_rank,
               "match": match}
    lines = ["degree %d cokernel: %s" % (degree, coker)]
    if reps:
        lines.append("representatives: " + ", ".join(reps))
    lines.append("expected torsion rank %d: %s"
                 % (expected_rank, "ok" if match else "MISMATCH"))
    return CommandResult("ok" if match else "mismatch", payload), "\n".join(lines)


# -- the umbrella suite ---------------------------------------------------

def _suite_anchors():
    table = generators.generator_table(2)
    checks = [
        render_text(table.b4).startswith("y^-1 + 4 + y"),
        render_text(table.a).startswith("-y^(-1/2) + y^(1/2)"),
        table.b2.q_layer(0) == {-2: 1, 0: 10, 2: 1},
        table.b3.q_layer(0) == {-1: 1, 1: 1},
        table.b8.q_layer(0) == {-2: 1, 0: 1, 2: 1},
        table.b2.specialize_z0()[0] == 12,
        table.b3.specialize_z0()[0] == 2,
        (table.b2 * table.b2).q_layer(0)
        == {-4: 1, -2: 20, 0: 102, 2: 20, 4: 1},
    ]
    return all(checks)


def _suite_image():
    for d in range(0, 65, 2):
        coker = ring.cokernel(d)
        if coker.rank or coker.torsion != (2,) * ring.expected_cokernel_rank(d):
            return False
    if not all(ring.in_image(g) for g in ring.IMAGE_GENERATORS):
        return False
    return not ring.in_image(ring.B2) and not ring.in_image(ring.B2 * ring.B8)


def _suite_surjectivity():
    return all(spectral.surjectivity_check(n, 32)["status"] == "ok"
               for n in (-1, 0, 1, 2))


def _suite_genus():
    k3 = genus.chern_data(2, c2=24)
    two_b2 = ring.B2.scale(2)
    if genus.genus_deg4(k3) != two_b2:
        return False
    sextic = genus.chern_data(4, c2sq=1350, c4=2610)
    g8 = genus.genus_deg8(sextic)
    if ring.render_element_text(g8) != "387*b4 + 2*b2^2":
        return False
    series, _ = ring.eval_series(g8, 1)
    if series.specialize_z0()[0] != 2610:
        return False
    if not genus.genus_deg6(genus.chern_data(3, c3=0)).is_zero():
        return False
    prod = genus.product_chern_data(k3, k3)
    if genus.genus_deg8(prod) != two_b2 * two_b2:
        return False
    return all(ring.in_image(v)
               for n in (-1, 0, 1, 2)
               for v in genus.generator_genus_table(n).values())


def cmd_verify_all(args):
    suite = [
        ("series relation through q^8",
         lambda: generators.verify_relation(9)),
        ("generator anchors", _suite_anchors),
        ("modular embeddings through q^8",
         lambda: generators.verify_mf_embedding(9)),
        ("bordism table through degree 16",
         lambda: spectral.check_msu_table()["status"] == "ok"),
        ("homotopy of the target through degree 24",
         lambda: spectral.check_tjf_groups(24)["status"] == "ok"),
        ("image lattice and cokernels through degree 64", _suite_image),
        ("surjectivity at parameters -1, 0, 1, 2", _suite_surjectivity),
        ("genus examples and generator table", _suite_genus),
    ]
    checks = []
    lines = []
    ok = True
    for name, run in suite:
        try:
            passed = bool(run())
        except Exception as exc:  # a broken check is a mismatch, not an abort
            passed = False
            lines.append("%s: error (%s)" % (name, exc))
            checks.append({"name": name, "status": "error"})
            ok = False
            continue
        ok = ok and passed
        status = "ok" if passed else "mismatch"
        checks.append({"name": name, "status": status})
        lines.append("%s: %s" % (name, status))
    lines.append("overall: %s" % ("ok" if ok else "mismatch"))
    payload = {"checks": checks, "overall": "ok" if ok else "mismatch"}
    return (CommandResult("ok" if ok else "mismatch", payload, list(DEVIATIONS)),
            "\n".join(lines))


# -- argument parsing and dispatch ----------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="jfl",
        description="exact weak Jacobi form computations and verifications")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(fn=fn)
        return p

    p = add("expand", cmd_expand, help="print a generator expansion")
    p.add_argument("--gen", required=True, choices=("a", "b2", "b3", "b4", "b8"))
    p.add_argument("--qmax", type=int, required=True,
                   help="number of q-orders to compute")

    p = add("verify", cmd_verify, help="check the ring relation and embeddings")
    p.add_argument("--which", choices=("relation", "mf-embed", "all"),
                   default="all")
    p.add_argument("--qmax", type=int, default=9)

    p = add("genus", cmd_genus, help="genus of Chern data")
    p.add_argument("--dim", type=int, required=True, choices=(4, 6, 8))
    p.add_argument("--chern", default="",
                   help="comma-separated key=value list, e.g. c2sq=1350,c4=2610")

    p = add("homotopy", cmd_homotopy, help="homotopy groups of a page")
    p.add_argument("--target", choices=("tjf", "msu"), required=True)
    p.add_argument("--max-degree", type=int, default=16)

    p = add("surjectivity", cmd_surjectivity,
            help="bidegreewise isomorphism check of the comparison map")
    p.add_argument("--n-param", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=32)

    p = add("image", cmd_image, help="cokernel of the image lattice in a degree")
    p.add_argument("--degree", type=int, required=True)

    add("verify-all", cmd_verify_all, help="run the whole verification suite")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, text = args.fn(args)
    except genus.NonIntegralGenus as exc:
        result = CommandResult("error", {"error": str(exc),
                                         "value": str(exc.value)})
        text = "error: %s" % exc
    except (SeriesError, UnsupportedDegree, genus.UnsupportedDim,
            ring.Inhomogeneous, ValueError) as exc:
        result = CommandResult("error", {"error": str(exc)})
        text = "error: %s" % exc
    if args.format == "json":
        print(json.dumps(result.to_json(), indent=2))
    else:
        print(text)
    return {"ok": 0, "mismatch": 1}.get(result.status, 2)


if __name__ == "__main__":
    sys.exit(main())
