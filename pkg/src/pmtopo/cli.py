"""Command-line front end.

Every command builds one JSON-able report; ``--format text`` renders the same
structure as indented ``key: value`` lines.  Exit status is 0 on success, 2 on
an honest Unknown or Failure verdict, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .complex import SimplicialComplex
from .corpus import GENERATORS, corpus_generate
from .errors import ParseError, TopologyError
from .homology import DEFAULT_CAP, HomologyProfile, reduced_homology
from .mac import UNKNOWN, golod_status, mac_homology, rz_homology, skeleton_mac_homology
from .pairs import PairClass
from .pseudo import classify

EXIT_OK, EXIT_ERROR, EXIT_VERDICT = 0, 1, 2


# input documents ------------------------------------------------------------------------------

def _int_token(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line, col) from None


def _parse_text(text: str) -> tuple[int, list[list[int]]]:
    m = None
    facets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks, col = [], 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            toks.append((tok, col))
            col += len(tok) - 1
        if m is None:
            if len(toks) != 1:
                raise ParseError("first line must hold the vertex count m alone", lineno, toks[1][1])
            m = _int_token(toks[0][0], lineno, toks[0][1])
            if m < 1:
                raise ParseError(f"vertex count must be positive, got {m}", lineno, toks[0][1])
            continue
        face = []
        for tok, c in toks:
            v = _int_token(tok, lineno, c)
            if not 1 <= v <= m:
                raise ParseError(f"vertex {v} out of range 1..{m}", lineno, c)
            face.append(v)
        facets.append(face)
    if m is None:
        raise ParseError("empty document", 1, 1)
    return m, facets


def _parse_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", 1, 1)
    m = doc.get("m")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ParseError(f"'m' must be a positive integer, got {m!r}")
    facets = doc.get("facets")
    if not isinstance(facets, list):
        raise ParseError("'facets' must be a list of vertex lists")
    for k, f in enumerate(facets, 1):
        if not isinstance(f, list) or not f:
            raise ParseError(f"facet {k} must be a non-empty list")
        for v in f:
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= m:
                raise ParseError(f"vertex {v!r} in facet {k} out of range 1..{m}")
    return doc


def parse_complex(text: str) -> tuple[SimplicialComplex, PairClass, str | None]:
    """Parse a complex document (JSON object, or "m" then one facet per line)."""
    if text.lstrip().startswith("{"):
        doc = _parse_json(text)
        K = SimplicialComplex.from_facets(doc["m"], doc["facets"])
        try:
            pairs = PairClass.from_json(doc.get("pairs"))
            pairs.check_size(K.m)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad pairs block: {exc}") from None
        return K, pairs, doc.get("name")
    m, facets = _parse_text(text)
    return SimplicialComplex.from_facets(m, facets), PairClass.moment_angle(), None


def canonical_document(K: SimplicialComplex, pairs: PairClass | None = None, name: str | None = None) -> dict:
    doc: dict = K.to_document()
    if name:
        doc["name"] = name
    if pairs is not None and pairs.kind != PairClass().kind:
        doc["pairs"] = pairs.to_json()
    return doc


def load_input(source: str) -> tuple[SimplicialComplex, PairClass, str | None]:
    """A path, ``-`` for stdin, or ``corpus:NAME[:p1[:p2]]``."""
    if source.startswith("corpus:"):
        name, *params = source[len("corpus:"):].split(":")
        try:
            ints = [int(p) for p in params]
        except ValueError:
            raise ParseError(f"corpus parameters must be integers: {source!r}") from None
        label = name + "".join(f"_{p}" for p in ints)
        return corpus_generate(name, *ints), PairClass.moment_angle(), label
    text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    return parse_complex(text)


# commands -------------------------------------------------------------------------------------

def _facet_arg(s: str) -> list[int]:
    try:
        return [int(t) for t in s.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"facet must be integers, got {s!r}") from None


def cmd_classify(K, pairs, args):
    from .complex import neighbourliness
    out = classify(K).to_json()
    out["neighbourliness"] = neighbourliness(K).k
    return out, EXIT_OK


def cmd_homology(K, pairs, args):
    P = reduced_homology(K)
    return {"reduced_homology": P.to_json(), "summary": P.describe()}, EXIT_OK


def cmd_mac(K, pairs, args):
    return mac_homology(K, cap=args.cap).to_json(), EXIT_OK


def cmd_rz(K, pairs, args):
    return rz_homology(K, cap=args.cap).to_json(), EXIT_OK


def cmd_skeleton_mac(K, pairs, args):
    return skeleton_mac_homology(K, cap=args.cap).to_json(), EXIT_OK


def cmd_golod(K, pairs, args):
    g = golod_status(K, cap=args.cap)
    return g.to_json(), EXIT_VERDICT if g.verdict == UNKNOWN else EXIT_OK


def _decomposition_out(d, cap):
    from .decomp.expr import expr_homology
    out = d.to_json()
    out["expression_homology"] = expr_homology(d.expr, cap).to_json()
    return out


def cmd_decompose(K, pairs, args):
    from .decomp.splittings import facet_removal_decomposition
    if not args.facet:
        raise ParseError("decompose needs --facet")
    return _decomposition_out(facet_removal_decomposition(K, args.facet, pairs), args.cap), EXIT_OK


def cmd_skeleton_decompose(K, pairs, args):
    from .decomp.splittings import skeleton_decomposition
    return _decomposition_out(skeleton_decomposition(K, pairs), args.cap), EXIT_OK


def cmd_loops(K, pairs, args):
    from .decomp.reports import loop_report
    return loop_report(K, args.cutoff, cap=args.cap), EXIT_OK


def cmd_prove_p(K, pairs, args):
    from .decomp.prover import membership_report, p_membership
    cert = p_membership(K, pairs, cap=args.cap)
    return membership_report(cert), EXIT_OK if cert.succeeded else EXIT_VERDICT


def cmd_quasitoric(K, pairs, args):
    from .decomp.reports import quasitoric_report
    if args.n is None:
        raise ParseError("quasitoric needs --n")
    rep = quasitoric_report(K, args.n, args.cutoff, cap=args.cap)
    return rep, EXIT_VERDICT if rep.get("p_verdict") == "Failure" else EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "homology": cmd_homology,
    "mac": cmd_mac,
    "rz": cmd_rz,
    "skeleton-mac": cmd_skeleton_mac,
    "golod": cmd_golod,
    "decompose": cmd_decompose,
    "skeleton-decompose": cmd_skeleton_decompose,
    "loops": cmd_loops,
    "prove-p": cmd_prove_p,
    "quasitoric": cmd_quasitoric,
}


# rendering ------------------------------------------------------------------------------------

def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _render(obj, indent: int, lines: list[str]) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                _render(v, indent + 1, lines)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                _render(v, indent + 1, lines)
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _scalar(obj))


_GROUP_KEYS = {"degree", "rank", "torsion"}


def _is_homology(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(x, dict) and set(x) == _GROUP_KEYS for x in v)


def _flat(v) -> bool:
    return _is_homology(v) or isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if _is_homology(v):
        return HomologyProfile.from_json(v).describe()
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return _scalar(v)


def render_text(report: dict) -> str:
    lines: list[str] = []
    _render(report, 0, lines)
    return "\n".join(lines)


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


# argument parsing -----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


COMMAND_HELP = {
    "classify": "pseudomanifold structure, dual graph, surface type, neighbourliness",
    "homology": "reduced integral homology of K",
    "mac": "homology of the moment-angle complex by the full-subcomplex sum",
    "rz": "homology of the real moment-angle complex",
    "skeleton-mac": "moment-angle homology with the I = [m] summand left out",
    "golod": "Golod / minimally non-Golod verdict with its justification",
    "decompose": "wedge splitting after removing the facet given by --facet",
    "skeleton-decompose": "wedge splitting of the codimension-one skeleton product",
    "loops": "loop-space factors of Z_K for a sphere triangulation",
    "prove-p": "search for a certificate that the looped product lies in P",
    "quasitoric": "loop-space report for a quasitoric manifold over K",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="largest m for subset enumeration (cost grows like 2^m)")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    p = _Parser(prog="pmtopo", description="Polyhedral product computations on simplicial complexes.")
    p.add_argument("--version", action="version", version=f"pmtopo {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=COMMAND_HELP[name])
        sp.add_argument("input", help="path, '-' for stdin, or corpus:NAME[:params]")
        if name == "decompose":
            sp.add_argument("--facet", type=_facet_arg, required=True, help='vertices of σ, e.g. "1 2 3"')
        if name in ("loops", "quasitoric"):
            sp.add_argument("--cutoff", type=int, default=None)
        if name == "quasitoric":
            sp.add_argument("--n", type=int, required=True, help="dimension of the polytope")
    cp = sub.add_parser("corpus", parents=[common], help="emit a corpus complex as a document")
    cp.add_argument("name", choices=sorted(GENERATORS))
    cp.add_argument("params", nargs="*", type=int)
    return p


def execute(args: argparse.Namespace) -> tuple[dict | None, int, str]:
    """Returns (report, exit code, error message)."""
    t0 = time.perf_counter()
    try:
        if args.command == "corpus":
            K = corpus_generate(args.name, *args.params)
            label = args.name + "".join(f"_{p}" for p in args.params)
            result, code = canonical_document(K, name=label), EXIT_OK
            inp = {"corpus": args.name, "params": list(args.params)}
        else:
            K, pairs, label = load_input(args.input)
            result, code = COMMANDS[args.command](K, pairs, args)
            inp = canonical_document(K, pairs, label)
    except (TopologyError, ValueError, OSError) as exc:
        return None, EXIT_ERROR, f"{type(exc).__name__}: {exc}"
    report = {
        "command": args.command,
        "input": inp,
        "result": result,
        "engine": {"name": "pmtopo", "version": __version__},
    }
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 6)
    return report, code, ""


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report, code, err = execute(args)
    if report is None:
        print(f"error: {err}", file=sys.stderr)
        return code
    print(render_text(report) if args.format == "text" else render_json(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
