"""Command-line front end: ``semireach <command> ...``."""
from __future__ import annotations

import argparse
import os
import sys

from .decide import decide, format_dfa, parse_dfa, rational_language_dfa
from .instances import InstanceError, parse_instance, serialize_instance
from .oracle import oracle_search, reduction_consistency_check
from .paterson import decode_mpcp_witness, encode_mpcp, parse_mpcp
from .reductions import REDUCTIONS, reduce
from .semiring import SemiringError

EXIT = {"YES": 0, "NO": 1, "UNKNOWN": 2, "UNSUPPORTED": 3}
EX_USAGE, EX_DATAERR = 64, 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InstanceError(f"cannot read {path}: {e.strerror}") from None


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise InstanceError(f"cannot write {path}: {e.strerror}") from None


def _fmt_word(w):
    return " ".join(map(str, w))


def _print_decision(d, show_witness, out):
    line = d.verdict
    if d.verdict == "NO" and not d.certified:
        line += " (heuristic)"
    if d.verdict == "UNKNOWN":
        line += f" bound={d.bound}"
    print(line, file=out)
    if show_witness and d.is_yes:
        print(_fmt_word(d.witness), file=out)
    return EXIT[d.verdict]


def _cmd_decide(a, out, err):
    inst = parse_instance(_read(a.file)).validate()
    d = decide(inst, oracle_fallback=a.oracle_fallback, r1_max_pow=a.r1_max_pow)
    if d.verdict == "UNSUPPORTED":
        print(d.reason, file=err)
    code = _print_decision(d, a.witness, out)
    if a.dfa and d.verdict != "UNSUPPORTED":
        _write(a.dfa, format_dfa(rational_language_dfa(inst)))
    elif a.dfa:
        print("no DFA: " + d.reason, file=err)
    return code


def _cmd_reduce(a, out, err):
    inst = parse_instance(_read(a.file)).validate()
    bundle = reduce(inst, a.to)
    os.makedirs(a.output, exist_ok=True)
    for k, sub in enumerate(bundle.subs):
        _write(os.path.join(a.output, f"sub-{k}.txt"), serialize_instance(sub))
    d = bundle.dims
    manifest = [
        f"kind {bundle.kind}",
        f"sub_count {len(bundle.subs)}",
        f"n_in {d.n_in}",
        f"n_out {d.n_out}",
        f"r_in {d.r_in}",
        f"r_out {d.r_out}",
        f"witness_map {bundle.witness_map}",
        f"semantics {'projective' if a.to == 'projective' else 'exact'}",
        "immediate " + ("none" if bundle.immediate is None else (_fmt_word(bundle.immediate) or "empty")),
    ]
    _write(os.path.join(a.output, "manifest.txt"), "\n".join(manifest) + "\n")
    print(f"{len(bundle.subs)} sub-instance(s) written to {a.output}", file=out)
    return 0


def _cmd_oracle(a, out, err):
    inst = parse_instance(_read(a.file)).validate()
    return _print_decision(oracle_search(inst, a.max_len), a.witness, out)


def _cmd_mpcp(a, out, err):
    m = parse_mpcp(_read(a.file))
    if a.action == "encode":
        if not a.output:
            raise _UsageError("mpcp encode needs -o")
        _write(a.output, serialize_instance(encode_mpcp(m)))
        print(f"encoded {m.r} pair(s) with base {m.b}", file=out)
        return 0
    if a.witness is None:
        raise _UsageError("mpcp decode needs --witness")
    try:
        w = tuple(int(t) for t in a.witness.split())
    except ValueError:
        raise _UsageError(f"bad witness {a.witness!r}") from None
    idx = decode_mpcp_witness(w, m)
    print(_fmt_word((1,) + idx), file=out)
    print(m.pairs[0][0] + "".join(m.pairs[i - 1][0] for i in idx), file=out)
    return 0


def _cmd_check(a, out, err):
    text = _read(a.file)
    first = next((ln.split("#", 1)[0].split() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), [])
    if first == ["mpcp"]:
        m = parse_mpcp(text)
        print(f"OK mpcp alphabet={m.alphabet} base={m.b} pairs={m.r}", file=out)
    elif first == ["dfa"]:
        d = parse_dfa(text)
        print(f"OK dfa states={d.states} letters={d.letters} accepting={len(d.accept)}", file=out)
    else:
        inst = parse_instance(text).validate()
        print(f"OK {inst.kind} semiring={inst.semiring.name} words={inst.words} letters={inst.r} dim={inst.n}",
              file=out)
    return 0


def _cmd_xcheck(a, out, err):
    inst = parse_instance(_read(a.file)).validate()
    rep = reduction_consistency_check(inst, reduce(inst, a.to), a.max_len)
    print(rep.summary(), file=out)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semireach", description="Reachability problems for matrices over semirings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decide", help="decide an instance (separable semirings)")
    d.add_argument("file")
    d.add_argument("--witness", action="store_true", help="print the witness as letter indices")
    d.add_argument("--dfa", metavar="OUT", help="write the DFA of satisfying words")
    d.add_argument("--oracle-fallback", type=int, metavar="L", help="bounded search for unsupported semirings")
    d.add_argument("--r1-max-pow", type=int, metavar="K", help="power enumeration for one zmax/zmin generator")
    d.set_defaults(fn=_cmd_decide)

    r = sub.add_parser("reduce", help="apply a reduction and write the sub-instances")
    r.add_argument("file")
    r.add_argument("--to", required=True, choices=sorted(REDUCTIONS))
    r.add_argument("-o", "--output", required=True, metavar="DIR")
    r.set_defaults(fn=_cmd_reduce)

    o = sub.add_parser("oracle", help="bounded exact search")
    o.add_argument("file")
    o.add_argument("--max-len", type=int, required=True)
    o.add_argument("--witness", action="store_true")
    o.set_defaults(fn=_cmd_oracle)

    m = sub.add_parser("mpcp", help="encode MPCP instances / decode witnesses")
    m.add_argument("action", choices=["encode", "decode"])
    m.add_argument("file")
    m.add_argument("-o", "--output")
    m.add_argument("--witness")
    m.set_defaults(fn=_cmd_mpcp)

    c = sub.add_parser("check", help="validate an instance, MPCP or DFA file")
    c.add_argument("file")
    c.set_defaults(fn=_cmd_check)

    x = sub.add_parser("xcheck", help="cross-check a reduction on an instance")
    x.add_argument("file")
    x.add_argument("--to", required=True, choices=sorted(REDUCTIONS))
    x.add_argument("--max-len", type=int, required=True)
    x.set_defaults(fn=_cmd_xcheck)
    return p


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_len", 0) is not None and getattr(args, "max_len", 0) < 0:
            raise _UsageError("--max-len must be non-negative")
        return args.fn(args, out, err)
    except _UsageError as e:
        print(f"usage error: {e}", file=err)
        return EX_USAGE
    except (InstanceError, SemiringError, ValueError) as e:
        print(f"error: {e}", file=err)
        return EX_DATAERR


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
