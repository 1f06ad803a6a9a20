"""Command-line front end.

Subcommands: classify-psi (does a packet contain a lowest weight module,
and which), classify-lambda (all packets containing a given lowest weight
module), packet (full member dump), tableau (invariants of an explicit
induction datum), verify (the exhaustive sweep).  Output is canonical JSON
(sorted keys, deterministic list orders) or an ASCII rendering of the same
values.  Exit codes: 0 ok, 2 invalid input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cohind import InductionDescriptor, ThetaData, range_class
from .errors import InternalInconsistencyError
from .halfint import HalfInt
from .oracle import SweepConfig, sweep_verify
from .packets import (AParameter, d_zero, inf_char, lowest_weight_of_packet,
                      member, packet, packets_containing)
from .tableaux import AntiTableau, SignedTableau
from .weights import GroupSignature, KWeight, is_unitarizable


class InputError(ValueError):
    pass


def _render_entry(v: HalfInt) -> str:
    return str(v)


def render_pair_ascii(ann: AntiTableau, as_tab: SignedTableau) -> str:
    """One row per line, each box as [<entry><sign>].

    Rows pair the antitableau rows with same-length signed rows; signs
    alternate from each row's first sign.
    """
    lines = []
    shape = ann.shape
    for r, length in enumerate(shape):
        entries = ann.row(r)
        signs = as_tab.row_signs(r)
        if len(signs) != length:
            raise InternalInconsistencyError("shape mismatch in rendering")
        boxes = [f"[{_render_entry(e)}{'+' if s > 0 else '-'}]"
                 for e, s in zip(entries, signs)]
        lines.append("".join(boxes))
    return "\n".join(lines)


def _dump(obj: dict, mode: str, ascii_text: str | None = None) -> None:
    if mode == "json":
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(ascii_text if ascii_text is not None else
              json.dumps(obj, sort_keys=True, indent=2))


def _parse_sig(args: argparse.Namespace) -> GroupSignature:
    try:
        return GroupSignature(args.p, args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_psi(args: argparse.Namespace, sig: GroupSignature) -> AParameter:
    try:
        summands = json.loads(args.psi)
        pairs = [(int(s["t"]), int(s["a"])) for s in summands]
    except (json.JSONDecodeError, TypeError, KeyError, ValueError) as exc:
        raise InputError(f"--psi must be a JSON list of {{t, a}} objects: {exc}")
    for t, a in pairs:
        if a < 1:
            raise InputError(f"summand (t={t}, a={a}): dimension must be positive")
        if (t + a + sig.N) % 2 != 0:
            raise InputError(
                f"summand (t={t}, a={a}) is not good for N={sig.N}: "
                f"t + a + N must be even")
    if sum(a for _, a in pairs) != sig.N:
        raise InputError(f"summand dimensions must sum to N={sig.N}")
    return AParameter.from_summands(sig, pairs)


def _parse_lambda(args: argparse.Namespace, sig: GroupSignature) -> KWeight:
    try:
        lam = tuple(int(x) for x in json.loads(args.lam))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"--lambda must be a JSON integer list: {exc}")
    try:
        w = KWeight(sig, lam)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not is_unitarizable(w):
        raise InputError(f"{list(lam)} is not a unitarizable lowest K-type")
    return w


def cmd_classify_psi(args: argparse.Namespace) -> int:
    sig = _parse_sig(args)
    psi = _parse_psi(args, sig)
    w = lowest_weight_of_packet(psi)
    dz = d_zero(psi)
    m = member(psi, dz.d0)
    member_obj = m.to_json()
    member_obj["d0"] = [list(b) for b in dz.d0.blocks]
    obj = {
        "psi": psi.to_json(),
        "inf_char": inf_char(psi).to_json(),
        "contains": w is not None,
        "lowest_k_type": list(w.lam) if w is not None else None,
        "member": member_obj,
    }
    lines = [f"packet of {psi}",
             f"contains a unitary lowest weight representation: {obj['contains']}"]
    if w is not None:
        lines.append(f"lowest K-type: {list(w.lam)}")
    if m.nonzero:
        lines.append("holomorphic member invariants:")
        lines.append(render_pair_ascii(*m.invariants))
    else:
        lines.append("holomorphic member vanishes")
    _dump(obj, args.output, "\n".join(lines))
    return 0


def cmd_classify_lambda(args: argparse.Namespace) -> int:
    sig = _parse_sig(args)
    w = _parse_lambda(args, sig)
    psis = packets_containing(w)
    obj = {"lambda": list(w.lam), "p": sig.p, "q": sig.q,
           "packets": [psi.to_json() for psi in psis]}
    lines = [f"lambda = {list(w.lam)} on U({sig.p},{sig.q})"]
    lines += [f"  {psi}" for psi in psis] or ["  (no packet contains it)"]
    _dump(obj, args.output, "\n".join(lines))
    return 0


def cmd_packet(args: argparse.Namespace) -> int:
    sig = _parse_sig(args)
    psi = _parse_psi(args, sig)
    members = packet(psi)
    obj = {"psi": psi.to_json(),
           "inf_char": inf_char(psi).to_json(),
           "members": [m.to_json() for m in members]}
    lines = [f"packet of {psi}: {len(members)} members"]
    for m in members:
        tag = "nonzero" if m.nonzero else "zero"
        lines.append(f"d = {[list(b) for b in m.d.blocks]}  epsilon = "
                     f"{list(m.epsilon)}  ({tag})")
        if m.nonzero:
            lines.append(render_pair_ascii(*m.invariants))
    _dump(obj, args.output, "\n".join(lines))
    return 0


def cmd_tableau(args: argparse.Namespace) -> int:
    sig = _parse_sig(args)
    try:
        blocks = tuple((int(b[0]), int(b[1])) for b in json.loads(args.blocks))
        values = tuple(int(v) for v in json.loads(args.values))
    except (json.JSONDecodeError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"bad --blocks/--values: {exc}")
    try:
        desc = InductionDescriptor(ThetaData(sig, blocks), values)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not range_class(desc).mediocre:
        raise InputError("datum is outside the mediocre range")
    from .cohind import tableau_pair
    out = tableau_pair(desc)
    obj = {"descriptor": desc.to_json(), "zero": out.is_zero}
    if out.is_zero:
        text = "formal zero tableau"
    else:
        obj["ann"] = out.ann.to_json()
        obj["as"] = out.as_tab.to_json()
        obj["stack"] = out.stack.to_json()
        text = render_pair_ascii(out.ann, out.as_tab)
    _dump(obj, args.output, text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = SweepConfig(args.max_n, args.window,
                      HalfInt.whole(args.char_window) if args.char_window is not None
                      else HalfInt.whole(args.window + 1))
    report = sweep_verify(cfg, jobs=args.jobs)
    print(report.dumps())
    return 0 if report.ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="upq-packets",
        description="Arthur packets of U(p,q) and unitary lowest weight "
                    "representations")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--output", choices=("json", "ascii"), default="json")

    sp = sub.add_parser("classify-psi", help="lowest weight content of a packet")
    add_common(sp)
    sp.add_argument("--psi", required=True,
                    help='JSON list of summands, e.g. [{"t":0,"a":2}]')
    sp.set_defaults(func=cmd_classify_psi)

    sp = sub.add_parser("classify-lambda", help="packets containing a lowest "
                                                "weight representation")
    add_common(sp)
    sp.add_argument("--lambda", dest="lam", required=True,
                    help="JSON integer list, e.g. [1,-1]")
    sp.set_defaults(func=cmd_classify_lambda)

    sp = sub.add_parser("packet", help="dump every member of a packet")
    add_common(sp)
    sp.add_argument("--psi", required=True)
    sp.set_defaults(func=cmd_packet)

    sp = sub.add_parser("tableau", help="invariants of an explicit induction")
    add_common(sp)
    sp.add_argument("--blocks", required=True,
                    help="JSON list of [p_i, q_i] pairs")
    sp.add_argument("--values", required=True, help="JSON integer list")
    sp.set_defaults(func=cmd_tableau)

    sp = sub.add_parser("verify", help="run the verification sweep")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--window", type=int, required=True,
                    help="bound on |lambda_i| for swept weights")
    sp.add_argument("--char-window", type=int, default=None,
                    help="bound on |chi| entries (default: window + 1)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": "invalid-input", "message": str(exc)},
                         sort_keys=True), file=sys.stderr)
        return 2
    except InternalInconsistencyError as exc:
        print(json.dumps({"error": "internal-inconsistency", "message": str(exc)},
                         sort_keys=True), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
