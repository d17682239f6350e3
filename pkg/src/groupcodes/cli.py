"""Command line interface.

Subcommands: analyze, dual, decompose, check, duality-check, oracle.
Exit codes: 0 when the command succeeds and any checked property holds,
1 when a property fails or a verification mismatches, 2 for usage or input
errors.  Reports are byte-stable for fixed input and flags; positions are
printed in both the internal convention (0-based, half-open) and the
classical one (1-based, closed).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .codes import BlockCode, invariant_factors_of_code
from .control import control_profile, order_profile
from .convolutional import (
    ConvolutionalCode,
    dual_convolutional,
    strong_controllability_index,
    verify_window_duality,
    weak_controllability,
    weak_observability,
    window_code,
)
from .duality import dual_block_code
from .observe import check_control_observe_duality, observe_profile
from .oracle import OracleBoundExceeded, brute, oracle_bound
from .specfmt import (
    CodeSpecDocument,
    SpecError,
    document_from_block_code,
    document_from_convolutional,
    emit_spec,
    parse_spec,
)
from .structure import (
    DecompositionError,
    coprime_rectangular,
    cyclic_product_decomposition,
    is_subdirect_product,
    verify_decomposition,
)

PROPERTIES = (
    "weak-controllable",
    "l-controllable",
    "observable",
    "rectangular",
    "subdirect",
)


def _closed_interval(start: int, stop: int) -> str:
    """Render a half-open 0-based window as a 1-based closed interval."""
    return f"[{start + 1},{stop}]"


def _load(path: str) -> CodeSpecDocument:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_spec(handle.read())
    except FileNotFoundError:
        raise SpecError(f"no such file: {path}")


def _analyze_block(code: BlockCode) -> dict:
    ctrl = control_profile(code)
    obs = observe_profile(code)
    order = order_profile(code)
    return {
        "kind": "block",
        "horizon": code.space.horizon,
        "symbols": [list(g.moduli) for g in code.space.symbols],
        "cardinality": code.cardinality,
        "invariant_factors": list(invariant_factors_of_code(code)),
        "control_lengths": list(ctrl.lengths),
        "control_index": ctrl.index,
        "observe_lengths": list(obs.lengths),
        "observe_index": obs.index,
        "order_bounds": list(order.bounds),
        "order_margins": list(order.margins),
        "order_uniform_margin": order.uniform_margin,
    }


def _analyze_convolutional(conv: ConvolutionalCode) -> dict:
    weak = weak_controllability(conv)
    strong = strong_controllability_index(conv)
    windows = {}
    for n in range(1, min(conv.analysis_horizon, 6) + 1):
        windows[str(n)] = window_code(conv, n).cardinality
    return {
        "kind": "convolutional",
        "symbol": list(conv.symbol.moduli),
        "form": conv.form,
        "taps": [[list(step) for step in tap] for tap in conv.taps],
        "memory": conv.memory,
        "analysis_horizon": conv.analysis_horizon,
        "window_orders": windows,
        "weakly_controllable": weak.holds,
        "weak_witness": weak.witness,
        "strong_status": strong.status,
        "strong_index": strong.index,
    }


def _render_analysis(data: dict) -> str:
    lines = ["groupcodes analyze report"]
    if data["kind"] == "block":
        lines += [
            f"kind: block, horizon {data['horizon']} "
            f"(positions 0..{data['horizon'] - 1}, 1-based 1..{data['horizon']})",
            "symbols: " + " ".join("Z/" + "+Z/".join(str(m) for m in s) for s in data["symbols"]),
            f"cardinality: {data['cardinality']}",
            f"invariant factors: {data['invariant_factors']}",
            f"control lengths (gap [k,k+L), 0-based): {data['control_lengths']}",
            f"control index: {data['control_index']}",
            f"observe lengths (window [k,k+L] closed): {data['observe_lengths']}",
            f"observe index: {data['observe_index']}",
            f"order-split bounds n(l), l = 0..N: {data['order_bounds']}",
            f"order-split margins n(l) - l: {data['order_margins']}",
            f"uniform order margin: {data['order_uniform_margin']}",
        ]
    else:
        lines += [
            f"kind: convolutional ({data['form']} form)",
            "symbol: Z/" + "+Z/".join(str(m) for m in data["symbol"]),
            f"taps: {data['taps']}",
            f"memory: {data['memory']}",
            f"analysis horizon: {data['analysis_horizon']}",
            "window orders: "
            + ", ".join(f"n={n}: {v}" for n, v in sorted(data["window_orders"].items(), key=lambda kv: int(kv[0]))),
            f"weakly controllable: {'yes' if data['weakly_controllable'] else 'no'}"
            + (
                f" (witness window {data['weak_witness']})"
                if data["weak_witness"] is not None
                else ""
            ),
            f"strong controllability: {data['strong_status']}"
            + (
                f", index {data['strong_index']}"
                if data["strong_index"] is not None
                else ""
            ),
        ]
    return "\n".join(lines) + "\n"


def _cmd_analyze(args) -> int:
    doc = _load(args.spec)
    data = (
        _analyze_block(doc.to_block_code())
        if doc.kind == "block"
        else _analyze_convolutional(doc.to_convolutional())
    )
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        sys.stdout.write(_render_analysis(data))
    return 0


def _cmd_dual(args) -> int:
    doc = _load(args.spec)
    if doc.kind == "block":
        dual_doc = document_from_block_code(dual_block_code(doc.to_block_code()))
    else:
        dual_doc = document_from_convolutional(dual_convolutional(doc.to_convolutional()))
    if args.format == "json":
        payload = {
            "kind": dual_doc.kind,
            "document": emit_spec(dual_doc),
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        sys.stdout.write(emit_spec(dual_doc))
    return 0


def _cmd_decompose(args) -> int:
    doc = _load(args.spec)
    if doc.kind != "block":
        raise SpecError("decompose expects a block code document", field="kind")
    code = doc.to_block_code()
    try:
        decomposition = cyclic_product_decomposition(code)
    except DecompositionError as exc:
        print(f"decomposition failed: {exc}")
        return 1
    ok, cert = verify_decomposition(code, decomposition)
    data = {
        "generators": [
            {
                "word": list(g.word),
                "window": [g.start, g.stop],
                "window_1based_closed": _closed_interval(g.start, g.stop),
                "order": g.order,
                "prime": g.prime,
            }
            for g in decomposition.generators
        ],
        "order_product": decomposition.order_product,
        "cardinality": code.cardinality,
        "verified": ok,
        "subdirect": is_subdirect_product(code, decomposition),
    }
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        lines = ["groupcodes decomposition report"]
        for i, g in enumerate(data["generators"], start=1):
            lines.append(
                f"y_{i} = {g['word']} on window [{g['window'][0]},{g['window'][1]}) "
                f"(1-based closed {g['window_1based_closed']}), order {g['order']}"
                + (f", prime {g['prime']}" if g["prime"] is not None else "")
            )
        lines.append(
            f"order product {data['order_product']} vs cardinality {data['cardinality']}"
        )
        lines.append("certificate:")
        lines.extend("  " + ln for ln in cert.render().splitlines())
        lines.append(f"subdirect: {'yes' if data['subdirect'] else 'no'}")
        print("\n".join(lines))
    return 0 if ok else 1


def _check_block(code: BlockCode, prop: str, level: Optional[int]) -> tuple[bool, str]:
    if prop == "l-controllable":
        if level is None:
            raise SpecError("l-controllable needs --level", field="level")
        profile = control_profile(code)
        return (
            profile.is_l_controllable(level),
            f"control index {profile.index} vs requested level {level}",
        )
    if prop == "observable":
        profile = observe_profile(code)
        if level is None:
            return True, f"observe index {profile.index} (finite horizon)"
        return (
            profile.is_l_observable(level),
            f"observe index {profile.index} vs requested level {level}",
        )
    if prop == "rectangular":
        decomposition = coprime_rectangular(code)
        if decomposition is None:
            return False, "symbol orders are not pairwise coprime"
        return True, "coordinatewise product verified"
    if prop == "subdirect":
        decomposition = cyclic_product_decomposition(code)
        return (
            is_subdirect_product(code, decomposition),
            "factors recombine to the code",
        )
    if prop == "weak-controllable":
        return True, "finite horizon: every block code is its finite-support part"
    raise SpecError(f"property {prop!r} not available for block codes", field="property")


def _check_convolutional(
    conv: ConvolutionalCode, prop: str, level: Optional[int]
) -> tuple[bool, str]:
    if prop == "weak-controllable":
        verdict = weak_controllability(conv)
        return verdict.holds, verdict.render()
    if prop == "l-controllable":
        verdict = strong_controllability_index(conv)
        if level is None:
            raise SpecError("l-controllable needs --level", field="level")
        if not verdict.is_finite:
            return False, verdict.render()
        return verdict.index <= level, verdict.render()
    if prop == "observable":
        verdict = weak_observability(conv)
        return verdict.holds, verdict.render().replace("controllable", "observable")
    raise SpecError(
        f"property {prop!r} not available for convolutional codes", field="property"
    )


def _cmd_check(args) -> int:
    doc = _load(args.spec)
    if doc.kind == "block":
        holds, detail = _check_block(doc.to_block_code(), args.property, args.level)
    else:
        holds, detail = _check_convolutional(
            doc.to_convolutional(), args.property, args.level
        )
    print(f"property {args.property}: {'holds' if holds else 'fails'}")
    print(detail)
    return 0 if holds else 1


def _cmd_duality_check(args) -> int:
    doc = _load(args.spec)
    if doc.kind == "block":
        report = check_control_observe_duality(doc.to_block_code())
        if args.format == "json":
            data = {
                "ok": report.ok,
                "control_index": report.control_index,
                "dual_observe_index": report.dual_observe_index,
                "observe_index": report.observe_index,
                "dual_control_index": report.dual_control_index,
                "indices_match": report.indices_match,
                "windows": [
                    {"start": w.start, "stop": w.stop, "ok": w.ok}
                    for w in report.window_checks
                ],
                "matched": [
                    {
                        "gap": m.gap,
                        "subcode_dual_factors": list(m.subcode_dual_factors),
                        "supercode_factors": list(m.supercode_factors),
                        "ok": m.ok,
                    }
                    for m in report.matched_checks
                ],
            }
            print(json.dumps(data, sort_keys=True, indent=2))
        else:
            print(report.render())
        return 0 if report.ok else 1
    conv = doc.to_convolutional()
    results = []
    for n in range(1, min(conv.analysis_horizon, 6) + 1):
        results.append((n, verify_window_duality(conv, n)))
    ctrl = weak_controllability(conv)
    obs = weak_observability(dual_convolutional(conv))
    verdict_match = ctrl.holds == obs.holds
    ok = verdict_match and all(good for _, good in results)
    lines = ["convolutional duality report"]
    for n, good in results:
        lines.append(
            f"window [0,{n}): annihilator of window equals zero-extension "
            f"window of dual: {'yes' if good else 'NO'}"
        )
    lines.append(
        f"weak controllability of code vs weak observability of dual: "
        f"{'match' if verdict_match else 'MISMATCH'}"
    )
    lines.append(f"verdict: {'pass' if ok else 'FAIL'}")
    print("\n".join(lines))
    return 0 if ok else 1


def _cmd_oracle(args) -> int:
    doc = _load(args.spec)
    bound = args.bound if args.bound is not None else oracle_bound()
    if doc.kind == "block":
        code = doc.to_block_code()
        codes = [("code", code)]
    else:
        conv = doc.to_convolutional()
        codes = [
            (f"window [0,{n})", window_code(conv, n))
            for n in range(1, min(conv.analysis_horizon, 4) + 1)
        ]
    all_ok = True
    lines = ["oracle cross-check report"]
    for label, code in codes:
        try:
            checks = _oracle_checks(code, bound)
        except OracleBoundExceeded as exc:
            raise SpecError(str(exc))
        for name, ok in checks:
            all_ok = all_ok and ok
            lines.append(f"{label} :: {name}: {'agree' if ok else 'DISAGREE'}")
    lines.append(f"verdict: {'pass' if all_ok else 'FAIL'}")
    print("\n".join(lines))
    return 0 if all_ok else 1


def _oracle_checks(code: BlockCode, bound: int) -> list[tuple[str, bool]]:
    from .control import reachable_set
    from .observe import consistency_set

    N = code.space.horizon
    checks = []
    ok = True
    for k in range(N):
        for L in range(N - k + 1):
            got = set(reachable_set(code, k, L).words())
            if got != set(brute("reachable_set", code, k, L, bound=bound)):
                ok = False
    checks.append(("reachable sets", ok))
    ok = True
    ambient = code.space.cardinality
    if ambient <= bound:
        for k in range(N):
            for L in range(N + 1):
                got = set(consistency_set(code, k, L).words())
                if got != set(brute("consistency_set", code, k, L, bound=bound)):
                    ok = False
        checks.append(("consistency sets", ok))
        dual_words = set(dual_block_code(code).words())
        checks.append(
            ("annihilator", dual_words == set(brute("annihilator", code, bound=bound)))
        )
    checks.append(
        (
            "order profile",
            order_profile(code).bounds == brute("order_profile", code, bound=bound),
        )
    )
    checks.append(
        (
            "invariant factors",
            invariant_factors_of_code(code) == brute("smith_invariants", code, bound=bound),
        )
    )
    try:
        decomposition = cyclic_product_decomposition(code)
        ok_main, _ = verify_decomposition(code, decomposition)
        pairs = [(g.word, g.order) for g in decomposition.generators]
        ok_brute = brute("verify_decomposition", code, pairs, bound=bound)
        checks.append(("decomposition verification", ok_main and ok_brute))
    except DecompositionError:
        checks.append(("decomposition verification", False))
    return checks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupcodes",
        description="Exact analysis of block and convolutional codes over "
        "finite abelian groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="cardinality, factors and profiles")
    p.add_argument("spec")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("dual", help="emit the dual code document")
    p.add_argument("spec")
    p.add_argument("--format", choices=("spec", "json"), default="spec")
    p.set_defaults(fn=_cmd_dual)

    p = sub.add_parser("decompose", help="cyclic product decomposition")
    p.add_argument("spec")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("check", help="named property verdicts")
    p.add_argument("spec")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    p.add_argument("--level", type=int, default=None)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("duality-check", help="control/observe duality report")
    p.add_argument("spec")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=_cmd_duality_check)

    p = sub.add_parser("oracle", help="cross-check against brute force")
    p.add_argument("spec")
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(fn=_cmd_oracle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OracleBoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
