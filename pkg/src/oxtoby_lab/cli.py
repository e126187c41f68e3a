"""Batch command-line front end.

One verb per workbench capability; reports go to stdout as text or, with
--json, as deterministic JSON (fixed orders, sorted keys). Exit codes: 0 for
yes/success, 1 for no, 2 for unknown, 64 for usage or file errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis, conjugacy, constructions, measures
from .errors import OxtobyLabError
from .parts import chi as chi_parts
from .parts import gap_check, parts_star
from .parts import parts as level_parts
from .spec import blank_certificate, load_spec, save_spec, spec_document, window
from .verdicts import Verdict

USAGE_ERROR = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(USAGE_ERROR)


def _emit(doc, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _verdict_doc(v: Verdict) -> dict:
    return {"status": v.status.value, "detail": v.detail}


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _split_csv(text: str) -> list[str]:
    return [part for part in text.split(",") if part]


def cmd_validate(args) -> int:
    spec = load_spec(args.spec)
    doc = spec_document(spec)
    _emit(
        doc,
        args.json,
        f"valid spec: {len(spec.alphabet)} symbols, periods {spec.periods}, horizon {spec.horizon}",
    )
    return 0


def cmd_show(args) -> int:
    spec = load_spec(args.spec)
    lo, hi = args.range if args.range else (0, spec.periods[args.level])
    text = window(spec, args.level, lo, hi)
    _emit({"level": args.level, "range": [lo, hi], "window": text}, args.json, text)
    return 0


def cmd_skeleton_cert(args) -> int:
    spec = load_spec(args.spec)
    cert = blank_certificate(spec, args.level)
    statuses = [c.value for c in cert]
    undetermined = [i for i, c in enumerate(statuses) if c == "undetermined"]
    text = "\n".join(f"{i}: {c}" for i, c in enumerate(statuses))
    _emit({"level": args.level, "statuses": statuses}, args.json, text)
    return 2 if undetermined else 0


def cmd_check_oxtoby(args) -> int:
    spec = load_spec(args.spec)
    v = analysis.check_gen_oxtoby(spec)
    doc = _verdict_doc(v)
    if v.is_no:
        viol = v.witness
        doc["violation"] = {
            "level": viol.level,
            "block": viol.block_index,
            "holes": list(viol.hole_positions),
        }
    _emit(doc, args.json, f"{v.status.value}: {v.detail}")
    return v.exit_code()


def cmd_pieces(args) -> int:
    spec = load_spec(args.spec)
    v = analysis.is_piece(spec, args.anchor, args.level)
    _emit(_verdict_doc(v), args.json, f"{v.status.value}: {v.detail}")
    return v.exit_code()


def cmd_offsets(args) -> int:
    spec = load_spec(args.spec)
    offs = sorted(analysis.oxtoby_offsets(spec, args.level))
    _emit({"level": args.level, "offsets": offs}, args.json, " ".join(map(str, offs)) or "(none)")
    return 0


def cmd_parts(args) -> int:
    spec = load_spec(args.spec)
    if args.star:
        rows = [
            {"residue": d.residue, "skeleton": d.skeleton_t.render(spec.alphabet), "len": n}
            for d, n in parts_star(spec, args.level)
        ]
        text = "\n".join(f"{r['residue']:>4}  {r['skeleton']}  len={r['len']}" for r in rows)
    else:
        rows = [
            {"residue": d.residue, "skeleton": d.skeleton_t.render(spec.alphabet)}
            for d in level_parts(spec, args.level)
        ]
        text = "\n".join(f"{r['residue']:>4}  {r['skeleton']}" for r in rows)
    _emit({"level": args.level, "parts": rows}, args.json, text or "(none)")
    return 0


def cmd_chi(args) -> int:
    spec = load_spec(args.spec)
    rows = [
        {"residue": d.residue, "skeleton": d.skeleton_t.render(spec.alphabet)}
        for d in chi_parts(spec, args.level)
    ]
    text = "\n".join(f"{r['residue']:>4}  {r['skeleton']}" for r in rows)
    _emit({"level": args.level, "chi": rows}, args.json, text or "(none)")
    return 0


def cmd_gap_check(args) -> int:
    spec = load_spec(args.spec)
    v = gap_check(spec, args.level, args.margin)
    _emit(_verdict_doc(v), args.json, f"{v.status.value}: {v.detail}")
    return v.exit_code()


def cmd_relabel(args) -> int:
    spec = load_spec(args.spec)
    rho = {int(k): dict(m) for k, m in json.loads(args.map).items()}
    out = conjugacy.relabel(spec, args.level, rho)
    save_spec(out, args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_shift(args) -> int:
    spec = load_spec(args.spec)
    out = conjugacy.shift_spec(spec, args.amount)
    save_spec(out, args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_conjugacy(args) -> int:
    left = load_spec(args.left)
    right = load_spec(args.right)
    report = conjugacy.conjugacy_test(left, right, args.tmin, args.tmax)
    doc = report.to_document(left.alphabet)
    lines = [f"aggregate: {report.aggregate}"]
    for t, v in report.ft_verdicts:
        lines.append(f"f_{t}: {v.status.value}")
    for t, v in report.chi_verdicts:
        lines.append(f"chi_{t}: {v.status.value}")
    if report.dkl:
        t, a, bm = report.dkl
        lines.append(f"witness: level {t}, shift {a}, {len(bm.pairs)} blocks, verified={report.witness_verified}")
    _emit(doc, args.json, "\n".join(lines))
    return {"ConjugateWithWitness": 0, "NotConjugateUpToHorizon": 1}.get(report.aggregate, 2)


def cmd_ft(args) -> int:
    left = load_spec(args.left)
    right = load_spec(args.right)
    v = conjugacy.f_t(left, right, args.level)
    _emit(_verdict_doc(v), args.json, f"{v.status.value}: {v.detail}")
    return v.exit_code()


def cmd_measures_freq(args) -> int:
    if args.modulus is not None:
        value = measures.freq_double_star(args.base, args.pattern, args.modulus, args.residue)
        label = f"F**({args.pattern!r}, {args.modulus}, {args.residue})"
    else:
        value = measures.freq_star(args.base, args.pattern)
        label = f"F*({args.pattern!r})"
    _emit({"value": _frac(value)}, args.json, f"{label} = {_frac(value)}")
    return 0


def _measure_for(args):
    spec = load_spec(args.spec)
    return measures.empirical_measure(spec, args.level, args.depth)


def _emit_functional_rows(args, rows: list[dict], note: str) -> int:
    if args.csv:
        print("word,value,tail_bound")
        for r in rows:
            print(f"{r['word']},{r['value']},{r['tail_bound']}")
        return 0
    text = "\n".join(f"{r['word']}: {r['value']} (+ tail <= {r['tail_bound']})" for r in rows)
    _emit({"rows": rows, "note": note}, args.json, text)
    return 0


def cmd_measures_d_star(args) -> int:
    mu = _measure_for(args)
    rows = []
    for word in _split_csv(args.base):
        value, tail = measures.d_star(word, mu, args.depth)
        rows.append({"word": word, "value": _frac(value), "tail_bound": _frac(tail)})
    return _emit_functional_rows(args, rows, "weighted variation of factor frequencies")


def cmd_measures_d_double_star(args) -> int:
    mu = _measure_for(args)
    weights = measures.WeightScheme.default(args.kmax)
    rows = []
    for word in _split_csv(args.base):
        value, tail = measures.d_double_star(word, mu, args.depth, weights)
        rows.append({"word": word, "value": _frac(value), "tail_bound": _frac(tail)})
    return _emit_functional_rows(
        args,
        rows,
        "congruence-refined variation; start positions counted in class j mod k",
    )


def cmd_measures_profile(args) -> int:
    spec = load_spec(args.spec)
    levels = [int(x) for x in _split_csv(args.levels)]
    values = measures.density_profile(spec, args.symbol, levels)
    rows = [{"level": t, "frequency": _frac(v)} for t, v in zip(levels, values)]
    if args.csv:
        print("level,frequency")
        for r in rows:
            print(f"{r['level']},{r['frequency']}")
        return 0
    text = "\n".join(f"x_{r['level']}: {r['frequency']}" for r in rows)
    _emit({"symbol": args.symbol, "profile": rows}, args.json, text)
    return 0


def cmd_build_oxtoby(args) -> int:
    ratios = [int(x) for x in _split_csv(args.ratios)]
    symbols = _split_csv(args.symbols) if args.symbols else None
    spec = constructions.oxtoby_classic(len(ratios), ratios, symbols)
    save_spec(spec, args.out)
    print(f"wrote {args.out} (periods {spec.periods})")
    return 0


def cmd_build_downarowicz(args) -> int:
    if args.words:
        b_words = _split_csv(args.words)
    else:
        forbidden = _split_csv(args.forbidden) if args.forbidden else []
        b_words = constructions.language_words(forbidden, args.levels)
    spec = constructions.downarowicz_build(constructions.DownarowiczInput(tuple(b_words)))
    save_spec(spec, args.out)
    print(f"wrote {args.out} (periods {spec.periods})")
    return 0


def cmd_language_words(args) -> int:
    forbidden = _split_csv(args.forbidden) if args.forbidden else []
    words = constructions.language_words(forbidden, args.levels)
    _emit({"words": words}, args.json, "\n".join(words))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="oxtoby-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("validate", cmd_validate, help="validate a spec file")
    p.add_argument("--spec", required=True)

    p = add("show", cmd_show, help="print a window of a level word")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))

    p = add("skeleton-cert", cmd_skeleton_cert, help="blank certificate per residue")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)

    p = add("check-oxtoby", cmd_check_oxtoby, help="generalized Oxtoby condition")
    p.add_argument("--spec", required=True)

    p = add("pieces", cmd_pieces, help="is one interval a piece")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--anchor", type=int, required=True)

    p = add("offsets", cmd_offsets, help="piece-aligned offsets")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)

    p = add("parts", cmd_parts, help="shift-residue parts")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--star", action="store_true", help="restrict to block-anchored parts")

    p = add("chi", cmd_chi, help="centered long-block parts")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)

    p = add("gap-check", cmd_gap_check, help="block-length dichotomy")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--margin", type=int, required=True)

    p = add("relabel", cmd_relabel, help="apply residue-indexed alphabet bijections")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--map", required=True, help='JSON like {"0": {"0": "1", "1": "0"}}')
    p.add_argument("--out", required=True)

    p = add("shift", cmd_shift, help="re-anchor a spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--amount", type=int, required=True)
    p.add_argument("--out", required=True)

    p = add("conjugacy", cmd_conjugacy, help="full conjugacy report")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--tmin", type=int, default=1)
    p.add_argument("--tmax", type=int, default=None)

    p = add("ft", cmd_ft, help="finite-level relation at one level")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--level", type=int, required=True)

    meas = sub.add_parser("measures", help="frequency functionals")
    msub = meas.add_subparsers(dest="measure_command", required=True)

    def madd(name, fn):
        p = msub.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true")
        return p

    p = madd("freq", cmd_measures_freq)
    p.add_argument("--base", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--modulus", type=int, default=None)
    p.add_argument("--residue", type=int, default=0)

    p = madd("d-star", cmd_measures_d_star)
    p.add_argument("--base", required=True, help="comma-separated base words (a trajectory)")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--csv", action="store_true")

    p = madd("d-double-star", cmd_measures_d_double_star)
    p.add_argument("--base", required=True, help="comma-separated base words (a trajectory)")
    p.add_argument("--spec", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--kmax", type=int, default=7)
    p.add_argument("--csv", action="store_true")

    p = madd("profile", cmd_measures_profile)
    p.add_argument("--spec", required=True)
    p.add_argument("--symbol", required=True)
    p.add_argument("--levels", required=True, help="comma-separated levels")
    p.add_argument("--csv", action="store_true")

    p = add("build-oxtoby", cmd_build_oxtoby, help="classical first/last-interval schedule")
    p.add_argument("--ratios", required=True, help="comma-separated period ratios")
    p.add_argument("--symbols", default=None, help="comma-separated fill symbols")
    p.add_argument("--out", required=True)

    p = add("build-downarowicz", cmd_build_downarowicz, help="staircase schedule")
    p.add_argument("--words", default=None, help="comma-separated b_t words")
    p.add_argument("--forbidden", default=None, help="forbidden factors for the language")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--out", required=True)

    p = add("language-words", cmd_language_words, help="length-law words of an SFT language")
    p.add_argument("--forbidden", default=None)
    p.add_argument("--levels", type=int, required=True)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except OxtobyLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
