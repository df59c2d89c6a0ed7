"""Batch command-line front end: JSON in, JSON out, deterministic.

Exit codes: 0 success, 2 parse or validation failure, 3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import serialize
from .affine import RepSystem, SpecialSubgroup, special_reps
from .cwt import sample_transform
from .errors import NotTightError, UltrawaveError
from .fourier import fourier, inverse_fourier
from .frames import (FrameSpec, analyze_coeffs, benedetto_onb, build_frame,
                     fourier_coset_frame, frame_constant, kernel_matrix,
                     reconstruct)
from .padic import INF, PAdicNumber, check_prime, coset_reps
from .scalars import ScaledScalar
from .spaces import (Weight, analyzing_wavelet, besov_norm, coorbit_norm,
                     mixed_norm, shell_kernel)
from .stepfn import StepFunction, pi_apply


def _f12(x: float) -> float:
    """Round a float to 12 significant digits for stable output."""
    return float(f"{x:.12g}")


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _parse_exponent(text: str):
    if text in ("inf", "Inf", "INF", "oo"):
        return INF
    value = Fraction(text)
    if value <= 0:
        raise ValueError("exponent must be positive")
    return value if value.denominator > 1 else int(value)


def _parse_window(text: str, subgroup: SpecialSubgroup) -> RepSystem:
    """Parse 'n0:n1,l:k' into a representative window."""
    try:
        n_part, g_part = text.split(",")
        n_lo, n_hi = (int(v) for v in n_part.split(":"))
        g_lo, g_hi = (int(v) for v in g_part.split(":"))
    except ValueError as exc:
        raise ValueError(f"bad window spec {text!r}; expected n0:n1,l:k") from exc
    return RepSystem(subgroup, n_lo, n_hi, g_lo, g_hi)


def _scalar_out(z: ScaledScalar, as_float: bool):
    if as_float:
        c = z.to_complex()
        return {"re": _f12(c.real), "im": _f12(c.imag)}
    return serialize.scalar_to_json(z)


def _load_step(path: str) -> StepFunction:
    obj = _read_json(path)
    if obj.get("kind") not in (None, "step_function"):
        raise ValueError(f"expected a step_function document, got {obj.get('kind')!r}")
    return serialize.step_function_from_json(obj)


def _load_frame(path: str) -> FrameSpec:
    obj = _read_json(path)
    if obj.get("kind") not in (None, "frame_spec"):
        raise ValueError(f"expected a frame_spec document, got {obj.get('kind')!r}")
    return serialize.frame_spec_from_json(obj)


def default_test_family(fs: FrameSpec) -> list[StepFunction]:
    """Deterministic mean-zero family spanning scales and translations."""
    p = fs.p
    family: list[StepFunction] = list(fs.wavelets)
    g0 = fs.wavelets[0]
    shift = special_reps(p, RepSystem(fs.subgroup, 0, 0, fs.subgroup.k - 1))
    for r in shift[:4]:
        family.append(pi_apply(g0, r))
    from .affine import GroupElement
    dil = GroupElement(PAdicNumber.zero(p), PAdicNumber.p_power(p, 1))
    family.append(pi_apply(g0, dil))
    family.append(g0 + pi_apply(g0, dil))
    family.append(shell_kernel(p, 0))
    family.append(shell_kernel(p, 1))
    family.append(analyzing_wavelet(p))
    if len(fs.wavelets) > 1:
        family.append(fs.wavelets[0] + fs.wavelets[1])
    return family


# ---------------------------------------------------------------------------
# subcommands

def _cmd_field_info(args) -> int:
    check_prime(args.p)
    reps = coset_reps(args.p, 0, 1)
    _emit({
        "format_version": serialize.FORMAT_VERSION,
        "kind": "report",
        "op": "field-info",
        "p": args.p,
        "q": args.p,
        "residue_representatives": [str(r) for r in reps],
        "haar_measure": "dx * dh_add / |h|^2 (left), |D| = 1",
        "kstar_convention": args.convention,
        "character": "kernel D, chi(x) = exp(2 pi i {x}_p)",
    })
    return 0


def _cmd_fourier(args) -> int:
    f = _load_step(args.input)
    out = inverse_fourier(f) if args.inverse else fourier(f)
    _emit(serialize.step_function_to_json(out))
    return 0


def _cmd_cwt(args) -> int:
    f = _load_step(args.f)
    g = _load_step(args.g)
    if args.window:
        from .affine import fixed_subgroup
        rs = _parse_window(args.window, fixed_subgroup(g))
        st = sample_transform(f, [g], rs=rs)
    else:
        st = sample_transform(f, [g])
    _emit(serialize.sampled_transform_to_json(st))
    return 0


def _cmd_frame_build(args) -> int:
    g = _load_step(args.wavelet)
    fs = build_frame(g)
    _emit(serialize.frame_spec_to_json(fs))
    return 0


def _cmd_frame_verify(args) -> int:
    fs = _load_frame(args.frame)
    verification = frame_constant(fs, default_test_family(fs))
    printed = verification.printed
    doc = serialize.frame_spec_to_json(fs)
    doc["kind"] = "report"
    doc["op"] = "frame-verify"
    doc["tight"] = verification.tight
    doc["empirical_constant"] = str(verification.constant)
    doc["predicted_constant"] = str(verification.predicted)
    doc["printed_constant"] = str(printed) if isinstance(printed, ScaledScalar) \
        else _f12(printed)
    doc["test_functions"] = verification.n_functions
    _emit(doc)
    return 0


def _cmd_frame_analyze(args) -> int:
    fs = _load_frame(args.frame)
    f = _load_step(args.input)
    coeffs = analyze_coeffs(f, fs)
    _emit(serialize.coefficients_to_json(fs.p, fs.subgroup, coeffs))
    return 0


def _cmd_frame_reconstruct(args) -> int:
    fs = _load_frame(args.frame)
    subgroup, coeffs = serialize.coefficients_from_json(_read_json(args.coeffs))
    if subgroup != fs.subgroup:
        raise ValueError("coefficient subgroup does not match the frame")
    if fs.constant is None:
        frame_constant(fs, default_test_family(fs))
    _emit(serialize.step_function_to_json(reconstruct(coeffs, fs)))
    return 0


def _cmd_frame_kernel(args) -> int:
    fs = _load_frame(args.frame)
    window = args.window or "-1:1,-1:0"
    rs = _parse_window(window, fs.subgroup)
    indices = [(r, j) for r in special_reps(fs.p, rs)
               for j in range(1, len(fs.wavelets) + 1)]
    km = kernel_matrix(fs, indices)
    entries = []
    for (row, col), v in sorted(
            km.entries.items(),
            key=lambda kv: (serialize.group_element_to_json(kv[0][0][0]),
                            kv[0][0][1],
                            serialize.group_element_to_json(kv[0][1][0]),
                            kv[0][1][1])):
        entries.append({
            "row": serialize.group_element_to_json(row[0]) + [row[1]],
            "col": serialize.group_element_to_json(col[0]) + [col[1]],
            "value": _scalar_out(v, args.float),
        })
    _emit({
        "format_version": serialize.FORMAT_VERSION,
        "kind": "report",
        "op": "frame-kernel",
        "p": fs.p,
        "window_size": len(indices),
        "identity": km.is_identity(),
        "entries": entries,
    })
    return 0


def _cmd_norm(args) -> int:
    s = _parse_exponent(args.s)
    t = _parse_exponent(args.t)
    if args.which == "mixed":
        obj = _read_json(args.input)
        st = serialize.sampled_transform_from_json(obj)
        weight = Weight(alpha_exp=Fraction(args.alpha_exp))
        value = mixed_norm(st, s, t, weight, convention=args.convention,
                           outer_exponent=args.outer)
        alt = mixed_norm(st, s, t, weight, convention=args.convention,
                         outer_exponent="s" if args.outer == "t" else "t")
        _emit({
            "format_version": serialize.FORMAT_VERSION,
            "kind": "report",
            "op": "norm-mixed",
            "p": st.p,
            "value": _f12(value),
            "outer_exponent": args.outer,
            "alternative_outer_value": _f12(alt),
            "convention": args.convention,
        })
        return 0

    f = _load_step(args.input)
    alpha = Fraction(args.alpha)
    if args.which == "besov":
        res = besov_norm(f, alpha, s, t, detailed=True)
    else:
        res = coorbit_norm(f, alpha, s, t, convention=args.convention,
                           detailed=True)
    _emit({
        "format_version": serialize.FORMAT_VERSION,
        "kind": "report",
        "op": f"norm-{args.which}",
        "p": f.p,
        "alpha": str(alpha),
        "s": args.s,
        "t": args.t,
        "value": _f12(res.value),
        "exact_sq": str(res.exact_sq) if res.exact_sq is not None else None,
        "k_range": list(res.k_range) if res.k_range else None,
    })
    return 0


def _cmd_demo_parseval(args) -> int:
    p, k = args.p, args.k
    check_prime(p)
    fs = fourier_coset_frame(p, k)
    g = fs.wavelets[0]
    verification = frame_constant(fs, default_test_family(fs))
    coeffs = analyze_coeffs(g, fs)
    total = ScaledScalar.zero(p)
    for v in coeffs.values():
        total = total + v.abs_sq()
    printed = verification.printed
    _emit({
        "format_version": serialize.FORMAT_VERSION,
        "kind": "report",
        "op": "demo-parseval",
        "p": p,
        "k": k,
        "coefficients": serialize.coefficients_to_json(p, fs.subgroup, coeffs)["entries"],
        "frame_sum": str(total.as_fraction()),
        "norm_sq": str(g.l2_norm_sq_rational()),
        "empirical_constant": str(verification.constant),
        "predicted_constant": str(verification.predicted),
        "printed_constant": str(printed) if isinstance(printed, ScaledScalar)
        else _f12(printed),
        "tight": verification.tight,
    })
    return 0


def _cmd_demo_onb(args) -> int:
    p = args.p
    check_prime(p)
    fs = benedetto_onb(p)
    verification = frame_constant(fs, default_test_family(fs))
    rs = RepSystem(fs.subgroup, -1, 1, -1)
    indices = [(r, j) for r in special_reps(p, rs)
               for j in range(1, len(fs.wavelets) + 1)]
    km = kernel_matrix(fs, indices)
    _emit({
        "format_version": serialize.FORMAT_VERSION,
        "kind": "report",
        "op": "demo-onb",
        "p": p,
        "wavelets": len(fs.wavelets),
        "tight": verification.tight,
        "empirical_constant": str(verification.constant),
        "kernel_window_size": len(indices),
        "kernel_identity": km.is_identity(),
    })
    return 0


def _cmd_demo_besov_coorbit(args) -> int:
    p = args.p
    check_prime(p)
    f = shell_kernel(p, 0) + shell_kernel(p, 1)
    rows = []
    worst = 0.0
    for alpha in (-1, 0, 1):
        for s in (1, 2, INF):
            for t in (1, 2, INF):
                b = besov_norm(f, alpha, s, t)
                c = coorbit_norm(f, alpha, s, t, convention="shell-normalized")
                rel = abs(c - b) / b if b else 0.0
                worst = max(worst, rel)
                add = coorbit_norm(f, alpha, s, t, convention="additive")
                expected_ratio = (1 - 1 / p) ** (0.0 if t == INF else 1.0 / t)
                rows.append({
                    "alpha": alpha,
                    "s": "inf" if s == INF else s,
                    "t": "inf" if t == INF else t,
                    "besov": _f12(b),
                    "coorbit": _f12(c),
                    "additive_ratio": _f12(add / b if b else 0.0),
                    "expected_additive_ratio": _f12(expected_ratio),
                })
    _emit({
        "format_version": serialize.FORMAT_VERSION,
        "kind": "report",
        "op": "demo-besov-coorbit",
        "p": p,
        "max_relative_deviation": _f12(worst),
        "rows": rows,
    })
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultrawave",
        description="Exact wavelet analysis over the p-adic field.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=16,
                        help="unit-inverse precision for group inversions")
    common.add_argument("--float", action="store_true",
                        help="render report scalars as complex floats")
    common.add_argument("--convention", choices=("shell-normalized", "additive"),
                        default="shell-normalized",
                        help="K* measure normalization for mixed/coorbit norms")
    sub = parser.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", help="ambient field information")
    field_sub = p_field.add_subparsers(dest="field_command", required=True)
    p_info = field_sub.add_parser("info", parents=[common])
    p_info.add_argument("--p", type=int, required=True)
    p_info.set_defaults(func=_cmd_field_info)

    p_fourier = sub.add_parser("fourier", parents=[common],
                               help="Fourier transform of a step function")
    p_fourier.add_argument("input")
    p_fourier.add_argument("--inverse", action="store_true")
    p_fourier.set_defaults(func=_cmd_fourier)

    p_cwt = sub.add_parser("cwt", parents=[common],
                           help="sampled continuous wavelet transform")
    p_cwt.add_argument("f")
    p_cwt.add_argument("g")
    p_cwt.add_argument("--window", help="n0:n1,l:k representative window")
    p_cwt.set_defaults(func=_cmd_cwt)

    p_frame = sub.add_parser("frame", help="frame construction and verification")
    frame_sub = p_frame.add_subparsers(dest="frame_command", required=True)
    p_build = frame_sub.add_parser("build", parents=[common])
    p_build.add_argument("wavelet")
    p_build.set_defaults(func=_cmd_frame_build)
    p_verify = frame_sub.add_parser("verify", parents=[common])
    p_verify.add_argument("frame")
    p_verify.set_defaults(func=_cmd_frame_verify)
    p_analyze = frame_sub.add_parser("analyze", parents=[common])
    p_analyze.add_argument("frame")
    p_analyze.add_argument("input")
    p_analyze.set_defaults(func=_cmd_frame_analyze)
    p_recon = frame_sub.add_parser("reconstruct", parents=[common])
    p_recon.add_argument("frame")
    p_recon.add_argument("coeffs")
    p_recon.set_defaults(func=_cmd_frame_reconstruct)
    p_kernel = frame_sub.add_parser("kernel", parents=[common])
    p_kernel.add_argument("frame")
    p_kernel.add_argument("--window", help="n0:n1,l:k kernel index window")
    p_kernel.set_defaults(func=_cmd_frame_kernel)

    p_norm = sub.add_parser("norm", help="Besov, coorbit and mixed norms")
    norm_sub = p_norm.add_subparsers(dest="which", required=True)
    for which in ("besov", "coorbit"):
        p_n = norm_sub.add_parser(which, parents=[common])
        p_n.add_argument("input")
        p_n.add_argument("--alpha", default="0")
        p_n.add_argument("--s", default="2")
        p_n.add_argument("--t", default="2")
        p_n.set_defaults(func=_cmd_norm, which=which)
    p_mixed = norm_sub.add_parser("mixed", parents=[common])
    p_mixed.add_argument("input")
    p_mixed.add_argument("--alpha-exp", default="0",
                         help="h-monomial weight exponent")
    p_mixed.add_argument("--s", default="2")
    p_mixed.add_argument("--t", default="2")
    p_mixed.add_argument("--outer", choices=("t", "s"), default="t")
    p_mixed.set_defaults(func=_cmd_norm, which="mixed")

    p_demo = sub.add_parser("demo", help="worked verification scenarios")
    demo_sub = p_demo.add_subparsers(dest="demo_command", required=True)
    p_par = demo_sub.add_parser("parseval", parents=[common])
    p_par.add_argument("--p", type=int, default=2)
    p_par.add_argument("--k", type=int, default=1)
    p_par.set_defaults(func=_cmd_demo_parseval)
    p_onb = demo_sub.add_parser("onb", parents=[common])
    p_onb.add_argument("--p", type=int, default=2)
    p_onb.set_defaults(func=_cmd_demo_onb)
    p_bc = demo_sub.add_parser("besov-coorbit", parents=[common])
    p_bc.add_argument("--p", type=int, default=2)
    p_bc.set_defaults(func=_cmd_demo_besov_coorbit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotTightError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        if exc.ratios:
            print(json.dumps(exc.ratios, indent=2), file=sys.stderr)
        return 3
    except (UltrawaveError, ValueError, OSError, json.JSONDecodeError,
            KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
