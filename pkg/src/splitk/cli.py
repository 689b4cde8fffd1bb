"""Command-line entry point.

Exit codes: 0 verified, 1 verification failed on valid input, 2 input error.
Documents are read from the given files or from standard input (``-`` or no
argument) and written to ``--out`` or standard output.  Output is assembled in
full before anything is written, so a failing command writes nothing.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile

from . import io as sio
from .complex import cone, direct_sum_complex, shift, validate_chain_map
from .errors import DocumentError, SplitKError, VerificationError
from .generator import GenParams, gen_chain_map, gen_complex, gen_contractible, gen_equivalence
from .grothendieck import check_cone_relation, check_equivalence_invariance, euler_characteristic
from .io import Certificate
from .scalar import parse_ring
from .witness import (
    alphas,
    build_rl_witness,
    cone_homotopy_from,
    cone_null_homotopy,
    homotopy_inverse_from_cone,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _read(path):
    try:
        if path in (None, "-"):
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(path, *kinds):
    try:
        doc = sio.parse(_read(path))
    except DocumentError as exc:
        raise InputError(f"{path or '<stdin>'}: {exc}") from None
    if kinds and doc.kind not in kinds:
        raise InputError(f"{path or '<stdin>'}: expected {' or '.join(kinds)}, got {doc.kind}")
    return doc


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".splitk-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, obj, ring, human=None):
    if args.human and human is not None:
        return human if human.endswith("\n") else human + "\n"
    return sio.dumps(obj, ring)


def _params(args, ring):
    return GenParams(
        seed=args.seed,
        ring=ring,
        max_blocks=args.max_blocks,
        max_rank=args.max_rank,
        max_shift=args.max_shift,
        max_grading=args.max_grading,
        entry_bound=args.entry_bound,
        conjugation_steps=args.conjugation_steps,
    )


def _ring(args):
    try:
        return parse_ring(args.ring)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- commands -----------------------------------------------------------------

def cmd_validate(args):
    doc = _load(args.file)
    return f"ok: {doc.kind} over {doc.ring}\n"


def cmd_cone(args):
    doc = _load(args.file, "chain_map")
    return _emit(args, cone(doc.payload), doc.ring)


def cmd_shift(args):
    doc = _load(args.file, "complex")
    return _emit(args, shift(doc.payload, args.shift_by), doc.ring)


def cmd_sum(args):
    a = _load(args.first, "complex")
    b = _load(args.second, "complex")
    if a.ring != b.ring:
        raise InputError(f"ring mismatch: {a.ring} vs {b.ring}")
    return _emit(args, direct_sum_complex(a.payload, b.payload), a.ring)


def cmd_chi(args):
    doc = _load(args.file, "complex", "null_homotopy")
    c = doc.payload if doc.kind == "complex" else doc.payload.complex
    chi = euler_characteristic(c)
    return _emit(args, chi, doc.ring, str(chi))


def cmd_witness_rl(args):
    if args.homotopy is None:
        doc = _load(args.complex, "null_homotopy")
        h = doc.payload
    else:
        cdoc = _load(args.complex, "complex")
        doc = _load(args.homotopy, "null_homotopy")
        h = doc.payload
        if h.complex != cdoc.payload:
            raise InputError("the homotopy file belongs to a different complex")
    w = build_rl_witness(h.complex, h)
    cert = Certificate(
        "even and odd terms are isomorphic; chi = 0",
        ("id=dh+hd", "RL=id", "LR=id"),
        {"homotopy": h},
        {"rl": w},
    )
    human = f"ok: k={w.k}, R is {w.R.shape[0]}x{w.R.shape[1]}, RL=id, LR=id"
    return _emit(args, cert, doc.ring, human)


def cmd_cone_nullhomotopy(args):
    doc = _load(args.file, "equivalence")
    ch = cone_null_homotopy(doc.payload)
    cert = Certificate(
        "cone(phi) is null-homotopic",
        ("psi*phi-id=dH1+H1d", "phi*psi-id=dH2+H2d", ch.sign_convention),
        {"equivalence": doc.payload},
        {"phi": doc.payload.phi, "cone_homotopy": ch.homotopy},
    )
    return _emit(args, cert, doc.ring, f"ok: {ch.sign_convention} on cone(phi)")


def cmd_extract_inverse(args):
    doc = _load(args.file, "certificate", "null_homotopy")
    if doc.kind == "certificate":
        w = doc.payload.witness
        if "phi" not in w or "cone_homotopy" not in w:
            raise InputError("certificate lacks phi/cone_homotopy")
        phi, h = w["phi"], w["cone_homotopy"]
    else:
        if args.phi is None:
            raise InputError("--phi is required with a bare null_homotopy")
        phi = _load(args.phi, "chain_map").payload
        h = doc.payload
    if not isinstance(phi, sio.ChainMap) or not isinstance(h, sio.NullHomotopy):
        raise InputError("phi must be a chain map and cone_homotopy a null homotopy")
    if h.complex != cone(phi):
        raise InputError("cone_homotopy is not on cone(phi)")
    e = homotopy_inverse_from_cone(cone_homotopy_from(phi, h), phi)
    cert = Certificate(
        "phi is a homotopy equivalence with inverse -h12",
        ("id=dH+Hd", "d(psi)=(psi)d", "psi*phi-id=dH1+H1d", "phi*psi-id=dH2+H2d"),
        {"phi": phi, "cone_homotopy": h},
        {"equivalence": e},
    )
    return _emit(args, cert, doc.ring, "ok: extracted inverse verifies")


def cmd_check_cone_relation(args):
    doc = _load(args.file, "chain_map")
    rep = check_cone_relation(doc.payload)
    if not rep:
        raise CheckFailed(str(rep), rep)
    chi = euler_characteristic(cone(doc.payload))
    cert = Certificate(rep.identity, ("d f = f d", rep.identity), {"chain_map": doc.payload}, {"chi_cone": chi})
    return _emit(args, cert, doc.ring, f"ok: chi(cone) = {chi}")


def cmd_check_equivalence(args):
    doc = _load(args.file, "equivalence")
    rep = check_equivalence_invariance(doc.payload)
    if not rep:
        raise CheckFailed(str(rep), rep)
    chi = euler_characteristic(doc.payload.phi.source)
    cert = Certificate(
        rep.identity,
        ("psi*phi-id=dH1+H1d", "phi*psi-id=dH2+H2d", "id=dH+Hd", "RL=id", "LR=id", rep.identity),
        {"equivalence": doc.payload},
        {"chi": chi},
    )
    return _emit(args, cert, doc.ring, f"ok: chi(source) = chi(target) = {chi}")


def cmd_gen_contractible(args):
    ring = _ring(args)
    _, h = gen_contractible(_params(args, ring))
    return _emit(args, h, ring)


def cmd_gen_equivalence(args):
    ring = _ring(args)
    p = _params(args, ring)
    base = None
    if args.base is not None:
        bdoc = _load(args.base, "complex")
        if bdoc.ring != ring:
            raise InputError(f"base complex is over {bdoc.ring}, --ring is {ring}")
        base = bdoc.payload
    return _emit(args, gen_equivalence(p, base), ring)


def cmd_gen_chain_map(args):
    ring = _ring(args)
    p = _params(args, ring)
    if args.source is not None:
        a = _load(args.source, "complex").payload
        b = _load(args.target, "complex").payload if args.target else a
        if a.ring != ring or b.ring != ring:
            raise InputError(f"complexes must be over --ring {ring}")
    else:
        a = gen_complex(p)
        b = gen_complex(p.replace(seed=p.seed + 1))
    f = gen_chain_map(p, a, b)
    assert validate_chain_map(f)
    return _emit(args, f, ring)


def cmd_alphas(args):
    if args.n < 0:
        raise InputError("--n must be nonnegative")
    return " ".join(str(a) for a in alphas(args.n)) + "\n"


# -- parser -------------------------------------------------------------------

def _gen_flags(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-blocks", type=int, default=GenParams.max_blocks)
    p.add_argument("--max-rank", type=int, default=GenParams.max_rank)
    p.add_argument("--max-shift", type=int, default=GenParams.max_shift)
    p.add_argument("--max-grading", type=int, default=GenParams.max_grading)
    p.add_argument("--entry-bound", type=int, default=GenParams.entry_bound)
    p.add_argument("--conjugation-steps", type=int, default=GenParams.conjugation_steps)


def build_parser():
    parser = argparse.ArgumentParser(prog="splitk", description="Certified constructions for bounded chain complexes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", "-o", default=None, help="output file (default: stdout)")
    common.add_argument("--human", action="store_true", help="print a short report instead of a document")
    common.add_argument("--ring", default="ZZ", help="ZZ, QQ, ZZ/p, ZZ[x] or ZZ[x]@d (default ZZ)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "parse and validate any document").add_argument("file", nargs="?")
    add("cone", cmd_cone, "mapping cone of a chain map").add_argument("file", nargs="?")
    p = add("shift", cmd_shift, "shift a complex")
    p.add_argument("file", nargs="?")
    p.add_argument("--shift-by", type=int, required=True)
    p = add("sum", cmd_sum, "direct sum of two complexes")
    p.add_argument("first")
    p.add_argument("second")
    add("chi", cmd_chi, "Euler characteristic").add_argument("file", nargs="?")
    p = add("witness-rl", cmd_witness_rl, "R/L isomorphism for a contractible complex")
    p.add_argument("complex", nargs="?", help="null_homotopy document, or a complex followed by one")
    p.add_argument("homotopy", nargs="?")
    add("cone-nullhomotopy", cmd_cone_nullhomotopy, "contract the cone of an equivalence").add_argument("file", nargs="?")
    p = add("extract-inverse", cmd_extract_inverse, "homotopy inverse from a cone contraction")
    p.add_argument("file", nargs="?")
    p.add_argument("--phi", default=None, help="chain map file, when FILE is a bare null_homotopy")
    add("check-cone-relation", cmd_check_cone_relation, "chi(cone f) = chi(B) - chi(A)").add_argument("file", nargs="?")
    add("check-equivalence", cmd_check_equivalence, "chi is invariant under the equivalence").add_argument("file", nargs="?")
    _gen_flags(add("gen-contractible", cmd_gen_contractible, "random contractible complex with contraction"))
    p = add("gen-equivalence", cmd_gen_equivalence, "random homotopy equivalence")
    _gen_flags(p)
    p.add_argument("base", nargs="?", help="base complex (default: generated)")
    p = add("gen-chain-map", cmd_gen_chain_map, "random null-homotopic chain map")
    _gen_flags(p)
    p.add_argument("source", nargs="?")
    p.add_argument("target", nargs="?")
    p = add("alphas", cmd_alphas, "signed Catalan coefficients alpha_0..alpha_n")
    p.add_argument("--n", type=int, required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except (InputError, DocumentError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CheckFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except SplitKError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write(text, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
