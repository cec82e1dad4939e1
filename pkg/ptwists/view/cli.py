"""
Command line front end

Subcommands:
    algebra build | algebra check   Build an algebra document / check its axioms
    spherify                        Build B = A[eps]/eps^2 and check F P_i
    twist apply                     Apply a twist word to a named object
    certify free | certify abelian  Ping-pong and abelian certificates
    search relations                Probe short words for relations
    replay <certificate>            Rerun a certificate and compare bytes

Exit statuses: 0 success or certified, 1 structural or configuration
error, 2 certification failure, 3 undetermined within budget.
"""

import argparse
import logging
import sys

from ptwists.config.parameters import VERSION, SessionConfig, params
from ptwists.config.presets import PRESETS, load_preset
from ptwists.model.algebra import check_cy_pairing, check_dg_axioms
from ptwists.model.certificate import Certificate
from ptwists.model.errors import ConfigurationError, PTwistsError, StructuralError
from ptwists.model.modules import free_module, hom_dims
from ptwists.model.pingpong import (
    TwistContext,
    TwistWord,
    WordEngine,
    certify_abelian,
    certify_no_relations,
    search_relations,
)
from ptwists.model.spherify import (
    apply_F,
    build_spherification_algebra,
    check_spherical,
    check_weak_spherification,
    hom_growth,
)
from ptwists.model.twists import hom_profile
from ptwists.utils.serialize import (
    algebra_to_dict,
    module_to_dict,
    parse_algebra_spec,
    read_json,
    spherification_to_dict,
    write_json_atomic,
)
from ptwists.view.report import (
    format_algebra,
    format_axiom_report,
    format_certificate,
    format_module,
    format_profile,
    format_relation_search,
    format_spherification,
)

logger = logging.getLogger("ptwists")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2
EXIT_UNDETERMINED = 3


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _session_flags():
    """Flags shared by every subcommand; None means 'keep the configured value'."""
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("session")
    group.add_argument("--field", help="QQ (default) or GF(p)")
    group.add_argument("--prime", type=int, help="characteristic used by --field GF")
    group.add_argument("--algebra", help="pnk:n,k | two-object:n,k,m | orthogonal:n,k | JSON file")
    group.add_argument("--L", dest="word_length", type=int, help="word length budget")
    group.add_argument("--transition-exponent", dest="transition_exponent", type=int,
                       help="largest |m| in the ping-pong transition checks")
    group.add_argument("--max-generators", dest="max_generators", type=int,
                       help="generator cap per twist step (0 disables)")
    group.add_argument("--seed", type=int)
    group.add_argument("--qiso-attempts", dest="qiso_attempts", type=int,
                       help="random combinations tried per quasi-isomorphism search")
    group.add_argument("--scope", choices=("A", "B"), help="A: P-twists, B: spherical twists over B")
    group.add_argument("--workers", type=int, help="worker processes for word enumeration")
    group.add_argument("--output", help="artifact path (JSON)")
    group.add_argument("--force", action="store_true", default=None, help="overwrite an existing artifact")
    group.add_argument("--config", dest="config_file", help="JSON config file")
    group.add_argument("--preset", choices=sorted(PRESETS), help="named parameter bundle")
    group.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    return parent


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ptwists",
        description="Exact twist engine: spherification, P-twists and ping-pong certificates",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    session = _session_flags()
    commands = parser.add_subparsers(dest="command", required=True)

    algebra = commands.add_parser("algebra", help="build or check an algebra")
    algebra_commands = algebra.add_subparsers(dest="action", required=True)
    algebra_commands.add_parser("build", parents=[session], help="write the algebra document")
    algebra_commands.add_parser("check", parents=[session], help="check dg-axioms")

    commands.add_parser("spherify", parents=[session], help="build B and check F P_i")

    twist = commands.add_parser("twist", help="apply twist words")
    twist_commands = twist.add_subparsers(dest="action", required=True)
    apply_parser = twist_commands.add_parser("apply", parents=[session], help="apply a word to an object")
    apply_parser.add_argument("--word", required=True, help="letters applied left to right, e.g. \"P1 P2'\"")
    apply_parser.add_argument("--object", dest="object_label", help="P1, P2, A (scope A) or S1, S2, B")

    certify = commands.add_parser("certify", help="emit certificates")
    certify_commands = certify.add_subparsers(dest="action", required=True)
    certify_commands.add_parser("free", parents=[session], help="no relations up to length L")
    certify_commands.add_parser("abelian", parents=[session], help="Z^2 behaviour, orthogonal case")

    search = commands.add_parser("search", help="exploratory relation search")
    search_commands = search.add_subparsers(dest="action", required=True)
    search_commands.add_parser("relations", parents=[session], help="candidate relations up to length L")

    replay = commands.add_parser("replay", parents=[session], help="rerun a certificate")
    replay.add_argument("certificate", help="certificate JSON written by certify/search")
    return parser


# ---------------------------------------------------------------------------
# Session
# ---------------------------------------------------------------------------

def configure_logging(verbose=False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def apply_session(args, base=None):
    """
    Defaults, then config file, then preset, then explicit flags.

    Args:
        base (dict): Values applied right after the defaults (replay uses
            the certificate's echoed config)
    """
    params.reset()
    if base:
        params.update(**base)
    if getattr(args, "config_file", None):
        loaded = SessionConfig.from_file(args.config_file)
        params.update(**{name: getattr(loaded, name) for name in loaded.as_dict()})
    if getattr(args, "preset", None):
        load_preset(args.preset)
    params.update(
        field=args.field,
        prime=args.prime,
        algebra=args.algebra,
        word_length=args.word_length,
        transition_exponent=args.transition_exponent,
        max_generators=args.max_generators,
        seed=args.seed,
        qiso_attempts=args.qiso_attempts,
        scope=args.scope,
        workers=args.workers,
        output=args.output,
        force=args.force,
    )
    params.show_progress = sys.stderr.isatty()
    return params.validate()


def load_algebra():
    return parse_algebra_spec(params.algebra, params.scalar_field())


def build_context(A=None):
    A = A or load_algebra()
    spherification = build_spherification_algebra(A) if params.scope == "B" else None
    return TwistContext(A, params.scope, spherification)


def emit(document):
    """Write a JSON artifact when --output is set."""
    if params.output:
        write_json_atomic(params.output, document, force=params.force)
        logger.info(f"WROTE {params.output}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_algebra_build(args):
    A = load_algebra()
    print(format_algebra(A))
    emit(algebra_to_dict(A))
    return EXIT_OK


def cmd_algebra_check(args):
    A = load_algebra()
    report = check_dg_axioms(A)
    extra = {}
    n, k = A.params.get("n"), A.params.get("k")
    if n is not None and k is not None and A.is_differential_zero():
        extra[f"calabi_yau({n * k})"] = check_cy_pairing(A, n * k)
    print(format_algebra(A))
    print(format_axiom_report(report, extra))
    document = algebra_to_dict(A)
    document["axioms"] = report.as_dict()
    document["checks"] = extra
    emit(document)
    return EXIT_OK if report.passed and all(extra.values()) else EXIT_FAILED


def cmd_spherify(args):
    A = load_algebra()
    S = build_spherification_algebra(A)
    spheres, weak = {}, []
    for i in range(A.num_idempotents):
        P = free_module(A, i, label=f"P{i + 1}")
        N = apply_F(S, P)
        spheres[N.name] = (hom_dims(N, N), check_spherical(S, N))
        weak.append(check_weak_spherification(S, P))
    growth = hom_growth(S) if A.num_idempotents > 1 else None
    print(format_spherification(S, spheres, weak, growth))
    document = spherification_to_dict(S)
    document["checks"] = {
        "spherical": {label: ok for label, (_, ok) in spheres.items()},
        "end_profiles": {label: {str(d): n for d, n in dims} for label, (dims, _) in spheres.items()},
        "weak_spherification": {w.label: w.status for w in weak},
    }
    if growth is not None:
        document["checks"]["hom_growth"] = {
            "base": {str(d): n for d, n in growth.base},
            "spherified": {str(d): n for d, n in growth.spherified},
            "bound_holds": growth.bound_holds,
        }
    emit(document)
    passed = S.report.passed and all(ok for _, ok in spheres.values()) and all(w.passed for w in weak)
    if growth is not None:
        passed = passed and growth.bound_holds
    return EXIT_OK if passed else EXIT_FAILED


def cmd_twist_apply(args):
    context = build_context()
    word = TwistWord.parse(args.word, context.alphabet)
    label = args.object_label or next(iter(context.objects))
    if label not in context.objects:
        raise ConfigurationError(
            f"unknown object '{label}' in scope {context.scope} ({', '.join(context.objects)})"
        )
    app = WordEngine(context).apply(word, label)
    M = app.module.renamed(f"({word}) {label}" if word.letters else label)
    profile = hom_profile(M, context.test_set)
    print(format_module(M))
    print(format_profile(profile))
    document = module_to_dict(M)
    document["word"] = str(word)
    document["object"] = label
    document["profile"] = profile.as_dict()
    document["peak_generators"] = app.peak_generators
    emit(document)
    return EXIT_OK


def run_mode(mode, context=None):
    """Run one certificate-producing mode with the current session."""
    context = context or build_context()
    L = params.word_length
    if mode == "free":
        return certify_no_relations(context, L)
    if mode == "abelian":
        return certify_abelian(context, L)
    if mode == "relations-search":
        return search_relations(context, L).certificate
    raise ConfigurationError(f"unknown certificate mode '{mode}'")


def finish_certificate(cert):
    print(format_certificate(cert))
    emit(cert.to_json())
    return cert.exit_code


def cmd_certify_free(args):
    return finish_certificate(run_mode("free"))


def cmd_certify_abelian(args):
    return finish_certificate(run_mode("abelian"))


def cmd_search_relations(args):
    context = build_context()
    search = search_relations(context, params.word_length)
    print(format_relation_search(search))
    emit(search.certificate.to_json())
    return EXIT_OK if not search.undetermined else EXIT_UNDETERMINED


def cmd_replay(args):
    """
    Rerun with the echoed configuration.

    At the recorded budget the new certificate must match byte for byte; at a
    smaller --L a certified original must still certify.
    """
    try:
        original = Certificate.from_dict(read_json(args.certificate))
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"{args.certificate} is not a certificate (missing {exc})") from None
    with open(args.certificate, encoding="utf-8") as handle:
        original_text = handle.read()
    budget = args.word_length
    args.word_length = None
    apply_session(args, base=original.config)
    if budget is not None:
        if budget > original.word_budget:
            raise ConfigurationError(f"replay budget {budget} exceeds the recorded L = {original.word_budget}")
        params.word_length = budget
    replayed = run_mode(original.mode)
    print(format_certificate(replayed))
    if budget is None or budget == original.word_budget:
        identical = replayed.to_json() == original_text
        print(f"REPLAY {'IDENTICAL' if identical else 'DIFFERS'}")
        return EXIT_OK if identical else EXIT_FAILED
    monotone = original.verdict != "certified" or replayed.verdict == "certified"
    print(f"REPLAY AT L = {budget}: {replayed.verdict.upper()}")
    return EXIT_OK if monotone else EXIT_FAILED


COMMANDS = {
    ("algebra", "build"): cmd_algebra_build,
    ("algebra", "check"): cmd_algebra_check,
    ("spherify", None): cmd_spherify,
    ("twist", "apply"): cmd_twist_apply,
    ("certify", "free"): cmd_certify_free,
    ("certify", "abelian"): cmd_certify_abelian,
    ("search", "relations"): cmd_search_relations,
    ("replay", None): cmd_replay,
}


def run(args):
    """
    Dispatch a parsed command line.

    Returns:
        int: Exit status
    """
    handler = COMMANDS[(args.command, getattr(args, "action", None))]
    try:
        if args.command != "replay":
            apply_session(args)
        return handler(args)
    except PTwistsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(getattr(args, "verbose", False))
    return run(args)
