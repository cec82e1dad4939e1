"""
Plain-text summaries printed by the command line front end

Functions:
    format_algebra, format_axiom_report, format_module, format_profile,
    format_spherification, format_certificate, format_relation_search
"""

from ptwists.model.linalg import GradedDimVector

RULE = "-" * 60


def _dims(dims: GradedDimVector):
    return str(dims) if dims.items else "{}"


def format_algebra(A):
    lines = [
        f"ALGEBRA {A.name}",
        f"  field:       {A.field_name}",
        f"  dimension:   {A.dim}",
        f"  degrees:     {_dims(GradedDimVector.from_mapping(A.degree_dims()))}",
        f"  idempotents: {', '.join(A.labels[e] for e in A.idempotents)}",
    ]
    if A.marked:
        lines.append("  marked:      " + ", ".join(
            f"{name} = {A.format_element(x)}" for name, x in sorted(A.marked.items())
        ))
    return "\n".join(lines)


def format_axiom_report(report, extra=None):
    lines = [f"AXIOMS {report.algebra}: {'PASSED' if report.passed else 'FAILED'}"]
    for name, verdict in report.verdicts.items():
        status = "ok" if verdict.passed else f"FAILED at {verdict.witness}"
        lines.append(f"  {name:<20} {status}")
    for name, passed in (extra or {}).items():
        lines.append(f"  {name:<20} {'ok' if passed else 'FAILED'}")
    return "\n".join(lines)


def format_module(M):
    lines = [f"MODULE {M.name}: {M.rank} generators over {M.algebra.name}"]
    for g in M.generators:
        lines.append(f"  {g.label:<16} e{g.idempotent + 1}  degree {g.degree}")
    for (i, j), entry in sorted(M.delta.items()):
        lines.append(f"  delta[{i},{j}] = {M.algebra.format_element(entry)}")
    return "\n".join(lines)


def format_profile(profile):
    return "\n".join(f"  hom*({label}, -) = {_dims(dims)}" for label, dims in profile.entries)


def format_spherification(S, sphere_checks, weak, growth):
    """
    Args:
        S (SpherificationData): The built pair A -> B
        sphere_checks (dict): Object label -> (End profile, spherical?)
        weak (list): WeakSpherification verdicts
        growth (HomGrowth): hom*(P_1, P_2) against hom*(F P_1, F P_2), or None
    """
    lines = [
        f"SPHERIFICATION {S.extended.name}",
        f"  k = {S.k}, deg eps = {S.k - 1}, dimension {S.extended.dim}",
        format_axiom_report(S.report),
        RULE,
    ]
    for label, (dims, ok) in sphere_checks.items():
        lines.append(f"  End*({label}) = {_dims(dims)}  {'spherical' if ok else 'NOT spherical'}")
    for verdict in weak:
        lines.append(
            f"  cotwist({verdict.label}) = {verdict.label}[-{S.k}]: {verdict.status}, "
            f"alpha {'nonzero' if verdict.alpha_nonzero else 'ZERO'}"
        )
    if growth is not None:
        lines.append(f"  hom*(P1, P2) = {_dims(growth.base)}, hom*(FP1, FP2) = {_dims(growth.spherified)}"
                     f"  bound {'holds' if growth.bound_holds else 'FAILS'}")
    return "\n".join(lines)


def format_certificate(cert):
    lines = [
        f"CERTIFICATE {cert.mode} over {cert.algebra.get('name')} (scope {cert.scope}, L = {cert.word_budget})",
        f"  verdict:      {cert.verdict.upper()}",
        f"  records:      {len(cert.records)}",
        f"  transitions:  {len(cert.transitions)}",
        f"  undetermined: {len(cert.undetermined)}",
        f"  failures:     {len(cert.failures)}",
    ]
    if not cert.conclusive:
        lines.append("  regime is non-conclusive")
    for key, value in sorted(cert.summary.items()):
        lines.append(f"  {key}: {value}")
    for item in cert.failures[:10]:
        lines.append(f"  FAILED {item}")
    for item in cert.undetermined[:10]:
        lines.append(f"  UNDETERMINED {item}")
    hidden = max(0, len(cert.failures) - 10) + max(0, len(cert.undetermined) - 10)
    if hidden:
        lines.append(f"  ... {hidden} more in the JSON certificate")
    return "\n".join(lines)


def format_relation_search(search):
    lines = [f"RELATION SEARCH: {len(search.candidates)} candidates, {len(search.undetermined)} undetermined"]
    lines.extend(f"  candidate  {word}" for word in search.candidates)
    lines.extend(f"  undetermined  {word}" for word in search.undetermined[:10])
    return "\n".join(lines)
