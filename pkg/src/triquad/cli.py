"""Command-line front end.

Exit codes: 0 all checks pass, 1 verification mismatch, 2 usage error,
3 resource limit (memory or an internal enumeration cap).
"""

import json
import sys

import click

from . import escalation, trisums
from . import verify as verify_mod
from .goodvec import b_set, pme_certificate
from .qforms import genus_classes, parse_form

FORMATS = click.Choice(["json", "csv", "text"])


def _parse_coeffs(text):
    try:
        coeffs = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise click.UsageError("coefficients must be comma-separated integers")
    if not coeffs or any(c < 1 for c in coeffs):
        raise click.UsageError("coefficients must be positive integers")
    if list(coeffs) != sorted(coeffs):
        click.echo("warning: coefficients reordered ascending", err=True)
        coeffs = tuple(sorted(coeffs))
    return coeffs


def _parse_matrix(text):
    try:
        rows = json.loads(text)
        return tuple(tuple(int(x) for x in r) for r in rows)
    except (ValueError, TypeError):
        raise click.UsageError("expected a JSON 3x3 integer matrix")


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except MemoryError:
        click.echo("error: out of memory", err=True)
        sys.exit(3)
    except RuntimeError as e:
        msg = str(e)
        if "cap" in msg or "ceiling" in msg:
            click.echo("error: %s" % msg, err=True)
            sys.exit(3)
        raise


def _emit_set(values):
    return "{" + ",".join(str(v) for v in values) + "}"


def _emit_reports(reports, fmt):
    if fmt == "json":
        click.echo(json.dumps({"schema": 1, "reports": reports}, indent=1,
                              default=list))
    elif fmt == "csv":
        click.echo("case_id,check,expected,computed,status")
        for r in reports:
            click.echo("%s,%s,%s,%s,%s" % (
                r["case_id"], r["check"],
                json.dumps(r["expected"], default=list).replace(",", ";"),
                json.dumps(r["computed"], default=list).replace(",", ";"),
                r["status"]))
    else:
        for r in reports:
            line = "%s %s %s" % (r["case_id"], r["check"], r["status"].upper())
            if r["status"] != "pass":
                line += " expected=%r computed=%r" % (r["expected"],
                                                      r["computed"])
            click.echo(line)


@click.group()
def main():
    """Triangular-number representability toolkit."""


@main.command("sieve")
@click.argument("coeffs")
@click.option("--bound", default=1000, type=int)
@click.option("--format", "fmt", default="text", type=FORMATS)
def cmd_sieve(coeffs, bound, fmt):
    """Unrepresented positive integers of a sum up to --bound."""
    cs = _parse_coeffs(coeffs)
    sv = _guard(trisums.sieve, cs, bound)
    missing = sorted(n for n in sv.missing() if n > 0)
    if fmt == "json":
        click.echo(json.dumps({"schema": 1, "coeffs": list(cs),
                               "bound": bound, "missing": missing}))
    elif fmt == "csv":
        click.echo("n")
        for n in missing:
            click.echo(str(n))
    else:
        click.echo(_emit_set(missing))


@main.command("truants")
@click.argument("coeffs")
@click.option("--count", default=2, type=int)
@click.option("--bound", default=10000, type=int)
@click.option("--format", "fmt", default="text", type=FORMATS)
def cmd_truants(coeffs, count, bound, fmt):
    """First --count unrepresented integers of a sum."""
    cs = _parse_coeffs(coeffs)
    res = _guard(trisums.truants, cs, count, bound)
    if fmt == "json":
        click.echo(json.dumps({"schema": 1, "coeffs": list(cs),
                               "truants": list(res.truants),
                               "exhausted": res.exhausted}))
    else:
        tail = " (bound exhausted)" if res.exhausted else ""
        click.echo(" ".join(str(t) for t in res.truants) + tail)


def _summary_line(summary):
    names = {3: "ternary", 4: "quaternary", 5: "quinary"}
    parts = []
    for k in sorted(summary["proper_by_arity"]):
        part = "%s=%d" % (names.get(k, "%d-ary" % k),
                          summary["proper_by_arity"][k])
        if k == 3 and summary["conditional"]:
            part += " conditional"
        parts.append(part)
    return "proper=%d (%s)" % (summary["counts"]["proper"], ", ".join(parts))


@main.command("escalate")
@click.option("--exception", "m", required=True, type=int)
@click.option("--bound", default=10 ** 5, type=int)
@click.option("--max-k", default=8, type=int)
@click.option("--format", "fmt", default="text", type=FORMATS)
def cmd_escalate(m, bound, max_k, fmt):
    """All candidates for the given exception, with a summary line."""
    if m not in escalation.EXCEPTIONS:
        raise click.UsageError("exception must be one of %s"
                               % (escalation.EXCEPTIONS,))
    records = _guard(escalation.escalate, m, bound, max_k)
    summary = escalation.summarize(records)
    if fmt == "json":
        click.echo(json.dumps(
            {"schema": 1, "exception": m, "bound": bound,
             "candidates": [r.to_dict() for r in records],
             "summary": summary}, indent=1))
    elif fmt == "csv":
        click.echo("coeffs,classification,conditional")
        for r in records:
            click.echo("%s,%s,%s" % ("-".join(str(c) for c in r.coeffs),
                                     r.classification, r.conditional))
    else:
        for r in records:
            flag = " conditional" if r.conditional else ""
            click.echo("%s %s%s" % (",".join(str(c) for c in r.coeffs),
                                    r.classification, flag))
        click.echo(_summary_line(summary))


@main.command("classify")
@click.argument("coeffs")
@click.option("--exception", "m", required=True, type=int)
@click.option("--bound", default=10 ** 4, type=int)
def cmd_classify(coeffs, m, bound):
    """Classification of one sum against the given exception."""
    cs = _parse_coeffs(coeffs)
    if m not in escalation.EXCEPTIONS:
        raise click.UsageError("exception must be one of %s"
                               % (escalation.EXCEPTIONS,))
    rec = _guard(escalation.classify, cs, m, bound)
    flag = " conditional" if rec.conditional else ""
    click.echo("%s%s (bound %d)" % (rec.classification, flag, bound))


@main.command("genus")
@click.argument("form")
def cmd_genus(form):
    """Genus classes of a positive definite ternary form."""
    try:
        f = parse_form(form)
    except ValueError as e:
        raise click.UsageError(str(e))
    gs = _guard(genus_classes, f)
    click.echo("h=%d" % gs.class_count)
    for c in gs.classes:
        click.echo(str(c))


@main.command("bset")
@click.argument("f_form")
@click.argument("g_form")
@click.argument("d", type=int)
@click.argument("a", type=int)
def cmd_bset(f_form, g_form, d, a):
    """Bad vectors for the pair (f, g) at modulus d, residue class a."""
    try:
        f = parse_form(f_form)
        g = parse_form(g_form)
    except ValueError as e:
        raise click.UsageError(str(e))
    bs = _guard(b_set, f, g, d, a)
    click.echo("size=%d" % len(bs))
    for v in bs.members:
        click.echo("(%d,%d,%d)" % v)


@main.command("pme")
@click.argument("t_matrix")
@click.argument("g_form")
@click.argument("d", type=int)
@click.argument("a", type=int)
@click.option("--f-form", default=None)
def cmd_pme(t_matrix, g_form, d, a, f_form):
    """Certificate for a transfer matrix T against g at (d, a)."""
    T = _parse_matrix(t_matrix)
    try:
        g = parse_form(g_form)
        f = parse_form(f_form) if f_form else None
    except ValueError as e:
        raise click.UsageError(str(e))
    cert = _guard(pme_certificate, T, g, d, a, f)
    click.echo("ok=%s" % cert.ok)
    if cert.failures:
        click.echo("failures: " + ", ".join(cert.failures))
    for z, q in zip(cert.eigenvectors, cert.values):
        click.echo("eigenvector (%d,%d,%d) value %d" % (z + (q,)))
    if not cert.ok:
        sys.exit(1)


@main.command("verify")
@click.argument("scope", default="all")
@click.option("--bound", default=verify_mod.DEFAULT_BOUND, type=int)
@click.option("--jobs", default=1, type=int)
@click.option("--format", "fmt", default="text", type=FORMATS)
@click.option("--data", default=None, type=click.Path(exists=True))
def cmd_verify(scope, bound, jobs, fmt, data):
    """Run proof checks: all, table:<case-id-prefix>, candidate:<coeffs>."""
    if scope.startswith("candidate:"):
        cs = _parse_coeffs(scope.split(":", 1)[1])
        rep = _guard(verify_mod.verify_candidate_pipeline, cs, None, bound)
        missing = rep["computed"]
        ok = len(missing) == 1
        click.echo("exceptions=%s %s" % (_emit_set(missing),
                                         "PASS" if ok else "FAIL"))
        sys.exit(0 if ok else 1)
    tables = _guard(verify_mod.load_tables, data)
    if scope.startswith("table:"):
        prefix = scope.split(":", 1)[1]
        rows = [r for r in tables["rows"]
                if r["case_id"] == prefix or r["case_id"].startswith(prefix)]
        if not rows:
            raise click.UsageError("no table row matches %r" % prefix)
        reports = []
        for row in rows:
            reports.extend(_guard(verify_mod.verify_table_row, row, bound))
        reports.sort(key=lambda r: (r["case_id"], r["check"]))
    elif scope == "all":
        reports = _guard(verify_mod.verify_all, bound, tables, jobs)
    else:
        raise click.UsageError(
            "scope must be all, table:<id>, or candidate:<coeffs>")
    _emit_reports(reports, fmt)
    fails = [r for r in reports if r["status"] != "pass"]
    if fails:
        click.echo("FAIL first=%s:%s" % (fails[0]["case_id"],
                                         fails[0]["check"]), err=True)
        sys.exit(1)


@main.command("conjecture")
@click.option("--bound", default=10 ** 6, type=int)
@click.option("--format", "fmt", default="text", type=FORMATS)
def cmd_conjecture(bound, fmt):
    """Sweep the (1,4,5) sum for its single missing value."""
    rep = _guard(verify_mod.conjecture_sweep, bound)
    if fmt == "json":
        click.echo(json.dumps(rep))
    else:
        click.echo("%s (%ss at bound %d)" % (_emit_set(rep["computed"]),
                                             rep["seconds"], rep["bound"]))
    if rep["status"] != "pass":
        sys.exit(1)


if __name__ == "__main__":
    main()
