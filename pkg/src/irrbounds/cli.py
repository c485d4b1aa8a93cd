"""Command-line front end.

Commands: bound, table, verify, omega, search.  Formats: text (aligned
columns), csv, json.  Exit codes: 0 success, 1 usage/validation error,
2 inapplicable parameters, 3 integrality verification failure.

All numeric output is fixed-format at a requested number of significant
digits (6 by default, the table precision), so identical invocations are
byte-identical and diffable.  Exact rationals are serialized as "num/den"
strings, never floats.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click
import mpmath as mp

from .errors import DomainError, IntegralityError, SieveCapacityError
from .exact_arith import format_rat
from .forms import Params
from .measures import (MU2_PARAMS, BoundResult, headline_table,
                       is_degenerate, mu2_bound, mu_bound, predicted_decay,
                       search_params, verify_forms)
from .omega import compute_omega

FORMATS = click.Choice(["text", "csv", "json"])


def fmt_sig(x, sig: int = 6) -> str:
    """Fixed rendering of an mpf at ``sig`` significant digits."""
    if x is None:
        return ""
    if mp.isnan(x) or mp.isinf(x):
        return str(x)
    return mp.nstr(mp.mpf(x), sig, strip_zeros=False)


def _echo_rows(rows: list[dict], fmt: str, order: list[str]) -> None:
    if fmt == "json":
        click.echo(json.dumps(rows, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=order, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: ("" if r.get(k) is None else r[k]) for k in order})
        click.echo(buf.getvalue(), nl=False)
    else:
        widths = {c: max(len(c), *(len(str(r.get(c, "") if r.get(c) is not None else ""))
                                   for r in rows)) for c in order}
        click.echo("  ".join(c.rjust(widths[c]) for c in order))
        for r in rows:
            click.echo("  ".join(
                str(r.get(c, "") if r.get(c) is not None else "").rjust(widths[c])
                for c in order))


@click.group()
def cli() -> None:
    """Upper bounds on the irrationality and non-quadraticity measures of
    alpha_k = sqrt(2k+1) * ln((sqrt(2k+1)-1)/(sqrt(2k+1)+1))."""


@cli.command("bound")
@click.option("--k", type=int, required=True, help="Index of alpha_k.")
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--quadratic", is_flag=True,
              help="Non-quadraticity bound instead of irrationality.")
@click.option("--digits", type=int, default=60, show_default=True,
              help="Working precision (decimal digits).")
@click.option("--print-digits", type=int, default=6, show_default=True,
              help="Significant digits shown.")
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
def cmd_bound(k, a, b, quadratic, digits, print_digits, fmt):
    """Compute one measure bound for alpha_k with parameters (a, b)."""
    res = (mu2_bound if quadratic else mu_bound)(k, a, b, digits)
    row = _bound_row(res, print_digits)
    if fmt == "json":
        click.echo(json.dumps(row, indent=2))
    elif fmt == "csv":
        _echo_rows([row], "csv", list(row))
    else:
        label = "mu2" if quadratic else "mu"
        if res.degenerate:
            click.echo(f"note: 2k+1 = {2*k+1} is a perfect square; alpha_{k} "
                       "is a rational multiple of the log of a rational")
        if not res.applicable:
            click.echo(f"{label}(alpha_{k}) bound not applicable at "
                       f"a={a}, b={b}: M2+K+N = {fmt_sig(res.M2 + res.K + res.N, print_digits)} >= 0")
        else:
            click.echo(f"{label}(alpha_{k}) <= {fmt_sig(res.bound, print_digits)}   "
                       f"(a={a}, b={b})")
            click.echo(f"  M1 = {fmt_sig(res.M1, print_digits)}   "
                       f"M2 = {fmt_sig(res.M2, print_digits)}   "
                       f"K = {fmt_sig(res.K, print_digits)}   "
                       f"N = {fmt_sig(res.N, print_digits)}")
    if not res.applicable:
        raise SystemExit(2)


def _bound_row(res: BoundResult, sig: int) -> dict:
    return {
        "kind": res.kind, "k": res.k, "a": res.a, "b": res.b,
        "bound": float(fmt_sig(res.bound, sig)) if res.applicable else None,
        "applicable": res.applicable,
        "degenerate": res.degenerate,
        "M1": float(fmt_sig(res.M1, sig)),
        "M2": float(fmt_sig(res.M2, sig)),
        "K": float(fmt_sig(res.K, sig)),
        "N": float(fmt_sig(res.N, sig)),
        "digits": res.digits,
    }


@cli.command("table")
@click.option("--paper", is_flag=True,
              help="Reproduce the headline table (k = 3, 5, 6, ..., 12).")
@click.option("--k", "single_k", type=int, default=None,
              help="Single-k row with the default parameter choices.")
@click.option("--digits", type=int, default=60, show_default=True)
@click.option("--print-digits", type=int, default=6, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
def cmd_table(paper, single_k, digits, print_digits, fmt):
    """Tabulate bounds over k with the table's parameter choices."""
    if paper == (single_k is not None):
        raise click.UsageError("pass exactly one of --paper or --k")
    rows = []
    if paper:
        table = headline_table(digits)
    else:
        mu = mu_bound(single_k, 1, 7, digits)
        mu2 = None
        if single_k in MU2_PARAMS:
            a2, b2 = MU2_PARAMS[single_k]
            mu2 = mu2_bound(single_k, a2, b2, digits)
        from .measures import TableRow
        table = [TableRow(k=single_k, mu=mu, mu2=mu2)]
    for tr in table:
        row = {
            "k": tr.k,
            "mu": float(fmt_sig(tr.mu.bound, print_digits)) if tr.mu.applicable else None,
            "mu2": (float(fmt_sig(tr.mu2.bound, print_digits))
                    if tr.mu2 is not None and tr.mu2.applicable else None),
            "a_mu": tr.mu.a, "b_mu": tr.mu.b,
            "a_mu2": tr.mu2.a if tr.mu2 is not None else None,
            "b_mu2": tr.mu2.b if tr.mu2 is not None else None,
        }
        if fmt == "text" and is_degenerate(tr.k):
            row["note"] = "degenerate: 2k+1 is a perfect square"
        rows.append(row)
    order = ["k", "mu", "mu2", "a_mu", "b_mu", "a_mu2", "b_mu2"]
    if fmt == "text" and any("note" in r for r in rows):
        order.append("note")
    _echo_rows(rows, fmt, order)


@cli.command("verify")
@click.option("--k", type=int, required=True)
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--n", "n_list", type=str, required=True,
              help="Comma-separated odd n values, e.g. 1,3,5.")
@click.option("--quadratic", is_flag=True,
              help="Also show the quadratic-form columns X, Y, Z.")
@click.option("--digits", type=int, default=60, show_default=True)
@click.option("--print-digits", type=int, default=6, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
def cmd_verify(k, a, b, n_list, quadratic, digits, print_digits, fmt):
    """Run the exact integrality pipeline and report the form decay."""
    try:
        ns = [int(s) for s in n_list.split(",") if s.strip()]
    except ValueError as exc:
        raise click.UsageError(f"bad --n list {n_list!r}") from exc
    if not ns:
        raise click.UsageError("empty --n list")
    for n in ns:
        Params(k=k, a=a, b=b, n=n)
    rows = verify_forms(k, a, b, ns, digits)
    pred_l, pred_m = predicted_decay(k, a, b, digits)
    out = []
    for r in rows:
        entry = {
            "n": r.n, "P": str(r.P), "Q": str(r.Q),
            "decay_linear": float(fmt_sig(r.decay_linear, print_digits)),
        }
        if quadratic:
            entry.update({"X": str(r.X), "Y": str(r.Y), "Z": str(r.Z),
                          "decay_quadratic": float(fmt_sig(r.decay_quadratic, print_digits))})
        entry["integral"] = True
        out.append(entry)
    order = list(out[0])
    _echo_rows(out, fmt, order)
    if fmt == "text":
        click.echo(f"predicted decay: linear {fmt_sig(pred_l, print_digits)}"
                   f", quadratic {fmt_sig(pred_m, print_digits)}")
        click.echo(f"all integrality checks passed for n in {ns}")


@cli.command("omega")
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--digits", type=int, default=60, show_default=True)
@click.option("--print-digits", type=int, default=6, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
def cmd_omega(a, b, digits, print_digits, fmt):
    """Print the certifying set as exact fraction intervals."""
    from .omega import n_constants

    report = compute_omega(a, b)
    n1, n2 = n_constants(a, b, report.omega, digits)
    with mp.workdps(digits + 10):
        psi_sum = +(b - n1)  # the digamma-difference total over the components
    if fmt == "json":
        payload = {
            "a": a, "b": b,
            "intervals": [{"lo": format_rat(iv.lo), "hi": format_rat(iv.hi),
                           "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed}
                          for iv in report.omega],
            "measure": format_rat(report.omega.total_measure()),
            "psi_sum": float(fmt_sig(psi_sum, print_digits)),
            "N1": float(fmt_sig(n1, print_digits)),
            "N2": float(fmt_sig(n2, print_digits)),
        }
        click.echo(json.dumps(payload, indent=2))
    elif fmt == "csv":
        rows = [{"lo": format_rat(iv.lo), "hi": format_rat(iv.hi),
                 "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed}
                for iv in report.omega]
        _echo_rows(rows, "csv", ["lo", "hi", "lo_closed", "hi_closed"])
    else:
        click.echo(f"Omega({a}, {b}) = {report.omega}")
        click.echo(f"measure = {format_rat(report.omega.total_measure())}")
        click.echo(f"psi sum = {fmt_sig(psi_sum, print_digits)}   "
                   f"N1 = {fmt_sig(n1, print_digits)}   N2 = {fmt_sig(n2, print_digits)}")


@cli.command("search")
@click.option("--k", type=int, required=True)
@click.option("--a-max", type=int, default=2, show_default=True)
@click.option("--b-max", type=int, default=15, show_default=True)
@click.option("--quadratic", is_flag=True)
@click.option("--digits", type=int, default=60, show_default=True)
@click.option("--print-digits", type=int, default=6, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
def cmd_search(k, a_max, b_max, quadratic, digits, print_digits, fmt):
    """Grid-search (a, b) and rank the applicable bounds."""
    results = search_params(k, a_max, b_max, digits, quadratic=quadratic)
    if not results:
        click.echo("no applicable (a, b) on the grid", err=True)
        raise SystemExit(2)
    rows = [_bound_row(r, print_digits) for r in results]
    order = ["kind", "k", "a", "b", "bound", "applicable", "degenerate",
             "M1", "M2", "K", "N", "digits"]
    _echo_rows(rows, fmt, order)


def main(argv=None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        cli.main(args=argv, prog_name="irrbounds", standalone_mode=False)
        return 0
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except IntegralityError as exc:
        click.echo(f"integrality failure: {exc}", err=True)
        return 3
    except (ValueError, DomainError, SieveCapacityError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
