"""Command-line front end.

Subcommands: ``simulate``, ``ratio``, ``distribution``, ``fluctuations`` and
``validate``. Tables go to stdout (or ``--output``) as CSV preceded by one
``#`` line echoing the full configuration. Floats are written with 17
significant digits so that identical configurations give identical bytes.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical failure.
"""

import argparse
import io
import math
import sys

import numpy as np

from . import mode as md
from . import moments as mo
from . import oracle, spectra
from .errors import CapExceededError, DomainError, PreconditionError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# moments are exported plainly up to exp(2 * this), beyond that as mantissas
_PLAIN_LOG_SCALE = 300.0


class UsageError(ValueError):
    pass


def fmt(x):
    """Fixed 17-significant-digit float formatting."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if x == 0.0:
        return "0"
    return "%.17g" % x


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def parse_initial(text):
    """``fock:N`` or ``gaussian:x2,p2,xp[,x0,p0]``."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "fock":
            return mo.Fock(int(rest))
        if kind == "gaussian":
            vals = [float(v) for v in rest.split(",")]
            if len(vals) not in (3, 5):
                raise UsageError("gaussian needs x2,p2,xp or x2,p2,xp,x0,p0")
            return mo.Gaussian(*vals)
    except (ValueError, DomainError) as exc:
        raise UsageError(f"bad initial state {text!r}: {exc}") from exc
    raise UsageError(f"initial state must be fock:N or gaussian:..., got {text!r}")


def _config_line(args):
    skip = {"func", "output"}
    items = [f"{k}={v}" for k, v in sorted(vars(args).items()) if k not in skip]
    return "# invosc " + " ".join(items)


def _table(header, rows, config):
    buf = io.StringIO()
    buf.write(config + "\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _units(args):
    """Return (profile, time unit) after applying --omega0/--tau."""
    tau = args.tau
    w0 = args.omega0
    if args.profile in ("power", "revival", "harmonic"):
        G = args.G
        if w0 is not None:
            G = w0 * (tau if tau is not None else 1.0)
        unit = tau if tau is not None else 1.0
        if G is None:
            raise UsageError(f"--G (or --omega0) is required for profile {args.profile}")
        if args.profile == "harmonic":
            return md.ConstantHarmonic(G), unit
        if args.n is None:
            raise UsageError("--n is required for power-law profiles")
        return md.PowerCrossing(args.n, G, revival=args.profile == "revival"), unit
    if args.profile == "jump":
        if args.rho is None:
            raise UsageError("--rho is required for the jump profile")
        unit = 1.0
        if w0 is not None:
            unit = 1.0 / w0
            if tau is not None and abs(w0 * tau - 1.0) > 1e-12:
                raise UsageError("the jump profile fixes omega0*tau = 1")
        elif tau is not None:
            unit = tau
        return md.SuddenJump(args.rho), unit
    raise UsageError(f"unknown profile {args.profile!r}")


def render_simulate(args):
    profile, unit = _units(args)
    init = parse_initial(args.initial)
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not args.t1 > args.t0 or args.t0 < -1.0:
        raise UsageError("need -1 <= t0 < t1")
    grid = list(np.linspace(args.t0, args.t1, args.steps))
    coeffs = md.transition_coefficients(profile)
    w0 = profile.omega0
    x2_0, p2_0, _, _, _ = mo.initial_moments(init, w0)
    e_start = 0.5 * (p2_0 + w0 * w0 * x2_0)

    orc = None
    if args.oracle:
        orc = oracle.integrate_mode(profile, -1.0, args.t1, args.tol, t_eval=[-1.0] + grid)
        offset = 0 if grid[0] == -1.0 else 1

    su = math.sqrt(unit)
    header = [
        "t", "eps_re", "eps_im", "epsdot_re", "epsdot_im", "x2", "p2", "xp",
        "energy", "ratio", "wronskian_abs_err", "log_scale",
    ]
    if orc is not None:
        header += ["oracle_eps_re", "oracle_eps_im", "oracle_epsdot_re", "oracle_epsdot_im", "oracle_dev"]
    rows = []
    for i, t in enumerate(grid):
        m = md.mode_at(profile, coeffs, t)
        ls = m.log_scale
        out_ls = ls if ls > _PLAIN_LOG_SCALE else 0.0
        e, ed = m.scaled()
        f1 = math.exp(ls - out_ls)
        f2 = f1 * f1
        e, ed = e * f1, ed * f1
        st = mo.propagate_second(init, m, scaled=True)
        en = mo.mean_energy_from_mode(init, m)
        energy = en.mantissa * math.exp(en.exponent - 2.0 * out_ls)
        werr = abs(m.wronskian() - 2j)
        row = [
            t * unit, e.real * su, e.imag * su, ed.real / su, ed.imag / su,
            st.x2 * f2 * unit, st.p2 * f2 / unit, st.xp * f2,
            energy / unit, energy / e_start, werr, out_ls,
        ]
        if orc is not None:
            j = i + offset
            g = math.exp(orc.log_scales[j] - out_ls)
            oe, oed = orc.samples[j][1] * g, orc.samples[j][2] * g
            size = max(1.0, abs(e), abs(ed) / w0)
            dev = max(abs(oe - e), abs(oed - ed) / w0) / size
            row += [oe.real * su, oe.imag * su, oed.real / su, oed.imag / su, dev]
        rows.append(row)
    return _table(header, rows, _config_line(args))


def render_ratio(args):
    if args.n is None or args.G is None:
        raise UsageError("ratio needs --n and --G")
    nu = 1.0 / (args.n + 2.0)
    t = args.t
    rows = []

    def add(name, val):
        if isinstance(val, mo.ScaledReal):
            rows.append([name, val.mantissa, val.exponent])
        else:
            rows.append([name, val, 0.0])

    add("exact", mo.energy_ratio_exact_scaled(nu, args.G, t, revival=args.revival))
    if t <= 0.0:
        add("pre", mo.adiabatic_prediction("pre", nu, args.G, t))
    add("crossing", mo.adiabatic_prediction("crossing", nu, args.G))
    if t > 0.0:
        if args.revival:
            add("revival", mo.adiabatic_prediction("revival", nu, args.G, t))
        else:
            add("invertedAsymptotic", mo.adiabatic_prediction("invertedAsymptotic", nu, args.G, t))
    buf = io.StringIO()
    buf.write(_config_line(args) + "\n")
    buf.write("quantity,mantissa,exponent\n")
    for name, m, e in rows:
        buf.write(f"{name},{fmt(m)},{fmt(e)}\n")
    return buf.getvalue()


def render_distribution(args):
    lo, hi = args.emin, args.emax
    if not hi > lo or args.points < 2:
        raise UsageError("need emin < emax and at least 2 points")
    pairs = [(n, r) for n in args.n for r in args.rho]
    params = [spectra.SpectralParams(n, r) for n, r in pairs]
    grid = np.linspace(lo, hi, args.points)
    header = ["eTilde"] + [f"P{n}_rho{r:g}" for n, r in pairs]
    rows = [[float(e)] + [spectra.density(p, float(e)) for p in params] for e in grid]
    return _table(header, rows, _config_line(args))


def render_fluctuations(args):
    rows = []
    if args.profile == "jump":
        if args.rho is None:
            raise UsageError("--rho is required for the jump profile")
        prof = md.SuddenJump(args.rho)
        m = md.mode_at(prof, None, args.t if args.t >= 0.0 else 0.0)
        for N in args.N:
            mean = mo.jump_energy_fock(N, args.rho)
            e2, var = mo.energy_variance_fock("invertedJump", N, rho=args.rho)
            rows.append([N, "closed", mean, e2, var, var / mean**2 if mean else math.inf])
            e2x, varx = mo.energy_variance_fock("exact", N, mode=m)
            rows.append([N, "exact", mean, e2x, varx, varx / mean**2 if mean else math.inf])
    elif args.profile == "revival":
        if args.n is None or args.G is None:
            raise UsageError("revival needs --n and --G")
        if not args.t > 0.0:
            raise UsageError("revival fluctuations need t > 0")
        prof = md.PowerCrossing(args.n, args.G, revival=True)
        u = md.revival_u(prof.nu)
        omega = args.t ** (0.5 * args.n)
        m = md.mode_at(prof, None, args.t)
        A, _, _ = mo.quadratic_forms(m)
        for N in args.N:
            mean = omega * mo.beta_coefficient(*u) * (N + 0.5)
            e2, var = mo.energy_variance_fock("adiabaticRevival", N, u=u, omega=omega)
            rows.append([N, "adiabatic", mean, e2, var, var / mean**2])
            rows.append([N, "adiabatic_closed_ratio", mean, e2, var, mo.sigma_ratio_adiabatic(u, N)])
            mx = 0.5 * A / prof.omega0 * (N + 0.5)
            e2x, varx = mo.energy_variance_fock("exact", N, mode=m)
            rows.append([N, "exact", mx, e2x, varx, varx / mx**2])
    else:
        raise UsageError("fluctuations support --profile jump or revival")
    buf = io.StringIO()
    buf.write(_config_line(args) + "\n")
    buf.write("N,source,mean,e2,variance,sigma_ratio\n")
    for N, src, *vals in rows:
        buf.write(f"{N},{src}," + ",".join("inf" if v == math.inf else fmt(v) for v in vals) + "\n")
    return buf.getvalue()


def render_validate(args):
    from . import validation

    checks = validation.run_all(args.criteria)
    return validation.format_report(checks), all(c.passed for c in checks)


def _emit(text, path):
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args):
    _emit(render_simulate(args), args.output)
    return EXIT_OK


def cmd_ratio(args):
    _emit(render_ratio(args), args.output)
    return EXIT_OK


def cmd_distribution(args):
    _emit(render_distribution(args), args.output)
    return EXIT_OK


def cmd_fluctuations(args):
    _emit(render_fluctuations(args), args.output)
    return EXIT_OK


def cmd_validate(args):
    text, ok = render_validate(args)
    _emit(text, args.output)
    return EXIT_OK if ok else EXIT_VALIDATION


def build_parser():
    p = argparse.ArgumentParser(
        prog="invosc",
        description="Quantum oscillator driven through zero stiffness into the inverted regime.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", default=None, help="write CSV here instead of stdout")

    def profile_flags(sp, choices):
        sp.add_argument("--profile", choices=choices, required=True)
        sp.add_argument("--n", type=float, default=None, help="power-law exponent")
        sp.add_argument("--G", type=float, default=None, help="omega0 * tau")
        sp.add_argument("--rho", type=float, default=None, help="kappa / omega0 for the jump")

    s = sub.add_parser("simulate", help="mode, moments and energy on a time grid")
    profile_flags(s, ["power", "revival", "jump", "harmonic"])
    s.add_argument("--initial", default="fock:0", help="fock:N or gaussian:x2,p2,xp[,x0,p0]")
    s.add_argument("--t0", type=float, default=-1.0)
    s.add_argument("--t1", type=float, default=2.0)
    s.add_argument("--steps", type=int, default=301)
    s.add_argument("--oracle", action="store_true", help="add ODE-integrated mode columns")
    s.add_argument("--tol", type=float, default=1e-10, help="oracle local error tolerance")
    s.add_argument("--omega0", type=float, default=None, help="physical omega0 for output units")
    s.add_argument("--tau", type=float, default=None, help="physical tau for output units")
    common(s)
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("ratio", help="exact energy ratio and adiabatic predictions at one t")
    r.add_argument("--n", type=float, default=None)
    r.add_argument("--G", type=float, default=None)
    r.add_argument("--t", type=float, required=True)
    r.add_argument("--revival", action="store_true", help="stiffness returns positive after t = 0")
    common(r)
    r.set_defaults(func=cmd_ratio)

    d = sub.add_parser("distribution", help="energy densities after a sudden jump")
    d.add_argument("--n", type=_int_list, required=True, help="Fock indices, comma separated")
    d.add_argument("--rho", type=_float_list, default=[1.0], help="kappa/omega0 values")
    d.add_argument("--emin", type=float, default=-12.0)
    d.add_argument("--emax", type=float, default=12.0)
    d.add_argument("--points", type=int, default=481)
    common(d)
    d.set_defaults(func=cmd_distribution)

    f = sub.add_parser("fluctuations", help="<E^2> and energy variance for Fock states")
    profile_flags(f, ["jump", "revival"])
    f.add_argument("--N", type=_int_list, default=[0], help="Fock indices")
    f.add_argument("--t", type=float, default=1.5)
    common(f)
    f.set_defaults(func=cmd_fluctuations)

    v = sub.add_parser("validate", help="run the acceptance checks")
    v.add_argument("--criteria", type=_int_list, default=None, help="subset of criteria 1-12")
    common(v)
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, CapExceededError, PreconditionError) as exc:
        print(f"invosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, OverflowError) as exc:
        print(f"invosc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
