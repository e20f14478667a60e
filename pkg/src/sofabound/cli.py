"""Command-line front end: an interactive session or a one-shot batch run."""

import argparse
import math
import sys
from fractions import Fraction

from . import __version__
from ._backend import to_fraction
from .bnb import Engine
from .profile import ProfileError, load_profile

HELP = """Commands:
  load <file>   load a profile (a path, or a bundled name such as example-30-45-60)
  settings      show the loaded settings
  run           run the branch and bound until a stop criterion is met
  help          show this text
  quit          leave
"""


def _fixed3(q, up):
    """``q`` rounded to 3 decimals toward +inf (``up``) or -inf."""
    f = to_fraction(q) * 1000
    n = math.ceil(f) if up else math.floor(f)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 1000}.{n % 1000:03d}"


def _clock(seconds):
    s = int(seconds)
    return f"{s // 3600}:{s // 60 % 60:02d}:{s % 60:02d}"


def format_report(iteration, upper, lower=None, elapsed=0.0, verbose=False):
    line = f"<iterations={iteration} | upper bound={_fixed3(upper, True)} | time={_clock(elapsed)}"
    if verbose and lower is not None:
        line += f" | lower bound={_fixed3(lower, False)}"
    return line + ">"


def _degrees(triple):
    a, b, _ = triple
    return f"{math.degrees(math.atan2(a, b)):.4f}".rstrip("0").rstrip(".")


def _decimal(q):
    f = Fraction(q)
    d = f.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return str(f)
    digits = 0
    while (f * 10**digits).denominator != 1:
        digits += 1
    return f"{float(f):.{digits}f}" if digits else str(f.numerator)


def format_settings(profile):
    lines = ["", f"Number of corridors: {len(profile.corridor_triples)}", ""]
    for i, (a, b, c) in enumerate(profile.corridor_triples, 1):
        lines.append(f"Slope {i}:{a:>10}{b:>8}{c:>8}     (angle: {_degrees((a, b, c))} deg)")
    for label, t in (("Minimum", profile.min_final_triple), ("Maximum", profile.max_final_triple)):
        lines.append(f"{label} final slope: {t[0]} {t[1]} {t[2]}\t            (angle: {_degrees(t)} deg)")
    lines.append("")
    lines.append(f"Reporting progress every:\t\t{_decimal(profile.report_granularity)} decrease in upper bound")
    return "\n".join(lines)


class ReportFilter:
    """Decides which iterations get a report line.

    The first iteration always does; after that a line is printed once the
    printed upper bound has dropped by at least the granularity.
    """

    def __init__(self, granularity):
        self.granularity = Fraction(granularity)
        self.last = None

    def wants(self, upper):
        shown = Fraction(_fixed3(upper, True))
        if self.last is None or shown <= self.last - self.granularity:
            self.last = shown
            return True
        return False


class Session:
    def __init__(self, out=None, verbose=False):
        self.out = out if out is not None else sys.stdout
        self.verbose = verbose
        self.profile = None
        self.profile_name = None

    def say(self, text=""):
        print(text, file=self.out, flush=True)

    def execute(self, line):
        """Run one command line; return False when the session should end."""
        words = line.split()
        if not words:
            return True
        cmd, args = words[0].lower(), words[1:]
        if cmd in ("quit", "exit"):
            return False
        if cmd == "help":
            self.say(HELP.rstrip())
        elif cmd == "load":
            if len(args) != 1:
                self.say("Error: usage is 'load <file>'.")
            else:
                self.load(args[0])
        elif cmd == "settings":
            if self.profile is None:
                self.say("Error: no profile loaded; use 'load <file>' first.")
            else:
                self.say(format_settings(self.profile))
        elif cmd == "run":
            if self.profile is None:
                self.say("Error: no profile loaded; use 'load <file>' first.")
            else:
                self.run()
        else:
            self.say(f"Unknown command {cmd!r}. Type \"help\" for instructions.")
        return True

    def load(self, name):
        try:
            self.profile = load_profile(name)
        except (OSError, ProfileError) as exc:
            self.say(f"Error loading '{name}': {exc}")
            return False
        self.profile_name = name
        self.say(f"File '{name}' loaded successfully.")
        return True

    def run(self):
        profile = self.profile
        spec, config = profile.spec(), profile.config()
        engine = Engine(spec, config)
        reports = ReportFilter(config.report_granularity)
        self.say("<iterations=0>")
        reason = ""
        last_shown = None
        try:
            while not reason:
                r = engine.step()
                if reports.wants(r.upper):
                    self.say(format_report(r.iteration, r.upper, r.lower, r.elapsed, self.verbose))
                    last_shown = r.iteration
                # without any stop criterion the run ends only on interrupt
                reason = engine.stop_reason() if config.has_stop else ("exhausted" if engine.exhausted else "")
        except KeyboardInterrupt:
            reason = "interrupted"
        cert = engine.certificate(reason)
        if engine.iterations and last_shown != engine.iterations:
            self.say(format_report(engine.iterations, cert.upper, cert.lower, engine.elapsed(), self.verbose))
        self.say(
            f"Stopped ({reason}) after {cert.iterations} iterations: "
            f"{_fixed3(cert.lower, False)} <= G <= {_fixed3(cert.upper, True)} "
            f"(exact upper bound {to_fraction(cert.upper)})"
        )
        return cert


def _interactive(session, stream, prompt):
    session.say(f"sofabound version {__version__}")
    session.say()
    session.say('Type "help" for instructions.')
    session.say()
    while True:
        if prompt:
            print("> ", end="", file=session.out, flush=True)
        line = stream.readline()
        if not line:
            return 0
        if not session.execute(line):
            return 0


def main(argv=None):
    parser = argparse.ArgumentParser(prog="sofabound", description="Exact branch and bound for moving sofa upper bounds.")
    parser.add_argument("--batch", metavar="PROFILE", help="load PROFILE, show settings, run it and exit")
    parser.add_argument("--verbose", action="store_true", help="also print the lower bound in report lines")
    args = parser.parse_args(argv)
    session = Session(verbose=args.verbose)
    if args.batch:
        if not session.load(args.batch):
            return 2
        if not session.profile.has_stop:
            session.say("Error: a batch run needs a stop criterion (target_upper, gap, max_iterations or max_time_seconds).")
            return 2
        try:
            session.profile.spec()
        except ValueError as exc:
            session.say(f"Error: {exc}")
            return 2
        session.say(format_settings(session.profile))
        session.run()
        return 0
    return _interactive(session, sys.stdin, sys.stdin.isatty())


if __name__ == "__main__":
    sys.exit(main())
