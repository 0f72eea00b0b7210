"""Command line front end.

Exit codes: 0 success, 1 malformed input (JSON errors, unreadable files),
2 precondition violation, 3 depth or coverage exhaustion.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field, fields

from . import __version__
from .constructions import (DiagonalFamilySpec, InfeasibleSchedule, build_diagonal_sequence,
                            build_diagonal_towers, build_example_6_3, pushforward_rank)
from .directive import DepthError, growth_report
from .language import (complexity, entropy_profile, entropy_upper_bound, generate_language,
                       full_shift_table)
from .measures import (CoverageError, characteristic_measure, check_kirchhoff, frac_str,
                       letter_frequency, required_length, transfer_measure,
                       transfer_property_report)
from .recognizability import (WITNESS, orbit_collision_on_periodic, recognizability_scan,
                              required_table_length)
from .serialize import DescriptorError, dumps, load_sequence, load_tower
from .symbols import incidence_matrix
from .towers import (characteristic_tower, cone_at_level, critical_level_estimate,
                     evaluate_tower, validate_tower)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_DEPTH = 0, 1, 2, 3
FORMATS = ("json", "csv", "text")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    sequence: str = None
    out: str = None
    format: str = "json"
    level: int = None
    length: int = None
    depth: int = None
    radius: int = None
    probe: list = field(default_factory=list)
    word: str = None
    tower: str = None
    top: str = None
    aperiodic_only: bool = False
    full_shift: bool = False
    demo: str = None
    d: int = None
    ell: str = None

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def need(self, *names):
        missing = [n for n in names if getattr(self, n) in (None, [])]
        if missing:
            raise UsageError(f"{self.command} needs --{', --'.join(m.replace('_', '-') for m in missing)}")


@dataclass
class Report:
    data: dict
    text: str = None
    rows: list = None
    header: list = None


# -- subcommands ------------------------------------------------------------

def _language(cfg):
    cfg.need("sequence", "level", "length")
    seq = load_sequence(cfg.sequence)
    depth = cfg.depth if cfg.depth is not None else seq.max_depth
    table = generate_language(seq, cfg.level, cfg.length, depth)
    comp = {}
    for n in range(1, table.L + 1):
        p, h = complexity(table, n)
        comp[str(n)] = {"p": p, "log_p_over_n": h}
    data = {"command": "language", **table.to_dict(), "complexity": comp, "log_base": "e"}
    fmt = table.alphabet.format
    lines = [f"# level {table.level} length {table.L} depth {table.depth} "
             f"stable {table.stable} certified {table.certified}"]
    lines += [f"# p({n}) = {comp[str(n)]['p']}" for n in range(1, table.L + 1)]
    lines += [fmt(w) for w in table.all_words()]
    rows = [[fmt(w), len(w), comp[str(len(w))]["p"]] for w in table.all_words()]
    return Report(data, "\n".join(lines) + "\n", rows, ["word", "length", "p"])


def _entropy(cfg):
    cfg.need("sequence")
    seq = load_sequence(cfg.sequence)
    depth = cfg.depth if cfg.depth is not None else seq.max_depth
    prof = entropy_profile(seq, depth)
    data = {"command": "entropy-bound", "depth": depth, "log_base": "e",
            "bound": entropy_upper_bound(seq, depth),
            "levels": [{"level": n, "card": c, "beta_minus": b, "term": t}
                       for n, c, b, t in prof]}
    rows = [[n, c, b, t] for n, c, b, t in prof]
    text = f"entropy upper bound at depth {depth}: {data['bound']!r}\n"
    return Report(data, text, rows, ["level", "card", "beta_minus", "term"])


def _table_rows(table):
    fmt = table.alphabet.format
    return sorted([fmt(w), frac_str(x)] for w, x in table.weights.items())


def _transfer(cfg):
    cfg.need("sequence", "word", "length")
    seq = load_sequence(cfg.sequence)
    level = 1 if cfg.level is None else cfg.level
    sigma = seq.telescope(0, level)
    w = sigma.source.parse(cfg.word)
    need = required_length(sigma, cfg.length)
    source = characteristic_measure(w, need, sigma.source)
    out = transfer_measure(sigma, source, cfg.length)
    props = transfer_property_report(sigma, source, cfg.length)
    data = {"command": "transfer", "level": level, "word": cfg.word,
            "input_length": need, "target_length": cfg.length,
            "table": out.to_dict(),
            "checks": props.checks, "kirchhoff_violations": len(check_kirchhoff(out).violations)}
    text = "".join(f"{a} {b}\n" for a, b in _table_rows(out))
    return Report(data, text, _table_rows(out), ["word", "weight"])


def _tower_eval(cfg):
    cfg.need("sequence", "word")
    seq = load_sequence(cfg.sequence)
    if cfg.tower:
        tower = load_tower(cfg.tower)
    else:
        cfg.need("top", "depth")
        tower = characteristic_tower(seq, cfg.top, cfg.depth)
    rep = validate_tower(seq, tower)
    if not rep.valid:
        raise UsageError(f"tower violates compatibility at levels {[v[0] for v in rep.violations]}")
    w = seq.alphabet(0).parse(cfg.word)
    levels = range(tower.depth + 1) if cfg.level is None else [cfg.level]
    rows = []
    for n in levels:
        s, bound = evaluate_tower(seq, tower, w, n)
        rows.append([n, frac_str(s), frac_str(bound), float(s), float(bound)])
    data = {"command": "tower-eval", "word": cfg.word, "depth": tower.depth,
            "masses": [frac_str(m) for m in rep.masses],
            "evaluations": [{"level": r[0], "S": r[1], "bound": r[2]} for r in rows]}
    text = "".join(f"n={r[0]} S={r[1]} bound={r[2]}\n" for r in rows)
    return Report(data, text, rows, ["level", "S", "bound", "S_float", "bound_float"])


def _cones(cfg):
    cfg.need("sequence", "level", "probe")
    seq = load_sequence(cfg.sequence)
    reports = [cone_at_level(seq, cfg.level, m).to_dict() for m in sorted(cfg.probe)]
    rows = [[r["level"], r["probe"], r["rank"], r["angular_width"],
             json.dumps(r["generators"])] for r in reports]
    text = "".join(f"level {r[0]} probe {r[1]}: rank {r[2]}, width {r[3]!r}\n" for r in rows)
    return Report({"command": "cones", "cones": reports}, text, rows,
                  ["level", "probe", "rank", "angular_width", "generators"])


def _critical(cfg):
    cfg.need("sequence", "depth")
    seq = load_sequence(cfg.sequence)
    extra = cfg.probe[0] if cfg.probe else 2
    rep = critical_level_estimate(seq, cfg.depth, extra).to_dict()
    rows = [[int(k), v] for k, v in rep["ranks"].items()]
    text = (f"apparent critical level {rep['apparent_critical_level']} "
            f"(thin: {rep['thin']})\n" + "".join(f"c_{k} = {v}\n" for k, v in rows))
    return Report({"command": "critical-level", **rep}, text, rows, ["level", "rank"])


def _recognizability(cfg):
    cfg.need("sequence", "level", "radius")
    seq = load_sequence(cfg.sequence)
    sigma = seq.level(cfg.level)
    need = required_table_length(sigma, cfg.radius)
    L = cfg.length if cfg.length is not None else need + 2
    if cfg.full_shift:
        table = full_shift_table(sigma.source, L)
    else:
        depth = cfg.depth if cfg.depth is not None else seq.max_depth
        table = generate_language(seq, cfg.level + 1, L, depth)
    verdict = recognizability_scan(sigma, table, cfg.radius, cfg.aperiodic_only)
    data = {"command": "recognizability", "level": cfg.level, "table_length": table.L,
            "table_depth": table.depth, "full_shift": cfg.full_shift,
            **verdict.to_dict(sigma)}
    rows = [[verdict.kind, verdict.radius, verdict.radius_checked, verdict.collisions]]
    return Report(data, verdict.text(sigma), rows,
                  ["verdict", "radius", "radius_checked", "collisions"])


def demo_example_6_3():
    seq = build_example_6_3()
    s0, s1 = seq.level(0), seq.level(1)
    ab, cd = s0.source, s0.target
    mu = characteristic_measure(ab.parse("aab"), 6, ab)
    mu2 = characteristic_measure(ab.parse("bba"), 6, ab)
    t1 = transfer_measure(s0, mu, 6)
    t2 = transfer_measure(s0, mu2, 6)
    crit = critical_level_estimate(seq, 4, 2)
    coll = orbit_collision_on_periodic(s0, ab.parse("aab"), ab.parse("bba"))
    tele = seq.telescope(0, 2)
    c0 = cone_at_level(seq, 0, 2)
    values = {
        "telescope_0_2": {x: cd.format(tele.image(x)) for x in ("x", "y")},
        "incidence_sigma1": [list(r) for r in incidence_matrix(s1)],
        "zeta_aab": [frac_str(x) for x in letter_frequency(mu)],
        "zeta_bba": [frac_str(x) for x in letter_frequency(mu2)],
        "transfer_aab_equals_mu_cdcddc":
            t1.agrees_with(characteristic_measure(cd.parse("cdcddc"), 6, cd)),
        "transfer_bba_equals_mu_dcdccd":
            t2.agrees_with(characteristic_measure(cd.parse("dcdccd"), 6, cd)),
        "cd_dc_weights": {"cdcddc": [frac_str(t1[cd.parse("cd")]), frac_str(t1[cd.parse("dc")])],
                          "dcdccd": [frac_str(t2[cd.parse("cd")]), frac_str(t2[cd.parse("dc")])]},
        "weight_of_cdcddc": [frac_str(t1[cd.parse("cdcddc")]), frac_str(t2[cd.parse("cdcddc")])],
        "tables_differ_at_length_6": t1.support(6) != t2.support(6),
        "c0": crit.ranks[0],
        "c1": crit.ranks[1],
        "cone_level0_generators": [list(g) for g in c0.generators],
        "apparent_critical_level": crit.apparent_critical_level,
        "orbit_collision_aab_bba": coll.collision,
    }
    expected = seq.annotations
    checks = {
        "zeta": values["zeta_aab"] == ["2/1", "1/1"] and values["zeta_bba"] == ["1/1", "2/1"],
        "transfer": values["transfer_aab_equals_mu_cdcddc"] and values["transfer_bba_equals_mu_dcdccd"],
        "cd_dc": all(v == ["2/1", "2/1"] for v in values["cd_dc_weights"].values()),
        "c0": values["c0"] == expected["c0"],
        "c1": values["c1"] == expected["c1"],
        "critical_level": values["apparent_critical_level"] == expected["critical_level"],
        "no_orbit_collision": not values["orbit_collision_aab_bba"],
    }
    return {"demo": "example-6-3", "depth": seq.max_depth, "values": values,
            "tables": {"cdcddc": t1.to_dict(), "dcdccd": t2.to_dict()},
            "checks": checks, "all_checks_pass": all(checks.values())}


def demo_diagonal(d, ells, blocks):
    spec = DiagonalFamilySpec(tuple(ells), blocks)
    seq = build_diagonal_sequence(spec)
    result = build_diagonal_towers(spec, d)
    growth = growth_report(seq, seq.max_depth, 1)
    return {
        "demo": "diagonal", "d": d, "ell": list(ells), "blocks": blocks,
        "depth": seq.max_depth, "n0": result.n0,
        "alphabet_sizes": [len(seq.alphabet(n)) for n in range(seq.max_depth + 1)],
        "coefficients": [[frac_str(a), frac_str(b)] for a, b in result.coefficients],
        "strictly_positive": result.strictly_positive,
        "rank_at_n0": result.rank_n0,
        "rank_base_frequencies": result.rank_base_frequencies,
        "rank_base_measures": pushforward_rank(seq, result),
        "entropy_upper_bound": entropy_upper_bound(seq, seq.max_depth),
        "sigma_levels_positive": {str(n): growth.positive_at[n] == n + 1
                                  for n in range(0, seq.max_depth, 2)},
        "towers": [t.to_list() for t in result.towers],
    }


def _demo(cfg):
    cfg.need("demo")
    if cfg.demo == "example-6-3":
        data = demo_example_6_3()
        text = "".join(f"{k}: {v}\n" for k, v in data["values"].items())
        text += "".join(f"check {k}: {'pass' if v else 'FAIL'}\n" for k, v in data["checks"].items())
        rows = [[k, v] for k, v in data["checks"].items()]
        return Report(data, text, rows, ["check", "pass"])
    if cfg.demo == "diagonal":
        cfg.need("d", "ell")
        ells = [int(x) for x in cfg.ell.split(",") if x.strip()]
        blocks = cfg.depth if cfg.depth is not None else len(ells)
        data = demo_diagonal(cfg.d, ells, blocks)
        keys = ["d", "n0", "rank_at_n0", "rank_base_frequencies", "rank_base_measures",
                "entropy_upper_bound", "strictly_positive"]
        text = "".join(f"{k}: {data[k]}\n" for k in keys)
        return Report(data, text, [[k, data[k]] for k in keys], ["field", "value"])
    raise UsageError(f"unknown demo {cfg.demo!r}")


COMMANDS = {
    "language": _language,
    "entropy-bound": _entropy,
    "transfer": _transfer,
    "tower-eval": _tower_eval,
    "cones": _cones,
    "critical-level": _critical,
    "recognizability": _recognizability,
    "demo": _demo,
}


def emit_report(report, fmt, out=None):
    if fmt == "json":
        payload = dumps(report.data)
    elif fmt == "text":
        payload = report.text if report.text is not None else dumps(report.data)
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if report.header:
            writer.writerow(report.header)
        writer.writerows(report.rows or [])
        payload = buf.getvalue()
    else:
        raise UsageError(f"unknown format {fmt!r}")
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return payload


def run(config):
    """Dispatch one configured run; returns the exit status."""
    if config.command not in COMMANDS:
        print(f"error: unknown subcommand {config.command!r}", file=sys.stderr)
        return EXIT_PRECONDITION
    if config.format not in FORMATS:
        print(f"error: unknown format {config.format!r}", file=sys.stderr)
        return EXIT_PRECONDITION
    try:
        report = COMMANDS[config.command](config)
        emit_report(report, config.format, config.out)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return EXIT_INPUT
    except (OSError, DescriptorError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DepthError, CoverageError) as exc:
        print(f"error: depth or coverage exhausted: {exc}", file=sys.stderr)
        return EXIT_DEPTH
    except (UsageError, InfeasibleSchedule, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sequence", help="JSON sequence descriptor")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--level", type=int)
    common.add_argument("--depth", type=int)

    parser = argparse.ArgumentParser(prog="sadic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sadic {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("language", parents=[common], help="generated language and p(n)")
    p.add_argument("--len", dest="length", type=int, required=True)

    sub.add_parser("entropy-bound", parents=[common], help="entropy upper bound")

    p = sub.add_parser("transfer", parents=[common],
                       help="transfer a characteristic measure down to level 0")
    p.add_argument("--word", required=True)
    p.add_argument("--target-len", dest="length", type=int, required=True)

    p = sub.add_parser("tower-eval", parents=[common], help="evaluate a vector tower on a word")
    p.add_argument("--word", required=True)
    p.add_argument("--tower", help="JSON array of rational vectors, level 0 first")
    p.add_argument("--top", help="letter at the top level for a characteristic tower")

    p = sub.add_parser("cones", parents=[common], help="letter-frequency cone probes")
    p.add_argument("--probe", type=int, action="append", default=[])

    p = sub.add_parser("critical-level", parents=[common], help="apparent critical level")
    p.add_argument("--probe", type=int, action="append", default=[],
                   help="probe depth above each level (default 2)")

    p = sub.add_parser("recognizability", parents=[common], help="bounded-window scan")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--len", dest="length", type=int)
    p.add_argument("--aperiodic-only", action="store_true")
    p.add_argument("--full-shift", action="store_true",
                   help="scan on the full shift instead of the generated language")

    p = sub.add_parser("demo", parents=[common], help="built-in replications")
    p.add_argument("demo", choices=("example-6-3", "diagonal"))
    p.add_argument("--d", type=int)
    p.add_argument("--ell", help="comma separated ℓ schedule, e.g. 4,8,16")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(RunConfig.from_dict(vars(args)))


if __name__ == "__main__":
    sys.exit(main())
