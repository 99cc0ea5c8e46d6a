import random
import sys
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Type

import click
from loguru import logger

from synthcomp import acceptance
from synthcomp.acceptance import perturb
from synthcomp.baire_cantor import (
    F_apply,
    F_modulus,
    G_apply,
    G_modulus,
    leaf_enum,
    point_from_code,
    point_from_leaves,
    roundtrip_check,
)
from synthcomp.errors import (
    BudgetExhausted,
    DisjointnessViolation,
    DivergenceAtFuel,
    GuardViolation,
    InputDivergence,
    NotALeaf,
    NotANode,
    NotBounded,
    ParseError,
    PropertyViolation,
)
from synthcomp.kleene import KleeneTree, kleene_tree, refute_path
from synthcomp.model import CommandOutput, Config, FuelEscalation, Point
from synthcomp.murec import decode, encode, parse, print_term, run_machine
from synthcomp.trees import Bits
from synthcomp.universal import PHI, evaluate_escalating

EXIT_CODES: Dict[Type[Exception], int] = {
    ParseError: 1,
    NotALeaf: 1,
    NotANode: 1,
    DivergenceAtFuel: 2,
    InputDivergence: 2,
    BudgetExhausted: 3,
    GuardViolation: 3,
    NotBounded: 3,
    PropertyViolation: 4,
    DisjointnessViolation: 4,
}


def _show(u: Sequence[bool]) -> str:
    return "".join("1" if b else "0" for b in u)


def _emit(
    ctx: click.Context,
    cmd: str,
    args: Dict[str, Any],
    result: Any,
    text: List[str],
    error: Optional[str] = None,
) -> None:
    config: Config = ctx.obj
    if config.output == "json":
        output = CommandOutput(cmd=cmd, args=args, result=result, error=error)
        click.echo(output.model_dump_json(exclude_none=True))
        return
    for line in text:
        click.echo(line)


@contextmanager
def _reporting(ctx: click.Context, cmd: str, args: Dict[str, Any]) -> Iterator[None]:
    try:
        yield
    except tuple(EXIT_CODES) as e:
        code = next(c for kind, c in EXIT_CODES.items() if isinstance(e, kind))
        config: Config = ctx.obj
        if config.output == "json":
            output = CommandOutput(cmd=cmd, args=args, error=str(e))
            click.echo(output.model_dump_json(exclude_none=True))
        else:
            click.echo(f"error: {e}", err=True)
        ctx.exit(code)


def _program_code(program: str) -> int:
    text = program.strip()
    return int(text) if text.isdigit() else encode(parse(text))


def _bits(ctx: click.Context, param: click.Parameter, value: str) -> Bits:
    if any(ch not in "01" for ch in value):
        raise click.BadParameter("bits must be a string of 0 and 1")
    return tuple(ch == "1" for ch in value)


def _naturals(csv: str) -> List[int]:
    try:
        values = [int(v) for v in csv.split(",") if v.strip()]
    except ValueError as e:
        raise click.BadParameter(f"not a list of naturals: {csv!r}") from e
    if not values or any(v < 0 for v in values):
        raise click.BadParameter(f"not a nonempty list of naturals: {csv!r}")
    return values


def _point(spec: str, cantor: bool, kt: KleeneTree, config: Config) -> Point:
    """Parse ``code:N``, ``table:csv``, ``table:csv+default`` or ``leaves:csv``."""
    kind, _, body = spec.partition(":")
    if kind == "code" and body.isdigit():
        return point_from_code(int(body), config.default_fuel, cantor=cantor)
    if kind == "table":
        table, plus, default = body.partition("+")
        values: List[Any] = _naturals(table)
        fill: Optional[Any] = _naturals(default)[0] if plus else None
        if cantor:
            values = [v != 0 for v in values]
            fill = None if fill is None else fill != 0
        return Point.from_table(values, default=fill)
    if kind == "leaves" and cantor:
        return point_from_leaves(kt, _naturals(body), config.leaf_budget)
    raise click.BadParameter(f"unknown point spec {spec!r}")


def _configure_logging(verbose: bool, debug: bool) -> None:
    logger.remove()
    level = "DEBUG" if debug else "INFO" if verbose else "WARNING"
    logger.add(sys.stderr, level=level)


@click.group()
@click.option("--fuel", type=click.IntRange(min=1), help="Step budget per evaluation.")
@click.option("--budget", type=click.IntRange(min=1), help="Depth and search budget.")
@click.option("--seed", type=click.IntRange(min=0), default=0, help="Random seed.")
@click.option("--json", "as_json", is_flag=True, help="One JSON object per line.")
@click.option("-v", "--verbose", is_flag=True, help="Show info messages.")
@click.option("--debug", is_flag=True, help="Show debug messages.")
@click.pass_context
def cli(
    ctx: click.Context,
    fuel: Optional[int],
    budget: Optional[int],
    seed: int,
    as_json: bool,
    verbose: bool,
    debug: bool,
) -> None:
    """Explore a mu-recursive machine, the Kleene tree and Cantor/Baire maps."""
    _configure_logging(verbose, debug)
    bounds = {"default_fuel": fuel, "default_budget": budget}
    ctx.obj = Config(
        **{k: v for k, v in bounds.items() if v is not None},
        output="json" if as_json else "text",
        seed=seed,
    )


@cli.command(name="run")
@click.argument("program")
@click.argument("x", type=click.IntRange(min=0))
@click.option("--fuel", type=click.IntRange(min=1), help="Overrides the global fuel.")
@click.option(
    "--escalate",
    type=click.IntRange(min=1),
    help="Retry silent runs this many times, multiplying the fuel by 10.",
)
@click.pass_context
def run_cmd(
    ctx: click.Context,
    program: str,
    x: int,
    fuel: Optional[int],
    escalate: Optional[int],
) -> None:
    """Run PROGRAM (text or code) on input X."""
    config: Config = ctx.obj
    fuel = fuel or config.default_fuel
    args: Dict[str, Any] = {"program": program, "x": x, "fuel": fuel}
    with _reporting(ctx, "run", args):
        c = _program_code(program)
        if escalate:
            escalation = FuelEscalation(attempts=escalate, initial_fuel=fuel)
            value, used = evaluate_escalating(c, x, escalation)
            result = {"value": value, "fuel": used}
            _emit(ctx, "run", args, result, [f"Some {value} (fuel {used})"])
            return
        outcome = run_machine(decode(c), [x], fuel)
        if outcome is None:
            silent = f"None (fuel {fuel})"
            _emit(ctx, "run", args, None, [silent], error=silent)
            ctx.exit(2)
        value, steps = outcome
        result = {"value": value, "steps": steps}
        _emit(ctx, "run", args, result, [f"Some {value}", f"steps {steps}"])


@cli.command()
@click.argument("program")
@click.pass_context
def quote(ctx: click.Context, program: str) -> None:
    """Print the code of PROGRAM."""
    args: Dict[str, Any] = {"program": program}
    with _reporting(ctx, "quote", args):
        c = encode(parse(program))
        _emit(ctx, "quote", args, c, [str(c)])


@cli.command(name="decode")
@click.argument("code", type=click.IntRange(min=0))
@click.pass_context
def decode_cmd(ctx: click.Context, code: int) -> None:
    """Print the program with code CODE."""
    text = print_term(decode(code))
    _emit(ctx, "decode", {"code": code}, text, [text])


@cli.command(name="enum-w")
@click.argument("code", type=click.IntRange(min=0))
@click.option("--fuel", type=click.IntRange(min=0), help="Highest enumerator index.")
@click.pass_context
def enum_w(ctx: click.Context, code: int, fuel: Optional[int]) -> None:
    """List the values enumerated by CODE with their least witness index."""
    config: Config = ctx.obj
    fuel = config.default_fuel if fuel is None else fuel
    seen: Dict[int, int] = {}
    for m in range(fuel + 1):
        x = PHI(code, m)
        if x is not None and x not in seen:
            seen[x] = m
    listing = sorted(seen.items(), key=lambda item: item[1])
    result = [{"value": x, "witness": m} for x, m in listing]
    args: Dict[str, Any] = {"code": code, "fuel": fuel}
    _emit(ctx, "enum-w", args, result, [f"{x} @ {m}" for x, m in listing])


@cli.group()
def kleene() -> None:
    """Inspect the Kleene tree."""


@kleene.command(name="tree")
@click.option("--depth", type=click.IntRange(min=0), default=4, show_default=True)
@click.pass_context
def kleene_tree_cmd(ctx: click.Context, depth: int) -> None:
    """Draw the members of the Kleene tree up to DEPTH."""
    kt = kleene_tree()
    members: List[Bits] = []
    stack: List[Bits] = [()]
    while stack:
        u = stack.pop()
        members.append(u)
        if len(u) < depth:
            stack.extend(v for v in (u + (True,), u + (False,)) if kt.member(v))
    lines = [("  " * len(u)) + (_show(u) or "ε") for u in members]
    _emit(ctx, "kleene tree", {"depth": depth}, [_show(u) for u in members], lines)


@kleene.command(name="member")
@click.argument("bits", callback=_bits)
@click.pass_context
def kleene_member(ctx: click.Context, bits: Bits) -> None:
    """Decide whether BITS (a 0/1 string) is in the Kleene tree."""
    verdict = kleene_tree().member(bits)
    text = "member" if verdict else "not member"
    _emit(ctx, "kleene member", {"bits": _show(bits)}, verdict, [text])


@kleene.command(name="refute")
@click.argument("program")
@click.pass_context
def kleene_refute(ctx: click.Context, program: str) -> None:
    """Depth at which the path computed by PROGRAM leaves the Kleene tree."""
    config: Config = ctx.obj
    args: Dict[str, Any] = {"program": program}
    with _reporting(ctx, "kleene refute", args):
        c = _program_code(program)
        m = refute_path(kleene_tree(), c, config.default_budget, config.default_fuel)
        _emit(ctx, "kleene refute", args, m, [f"depth {m}"])


@kleene.command(name="leaves")
@click.option("--count", type=click.IntRange(min=0), default=8, show_default=True)
@click.pass_context
def kleene_leaves(ctx: click.Context, count: int) -> None:
    """List the first COUNT leaves in length-lex order."""
    config: Config = ctx.obj
    args: Dict[str, Any] = {"count": count}
    with _reporting(ctx, "kleene leaves", args):
        kt = kleene_tree()
        leaves = [_show(leaf_enum(kt, i, config.leaf_budget)) for i in range(count)]
        lines = [f"{i}: {u}" for i, u in enumerate(leaves)]
        _emit(ctx, "kleene leaves", args, leaves, lines)


@cli.group()
def homeo() -> None:
    """Apply the maps between Baire space and Cantor space."""


@homeo.command(name="f")
@click.option("--point", "spec", required=True, help="code:N or table:csv[+default]")
@click.option("--prefix", type=click.IntRange(min=0), default=16, show_default=True)
@click.pass_context
def homeo_f(ctx: click.Context, spec: str, prefix: int) -> None:
    """Print a prefix of F applied to a point of Baire space."""
    config: Config = ctx.obj
    args: Dict[str, Any] = {"point": spec, "prefix": prefix}
    with _reporting(ctx, "homeo f", args):
        kt = kleene_tree()
        f = _point(spec, False, kt, config)
        bits = [F_apply(kt, f, n, config.leaf_budget) for n in range(prefix)]
        _emit(ctx, "homeo f", args, _show(bits), [_show(bits)])


@homeo.command(name="g")
@click.option("--point", "spec", required=True, help="code:N, table:csv or leaves:csv")
@click.option("--prefix", type=click.IntRange(min=0), default=8, show_default=True)
@click.pass_context
def homeo_g(ctx: click.Context, spec: str, prefix: int) -> None:
    """Print a prefix of G applied to a point of Cantor space."""
    config: Config = ctx.obj
    args: Dict[str, Any] = {"point": spec, "prefix": prefix}
    with _reporting(ctx, "homeo g", args):
        kt = kleene_tree()
        g = _point(spec, True, kt, config)
        values = [
            G_apply(kt, g, n, config.default_budget, config.leaf_budget)
            for n in range(prefix)
        ]
        _emit(ctx, "homeo g", args, values, [",".join(str(v) for v in values)])


@homeo.command(name="roundtrip")
@click.option("--point", "spec", required=True, help="code:N, table:csv or leaves:csv")
@click.option("-n", "count", type=click.IntRange(min=0), default=20, show_default=True)
@click.pass_context
def homeo_roundtrip(ctx: click.Context, spec: str, count: int) -> None:
    """Check F(G g) = g on the first N indices."""
    config: Config = ctx.obj
    args: Dict[str, Any] = {"point": spec, "n": count}
    with _reporting(ctx, "homeo roundtrip", args):
        kt = kleene_tree()
        g = _point(spec, True, kt, config)
        report = roundtrip_check(
            kt, g, count, config.default_budget, config.leaf_budget
        )
        lines = [f"{len(report.violations)} mismatches", *report.violations]
        _emit(ctx, "homeo roundtrip", args, report.violations, lines)
        if not report.ok:
            raise PropertyViolation(f"{len(report.violations)} mismatches")


def _stable_trials(
    kt: KleeneTree, config: Config, which: str, p: Point, index: int, trials: int
) -> Tuple[int, int]:
    rng = random.Random(config.seed)
    if which == "f":
        modulus = F_modulus()

        def value(q: Point) -> Any:
            return F_apply(kt, q, index, config.leaf_budget)

        alphabet: List[Any] = list(range(16))
    else:
        modulus = G_modulus(kt, config.default_budget)

        def value(q: Point) -> Any:
            return G_apply(kt, q, index, config.default_budget, config.leaf_budget)

        alphabet = [False, True]
    keep = len(modulus(p, index))
    base = value(p)
    stable = sum(
        value(perturb(p, keep, rng, alphabet)) == base for _ in range(trials)
    )
    return stable, trials


@homeo.command(name="modulus-check")
@click.option("--map", "which", type=click.Choice(["f", "g"]), default="f")
@click.option("--point", "spec", help="Point spec; a default point when omitted.")
@click.option("--index", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=100, show_default=True)
@click.pass_context
def homeo_modulus_check(
    ctx: click.Context, which: str, spec: Optional[str], index: int, trials: int
) -> None:
    """Perturb a point beyond the modulus and check the value does not move."""
    config: Config = ctx.obj
    spec = spec or ("table:0" if which == "f" else "leaves:0,1,2")
    args: Dict[str, Any] = {"map": which, "point": spec, "index": index}
    with _reporting(ctx, "homeo modulus-check", args):
        kt = kleene_tree()
        p = _point(spec, which == "g", kt, config)
        stable, total = _stable_trials(kt, config, which, p, index, trials)
        result = {"stable": stable, "trials": total}
        _emit(ctx, "homeo modulus-check", args, result, [f"{stable}/{total} stable"])
        if stable != total:
            raise PropertyViolation(f"{total - stable} perturbations moved the value")


@cli.command()
@click.argument("suite", type=click.Choice(["fast", "all"]), default="fast")
@click.option("--inject-fault", type=click.Choice(["codec"]), hidden=True)
@click.pass_context
def selftest(ctx: click.Context, suite: str, inject_fault: Optional[str]) -> None:
    """Run the acceptance suites; exit 4 when any law fails."""
    config: Config = ctx.obj
    args: Dict[str, Any] = {"suite": suite}
    with _reporting(ctx, "selftest", args):
        results = acceptance.run_suites(suite, config.seed, inject_fault)
        lines = [
            f"{r.suite}: {'ok' if r.report.ok else 'FAILED'} "
            f"({r.report.checked} checked, {r.seconds:.2f}s)"
            for r in results
        ]
        summary = [
            {"suite": r.suite, "ok": r.report.ok, "seconds": round(r.seconds, 3)}
            for r in results
        ]
        _emit(ctx, "selftest", args, summary, lines)
        acceptance.require(results)


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Console entry point; usage errors exit with 1 instead of click's 2."""
    try:
        code = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="synthcomp",
            standalone_mode=False,
        )
    except click.ClickException as e:
        e.show()
        code = 1
    except click.exceptions.Abort:
        code = 1
    sys.exit(code if isinstance(code, int) else 0)
