import random
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from synthcomp.baire_cantor import (
    F_apply,
    F_modulus,
    G_apply,
    G_modulus,
    leaf_enum,
    leaf_enum_inv,
    point_from_leaves,
    roundtrip_check,
)
from synthcomp.encodings import decode_bool, decode_list, encode_list, pair, unpair
from synthcomp.errors import PropertyViolation
from synthcomp.kleene import deep_member, kleene_tree, leaf_check, refute_path
from synthcomp.model import Point, Report, SuiteResult
from synthcomp.murec import (
    Comp,
    Mu,
    PrimRec,
    Proj,
    Succ,
    Term,
    Zero,
    decode,
    encode,
    eval_ref,
    parse,
    run,
    run_machine,
    step_eval,
)
from synthcomp.partiality import least_fuel, seval
from synthcomp.synthetic import dec_choice, enum_choice, post_decider, semidec_choice
from synthcomp.trees import check_tree_axioms, infinite_to_depth, tree_from_modulus
from synthcomp.universal import (
    diagonal_disagreement,
    e_bool,
    e_from_phi,
    graph_phi_from_e,
    machine_family,
)

Codec = Tuple[Callable[[int, int], int], Callable[[int], Tuple[int, int]]]

# Total boolean programs whose cost does not depend on the input.
BOOLEAN_PROGRAMS: Tuple[str, ...] = (
    "zero[1]",
    "zero[0]",
    "zero[3]",
    "succ",
    "proj[0/1]",
    "comp(succ; zero[1])",
    "comp(succ; comp(succ; zero[1]))",
    "comp(zero[1]; succ)",
    "comp(succ; succ)",
    "comp(proj[0/1]; succ)",
    "min(zero[2])",
    "min(proj[0/2])",
    "comp(succ; min(zero[2]))",
    "comp(primrec(succ, zero[3]); zero[1])",
    "comp(primrec(zero[0], succ); zero[1])",
    "proj[1/2]",
    "comp(proj[1/2]; zero[1], succ)",
    "comp(zero[2]; succ, succ)",
    "comp(succ; proj[0/1], proj[0/1])",
    "min(comp(pred; proj[0/2]))",
    "comp(succ; min(proj[0/2]))",
)

# Macro programs on explicit argument vectors, with their expected outputs.
MACRO_CASES: Tuple[Tuple[str, Tuple[int, ...], int], ...] = (
    ("add", (2, 3), 5),
    ("add", (0, 7), 7),
    ("sub", (2, 5), 3),
    ("sub", (5, 2), 0),
    ("pred", (0,), 0),
    ("pred", (7,), 6),
    ("if0", (0, 4, 9), 4),
    ("if0", (3, 4, 9), 9),
    ("tri", (4,), 10),
    ("pairsum", (18,), 5),
    ("pairL", (18,), 2),
    ("pairR", (18,), 3),
)


CODEC_TERM_BITS = 1 << 14


def _random_leaf(rng: random.Random) -> Term:
    leaf = rng.randrange(3)
    if leaf == 0:
        return Zero(k=rng.randrange(4))
    if leaf == 1:
        return Succ()
    return Proj(i=rng.randrange(3), k=rng.randrange(1, 4))


def random_term(
    rng: random.Random,
    depth: int,
    mu_weight: float = 0.05,
    max_bits: Optional[int] = None,
) -> Term:
    """Random program of at most the given depth, with few minimisations.

    With `max_bits` set, a node whose code would exceed that many bits is replaced
    by a leaf, so every subterm code stays within the bound.
    """
    if depth <= 0 or rng.random() < 0.3:
        return _random_leaf(rng)
    r = rng.random()
    t: Term
    if r < mu_weight:
        t = Mu(f=random_term(rng, depth - 1, mu_weight, max_bits))
    elif r < 0.55:
        arity = rng.randrange(3)
        gs = tuple(
            random_term(rng, depth - 1, mu_weight, max_bits) for _ in range(arity)
        )
        t = Comp(f=random_term(rng, depth - 1, mu_weight, max_bits), gs=gs)
    else:
        t = PrimRec(
            f=random_term(rng, depth - 1, mu_weight, max_bits),
            g=random_term(rng, depth - 1, mu_weight, max_bits),
        )
    if max_bits is not None and encode(t).bit_length() > max_bits:
        return _random_leaf(rng)
    return t


def _corrupted_codec() -> Codec:
    def bad_unpair(k: int) -> Tuple[int, int]:
        n, m = unpair(k)
        return (n, m + 1) if k % 97 == 5 else (n, m)

    return pair, bad_unpair


def codec_suite(
    rng: random.Random, fast: bool, codec: Optional[Codec] = None
) -> Report:
    """Pairing and list codes are exact bijections; the term codec round trips."""
    pair_fn, unpair_fn = codec or (pair, unpair)
    limit = 10_000 if fast else 1_000_000
    report = Report(name="codec")
    for k in range(limit):
        if pair_fn(*unpair_fn(k)) != k:
            report.violations.append(f"pair(unpair({k})) != {k}")
        if encode_list(decode_list(k)) != k:
            report.violations.append(f"encode_list(decode_list({k})) != {k}")
    terms = 100 if fast else 1000
    for _ in range(terms):
        t = random_term(rng, 6, max_bits=CODEC_TERM_BITS)
        if decode(encode(t)) != t:
            report.violations.append(f"decode(encode(t)) != t for {t!r}")
    report.checked = 2 * limit + terms
    return report


def monotonicity_suite(rng: random.Random, fast: bool) -> Report:
    """T is deterministic and monotone: once converged, every larger fuel agrees."""
    samples, top = (100, 10) if fast else (500, 14)
    report = Report(name="monotonicity")
    for _ in range(samples):
        t, x = random_term(rng, 4), rng.randrange(8)
        c = encode(t)
        seen: Optional[int] = None
        for e in range(top + 1):
            value = step_eval(c, x, 1 << e)
            if seen is not None and value != seen:
                report.violations.append(f"{t!r} on {x}: {seen} then {value} at 2^{e}")
                break
            seen = value if value is not None else seen
            result = run_machine(t, [x], 1 << e)
            if value != (None if result is None else result[0]):
                report.violations.append(f"T on {t!r} at {x} differs from the machine")
                break
    report.checked = samples
    return report


def oracle_suite(rng: random.Random, fast: bool) -> Report:
    """The machine agrees with the recursive reference evaluator, steps included."""
    samples, fuel = (100, 10_000) if fast else (500, 10_000)
    report = Report(name="oracle")
    for _ in range(samples):
        t, x = random_term(rng, 5), rng.randrange(10)
        expected = eval_ref(t, [x], fuel)
        if run_machine(t, [x], fuel) != expected:
            report.violations.append(f"{t!r} on {x}: machine differs from reference")
        value = None if expected is None else expected[0]
        if step_eval(encode(t), x, fuel) != value:
            report.violations.append(f"{t!r} on {x}: T differs from reference")
    for name, args, want in MACRO_CASES:
        t = parse(name)
        got = eval_ref(t, args, 100_000)
        if got is None or got[0] != want or run_machine(t, args, 100_000) != got:
            report.violations.append(f"{name}{args}: expected {want}, got {got}")
    report.checked = samples + len(MACRO_CASES)
    return report


def _round_trip_codes(count: int, inputs: int, horizon: int, fuel: int) -> List[int]:
    # Codes converging quickly or not at all, so both fuels see the same cells.
    codes: List[int] = []
    c = 0
    while len(codes) < count:
        costs = [least_fuel(run(c, x), fuel) for x in range(inputs + 1)]
        if all(cost is None or cost[0] <= horizon for cost in costs):
            codes.append(c)
        c += 1
    return codes


def round_trip_suite(rng: random.Random, fast: bool) -> Report:
    """Partial functions survive the trip through their graph enumerators."""
    count, inputs = (10, 5) if fast else (50, 20)
    low, high = 10_000, 100_000
    e = machine_family()
    back = e_from_phi(graph_phi_from_e(e))
    report = Report(name="round-trip")
    for c in _round_trip_codes(count, inputs, horizon=300, fuel=low):
        for x in range(inputs + 1):
            before, after = seval(e(c, x), low), seval(back(c, x), high)
            if before != after:
                report.violations.append(f"code {c} on {x}: {before} vs {after}")
    report.checked = count * (inputs + 1)
    return report


def diagonal_suite(rng: random.Random, fast: bool) -> Report:
    """The diagonal contradicts every total boolean program at its own code."""
    eb = e_bool(machine_family())
    report = Report(name="diagonal", checked=len(BOOLEAN_PROGRAMS))
    for src in BOOLEAN_PROGRAMS:
        t = parse(src)
        c = encode(t)
        observed = diagonal_disagreement(eb, c, 100_000)
        reference = eval_ref(t, [c], 100_000)
        if observed is None or reference is None:
            report.violations.append(f"{src}: diagonal did not converge")
            continue
        d_value, own = observed
        if own != decode_bool(reference[0]) or d_value == own:
            report.violations.append(f"{src}: d = {d_value}, program = {own}")
    return report


def kleene_suite(rng: random.Random, fast: bool) -> Report:
    """The Kleene tree is a tree, infinite to depth 12, and refutes total programs."""
    kt = kleene_tree()
    report = check_tree_axioms(kt.tree, 8)
    report.name = "kleene"
    for k in range(13):
        u = deep_member(kt, k)
        if len(u) != k or not kt.member(u):
            report.violations.append(f"deep_member({k}) = {u} is not a member")
    for src in BOOLEAN_PROGRAMS:
        c = encode(parse(src))
        m = refute_path(kt, c, budget=64, fuel=100_000)
        path = [decode_bool(step_eval(c, i, 100_000) or 0) for i in range(m)]
        if kt.member(path) or not kt.member(path[:-1]):
            report.violations.append(f"{src}: depth {m} is not the least refutation")
    report.checked += 13 + len(BOOLEAN_PROGRAMS)
    return report


def leaves_suite(rng: random.Random, fast: bool) -> Report:
    """The first 16 leaves are distinct leaves, an antichain, and invert."""
    kt = kleene_tree()
    leaves = [leaf_enum(kt, i) for i in range(16)]
    report = Report(name="leaves", checked=len(leaves))
    for i, u in enumerate(leaves):
        if not leaf_check(kt, u):
            report.violations.append(f"leaf {i} = {u} fails the leaf check")
        if leaf_enum_inv(kt, u) != i:
            report.violations.append(f"leaf index of {u} is not {i}")
        for j, v in enumerate(leaves[:i]):
            if u[: len(v)] == v or v[: len(u)] == u:
                report.violations.append(f"leaves {j} and {i} are comparable")
    return report


def perturb(
    p: Point, keep: int, rng: random.Random, values: Sequence[object]
) -> Point:
    """Point agreeing with `p` below `keep` and drawn from `values` after it."""
    tail = [rng.choice(values) for _ in range(64)]
    return Point(
        rule=lambda n: p.at(n) if n < keep else tail[n % len(tail)],
        source=f"perturbed({p.source}, {keep})",
    )


def continuity_suite(rng: random.Random, fast: bool) -> Report:
    """Moduli of F and G hold, F(G g) = g, and F separates distinct points."""
    kt = kleene_tree()
    budget = 64
    trials = 20 if fast else 100
    report = Report(name="continuity")
    naturals = list(range(16))
    for _ in range(trials):
        f = Point.from_table([rng.randrange(16) for _ in range(12)], default=0)
        n = rng.randrange(10)
        moved = perturb(f, len(F_modulus()(f, n)), rng, naturals)
        if F_apply(kt, f, n) != F_apply(kt, moved, n):
            report.violations.append(f"F modulus fails on {f.source} at {n}")
    for _ in range(trials):
        g = point_from_leaves(kt, [rng.randrange(16) for _ in range(6)])
        n = rng.randrange(5)
        modulus = G_modulus(kt, budget)
        kept = modulus(g, n)
        moved = perturb(g, len(kept), rng, [False, True])
        if G_apply(kt, g, n, budget) != G_apply(kt, moved, n, budget):
            report.violations.append(f"G modulus fails on {g.source} at {n}")
        if modulus(moved, n) != kept:
            report.violations.append(f"G modulus moves on {g.source} at {n}")
    for _ in range(5):
        g = point_from_leaves(kt, [rng.randrange(16) for _ in range(4)])
        report.violations.extend(roundtrip_check(kt, g, 20, budget).violations)
    for _ in range(20):
        i = rng.randrange(6)
        head = [rng.randrange(16) for _ in range(i)]
        a, b = rng.sample(naturals, 2)
        f1 = Point.from_table(head + [a], default=0)
        f2 = Point.from_table(head + [b], default=0)
        bound = sum(
            len(leaf_enum(kt, f1.at(j))) + len(leaf_enum(kt, f2.at(j)))
            for j in range(i + 1)
        )
        if all(F_apply(kt, f1, n) == F_apply(kt, f2, n) for n in range(bound)):
            report.violations.append(f"F does not separate {f1.source}, {f2.source}")
    report.checked = 2 * trials + 25
    return report


def choice_suite(rng: random.Random, fast: bool) -> Report:
    """Post's decider matches the truth; choice operators find the least witnesses."""
    report = Report(name="post-choice")
    samples = 50 if fast else 200
    a, b, m = rng.randrange(1, 50), rng.randrange(50), rng.randrange(2, 30)
    h = rng.randrange(1, m)

    def p(x: int) -> bool:
        return (x * a + b) % m < h

    decide = post_decider(
        lambda x, n: p(x) and n >= x % 5,
        lambda x, n: not p(x) and n >= x % 7,
        budget=10,
    )
    for _ in range(samples):
        x = rng.randrange(1_000_000)
        if decide(x) != p(x):
            report.violations.append(f"post_decider wrong on {x}")
    relations = 10 if fast else 30
    for _ in range(relations):
        report.violations.extend(_choice_violations(rng))
    report.checked = samples + 3 * relations
    return report


def _choice_violations(rng: random.Random) -> List[str]:
    violations = []
    xs = list(range(8))
    starts = {x: rng.randrange(20) for x in xs}
    steps = {x: rng.randrange(1, 4) for x in xs}

    def dec_rel(x: int, n: int) -> bool:
        return n >= starts[x] and (n - starts[x]) % steps[x] == 0

    if dec_choice(dec_rel, xs, 64) != starts:
        violations.append("dec_choice is not the least witness")

    delays = {x: rng.randrange(1, 7) for x in xs}

    def semi_rel(xn: Tuple[int, int], fuel: int) -> bool:
        x, n = xn
        return n >= starts[x] and fuel >= (n * delays[x]) % 7

    budget = 30
    expected: Dict[int, int] = {}
    for x in xs:
        for k in range(pair(budget, budget) + 1):
            n, fuel = unpair(k)
            if n <= budget and fuel <= budget and semi_rel((x, n), fuel):
                expected[x] = n
                break
    if semidec_choice(semi_rel, xs, budget) != expected:
        violations.append("semidec_choice is not the first dovetailed witness")

    keys, r = rng.randrange(2, 6), rng.randrange(3)

    def enum_rel(k: int) -> Optional[Tuple[int, int]]:
        n, f = unpair(k)
        return (n % keys, f) if (n + f) % 3 == r else None

    first: Dict[int, int] = {}
    for k in range(10_000):
        emitted = enum_rel(k)
        if emitted is not None and emitted[0] not in first:
            first[emitted[0]] = emitted[1]
    if enum_choice(enum_rel, range(keys)) != first:
        violations.append("enum_choice is not the first emitted value")
    return violations


def modulus_tree_suite(rng: random.Random, fast: bool) -> Report:
    """The tree read off G's modulus is a tree with members at every depth to 8."""
    kt = kleene_tree()
    t = tree_from_modulus(G_modulus(kt, 64))
    report = check_tree_axioms(t, 8)
    report.name = "modulus-tree"
    for depth in range(9):
        if infinite_to_depth(t, depth) is None:
            report.violations.append(f"no member at depth {depth}")
    report.checked += 9
    return report


SUITES: Dict[str, Callable[[random.Random, bool], Report]] = {
    "codec": codec_suite,
    "monotonicity": monotonicity_suite,
    "oracle": oracle_suite,
    "round-trip": round_trip_suite,
    "diagonal": diagonal_suite,
    "kleene": kleene_suite,
    "leaves": leaves_suite,
    "continuity": continuity_suite,
    "post-choice": choice_suite,
    "modulus-tree": modulus_tree_suite,
}


def run_suites(
    mode: str = "fast", seed: int = 0, inject_fault: Optional[str] = None
) -> List[SuiteResult]:
    """Run every acceptance suite.

    Args:
        mode: "fast" for reduced sample sizes, "all" for the full ones.
        seed: seed of every suite's random generator.
        inject_fault: "codec" corrupts the unpairing seen by the codec suite.

    Returns:
        one result per suite, in order.

    """
    results = []
    for name, suite in SUITES.items():
        logger.debug(f"Suite {name} started ({mode})...")
        rng = random.Random(f"{seed}:{name}")
        started = time.perf_counter()
        if name == "codec" and inject_fault == "codec":
            report = codec_suite(rng, mode == "fast", codec=_corrupted_codec())
        else:
            report = suite(rng, mode == "fast")
        seconds = time.perf_counter() - started
        logger.debug(f"Suite {name} finished in {seconds:.2f}s")
        results.append(SuiteResult(suite=name, report=report, seconds=seconds))
    return results


def require(results: Sequence[SuiteResult]) -> None:
    """Raise when any suite reported a violation.

    Raises:
        PropertyViolation: naming the failing suites and their first violation.

    """
    failing = [r for r in results if not r.report.ok]
    if failing:
        raise PropertyViolation(
            "; ".join(f"{r.suite}: {r.report.violations[0]}" for r in failing)
        )
