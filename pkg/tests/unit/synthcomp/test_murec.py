import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synthcomp.errors import ParseError
from synthcomp.murec import (
    MACROS,
    Comp,
    Mu,
    PrimRec,
    Proj,
    Succ,
    Zero,
    decode,
    denote,
    encode,
    eval_ref,
    expand_macro,
    parse,
    print_term,
    quote,
    run,
    run_machine,
    size,
    step_eval,
)
from synthcomp.partiality import seval
from tests.unit.synthcomp.strategies import terms, total_terms

codes = st.integers(min_value=0, max_value=10**6)
inputs = st.integers(min_value=0, max_value=10)


class TestCodec:
    @pytest.mark.parametrize(
        "code, term",
        [
            (0, Zero(k=0)),
            (1, Succ()),
            (2, Zero(k=1)),
            (3, Proj(i=0, k=0)),
            (6, Comp(f=Zero(k=0), gs=())),
            (7, Proj(i=1, k=0)),
            (10, PrimRec(f=Zero(k=0), g=Zero(k=0))),
            (15, Mu(f=Zero(k=0))),
            (22, Mu(f=Succ())),
        ],
    )
    def test_decode_small_codes(self, code: int, term):
        # act
        output = decode(code)

        # assert
        assert output == term

    def test_succ_ignores_its_payload(self):
        assert decode(4) == Succ()
        assert encode(decode(4)) == 1

    @given(terms)
    def test_decode_inverts_encode(self, t):
        assert decode(encode(t)) == t

    @settings(max_examples=300)
    @given(codes)
    def test_decode_is_total(self, c: int):
        # act
        t = decode(c)

        # assert
        assert size(t) >= 1

    def test_quote_is_encode(self):
        t = parse("comp(succ; succ)")
        assert quote(t) == encode(t)


class TestSyntax:
    @pytest.mark.parametrize(
        "src, term",
        [
            ("zero[2]", Zero(k=2)),
            ("succ", Succ()),
            ("proj[1/3]", Proj(i=1, k=3)),
            ("comp(succ; zero[0], succ)", Comp(f=Succ(), gs=(Zero(k=0), Succ()))),
            ("comp(succ;)", Comp(f=Succ(), gs=())),
            ("primrec(zero[0], proj[0/2])", PrimRec(f=Zero(k=0), g=Proj(i=0, k=2))),
            ("min( succ )", Mu(f=Succ())),
        ],
    )
    def test_parse(self, src: str, term):
        # act
        output = parse(src)

        # assert
        assert output == term

    @given(terms)
    def test_print_then_parse(self, t):
        assert parse(print_term(t)) == t

    @pytest.mark.parametrize(
        "src, position, expected",
        [
            ("succ succ", 5, frozenset()),
            ("zero[x]", 5, frozenset({"nat"})),
            ("comp(succ, succ)", 9, frozenset({";"})),
            ("primrec(succ, succ", 18, frozenset({")"})),
        ],
    )
    def test_parse_errors(self, src: str, position: int, expected):
        # act
        with pytest.raises(ParseError) as error:
            parse(src)

        # assert
        assert error.value.position == position
        assert error.value.expected == expected

    def test_unknown_name_lists_alternatives(self):
        # act
        with pytest.raises(ParseError) as error:
            parse("frobnicate")

        # assert
        assert error.value.position == 0
        assert {"succ", "min", "add"} <= error.value.expected

    def test_cyclic_macros_are_rejected(self):
        with pytest.raises(ParseError):
            parse("loop", macros={"loop": "comp(loop; succ)"})

    @pytest.mark.parametrize("name", sorted(MACROS))
    def test_every_macro_expands(self, name: str):
        assert parse(name) == expand_macro(name)


class TestEvaluators:
    @pytest.mark.parametrize(
        "src, args, value",
        [
            ("succ", [4], 5),
            ("zero[3]", [9], 0),
            ("proj[2/3]", [1, 2, 3], 3),
            ("proj[5/1]", [1], 0),
            ("add", [2, 3], 5),
            ("sub", [2, 5], 3),
            ("sub", [5, 2], 0),
            ("pred", [0], 0),
            ("pred", [7], 6),
            ("if0", [0, 4, 9], 4),
            ("if0", [1, 4, 9], 9),
            ("tri", [4], 10),
            ("min(comp(sub; proj[0/2], proj[1/2]))", [3], 3),
        ],
    )
    def test_known_outputs(self, src: str, args, value: int):
        # arrange
        t = parse(src)

        # act
        ref = eval_ref(t, args, 10_000)
        machine = run_machine(t, args, 10_000)

        # assert
        assert ref is not None and ref[0] == value
        assert machine == ref

    @pytest.mark.parametrize(
        "name, value", [("pairL", 2), ("pairR", 3), ("pairsum", 5)]
    )
    def test_unpairing_macros(self, name: str, value: int):
        # pair(2, 3) == 18
        assert eval_ref(parse(name), [18], 100_000)[0] == value

    def test_cost_model(self):
        # Mu enters once, then pays one step per candidate on top of each test.
        assert eval_ref(Zero(k=0), [], 10) == (0, 1)
        assert eval_ref(Mu(f=Zero(k=0)), [], 10) == (0, 3)
        assert run_machine(Mu(f=Zero(k=0)), [], 10) == (0, 3)
        assert eval_ref(Comp(f=Zero(k=0), gs=()), [], 10) == (0, 2)

    def test_out_of_fuel(self):
        assert eval_ref(Mu(f=Succ()), [0], 10_000) is None
        assert run_machine(Mu(f=Succ()), [0], 10_000) is None

    @settings(max_examples=200, deadline=None)
    @given(terms, inputs)
    def test_machine_matches_reference(self, t, x: int):
        assert run_machine(t, [x], 2_000) == eval_ref(t, [x], 2_000)

    @settings(max_examples=100, deadline=None)
    @given(terms, inputs, st.integers(min_value=0, max_value=12))
    def test_step_eval_is_monotone(self, t, x: int, e: int):
        # arrange
        c = encode(t)

        # act
        low, high = step_eval(c, x, 1 << e), step_eval(c, x, 1 << (e + 1))

        # assert
        assert low is None or low == high

    @settings(max_examples=100, deadline=None)
    @given(total_terms, inputs)
    def test_step_eval_matches_reference(self, t, x: int):
        # arrange
        expected = eval_ref(t, [x], 5_000)

        # act
        output = step_eval(encode(t), x, 5_000)

        # assert
        assert output == (None if expected is None else expected[0])

    def test_step_eval_exact_threshold(self):
        # arrange
        c = encode(parse("add"))
        cost = eval_ref(parse("add"), [7], 10_000)[1]

        # act
        output = [step_eval(c, 7, cost - 1), step_eval(c, 7, cost)]

        # assert
        assert output == [None, 7]

    def test_run_and_denote(self):
        # arrange
        c = encode(Succ())

        # assert
        assert seval(run(c, 4), 1) == 5
        assert seval(run(c, 4), 0) is None
        assert denote(Succ(), 10)(41) == 42
