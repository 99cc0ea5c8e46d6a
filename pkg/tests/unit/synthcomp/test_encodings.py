import pytest
from hypothesis import given
from hypothesis import strategies as st

from synthcomp.encodings import (
    decode_bool,
    decode_list,
    decode_nat_list,
    decode_option,
    encode_bool,
    encode_list,
    encode_nat_list,
    encode_option,
    pair,
    unpair,
)

naturals = st.integers(min_value=0, max_value=10**12)


class TestPair:
    @pytest.mark.parametrize(
        "n, m, code", [(0, 0, 0), (1, 2, 8), (0, 1, 2), (1, 0, 1), (2, 3, 18)]
    )
    def test_pair(self, n: int, m: int, code: int):
        # act
        output = pair(n, m)

        # assert
        assert output == code

    @pytest.mark.parametrize("k, target", [(0, (0, 0)), (8, (1, 2)), (1, (1, 0))])
    def test_unpair(self, k: int, target):
        # act
        output = unpair(k)

        # assert
        assert output == target

    def test_pair_is_a_bijection_on_an_initial_segment(self):
        # arrange
        limit = 20_000

        # act
        codes = [pair(*unpair(k)) for k in range(limit)]

        # assert
        assert codes == list(range(limit))

    @given(naturals, naturals)
    def test_unpair_inverts_pair(self, n: int, m: int):
        assert unpair(pair(n, m)) == (n, m)

    def test_big_numbers_do_not_overflow(self):
        # arrange
        n, m = 2**200, 3**150

        # act
        output = unpair(pair(n, m))

        # assert
        assert output == (n, m)


class TestListCode:
    @pytest.mark.parametrize(
        "bits, code",
        [
            ((), 0),
            ((False,), 1),
            ((True,), 2),
            ((False, False), 3),
            ((True, True), 6),
            ((False, False, False), 7),
        ],
    )
    def test_encode_list(self, bits, code: int):
        # act
        output = encode_list(bits)

        # assert
        assert output == code
        assert decode_list(code) == bits

    def test_codes_are_length_lex_ordered(self):
        # arrange
        lists = [decode_list(k) for k in range(200)]

        # act
        keys = [(len(u), u) for u in lists]

        # assert
        assert keys == sorted(keys)

    def test_decode_list_is_surjective_on_an_initial_segment(self):
        # act
        codes = [encode_list(decode_list(k)) for k in range(5000)]

        # assert
        assert codes == list(range(5000))


class TestNatListCode:
    @pytest.mark.parametrize(
        "values, code", [([], 0), ([0], 1), ([1], 2), ([0, 0], 3)]
    )
    def test_encode_nat_list(self, values, code: int):
        # act
        output = encode_nat_list(values)

        # assert
        assert output == code

    @given(st.lists(st.integers(min_value=0, max_value=1000), max_size=6))
    def test_round_trip(self, values):
        assert decode_nat_list(encode_nat_list(values)) == values

    def test_every_number_decodes(self):
        # act
        output = [encode_nat_list(decode_nat_list(k)) for k in range(3000)]

        # assert
        assert output == list(range(3000))


class TestOptionAndBool:
    @pytest.mark.parametrize("value, code", [(None, 0), (0, 1), (7, 8)])
    def test_option_code(self, value, code: int):
        assert encode_option(value) == code
        assert decode_option(code) == value

    @pytest.mark.parametrize("k, target", [(0, False), (1, True), (5, True)])
    def test_decode_bool(self, k: int, target: bool):
        assert decode_bool(k) is target

    def test_encode_bool(self):
        assert [encode_bool(False), encode_bool(True)] == [0, 1]
