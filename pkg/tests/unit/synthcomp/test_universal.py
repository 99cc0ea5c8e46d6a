from typing import Optional

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synthcomp.encodings import pair
from synthcomp.errors import DivergenceAtFuel
from synthcomp.model import FuelEscalation
from synthcomp.murec import Mu, Succ, Zero, encode
from synthcomp.partiality import seval
from synthcomp.synthetic import bounded_range
from synthcomp.universal import (
    PHI,
    K_holds_upto,
    K_reductions,
    Knat_holds_upto,
    T_from_e,
    W,
    W_enumerator,
    diag,
    diagonal_disagreement,
    e_bool,
    e_from_phi,
    evaluate_escalating,
    graph_phi_from_e,
    k0_complement_refuter,
    k0_enumerator,
    k0_semidecider,
    k0_to_K,
    machine_family,
    pairs_enumerator,
    phi_from_e,
    phi_from_T,
    quote_option_fn,
    totalize,
)

SUCC = encode(Succ())  # 1
ZERO = encode(Zero(k=0))  # 0
FIRST_ZERO = encode(Mu(f=Zero(k=0)))  # 15, costs 3 steps on any input
FOREVER = 22  # min(succ)


class TestPhi:
    def test_phi_decodes_options(self):
        # arrange
        def T(c: int, n: int, m: int) -> Optional[int]:
            return n + 1 if m >= n else None

        # act
        phi = phi_from_T(T)

        # assert
        assert phi(0, pair(3, 2)) is None
        assert phi(0, pair(3, 3)) == 3

    def test_zero_output_reads_as_none(self):
        assert all(PHI(ZERO, k) is None for k in range(100))

    def test_succ_enumerates_everything(self):
        # act
        emitted = [PHI(SUCC, pair(x, 1)) for x in range(10)]

        # assert
        assert emitted == list(range(10))

    def test_quote_option_fn(self):
        assert quote_option_fn(Succ()) == SUCC

    def test_W(self):
        # arrange
        w = W(PHI, SUCC)

        # assert
        assert w(5, pair(5, 1))
        assert not w(5, pair(5, 0))
        assert not w(5, pair(4, 1))

    def test_pairs_enumerator(self):
        # arrange
        pairs = pairs_enumerator(PHI)

        # assert
        assert pairs(pair(SUCC, pair(5, 1))) == (SUCC, 5)
        assert pairs(pair(ZERO, 7)) is None

    def test_W_enumerator_keeps_its_own_code(self):
        # arrange
        en = W_enumerator(PHI, SUCC)

        # act
        emitted = bounded_range(en, 2_000)

        # assert
        assert en(pair(SUCC, pair(5, 1))) == 5
        assert en(pair(FIRST_ZERO, pair(5, 10))) is None
        assert {0, 1, 2, 3} <= emitted


class TestPartialFamilies:
    def test_machine_family_runs_T(self):
        # arrange
        e = machine_family()

        # assert
        assert seval(e(SUCC, 4), 1) == 5
        assert seval(e(SUCC, 4), 0) is None
        assert seval(e(FOREVER, 0), 10_000) is None

    def test_machine_family_shares_partial_values(self):
        e = machine_family()
        assert e(SUCC, 9) is e(SUCC, 9)

    def test_graph_round_trip(self):
        # arrange
        e = e_from_phi(graph_phi_from_e(machine_family()))

        # act
        # The least graph index emitting input 4 is pair(4, 1) = 16.
        output = [seval(e(SUCC, 4), 16), seval(e(SUCC, 4), 17)]

        # assert
        assert output == [None, 5]

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=6))
    def test_graph_round_trip_agrees_with_the_family(self, x: int):
        # arrange
        e = machine_family()
        back = e_from_phi(graph_phi_from_e(e))

        # act
        value = seval(back(FIRST_ZERO, x), 200)

        # assert
        assert value == seval(e(FIRST_ZERO, x), 200) == 0

    def test_range_enumerator_and_T(self):
        # arrange
        e = machine_family()

        # assert
        assert phi_from_e(e)(SUCC, pair(4, 1)) == 5
        assert phi_from_e(e)(SUCC, pair(4, 0)) is None
        assert T_from_e(e)(SUCC, 4, 1) == 5

    def test_totalize(self):
        assert seval(totalize(SUCC)(4), 1) == 5
        assert seval(totalize(FOREVER)(4), 5_000) is None


class TestDiagonal:
    def test_small_diagonal_values(self):
        # arrange
        d = diag(e_bool(machine_family()))

        # act
        output = [seval(d(n), 10_000) for n in range(6)]

        # assert
        assert output == [True, False, True, False, False, True]

    def test_diagonal_diverges_with_the_program(self):
        d = diag(e_bool(machine_family()))
        assert seval(d(FOREVER), 10_000) is None

    @pytest.mark.parametrize("c", [0, 1, 2, 3, 15])
    def test_disagreement(self, c: int):
        # act
        output = diagonal_disagreement(e_bool(machine_family()), c, 1_000)

        # assert
        assert output is not None
        diagonal_value, own_value = output
        assert diagonal_value is not own_value

    def test_disagreement_needs_convergence(self):
        assert diagonal_disagreement(e_bool(machine_family()), FOREVER, 1_000) is None


class TestK0:
    def test_semidecider(self):
        # arrange
        s = k0_semidecider(PHI)

        # assert
        assert s(SUCC, pair(SUCC, 1))
        assert not s(SUCC, pair(SUCC, 0))
        assert not any(s(ZERO, m) for m in range(200))

    def test_enumerator(self):
        # arrange
        en = k0_enumerator(PHI)

        # assert
        assert en(pair(SUCC, pair(SUCC, 1))) == SUCC
        assert en(pair(SUCC, pair(2, 1))) is None

    def test_reduction_to_K(self):
        # arrange
        r = k0_to_K(PHI)

        # assert
        assert K_holds_upto(r(SUCC), 10)
        assert not K_holds_upto(r(ZERO), 10)

    def test_complement_refuter(self):
        # act
        evidence = k0_complement_refuter(SUCC, 10)

        # assert
        assert evidence is not None
        assert evidence.code == SUCC
        assert evidence.witness == pair(1, 1)
        assert "K0" in evidence.conclusion

    def test_complement_refuter_is_inconclusive_on_silence(self):
        assert k0_complement_refuter(ZERO, 500) is None


class TestK:
    @given(st.lists(st.booleans(), min_size=1, max_size=20))
    def test_reductions_preserve_K(self, values):
        # arrange
        reductions = K_reductions()

        def f(n: int) -> bool:
            return n < len(values) and values[n]

        # act
        knat = reductions.K_to_Knat(f)
        back = reductions.Knat_to_K(knat)

        # assert
        budget = len(values)
        assert Knat_holds_upto(knat, budget) is any(values)
        assert K_holds_upto(back, budget) is any(values)


class TestEscalation:
    def test_converges_on_a_later_attempt(self):
        # arrange
        escalation = FuelEscalation(attempts=3, initial_fuel=1, factor=10)

        # act
        output = evaluate_escalating(FIRST_ZERO, 7, escalation)

        # assert
        assert output == (0, 10)

    def test_first_attempt(self):
        assert evaluate_escalating(SUCC, 4) == (5, 1_000)

    def test_gives_up(self):
        # arrange
        escalation = FuelEscalation(attempts=2, initial_fuel=10, factor=2)

        # act / assert
        with pytest.raises(DivergenceAtFuel, match="fuel 20"):
            evaluate_escalating(FOREVER, 0, escalation)
