import json

import pytest

from sdude import (
    SymbolSequence,
    bsc_channel,
    concentration_sweep,
    cumulative_loss,
    identity_channel,
    run_switching_hmm_experiment,
    run_two_block_experiment,
    two_block_sequence,
)
from sdude.errors import RangeError, ValidationError


class TestCumulativeLoss:
    def test_equal_sequences_zero(self, hamming2):
        x = SymbolSequence([0, 1, 0], 2)
        assert cumulative_loss(x, x, hamming2) == 0.0

    def test_counts_mismatches(self, hamming2):
        x = SymbolSequence([0, 0, 0], 2)
        y = SymbolSequence([0, 1, 0], 2)
        assert cumulative_loss(x, y, hamming2) == pytest.approx(1 / 3)

    def test_subrange(self, hamming2):
        x = SymbolSequence([0, 0, 1, 1], 2)
        y = SymbolSequence([0, 1, 0, 1], 2)
        assert cumulative_loss(x, y, hamming2, 2, 3) == 1.0

    def test_range_validation(self, hamming2):
        x = SymbolSequence([0, 0], 2)
        with pytest.raises(RangeError):
            cumulative_loss(x, x, hamming2, 0, 2)
        with pytest.raises(RangeError):
            cumulative_loss(x, x, hamming2, 2, 1)
        with pytest.raises(ValidationError):
            cumulative_loss(x, SymbolSequence([0], 2), hamming2)


class TestTwoBlockExperiment:
    def test_shifting_denoiser_is_near_perfect(self):
        report = run_two_block_experiment(20000, 0.1, 0, 1, seeds=(0, 1))
        for seed in (0, 1):
            sd = report.result("sdude", seed=seed)
            assert sd.ber <= 1e-3
            assert sd.genie_loss == 0.0
            dd = report.result("dude", seed=seed)
            assert abs(dd.ber - 0.1) < 0.02
        assert report.result("sdude", seed=None).ber <= 1e-3

    def test_noiseless_channel_gives_zero_bers(self):
        report = run_two_block_experiment(2000, 0.0, 0, 1, seeds=(0,))
        for row in report.results:
            if row.ber is not None:
                assert row.ber == 0.0

    def test_m0_matches_plain_denoiser(self):
        report = run_two_block_experiment(5000, 0.1, 0, 0, seeds=(3,))
        assert report.result("sdude", seed=3).ber == report.result("dude", seed=3).ber

    def test_true_loss_never_beats_the_genie(self):
        report = run_two_block_experiment(4000, 0.1, 1, 2, seeds=(0, 1, 2))
        for seed in (0, 1, 2):
            row = report.result("sdude", seed=seed)
            assert row.interior_loss >= row.genie_loss - 1e-12

    def test_reports_reproducible(self):
        a = run_two_block_experiment(3000, 0.1, 0, 1, seeds=(5, 6))
        b = run_two_block_experiment(3000, 0.1, 0, 1, seeds=(5, 6))
        assert a.to_json() == b.to_json()
        assert a.to_csv() == b.to_csv()

    def test_json_round_trips(self):
        report = run_two_block_experiment(1000, 0.1, 0, 1, seeds=(0,))
        payload = json.loads(report.to_json())
        assert payload["experiment"] == "two-block"
        assert payload["n"] == 1000
        assert len(payload["results"]) == len(report.results)


class TestSwitchingHmmExperiment:
    def test_small_run_has_expected_rows(self):
        report = run_switching_hmm_experiment(
            4000, 0.1, 0.01, 0.2, 2000, k_list=(1, 2), m_list=(1,), seed=0
        )
        names = {(r.name, r.k, r.m) for r in report.results}
        assert ("fb-genie", None, None) in names
        assert ("dude", 1, 0) in names and ("dude", 2, 0) in names
        assert ("sdude", 1, 1) in names and ("sdude", 2, 1) in names
        fb = report.result("fb-genie")
        assert 0.0 < fb.ber < 0.1

    def test_equal_parameters_degenerate_switch(self):
        # p1 == p2: the shifting denoiser gains nothing real over the plain
        # one; their BERs agree within sampling noise.
        report = run_switching_hmm_experiment(
            30000, 0.1, 0.1, 0.1, 15000, k_list=(2,), m_list=(1,), seed=1
        )
        dude = report.result("dude", k=2)
        sdude = report.result("sdude", k=2)
        assert abs(dude.ber - sdude.ber) < 0.01

    def test_zero_noise_gives_zero_ratios(self):
        report = run_switching_hmm_experiment(
            2000, 0.0, 0.01, 0.2, 1000, k_list=(1,), m_list=(1,), seed=2
        )
        for row in report.results:
            assert row.ber == 0.0


class TestConcentrationSweep:
    def test_identity_channel_zero_gaps(self, hamming2):
        report = concentration_sweep(
            "two-block", identity_channel(2), 0, 1, n_list=(200, 400), trials=3, seed=0
        )
        for row in report.sweep:
            assert row["mean_gap"] == 0.0
            assert row["max_gap"] == 0.0

    def test_gaps_are_nonnegative_and_shrink(self):
        report = concentration_sweep(
            "two-block", bsc_channel(0.1), 0, 1, n_list=(500, 5000), trials=5, seed=0
        )
        gaps = [row["mean_gap"] for row in report.sweep]
        assert all(g >= 0.0 for g in gaps)
        assert gaps[1] <= gaps[0]

    def test_large_switch_budget_gap_stays_nonnegative(self):
        # Even with the maximal budget the true loss cannot beat hindsight.
        report = concentration_sweep(
            "two-block", bsc_channel(0.1), 0, 150, n_list=(300,), trials=5, seed=1
        )
        assert report.sweep[0]["mean_gap"] >= 0.0

    def test_custom_provider(self):
        calls = []

        def provider(n):
            calls.append(n)
            return two_block_sequence(n)

        concentration_sweep(provider, bsc_channel(0.1), 0, 1, n_list=(300,), trials=2, seed=0)
        assert calls == [300]

    def test_csv_has_sweep_columns(self):
        report = concentration_sweep(
            "two-block", bsc_channel(0.1), 0, 1, n_list=(300,), trials=2, seed=0
        )
        header = report.to_csv().splitlines()[0]
        assert set(header.split(",")) == {"n", "trials", "mean_gap", "max_gap"}
