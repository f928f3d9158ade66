import json
from pathlib import Path

import pytest

from rlcgrand import simcli
from rlcgrand.simcli import SimConfig, emit_csv, read_csv, run_experiment, run_trial

FIXTURES = Path(__file__).parent / "fixtures"


def small_config(**overrides):
    base = dict(
        k=3, n_list=(4, 6), b=16, eps=0.08, burst_len=3.0,
        decoders=("rlc", "sd", "tgrand"), trials=40, master_seed=9,
    )
    base.update(overrides)
    return SimConfig(**base)


class TestConfig:
    def test_defaults_mirror_the_reference_grid(self):
        cfg = SimConfig()
        assert cfg.k == 10 and cfg.n_list == tuple(range(10, 21))
        assert cfg.trials == 10000 and cfg.b == 64

    @pytest.mark.parametrize(
        "bad",
        [
            dict(k=0),
            dict(n_list=(2,)),
            dict(n_list=()),
            dict(trials=0),
            dict(eps=1.0),
            dict(eps=-0.1),
            dict(burst_len=0.9),
            dict(decoders=("bogus",)),
            dict(decoders=()),
            dict(query_cap=0),
            dict(workers=0),
        ],
    )
    def test_invalid_configs_rejected(self, bad):
        with pytest.raises(ValueError):
            small_config(**bad)


class TestRunTrial:
    def test_noiseless_always_succeeds(self):
        cfg = small_config(eps=0.0, burst_len=1.0)
        for decoder in ("rlc", "sd", "tgrand"):
            out = run_trial(cfg, 4, decoder, trial_index=0)
            assert out.success

    def test_unknown_decoder(self):
        with pytest.raises(ValueError):
            run_trial(small_config(), 4, "viterbi", 0)

    def test_paired_trial_dominance(self):
        # All decoders see the same batch, so repair can only add successes.
        cfg = small_config(trials=60)
        for t in range(cfg.trials):
            plain = run_trial(cfg, 6, "rlc", t)
            if plain.success:
                assert run_trial(cfg, 6, "sd", t).success
                assert run_trial(cfg, 6, "tgrand", t).success

    def test_golden_traces(self):
        fixture = json.loads((FIXTURES / "golden_trials.json").read_text())
        for name, case in fixture.items():
            c = case["config"]
            cfg = SimConfig(
                k=c["k"], n_list=(c["n"],), b=c["b"], eps=c["eps"],
                burst_len=c["burst_len"], trials=c["trial_index"] + 1,
                master_seed=c["master_seed"],
            )
            gen, batch, _ = simcli._trial_batch(cfg, c["n"], c["trial_index"])
            assert gen.matrix.to_rows() == case["generator"], name
            assert batch.truth_x.to_rows() == case["truth_x"], name
            assert batch.y.to_rows() == case["received_y"], name
            assert list(batch.r) == case["clean_rows"], name
            for decoder, want in case["outcomes"].items():
                out = run_trial(cfg, c["n"], decoder, c["trial_index"])
                assert out.success == want["success"], (name, decoder)
                got_u = out.u_hat.to_rows() if out.u_hat is not None else None
                assert got_u == want["u_hat"], (name, decoder)
                assert out.nu == want["nu"], (name, decoder)
                assert out.queries_total == want["queries_total"], (name, decoder)
                assert out.rank_before == want["rank_before"], (name, decoder)
                assert out.rank_after == want["rank_after"], (name, decoder)


class TestRunExperiment:
    def test_record_grid_shape_and_order(self):
        cfg = small_config(trials=5)
        records = run_experiment(cfg)
        assert len(records) == 6
        assert [(r.decoder, r.n) for r in records] == [
            ("rlc", 4), ("rlc", 6), ("sd", 4), ("sd", 6), ("tgrand", 4), ("tgrand", 6)
        ]
        for r in records:
            assert r.successes <= r.trials
            assert r.decoding_probability == r.successes / r.trials

    def test_noiseless_probability_one(self):
        cfg = small_config(eps=0.0, burst_len=1.0, trials=3)
        assert all(r.decoding_probability == 1.0 for r in run_experiment(cfg))

    def test_decoder_subset(self):
        cfg = small_config(decoders=("tgrand",), trials=5)
        records = run_experiment(cfg)
        assert [r.decoder for r in records] == ["tgrand", "tgrand"]

    def test_worker_count_does_not_change_results(self):
        one = run_experiment(small_config(workers=1))
        two = run_experiment(small_config(workers=2))
        strip = lambda rs: [
            (r.decoder, r.n, r.successes, r.mean_queries) for r in rs
        ]
        assert strip(one) == strip(two)

    def test_success_counts_monotone_in_n(self):
        cfg = small_config(n_list=(3, 5, 7), trials=150)
        records = run_experiment(cfg)
        by_decoder = {}
        for r in records:
            by_decoder.setdefault(r.decoder, []).append(r.decoding_probability)
        # 3-sigma slack on the difference of paired proportions.
        slack = 3 * (0.25 / cfg.trials) ** 0.5
        for probs in by_decoder.values():
            for lo, hi in zip(probs, probs[1:]):
                assert hi >= lo - slack


class TestCsv:
    def test_header_only_for_empty_records(self, tmp_path):
        path = tmp_path / "out.csv"
        emit_csv([], path)
        assert path.read_text() == simcli.CSV_HEADER + "\n"

    def test_round_trip_exact(self, tmp_path):
        records = run_experiment(small_config(trials=10))
        path = tmp_path / "out.csv"
        emit_csv(records, path)
        assert read_csv(path) == records

    def test_reproducible_modulo_wall_clock(self, tmp_path):
        cfg = small_config(trials=15)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_experiment(cfg), a)
        emit_csv(run_experiment(cfg), b)
        strip = lambda p: ["," .join(line.split(",")[:-1]) for line in p.read_text().splitlines()]
        assert strip(a) == strip(b)


class TestCli:
    def test_main_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code = simcli.main([
            "--k", "2", "--n-min", "2", "--n-max", "3", "--b", "8", "--eps", "0.05",
            "--burst-len", "2", "--trials", "4", "--seed", "3", "--out", str(out),
        ])
        assert code == 0
        records = read_csv(out)
        assert len(records) == 6
        assert "wrote 6 records" in capsys.readouterr().out

    def test_config_file_with_flag_override(self, tmp_path):
        cfg_file = tmp_path / "sim.cfg"
        cfg_file.write_text(
            "k = 2\nn-min = 2\nn_max = 3\nb = 8\neps = 0.1  # comment\n"
            "burst-len = 2\ntrials = 5\ndecoders = rlc\nout = unused.csv\n"
        )
        out = tmp_path / "o.csv"
        code = simcli.main(["--config", str(cfg_file), "--trials", "2", "--out", str(out)])
        assert code == 0
        records = read_csv(out)
        assert {r.decoder for r in records} == {"rlc"}
        assert all(r.trials == 2 for r in records)  # flag beat the file

    def test_bad_flags_exit_nonzero(self, capsys):
        assert simcli.main(["--k", "0", "--out", "/dev/null"]) == 2
        assert simcli.main(["--n-min", "8", "--n-max", "5"]) == 2
        assert "error" in capsys.readouterr().err

    def test_unwritable_out_path_exits_nonzero(self, tmp_path, capsys):
        code = simcli.main([
            "--k", "2", "--n-min", "2", "--n-max", "2", "--b", "4", "--trials", "1",
            "--out", str(tmp_path / "missing_dir" / "r.csv"),
        ])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg_file = tmp_path / "sim.cfg"
        cfg_file.write_text("frobnicate = 1\n")
        assert simcli.main(["--config", str(cfg_file)]) == 2
