from importlib import resources

import numpy as np
import pytest

from setbandits import (
    ArmSet,
    GroundSet,
    LinearMinusCostEnv,
    NoiseSpec,
    TabularEnv,
    check_monotone,
    check_submodular_in_expectation,
    default_linear_minus_cost,
    exact_maximizer,
    load_network,
    normalize,
)
from setbandits.environments import load_edge_list

from conftest import SUBMODULAR_TABLE, coverage_env, two_arm_env

ARM_B = ArmSet.from_indices([1], 2)  # the arm labelled "2" in 1-based displays
_DATA = resources.files("setbandits").joinpath("data")
KARATE_EDGES = str(_DATA.joinpath("karate_edges.txt"))
KARATE_COMMUNITIES = str(_DATA.joinpath("karate_communities.txt"))


def test_noiseless_sample_is_table_value(submodular_env):
    rng = np.random.default_rng(0)
    assert submodular_env.sample(ARM_B, rng) == 0.6
    # with sigma=0, sampling equals the expected value for every subset
    for s in submodular_env.ground.all_subsets():
        assert submodular_env.sample(s, rng) == submodular_env.expected_value(s).value


def test_samples_always_clamped_into_unit_interval():
    env = two_arm_env((0.05, 0.5, 0.95, 0.5), sigma=0.5)
    rng = np.random.default_rng(1)
    for s in (ArmSet(0, 2), ArmSet(2, 2)):
        draws = env.sample_many(s, rng, 100_000)
        assert draws.min() >= 0.0 and draws.max() <= 1.0


def test_noisy_sample_mean_matches_independent_monte_carlo():
    # independent oracle: clamp(0.6 + N(0, 0.1)) simulated directly
    oracle_rng = np.random.default_rng(123)
    oracle_mean = np.clip(0.6 + oracle_rng.normal(0.0, 0.1, 1_000_000), 0, 1).mean()
    assert abs(oracle_mean - 0.6) < 1e-3  # clamp bias negligible at 4 sigma from the edges

    env = two_arm_env(SUBMODULAR_TABLE, sigma=0.1)
    draws = env.sample_many(ARM_B, np.random.default_rng(42), 1_000_000)
    assert abs(draws.mean() - 0.6) < 1e-3


def test_expected_value_is_exact_table_lookup(nonsubmodular_env):
    ev = nonsubmodular_env.expected_value(ArmSet.from_indices([0, 1], 2))
    assert ev.value == 0.9 and ev.exact and ev.std_error is None


def test_mc_expected_value_reports_standard_error(submodular_env):
    env = two_arm_env(SUBMODULAR_TABLE, sigma=0.1)
    ev = env.mc_expected_value(ARM_B, np.random.default_rng(5), n_samples=50_000)
    assert not ev.exact
    assert abs(ev.value - 0.6) < 5 * ev.std_error + 1e-3


def test_identical_seeds_give_identical_streams():
    env = two_arm_env(SUBMODULAR_TABLE, sigma=0.3)
    a = env.sample_many(ARM_B, np.random.default_rng(9), 1000)
    b = env.sample_many(ARM_B, np.random.default_rng(9), 1000)
    assert np.array_equal(a, b)
    batch_a = env.sample_batch(np.array([0, 1, 2, 3], dtype=np.uint64), np.random.default_rng(9))
    batch_b = env.sample_batch(np.array([0, 1, 2, 3], dtype=np.uint64), np.random.default_rng(9))
    assert np.array_equal(batch_a, batch_b)


def test_sample_batch_matches_table_when_noiseless(submodular_env):
    masks = np.array([0, 1, 2, 3, 2, 0], dtype=np.uint64)
    out = submodular_env.sample_batch(masks, np.random.default_rng(0))
    assert np.array_equal(out, np.array(SUBMODULAR_TABLE)[masks.astype(int)])


def test_tabular_from_dict_validates_table():
    spec = {"n": 2, "sigma": 0.1, "table": [[0, 0.2], [1, 0.0], [2, 0.6], [3, 0.2]]}
    env = TabularEnv.from_dict(spec)
    assert env.g(ARM_B) == 0.6
    with pytest.raises(ValueError, match="missing"):
        TabularEnv.from_dict({"n": 2, "table": [[0, 0.2], [1, 0.0], [2, 0.6]]})
    with pytest.raises(ValueError, match="duplicate"):
        TabularEnv.from_dict({"n": 1, "table": [[0, 0.2], [0, 0.3], [1, 0.5]]})
    with pytest.raises(ValueError):
        TabularEnv.from_dict({"n": 1, "table": [[0, 0.2], [1, 1.5]]})
    with pytest.raises(ValueError):
        NoiseSpec(sigma=-0.1)


def test_submodularity_checker_on_reference_tables(submodular_env, nonsubmodular_env):
    assert check_submodular_in_expectation(submodular_env) == []
    violations = check_submodular_in_expectation(nonsubmodular_env)
    assert violations
    triples = {(v.a.mask, v.b.mask, v.x) for v in violations}
    # adding the first arm to {} loses 0.3 but adding it to the other
    # singleton gains 0.4
    assert (0, 0b10, 0) in triples


def test_checker_on_constant_table():
    env = two_arm_env((0.4, 0.4, 0.4, 0.4))
    assert check_submodular_in_expectation(env) == []
    assert check_monotone(env) == []


def test_monotonicity_checker_on_reference_tables(submodular_env, nonsubmodular_env):
    violations = check_monotone(submodular_env)
    assert violations  # the empty set beats the first singleton (0.2 > 0)
    assert any(v.a.mask == 0 and v.b.mask == 0b01 for v in violations)
    assert check_monotone(nonsubmodular_env)


def test_checker_detects_manufactured_violation():
    rng = np.random.default_rng(11)
    env = coverage_env(rng, 4)
    assert check_submodular_in_expectation(env) == []
    # make the last arm's gain at the full set exceed its gain at the empty
    # set by construction
    table = env.table.copy() * 0.3
    table[0b1111] = table[0b1110] + (table[0b0001] - table[0b0000]) + 0.1
    broken = TabularEnv(env.ground, table, NoiseSpec())
    violations = check_submodular_in_expectation(broken)
    assert any(v.b.mask == 0b1110 and v.x == 0 for v in violations)


def test_coverage_tables_pass_both_checkers():
    rng = np.random.default_rng(2)
    for _ in range(20):
        env = coverage_env(rng, int(rng.integers(2, 6)))
        assert check_submodular_in_expectation(env) == []
        assert check_monotone(env) == []


def test_checkers_reject_environments_without_exact_expectations():
    env = default_linear_minus_cost(sigma=0.02)
    with pytest.raises(ValueError, match="exact"):
        check_submodular_in_expectation(env)
    karate = load_network(KARATE_EDGES, KARATE_COMMUNITIES, alpha=1.0, sigma=1.0)
    with pytest.raises(ValueError, match="n <= 20"):
        check_monotone(karate)


def test_normalize_midpoint_and_identity():
    env = two_arm_env((1.0, 1.0, 1.0, 1.0))
    halved = normalize(env, 0.0, 2.0)
    assert halved.sample(ArmSet(0, 2), np.random.default_rng(0)) == 0.5
    ident = normalize(env, 0.0, 1.0)
    assert ident.sample(ArmSet(0, 2), np.random.default_rng(0)) == 1.0
    with pytest.raises(ValueError):
        normalize(env, 1.0, 1.0)


def test_normalize_preserves_argmax(submodular_env):
    # brute-force maximization before and after rescaling
    before = exact_maximizer(submodular_env)
    after = exact_maximizer(normalize(submodular_env, 0.0, 0.6))
    assert before.opt_set == after.opt_set == ARM_B
    assert after.opt_value == pytest.approx(1.0)
    rng = np.random.default_rng(3)
    for _ in range(10):
        env = coverage_env(rng, 4)
        f_min, f_max = sorted(rng.uniform(-2.0, 3.0, size=2))
        if f_max - f_min < 1e-6:
            continue
        assert exact_maximizer(env).ties == exact_maximizer(normalize(env, f_min, f_max)).ties


def test_linear_cost_special_set_pays_one_deterministically():
    env = default_linear_minus_cost()
    special = ArmSet.from_indices([4, 5, 6, 7], 8)
    assert env.expected_value(special) == (1.0, True, None)
    draws = env.sample_many(special, np.random.default_rng(0), 1000)
    assert np.all(draws == 1.0)


def test_linear_cost_singleton_mean_matches_independent_monte_carlo():
    # independent oracle: clamp(clamp(N(0.35, 0.02)) - 1/6) simulated directly
    rng = np.random.default_rng(77)
    oracle = np.clip(np.clip(rng.normal(0.35, 0.02, 1_000_000), 0, 1) - 1 / 6, 0, 1).mean()
    assert oracle == pytest.approx(0.35 - 1 / 6, abs=1e-3)

    env = default_linear_minus_cost()
    top_arm = ArmSet.from_indices([7], 8)
    ev = env.expected_value(top_arm, mc_samples=400_000, rng=np.random.default_rng(8))
    assert not ev.exact
    assert ev.value == pytest.approx(0.35 - 1 / 6, abs=1e-3)


def test_linear_cost_rewards_clamped_and_empty_set_is_zero():
    env = default_linear_minus_cost(sigma=0.3)
    rng = np.random.default_rng(4)
    full = GroundSet(8).full()
    draws = env.sample_many(full, rng, 50_000)
    assert draws.min() >= 0.0 and draws.max() <= 1.0
    assert np.all(env.sample_many(ArmSet(0, 8), rng, 100) == 0.0)
    batch = env.sample_batch(rng.integers(0, 256, size=20_000, dtype=np.uint64), rng)
    assert batch.min() >= 0.0 and batch.max() <= 1.0


def test_linear_cost_noiseless_expectations_are_exact():
    env = default_linear_minus_cost(sigma=0.0)
    assert env.has_exact_expectations
    s = ArmSet.from_indices([6, 7], 8)
    assert env.expected_value(s) == (pytest.approx(0.65 - 2 / 6), True, None)
    with pytest.raises(ValueError):
        LinearMinusCostEnv([0.5, 1.2], sigma=0.0, k_star=6)
    with pytest.raises(ValueError):
        LinearMinusCostEnv([0.5, 0.5], sigma=0.0, k_star=0)


def test_karate_network_loads_with_34_nodes():
    nodes, edges = load_edge_list(KARATE_EDGES)
    assert len(nodes) == 34
    # independent degree count from the parsed pairs
    incident: dict[int, int] = {}
    for u, v in edges:
        incident[u] = incident.get(u, 0) + 1
        incident[v] = incident.get(v, 0) + 1
    assert max(incident.values()) == 17

    env = load_network(KARATE_EDGES, KARATE_COMMUNITIES, alpha=1.0, sigma=1.0)
    assert env.ground.n == 34
    assert env.degrees.max() == 17
    assert env.raw_mean(ArmSet(0, 34)) == 0.0  # empty set: no influence, no cost
    assert env.value_bounds == (-34.0, 16.0 + 17.0)


def test_karate_samples_normalized_into_unit_interval():
    env = load_network(KARATE_EDGES, KARATE_COMMUNITIES, alpha=1.0, sigma=5.0)
    rng = np.random.default_rng(6)
    draws = env.sample_many(env.design_opt_set(), rng, 20_000)
    assert draws.min() >= 0.0 and draws.max() <= 1.0
    masks = rng.integers(0, 1 << 34, size=5_000, dtype=np.uint64)
    batch = env.sample_batch(masks, rng)
    assert batch.min() >= 0.0 and batch.max() <= 1.0


def test_karate_batch_means_match_design_values():
    env = load_network(KARATE_EDGES, KARATE_COMMUNITIES, alpha=1.0, sigma=0.0)
    rng = np.random.default_rng(13)
    masks = rng.integers(0, 1 << 34, size=256, dtype=np.uint64)
    batch = env.sample_batch(masks, rng)
    expected = np.array([env.expected_value(ArmSet(int(m), 34)).value for m in masks])
    assert np.allclose(batch, expected)


def test_karate_design_opt_keeps_one_hub_per_community():
    env = load_network(KARATE_EDGES, KARATE_COMMUNITIES, alpha=1.0, sigma=1.0)
    opt = env.design_opt_set()
    assert opt.render(one_based=True) == "{1,34}"
    assert env.raw_mean(opt) == 16 + 17 - 2
    # with a cost above every degree, the optimum is the empty set
    expensive = load_network(KARATE_EDGES, KARATE_COMMUNITIES, alpha=20.0, sigma=1.0)
    assert expensive.design_opt_set().size == 0


def test_network_loader_rejects_bad_files(tmp_path):
    edges = tmp_path / "edges.txt"
    comms = tmp_path / "comms.txt"
    edges.write_text("# comment\n1 2\n2 3\n")
    comms.write_text("1 a\n2 a\n3 b\n")
    env = load_network(edges, comms, alpha=0.5, sigma=0.1)
    assert env.ground.n == 3

    comms.write_text("1 a\n2 a\n3 b\n4 b\n")
    with pytest.raises(ValueError, match="unknown node"):
        load_network(edges, comms, alpha=0.5, sigma=0.1)
    comms.write_text("1 a\n2 a\n")
    with pytest.raises(ValueError, match="without a community"):
        load_network(edges, comms, alpha=0.5, sigma=0.1)
    edges.write_text("1 1\n")
    with pytest.raises(ValueError, match="self-loop"):
        load_edge_list(edges)
    edges.write_text("1 2 3\n")
    with pytest.raises(ValueError, match="expected"):
        load_edge_list(edges)


def test_duplicate_edges_collapse_with_warning(tmp_path):
    edges = tmp_path / "edges.txt"
    edges.write_text("1 2\n2 1\n2 3\n")
    with pytest.warns(UserWarning, match="duplicate"):
        nodes, pairs = load_edge_list(edges)
    assert len(pairs) == 2 and nodes == [1, 2, 3]


def test_mismatched_ground_set_rejected(submodular_env):
    with pytest.raises(ValueError):
        submodular_env.sample(ArmSet(0, 3), np.random.default_rng(0))
